from .mapping import *
from .codebook import *
from .dispersion import *
from .store import *
