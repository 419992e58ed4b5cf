from .curves import *
from .pep import *
from .bound import *
from .capacity import *
