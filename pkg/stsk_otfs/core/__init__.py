from .errors import *
from .logger import *
from .utils import *
from .rand import *
from .constellation import *
from .config import *
from .cache import *
from .pool import *
