from .root import *
from .parser import *
from .system import *
