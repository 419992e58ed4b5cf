from .paths import *
from .equivalent import *
from .matrix_model import *
