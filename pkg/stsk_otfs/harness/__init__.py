from .report import *
from .link import *
from .sweep import *
from .baseline import *
from .compare import *
from .study import *
