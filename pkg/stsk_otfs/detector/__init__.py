from .base import *
from .exhaustive import *
from .greedy import *
from .reduced import *
from .complexity import *
