from .base import *

try:
    from .development import *
except ImportError:
    pass