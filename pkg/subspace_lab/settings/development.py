from .base import *

DEBUG = True

LOG_LEVEL = os.getenv('LOG_LEVEL', 'DEBUG')
LOGGING['loggers']['subspace_codes']['level'] = LOG_LEVEL
