import os
import logging

__all__ = ['logger', 'set_level']

logger = logging.getLogger('stsk_otfs')
logger.setLevel(os.environ.get('LOGLEVEL') or 'INFO')
handler = logging.StreamHandler()
fmt = logging.Formatter('%(asctime)s %(levelname)s: %(message)s')
handler.setFormatter(fmt)
logger.addHandler(handler)

def set_level(level):
    '''Change the package log level, e.g. `DEBUG` for per-trial metrics.'''
    logger.setLevel(level.upper() if isinstance(level, str) else level)
