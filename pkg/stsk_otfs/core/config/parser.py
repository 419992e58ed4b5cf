'''
Parse `key = value` system files.
'''

from ..errors import ConfigParseError, UnknownConfigKey
from .root import get_core_config
from .system import SystemConfig, validate_config

__all__ = [
    'CONFIG_KEYS',
    'parse_config_lines',
    'parse_config_file',
    'parse_override',
    'load_config',
]

# file key -> (SystemConfig field, converter)
CONFIG_KEYS = {
    'n': ('n', int),
    'm': ('m', int),
    'nt': ('nt', int),
    'nr': ('nr', int),
    'tc': ('tc', int),
    'q': ('q', int),
    'v': ('v', int),
    'u': ('u', int),
    'p': ('p', int),
    'delta_f_hz': ('delta_f', float),
    'f_c_hz': ('f_c', float),
    'scheme': ('scheme', str),
    'l_max': ('l_max', int),
    'k_max': ('k_max', int),
    'constellation': ('constellation', str),
}


def _convert(key, value, source, lineno):
    try:
        field, conv = CONFIG_KEYS[key]
    except KeyError:
        raise UnknownConfigKey('%s:%s: unknown key %r' % (source, lineno, key), key=key, source=source, line=lineno)
    try:
        return field, conv(value)
    except ValueError:
        raise ConfigParseError('%s:%s: bad value for %s: %r' % (source, lineno, key, value), source=source, line=lineno)


def parse_config_lines(lines, source='<string>'):
    '''
    Parse an iterable of `key = value` lines into SystemConfig field values.
    '''
    values = {}
    for lineno, line in enumerate(lines, 1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition('=')
        key, value = key.strip().lower(), value.strip()
        if not sep or not key or not value:
            raise ConfigParseError('%s:%s: expected `key = value`' % (source, lineno), source=source, line=lineno)
        field, value = _convert(key, value, source, lineno)
        values[field] = value
    return values


def parse_config_file(filename):
    with open(filename, 'r') as f:
        return parse_config_lines(f, source=filename)


def parse_override(text):
    '''Parse a single `key=value` override as given on the command line.'''
    return parse_config_lines([text], source='--set')


def load_config(filename=None, overrides=()):
    '''
    Merge the system defaults, an optional config file and overrides, and
    validate the result.
    '''
    values = dict(get_core_config()['system'])
    if filename is not None:
        values.update(parse_config_file(filename))
    for item in overrides:
        values.update(parse_override(item))
    return validate_config(SystemConfig(**values))
