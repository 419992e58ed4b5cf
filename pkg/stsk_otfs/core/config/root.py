'''
Package defaults, optionally overridden by a user `defaults.json`.
'''

import os
import json
from ..errors import ConfigParseError, UnknownConfigKey

__all__ = [
    'CONFIG_DIR',
    'SYSTEM_DEFAULTS',
    'RUN_DEFAULTS',
    'core_config',
    'get_core_config',
    'run_default',
]

CONFIG_DIR = os.environ.get('STSK_OTFS_CONFIG_DIR', os.path.expanduser('~/.config/stsk_otfs'))

SYSTEM_DEFAULTS = {
    'n': 4,
    'm': 1,
    'nt': 2,
    'nr': 2,
    'tc': 2,
    'q': 2,
    'v': 2,
    'u': 1,
    'p': 2,
    'delta_f': 15e3,
    'f_c': 4e9,
    'scheme': 'delay',
    'l_max': None,
    'k_max': None,
    'constellation': 'psk',
}

RUN_DEFAULTS = {
    'seed': 0,
    'workers': 1,
    'design_trials': 50,
    'capacity_channel_draws': 200,
    'capacity_noise_draws': 50,
    'target_errors': 200,
    'max_trials': 1000000,
    'batch_size': 50,
    'abort_ratio': 0.001,
    'quadrature_order': 64,
    'codebook_limit': 24,
    'capacity_limit': 12,
    'exhaustive_pair_bits': 16,
    'sampled_pairs': 20000,
    'rank_tolerance': 1e-9,
}

core_config = {
    'system': dict(SYSTEM_DEFAULTS),
    'run': dict(RUN_DEFAULTS),
}
_loaded = False


def _merge(section, values, source):
    target = core_config[section]
    for key, value in values.items():
        if key not in target:
            raise UnknownConfigKey('Unknown %s key in %s: %s' % (section, source, key), key=key)
        target[key] = value


def get_core_config(reload=False):
    '''
    Return `core_config`, reading `defaults.json` from `CONFIG_DIR` on first use.
    '''
    global _loaded
    if _loaded and not reload:
        return core_config
    core_config['system'] = dict(SYSTEM_DEFAULTS)
    core_config['run'] = dict(RUN_DEFAULTS)
    filename = os.path.join(CONFIG_DIR, 'defaults.json')
    try:
        with open(filename, 'r') as f:
            user_config = json.load(f)
    except FileNotFoundError:
        user_config = None
    except ValueError as e:
        raise ConfigParseError('Invalid JSON in %s: %s' % (filename, e), source=filename)
    if user_config is not None:
        for section, values in user_config.items():
            if section not in core_config:
                raise UnknownConfigKey('Unknown section in %s: %s' % (filename, section), key=section)
            _merge(section, values, filename)
    _loaded = True
    return core_config


def run_default(key):
    return get_core_config()['run'][key]
