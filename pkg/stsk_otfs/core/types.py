'''
Constants of constellation kinds, resource allocation schemes and baseline
systems.
'''

PSK = 1
QAM = 2

DELAY_SCHEME = 1      # Scheme 1, users own delay columns
DOPPLER_SCHEME = 2    # Scheme 2, users own Doppler rows

SIMO_OTFS = 1
SM_OTFS = 2
STSK_OFDM_MA = 3
STSK_OTFS_MA = 4

constellations = {
    'psk': PSK,
    'qam': QAM,
}

schemes = {
    'delay': DELAY_SCHEME,
    'scheme1': DELAY_SCHEME,
    'doppler': DOPPLER_SCHEME,
    'scheme2': DOPPLER_SCHEME,
}

baselines = {
    'simo-otfs': SIMO_OTFS,
    'sm-otfs': SM_OTFS,
    'stsk-ofdm-ma': STSK_OFDM_MA,
    'stsk-otfs-ma': STSK_OTFS_MA,
}

def get_name(mapping, code, default=None):
    '''
    Get the canonical (first registered) name of a code
    '''
    for name, value in mapping.items():
        if value == code:
            return name
    if default is None:
        return str(code)
    return default

def get_code(mapping, name, default=None):
    '''
    Get code from name, case and `_`/`-` insensitive
    '''
    if isinstance(name, int):
        return name if name in mapping.values() else default
    key = name.strip().lower().replace('_', '-')
    return mapping.get(key, mapping.get(key.replace('-', ''), default))
