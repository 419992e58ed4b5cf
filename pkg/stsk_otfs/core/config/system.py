'''
System parameters and the dimensions derived from them.
'''

import dataclasses
from dataclasses import dataclass, field
from typing import Optional
from .. import types
from ..errors import (
    ConfigParseError, DelayDopplerOutOfRange, DimensionMismatch,
    IndivisibleUsers, NonPowerOfTwo, UnsupportedOrder,
)
from ..utils import is_power_of_two, log2_int, canonical_hash
from .root import SYSTEM_DEFAULTS

__all__ = [
    'SystemConfig',
    'ValidatedConfig',
    'validate_config',
]

_COUNTS = ('n', 'm', 'nt', 'nr', 'tc', 'q', 'v', 'u', 'p')


@dataclass(frozen=True)
class SystemConfig:
    '''
    Raw frame, antenna and modulation parameters.

    n/m are the Doppler/delay grid sizes, nt/nr the antennas, tc the OTFS
    slots per STSK symbol, q the dispersion matrix count, v the constellation
    order, u the user count and p the path count.
    '''
    n: int = SYSTEM_DEFAULTS['n']
    m: int = SYSTEM_DEFAULTS['m']
    nt: int = SYSTEM_DEFAULTS['nt']
    nr: int = SYSTEM_DEFAULTS['nr']
    tc: int = SYSTEM_DEFAULTS['tc']
    q: int = SYSTEM_DEFAULTS['q']
    v: int = SYSTEM_DEFAULTS['v']
    u: int = SYSTEM_DEFAULTS['u']
    p: int = SYSTEM_DEFAULTS['p']
    delta_f: float = SYSTEM_DEFAULTS['delta_f']
    f_c: float = SYSTEM_DEFAULTS['f_c']
    scheme: str = SYSTEM_DEFAULTS['scheme']
    l_max: Optional[int] = SYSTEM_DEFAULTS['l_max']
    k_max: Optional[int] = SYSTEM_DEFAULTS['k_max']
    constellation: str = SYSTEM_DEFAULTS['constellation']

    def raw(self):
        return {f.name: getattr(self, f.name) for f in dataclasses.fields(SystemConfig)}


@dataclass(frozen=True)
class ValidatedConfig(SystemConfig):
    '''
    A checked `SystemConfig` with derived dimensions.

    `md` is M_d = NM, `g` the blocks per user, `j` the delay columns per user,
    `l1`/`l2`/`lb` the bits per block, `n_bits` the bits per frame (L) and
    `rate` the rate R in bits/s/Hz.
    '''
    md: int = field(init=False)
    g: int = field(init=False)
    j: int = field(init=False)
    l1: int = field(init=False)
    l2: int = field(init=False)
    lb: int = field(init=False)
    n_bits: int = field(init=False)
    rate: float = field(init=False)
    max_delay: int = field(init=False)
    max_doppler: int = field(init=False)
    scheme_code: int = field(init=False)
    constellation_code: int = field(init=False)

    def __post_init__(self):
        for name in _COUNTS:
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise DimensionMismatch('%s must be a positive integer, got %r' % (name, value), key=name)
        if not is_power_of_two(self.q):
            raise NonPowerOfTwo('Q must be a power of two, got %d' % self.q, key='q')
        if not is_power_of_two(self.v) or self.v < 2:
            raise NonPowerOfTwo('V must be a power of two >= 2, got %d' % self.v, key='v')
        if self.m % self.u:
            raise IndivisibleUsers('M=%d is not divisible by U=%d' % (self.m, self.u))
        scheme_code = types.get_code(types.schemes, self.scheme)
        if scheme_code is None:
            raise ConfigParseError('Unknown allocation scheme: %r' % (self.scheme,), key='scheme')
        constellation_code = types.get_code(types.constellations, self.constellation)
        if constellation_code is None:
            raise UnsupportedOrder('Unknown constellation kind: %r' % (self.constellation,))
        if constellation_code == types.QAM and log2_int(self.v) % 2:
            raise UnsupportedOrder('Square QAM needs an even number of bits, got V=%d' % self.v)
        max_delay = self.m - 1 if self.l_max is None else self.l_max
        max_doppler = self.n - 1 if self.k_max is None else self.k_max
        if not 0 <= max_delay <= self.m - 1:
            raise DelayDopplerOutOfRange('l_max=%d outside [0, %d]' % (max_delay, self.m - 1))
        if not 0 <= max_doppler <= self.n - 1:
            raise DelayDopplerOutOfRange('k_max=%d outside [0, %d]' % (max_doppler, self.n - 1))

        md = self.n * self.m
        l1 = log2_int(self.q)
        l2 = log2_int(self.v)
        derived = {
            'scheme': types.get_name(types.schemes, scheme_code),
            'constellation': types.get_name(types.constellations, constellation_code),
            'md': md,
            'g': md // self.u,
            'j': self.m // self.u,
            'l1': l1,
            'l2': l2,
            'lb': l1 + l2,
            'n_bits': md * (l1 + l2),
            'rate': (l1 + l2) / self.tc,
            'max_delay': max_delay,
            'max_doppler': max_doppler,
            'scheme_code': scheme_code,
            'constellation_code': constellation_code,
        }
        for key, value in derived.items():
            object.__setattr__(self, key, value)

    @property
    def n_daps(self):
        '''Number of DAPs per user frame, C = Q^G.'''
        return self.q ** self.g

    @property
    def path_grid_size(self):
        '''Distinct (l, k mod N) cells paths can occupy.'''
        return (self.max_delay + 1) * min(2 * self.max_doppler + 1, self.n)

    def replace(self, **kw):
        '''Copy with changed raw fields, validated again.'''
        values = self.raw()
        values.update(kw)
        return ValidatedConfig(**values)

    def snapshot(self):
        data = self.raw()
        data.update(
            M_d=self.md, G=self.g, J=self.j, L1=self.l1, L2=self.l2,
            Lb=self.lb, L=self.n_bits, R=self.rate,
            l_max=self.max_delay, k_max=self.max_doppler,
        )
        return data

    def config_hash(self):
        return canonical_hash(self.snapshot())

    def __str__(self):
        return 'N=%d M=%d Nt=%d Nr=%d Tc=%d Q=%d V=%d U=%d P=%d L=%d' % (
            self.n, self.m, self.nt, self.nr, self.tc, self.q, self.v, self.u, self.p, self.n_bits)


def validate_config(raw):
    '''
    Check `raw` against the system invariants and derive all dimensions.

    Raises NonPowerOfTwo, IndivisibleUsers or DelayDopplerOutOfRange.
    '''
    if isinstance(raw, ValidatedConfig):
        return raw
    if isinstance(raw, dict):
        raw = SystemConfig(**raw)
    return ValidatedConfig(**raw.raw())
