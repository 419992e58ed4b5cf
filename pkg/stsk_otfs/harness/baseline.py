'''
Benchmark systems expressed as special STSK-OTFS configurations.
'''

import numpy as np
from ..core import types
from ..core.errors import IncompatibleBase, StskError
from ..core.utils import is_power_of_two, log2_int
from ..modem import DispersionMatrixSet, generate_candidate

__all__ = [
    'baseline_config',
    'rate_equivalent_pairs',
]


def baseline_config(kind, base, dm_set=None, seed=0):
    '''
    Return (cfg, dm_set) of a benchmark derived from `base`:

    - `sm-otfs`: T_c = 1 and Q = N_t with A_q the q-th identity column
    - `simo-otfs`: N_t = Q = T_c = 1 with A = [[1]]
    - `stsk-ofdm-ma`: N = 1 and no Doppler, with the given (or a random) DM set
    - `stsk-otfs-ma`: `base` itself
    '''
    code = types.get_code(types.baselines, kind)
    if code is None:
        raise IncompatibleBase('Unknown baseline: %r' % (kind,))
    try:
        if code == types.SM_OTFS:
            if not is_power_of_two(base.nt):
                raise IncompatibleBase('SM-OTFS needs a power-of-two N_t, got %d' % base.nt)
            cfg = base.replace(tc=1, q=base.nt)
            return cfg, DispersionMatrixSet(np.eye(base.nt, dtype=complex)[:, :, None])
        if code == types.SIMO_OTFS:
            cfg = base.replace(nt=1, q=1, tc=1)
            return cfg, DispersionMatrixSet(np.ones((1, 1, 1), dtype=complex))
        if code == types.STSK_OFDM_MA:
            cfg = base.replace(n=1, k_max=0)
        else:
            cfg = base
        if dm_set is None:
            dm_set = generate_candidate(cfg, seed, 0)
        dm_set.check(cfg)
        return cfg, dm_set
    except IncompatibleBase:
        raise
    except StskError as e:
        raise IncompatibleBase('Cannot derive %s from this config: %s' % (kind, e.message))


def rate_equivalent_pairs(rate, tc):
    '''
    The (Q, V) pairs with log2(QV) / T_c = `rate`, V >= 2.
    '''
    bits = rate * tc
    if bits != int(bits) or bits < 1:
        raise IncompatibleBase('R T_c = %g is not a positive integer' % bits)
    bits = int(bits)
    return [(1 << l1, 1 << (bits - l1)) for l1 in range(bits)]
