'''
Integer delay-Doppler path profiles and AWGN.
'''

from dataclasses import dataclass, replace
import numpy as np
from ..core.errors import TooManyPaths
from ..core.rand import as_generator
from ..core.utils import ParseError

__all__ = [
    'PathProfile',
    'sample_paths',
    'sample_gains',
    'add_noise',
    'dump_profile',
    'load_profile',
]


@dataclass
class PathProfile:
    '''
    Delay indices l_i, Doppler indices k_i (signed) and per-link gains of
    shape (U, N_r, N_t, P).
    '''
    delays: np.ndarray
    dopplers: np.ndarray
    gains: np.ndarray

    @property
    def p(self):
        return len(self.delays)

    def phases(self, md):
        '''e^{-j2π l_i k_i / M_d} per path.'''
        return np.exp(-2j * np.pi * self.delays * self.dopplers / md)

    def with_gains(self, gains):
        return replace(self, gains=np.asarray(gains, dtype=complex))

    def describe(self):
        return 'P=%d paths (l, k)=%s' % (self.p, list(zip(self.delays.tolist(), self.dopplers.tolist())))


def sample_gains(cfg, rng, p=None):
    '''i.i.d. CN(0, 1/P) gains for every (u, n_r, n_t, i).'''
    p = cfg.p if p is None else p
    shape = (cfg.u, cfg.nr, cfg.nt, p)
    scale = np.sqrt(0.5 / p)
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def sample_paths(cfg, rng):
    '''
    Draw P distinct (l, k mod N) cells with l uniform on [0, l_max] and k
    uniform on [-k_max, k_max], then fresh gains.
    '''
    rng = as_generator(rng)
    if cfg.p > cfg.path_grid_size:
        raise TooManyPaths('P=%d exceeds the %d distinct delay-Doppler cells' % (cfg.p, cfg.path_grid_size))
    cells = set()
    delays, dopplers = [], []
    while len(delays) < cfg.p:
        l = int(rng.integers(0, cfg.max_delay + 1))
        k = int(rng.integers(-cfg.max_doppler, cfg.max_doppler + 1))
        if (l, k % cfg.n) in cells:
            continue
        cells.add((l, k % cfg.n))
        delays.append(l)
        dopplers.append(k)
    return PathProfile(np.array(delays), np.array(dopplers), sample_gains(cfg, rng))


def add_noise(signal, gamma, rng):
    '''Add CN(0, 1/γ) noise.'''
    signal = np.asarray(signal, dtype=complex)
    if np.isinf(gamma):
        return signal.copy()
    rng = as_generator(rng)
    scale = np.sqrt(0.5 / gamma)
    return signal + scale * (rng.standard_normal(signal.shape) + 1j * rng.standard_normal(signal.shape))


def dump_profile(filename, profile):
    '''One line `u nr nt l k re im` per link and path.'''
    with open(filename, 'w') as f:
        for (u, nr, nt, i), h in np.ndenumerate(profile.gains):
            f.write('%d %d %d %d %d %.17g %.17g\n' % (
                u, nr, nt, profile.delays[i], profile.dopplers[i], h.real, h.imag))


def load_profile(filename):
    entries = []
    paths = {}
    with open(filename, 'r') as f:
        for lineno, line in enumerate(f, 1):
            if not line.strip() or line.startswith('#'):
                continue
            parts = line.split()
            if len(parts) != 7:
                raise ParseError(filename, lineno, 'expected `u nr nt l k re im`')
            try:
                u, nr, nt, l, k = (int(x) for x in parts[:5])
                h = complex(float(parts[5]), float(parts[6]))
            except ValueError:
                raise ParseError(filename, lineno, 'bad number')
            i = paths.setdefault((l, k), len(paths))
            entries.append((lineno, u, nr, nt, i, h))
    if not entries:
        raise ParseError(filename, 1, 'empty channel dump')
    shape = tuple(max(e[k] for e in entries) + 1 for k in range(1, 4)) + (len(paths),)
    gains = np.full(shape, np.nan, dtype=complex)
    for lineno, u, nr, nt, i, h in entries:
        gains[u, nr, nt, i] = h
    if np.isnan(gains.real).any():
        raise ParseError(filename, entries[-1][0], 'missing gains for some links')
    cells = sorted(paths, key=paths.get)
    return PathProfile(np.array([c[0] for c in cells]), np.array([c[1] for c in cells]), gains)
