'''
Shared detector pieces: result records, reliability ordering, the LMMSE
front end and least-squares testing of a single DAP.
'''

from dataclasses import dataclass
from typing import Optional
import warnings
import numpy as np
import scipy.linalg
from ..core import CacheNode, run_default
from ..core.errors import SolveFailure

__all__ = [
    'DetectionResult',
    'ReliabilityOrder',
    'FactorCache',
    'DapTester',
    'channel_matrix',
    'lmmse_soft_estimate',
    'default_threshold',
]


@dataclass
class DetectionResult:
    dap: np.ndarray
    apm: np.ndarray
    residual: float
    candidates_tested: int
    dap_evaluations: int
    detector: str = ''
    parameter: Optional[int] = None

    def sparse(self, q):
        '''The detected K.'''
        dense = np.zeros(q * len(self.dap), dtype=complex)
        dense[self.dap] = self.apm
        return dense


@dataclass
class ReliabilityOrder:
    indices: np.ndarray
    scores: np.ndarray

    @classmethod
    def from_scores(cls, scores):
        '''Descending order; equal scores keep the lower index first.'''
        scores = np.asarray(scores)
        order = np.argsort(-scores, kind='stable')
        return cls(order, scores[order])

    def __len__(self):
        return len(self.indices)


def channel_matrix(channel):
    return channel.matrix if hasattr(channel, 'matrix') else np.asarray(channel)


def default_threshold(cfg, gamma):
    '''ε_0 = M_d N_r T_c / γ, the expected noise energy.'''
    return cfg.md * cfg.nr * cfg.tc / gamma


def lmmse_soft_estimate(y, channel, gamma, q=None):
    '''
    K̃ = (CᴴC + I/γ_s)⁻¹ Cᴴ ỹ with γ_s = γ/Q, solved by Cholesky.
    '''
    c = channel_matrix(channel)
    q = getattr(channel, 'q', 1) if q is None else q
    gram = c.conj().T @ c
    gamma_s = gamma / q
    if np.isfinite(gamma_s):
        gram = gram + np.eye(gram.shape[0]) / gamma_s
    try:
        with warnings.catch_warnings():
            warnings.simplefilter('ignore', scipy.linalg.LinAlgWarning)
            return scipy.linalg.solve(gram, c.conj().T @ y, assume_a='pos')
    except (np.linalg.LinAlgError, ValueError) as e:
        raise SolveFailure('LMMSE solve failed: %s' % e)


class FactorCache:
    '''
    Economic QR factors of C_𝒬 per DAP for one channel, kept in a trie keyed
    by the DAP's per-block DM indices.
    '''

    def __init__(self, channel, q, tolerance=None, max_entries=4096):
        self.matrix = channel_matrix(channel)
        self.q = q
        self.md = self.matrix.shape[1] // q
        self.tolerance = run_default('rank_tolerance') if tolerance is None else tolerance
        self.max_entries = max_entries
        self.root = CacheNode()
        self.entries = 0
        self.hits = 0

    def factor(self, digits):
        keys = [int(d) for d in digits]
        cached = self.root.lookup(keys)
        if cached is not None:
            self.hits += 1
            return cached
        factors = self._factorize(keys)
        if self.entries < self.max_entries:
            self.root.add(keys, factors)
            self.entries += 1
        return factors

    def _factorize(self, digits):
        active = np.arange(self.md) * self.q + np.asarray(digits, dtype=np.int64)
        qm, r = scipy.linalg.qr(self.matrix[:, active], mode='economic')
        diag = np.abs(np.diag(r))
        if diag.size == 0 or diag.min() <= self.tolerance * diag.max():
            raise SolveFailure('C_Q is rank deficient for DAP %s' % (digits,))
        return active, qm, r


class DapTester:
    '''
    LS estimate on one DAP followed by symbol-wise quantization.
    '''

    def __init__(self, y, channel, constellation, dap_space, cache=None):
        self.y = np.asarray(y)
        self.constellation = constellation
        self.dap_space = dap_space
        self.cache = cache if cache is not None else FactorCache(channel, dap_space.q)
        self.evaluations = 0

    def test(self, index):
        '''Return (residual, active indices, APM symbols) for DAP `index`.'''
        active, qm, r = self.cache.factor(self.dap_space.digits[index])
        estimate = scipy.linalg.solve_triangular(r, qm.conj().T @ self.y)
        apm = self.constellation.snap(estimate)
        diff = self.y - qm @ (r @ apm)
        self.evaluations += 1
        return float(np.vdot(diff, diff).real), active, apm

    def best(self, indices):
        '''Minimum residual over `indices`; ties go to the lowest DAP index.'''
        best = None
        for index in sorted(int(i) for i in indices):
            residual, active, apm = self.test(index)
            if best is None or residual < best[0]:
                best = residual, active, apm, index
        return best
