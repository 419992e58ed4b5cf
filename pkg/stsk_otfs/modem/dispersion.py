'''
Dispersion matrix sets, their rank and eigenvalue design metrics, and the
random-search design.
'''

from dataclasses import dataclass
from typing import Optional
import numpy as np
import scipy.linalg
from ..core import logger, build_constellation, run_default
from ..core.errors import DimensionMismatch, EmptyErrorSpace
from ..core.pool import run_jobs
from ..core.rand import STREAM_DESIGN, STREAM_PAIRS, as_generator, substream
from ..channel import matrix_model
from .codebook import Codebook
from .mapping import build_resource_allocation

__all__ = [
    'DispersionMatrixSet',
    'DesignMetrics',
    'ErrorPairs',
    'random_unitary',
    'truncate_to_dm',
    'generate_candidate',
    'difference_spectra',
    'evaluate_design_metrics',
    'design_dispersion_matrices',
]

POWER_TOLERANCE = 1e-9


@dataclass
class DispersionMatrixSet:
    '''
    Q dispersion matrices of shape (N_t, T_c), stored as an array (Q, N_t, T_c).
    '''
    matrices: np.ndarray
    seed: Optional[int] = None
    trial: Optional[int] = None

    def __post_init__(self):
        self.matrices = np.asarray(self.matrices, dtype=complex)
        if self.matrices.ndim != 3:
            raise DimensionMismatch('DM set must have shape (Q, N_t, T_c), got %s' % (self.matrices.shape,))
        power = self.power()
        if np.any(np.abs(power - self.tc) > POWER_TOLERANCE * max(1, self.tc)):
            raise DimensionMismatch('Power constraint trace(AᴴA) = %d violated: %s' % (self.tc, power))
        flat = self.matrices.reshape(self.q, -1)
        for a in range(self.q):
            for b in range(a + 1, self.q):
                if np.allclose(flat[a], flat[b], rtol=0, atol=1e-12):
                    raise DimensionMismatch('Dispersion matrices %d and %d coincide' % (a + 1, b + 1))

    @property
    def q(self):
        return self.matrices.shape[0]

    @property
    def nt(self):
        return self.matrices.shape[1]

    @property
    def tc(self):
        return self.matrices.shape[2]

    def power(self):
        return np.einsum('qab,qab->q', self.matrices.conj(), self.matrices).real

    @property
    def chi(self):
        '''χ = [vec(A_1), ..., vec(A_Q)] with column-major vec, shape (N_t T_c, Q).'''
        return self.matrices.transpose(0, 2, 1).reshape(self.q, -1).T

    def check(self, cfg):
        if self.matrices.shape != (cfg.q, cfg.nt, cfg.tc):
            raise DimensionMismatch('DM set shape %s does not match (Q, N_t, T_c) = (%d, %d, %d)' % (
                self.matrices.shape, cfg.q, cfg.nt, cfg.tc))
        return self


@dataclass
class DesignMetrics:
    lambda_d: int
    lambda_c: float
    pairs: int = 0
    estimated: bool = False

    def key(self):
        return self.lambda_d, self.lambda_c

    def to_dict(self):
        return {
            'lambda_d': int(self.lambda_d),
            'lambda_c': float(self.lambda_c),
            'pairs': int(self.pairs),
            'estimated': bool(self.estimated),
        }


class ErrorPairs:
    '''
    Repeatable iterator over chunks `(i, j)` of distinct codeword index pairs.

    Every unordered pair is visited when L is at most `exhaustive_bits`;
    otherwise `samples` pairs are drawn uniformly once and reused.
    '''

    def __init__(self, n_bits, rng=None, exhaustive_bits=None, samples=None, chunk_size=8192):
        self.n_bits = n_bits
        self.size = 1 << n_bits
        self.chunk_size = chunk_size
        exhaustive_bits = run_default('exhaustive_pair_bits') if exhaustive_bits is None else exhaustive_bits
        self.estimated = n_bits > exhaustive_bits
        if self.estimated:
            samples = run_default('sampled_pairs') if samples is None else samples
            rng = as_generator(rng)
            i = rng.integers(0, self.size, samples)
            j = rng.integers(0, self.size - 1, samples)
            j += j >= i
            self._sampled = i, j
            self.count = samples
        else:
            self._sampled = None
            self.count = self.size * (self.size - 1) // 2

    def __len__(self):
        return self.count

    def __iter__(self):
        if self._sampled is not None:
            i, j = self._sampled
            for start in range(0, self.count, self.chunk_size):
                yield i[start:start + self.chunk_size], j[start:start + self.chunk_size]
            return
        rows, pending = [], 0
        for i in range(self.size - 1):
            rows.append(i)
            pending += self.size - 1 - i
            if pending >= self.chunk_size:
                yield self._rows(rows)
                rows, pending = [], 0
        if rows:
            yield self._rows(rows)

    def _rows(self, rows):
        i = np.concatenate([np.full(self.size - 1 - r, r) for r in rows])
        j = np.concatenate([np.arange(r + 1, self.size) for r in rows])
        return i, j


def random_unitary(dim, rng):
    '''
    Haar-distributed unitary: QR of a complex Gaussian matrix with the
    phases of R's diagonal moved into Q.
    '''
    rng = as_generator(rng)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = scipy.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def truncate_to_dm(u_tilde, nt, tc):
    '''
    Cut a T̄×T̄ unitary to an N_t×T_c DM with trace(AᴴA) = T_c.
    '''
    u_tilde = np.asarray(u_tilde)
    dim = max(nt, tc)
    if u_tilde.shape != (dim, dim):
        raise DimensionMismatch('Expected a %dx%d unitary, got %s' % (dim, dim, u_tilde.shape))
    if nt > tc:
        return u_tilde[:, :tc]
    if tc > nt:
        return np.sqrt(tc / nt) * u_tilde[:nt, :]
    return u_tilde


def generate_candidate(cfg, seed, trial):
    '''The DM set of design trial `trial`.'''
    rng = substream(seed, STREAM_DESIGN, trial)
    dim = max(cfg.nt, cfg.tc)
    matrices = [truncate_to_dm(random_unitary(dim, rng), cfg.nt, cfg.tc) for _ in range(cfg.q)]
    return DispersionMatrixSet(np.array(matrices), seed=seed, trial=trial)


def difference_spectra(basis, k_i, k_j, tolerance=None):
    '''
    Nonzero eigenvalues of R = (D_i - D_j)(D_i - D_j)ᴴ for stacks of
    codeword pairs, zero-padded, and their ranks.

    `basis[k]` is the matrix-model codeword of the unit vector e_k, so
    D(K) = Σ_k K_k basis[k].
    '''
    tolerance = run_default('rank_tolerance') if tolerance is None else tolerance
    delta = np.einsum('nk,kab->nab', np.atleast_2d(k_i - k_j), basis)
    s = np.linalg.svd(delta, compute_uv=False)
    keep = s > tolerance * s[:, :1]
    return np.where(keep, s ** 2, 0.0), keep.sum(axis=1)


def _single_user(cfg):
    if cfg.u != 1:
        raise DimensionMismatch('Error-space analysis needs a single-user config, got U=%d' % cfg.u)


def evaluate_design_metrics(dm_set, cfg, profile, error_pairs=None):
    '''
    Λ_D = min rank(R) and Λ_C = min Πλ over the pairs reaching Λ_D.
    '''
    _single_user(cfg)
    dm_set.check(cfg)
    constellation = build_constellation(cfg.v, cfg.constellation)
    codebook = Codebook(cfg, constellation)
    basis = matrix_model.build_matrix_model(profile, cfg).codeword_basis(cfg, dm_set, build_resource_allocation(cfg))
    if error_pairs is None:
        error_pairs = ErrorPairs(cfg.n_bits, substream(run_default('seed'), STREAM_PAIRS))
    lambda_d, lambda_c, count = None, None, 0
    for i, j in error_pairs:
        if not len(i):
            continue
        eig, rank = difference_spectra(basis, codebook.vectors(i), codebook.vectors(j))
        product = np.prod(np.where(eig > 0, eig, 1.0), axis=1)
        product[rank == 0] = 0.0
        low = int(rank.min())
        low_c = float(product[rank == low].min())
        if lambda_d is None or low < lambda_d:
            lambda_d, lambda_c = low, low_c
        elif low == lambda_d:
            lambda_c = min(lambda_c, low_c)
        count += len(i)
    if not count:
        raise EmptyErrorSpace()
    return DesignMetrics(lambda_d, lambda_c, count, bool(getattr(error_pairs, 'estimated', False)))


def design_dispersion_matrices(cfg, n_trials, profile, seed=0, workers=1):
    '''
    Random search over `n_trials` candidate sets: keep the sets with the
    largest Λ_D, then the largest Λ_C among them. Ties keep the earliest trial.
    Candidates are scored on `workers` processes.
    '''
    if n_trials < 1:
        raise DimensionMismatch('n_trials must be >= 1')
    _single_user(cfg)
    logger.info('[design][profile] %s', profile.describe())
    pairs = ErrorPairs(cfg.n_bits, substream(seed, STREAM_PAIRS))
    if pairs.estimated:
        logger.info('[design][pairs] sampling %d of the error space (estimate)', pairs.count)
    candidates = [generate_candidate(cfg, seed, trial) for trial in range(n_trials)]
    scores = run_jobs(evaluate_design_metrics, [(c, cfg, profile, pairs) for c in candidates], workers)
    best, best_metrics = None, None
    for candidate, metrics in zip(candidates, scores):
        logger.debug('[design][%d] lambda_d=%d lambda_c=%.6g', candidate.trial, metrics.lambda_d, metrics.lambda_c)
        if best is None or metrics.key() > best_metrics.key():
            best, best_metrics = candidate, metrics
    logger.info('[design][best] trial=%d lambda_d=%d lambda_c=%.6g', best.trial, best_metrics.lambda_d, best_metrics.lambda_c)
    return best, best_metrics
