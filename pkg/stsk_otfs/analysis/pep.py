'''
Pairwise error probability over Rayleigh fading.
'''

from dataclasses import dataclass
from functools import lru_cache
import numpy as np
from scipy.special import roots_legendre
from ..core import run_default
from ..core.errors import NonHermitianInput
from .curves import Curve, db_to_linear

__all__ = [
    'PepResult',
    'pep_integral',
    'pairwise_error_probability',
    'pep_upper_bound',
    'pep_asymptote',
    'benchmark_curve',
]


@dataclass
class PepResult:
    value: float
    rank: int
    eigenvalues: np.ndarray


@lru_cache(maxsize=8)
def _nodes(order):
    '''Gauss-Legendre nodes mapped to θ ∈ [0, π/2].'''
    x, w = roots_legendre(order)
    return np.pi / 4 * (x + 1), np.pi / 4 * w


def pep_integral(eigenvalues, gamma, p, nr, order=None):
    '''
    (1/π) ∫₀^{π/2} Π_j (1 + λ_j γ / (4P sin²θ))^{-N_r} dθ.

    `eigenvalues` is (n, r) and zero-padded; `gamma` may be an array. The
    result has shape (len(gamma), n).
    '''
    order = run_default('quadrature_order') if order is None else order
    theta, weights = _nodes(order)
    scale = 1 / (4 * p * np.sin(theta) ** 2)
    lam = np.atleast_2d(np.asarray(eigenvalues, dtype=float))
    gammas = np.atleast_1d(np.asarray(gamma, dtype=float))
    out = np.empty((len(gammas), lam.shape[0]))
    for k, g in enumerate(gammas):
        if np.isinf(g):
            out[k] = np.where(np.any(lam > 0, axis=1), 0.0, 0.5)
            continue
        log_det = np.log1p(lam[:, None, :] * (g * scale)[None, :, None]).sum(axis=-1)
        out[k] = np.exp(-nr * log_det) @ weights / np.pi
    return out


def pairwise_error_probability(r, gamma, p, nr, order=None, tolerance=None):
    '''
    PEP of a pair with codeword difference Gram matrix R = E Eᴴ.
    '''
    tolerance = run_default('rank_tolerance') if tolerance is None else tolerance
    r = np.asarray(r)
    if r.ndim != 2 or r.shape[0] != r.shape[1]:
        raise NonHermitianInput('R must be square, got shape %s' % (r.shape,))
    scale = max(1.0, float(np.abs(r).max(initial=0.0)))
    if not np.allclose(r, r.conj().T, rtol=0, atol=1e-9 * scale):
        raise NonHermitianInput('R is not Hermitian')
    lam = np.linalg.eigvalsh((r + r.conj().T) / 2)
    if lam.min(initial=0.0) < -1e-9 * scale:
        raise NonHermitianInput('R is not positive semidefinite')
    lam_max = lam.max(initial=0.0)
    kept = lam[lam > tolerance * lam_max] if lam_max > 0 else lam[:0]
    value = pep_integral(kept[None, :], gamma, p, nr, order)[0, 0] if kept.size else 0.5
    return PepResult(float(value), int(kept.size), kept[::-1])


def pep_upper_bound(eigenvalues, gamma, p, nr):
    '''½ Π_j (1 + λ_j γ / 4P)^{-N_r}, the θ = π/2 value of the integrand.'''
    lam = np.atleast_2d(np.asarray(eigenvalues, dtype=float))
    gammas = np.atleast_1d(np.asarray(gamma, dtype=float))
    log_det = np.log1p(lam[None, :, :] * gammas[:, None, None] / (4 * p)).sum(axis=-1)
    return 0.5 * np.exp(-nr * log_det)


def pep_asymptote(eigenvalues, gamma, p, nr):
    '''High-SNR form ½ [(Πλ)^{1/r} γ / 4P]^{-r N_r}.'''
    lam = np.atleast_2d(np.asarray(eigenvalues, dtype=float))
    gammas = np.atleast_1d(np.asarray(gamma, dtype=float))
    positive = lam > 0
    rank = positive.sum(axis=1)
    log_prod = np.where(positive, np.log(np.where(positive, lam, 1.0)), 0.0).sum(axis=1)
    exponent = -nr * (log_prod[None, :] + rank[None, :] * np.log(gammas[:, None] / (4 * p)))
    return 0.5 * np.exp(exponent)


def benchmark_curve(g_d, p, snr_db):
    '''Reference curve ½ (γ/4P)^{-G_D}; the coding gain is the shift from it.'''
    gammas = db_to_linear(snr_db)
    return Curve('benchmark', snr_db, 0.5 * (gammas / (4 * p)) ** (-float(g_d)), meta={'G_D': int(g_d), 'P': p})
