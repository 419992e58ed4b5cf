'''
BER union bound, diversity order and coding gain of single-user systems.
'''

import numpy as np
from ..core import logger, build_constellation, run_default
from ..core.errors import DimensionMismatch
from ..core.rand import STREAM_PAIRS, substream
from ..core.utils import hamming_distance
from ..channel import build_matrix_model
from ..modem import Codebook, ErrorPairs, build_resource_allocation, difference_spectra, evaluate_design_metrics
from .curves import Curve, db_to_linear, check_snr_grid
from .pep import pep_integral, pep_upper_bound

__all__ = [
    'union_bound_ber',
    'diversity_and_coding_gain',
]


def union_bound_ber(cfg, dm_set, profile, snr_grid, method='exact', order=None, error_pairs=None):
    '''
    P_e ≈ 1/(2^L L) Σ_c Σ_{e≠c} D_b(b_c, b_e) P_E(X_c → X_e) over the matrix-model
    codebook of `profile`. `method='chernoff'` uses the θ = π/2 bound per pair.

    Above `exhaustive_pair_bits` the double sum is estimated from the
    sampled pairs of `ErrorPairs` and the curve is marked `estimated`.
    '''
    if cfg.u != 1:
        raise DimensionMismatch('Union bound needs a single-user config, got U=%d' % cfg.u)
    dm_set.check(cfg)
    snr_grid = check_snr_grid(snr_grid)
    gammas = db_to_linear(snr_grid)
    constellation = build_constellation(cfg.v, cfg.constellation)
    codebook = Codebook(cfg, constellation)
    basis = build_matrix_model(profile, cfg).codeword_basis(cfg, dm_set, build_resource_allocation(cfg))
    logger.info('[bound][profile] %s', profile.describe())

    if error_pairs is None:
        error_pairs = ErrorPairs(cfg.n_bits, substream(run_default('seed'), STREAM_PAIRS))
    if error_pairs.estimated:
        logger.info('[bound][pairs] sampling %d of the error space (estimate)', len(error_pairs))

    total = np.zeros(len(gammas))
    for i, j in error_pairs:
        eig, _ = difference_spectra(basis, codebook.vectors(i), codebook.vectors(j))
        if method == 'chernoff':
            pep = pep_upper_bound(eig, gammas, cfg.p, cfg.nr)
        else:
            pep = pep_integral(eig, gammas, cfg.p, cfg.nr, order)
        total += pep @ hamming_distance(i, j).astype(float)
    # scale the visited pairs up to all unordered pairs
    total *= codebook.size * (codebook.size - 1) / 2 / len(error_pairs)
    ber = 2 * total / (codebook.size * cfg.n_bits)
    meta = {'config_hash': cfg.config_hash(), 'dm_seed': dm_set.seed, 'method': method,
            'estimated': bool(error_pairs.estimated), 'pairs': len(error_pairs)}
    return Curve('union_bound', snr_grid, ber, meta=meta)


def diversity_and_coding_gain(cfg, dm_set, profile, error_pairs=None):
    '''
    G_D = min rank(R) N_r and G_C = min over minimum-rank pairs of (Πλ)^{1/r}.
    '''
    metrics = evaluate_design_metrics(dm_set, cfg, profile, error_pairs)
    g_d = metrics.lambda_d * cfg.nr
    g_c = metrics.lambda_c ** (1.0 / metrics.lambda_d) if metrics.lambda_d > 0 else 0.0
    return g_d, float(g_c)
