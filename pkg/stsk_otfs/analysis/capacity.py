'''
DCMC capacity of a single-user system by Monte Carlo.
'''

import numpy as np
from scipy.special import logsumexp
from ..core import logger, build_constellation, run_default
from ..core.errors import DimensionMismatch
from ..core.pool import run_jobs
from ..core.rand import STREAM_CAPACITY, substream
from ..channel import assemble_equivalent_model, sample_paths
from ..modem import Codebook, build_resource_allocation, build_st_mapper
from .curves import Curve, db_to_linear, check_snr_grid

__all__ = [
    'dcmc_capacity',
    'capacity_per_channel',
]


def capacity_per_channel(codewords, channel, gammas, noise, n_bits, dims, chunk_size=512):
    '''
    (L - 2^{-L} Σ_i E_n[log2 Σ_j exp(Ψ_ij)]) / (M_d T_c) for one channel,
    with Ψ_ij = -γ‖C(B_i - B_j)‖² - 2√γ Re(nᴴC(B_i - B_j)) and unit-variance
    noise draws `noise` shared by all SNR points. Rows i are processed in
    chunks of `chunk_size`.
    '''
    received = codewords @ channel.T
    energy = np.einsum('ij,ij->i', received.conj(), received).real
    projections = (noise.conj() @ received.T).real
    acc = np.zeros(len(gammas))
    for start in range(0, len(received), chunk_size):
        stop = min(start + chunk_size, len(received))
        cross = (received[start:stop].conj() @ received.T).real
        distance = energy[start:stop, None] + energy[None, :] - 2 * cross
        for k, gamma in enumerate(gammas):
            root = np.sqrt(gamma)
            for w in projections:
                psi = -gamma * distance - 2 * root * (w[start:stop, None] - w[None, :])
                acc[k] += logsumexp(psi, axis=1).sum()
    mean = acc / (len(received) * len(projections))
    return (n_bits - mean / np.log(2)) / dims


def _capacity_draw(cfg, dm_set, gammas, n_noise_draws, seed, draw):
    rng = substream(seed, STREAM_CAPACITY, draw)
    codewords = Codebook(cfg, build_constellation(cfg.v, cfg.constellation)).dense
    profile = sample_paths(cfg, rng)
    channel = assemble_equivalent_model(profile, cfg, build_resource_allocation(cfg), build_st_mapper(cfg), dm_set)
    rows = cfg.md * cfg.nr * cfg.tc
    noise = np.sqrt(0.5) * (rng.standard_normal((n_noise_draws, rows)) + 1j * rng.standard_normal((n_noise_draws, rows)))
    values = capacity_per_channel(codewords, channel.matrix, gammas, noise, cfg.n_bits, cfg.md * cfg.tc)
    logger.debug('[capacity][%d] %s', draw, np.array2string(values, precision=4))
    return values


def dcmc_capacity(cfg, dm_set, snr_grid, n_channel_draws=None, n_noise_draws=None, seed=0, limit=None, workers=1):
    '''
    Mean DCMC capacity over random channels (fresh paths and gains per
    draw) with its standard error, per SNR point. Codebooks above 2^limit
    words (`capacity_limit`) are refused before anything is allocated.
    Channel draws are spread over `workers` processes; each draw has its
    own substream so the result does not depend on `workers`.
    '''
    if cfg.u != 1:
        raise DimensionMismatch('DCMC capacity needs a single-user config, got U=%d' % cfg.u)
    limit = run_default('capacity_limit') if limit is None else limit
    if cfg.n_bits > limit:
        raise DimensionMismatch(
            'DCMC capacity over 2^%d codewords exceeds the limit of 2^%d' % (cfg.n_bits, limit), bits=cfg.n_bits)
    dm_set.check(cfg)
    n_channel_draws = run_default('capacity_channel_draws') if n_channel_draws is None else n_channel_draws
    n_noise_draws = run_default('capacity_noise_draws') if n_noise_draws is None else n_noise_draws
    if n_channel_draws < 1 or n_noise_draws < 1:
        raise DimensionMismatch('Capacity needs at least one channel and one noise draw')
    snr_grid = check_snr_grid(snr_grid)
    gammas = db_to_linear(snr_grid)
    jobs = [(cfg, dm_set, gammas, n_noise_draws, seed, draw) for draw in range(n_channel_draws)]
    per_draw = np.array(run_jobs(_capacity_draw, jobs, workers))
    mean = per_draw.mean(axis=0)
    if n_channel_draws > 1:
        stderr = per_draw.std(axis=0, ddof=1) / np.sqrt(n_channel_draws)
    else:
        stderr = np.zeros(len(gammas))
    meta = {'config_hash': cfg.config_hash(), 'dm_seed': dm_set.seed, 'seed': seed,
            'channel_draws': n_channel_draws, 'noise_draws': n_noise_draws}
    return Curve('capacity', snr_grid, np.clip(mean, 0.0, cfg.rate), stderr, meta)
