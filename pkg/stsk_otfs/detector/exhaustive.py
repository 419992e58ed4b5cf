'''
Exhaustive maximum-likelihood detectors.
'''

import numpy as np
from ..core import run_default
from ..core.errors import SearchSpaceTooLarge
from ..core.utils import bits_to_int, int_to_bits
from .base import DetectionResult, channel_matrix

__all__ = [
    'mld',
    'factorized_mld',
]


def _residuals(y, products):
    diff = y - products
    return np.einsum('ij,ij->i', diff.conj(), diff).real


def mld(y, channel, codebook, chunk_size=4096):
    '''
    argmin_i ‖ỹ - C B_i‖² over all 2^L codewords, lowest index on ties.
    '''
    c = channel_matrix(channel)
    y = np.asarray(y)
    best_residual, best_index = np.inf, -1
    for start, vectors in codebook.chunks(chunk_size):
        residuals = _residuals(y, vectors @ c.T)
        k = int(np.argmin(residuals))
        if residuals[k] < best_residual:
            best_residual, best_index = float(residuals[k]), start + k
    symbols = codebook.symbols(best_index)
    return DetectionResult(symbols.dap, symbols.apm, best_residual, codebook.size, 0, 'mld')


def factorized_mld(y, channel, dap_space, constellation, limit=None, chunk_size=4096):
    '''
    Joint argmin over DAPs 𝒬_c and APM vectors f ∈ 𝓕^{M_d} of ‖ỹ - C_𝒬 f‖².
    '''
    limit = run_default('codebook_limit') if limit is None else limit
    md = dap_space.md
    width = md * (dap_space.q.bit_length() - 1 + constellation.bits)
    if width > limit:
        raise SearchSpaceTooLarge('(QV)^M_d = 2^%d candidates exceed the limit of 2^%d' % (width, limit), bits=width)
    c = channel_matrix(channel)
    y = np.asarray(y)
    n_apm = constellation.order ** md
    positions = bits_to_int(int_to_bits(np.arange(n_apm), md * constellation.bits).reshape(n_apm, md, constellation.bits))
    grid = constellation.points[positions]
    best = np.inf, None, None
    for index in dap_space:
        active = dap_space.active(index)
        columns = c[:, active]
        for start in range(0, n_apm, chunk_size):
            residuals = _residuals(y, grid[start:start + chunk_size] @ columns.T)
            k = int(np.argmin(residuals))
            if residuals[k] < best[0]:
                best = float(residuals[k]), active, grid[start + k]
    residual, active, apm = best
    return DetectionResult(active, apm.copy(), residual, len(dap_space) * n_apm, len(dap_space), 'fmld')
