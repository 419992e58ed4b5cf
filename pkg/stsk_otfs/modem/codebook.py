'''
Codebook and DAP space enumeration.

Codeword `i` carries the bits of `i` written MSB first, so the Hamming
distance between codewords i and j is popcount(i ^ j). DAP `c` writes the
per-block DM indices as mixed-radix digits with block 0 most significant.
'''

import numpy as np
from ..core import run_default
from ..core.errors import CodebookTooLarge, DimensionMismatch, SearchSpaceTooLarge
from ..core.utils import bits_to_int, int_to_bits
from .mapping import SparseSymbolVector, encode_bits

__all__ = [
    'Codebook',
    'DapSpace',
    'enumerate_codebook',
]


class Codebook:
    '''
    All 2^L sparse vectors B_i of a configuration, produced in chunks.
    '''

    def __init__(self, cfg, constellation, limit=None):
        limit = run_default('codebook_limit') if limit is None else limit
        if cfg.n_bits > limit:
            raise CodebookTooLarge('2^%d codewords exceed the limit of 2^%d' % (cfg.n_bits, limit), bits=cfg.n_bits)
        self.cfg = cfg
        self.constellation = constellation
        self.size = 1 << cfg.n_bits
        self._dense = None

    def __len__(self):
        return self.size

    def bits(self, indices):
        return int_to_bits(indices, self.cfg.n_bits)

    def symbols(self, index):
        return encode_bits(self.bits(index), self.cfg, self.constellation)

    def vectors(self, indices):
        '''Dense K vectors for an array of codeword indices.'''
        return self.symbols(np.asarray(indices, dtype=np.int64)).dense

    def chunks(self, chunk_size=4096):
        for start in range(0, self.size, chunk_size):
            stop = min(start + chunk_size, self.size)
            yield start, self.vectors(np.arange(start, stop))

    @property
    def dense(self):
        '''The full (2^L, Q*M_d) codeword matrix, built once.'''
        if self._dense is None:
            self._dense = self.vectors(np.arange(self.size))
        return self._dense


class DapSpace:
    '''
    The C = Q^{M_d} DM activation patterns.
    '''

    def __init__(self, cfg, limit=None):
        limit = run_default('codebook_limit') if limit is None else limit
        width = cfg.md * cfg.l1
        if width > limit:
            raise SearchSpaceTooLarge('Q^M_d = 2^%d DAPs exceed the limit of 2^%d' % (width, limit), bits=width)
        self.q = cfg.q
        self.md = cfg.md
        self.size = cfg.q ** cfg.md
        self._digits = None

    def __len__(self):
        return self.size

    def __iter__(self):
        return iter(range(self.size))

    @property
    def digits(self):
        '''Array (C, M_d) of per-block DM indices (0-based).'''
        if self._digits is None:
            l1 = self.q.bit_length() - 1
            bits = int_to_bits(np.arange(self.size), self.md * l1)
            self._digits = bits_to_int(bits.reshape(self.size, self.md, l1)).astype(np.int64)
        return self._digits

    def active(self, index):
        '''Active entries of K for DAP `index`.'''
        return np.arange(self.md) * self.q + self.digits[index]

    def index(self, active):
        '''Inverse of `active`.'''
        digits = np.asarray(active, dtype=np.int64) % self.q
        weights = self.q ** np.arange(self.md - 1, -1, -1, dtype=np.int64)
        return int(digits @ weights)

    def containing(self, element):
        '''Indices of all DAPs whose active set contains `element`.'''
        block, q = divmod(int(element), self.q)
        return np.flatnonzero(self.digits[:, block] == q)

    def reliability(self, soft):
        '''ρ_c = Σ_b |K̃(active_c(b))|² for every DAP.'''
        energy = np.abs(np.asarray(soft).reshape(self.md, self.q)) ** 2
        return energy[np.arange(self.md), self.digits].sum(axis=1)


def enumerate_codebook(cfg, dm_set, constellation, limit=None, chunk_size=4096):
    '''
    Yield `(bits, SparseSymbolVector)` for all 2^L messages in bit
    lexicographic order.
    '''
    if dm_set is not None and dm_set.matrices.shape != (cfg.q, cfg.nt, cfg.tc):
        raise DimensionMismatch('DM set shape %s does not match (Q, N_t, T_c)' % (dm_set.matrices.shape,))
    codebook = Codebook(cfg, constellation, limit)
    for start in range(0, codebook.size, chunk_size):
        bits = codebook.bits(np.arange(start, min(start + chunk_size, codebook.size)))
        symbols = encode_bits(bits, cfg, constellation)
        for row, row_bits in enumerate(bits):
            yield row_bits, SparseSymbolVector(symbols.dense[row], symbols.dap[row], symbols.apm[row])
