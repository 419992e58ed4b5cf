'''
Bit to codeword chain: bit partitioning, STSK block encoding, the sparse
equivalent vector, resource allocation, the ST mapper and the inverse
demapping.

Layout conventions:

- A DD grid index is `m_d = k + N*l` (Doppler fast, delay slow).
- Block `b = u*G + g` owns entries `[b*Q, (b+1)*Q)` of the sparse vector K.
- Within a block the first L_1 bits select the DM (natural binary) and the
  next L_2 bits are the constellation label (Gray).
'''

from dataclasses import dataclass
import numpy as np
from ..core import types, build_constellation
from ..core.errors import InvalidDapIndex, IndivisibleUsers, LengthMismatch
from ..core.utils import bits_to_int, int_to_bits

__all__ = [
    'StskBlockIndex',
    'SparseSymbolVector',
    'ResourceAllocation',
    'StMapper',
    'split_bits',
    'encode_stsk_block',
    'build_sparse_vector',
    'build_resource_allocation',
    'build_st_mapper',
    'encode_bits',
    'frames_from_sparse',
    'demap_bits',
]


@dataclass(frozen=True)
class StskBlockIndex:
    '''1-based DM index `q` and constellation index `l` of one block.'''
    q: int
    l: int


@dataclass
class SparseSymbolVector:
    dense: np.ndarray
    dap: np.ndarray
    apm: np.ndarray

    @property
    def nnz(self):
        return int(np.count_nonzero(self.dense))


@dataclass
class ResourceAllocation:
    '''Per-user allocation matrices, shape (U, M_d, G).'''
    matrices: np.ndarray
    scheme: int

    def __getitem__(self, u):
        return self.matrices[u]

    @property
    def users(self):
        return self.matrices.shape[0]

    def grid_indices(self, u):
        '''DD grid index of each of the G resource blocks of user `u`.'''
        return np.argmax(self.matrices[u], axis=0)


@dataclass
class StMapper:
    '''
    Permutation Υ with `(Υ s)[d_x] = s[d_y]`; `order[d_x] = d_y`.
    '''
    order: np.ndarray

    @property
    def size(self):
        return len(self.order)

    @property
    def matrix(self):
        upsilon = np.zeros((self.size, self.size))
        upsilon[np.arange(self.size), self.order] = 1
        return upsilon

    def apply(self, vector):
        return np.asarray(vector)[..., self.order]


def split_bits(bits, cfg):
    '''
    Partition L bits into U*G groups of (DM-index bits, APM bits).
    '''
    bits = np.asarray(bits, dtype=np.uint8)
    if bits.shape != (cfg.n_bits,):
        raise LengthMismatch('Expected %d bits, got %d' % (cfg.n_bits, bits.size), expected=cfg.n_bits, got=bits.size)
    blocks = bits.reshape(cfg.u * cfg.g, cfg.lb)
    return [(block[:cfg.l1], block[cfg.l1:]) for block in blocks]


def encode_stsk_block(group, dm_set, constellation):
    '''
    Map one (DM bits, APM bits) group to its index pair and codeword S = f_l A_q.
    '''
    dm_bits, apm_bits = group
    q = 1 + bits_to_int(dm_bits)
    l = 1 + int(constellation.position(bits_to_int(apm_bits)))
    codeword = constellation.points[l - 1] * dm_set.matrices[q - 1]
    return StskBlockIndex(q, l), codeword


def build_sparse_vector(blocks, constellation, q):
    '''
    Stack per-block indices into K: block b has the symbol f_l at
    position `b*Q + q_b - 1`.
    '''
    dap = np.array([b * q + block.q - 1 for b, block in enumerate(blocks)], dtype=np.int64)
    apm = np.array([constellation.points[block.l - 1] for block in blocks], dtype=complex)
    dense = np.zeros(q * len(blocks), dtype=complex)
    dense[dap] = apm
    return SparseSymbolVector(dense, dap, apm)


def encode_bits(bits, cfg, constellation):
    '''Bits to sparse vector, vectorised over leading axes of `bits`.'''
    bits = np.asarray(bits, dtype=np.uint8)
    if bits.shape[-1] != cfg.n_bits:
        raise LengthMismatch('Expected %d bits, got %d' % (cfg.n_bits, bits.shape[-1]))
    blocks = bits.reshape(bits.shape[:-1] + (cfg.md, cfg.lb))
    q_idx = bits_to_int(blocks[..., :cfg.l1])
    labels = bits_to_int(blocks[..., cfg.l1:])
    dap = np.arange(cfg.md) * cfg.q + q_idx
    apm = constellation.points[constellation.position(labels)]
    dense = np.zeros(bits.shape[:-1] + (cfg.q * cfg.md,), dtype=complex)
    np.put_along_axis(dense, dap, apm, axis=-1)
    return SparseSymbolVector(dense, dap, apm)


def build_resource_allocation(cfg):
    '''
    Allocation matrices 𝒫^(u) for the configured scheme.

    Scheme 1 gives user u the delay columns Ju..Ju+J-1 with `g = j*N + n`;
    Scheme 2 gives it the Doppler rows u*N/U.. with `g = l*N/U + j`.
    '''
    matrices = np.zeros((cfg.u, cfg.md, cfg.g))
    if cfg.scheme_code == types.DELAY_SCHEME:
        j, n = np.meshgrid(np.arange(cfg.j), np.arange(cfg.n), indexing='ij')
        j, n = j.ravel(), n.ravel()
        for u in range(cfg.u):
            matrices[u, (cfg.j * u + j) * cfg.n + n, j * cfg.n + n] = 1
    else:
        if cfg.n % cfg.u:
            raise IndivisibleUsers('N=%d is not divisible by U=%d' % (cfg.n, cfg.u))
        rows = cfg.n // cfg.u
        l, j = np.meshgrid(np.arange(cfg.m), np.arange(rows), indexing='ij')
        l, j = l.ravel(), j.ravel()
        for u in range(cfg.u):
            matrices[u, (u * rows + j) + cfg.n * l, l * rows + j] = 1
    return ResourceAllocation(matrices, cfg.scheme_code)


def build_st_mapper(cfg):
    '''
    Υ(d_x, d_y) = 1 for d_x = g + n_t G + u N_t G + t_c G U N_t and
    d_y = n_t + t_c N_t + g N_t T_c + u G N_t T_c.
    '''
    g, nt, u, tc = np.meshgrid(
        np.arange(cfg.g), np.arange(cfg.nt), np.arange(cfg.u), np.arange(cfg.tc), indexing='ij')
    d_x = g + nt * cfg.g + u * cfg.nt * cfg.g + tc * cfg.g * cfg.u * cfg.nt
    d_y = nt + tc * cfg.nt + g * cfg.nt * cfg.tc + u * cfg.g * cfg.nt * cfg.tc
    order = np.empty(d_x.size, dtype=np.int64)
    order[d_x.ravel()] = d_y.ravel()
    return StMapper(order)


def frames_from_sparse(dense, cfg, dm_set, alloc):
    '''
    DD-domain frames x^(u)_{n_t,t_c} for K, shape (..., U, N_t, T_c, M_d).
    '''
    dense = np.asarray(dense)
    blocks = dense.reshape(dense.shape[:-1] + (cfg.u, cfg.g, cfg.q))
    codewords = np.einsum('...ugq,qab->...ugab', blocks, dm_set.matrices)
    return np.einsum('umg,...ugab->...uabm', alloc.matrices, codewords)


def demap_bits(dap, apm, cfg, constellation=None):
    '''
    Recover the bit vector from a DAP and its APM symbols. The symbols are
    quantized to the nearest constellation point first.
    '''
    if constellation is None:
        constellation = build_constellation(cfg.v, cfg.constellation)
    dap = np.asarray(dap, dtype=np.int64)
    if dap.shape != (cfg.md,):
        raise InvalidDapIndex('Expected %d active indices, got %d' % (cfg.md, dap.size))
    if np.any(dap < 0) or np.any(dap >= cfg.q * cfg.md):
        raise InvalidDapIndex('Active index outside [0, %d)' % (cfg.q * cfg.md))
    if np.any(dap // cfg.q != np.arange(cfg.md)):
        raise InvalidDapIndex('Active indices must select one entry per block')
    labels = constellation.labels[constellation.quantize(apm)]
    dm_bits = int_to_bits(dap % cfg.q, cfg.l1)
    apm_bits = int_to_bits(labels, cfg.l2)
    return np.concatenate([dm_bits, apm_bits], axis=-1).ravel()
