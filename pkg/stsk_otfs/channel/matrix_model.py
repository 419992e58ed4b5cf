'''
Equivalent matrix model Y = H X + n.

H is N_r × (U N_t P) with column `u*N_t*P + n_t*P + i`; X has rows
(u, n_t, i) and columns `t_c*M_d + m_d`. Y reshaped to (N_r, T_c, M_d) and
read in (t_c, n_r, m_d) order is ỹ.
'''

from dataclasses import dataclass
import numpy as np
from ..modem.mapping import frames_from_sparse

__all__ = [
    'MatrixModel',
    'build_matrix_model',
    'vectorize_received',
]


@dataclass
class MatrixModel:
    h: np.ndarray
    delays: np.ndarray
    dopplers: np.ndarray
    n: int
    m: int

    @property
    def p(self):
        return len(self.delays)

    def codeword(self, frames):
        '''
        X̆ for DD frames of shape (..., U, N_t, T_c, M_d): column m_d = k + N l
        of the (u, n_t, i) row holds x([k - k_i]_N + N[l - l_i]_M).
        '''
        frames = np.asarray(frames)
        lead = frames.shape[:-4]
        u, nt, tc = frames.shape[-4:-1]
        grid = frames.reshape(lead + (u, nt, tc, self.m, self.n))
        shifted = np.stack([
            np.roll(grid, (int(l), int(k)), axis=(-2, -1))
            for l, k in zip(self.delays, self.dopplers)
        ], axis=-4)
        return shifted.reshape(lead + (u * nt * self.p, tc * self.m * self.n))

    def codeword_basis(self, cfg, dm_set, alloc):
        '''X̆ of every unit vector e_k, shape (Q M_d, U N_t P, T_c M_d).'''
        eye = np.eye(cfg.q * cfg.md, dtype=complex)
        return self.codeword(frames_from_sparse(eye, cfg, dm_set, alloc))

    def receive(self, codeword):
        return self.h @ codeword


def build_matrix_model(profile, cfg):
    '''H with entries h e^{-j2π l_i k_i / M_d}.'''
    weighted = profile.gains * profile.phases(cfg.md)
    h = weighted.transpose(1, 0, 2, 3).reshape(cfg.nr, -1)
    return MatrixModel(h, np.asarray(profile.delays), np.asarray(profile.dopplers), cfg.n, cfg.m)


def vectorize_received(y_matrix, tc):
    '''Interleave Y (N_r × T_c M_d) into the ỹ order.'''
    nr = y_matrix.shape[0]
    return y_matrix.reshape(nr, tc, -1).transpose(1, 0, 2).ravel()
