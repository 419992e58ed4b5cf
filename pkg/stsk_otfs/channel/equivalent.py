'''
Effective DD-domain link matrices and the stacked equivalent model
ỹ = C K + ñ.

ỹ is indexed `t_c*N_r*M_d + n_r*M_d + m_d`.
'''

from dataclasses import dataclass
import numpy as np
from ..core.errors import DimensionMismatch

__all__ = [
    'EquivalentChannel',
    'shift_matrix',
    'effective_link_matrix',
    'assemble_equivalent_model',
]


@dataclass
class EquivalentChannel:
    matrix: np.ndarray
    links: np.ndarray
    omega: np.ndarray
    omega_tilde: np.ndarray
    mapper: object
    chi_bar: np.ndarray
    q: int

    @property
    def shape(self):
        return self.matrix.shape

    @property
    def md(self):
        return self.matrix.shape[1] // self.q

    def columns(self, active):
        '''C_ℐ, the columns of the active entries.'''
        return self.matrix[:, active]

    def apply(self, dense):
        return self.matrix @ dense


def shift_matrix(size, shift):
    '''Cyclic shift I_size(shift): entry (r, c) is 1 iff c = (r - shift) mod size.'''
    return np.roll(np.eye(size), shift % size, axis=0)


def effective_link_matrix(profile, u, n_r, n_t, cfg):
    '''
    H^(u)_{n_r,n_t} = Σ_i h_i e^{-j2π l_i k_i / M_d} I_M(l_i) ⊗ I_N(k_i).
    '''
    phases = profile.phases(cfg.md)
    link = np.zeros((cfg.md, cfg.md), dtype=complex)
    for i in range(profile.p):
        shift = np.kron(shift_matrix(cfg.m, profile.delays[i]), shift_matrix(cfg.n, profile.dopplers[i]))
        link += profile.gains[u, n_r, n_t, i] * phases[i] * shift
    return link


def assemble_equivalent_model(profile, cfg, alloc, mapper, dm_set):
    '''
    C = Ω̃ Υ (I_{UG} ⊗ χ) with Ω^(u) = H̄^(u) (I_{N_t} ⊗ 𝒫^(u)) and
    Ω̃ = I_{T_c} ⊗ [Ω^(0), ..., Ω^(U-1)], so that the columns of Ω̃ follow
    the ST mapper output order (g, n_t, u, t_c).
    '''
    dm_set.check(cfg)
    if profile.gains.shape != (cfg.u, cfg.nr, cfg.nt, cfg.p):
        raise DimensionMismatch('Gains of shape %s do not match (U, N_r, N_t, P)' % (profile.gains.shape,))
    if alloc.matrices.shape != (cfg.u, cfg.md, cfg.g):
        raise DimensionMismatch('Allocation of shape %s does not match (U, M_d, G)' % (alloc.matrices.shape,))
    if mapper.size != cfg.g * cfg.nt * cfg.tc * cfg.u:
        raise DimensionMismatch('ST mapper size %d does not match G N_t T_c U' % mapper.size)

    links = np.empty((cfg.u, cfg.nr, cfg.nt, cfg.md, cfg.md), dtype=complex)
    for u, n_r, n_t in np.ndindex(cfg.u, cfg.nr, cfg.nt):
        links[u, n_r, n_t] = effective_link_matrix(profile, u, n_r, n_t, cfg)
    omega = np.empty((cfg.u, cfg.nr * cfg.md, cfg.nt * cfg.g), dtype=complex)
    for u in range(cfg.u):
        h_bar = links[u].transpose(0, 2, 1, 3).reshape(cfg.nr * cfg.md, cfg.nt * cfg.md)
        omega[u] = h_bar @ np.kron(np.eye(cfg.nt), alloc[u])
    omega_tilde = np.kron(np.eye(cfg.tc), np.hstack(list(omega)))
    chi_bar = np.kron(np.eye(cfg.u * cfg.g), dm_set.chi)
    matrix = omega_tilde @ chi_bar[mapper.order]
    return EquivalentChannel(matrix, links, omega, omega_tilde, mapper, chi_bar, cfg.q)
