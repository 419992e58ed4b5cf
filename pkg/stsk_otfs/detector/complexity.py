'''
Measured and analytic detection and system complexity.
'''

from ..core import types
from ..core.errors import IncompatibleBase

__all__ = [
    'complexity_report',
    'analytic_orders',
    'system_complexity',
]


def analytic_orders(cfg, t1_dap_count=None, t2=None):
    '''
    Orders of the detectors at `cfg`: (VQ)^{M_d} for MLD, C_1 M_d V for
    PRCGD (M_d V best case, Q^{M_d} M_d V worst case) and T_2 M_d V for IRCD.
    '''
    md, v, q = cfg.md, cfg.v, cfg.q
    orders = {
        'mld': (v * q) ** md,
        'prcgd_best': md * v,
        'prcgd_worst': q ** md * md * v,
    }
    if t1_dap_count is not None:
        orders['prcgd'] = t1_dap_count * md * v
    if t2 is not None:
        orders['ircd'] = t2 * md * v
    return orders


def complexity_report(result, cfg):
    detector = result.detector
    if detector == 'prcgd':
        orders = analytic_orders(cfg, t1_dap_count=result.dap_evaluations)
        order = orders['prcgd']
    elif detector == 'ircd':
        orders = analytic_orders(cfg, t2=result.dap_evaluations)
        order = orders['ircd']
    else:
        orders = analytic_orders(cfg)
        order = orders['mld']
    return {
        'detector': detector,
        'parameter': result.parameter,
        'candidates_tested': int(result.candidates_tested),
        'dap_evaluations': int(result.dap_evaluations),
        'order': order,
        'orders': orders,
    }


def system_complexity(kind, cfg):
    '''
    MLD search size of a system: V^{MN} for SIMO-OTFS, (N_t V)^{MN} for
    SM-OTFS, (QV)^M for STSK-OFDM-MA and (QV)^{MN} for STSK-OTFS-MA.
    '''
    code = types.get_code(types.baselines, kind)
    mn = cfg.m * cfg.n
    if code == types.SIMO_OTFS:
        return cfg.v ** mn
    if code == types.SM_OTFS:
        return (cfg.nt * cfg.v) ** mn
    if code == types.STSK_OFDM_MA:
        return (cfg.q * cfg.v) ** cfg.m
    if code == types.STSK_OTFS_MA:
        return (cfg.q * cfg.v) ** mn
    raise IncompatibleBase('Unknown system kind: %r' % (kind,))
