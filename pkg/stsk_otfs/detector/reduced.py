'''
Iterative reduced-space check detection.
'''

import numpy as np
from ..core.errors import DetectorSpecError
from ..modem.codebook import DapSpace
from .base import DapTester, DetectionResult, ReliabilityOrder, lmmse_soft_estimate

__all__ = [
    'ircd',
]


def ircd(y, channel, cfg, dm_set, constellation, t2, gamma=np.inf, dap_space=None, cache=None):
    '''
    Rank all Q^{M_d} DAPs by ρ_c = Σ |K̃(i)|² over their active entries and
    test the T_2 most reliable ones.
    '''
    if dm_set is not None:
        dm_set.check(cfg)
    dap_space = DapSpace(cfg) if dap_space is None else dap_space
    if not 1 <= t2 <= len(dap_space):
        raise DetectorSpecError('IRCD needs 1 <= T_2 <= %d, got %r' % (len(dap_space), t2))
    tester = DapTester(y, channel, constellation, dap_space, cache)
    soft = lmmse_soft_estimate(y, channel, gamma, cfg.q)
    order = ReliabilityOrder.from_scores(dap_space.reliability(soft))
    residual, active, apm, _ = tester.best(order.indices[:t2])
    return DetectionResult(active, apm, residual, t2, t2, 'ircd', t2)
