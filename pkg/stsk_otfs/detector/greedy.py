'''
Progressive residual check greedy detection.
'''

import numpy as np
from ..core.errors import DetectorSpecError
from ..modem.codebook import DapSpace
from .base import DapTester, DetectionResult, ReliabilityOrder, default_threshold, lmmse_soft_estimate

__all__ = [
    'prcgd',
]


def prcgd(y, channel, cfg, dm_set, constellation, t1, eps_0=None, gamma=np.inf, dap_space=None, cache=None):
    '''
    Walk the entries of K̃ by decreasing |K̃|². Iteration t tests every
    untested DAP that activates entry j_t and keeps the local best; the
    search stops once a local residual falls below `eps_0`, and otherwise
    returns the lowest residual seen, ties going to the lowest DAP index.
    '''
    if t1 < 1:
        raise DetectorSpecError('PRCGD needs T_1 >= 1, got %r' % (t1,))
    if dm_set is not None:
        dm_set.check(cfg)
    if eps_0 is None:
        eps_0 = default_threshold(cfg, gamma)
    dap_space = DapSpace(cfg) if dap_space is None else dap_space
    tester = DapTester(y, channel, constellation, dap_space, cache)
    soft = lmmse_soft_estimate(y, channel, gamma, cfg.q)
    order = ReliabilityOrder.from_scores(np.abs(soft) ** 2)

    tested = np.zeros(len(dap_space), dtype=bool)
    eps_t = np.inf
    best = None
    for t in range(min(t1, len(order))):
        if eps_t < eps_0:
            break
        gathered = dap_space.containing(order.indices[t])
        gathered = gathered[~tested[gathered]]
        if not len(gathered):
            continue
        local = tester.best(gathered)
        tested[gathered] = True
        eps_t = local[0]
        if eps_t < eps_0:
            best = local
            break
        if best is None or (eps_t, local[3]) < (best[0], best[3]):
            best = local
    residual, active, apm, _ = best
    count = int(tested.sum())
    return DetectionResult(active, apm, residual, count, count, 'prcgd', t1)
