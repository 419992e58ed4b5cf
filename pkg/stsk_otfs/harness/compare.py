'''
Cross-checks between analysis and simulation: union bound against
simulated MLD, and detector complexity against BER.
'''

from dataclasses import dataclass
from typing import Optional
import numpy as np
from ..core import logger
from ..core.errors import DimensionMismatch
from ..core.rand import STREAM_PROFILE, substream
from ..analysis import Curve, check_snr_grid, union_bound_ber
from ..channel import sample_paths
from ..detector import analytic_orders
from .report import RunReport
from .sweep import run_ber_sweep

__all__ = [
    'BoundComparison',
    'crossover_snr',
    'run_bound_vs_sim',
    'bench_detectors',
]


@dataclass
class BoundComparison:
    bound: Curve
    simulation: Curve
    ratio: np.ndarray
    crossover_db: Optional[float]
    report: RunReport

    def to_dict(self):
        return {
            'bound': self.bound.to_dict(),
            'simulation': self.simulation.to_dict(),
            'ratio': [None if not np.isfinite(r) else float(r) for r in self.ratio],
            'crossover_db': self.crossover_db,
        }


def crossover_snr(snr_db, ratio, low=1.0, high=3.0):
    '''
    Lowest SNR from which every measured bound/simulation ratio stays in
    [low, high]. Points without simulated errors are skipped.
    '''
    crossover = None
    for snr, r in zip(reversed(snr_db), reversed(ratio)):
        if not np.isfinite(r):
            continue
        if not low <= r <= high:
            break
        crossover = float(snr)
    return crossover


def run_bound_vs_sim(cfg, dm_set, snr_grid, seed=0, stop_rule=None, workers=1, profile=None):
    '''
    Union bound and simulated MLD BER on one pinned set of path indices,
    the simulation redrawing only the gains.
    '''
    if cfg.u != 1:
        raise DimensionMismatch('Bound comparison needs a single-user config, got U=%d' % cfg.u)
    snr_grid = check_snr_grid(snr_grid)
    if profile is None:
        profile = sample_paths(cfg, substream(seed, STREAM_PROFILE))
    bound = union_bound_ber(cfg, dm_set, profile, snr_grid)
    report = run_ber_sweep(cfg, dm_set, 'mld', snr_grid, stop_rule, seed, workers, pinned_profile=profile)
    points = report.points['mld']
    ber = np.array([p.ber for p in points])
    trials = np.array([p.trials for p in points])
    stderr = np.sqrt(ber * (1 - ber) / np.maximum(trials * cfg.n_bits, 1))
    simulation = Curve('simulation', snr_grid, ber, stderr, {'config_hash': cfg.config_hash(), 'seed': seed})
    with np.errstate(divide='ignore', invalid='ignore'):
        ratio = np.where(ber > 0, bound.values / np.where(ber > 0, ber, 1.0), np.inf)
    crossover = crossover_snr(snr_grid, ratio)
    if crossover is None:
        logger.warning('[compare] the bound does not settle within 1x-3x of the simulation on this grid')
    else:
        logger.info('[compare] bound within 1x-3x of simulation from %g dB', crossover)
    return BoundComparison(bound, simulation, ratio, crossover, report)


def bench_detectors(cfg, dm_set, detectors, snr_grid, seed=0, stop_rule=None, workers=1):
    '''
    BER sweep of several detectors with measured and analytic complexity.
    '''
    report = run_ber_sweep(cfg, dm_set, detectors, snr_grid, stop_rule, seed, workers)
    for label, entry in report.complexity.items():
        name = label.partition(':')[0]
        evaluations = entry['dap_evaluations_per_trial']
        if name == 'prcgd':
            orders = analytic_orders(cfg, t1_dap_count=evaluations)
        elif name == 'ircd':
            orders = analytic_orders(cfg, t2=evaluations)
        else:
            orders = analytic_orders(cfg)
        entry['order'] = orders.get(name, orders['mld'])
        entry['orders'] = orders
        logger.info('[bench][%s] candidates/trial=%.4g order=%.4g', label, entry['candidates_per_trial'], entry['order'])
    return report
