'''
BER sweeps over an SNR grid.
'''

from dataclasses import dataclass
import time
from ..core import logger, run_default
from ..core.pool import run_jobs
from ..analysis.curves import check_snr_grid
from .link import BatchTally, parse_detectors, run_batch
from .report import BerPoint, RunReport

__all__ = [
    'StopRule',
    'run_ber_sweep',
]


@dataclass(frozen=True)
class StopRule:
    '''
    A point stops once every detector has `target_errors` bit errors or
    after `max_trials` trials. It is aborted when the solve failures of a
    detector exceed `abort_ratio` of the trials (and number at least two).
    '''
    target_errors: int = None
    max_trials: int = None
    batch_size: int = None
    abort_ratio: float = None

    def __post_init__(self):
        for name in ('target_errors', 'max_trials', 'batch_size', 'abort_ratio'):
            if getattr(self, name) is None:
                object.__setattr__(self, name, run_default(name))

    def done(self, tally):
        return tally.trials >= self.max_trials or bool((tally.bit_errors >= self.target_errors).all())

    def aborted(self, tally):
        failures = tally.solve_failures
        return bool(((failures >= 2) & (failures > self.abort_ratio * tally.trials)).any())


def _run_point(cfg, dm_set, specs, snr_db, snr_index, seed, rule, workers, pinned):
    '''
    Batches run in waves of `workers`; the stop rule is checked in batch
    order and batches past the stopping one are dropped, so the counts do
    not depend on the worker count.
    '''
    tally = BatchTally.empty(len(specs))
    next_trial = 0
    while True:
        jobs = []
        for _ in range(max(workers, 1)):
            if next_trial >= rule.max_trials:
                break
            count = min(rule.batch_size, rule.max_trials - next_trial)
            jobs.append((cfg, dm_set, specs, snr_db, seed, snr_index, next_trial, count, pinned))
            next_trial += count
        if not jobs:
            return tally, False
        for batch in run_jobs(run_batch, jobs, workers):
            tally += batch
            if rule.aborted(tally):
                return tally, True
            if rule.done(tally):
                return tally, False


def run_ber_sweep(cfg, dm_set, detectors, snr_grid, stop_rule=None, seed=0, workers=1, pinned_profile=None):
    '''
    Simulate every detector on the same trials at each SNR point.

    `detectors` is a detector string or list of specs. With `pinned_profile`
    the path indices stay fixed and only the gains are redrawn per trial.
    '''
    started = time.monotonic()
    specs = parse_detectors(detectors, cfg)
    snr_grid = check_snr_grid(snr_grid)
    rule = stop_rule or StopRule()
    dm_set.check(cfg)
    report = RunReport(cfg.snapshot(), cfg.config_hash(), seed, dm_set.seed)
    for spec in specs:
        report.points[str(spec)] = []
    if pinned_profile is not None:
        logger.info('[sweep][profile] pinned %s', pinned_profile.describe())

    for snr_index, snr_db in enumerate(snr_grid):
        tally, aborted = _run_point(cfg, dm_set, specs, float(snr_db), snr_index, seed, rule, workers, pinned_profile)
        for k, spec in enumerate(specs):
            point = BerPoint(
                float(snr_db), str(spec), tally.trials, int(tally.bit_errors[k]), int(tally.frame_errors[k]),
                cfg.n_bits, seed, int(tally.solve_failures[k]), int(tally.candidates[k]),
                int(tally.dap_evaluations[k]), aborted)
            report.add(point)
            logger.info('[sweep][%g dB][%s] trials=%d bit_errors=%d ber=%.4g',
                        snr_db, spec, point.trials, point.bit_errors, point.ber)
        if aborted:
            logger.warning('[sweep][%g dB] aborted after %d trials: solve failures %s',
                           snr_db, tally.trials, tally.solve_failures.tolist())

    for spec in specs:
        points = report.points[str(spec)]
        trials = sum(p.trials for p in points) or 1
        report.complexity[str(spec)] = {
            'candidates_per_trial': sum(p.candidates for p in points) / trials,
            'dap_evaluations_per_trial': sum(p.dap_evaluations for p in points) / trials,
        }
    report.wall_clock = time.monotonic() - started
    return report
