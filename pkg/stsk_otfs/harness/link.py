'''
One link-level trial: bits to K, channel, noise, every detector on the same
received vector, bits back and error counts.
'''

from dataclasses import dataclass
from typing import Optional
import numpy as np
from ..core import build_constellation
from ..core.errors import DetectorSpecError, SolveFailure
from ..core.rand import STREAM_TRIAL, substream
from ..analysis.curves import db_to_linear
from ..channel import add_noise, assemble_equivalent_model, sample_gains, sample_paths
from ..detector import FactorCache, factorized_mld, ircd, mld, prcgd
from ..modem import (
    Codebook, DapSpace, build_resource_allocation, build_st_mapper, demap_bits, encode_bits,
)

__all__ = [
    'DetectorSpec',
    'BatchTally',
    'LinkContext',
    'parse_detector_spec',
    'parse_detectors',
    'run_trial',
    'run_batch',
]

DETECTORS = ('mld', 'fmld', 'ircd', 'prcgd')


@dataclass(frozen=True)
class DetectorSpec:
    name: str
    parameter: Optional[int] = None
    label: str = ''

    def __str__(self):
        return self.label or self.name


def parse_detector_spec(text, cfg):
    '''
    `mld`, `fmld`, `prcgd:T1`, `ircd:T2` or `ircd:a/b`, the last meaning
    T_2 = ceil(a C / b) with C = Q^{M_d}.
    '''
    if isinstance(text, DetectorSpec):
        return text
    label = text.strip().lower()
    name, _, arg = label.partition(':')
    if name not in DETECTORS:
        raise DetectorSpecError('Unknown detector: %r' % (text,))
    if name in ('mld', 'fmld'):
        if arg:
            raise DetectorSpecError('%s takes no parameter, got %r' % (name, text))
        return DetectorSpec(name, None, label)
    n_daps = cfg.q ** cfg.md
    try:
        if not arg:
            value = n_daps if name == 'ircd' else 1
        elif '/' in arg:
            num, den = (int(x) for x in arg.split('/'))
            if num < 1 or den < 1:
                raise ValueError
            value = -(-num * n_daps // den)
        else:
            value = int(arg)
    except ValueError:
        raise DetectorSpecError('Bad detector parameter: %r' % (text,))
    if name == 'ircd' and not 1 <= value <= n_daps:
        raise DetectorSpecError('IRCD needs 1 <= T_2 <= %d, got %d' % (n_daps, value))
    if name == 'prcgd' and value < 1:
        raise DetectorSpecError('PRCGD needs T_1 >= 1, got %d' % value)
    return DetectorSpec(name, value, label)


def parse_detectors(text, cfg):
    '''Comma separated list; labels must be unique.'''
    items = text.split(',') if isinstance(text, str) else list(text)
    specs = [parse_detector_spec(item, cfg) for item in items if not isinstance(item, str) or item.strip()]
    if not specs:
        raise DetectorSpecError('No detectors given')
    labels = [str(s) for s in specs]
    if len(set(labels)) != len(labels):
        raise DetectorSpecError('Duplicate detectors in %r' % (text,))
    return specs


class LinkContext:
    '''
    The per-configuration pieces every trial reuses.
    '''

    def __init__(self, cfg, dm_set):
        dm_set.check(cfg)
        self.cfg = cfg
        self.dm_set = dm_set
        self.constellation = build_constellation(cfg.v, cfg.constellation)
        self.alloc = build_resource_allocation(cfg)
        self.mapper = build_st_mapper(cfg)
        self._codebook = None
        self._dap_space = None

    @property
    def codebook(self):
        if self._codebook is None:
            self._codebook = Codebook(self.cfg, self.constellation)
        return self._codebook

    @property
    def dap_space(self):
        if self._dap_space is None:
            self._dap_space = DapSpace(self.cfg)
        return self._dap_space

    def detect(self, spec, y, channel, gamma, cache):
        if spec.name == 'mld':
            return mld(y, channel, self.codebook)
        if spec.name == 'fmld':
            return factorized_mld(y, channel, self.dap_space, self.constellation)
        if spec.name == 'ircd':
            return ircd(y, channel, self.cfg, None, self.constellation, spec.parameter,
                        gamma, self.dap_space, cache)
        return prcgd(y, channel, self.cfg, None, self.constellation, spec.parameter,
                     gamma=gamma, dap_space=self.dap_space, cache=cache)


@dataclass
class BatchTally:
    '''Per-detector counters of a run of trials.'''
    trials: int
    bit_errors: np.ndarray
    frame_errors: np.ndarray
    solve_failures: np.ndarray
    candidates: np.ndarray
    dap_evaluations: np.ndarray

    @classmethod
    def empty(cls, n_detectors):
        zeros = lambda: np.zeros(n_detectors, dtype=np.int64)
        return cls(0, zeros(), zeros(), zeros(), zeros(), zeros())

    def __iadd__(self, other):
        self.trials += other.trials
        self.bit_errors += other.bit_errors
        self.frame_errors += other.frame_errors
        self.solve_failures += other.solve_failures
        self.candidates += other.candidates
        self.dap_evaluations += other.dap_evaluations
        return self


def run_trial(ctx, specs, gamma, rng, pinned=None, tally=None):
    '''
    Run one trial and add its counts to `tally`. A detector that hits a
    singular solve scores a frame error with half the bits wrong.
    '''
    cfg = ctx.cfg
    tally = BatchTally.empty(len(specs)) if tally is None else tally
    bits = rng.integers(0, 2, cfg.n_bits, dtype=np.uint8)
    symbols = encode_bits(bits, cfg, ctx.constellation)
    if pinned is None:
        profile = sample_paths(cfg, rng)
    else:
        profile = pinned.with_gains(sample_gains(cfg, rng, pinned.p))
    channel = assemble_equivalent_model(profile, cfg, ctx.alloc, ctx.mapper, ctx.dm_set)
    y = add_noise(channel.apply(symbols.dense), gamma, rng)
    cache = FactorCache(channel, cfg.q)

    tally.trials += 1
    for k, spec in enumerate(specs):
        try:
            result = ctx.detect(spec, y, channel, gamma, cache)
        except SolveFailure:
            tally.solve_failures[k] += 1
            tally.bit_errors[k] += cfg.n_bits // 2
            tally.frame_errors[k] += 1
            continue
        errors = int(np.count_nonzero(demap_bits(result.dap, result.apm, cfg, ctx.constellation) != bits))
        tally.bit_errors[k] += errors
        tally.frame_errors[k] += errors > 0
        tally.candidates[k] += result.candidates_tested
        tally.dap_evaluations[k] += result.dap_evaluations
    return tally


def run_batch(cfg, dm_set, specs, snr_db, seed, snr_index, start, count, pinned=None):
    '''
    Trials `start .. start+count-1` of SNR point `snr_index`. Trial t draws
    from its own substream, so a batch gives the same counts wherever it runs.
    '''
    ctx = LinkContext(cfg, dm_set)
    gamma = float(db_to_linear(snr_db))
    tally = BatchTally.empty(len(specs))
    for trial in range(start, start + count):
        run_trial(ctx, specs, gamma, substream(seed, STREAM_TRIAL, snr_index, trial), pinned, tally)
    return tally
