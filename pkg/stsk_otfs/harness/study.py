'''
Parameter studies: one BER curve per value of a system or detector
parameter, and MLD search size against rate for every system.
'''

from dataclasses import dataclass, field
import numpy as np
from ..core import logger, types
from ..core.errors import ConfigParseError, StskError
from ..core.utils import is_power_of_two
from ..analysis.curves import check_snr_grid
from ..detector import system_complexity
from ..modem import generate_candidate
from .baseline import rate_equivalent_pairs
from .sweep import run_ber_sweep

__all__ = [
    'PARAMETERS',
    'ParameterStudy',
    'study_points',
    'run_parameter_study',
    'ComplexityTable',
    'complexity_vs_rate',
]

PARAMETERS = ('qv', 'u', 'scheme', 't1')
SYSTEMS = ('simo-otfs', 'sm-otfs', 'stsk-ofdm-ma', 'stsk-otfs-ma')


@dataclass
class ParameterStudy:
    '''BER of each studied value (rows) over the SNR grid (columns).'''
    parameter: str
    snr_db: np.ndarray
    labels: list
    ber: np.ndarray
    reports: list = field(default_factory=list)

    def write_csv(self, filename):
        with open(filename, 'w') as f:
            f.write(','.join(['snr_db'] + self.labels) + '\n')
            for k, snr in enumerate(self.snr_db):
                f.write(','.join(['%.10g' % snr] + ['%.10g' % b for b in self.ber[:, k]]) + '\n')

    def to_dict(self):
        return {
            'parameter': self.parameter,
            'snr_db': [float(x) for x in self.snr_db],
            'labels': list(self.labels),
            'runs': [report.to_dict() for report in self.reports],
        }


def _parse_pair(value):
    if isinstance(value, str):
        q, sep, v = value.lower().partition('x')
        if not sep:
            raise ConfigParseError('Expected QxV, got %r' % (value,))
        return int(q), int(v)
    q, v = value
    return int(q), int(v)


def study_points(parameter, cfg, values=None):
    '''
    (label, config, detector override) of each value of `parameter`:

    - `qv`: (Q, V) pairs, by default every pair with the rate of `cfg`
    - `u`: user counts, by default the divisors of M
    - `scheme`: allocation schemes, by default both
    - `t1`: PRCGD budgets, by default 1..M_d
    '''
    if parameter not in PARAMETERS:
        raise ConfigParseError('Unknown study parameter: %r' % (parameter,))
    try:
        if parameter == 'qv':
            pairs = rate_equivalent_pairs(cfg.rate, cfg.tc) if values is None else [_parse_pair(x) for x in values]
            return [('q=%d/v=%d' % (q, v), cfg.replace(q=q, v=v), None) for q, v in pairs]
        if parameter == 'u':
            values = [u for u in range(1, cfg.m + 1) if cfg.m % u == 0] if values is None else values
            return [('u=%d' % int(u), cfg.replace(u=int(u)), None) for u in values]
        if parameter == 'scheme':
            values = ['delay', 'doppler'] if values is None else values
            points = []
            for name in values:
                point = cfg.replace(scheme=name)
                points.append(('scheme=%s' % point.scheme, point, None))
            return points
        values = range(1, cfg.md + 1) if values is None else values
        return [('t1=%d' % int(t1), cfg, 'prcgd:%d' % int(t1)) for t1 in values]
    except ValueError:
        raise ConfigParseError('Bad %s values: %r' % (parameter, values))


def run_parameter_study(cfg, parameter, snr_grid, values=None, detector='mld', stop_rule=None, seed=0, workers=1):
    '''
    BER sweep of `detector` for every value of `parameter`. Each value gets
    the DM set of design trial 0 for its own config; all values share the
    trial seeds.
    '''
    snr_grid = check_snr_grid(snr_grid)
    points = study_points(parameter, cfg, values)
    labels, rows, reports = [], [], []
    for label, point, override in points:
        spec = override or detector
        logger.info('[study][%s] %s with %s', parameter, label, spec)
        report = run_ber_sweep(point, generate_candidate(point, seed, 0), spec, snr_grid, stop_rule, seed, workers)
        curve = next(iter(report.points.values()))
        labels.append(label)
        rows.append([p.ber for p in curve])
        reports.append(report)
    return ParameterStudy(parameter, snr_grid, labels, np.array(rows), reports)


@dataclass
class ComplexityTable:
    '''MLD search size per system (columns) and rate (rows); None where a system cannot reach the rate.'''
    rates: list
    systems: tuple
    values: list

    def write_csv(self, filename):
        with open(filename, 'w') as f:
            f.write(','.join(('rate',) + self.systems) + '\n')
            for rate, row in zip(self.rates, self.values):
                f.write(','.join(['%g' % rate] + ['' if x is None else '%d' % x for x in row]) + '\n')

    def to_dict(self):
        return {'rates': list(self.rates), 'systems': list(self.systems), 'values': self.values}


def _system_at_rate(kind, base, rate):
    code = types.get_code(types.baselines, kind)
    if code in (types.SIMO_OTFS, types.SM_OTFS):
        order = 2 ** rate
        if code == types.SM_OTFS:
            order /= base.nt
        if order != int(order) or order < 2 or not is_power_of_two(int(order)):
            return None
        return system_complexity(kind, base.replace(v=int(order)))
    pairs = [pair for pair in rate_equivalent_pairs(rate, base.tc) if pair[0] == base.q] or \
        rate_equivalent_pairs(rate, base.tc)
    q, v = pairs[0]
    return system_complexity(kind, base.replace(q=q, v=v))


def complexity_vs_rate(base, rates, systems=SYSTEMS):
    '''Search size of each system at each rate, M and N taken from `base`.'''
    values = []
    for rate in rates:
        row = []
        for kind in systems:
            try:
                row.append(_system_at_rate(kind, base, rate))
            except StskError as e:
                logger.debug('[study][complexity] %s at R=%g: %s', kind, rate, e.message)
                row.append(None)
        values.append(row)
    return ComplexityTable(list(rates), tuple(systems), values)
