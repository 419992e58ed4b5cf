'''
BER points and run reports.
'''

from dataclasses import dataclass, field, asdict
import json

__all__ = [
    'BerPoint',
    'RunReport',
]


@dataclass
class BerPoint:
    snr_db: float
    detector: str
    trials: int
    bit_errors: int
    frame_errors: int
    n_bits: int
    seed: int
    solve_failures: int = 0
    candidates: int = 0
    dap_evaluations: int = 0
    aborted: bool = False

    @property
    def ber(self):
        return self.bit_errors / (self.trials * self.n_bits) if self.trials else 0.0

    @property
    def fer(self):
        return self.frame_errors / self.trials if self.trials else 0.0

    def to_dict(self):
        data = asdict(self)
        data['ber'] = self.ber
        return data


@dataclass
class RunReport:
    config: dict
    config_hash: str
    seed: int
    dm_seed: object = None
    points: dict = field(default_factory=dict)
    complexity: dict = field(default_factory=dict)
    wall_clock: float = 0.0

    @property
    def completed(self):
        return not any(p.aborted for points in self.points.values() for p in points)

    def add(self, point):
        self.points.setdefault(point.detector, []).append(point)

    def rows(self):
        '''Points ordered by SNR, then by detector order.'''
        ordered = [p for points in self.points.values() for p in points]
        order = {name: k for k, name in enumerate(self.points)}
        return sorted(ordered, key=lambda p: (p.snr_db, order[p.detector]))

    def write_csv(self, filename):
        with open(filename, 'w') as f:
            f.write('snr_db,detector,trials,bit_errors,ber\n')
            for p in self.rows():
                f.write('%.10g,%s,%d,%d,%.10g\n' % (p.snr_db, p.detector, p.trials, p.bit_errors, p.ber))

    def to_dict(self):
        return {
            'config': self.config,
            'config_hash': self.config_hash,
            'seed': self.seed,
            'dm_seed': self.dm_seed,
            'completed': self.completed,
            'wall_clock': self.wall_clock,
            'complexity': self.complexity,
            'points': {name: [p.to_dict() for p in points] for name, points in self.points.items()},
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)
