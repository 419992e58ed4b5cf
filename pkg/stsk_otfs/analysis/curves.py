'''
SNR grids and (snr_db, value) curves with CSV output.
'''

from dataclasses import dataclass, field
from typing import Optional
import json
import numpy as np
from ..core.errors import ConfigParseError

__all__ = [
    'Curve',
    'db_to_linear',
    'check_snr_grid',
    'parse_snr_grid',
    'write_curves_csv',
]


@dataclass
class Curve:
    kind: str
    snr_db: np.ndarray
    values: np.ndarray
    stderr: Optional[np.ndarray] = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.snr_db = check_snr_grid(self.snr_db)
        self.values = np.asarray(self.values, dtype=float)
        if self.stderr is not None:
            self.stderr = np.asarray(self.stderr, dtype=float)

    def __len__(self):
        return len(self.snr_db)

    def rows(self):
        stderr = np.zeros(len(self)) if self.stderr is None else self.stderr
        for snr, value, err in zip(self.snr_db, self.values, stderr):
            yield float(snr), float(value), float(err), self.kind

    def to_dict(self):
        return {
            'kind': self.kind,
            'snr_db': self.snr_db.tolist(),
            'values': self.values.tolist(),
            'stderr': None if self.stderr is None else self.stderr.tolist(),
            'meta': self.meta,
        }


def db_to_linear(snr_db):
    return 10.0 ** (np.asarray(snr_db, dtype=float) / 10)


def check_snr_grid(snr_db):
    grid = np.atleast_1d(np.asarray(snr_db, dtype=float))
    if grid.ndim != 1 or np.any(np.diff(grid) <= 0):
        raise ConfigParseError('SNR grid must be strictly increasing')
    return grid


def parse_snr_grid(text):
    '''`start:step:stop` in dB, stop included.'''
    try:
        start, step, stop = (float(x) for x in text.split(':'))
    except ValueError:
        raise ConfigParseError('SNR grid must be `start:step:stop`, got %r' % (text,))
    if step <= 0 or stop < start:
        raise ConfigParseError('SNR grid needs step > 0 and stop >= start, got %r' % (text,))
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    return check_snr_grid(np.round(start + step * np.arange(count), 10))


def write_curves_csv(filename, curves, meta=None):
    '''`snr_db,value,stderr,kind` rows after a `# meta:` line.'''
    meta = dict(meta or {})
    for curve in curves:
        meta.setdefault(curve.kind, curve.meta)
    with open(filename, 'w') as f:
        f.write('# meta: %s\n' % json.dumps(meta, sort_keys=True))
        f.write('snr_db,value,stderr,kind\n')
        for curve in curves:
            for snr, value, err, kind in curve.rows():
                f.write('%.10g,%.12g,%.6g,%s\n' % (snr, value, err, kind))
