'''
Text format for DM sets.

Header `Q N_t T_c seed`, then `re im` per entry, matrix by matrix, each in
row-major order. `seed` is -1 when unknown.
'''

import numpy as np
from ..core.utils import ParseError
from .dispersion import DispersionMatrixSet

__all__ = [
    'write_dm_set',
    'read_dm_set',
]


def write_dm_set(filename, dm_set):
    seed = -1 if dm_set.seed is None else dm_set.seed
    lines = ['%d %d %d %d' % (dm_set.q, dm_set.nt, dm_set.tc, seed)]
    for value in dm_set.matrices.ravel():
        lines.append('%.17g %.17g' % (value.real, value.imag))
    with open(filename, 'w') as f:
        f.write('\n'.join(lines) + '\n')


def read_dm_set(filename):
    with open(filename, 'r') as f:
        lines = [line.strip() for line in f]
    lines = [(i, line) for i, line in enumerate(lines, 1) if line]
    if not lines:
        raise ParseError(filename, 1, 'empty DM file')
    lineno, header = lines[0]
    try:
        q, nt, tc, seed = (int(x) for x in header.split())
    except ValueError:
        raise ParseError(filename, lineno, 'expected header `Q N_t T_c seed`')
    body = lines[1:]
    if len(body) != q * nt * tc:
        raise ParseError(filename, lineno, 'expected %d entries, found %d' % (q * nt * tc, len(body)))
    values = np.empty(len(body), dtype=complex)
    for k, (lineno, line) in enumerate(body):
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(filename, lineno, 'expected `re im`')
        try:
            values[k] = complex(float(parts[0]), float(parts[1]))
        except ValueError:
            raise ParseError(filename, lineno, 'bad number')
    return DispersionMatrixSet(values.reshape(q, nt, tc), seed=None if seed < 0 else seed)
