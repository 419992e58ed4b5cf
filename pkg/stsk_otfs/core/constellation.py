'''
Unit-energy Gray-labelled PSK and square QAM constellations.
'''
import numpy as np
from . import types
from .errors import UnsupportedOrder
from .utils import is_power_of_two, log2_int, gray_encode

__all__ = [
    'Constellation',
    'build_constellation',
]


class Constellation:
    '''
    A constellation 𝓕 = {f_1, ..., f_V}.

    `points` is in geometric order (PSK by increasing phase, QAM row-major
    over the in-phase/quadrature levels); `labels[p]` is the bit label that
    selects point `p`.
    '''

    def __init__(self, points, labels, kind):
        self.points = np.asarray(points, dtype=complex)
        self.labels = np.asarray(labels, dtype=np.int64)
        self.kind = kind
        self.order = len(self.points)
        self.bits = log2_int(self.order)
        self._position = np.empty(self.order, dtype=np.int64)
        self._position[self.labels] = np.arange(self.order)

    def __repr__(self):
        return '<Constellation %s-%d>' % (types.get_name(types.constellations, self.kind).upper(), self.order)

    def __len__(self):
        return self.order

    def position(self, label):
        '''Geometric index of the point carrying `label`.'''
        return self._position[label]

    def symbol(self, label):
        return self.points[self._position[label]]

    def label(self, position):
        return self.labels[position]

    def quantize(self, values):
        '''Nearest-point positions for an array of complex values.'''
        values = np.asarray(values, dtype=complex)
        dist = np.abs(values[..., None] - self.points) ** 2
        return np.argmin(dist, axis=-1)

    def snap(self, values):
        return self.points[self.quantize(values)]

    @property
    def energy(self):
        return float(np.mean(np.abs(self.points) ** 2))

    @property
    def min_distance(self):
        diff = np.abs(self.points[:, None] - self.points[None, :])
        return float(diff[~np.eye(self.order, dtype=bool)].min())


def _clean(points):
    re = np.where(np.abs(points.real) < 1e-15, 0.0, points.real)
    im = np.where(np.abs(points.imag) < 1e-15, 0.0, points.imag)
    return re + 1j * im


def _psk(order):
    offset = 0.0 if order == 2 else np.pi / order
    pos = np.arange(order)
    points = _clean(np.exp(1j * (2 * np.pi * pos / order + offset)))
    return points, gray_encode(pos)


def _qam(order):
    bits = log2_int(order)
    if bits % 2:
        raise UnsupportedOrder('Square QAM needs an even number of bits, got V=%d' % order)
    side = 1 << (bits // 2)
    levels = 2 * np.arange(side) - (side - 1)
    i_idx, q_idx = np.meshgrid(np.arange(side), np.arange(side), indexing='ij')
    i_idx, q_idx = i_idx.ravel(), q_idx.ravel()
    points = levels[i_idx] + 1j * levels[q_idx]
    labels = (gray_encode(i_idx) << (bits // 2)) | gray_encode(q_idx)
    return points.astype(complex), labels


def build_constellation(order, kind=types.PSK):
    '''
    Build a unit average energy, Gray-labelled constellation.

    BPSK is {+1, -1}, QPSK is {(±1±j)/√2}, and 16-QAM is the standard lattice
    scaled by 1/√10.
    '''
    code = types.get_code(types.constellations, kind)
    if code is None:
        raise UnsupportedOrder('Unknown constellation kind: %s' % kind)
    if not is_power_of_two(order) or order < 2:
        raise UnsupportedOrder('Constellation order must be a power of two >= 2, got %r' % order)
    if code == types.PSK:
        points, labels = _psk(order)
    else:
        points, labels = _qam(order)
    points = points / np.sqrt(np.mean(np.abs(points) ** 2))
    return Constellation(points, labels, code)
