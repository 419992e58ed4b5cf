'''
Utility methods for bit labelling and array bookkeeping.
'''

import hashlib
import json
import numpy as np

__all__ = [
    'ParseError',
    'is_power_of_two',
    'log2_int',
    'gray_encode',
    'gray_decode',
    'bits_to_int',
    'int_to_bits',
    'hamming_distance',
    'canonical_hash',
]


class ParseError(Exception):
    def __init__(self, source, line, message):
        super().__init__(message)
        self.source = source
        self.line = line
        self.message = message

    def __str__(self):
        return f'{self.source}:{self.line}: {self.message}'

    def __repr__(self):
        return f'''<ParseError
    message={self.message}
    source={self.source}
    line={self.line}>'''


def is_power_of_two(value):
    return isinstance(value, (int, np.integer)) and value >= 1 and value & (value - 1) == 0


def log2_int(value):
    '''Exact log2 of a power of two.'''
    return int(value).bit_length() - 1


def gray_encode(num):
    return num ^ (num >> 1)


def gray_decode(num):
    '''Invert `gray_encode`, element-wise for arrays.'''
    num = np.asarray(num) if not isinstance(num, int) else num
    shift = num >> 1
    while np.any(shift):
        num = num ^ shift
        shift = shift >> 1
    return num


def bits_to_int(bits):
    '''MSB-first bit sequence to integer. A 2D array converts row-wise.'''
    bits = np.asarray(bits, dtype=np.int64)
    if bits.shape[-1] == 0:
        return np.zeros(bits.shape[:-1], dtype=np.int64) if bits.ndim > 1 else 0
    weights = 1 << np.arange(bits.shape[-1] - 1, -1, -1, dtype=np.int64)
    value = bits @ weights
    return int(value) if bits.ndim == 1 else value


def int_to_bits(value, width):
    '''Integer (or integer array) to MSB-first bits along a new last axis.'''
    value = np.asarray(value, dtype=np.int64)
    shifts = np.arange(width - 1, -1, -1, dtype=np.int64)
    return ((value[..., None] >> shifts) & 1).astype(np.uint8)


def hamming_distance(a, b):
    '''Popcount of `a ^ b` for integer arrays.'''
    x = np.bitwise_xor(np.asarray(a, dtype=np.uint64), np.asarray(b, dtype=np.uint64))
    count = np.zeros(x.shape, dtype=np.int64)
    while np.any(x):
        count += (x & np.uint64(1)).astype(np.int64)
        x = x >> np.uint64(1)
    return count


def canonical_hash(data):
    '''Short SHA-256 over canonical JSON.'''
    text = json.dumps(data, sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(text.encode()).hexdigest()[:16]
