'''
Seeded random streams.

All randomness flows from one master seed through `SeedSequence` spawn keys,
so a draw depends only on (seed, stream, indices) and never on the order in
which workers pick up jobs.
'''
import numpy as np

__all__ = [
    'STREAM_DESIGN',
    'STREAM_PAIRS',
    'STREAM_PROFILE',
    'STREAM_TRIAL',
    'STREAM_CAPACITY',
    'substream',
    'as_generator',
]

STREAM_DESIGN = 1
STREAM_PAIRS = 2
STREAM_PROFILE = 3
STREAM_TRIAL = 4
STREAM_CAPACITY = 5


def substream(seed, stream, *indices):
    '''Return an independent generator for `(seed, stream, *indices)`.'''
    seq = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(stream),) + tuple(int(i) for i in indices))
    return np.random.Generator(np.random.PCG64(seq))


def as_generator(rng):
    '''Accept a seed, a `Generator` or None.'''
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)
