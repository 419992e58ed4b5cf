import unittest
import numpy as np
from stsk_otfs.core import errors, validate_config
from stsk_otfs.modem import generate_candidate
from stsk_otfs.analysis import capacity_per_channel, dcmc_capacity
from stsk_otfs.harness import baseline_config

TOY = dict(n=2, m=1, nt=2, nr=1, tc=2, q=2, v=2, u=1, p=1)

class TestCapacity(unittest.TestCase):
    def setUp(self):
        self.cfg = validate_config(TOY)
        self.dm_set = generate_candidate(self.cfg, 0, 0)

    def test_range(self):
        curve = dcmc_capacity(self.cfg, self.dm_set, [-10, 10, 40], 6, 20, seed=3)
        self.assertEqual(curve.kind, 'capacity')
        self.assertTrue(np.all(curve.values >= 0))
        self.assertTrue(np.all(curve.values <= self.cfg.rate))
        self.assertLess(curve.values[0], curve.values[-1])
        self.assertGreater(curve.values[-1], 0.9 * self.cfg.rate)
        self.assertEqual(curve.stderr.shape, (3,))

    def test_limits(self):
        cfg = self.cfg.replace(nr=2, p=2)
        dm_set = generate_candidate(cfg, 0, 0)
        curve = dcmc_capacity(cfg, dm_set, [-30, 30], 10, 10, seed=4)
        self.assertLess(abs(curve.values[0]), 0.05)
        self.assertLess(abs(curve.values[1] - cfg.rate), 0.05)

    def test_sm_below_stsk(self):
        base = self.cfg.replace(nr=2, p=2, q=4, v=4)
        dm_set = generate_candidate(base, 0, 0)
        grid = np.arange(-10, 22.5, 2.5)
        stsk = dcmc_capacity(base, dm_set, grid, 40, 20, seed=6)
        sm_cfg, sm_dm = baseline_config('sm-otfs', base.replace(v=2))
        self.assertEqual(sm_cfg.rate, base.rate)
        sm = dcmc_capacity(sm_cfg, sm_dm, grid, 40, 20, seed=6)
        k = int(np.argmin(np.abs(stsk.values - base.rate / 2)))
        slack = 2 * (stsk.stderr[k] + sm.stderr[k])
        self.assertLessEqual(sm.values[k], stsk.values[k] + slack)

    def test_chunked_rows(self):
        rng = np.random.default_rng(0)
        codewords = rng.standard_normal((16, 4)) + 1j * rng.standard_normal((16, 4))
        channel = rng.standard_normal((8, 4)) + 1j * rng.standard_normal((8, 4))
        noise = rng.standard_normal((3, 8)) + 1j * rng.standard_normal((3, 8))
        whole = capacity_per_channel(codewords, channel, [1.0, 10.0], noise, 4, 4)
        split = capacity_per_channel(codewords, channel, [1.0, 10.0], noise, 4, 4, chunk_size=5)
        np.testing.assert_allclose(split, whole, rtol=1e-12)

    def test_workers(self):
        a = dcmc_capacity(self.cfg, self.dm_set, [0, 10], 4, 5, seed=2)
        b = dcmc_capacity(self.cfg, self.dm_set, [0, 10], 4, 5, seed=2, workers=2)
        np.testing.assert_array_equal(a.values, b.values)
        np.testing.assert_array_equal(a.stderr, b.stderr)

    def test_reproducible(self):
        a = dcmc_capacity(self.cfg, self.dm_set, [0, 5], 3, 5, seed=1)
        b = dcmc_capacity(self.cfg, self.dm_set, [0, 5], 3, 5, seed=1)
        np.testing.assert_array_equal(a.values, b.values)
        c = dcmc_capacity(self.cfg, self.dm_set, [0, 5], 3, 5, seed=2)
        self.assertFalse(np.array_equal(a.values, c.values))

    def test_invalid(self):
        with self.assertRaises(errors.DimensionMismatch):
            dcmc_capacity(self.cfg, self.dm_set, [0], 0, 5)
        with self.assertRaises(errors.ConfigParseError):
            dcmc_capacity(self.cfg, self.dm_set, [5, 0], 1, 1)

    def test_capacity_limit(self):
        with self.assertRaises(errors.DimensionMismatch) as ctx:
            dcmc_capacity(self.cfg, self.dm_set, [0], 1, 1, limit=3)
        self.assertEqual(ctx.exception.details['bits'], self.cfg.n_bits)
