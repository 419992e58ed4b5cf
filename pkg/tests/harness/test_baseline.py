import unittest
import numpy as np
from stsk_otfs.core import errors, validate_config
from stsk_otfs.detector import system_complexity
from stsk_otfs.modem import generate_candidate
from stsk_otfs.harness import baseline, link

TOY = dict(n=2, m=2, nt=2, nr=2, tc=2, q=4, v=2, u=1, p=2)

class TestBaseline(unittest.TestCase):
    def setUp(self):
        self.cfg = validate_config(TOY)

    def test_sm_otfs(self):
        cfg, dm_set = baseline.baseline_config('sm-otfs', self.cfg)
        self.assertEqual((cfg.tc, cfg.q, cfg.nt), (1, 2, 2))
        np.testing.assert_array_equal(dm_set.matrices[:, :, 0], np.eye(2))
        self.assertEqual(system_complexity('sm-otfs', cfg), (cfg.q * cfg.v) ** cfg.md)

    def test_simo_otfs(self):
        cfg, dm_set = baseline.baseline_config('simo-otfs', self.cfg)
        self.assertEqual((cfg.nt, cfg.q, cfg.tc, cfg.n_bits), (1, 1, 1, cfg.md))
        self.assertEqual(dm_set.matrices.tolist(), [[[1]]])

    def test_ofdm(self):
        dm_set = generate_candidate(self.cfg, 0, 0)
        cfg, same = baseline.baseline_config('stsk-ofdm-ma', self.cfg, dm_set)
        self.assertIs(same, dm_set)
        self.assertEqual((cfg.n, cfg.max_doppler, cfg.md), (1, 0, 2))
        cfg, fresh = baseline.baseline_config('stsk_ofdm_ma', self.cfg, seed=4)
        self.assertEqual(fresh.seed, 4)

    def test_otfs(self):
        cfg, dm_set = baseline.baseline_config('stsk-otfs-ma', self.cfg)
        self.assertIs(cfg, self.cfg)
        self.assertEqual(dm_set.matrices.shape, (4, 2, 2))

    def test_incompatible(self):
        with self.assertRaises(errors.IncompatibleBase):
            baseline.baseline_config('mimo-ofdm', self.cfg)
        with self.assertRaises(errors.IncompatibleBase):
            baseline.baseline_config('sm-otfs', self.cfg.replace(nt=3))
        with self.assertRaises(errors.IncompatibleBase):
            baseline.baseline_config('stsk-ofdm-ma', self.cfg, generate_candidate(self.cfg.replace(q=2), 0, 0))

    def test_noiseless_baselines(self):
        for kind in ('sm-otfs', 'simo-otfs', 'stsk-ofdm-ma'):
            cfg, dm_set = baseline.baseline_config(kind, self.cfg)
            specs = link.parse_detectors('mld,ircd', cfg)
            tally = link.run_batch(cfg, dm_set, specs, np.inf, 0, 0, 0, 3)
            self.assertEqual(tally.bit_errors.tolist(), [0, 0], kind)

    def test_rate_pairs(self):
        self.assertEqual(baseline.rate_equivalent_pairs(2, 2), [(1, 16), (2, 8), (4, 4), (8, 2)])
        self.assertEqual(baseline.rate_equivalent_pairs(1.5, 2), [(1, 8), (2, 4), (4, 2)])
        with self.assertRaises(errors.IncompatibleBase):
            baseline.rate_equivalent_pairs(0.75, 2)
