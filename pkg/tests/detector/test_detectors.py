import unittest
from unittest import mock
import numpy as np
from stsk_otfs.core import build_constellation, errors, validate_config
from stsk_otfs.channel import add_noise, assemble_equivalent_model, sample_paths
from stsk_otfs.modem import (
    Codebook, DapSpace, build_resource_allocation, build_st_mapper, encode_bits, generate_candidate,
)
from stsk_otfs import detector
from stsk_otfs.harness import StopRule, run_ber_sweep

TOY = dict(n=2, m=2, nt=2, nr=2, tc=2, q=2, v=2, u=1, p=2)


class DetectorCase(unittest.TestCase):
    def setUp(self):
        self.cfg = validate_config(TOY)
        self.constellation = build_constellation(self.cfg.v)
        self.dm_set = generate_candidate(self.cfg, 0, 0)
        self.codebook = Codebook(self.cfg, self.constellation)
        self.space = DapSpace(self.cfg)
        self.rng = np.random.default_rng(21)

    def draw(self, gamma):
        bits = self.rng.integers(0, 2, self.cfg.n_bits)
        symbols = encode_bits(bits, self.cfg, self.constellation)
        profile = sample_paths(self.cfg, self.rng)
        channel = assemble_equivalent_model(
            profile, self.cfg, build_resource_allocation(self.cfg), build_st_mapper(self.cfg), self.dm_set)
        return symbols, channel, add_noise(channel.apply(symbols.dense), gamma, self.rng)


class TestExhaustive(DetectorCase):
    def test_noiseless(self):
        symbols, channel, y = self.draw(np.inf)
        for result in (
            detector.mld(y, channel, self.codebook),
            detector.factorized_mld(y, channel, self.space, self.constellation),
        ):
            np.testing.assert_array_equal(result.dap, symbols.dap)
            np.testing.assert_allclose(result.apm, symbols.apm)
            self.assertAlmostEqual(result.residual, 0.0)

    def test_factorized_matches_mld(self):
        for _ in range(100):
            _, channel, y = self.draw(10 ** 0.5)
            full = detector.mld(y, channel, self.codebook, chunk_size=50)
            factored = detector.factorized_mld(y, channel, self.space, self.constellation, chunk_size=3)
            np.testing.assert_array_equal(full.dap, factored.dap)
            np.testing.assert_allclose(full.apm, factored.apm)
            self.assertAlmostEqual(full.residual, factored.residual)

    def test_counts(self):
        _, channel, y = self.draw(10.0)
        self.assertEqual(detector.mld(y, channel, self.codebook).candidates_tested, 256)
        result = detector.factorized_mld(y, channel, self.space, self.constellation)
        self.assertEqual((result.candidates_tested, result.dap_evaluations), (256, 16))
        with self.assertRaises(errors.SearchSpaceTooLarge):
            detector.factorized_mld(y, channel, self.space, self.constellation, limit=4)


class TestReduced(DetectorCase):
    def test_noiseless(self):
        symbols, channel, y = self.draw(np.inf)
        soft = detector.lmmse_soft_estimate(y, channel, np.inf)
        np.testing.assert_allclose(soft, symbols.dense, atol=1e-9)
        result = detector.ircd(y, channel, self.cfg, self.dm_set, self.constellation, 1)
        np.testing.assert_array_equal(result.dap, symbols.dap)
        self.assertEqual((result.candidates_tested, result.dap_evaluations), (1, 1))

        result = detector.prcgd(y, channel, self.cfg, self.dm_set, self.constellation, 8, eps_0=1e-9)
        np.testing.assert_array_equal(result.dap, symbols.dap)
        # stops after the DAPs containing the most reliable entry
        self.assertEqual(result.dap_evaluations, len(self.space) // self.cfg.q)

    def test_exhausted_search(self):
        symbols, channel, y = self.draw(np.inf)
        result = detector.prcgd(y, channel, self.cfg, self.dm_set, self.constellation, 8, gamma=np.inf)
        np.testing.assert_array_equal(result.dap, symbols.dap)
        self.assertEqual(result.dap_evaluations, len(self.space))

    def test_budgets(self):
        _, channel, y = self.draw(10.0)
        for t2 in (1, 5, 16):
            result = detector.ircd(y, channel, self.cfg, self.dm_set, self.constellation, t2, gamma=10.0)
            self.assertEqual(result.dap_evaluations, t2)
            report = detector.complexity_report(result, self.cfg)
            self.assertEqual(report['order'], t2 * self.cfg.md * self.cfg.v)
        result = detector.prcgd(y, channel, self.cfg, self.dm_set, self.constellation, 1, gamma=10.0)
        self.assertLessEqual(result.dap_evaluations, len(self.space) // self.cfg.q)
        with self.assertRaises(errors.DetectorSpecError):
            detector.ircd(y, channel, self.cfg, self.dm_set, self.constellation, 0)
        with self.assertRaises(errors.DetectorSpecError):
            detector.ircd(y, channel, self.cfg, self.dm_set, self.constellation, 17)
        with self.assertRaises(errors.DetectorSpecError):
            detector.prcgd(y, channel, self.cfg, self.dm_set, self.constellation, 0)

    def test_residual_not_below_mld(self):
        for _ in range(100):
            _, channel, y = self.draw(3.0)
            best = detector.mld(y, channel, self.codebook).residual
            greedy = detector.prcgd(y, channel, self.cfg, self.dm_set, self.constellation, 2, gamma=3.0)
            reduced = detector.ircd(y, channel, self.cfg, self.dm_set, self.constellation, 16, gamma=3.0)
            self.assertGreaterEqual(greedy.residual, best - 1e-9)
            self.assertGreaterEqual(reduced.residual, best - 1e-9)

    def test_greedy_tie_lowest_dap(self):
        _, channel, y = self.draw(10.0)
        picks = iter([9, 2, 6])

        def best(tester, indices):
            index = next(picks)
            return 1.0, self.space.active(index), np.ones(self.cfg.md), index

        with mock.patch.object(detector.DapTester, 'best', best):
            result = detector.prcgd(y, channel, self.cfg, self.dm_set, self.constellation, 3, eps_0=0.0, gamma=10.0)
        np.testing.assert_array_equal(result.dap, self.space.active(2))
        self.assertEqual(result.residual, 1.0)

    def test_full_budget_beats_partial(self):
        for _ in range(5):
            _, channel, y = self.draw(3.0)
            cache = detector.FactorCache(channel, self.cfg.q)
            full = detector.ircd(y, channel, self.cfg, None, self.constellation, 16, 3.0, self.space, cache)
            part = detector.ircd(y, channel, self.cfg, None, self.constellation, 4, 3.0, self.space, cache)
            self.assertLessEqual(full.residual, part.residual + 1e-12)
            self.assertGreater(cache.hits, 0)


class TestBase(DetectorCase):
    def test_order(self):
        order = detector.ReliabilityOrder.from_scores([1, 3, 3, 0])
        self.assertEqual(order.indices.tolist(), [1, 2, 0, 3])
        self.assertEqual(len(order), 4)

    def test_threshold(self):
        self.assertAlmostEqual(detector.default_threshold(self.cfg, 10.0), 1.6)
        self.assertEqual(detector.default_threshold(self.cfg, np.inf), 0.0)

    def test_solve_failure(self):
        zero = np.zeros((16, 8), dtype=complex)
        with self.assertRaises(errors.SolveFailure):
            detector.lmmse_soft_estimate(np.ones(16), zero, np.inf, 2)
        tester = detector.DapTester(np.ones(16), zero, self.constellation, self.space)
        with self.assertRaises(errors.SolveFailure):
            tester.test(0)

    def test_sparse(self):
        result = detector.DetectionResult(np.array([1, 2]), np.array([1, -1]), 0.0, 1, 1)
        self.assertEqual(result.sparse(2).tolist(), [0, 1, -1, 0])


class TestComplexity(DetectorCase):
    def test_orders(self):
        orders = detector.analytic_orders(self.cfg, t1_dap_count=3, t2=5)
        self.assertEqual(orders, {
            'mld': 256, 'prcgd_best': 8, 'prcgd_worst': 128, 'prcgd': 24, 'ircd': 40,
        })

    def test_systems(self):
        self.assertEqual(detector.system_complexity('simo-otfs', self.cfg), 2 ** 4)
        self.assertEqual(detector.system_complexity('sm-otfs', self.cfg), 4 ** 4)
        self.assertEqual(detector.system_complexity('stsk-ofdm-ma', self.cfg), 4 ** 2)
        self.assertEqual(detector.system_complexity('STSK_OTFS_MA', self.cfg), 4 ** 4)
        with self.assertRaises(errors.IncompatibleBase):
            detector.system_complexity('mimo', self.cfg)


class TestBerOrdering(DetectorCase):
    def test_ordering(self):
        rule = StopRule(target_errors=200, max_trials=4000, batch_size=250)
        report = run_ber_sweep(self.cfg, self.dm_set, 'mld,ircd:5/8,prcgd:1,ircd', [0, 4, 8], rule, seed=13)

        def stats(label, k):
            point = report.points[label][k]
            return point.ber, point.ber / np.sqrt(max(point.frame_errors, 1))

        for k in (1, 2):
            ber = {}
            for label in ('mld', 'ircd:5/8', 'prcgd:1', 'ircd'):
                ber[label] = stats(label, k)
            for better, worse in (('mld', 'ircd:5/8'), ('ircd:5/8', 'prcgd:1')):
                (a, sa), (b, sb) = ber[better], ber[worse]
                self.assertLessEqual(a, b + 2 * np.hypot(sa, sb), (k, better, worse))
            (a, sa), (b, sb) = ber['mld'], ber['ircd']
            self.assertLessEqual(abs(a - b), 2 * np.hypot(sa, sb))
