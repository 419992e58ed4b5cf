import unittest
import numpy as np
from stsk_otfs.core import errors
from stsk_otfs.analysis import pep


def rayleigh_pep(c, nr):
    '''Closed form for a rank-one pair with N_r-fold receive diversity.'''
    mu = np.sqrt(c / (1 + c))
    if nr == 1:
        return (1 - mu) / 2
    return ((1 - mu) / 2) ** 2 * (2 + mu)


class TestPep(unittest.TestCase):
    def test_closed_form(self):
        r = np.diag([2.0, 0.0])
        for gamma in (0.5, 10.0, 1000.0):
            c = 2.0 * gamma / (4 * 2)
            for nr in (1, 2):
                result = pep.pairwise_error_probability(r, gamma, p=2, nr=nr)
                self.assertEqual(result.rank, 1)
                self.assertAlmostEqual(result.value, rayleigh_pep(c, nr), places=10)

    def test_rank_zero(self):
        self.assertEqual(pep.pairwise_error_probability(np.zeros((3, 3)), 10.0, 1, 1).value, 0.5)

    def test_invalid(self):
        with self.assertRaises(errors.NonHermitianInput):
            pep.pairwise_error_probability(np.ones((2, 3)), 1.0, 1, 1)
        with self.assertRaises(errors.NonHermitianInput):
            pep.pairwise_error_probability(np.array([[1, 1j], [1j, 1]]), 1.0, 1, 1)
        with self.assertRaises(errors.NonHermitianInput):
            pep.pairwise_error_probability(np.diag([1.0, -1.0]), 1.0, 1, 1)

    def test_vectorised(self):
        eig = np.array([[1.0, 0.5], [2.0, 0.0]])
        gammas = np.array([1.0, 10.0, np.inf])
        out = pep.pep_integral(eig, gammas, 2, 2)
        self.assertEqual(out.shape, (3, 2))
        self.assertTrue(np.all(out[0] > out[1]))
        np.testing.assert_array_equal(out[2], [0, 0])
        np.testing.assert_array_equal(pep.pep_integral(np.zeros((1, 2)), np.inf, 2, 2), [[0.5]])

    def test_bounds(self):
        eig = np.array([[1.5, 0.25]])
        gammas = np.array([1.0, 10.0, 100.0])
        exact = pep.pep_integral(eig, gammas, 2, 1)
        upper = pep.pep_upper_bound(eig, gammas, 2, 1)
        self.assertTrue(np.all(upper >= exact))
        high = np.array([1e8])
        ratio = pep.pep_upper_bound(eig, high, 2, 1) / pep.pep_asymptote(eig, high, 2, 1)
        self.assertAlmostEqual(ratio[0, 0], 1.0, places=5)

    def test_benchmark(self):
        curve = pep.benchmark_curve(2, 2, [0.0, 10.0])
        np.testing.assert_allclose(curve.values, [0.5 * 8 ** 2, 0.5 * 0.8 ** 2])
        self.assertEqual(curve.kind, 'benchmark')
