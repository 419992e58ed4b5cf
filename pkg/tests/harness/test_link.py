import unittest
from unittest import mock
import numpy as np
from stsk_otfs.core import errors, validate_config
from stsk_otfs.modem import generate_candidate
from stsk_otfs.harness import link

TOY = dict(n=2, m=2, nt=2, nr=2, tc=2, q=2, v=2, u=1, p=2)

class TestDetectorSpec(unittest.TestCase):
    def setUp(self):
        self.cfg = validate_config(TOY)

    def test_parse(self):
        cases = {
            'mld': ('mld', None),
            'FMLD': ('fmld', None),
            'ircd': ('ircd', 16),
            'ircd:3': ('ircd', 3),
            'ircd:5/8': ('ircd', 10),
            'ircd:1/3': ('ircd', 6),
            'prcgd': ('prcgd', 1),
            'prcgd:2': ('prcgd', 2),
        }
        for text, expected in cases.items():
            spec = link.parse_detector_spec(text, self.cfg)
            self.assertEqual((spec.name, spec.parameter), expected)
        self.assertEqual(str(link.parse_detector_spec('IRCD:5/8', self.cfg)), 'ircd:5/8')

    def test_invalid(self):
        for text in ('zf', 'mld:3', 'ircd:0', 'ircd:17', 'ircd:x', 'ircd:1/0', 'prcgd:0'):
            with self.assertRaises(errors.DetectorSpecError):
                link.parse_detector_spec(text, self.cfg)
        with self.assertRaises(errors.DetectorSpecError):
            link.parse_detectors('mld,mld', self.cfg)
        with self.assertRaises(errors.DetectorSpecError):
            link.parse_detectors(' ', self.cfg)

    def test_list(self):
        specs = link.parse_detectors('mld, ircd:4,prcgd:2', self.cfg)
        self.assertEqual([str(s) for s in specs], ['mld', 'ircd:4', 'prcgd:2'])


class TestTrials(unittest.TestCase):
    def setUp(self):
        self.cfg = validate_config(TOY)
        self.dm_set = generate_candidate(self.cfg, 0, 0)
        self.specs = link.parse_detectors('mld,fmld,ircd,prcgd:8', self.cfg)

    def test_noiseless(self):
        tally = link.run_batch(self.cfg, self.dm_set, self.specs, np.inf, 4, 0, 0, 5)
        self.assertEqual(tally.trials, 5)
        self.assertEqual(tally.bit_errors.tolist(), [0, 0, 0, 0])
        self.assertEqual(tally.candidates[0], 5 * 256)
        self.assertEqual(tally.dap_evaluations[2], 5 * 16)

    def test_batches_compose(self):
        whole = link.run_batch(self.cfg, self.dm_set, self.specs, 5.0, 9, 1, 0, 6)
        first = link.run_batch(self.cfg, self.dm_set, self.specs, 5.0, 9, 1, 0, 2)
        first += link.run_batch(self.cfg, self.dm_set, self.specs, 5.0, 9, 1, 2, 4)
        self.assertEqual(first.trials, whole.trials)
        np.testing.assert_array_equal(first.bit_errors, whole.bit_errors)
        np.testing.assert_array_equal(first.candidates, whole.candidates)

    def test_solve_failure(self):
        specs = link.parse_detectors('ircd:2', self.cfg)
        with mock.patch.object(link.LinkContext, 'detect', side_effect=errors.SolveFailure()):
            tally = link.run_batch(self.cfg, self.dm_set, specs, 10.0, 0, 0, 0, 3)
        self.assertEqual(tally.solve_failures.tolist(), [3])
        self.assertEqual(tally.frame_errors.tolist(), [3])
        self.assertEqual(tally.bit_errors.tolist(), [3 * self.cfg.n_bits // 2])
