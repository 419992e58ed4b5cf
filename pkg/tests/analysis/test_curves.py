import os
import tempfile
import unittest
import numpy as np
from stsk_otfs.core import errors
from stsk_otfs.analysis import curves

class TestCurves(unittest.TestCase):
    def test_grid(self):
        np.testing.assert_allclose(curves.parse_snr_grid('0:2:10'), [0, 2, 4, 6, 8, 10])
        np.testing.assert_allclose(curves.parse_snr_grid('-5:2.5:0'), [-5, -2.5, 0])
        np.testing.assert_allclose(curves.parse_snr_grid('3:1:3'), [3])
        for text in ('0:2', '0:0:10', '10:1:0', 'a:b:c'):
            with self.assertRaises(errors.ConfigParseError):
                curves.parse_snr_grid(text)
        with self.assertRaises(errors.ConfigParseError):
            curves.check_snr_grid([0, 0])

    def test_db(self):
        np.testing.assert_allclose(curves.db_to_linear([0, 10, 20]), [1, 10, 100])

    def test_csv(self):
        curve = curves.Curve('union_bound', [0, 10], [0.1, 0.01], meta={'seed': 1})
        with tempfile.TemporaryDirectory() as tmp:
            filename = os.path.join(tmp, 'bound.csv')
            curves.write_curves_csv(filename, [curve], {'config_hash': 'abc'})
            with open(filename) as f:
                lines = f.read().splitlines()
        self.assertEqual(lines[0], '# meta: {"config_hash": "abc", "union_bound": {"seed": 1}}')
        self.assertEqual(lines[1:], ['snr_db,value,stderr,kind', '0,0.1,0,union_bound', '10,0.01,0,union_bound'])
