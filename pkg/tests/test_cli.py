import contextlib
import io
import json
import os
import tempfile
import unittest
from unittest import mock
from stsk_otfs.cli import main
from stsk_otfs.modem import read_dm_set

TOY = ['--set', 'n=2', '--set', 'm=1', '--set', 'nr=1', '--set', 'p=1']


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        status = main(argv)
    return status, out.getvalue(), err.getvalue()


class TestCli(unittest.TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = self._tmp.name

    def tearDown(self):
        self._tmp.cleanup()

    def path(self, name):
        return os.path.join(self.tmp, name)

    def test_design(self):
        out = self.path('dm.txt')
        status, stdout, _ = run(['design-dm'] + TOY + ['--trials', '3', '--seed', '7', '--out', out])
        self.assertEqual(status, 0)
        self.assertEqual(read_dm_set(out).seed, 7)
        with open(out + '.json') as f:
            sidecar = json.load(f)
        self.assertEqual(sidecar['seed'], 7)
        self.assertEqual(json.loads(stdout), sidecar['metrics'])

    def test_simulate(self):
        bodies = []
        for name, workers in (('a.csv', '1'), ('b.csv', '2')):
            out = self.path(name)
            status, _, _ = run(['simulate-ber'] + TOY + [
                '--detectors', 'mld,ircd:2', '--snr', '0:10:10', '--trials', '40', '--errors', '5',
                '--seed', '1', '--workers', workers, '--out', out])
            self.assertEqual(status, 0)
            with open(out) as f:
                bodies.append(f.read())
        self.assertEqual(bodies[0], bodies[1])
        lines = bodies[0].splitlines()
        self.assertEqual(lines[0], 'snr_db,detector,trials,bit_errors,ber')
        self.assertEqual([line.split(',')[:2] for line in lines[1:]],
                         [['0', 'mld'], ['0', 'ircd:2'], ['10', 'mld'], ['10', 'ircd:2']])
        with open(self.path('a.csv.json')) as f:
            sidecar = json.load(f)
        self.assertEqual((sidecar['seed'], sidecar['completed']), (1, True))

    def test_dm_file_and_baseline(self):
        dm = self.path('dm.txt')
        run(['design-dm'] + TOY + ['--trials', '2', '--out', dm])
        out = self.path('ber.csv')
        status, _, _ = run(['bench-detectors'] + TOY + [
            '--dm', dm, '--detectors', 'mld,prcgd:1', '--snr', '5:5:5', '--trials', '20', '--out', out])
        self.assertEqual(status, 0)
        with open(out + '.json') as f:
            self.assertIn('order', json.load(f)['complexity']['prcgd:1'])
        status, _, _ = run(['simulate-ber'] + TOY + ['--system', 'simo-otfs', '--snr', '0:5:5', '--trials', '20',
                                                     '--out', out])
        self.assertEqual(status, 0)

    def test_bound(self):
        out = self.path('bound.csv')
        status, _, _ = run(['bound'] + TOY + ['--snr', '0:10:20', '--out', out])
        self.assertEqual(status, 0)
        with open(out) as f:
            lines = f.read().splitlines()
        self.assertTrue(lines[0].startswith('# meta: '))
        kinds = [line.split(',')[-1] for line in lines[2:]]
        self.assertEqual(kinds, ['union_bound'] * 3 + ['benchmark'] * 3)
        status, _, _ = run(['bound'] + TOY + ['--snr', '0:10:10', '--compare', '--trials', '25', '--out', out])
        self.assertEqual(status, 0)
        with open(out + '.json') as f:
            self.assertIn('comparison', json.load(f))

    def test_capacity(self):
        out = self.path('capacity.csv')
        status, _, _ = run(['capacity'] + TOY + ['--snr', '0:10:10', '--trials', '2', '--noise-draws', '3',
                                                 '--out', out])
        self.assertEqual(status, 0)
        with open(out + '.json') as f:
            self.assertEqual(json.load(f)['rate'], 1.0)

    def test_default_config(self):
        for command, extra in (('bound', []), ('capacity', ['--trials', '2', '--noise-draws', '2'])):
            out = self.path(command + '.csv')
            status, _, err = run([command, '--snr', '10:10:10', '--out', out] + extra)
            self.assertEqual(status, 0, err)
            with open(out + '.json') as f:
                self.assertEqual(json.load(f)['config']['m'], 1)

    def test_workers(self):
        for command, extra in (
            ('design-dm', ['--trials', '3']),
            ('capacity', ['--snr', '0:10:10', '--trials', '3', '--noise-draws', '2']),
        ):
            bodies = []
            for workers in ('1', '2'):
                out = self.path('%s-%s.txt' % (command, workers))
                status, _, _ = run([command] + TOY + extra + ['--seed', '4', '--workers', workers, '--out', out])
                self.assertEqual(status, 0)
                with open(out) as f:
                    bodies.append(f.read())
            self.assertEqual(bodies[0], bodies[1])

    def test_study(self):
        out = self.path('study.csv')
        status, _, _ = run(['study'] + TOY + [
            '--param', 'qv', '--snr', '0:10:10', '--trials', '20', '--errors', '5', '--out', out])
        self.assertEqual(status, 0)
        with open(out) as f:
            lines = f.read().splitlines()
        self.assertEqual(lines[0], 'snr_db,q=1/v=4,q=2/v=2')
        self.assertEqual(len(lines), 3)
        with open(out + '.json') as f:
            self.assertEqual(json.load(f)['parameter'], 'qv')
        status, _, _ = run(['study'] + TOY + [
            '--param', 't1', '--values', '1,2', '--snr', '5:5:5', '--trials', '10', '--out', out])
        self.assertEqual(status, 0)
        with open(out) as f:
            self.assertEqual(f.readline().strip(), 'snr_db,t1=1,t1=2')

    def test_complexity(self):
        out = self.path('complexity.csv')
        status, _, _ = run(['complexity'] + TOY + ['--rates', '1,2', '--out', out])
        self.assertEqual(status, 0)
        with open(out) as f:
            lines = f.read().splitlines()
        self.assertEqual(lines[0], 'rate,simo-otfs,sm-otfs,stsk-ofdm-ma,stsk-otfs-ma')
        self.assertEqual(lines[1], '1,4,,4,16')

    def test_usage_errors(self):
        for argv in (
            ['simulate-ber', '--bogus'],
            ['simulate-ber', '--snr', '10:1:0'],
            ['frobnicate'],
            [],
        ):
            with self.assertRaises(SystemExit) as cm:
                run(argv + ['--out', self.path('x.csv')] if argv else argv)
            self.assertEqual(cm.exception.code, 2)
        with mock.patch.dict(os.environ, {'STSK_OTFS_WORKERS': '4'}):
            with self.assertRaises(SystemExit) as cm:
                run(['simulate-ber', '--out', self.path('x.csv')])
            self.assertEqual(cm.exception.code, 2)
        self.assertEqual(os.listdir(self.tmp), [])

    def test_runtime_error(self):
        status, _, err = run(['simulate-ber', '--set', 'q=3', '--out', self.path('x.csv')])
        self.assertEqual(status, 1)
        self.assertEqual(json.loads(err.splitlines()[-1])['error'], 'non_power_of_two')
        status, _, err = run(['simulate-ber', '--set', 'bandwidth=1'])
        self.assertEqual(status, 1)
        self.assertEqual(json.loads(err.splitlines()[-1])['error'], 'unknown_config_key')
        status, _, err = run(['simulate-ber', '--dm', self.path('missing.txt')])
        self.assertEqual(status, 1)
        self.assertEqual(json.loads(err.splitlines()[-1])['error'], 'io_error')
