'''
Command line entry: design DM sets, simulate BER, evaluate bounds and
capacity, compare detectors and run parameter studies.
'''
import argparse
import json
import os
import sys
from .core import logger, set_level, load_config, run_default
from .core.errors import StskError
from .core.rand import STREAM_PROFILE, substream
from .core.utils import ParseError
from .analysis import (
    benchmark_curve, dcmc_capacity, diversity_and_coding_gain, parse_snr_grid,
    union_bound_ber, write_curves_csv,
)
from .channel import sample_paths
from .modem import design_dispersion_matrices, generate_candidate, read_dm_set, write_dm_set
from .harness import (
    PARAMETERS, StopRule, baseline_config, bench_detectors, complexity_vs_rate, run_ber_sweep, run_bound_vs_sim,
    run_parameter_study,
)

__all__ = ['main']

WORKERS_ENV = 'STSK_OTFS_WORKERS'


def _snr_grid(text):
    try:
        return parse_snr_grid(text)
    except StskError as e:
        raise argparse.ArgumentTypeError(e.message)


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError('must be >= 1, got %d' % value)
    return value


def _values(text):
    return [item.strip() for item in text.split(',') if item.strip()]


def _rates(text):
    try:
        return [float(item) for item in _values(text)]
    except ValueError:
        raise argparse.ArgumentTypeError('bad rate list: %r' % text)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog='python3 -m stsk_otfs',
        description='STSK-aided OTFS multiple access simulator')
    parser.add_argument('-v', '--verbose', action='store_true', help='log at DEBUG level')
    sub = parser.add_subparsers(dest='command', metavar='command')
    sub.required = True

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-c', '--config', help='`key = value` system file')
    common.add_argument(
        '--set', action='append', default=[], metavar='KEY=VALUE',
        help='override a config key, may be repeated')
    common.add_argument('--seed', type=int, default=run_default('seed'), help='master seed')
    common.add_argument('-o', '--out', help='output file, a `.json` sidecar is written next to it')

    with_dm = argparse.ArgumentParser(add_help=False)
    with_dm.add_argument('--dm', help='DM set file, a random set from the seed is used if omitted')
    with_dm.add_argument(
        '--system', default='stsk-otfs-ma',
        help='stsk-otfs-ma, stsk-ofdm-ma, sm-otfs or simo-otfs')
    with_dm.add_argument('--snr', type=_snr_grid, default='0:5:20', help='SNR grid `start:step:stop` in dB')

    design = sub.add_parser('design-dm', parents=[common], help='search a DM set')
    design.add_argument('--trials', type=_positive, default=run_default('design_trials'), help='candidate sets')
    design.add_argument('-w', '--workers', type=_positive, default=run_default('workers'), help='worker processes')

    for name, help_text in (('simulate-ber', 'simulate BER'), ('bench-detectors', 'compare detectors')):
        sim = sub.add_parser(name, parents=[common, with_dm], help=help_text)
        sim.add_argument('-d', '--detectors', default='mld', help='e.g. `mld,ircd:24,prcgd:2`')
        sim.add_argument('--trials', type=_positive, default=run_default('max_trials'), help='max trials per point')
        sim.add_argument('--errors', type=_positive, default=run_default('target_errors'), help='target bit errors')
        sim.add_argument('-w', '--workers', type=_positive, default=run_default('workers'), help='worker processes')

    bound = sub.add_parser('bound', parents=[common, with_dm], help='BER union bound')
    bound.add_argument('--method', choices=['exact', 'chernoff'], default='exact')
    bound.add_argument('--compare', action='store_true', help='also simulate MLD on the same path indices')
    bound.add_argument('--trials', type=_positive, default=run_default('max_trials'), help='max trials per point')
    bound.add_argument('-w', '--workers', type=_positive, default=run_default('workers'), help='worker processes')

    capacity = sub.add_parser('capacity', parents=[common, with_dm], help='DCMC capacity')
    capacity.add_argument(
        '--trials', type=_positive, default=run_default('capacity_channel_draws'), help='channel draws')
    capacity.add_argument(
        '--noise-draws', type=_positive, default=run_default('capacity_noise_draws'), help='noise draws per channel')
    capacity.add_argument('-w', '--workers', type=_positive, default=run_default('workers'), help='worker processes')

    study = sub.add_parser('study', parents=[common], help='BER curve per value of one parameter')
    study.add_argument('--param', choices=PARAMETERS, required=True, help='studied parameter')
    study.add_argument(
        '--values', type=_values, help='comma separated values, e.g. `2x4,4x2` for qv; defaults per parameter')
    study.add_argument('-d', '--detector', default='mld', help='detector, ignored for t1')
    study.add_argument('--snr', type=_snr_grid, default='0:5:20', help='SNR grid `start:step:stop` in dB')
    study.add_argument('--trials', type=_positive, default=run_default('max_trials'), help='max trials per point')
    study.add_argument('--errors', type=_positive, default=run_default('target_errors'), help='target bit errors')
    study.add_argument('-w', '--workers', type=_positive, default=run_default('workers'), help='worker processes')

    complexity = sub.add_parser('complexity', parents=[common], help='MLD search size against rate')
    complexity.add_argument('--rates', type=_rates, default='1,2,3,4', help='comma separated rates in bits/s/Hz')
    return parser


def _out(args, default):
    return args.out or default


def _write_sidecar(filename, data):
    with open(filename + '.json', 'w') as f:
        json.dump(data, f, sort_keys=True, indent=2)
        f.write('\n')


def _system(args):
    '''The config and DM set selected by `--config`, `--set`, `--system` and `--dm`.'''
    cfg = load_config(args.config, args.set)
    dm_set = read_dm_set(args.dm) if args.dm else None
    cfg, dm_set = baseline_config(args.system, cfg, dm_set, args.seed)
    return cfg, dm_set


def _cmd_design(args):
    cfg = load_config(args.config, args.set)
    profile = sample_paths(cfg, substream(args.seed, STREAM_PROFILE))
    dm_set, metrics = design_dispersion_matrices(cfg, args.trials, profile, args.seed, args.workers)
    out = _out(args, 'dm.txt')
    write_dm_set(out, dm_set)
    result = {
        'config': cfg.snapshot(),
        'config_hash': cfg.config_hash(),
        'seed': args.seed,
        'trials': args.trials,
        'dm_trial': dm_set.trial,
        'metrics': metrics.to_dict(),
    }
    _write_sidecar(out, result)
    print(json.dumps(result['metrics'], sort_keys=True))
    return 0


def _cmd_simulate(args, bench=False):
    cfg, dm_set = _system(args)
    rule = StopRule(target_errors=args.errors, max_trials=args.trials)
    if bench:
        report = bench_detectors(cfg, dm_set, args.detectors, args.snr, args.seed, rule, args.workers)
    else:
        report = run_ber_sweep(cfg, dm_set, args.detectors, args.snr, rule, args.seed, args.workers)
    out = _out(args, 'ber.csv')
    report.write_csv(out)
    data = report.to_dict()
    data['system'] = args.system
    _write_sidecar(out, data)
    if not report.completed:
        logger.warning('[cli] some points were aborted, see %s.json', out)
        return 1
    return 0


def _cmd_bound(args):
    cfg, dm_set = _system(args)
    profile = sample_paths(cfg, substream(args.seed, STREAM_PROFILE))
    curves = [union_bound_ber(cfg, dm_set, profile, args.snr, args.method)]
    g_d, g_c = diversity_and_coding_gain(cfg, dm_set, profile)
    curves.append(benchmark_curve(g_d, cfg.p, args.snr))
    meta = {
        'config': cfg.snapshot(),
        'config_hash': cfg.config_hash(),
        'seed': args.seed,
        'system': args.system,
        'dm_seed': dm_set.seed,
        'diversity_order': g_d,
        'coding_gain': g_c,
    }
    completed = True
    if args.compare:
        rule = StopRule(max_trials=args.trials)
        comparison = run_bound_vs_sim(cfg, dm_set, args.snr, args.seed, rule, args.workers, profile)
        curves.append(comparison.simulation)
        meta['comparison'] = comparison.to_dict()
        completed = comparison.report.completed
    out = _out(args, 'bound.csv')
    write_curves_csv(out, curves, {'config_hash': meta['config_hash'], 'seed': args.seed})
    _write_sidecar(out, meta)
    return 0 if completed else 1


def _cmd_capacity(args):
    cfg, dm_set = _system(args)
    curve = dcmc_capacity(cfg, dm_set, args.snr, args.trials, args.noise_draws, args.seed, workers=args.workers)
    out = _out(args, 'capacity.csv')
    write_curves_csv(out, [curve], {'config_hash': cfg.config_hash(), 'seed': args.seed})
    _write_sidecar(out, {
        'config': cfg.snapshot(),
        'system': args.system,
        'rate': cfg.rate,
        'curve': curve.to_dict(),
    })
    return 0


def _cmd_study(args):
    cfg = load_config(args.config, args.set)
    rule = StopRule(target_errors=args.errors, max_trials=args.trials)
    result = run_parameter_study(
        cfg, args.param, args.snr, args.values, args.detector, rule, args.seed, args.workers)
    out = _out(args, 'study.csv')
    result.write_csv(out)
    data = result.to_dict()
    data.update(config=cfg.snapshot(), config_hash=cfg.config_hash(), seed=args.seed)
    _write_sidecar(out, data)
    if not all(report.completed for report in result.reports):
        logger.warning('[cli] some points were aborted, see %s.json', out)
        return 1
    return 0


def _cmd_complexity(args):
    cfg = load_config(args.config, args.set)
    table = complexity_vs_rate(cfg, args.rates)
    out = _out(args, 'complexity.csv')
    table.write_csv(out)
    data = table.to_dict()
    data.update(config=cfg.snapshot(), config_hash=cfg.config_hash())
    _write_sidecar(out, data)
    return 0


COMMANDS = {
    'design-dm': _cmd_design,
    'simulate-ber': _cmd_simulate,
    'bench-detectors': lambda args: _cmd_simulate(args, bench=True),
    'bound': _cmd_bound,
    'capacity': _cmd_capacity,
    'study': _cmd_study,
    'complexity': _cmd_complexity,
}


def main(argv=None):
    '''Run a command; return the exit status.'''
    parser = _build_parser()
    args = parser.parse_args(argv)
    if os.environ.get(WORKERS_ENV):
        parser.error('%s is not supported, use --workers' % WORKERS_ENV)
    if args.verbose:
        set_level('DEBUG')
    try:
        return COMMANDS[args.command](args)
    except StskError as e:
        sys.stderr.write(json.dumps(e.to_dict()) + '\n')
    except ParseError as e:
        sys.stderr.write(json.dumps({'error': 'parse_error', 'message': str(e)}) + '\n')
    except OSError as e:
        sys.stderr.write(json.dumps({'error': 'io_error', 'message': str(e)}) + '\n')
    return 1
