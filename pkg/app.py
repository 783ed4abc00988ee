import argparse
import logging
import os
import sys
from pathlib import Path

from config import config as presets
from core.errors import BudgetExceeded, MoebiusLociError, TupleParseError, UnknownScenario
from core.tuple_io import read_tuple_file
from documents.figures.disc_figures import draw_tuple_figure
from documents.reports.serializers import (dump_csv, dump_json, failure_to_json, limit_set_to_json,
                                           multicone_to_json, report_to_json, spectral_to_frame,
                                           witness_to_json)
from documents.scenarios.reproduce import SCENARIOS, run_scenario
from system.explorer.words import find_elliptic_or_identity, inverse_free_violation, refute_semidiscrete
from system.hyperbolicity.multicone import MulticoneCertificate, find_multicone, verify_multicone
from system.hyperbolicity.spectral import lower_spectral_estimate
from system.limit_sets.limit_sets import backward_limit_set, forward_limit_set
from system.loci.classifier import classify

logger = logging.getLogger(__name__)

# Exit codes
EXIT_OK = 0
EXIT_FAILED = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_UNKNOWN_SCENARIO = 4


def configure_logging(level=None, log_file=None):
    """Install the file and console handlers."""
    cfg = presets['default']
    level = level or cfg.LOG_LEVEL
    log_file = log_file if log_file is not None else cfg.LOG_FILE
    handlers = [logging.StreamHandler()]
    if log_file:
        os.makedirs(os.path.dirname(log_file) or '.', exist_ok=True)
        handlers.insert(0, logging.FileHandler(log_file))
    logging.basicConfig(
        level=getattr(logging, str(level).upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
        force=True
    )


def _emit(text, output):
    if output is None:
        print(text)


def cmd_classify(args):
    maps = read_tuple_file(args.tuple)
    cfg = presets[args.budget_preset]
    report = classify(maps, cfg)
    _emit(dump_json('loci_report', report_to_json(report), args.output), args.output)
    if not report.consistency.consistent:
        return EXIT_FAILED
    if report.partial:
        return EXIT_BUDGET
    return EXIT_OK


def cmd_certify(args):
    maps = read_tuple_file(args.tuple)
    result = find_multicone(maps, seed_depth=args.seed_depth, max_iter=args.max_iter, margin=args.margin)
    if isinstance(result, MulticoneCertificate):
        payload = multicone_to_json(result)
        payload['verified'] = bool(verify_multicone(maps, result))
        if args.format == 'svg':
            draw_tuple_figure(maps, args.output or 'output/multicone.svg', {'multicone': result.multicone},
                              title='multicone')
        else:
            _emit(dump_json('multicone_certificate', payload, args.output), args.output)
        return EXIT_OK if payload['verified'] else EXIT_FAILED
    _emit(dump_json('multicone_failure', failure_to_json(result), args.output), args.output)
    return EXIT_OK


def cmd_limit_set(args):
    maps = read_tuple_file(args.tuple)
    build = forward_limit_set if args.side == 'fwd' else backward_limit_set
    approx = build(maps, args.depth, args.gap)
    if args.format == 'svg':
        name = 'forward' if args.side == 'fwd' else 'backward'
        draw_tuple_figure(maps, args.output or f'output/{name}_limit_set.svg', {name: approx.hull},
                          title=f'{name} limit set')
    else:
        _emit(dump_json('limit_set', limit_set_to_json(approx), args.output), args.output)
    return EXIT_OK


def cmd_explore(args):
    maps = read_tuple_file(args.tuple)
    if args.mode == 'elliptic':
        witness = find_elliptic_or_identity(maps, args.max_len)
    elif args.mode == 'inverse':
        witness = inverse_free_violation(maps, args.max_len)
    else:
        witness = refute_semidiscrete(maps, args.max_len, args.beam, args.threshold)
    payload = {'mode': args.mode, 'max_len': args.max_len,
               'witness': witness_to_json(witness) if witness else None}
    _emit(dump_json('word_search', payload, args.output), args.output)
    return EXIT_OK


def cmd_spectral(args):
    maps = read_tuple_file(args.tuple)
    estimate = lower_spectral_estimate(maps, args.max_len)
    _emit(dump_csv(spectral_to_frame(estimate), args.output), args.output)
    return EXIT_OK


def cmd_reproduce(args):
    frame, figure = run_scenario(args.name, args.output_dir, presets[args.budget_preset])
    print(frame[['check', 'expected', 'observed', 'passed']].to_string(index=False))
    print(f'Figure: {figure}')
    csv_path = Path(args.output_dir) / f'{args.name}_checks.csv'
    dump_csv(frame, csv_path)
    if frame['passed'].all():
        print(f'✅ {args.name}: all checks passed')
        return EXIT_OK
    print(f'❌ {args.name}: {int((~frame["passed"]).sum())} check(s) failed')
    return EXIT_FAILED


def build_parser():
    cfg = presets['default']
    parser = argparse.ArgumentParser(prog='moebius-loci',
                                     description='Semigroups of real Möbius transformations')
    parser.add_argument('--log-level', default=None)
    parser.add_argument('--log-file', default=None)
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('classify', help='full locus report for a tuple')
    p.add_argument('tuple')
    p.add_argument('--budget-preset', choices=['quick', 'thorough', 'testing'], default='quick')
    p.add_argument('--output')
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser('certify', help='search for a multicone certificate')
    p.add_argument('tuple')
    p.add_argument('--seed-depth', type=int, default=cfg.SEED_DEPTH)
    p.add_argument('--max-iter', type=int, default=cfg.MAX_ITER)
    p.add_argument('--margin', type=float, default=cfg.CERT_MARGIN)
    p.add_argument('--format', choices=['json', 'svg'], default='json')
    p.add_argument('--output')
    p.set_defaults(handler=cmd_certify)

    p = sub.add_parser('limit-set', help='approximate a limit set')
    p.add_argument('tuple')
    p.add_argument('--depth', type=int, default=cfg.LIMIT_DEPTH)
    p.add_argument('--gap', type=float, default=cfg.HULL_GAP)
    p.add_argument('--side', choices=['fwd', 'bwd'], default='fwd')
    p.add_argument('--format', choices=['json', 'svg'], default='json')
    p.add_argument('--output')
    p.set_defaults(handler=cmd_limit_set)

    p = sub.add_parser('explore', help='word searches')
    p.add_argument('tuple')
    p.add_argument('--mode', choices=['elliptic', 'inverse', 'identity-approach'], default='identity-approach')
    p.add_argument('--max-len', type=int, default=cfg.REFUTE_MAX_LEN)
    p.add_argument('--beam', type=int, default=cfg.BEAM_WIDTH)
    p.add_argument('--threshold', type=float, default=cfg.IDENTITY_THRESHOLD)
    p.add_argument('--output')
    p.set_defaults(handler=cmd_explore)

    p = sub.add_parser('spectral', help='per-length spectral estimates as CSV')
    p.add_argument('tuple')
    p.add_argument('--max-len', type=int, default=cfg.SPECTRAL_DEPTH)
    p.add_argument('--output')
    p.set_defaults(handler=cmd_spectral)

    p = sub.add_parser('reproduce', help='run a scripted scenario')
    p.add_argument('name', help=f'one of: {", ".join(SCENARIOS)}')
    p.add_argument('--output-dir', default='output')
    p.add_argument('--budget-preset', choices=['quick', 'thorough', 'testing'], default='quick')
    p.set_defaults(handler=cmd_reproduce)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level, args.log_file)
    try:
        return args.handler(args)
    except TupleParseError as e:
        logger.error(f'Parse error: {e}')
        return EXIT_PARSE
    except UnknownScenario as e:
        logger.error(f'{e}')
        return EXIT_UNKNOWN_SCENARIO
    except BudgetExceeded as e:
        logger.error(f'Budget exhausted in {args.command}: {e}')
        return EXIT_BUDGET
    except MoebiusLociError as e:
        logger.error(f'{args.command} failed: {e}')
        return EXIT_FAILED


if __name__ == '__main__':
    sys.exit(main())
