import sys
import json
import logging

import mpmath

from lacunae.argparse import parse_args
from lacunae.arith import DomainError, TruncationError
from lacunae.closed_forms import closed_form_HKL, closed_form_plan, nieto_truax_residuals
from lacunae.config.config import ConfigError, read_verify_defaults
from lacunae.format import (SeriesFormatError, dumps, emit_series, normal_order_to_json, poly_to_json, poly_to_text,
                            render_plan, render_series, series_from_json)
from lacunae.hermite import classical_hermite, hermite_poly
from lacunae.hypergeom import PoleError
from lacunae.lacunary import dilate_bruteforce, shift
from lacunae.ordering import ConsistencyError, SemiLinearOp, normal_order
from lacunae.parser.poly import PolyParseError, parse_poly
from lacunae.utils import eprint, parse_rational
from lacunae.verify import VerifyConfig, complete_range, run_default_sweeps, run_verification

logging.basicConfig(format="%(asctime)s - %(levelname)s - %(name)s - %(message)s", level=logging.INFO)
logger = logging.getLogger(__name__)

HANDLED_ERRORS = (TruncationError, PoleError, DomainError, ConsistencyError, ConfigError, PolyParseError,
                  SeriesFormatError, OSError)


def read_series(path):
    try:
        if path is None:
            return series_from_json(json.load(sys.stdin))
        with open(path, 'r') as f:
            return series_from_json(json.load(f))
    except json.JSONDecodeError as e:
        raise SeriesFormatError(f'{path or "stdin"} is not JSON: {e}') from e


def run_verify(args):
    defaults = read_verify_defaults(args.config_path)
    progress = not args.no_progress
    ranges = (args.kmin, args.kmax, args.lmin, args.lmax, args.nmax)

    if all(r is None for r in ranges):
        logger.info("No range given, running the configured default sweep")
        report = run_default_sweeps(defaults, seed=args.seed, output_path=args.out, progress=progress)
    else:
        sweep = complete_range(defaults, *ranges)
        cfg = VerifyConfig.from_sweep(sweep, defaults, seed=args.seed, output_path=args.out)
        report = run_verification(cfg, progress=progress)

    print(f'passed {report.passed} failed {report.failed}')
    for r in report.cases:
        if not r.passed:
            eprint(f'FAIL K={r.K} L={r.L} n={r.n} {r.diff_term}')
    for r in report.checks:
        if not r.passed:
            eprint(f'FAIL {r.name} K={r.K}: {r.detail}')
    return 0 if report.ok else 1


def run_hermite(args):
    p = classical_hermite(args.n) if args.classical else hermite_poly(args.n, args.m)
    if args.format == 'json':
        print(dumps({'n': args.n, 'terms': poly_to_json(p)}))
    else:
        print(poly_to_text(p))
    return 0


def run_closed_form(args):
    if args.format in ('plan', 'plan-json'):
        print(render_plan(closed_form_plan(args.K, args.L), args.format))
    else:
        print(render_series(closed_form_HKL(args.K, args.L, args.order), args.format))
    return 0


def run_dilate(args):
    series = read_series(args.input_path)
    print(render_series(dilate_bruteforce(series, args.K, args.order), args.format))
    return 0


def run_shift(args):
    series = read_series(args.input_path)
    print(render_series(shift(series, args.L), args.format))
    return 0


def run_normal_order(args):
    op = SemiLinearOp(q=parse_poly(args.q), v=parse_poly(args.v))
    logger.info(f"Normal ordering exp(μD) for D = {op}")
    print(dumps(normal_order_to_json(normal_order(op, args.order))))
    return 0


def run_nieto_truax(args):
    settings = read_verify_defaults()['nieto_truax']
    bits = args.bits if args.bits is not None else settings['bits']
    nmax = args.nmax if args.nmax is not None else settings['nmax']
    lam, x, y = parse_rational(args.lam), parse_rational(args.x), parse_rational(args.y)

    with mpmath.workprec(bits):
        value, partial, rel, imag = nieto_truax_residuals(args.K, args.L, lam, x, y, nmax, bits)
        tolerance = mpmath.mpf(settings['tolerance'])
        imag_tolerance = mpmath.mpf(settings['imag_tolerance'])
        ok = rel < tolerance and imag < imag_tolerance
        digits = max(15, int(bits * 0.30103) - 2)
        print(f'roots of unity : {mpmath.nstr(value.real, digits)}')
        print(f'partial sum    : {mpmath.nstr(partial, digits)}')
        print(f'relative error : {mpmath.nstr(rel, 5)}')
        print(f'imag residue   : {mpmath.nstr(imag, 5)}')

    if not ok:
        logger.error(f"Nieto-Truax check failed for K={args.K} L={args.L}")
        return 1
    return 0


def run_emit(args):
    print(emit_series(args.kind, {'K': args.K, 'L': args.L}, args.order, args.format))
    return 0


COMMANDS = {
    'verify': run_verify,
    'hermite': run_hermite,
    'closed-form': run_closed_form,
    'dilate': run_dilate,
    'shift': run_shift,
    'normal-order': run_normal_order,
    'nieto-truax': run_nieto_truax,
    'emit': run_emit,
}


def main(args):
    if args.debug:
        logging.getLogger().setLevel(logging.DEBUG)
        logger.debug(f"Arguments: {vars(args)}")

    try:
        return COMMANDS[args.command](args)
    except HANDLED_ERRORS as e:
        logger.error(f"{args.command}: {e}")
        return 1


if __name__ == "__main__":
    args = parse_args()
    sys.exit(main(args))
