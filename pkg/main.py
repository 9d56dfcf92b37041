#!/usr/bin/env python3
"""
Command-line interface for the Cremona smoothing verifier

Reports go to stdout (or --out); status lines and logs go to stderr.
Exit status: 0 success, 1 check failure, 2 usage error.
"""

import argparse
import sys
from typing import List, Optional

from pydantic import ValidationError

from src.config import get_config
from src.cremona import CremonaWord, apply_word, phi_pullback_closed, phi_pullback_iterative
from src.curves import ample_test, certify_C, certify_L, enumerate_minus_one_classes
from src.lattice import LatticeVector, basis_e, basis_h
from src.models import Verdict, VerificationError
from src.reporting import (
    curves_csv, emit_report, format_grid_csv, format_grid_table, write_output
)
from src.smoothing import (
    SurfaceModel, betti_report, d_semistability_check, nonprojectivity_kernel
)
from src.suite import run_suite
from src.topology import theorem_report

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

BETTI_COLUMNS = ('N', 'n', 'm', 'rho_T', 'b2_X0', 'b2_X', 'image_rank', 'agrees')
CURVE_COLUMNS = ('alpha', 'betas', 'kind')
CHECK_COLUMNS = ('name', 'passed', 'cases', 'seconds', 'detail')


def status(message: str):
    print(message, file=sys.stderr)


def publish(report, fmt: str, out: Optional[str] = None):
    """Write the serialized report to --out or stdout"""
    payload = emit_report(report, fmt, out)
    if not out:
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()


def publish_text(text: str, out: Optional[str] = None):
    payload = text.encode("utf-8")
    write_output(payload, out)
    if not out:
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()


def show_invariants(N_values: List[int], m_values: List[int], alpha_cap: Optional[int],
                    fmt: str, out: Optional[str]) -> int:
    reports = [theorem_report(N, m, alpha_cap) for N in N_values for m in m_values]
    publish(reports[0] if len(reports) == 1 else reports, fmt, out)
    return EXIT_OK


def show_betti(n_values: List[int], m_values: List[int], emit_matrices: bool,
               fmt: str, out: Optional[str]) -> int:
    reports = [
        betti_report(SurfaceModel.for_dimension(n), m, emit_matrices)
        for n in n_values for m in m_values
    ]
    if fmt == 'table' and len(reports) > 1:
        publish_text(format_grid_table(reports, BETTI_COLUMNS), out)
    else:
        publish(reports[0] if len(reports) == 1 else reports, fmt, out)
    if not all(r.agrees for r in reports):
        status("❌ Betti numbers disagree with m + rho_T + 1")
        return EXIT_CHECK_FAILED
    return EXIT_OK


def certify(m: Optional[int], alpha_cap: Optional[int], target: str,
            vector: Optional[str], fmt: str, out: Optional[str]) -> int:
    if vector is not None:
        cap = alpha_cap if alpha_cap is not None else (m or 0)
        cert = ample_test(LatticeVector.from_text(vector), cap, m)
    elif m is None:
        raise ValueError("certify needs --m or --vector")
    elif target == 'C':
        cert = certify_C(m, alpha_cap)
    else:
        cert = certify_L(m, alpha_cap)
    publish(cert, fmt, out)
    if cert.verdict is Verdict.NOT_AMPLE:
        status(f"❌ Not ample: {cert.failed_condition}")
        return EXIT_CHECK_FAILED
    status(f"✅ {cert.verdict.value} up to degree {cert.checked_alpha_max}")
    return EXIT_OK


def enumerate_curves(max_degree: int, csv_path: Optional[str], workers: int,
                     fmt: str, out: Optional[str]) -> int:
    classes = enumerate_minus_one_classes(max_degree, workers=workers)
    if csv_path:
        write_output(curves_csv(classes).encode("utf-8"), csv_path)
    if fmt == 'csv':
        publish_text(curves_csv(classes), out)
    elif fmt == 'table':
        publish_text(format_grid_table(classes, CURVE_COLUMNS), out)
    else:
        publish(classes, fmt, out)
    status(f"✅ {len(classes)} (-1)-classes with alpha <= {max_degree}")
    return EXIT_OK


def check_d_semistable(m: int, inject_fault: bool, fmt: str, out: Optional[str]) -> int:
    report = d_semistability_check(m, basis_e(1) if inject_fault else None)
    publish(report, fmt, out)
    if not report.holds:
        status(f"❌ d-semistability fails at m={m}")
        return EXIT_CHECK_FAILED
    status(f"✅ d-semistable at m={m}")
    return EXIT_OK


def show_pullback(m: int, word: Optional[str], fmt: str, out: Optional[str]) -> int:
    closed = phi_pullback_closed(m)
    iterative = phi_pullback_iterative(m, basis_h())
    data = {
        'm': m,
        'closed': closed.to_list(),
        'iterative': iterative.to_list(),
        'equal': closed == iterative,
    }
    if word is not None:
        w = CremonaWord.from_text(word)
        data['word'] = w.to_list()
        data['word_image'] = apply_word(w, basis_h()).to_list()
    publish(data, fmt, out)
    return EXIT_OK if data['equal'] else EXIT_CHECK_FAILED


def solve_kernel(m: int, a: int, c: int, a_prime: int, n: Optional[int],
                 fmt: str, out: Optional[str]) -> int:
    report = nonprojectivity_kernel(m, a, c, a_prime, n)
    publish(report, fmt, out)
    return EXIT_OK


def run_verification(args) -> int:
    cfg = get_config().suite_config(
        m_max=args.m_max,
        alpha_cap=args.alpha_cap,
        n_set=args.n,
        format=args.format,
        emit_path=args.out,
        workers=args.workers,
        random_samples=args.random_samples,
        seed=args.seed,
        inject_fault=args.inject_fault or None,
    )
    summary = run_suite(cfg)
    data = summary.to_dict(include_timings=not args.no_timings)
    columns = [c for c in CHECK_COLUMNS if c != 'seconds' or not args.no_timings]
    if cfg.format.value == 'table':
        publish_text(format_grid_table(data['checks'], columns), cfg.emit_path)
    elif cfg.format.value == 'csv':
        publish_text(format_grid_csv(data['checks'], columns), cfg.emit_path)
    else:
        publish(data, cfg.format, cfg.emit_path)
    if summary.passed:
        status(f"✅ Verification passed ({len(summary.checks)} checks)")
        return EXIT_OK
    status(f"❌ Verification failed: {', '.join(summary.failing)}")
    return EXIT_CHECK_FAILED


def manage_config(action: str) -> int:
    config = get_config()
    if action == 'init':
        config.save_config()
        path = config.create_env_template(str(config.config_dir / ".env.example"))
        status(f"✅ Configuration written to {config.config_file}")
        status(f"✅ Environment template written to {path}")
    else:
        publish(config.as_dict(), 'json')
    return EXIT_OK


def build_parser(default_format: str) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Exact verification of the Cremona smoothing construction",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python main.py invariants --N 5 --m 3          # b2, e(X), a(X) for one pair
  python main.py betti --n 2 --m 7 --emit-matrices
  python main.py certify --m 4                   # ampleness certificate of L_4
  python main.py enumerate-curves --max-degree 3 --csv curves.csv
  python main.py d-semistable --m 100
  python main.py pullback --m 2 --word "1,2,3;4,5,6"
  python main.py kernel --m 1 --a 3 --c -1 --a-prime -3
  python main.py verify --m-max 10               # full verification suite
        """
    )
    parser.add_argument('--log-level', default=None, help='Logging level (default from config)')

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=['json', 'table', 'csv'], default=default_format)
    common.add_argument('--json', dest='format', action='store_const', const='json',
                        help='Shorthand for --format json')
    common.add_argument('--out', help='Write the report to this file')

    subparsers = parser.add_subparsers(dest='command', help='Available commands')

    inv = subparsers.add_parser('invariants', parents=[common], help='Invariants of X(m) for given N, m')
    inv.add_argument('--N', type=int, nargs='+', required=True, help='Dimension N = n + 2 (>= 3)')
    inv.add_argument('--m', type=int, nargs='+', required=True)
    inv.add_argument('--alpha-cap', type=int, help='Largest degree enumerated for certificates')

    betti = subparsers.add_parser('betti', parents=[common], help='b2(X0), b2(X) by Smith normal form')
    betti.add_argument('--n', type=int, nargs='+', required=True)
    betti.add_argument('--m', type=int, nargs='+', required=True)
    betti.add_argument('--emit-matrices', action='store_true', help='Include the restriction matrix')

    cert = subparsers.add_parser('certify', parents=[common], help='Ampleness certificate')
    cert.add_argument('--m', type=int)
    cert.add_argument('--alpha-cap', type=int)
    cert.add_argument('--target', choices=['L', 'C'], default='L')
    cert.add_argument('--vector', help='Arbitrary class "a;b1,...,b9" (uses --m as tail rule)')

    curves = subparsers.add_parser('enumerate-curves', parents=[common], help='List (-1)-classes')
    curves.add_argument('--max-degree', type=int, required=True)
    curves.add_argument('--csv', dest='csv_path', help='Also write one class per row to this CSV')
    curves.add_argument('--workers', type=int, default=1)

    semi = subparsers.add_parser('d-semistable', parents=[common], help='d-semistability identity')
    semi.add_argument('--m', type=int, required=True)
    semi.add_argument('--inject-fault', action='store_true', help=argparse.SUPPRESS)

    pull = subparsers.add_parser('pullback', parents=[common], help='phi_m^*h closed and iterative')
    pull.add_argument('--m', type=int, required=True)
    pull.add_argument('--word', help='Cremona word "i,j,k;i,j,k;..." applied to h')

    kernel = subparsers.add_parser('kernel', parents=[common], help='Matching condition for a pencil')
    kernel.add_argument('--m', type=int, required=True)
    kernel.add_argument('--a', type=int, required=True)
    kernel.add_argument('--c', type=int, required=True)
    kernel.add_argument('--a-prime', type=int, required=True)
    kernel.add_argument('--n', type=int, help='Fibre dimension, to report a(X)')

    verify = subparsers.add_parser('verify', parents=[common], help='Run the verification suite')
    verify.add_argument('--m-max', type=int)
    verify.add_argument('--alpha-cap', type=int)
    verify.add_argument('--n', type=int, nargs='+')
    verify.add_argument('--workers', type=int)
    verify.add_argument('--random-samples', type=int)
    verify.add_argument('--seed', type=int)
    verify.add_argument('--no-timings', action='store_true', help='Omit timings for byte-stable output')
    verify.add_argument('--inject-fault', action='store_true', help=argparse.SUPPRESS)

    conf = subparsers.add_parser('config', help='Show or initialize the configuration')
    conf.add_argument('action', choices=['show', 'init'], nargs='?', default='show')

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point"""
    try:
        config = get_config()
    except ValueError as e:
        status(f"❌ Configuration error: {e}")
        return EXIT_USAGE

    parser = build_parser(config.suite.format if config.suite.format in ('json', 'table', 'csv') else 'json')
    args = parser.parse_args(argv)
    config.logging.apply(args.log_level)

    if not args.command:
        parser.print_help()
        return EXIT_USAGE

    try:
        if args.command == 'invariants':
            return show_invariants(args.N, args.m, args.alpha_cap, args.format, args.out)

        elif args.command == 'betti':
            return show_betti(args.n, args.m, args.emit_matrices, args.format, args.out)

        elif args.command == 'certify':
            return certify(args.m, args.alpha_cap, args.target, args.vector, args.format, args.out)

        elif args.command == 'enumerate-curves':
            return enumerate_curves(args.max_degree, args.csv_path, args.workers, args.format, args.out)

        elif args.command == 'd-semistable':
            return check_d_semistable(args.m, args.inject_fault, args.format, args.out)

        elif args.command == 'pullback':
            return show_pullback(args.m, args.word, args.format, args.out)

        elif args.command == 'kernel':
            return solve_kernel(args.m, args.a, args.c, args.a_prime, args.n, args.format, args.out)

        elif args.command == 'verify':
            return run_verification(args)

        elif args.command == 'config':
            return manage_config(args.action)

    except KeyboardInterrupt:
        status("\n❌ Operation cancelled by user")
        return EXIT_CHECK_FAILED
    except ValidationError as e:
        status(f"❌ Invalid configuration: {e}")
        return EXIT_USAGE
    except VerificationError as e:
        status(f"❌ Verification error: {e}")
        return EXIT_CHECK_FAILED
    except ValueError as e:
        status(f"❌ Error: {e}")
        return EXIT_USAGE
    except Exception as e:
        status(f"❌ Error: {e}")
        return EXIT_CHECK_FAILED

    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
