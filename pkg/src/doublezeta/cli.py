"""Command-line front end: verification sweeps, table exports, audits.

Exit codes: 0 success / all checks passed; 1 at least one identity
failed; 2 usage error (argparse's default); 3 missing prerequisite
artifact (e.g. audited constants requested without an audit file).
Numeric disagreement with the printed Euler constant is reported in the
output, never turned into a failing exit code: the audit's job is to
report, not to judge.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from mpmath import mp

from . import matrices, numerics, reductions, series
from .bernoulli import BernoulliCache, bernoulli_range
from .rationals import format_rational, parse_rational

EXIT_OK = 0
EXIT_IDENTITY_FAILURE = 1
EXIT_USAGE = 2
EXIT_MISSING_PREREQUISITE = 3


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- bernoulli


def cmd_bernoulli(args: argparse.Namespace) -> int:
    values = bernoulli_range(args.max)
    if args.format == "json":
        payload = {
            "kind": "bernoulli",
            "max": args.max,
            "values": [format_rational(v) for v in values],
        }
        text = json.dumps(payload, separators=(", ", ": ")) + "\n"
    elif args.format == "csv":
        text = "\n".join(f"{n},{format_rational(v)}" for n, v in enumerate(values)) + "\n"
    else:
        text = "\n".join(f"B_{n} = {format_rational(v)}" for n, v in enumerate(values)) + "\n"
    _emit(text, args.out)
    return EXIT_OK


# ------------------------------------------------------------------ verify


def _verify_one_k(K: int) -> tuple[int, bool, str]:
    report = matrices.verify_inverse(K)
    detail = (
        f"p_eq_q={report.p_eq_q} pa_is_identity={report.pa_is_identity} "
        f"ap_is_identity={report.ap_is_identity} det_nonzero={report.det_nonzero}"
    )
    return K, report.all_pass, detail


def cmd_verify(args: argparse.Namespace) -> int:
    lines: list[str] = []
    ok = True
    if args.kind == "conjecture":
        ks = range(args.k_min, args.k_max + 1)
        if args.parallel > 1:
            with ProcessPoolExecutor(max_workers=args.parallel) as pool:
                results = list(pool.map(_verify_one_k, ks))
        else:
            results = [_verify_one_k(K) for K in ks]
        for K, passed, detail in results:
            ok &= passed
            lines.append(f"K={K}: {'pass' if passed else 'FAIL ' + detail}")
    elif args.kind == "carlitz":
        cache = BernoulliCache()
        for n in range(args.max + 1):
            for m in range(n + 1):
                passed = series.verify_carlitz(m, n, cache)
                ok &= passed
                if not passed:
                    lines.append(f"(m={m}, n={n}): FAIL")
        lines.append(f"carlitz m<=n<={args.max}: {'pass' if ok else 'FAIL'}")
    elif args.kind == "series":
        cache = BernoulliCache()
        for s in range(1, args.s_max + 1):
            for m in range(1, args.m_max + 1):
                passed, bad = series.verify_reflection(s, m, args.order, cache)
                ok &= passed
                lines.append(
                    f"(s={s}, m={m}, order={args.order}): "
                    + ("pass" if passed else f"FAIL {bad}")
                )
    elif args.kind == "closed-forms":
        cache = BernoulliCache()
        for K in range(args.k_min, args.k_max + 1):
            p = matrices.build_p(K, cache)
            pb = matrices.matrix_multiply(p, matrices.build_b_part(K))
            pc = matrices.matrix_multiply(p, matrices.build_c_part(K))
            k_ok = True
            for s in range(1, K):
                for sp in range(1, K):
                    vb = matrices.pb_closed(K, s, sp, cache)
                    vc = matrices.pc_closed(K, s, sp, cache)
                    delta = Fraction(1 if s == sp else 0)
                    good = (
                        vb == pb.at(s - 1, sp - 1)
                        and vc == pc.at(s - 1, sp - 1)
                        and vb + vc == delta
                    )
                    k_ok &= good
                    if not good:
                        lines.append(
                            f"K={K} (s={s}, s'={sp}): FAIL closed="
                            f"{format_rational(vb)}+{format_rational(vc)} "
                            f"product={format_rational(pb.at(s - 1, sp - 1))}"
                            f"+{format_rational(pc.at(s - 1, sp - 1))}"
                        )
            ok &= k_ok
            lines.append(f"K={K}: {'pass' if k_ok else 'FAIL'}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if ok else EXIT_IDENTITY_FAILURE


# ------------------------------------------------------------------ matrix


def cmd_matrix(args: argparse.Namespace) -> int:
    builders = {
        "A": matrices.build_a,
        "B": matrices.build_b_part,
        "C": matrices.build_c_part,
        "P": matrices.build_p,
        "Q": matrices.build_q,
    }
    matrix = builders[args.which](args.K)
    _emit(matrices.matrix_to_json(args.K, args.which, matrix) + "\n", args.out)
    return EXIT_OK


# ------------------------------------------------------------------ reduce


def _load_audited_constants(K: int, path: str | None) -> list[Fraction]:
    if not path:
        raise CliError(
            EXIT_MISSING_PREREQUISITE,
            "audited constants need --audit-file pointing at the JSON output "
            f"of `audit euler --K {K}`",
        )
    try:
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
    except OSError:
        raise CliError(
            EXIT_MISSING_PREREQUISITE,
            f"audit file {path!r} not found; run `audit euler --K {K} "
            f"--digits 40 --out {path}` first",
        )
    if payload.get("K") != K:
        raise CliError(
            EXIT_MISSING_PREREQUISITE,
            f"audit file {path!r} is for K={payload.get('K')}, need K={K}",
        )
    constants = []
    for row in payload["rows"]:
        rec = row.get("reconstructed")
        if rec is None:
            raise CliError(
                EXIT_MISSING_PREREQUISITE,
                f"audit file {path!r} has no reconstructed constant for "
                f"row r={row.get('r')}; rerun the audit at higher precision",
            )
        constants.append(parse_rational(rec))
    return constants


class CliError(SystemExit):
    """SystemExit carrying a stderr message and a specific exit code."""

    def __init__(self, code: int, message: str) -> None:
        sys.stderr.write(message + "\n")
        super().__init__(code)


def cmd_reduce(args: argparse.Namespace) -> int:
    if args.kind == "euler":
        table = reductions.euler_rhs_coefficients(args.K)
    elif args.kind == "inverse":
        spec = args.constants
        if spec == "printed":
            constants = [reductions.PRINTED_CONSTANT] * (args.K - 1)
        elif spec == "audited":
            constants = _load_audited_constants(args.K, args.audit_file)
        elif spec.startswith("explicit:"):
            constants = [parse_rational(c) for c in spec[len("explicit:") :].split(",")]
        else:
            raise CliError(
                EXIT_USAGE,
                "--constants must be printed, audited, or explicit:<c1,c2,...>",
            )
        table = reductions.inverse_reduction_coefficients(args.K, constants)
    else:
        table = reductions.h_ab_coefficients(args.a, args.b)
        if args.pi_basis:
            table = reductions.expand_h_to_pi(table)
    if args.format == "csv":
        text = reductions.table_to_csv(table)
    else:
        text = reductions.table_to_json(table) + "\n"
    _emit(text, args.out)
    return EXIT_OK


# ------------------------------------------------------------------- audit


def _bigfloat_fields(x: numerics.BigFloat, digits: int) -> dict:
    return {
        "value": mp.nstr(x.value, digits),
        "error_bound": mp.nstr(x.error_bound, 3),
    }


def cmd_audit(args: argparse.Namespace) -> int:
    if args.kind == "euler":
        rows = []
        r_values = [args.r] if args.r is not None else list(range(1, args.K))
        for r in r_values:
            rep = numerics.audit_euler_constant(args.K, r, args.digits)
            rows.append(
                {
                    "r": r,
                    "lhs": _bigfloat_fields(rep.lhs, args.digits),
                    "rhs_products": _bigfloat_fields(rep.rhs_products, args.digits),
                    "residual_ratio": _bigfloat_fields(rep.residual_ratio, args.digits),
                    "reconstructed": (
                        format_rational(rep.reconstructed)
                        if rep.reconstructed is not None
                        else None
                    ),
                    "printed_constant_consistent": rep.printed_constant_consistent,
                }
            )
        payload = {"kind": "euler_audit", "K": args.K, "digits": args.digits, "rows": rows}
    else:
        rep = numerics.audit_h_ab(args.a, args.b, args.digits)
        payload = {
            "kind": "h_audit",
            "a": args.a,
            "b": args.b,
            "digits": args.digits,
            "formula_value": _bigfloat_fields(rep.formula_value, args.digits),
            "direct_value": _bigfloat_fields(rep.direct_value, args.digits),
            "abs_difference": mp.nstr(rep.abs_difference, 3),
            "agrees_within_bounds": rep.agrees_within_bounds,
        }
    _emit(json.dumps(payload, separators=(", ", ": ")) + "\n", args.out)
    return EXIT_OK


# -------------------------------------------------------------------- zeta


def cmd_zeta(args: argparse.Namespace) -> int:
    if args.k is not None:
        value = numerics.zeta_single(args.k, args.digits)
        label = f"zeta({args.k})"
    elif args.k1 is not None and args.k2 is not None:
        value = numerics.zeta_double(args.k1, args.k2, args.digits)
        label = f"zeta({args.k1},{args.k2})"
    else:
        raise CliError(EXIT_USAGE, "zeta needs --k, or both --k1 and --k2")
    _emit(f"{label} = {value.to_string(args.digits)}\n", args.out)
    return EXIT_OK


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="doublezeta",
        description="Exact verification and numeric audit of the double-zeta "
        "reduction matrices A, P, Q.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bernoulli", help="export Bernoulli numbers B_0..B_max")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--format", choices=["text", "csv", "json"], default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bernoulli)

    p = sub.add_parser("verify", help="exact identity sweeps")
    p.add_argument("kind", choices=["conjecture", "carlitz", "series", "closed-forms"])
    p.add_argument("--k-min", type=int, default=2)
    p.add_argument("--k-max", type=int, default=40)
    p.add_argument("--max", type=int, default=60, help="carlitz sweep bound")
    p.add_argument("--s-max", type=int, default=6)
    p.add_argument("--m-max", type=int, default=12)
    p.add_argument("--order", type=int, default=48)
    p.add_argument("--parallel", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("matrix", help="export one of the matrices A, B, C, P, Q")
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--which", choices=["A", "B", "C", "P", "Q"], required=True)
    p.add_argument("--format", choices=["json"], default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("reduce", help="emit reduction coefficient tables")
    p.add_argument("kind", choices=["euler", "inverse", "h"])
    p.add_argument("--K", type=int, default=2)
    p.add_argument("--a", type=int, default=0)
    p.add_argument("--b", type=int, default=0)
    p.add_argument(
        "--constants",
        default="printed",
        help="printed | audited | explicit:<c1,c2,...> (inverse only)",
    )
    p.add_argument("--audit-file", help="JSON output of `audit euler` (for audited)")
    p.add_argument(
        "--pi-basis",
        action="store_true",
        help="expand H(n) factors into pi powers (h only)",
    )
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("audit", help="numeric audits of the reduction formulas")
    p.add_argument("kind", choices=["euler", "h"])
    p.add_argument("--K", type=int, default=2)
    p.add_argument("--r", type=int, help="single row (default: all rows)")
    p.add_argument("--a", type=int, default=0)
    p.add_argument("--b", type=int, default=0)
    p.add_argument("--digits", type=int, default=40)
    p.add_argument("--out")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("zeta", help="high-precision zeta values with bounds")
    p.add_argument("--k", type=int)
    p.add_argument("--k1", type=int)
    p.add_argument("--k2", type=int)
    p.add_argument("--digits", type=int, default=30)
    p.add_argument("--out")
    p.set_defaults(func=cmd_zeta)

    return parser


def _validate(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    if args.command == "bernoulli" and args.max < 0:
        parser.error("--max must be >= 0")
    if args.command in ("matrix",) and args.K < 2:
        parser.error("--K must be >= 2 (matrices are (K-1)x(K-1))")
    if args.command == "reduce" and args.kind in ("euler", "inverse") and args.K < 2:
        parser.error("--K must be >= 2")
    if args.command == "verify" and args.kind == "conjecture" and args.k_min < 2:
        parser.error("--k-min must be >= 2")
    if args.command == "audit" and args.digits < 10:
        parser.error("--digits must be >= 10 for audits")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(parser, args)
    try:
        return args.func(args)
    except CliError as exc:
        return int(exc.code)
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
