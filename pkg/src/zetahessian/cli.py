"""Batch verification command line.

Subcommands:
  verify-symbol  route-equality sweep: the raw kernel sum, the grouped
                 interaction parts, and the closed projector form must
                 agree exactly on random rational input
  identities     subset-sum identities, gauge-kernel residuals, weighted
                 alternating sums, and the trace-inequality survey
  ftable         the closed-form coefficient pairs (f1, f2) for one
                 operator and dimension, plus the half-Laplacian
                 alternating-sum comparison
  classify       sign classification of a critical metric at one
                 (operator, n, p, s, k)
  scan           classification sweep over dimensions; exits nonzero if
                 the expected conclusions fail

Exit codes: 0 all checks passed, 1 at least one identity row failed,
2 usage error.  Reports go to stdout, or to --out; same seed means
byte-identical output.  The default seed comes from ZETAHESSIAN_SEED.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .exactalg import Covector, PerturbH
from .formcombi import (
    CHI,
    CHI_COMP,
    SGN,
    free_term,
    identity_sum,
    sgn4_free_term_closed,
)
from .geomanalysis import (
    classify_critical_metric,
    gauge_kernel_check,
    projector_inequalities,
    scan_critical_metrics,
    torsion_sum,
    torsion_sum_valid,
    zeta_constants,
)
from .report import (
    STATUS_FAIL,
    STATUS_PASS,
    STATUS_REPORTED,
    CaseKey,
    Report,
)
from .sampling import case_rng, covector, nondiagonal_perturbation, perturbation
from .symbolengine import (
    closed_form_fpair,
    closed_form_reduced,
    direct_symbol,
    dstar_d_fpair,
    grouped_symbol,
)
from .variation import OperatorKind

DEFAULT_SEED = 20240811

_OPERATORS = {
    "bochner": OperatorKind.BOCHNER,
    "derham": OperatorKind.DERHAM,
}


def _default_seed() -> int:
    raw = os.environ.get("ZETAHESSIAN_SEED")
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        return DEFAULT_SEED


def _emit(report: Report, fmt: str, out: str | None) -> None:
    text = report.render(fmt)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# verify-symbol
# ---------------------------------------------------------------------------


def _route_case(args: tuple[str, int, int, int, int, bool]) -> list[tuple]:
    """One verification case; returns row tuples (picklable for --jobs)."""
    op_name, n, p, trial, seed, general_h = args
    op = _OPERATORS[op_name]
    rng = case_rng(seed, op_name, n, p, trial)
    diagonal = not general_h and op is OperatorKind.DERHAM
    h = perturbation(rng, n, diagonal=diagonal)
    xi = covector(rng, n)
    direct = direct_symbol(op, n, p, h, xi)
    grouped = grouped_symbol(op, n, p, h, xi)
    closed = closed_form_reduced(op, n, p, h, xi)
    rows = []
    for check, lhs, rhs in (
        ("direct_equals_grouped", direct, grouped),
        ("grouped_equals_closed_form", grouped, closed),
    ):
        diff = lhs - rhs
        status = STATUS_PASS if diff.is_zero() else STATUS_FAIL
        rows.append(
            (op_name, n, p, trial, check, status, lhs.canonical(), rhs.canonical(), diff.canonical())
        )
    return rows


def cmd_verify_symbol(args: argparse.Namespace) -> int:
    report = Report("verify-symbol", args.seed)
    cases = [
        (op_name, n, p, trial, args.seed, args.general_h == "on")
        for op_name in (("bochner", "derham") if args.operator == "both" else (args.operator,))
        for n in range(args.n_min, args.n_max + 1)
        for p in range(n + 1)
        for trial in range(args.trials)
    ]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_route_case, cases, chunksize=4))
    else:
        results = [_route_case(case) for case in cases]
    for rows in results:
        for op_name, n, p, trial, check, status, lhs, rhs, residual in rows:
            report.add(CaseKey(op_name, n, p, trial), check, status, lhs, rhs, residual)
    _emit(report, args.format, args.out)
    return report.exit_code()


# ---------------------------------------------------------------------------
# identities
# ---------------------------------------------------------------------------


def _combinatorial_rows(report: Report, n_max: int) -> None:
    for n in range(2, n_max + 1):
        for p in range(n + 1):
            case = CaseKey("subset_sums", n, p, 0)
            checked = 0
            # indicator pair and sign pair over every index pair, then the
            # fourth-power sign free term against its closed form
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    identity_sum(n, p, (CHI, CHI_COMP), (i, j))
                    identity_sum(n, p, (SGN, SGN), (i, j))
                    checked += 2
            report.add(case, "indicator_and_sign_pairs", STATUS_PASS,
                       f"{checked} sums", f"{checked} closed forms", "0")
            if n >= 4:
                value = free_term(n, p, (SGN, SGN, SGN, SGN))
                closed = sgn4_free_term_closed(n, p)
                status = STATUS_PASS if value == closed else STATUS_FAIL
                report.add(case, "sign4_free_term", status, str(value), str(closed),
                           str(value - closed))


def _gauge_rows(report: Report, n_max: int, seed: int, draws: int = 20) -> None:
    for op_name, op in _OPERATORS.items():
        for n in range(2, min(n_max, 6) + 1):
            for p in range(n + 1):
                worst = None
                for trial in range(draws):
                    rng = case_rng(seed, "gauge", op_name, n, p, trial)
                    k = perturbation(rng, n)
                    xi = covector(rng, n)
                    eta = covector(rng, n)
                    residual = gauge_kernel_check(op, n, p, k, xi, eta)
                    if not residual.is_zero():
                        worst = residual
                        break
                case = CaseKey(op_name, n, p, 0)
                if worst is None:
                    report.add(case, "gauge_direction_kernel", STATUS_PASS,
                               f"{draws} draws", "0", "0")
                else:
                    report.add(case, "gauge_direction_kernel", STATUS_FAIL,
                               f"{draws} draws", "0", worst.canonical())


def _torsion_rows(report: Report, n_max: int, seed: int) -> None:
    for op_name, op in _OPERATORS.items():
        for n in range(2, min(n_max, 7) + 1):
            rng = case_rng(seed, "torsion", op_name, n)
            h = perturbation(rng, n)
            xi = covector(rng, n)
            for k in (0, 1, 2):
                residual = torsion_sum(op, n, k, h, xi)
                case = CaseKey(op_name, n, k, 0)
                if torsion_sum_valid(op, n, k):
                    status = STATUS_PASS if residual.is_zero() else STATUS_FAIL
                    report.add(case, "alternating_sum_weight_k", status,
                               f"k={k}", "0", residual.canonical())
                else:
                    # Outside the identity's domain of validity the residual
                    # is a nonzero polynomial (it still vanishes at S = -n/2);
                    # reported, not asserted.
                    report.add(case, "alternating_sum_weight_k", STATUS_REPORTED,
                               f"k={k}", "0", residual.canonical())


def _inequality_rows(report: Report, n_max: int, seed: int, draws: int = 100) -> None:
    for n in range(2, min(n_max, 6) + 1):
        positivity_bad = 0
        cs_bad = 0
        printed_bad = 0
        surveyed = 0
        for trial in range(draws):
            rng = case_rng(seed, "ineq", n, trial)
            h = perturbation(rng, n)
            xi = covector(rng, n)
            chk = projector_inequalities(h, xi)
            if chk.is_gauge:
                continue
            surveyed += 1
            positivity_bad += not chk.positivity_ok
            cs_bad += not chk.cauchy_schwarz_ok
            printed_bad += not chk.printed_direction_ok
        case = CaseKey("traces", n, 0, 0)
        status = STATUS_PASS if positivity_bad == 0 and cs_bad == 0 else STATUS_FAIL
        report.add(case, "positivity_and_cauchy_schwarz", status,
                   f"{surveyed} non-gauge draws", "0 violations",
                   f"{positivity_bad + cs_bad}")
        ident = projector_inequalities(PerturbH.identity(n), Covector.axis(n, 0))
        note = "identity violates" if not ident.printed_direction_ok else "identity satisfies"
        report.add(case, "reversed_middle_inequality_survey", STATUS_REPORTED,
                   f"{printed_bad}/{surveyed} violations", note, "")


def cmd_identities(args: argparse.Namespace) -> int:
    report = Report("identities", args.seed)
    report.notes.append(
        "alternating sums vanish identically for k <= n-3 "
        "(and for the exterior-derivative Laplacian at n=2, k <= 1); "
        "rows outside that domain are reported with their residuals"
    )
    report.notes.append(
        "reversed_middle_inequality_survey rows are informational: the "
        "Cauchy-Schwarz direction (tr)^2 <= (n-1) tr(sq) is the asserted one"
    )
    _combinatorial_rows(report, min(args.n_max, 10))
    _gauge_rows(report, args.n_max, args.seed)
    _torsion_rows(report, args.n_max, args.seed)
    _inequality_rows(report, args.n_max, args.seed)
    _emit(report, args.format, args.out)
    return report.exit_code()


# ---------------------------------------------------------------------------
# ftable
# ---------------------------------------------------------------------------


def _ftable_rows(op_name: str, n: int) -> list[dict]:
    op = _OPERATORS[op_name]
    rows = []
    for p in range(n + 1):
        f1, f2 = closed_form_fpair(op, n, p)
        comparison = dstar_d_fpair(n, p)
        rows.append(
            {
                "case": {"operator": op_name, "n": n, "p": p},
                "f1": f1.canonical(),
                "f2": f2.canonical(),
                "dstar_d": {
                    "alt_sum": [
                        comparison.alt_sum.f1.canonical(),
                        comparison.alt_sum.f2.canonical(),
                    ],
                    "closed": [
                        comparison.closed.f1.canonical(),
                        comparison.closed.f2.canonical(),
                    ],
                    "scale": None if comparison.scale is None else str(comparison.scale),
                    "proportional": comparison.proportional,
                },
            }
        )
    return rows


def cmd_ftable(args: argparse.Namespace) -> int:
    import csv as _csv
    import io
    import json as _json

    rows = _ftable_rows(args.operator, args.n)
    zc = zeta_constants(args.n, 0.0)
    if args.format == "json":
        obj = {
            "command": "ftable",
            "operator": args.operator,
            "n": args.n,
            "grading_constant_s0": zc.value,
            "rows": rows,
        }
        text = _json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        writer = _csv.writer(buf, lineterminator="\n")
        writer.writerow(
            ["p", "f1", "f2", "dstar_alt_f1", "dstar_alt_f2",
             "dstar_closed_f1", "dstar_closed_f2", "dstar_scale"]
        )
        for row in rows:
            d = row["dstar_d"]
            writer.writerow(
                [row["case"]["p"], row["f1"], row["f2"], d["alt_sum"][0],
                 d["alt_sum"][1], d["closed"][0], d["closed"][1],
                 d["scale"] if d["scale"] is not None else "none"]
            )
        text = buf.getvalue()
    else:
        lines = [
            f"# {args.operator} coefficient pairs, n={args.n} "
            f"(float grading constant at s=0: {zc.value:.6e}, informational)"
        ]
        for row in rows:
            d = row["dstar_d"]
            lines.append(
                f"p={row['case']['p']}: f1 = {row['f1']}  f2 = {row['f2']}  "
                f"dstar_d alt=({d['alt_sum'][0]}, {d['alt_sum'][1]}) "
                f"closed=({d['closed'][0]}, {d['closed'][1]}) scale={d['scale']}"
            )
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# classify / scan
# ---------------------------------------------------------------------------


def _fpair_for(op_name: str, n: int, p: int):
    if op_name in _OPERATORS:
        return closed_form_fpair(_OPERATORS[op_name], n, p)
    if op_name == "dstar_d":
        return dstar_d_fpair(n, p).alt_sum
    if op_name == "ddstar":
        from .exactalg import FPair, SPoly

        if p == 0:
            return FPair(SPoly.zero(), SPoly.zero())
        return dstar_d_fpair(n, p - 1).alt_sum
    raise ValueError(op_name)


def cmd_classify(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    s = Fraction(args.s)
    if not s < Fraction(args.n, 2) - 1:
        parser.error(f"--s must satisfy s < n/2 - 1 = {Fraction(args.n, 2) - 1}")
    if not 0 <= args.p <= args.n:
        parser.error(f"--p must be in 0..{args.n}")
    f = _fpair_for(args.operator, args.n, args.p)
    result = classify_critical_metric(f, args.n, s, args.k)
    big_s = s - Fraction(args.n, 2)
    print(
        f"{args.operator} n={args.n} p={args.p} s={s} k={args.k}: {result.value}"
        f"  (f1={f.f1(big_s)}, f1/(n-1)+f2={f.f1(big_s) / (args.n - 1) + f.f2(big_s)})"
    )
    return 0


def cmd_scan(args: argparse.Namespace) -> int:
    rep = scan_critical_metrics(args.n_max)
    saddle_ops = ", ".join(
        f"{name}: {'none' if ok else 'SADDLE FOUND'}" for name, ok in rep.saddle_free.items()
    )
    print(f"bochner smallest saddle n = {rep.bochner_smallest_saddle}; {saddle_ops}")
    directions = ", ".join(f"n={n}: {d}" for n, d in sorted(rep.odd_directions.items()))
    print(f"odd-n finite-index direction: {directions}")
    print(f"mod-4 alternation consistent: {rep.alternation_consistent}")
    ok = (
        rep.bochner_smallest_saddle == 4
        and all(rep.saddle_free.values())
        and rep.alternation_consistent
    )
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zetahessian", description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify-symbol", help="route-equality sweep")
    p_verify.add_argument("--operator", choices=("bochner", "derham", "both"),
                          default="both")
    p_verify.add_argument("--n-min", type=int, default=2)
    p_verify.add_argument("--n-max", type=int, default=6)
    p_verify.add_argument("--trials", type=int, default=5)
    p_verify.add_argument("--seed", type=int, default=None)
    p_verify.add_argument("--general-h", choices=("on", "off"), default="on",
                          help="off draws diagonal perturbations for the "
                               "exterior-derivative Laplacian")
    p_verify.add_argument("--jobs", type=int, default=1)
    p_verify.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p_verify.add_argument("--out", default=None)

    p_ident = sub.add_parser("identities", help="identity and inequality sweeps")
    p_ident.add_argument("--n-max", type=int, default=8)
    p_ident.add_argument("--seed", type=int, default=None)
    p_ident.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p_ident.add_argument("--out", default=None)

    p_ftable = sub.add_parser("ftable", help="closed-form coefficient pairs")
    p_ftable.add_argument("--operator", choices=("bochner", "derham"), required=True)
    p_ftable.add_argument("--n", type=int, required=True)
    p_ftable.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p_ftable.add_argument("--out", default=None)

    p_classify = sub.add_parser("classify", help="critical-metric sign classification")
    p_classify.add_argument("--operator",
                            choices=("bochner", "derham", "dstar_d", "ddstar"),
                            required=True)
    p_classify.add_argument("--n", type=int, required=True)
    p_classify.add_argument("--p", type=int, required=True)
    p_classify.add_argument("--s", default="0", help="rational, e.g. 0 or -3/2")
    p_classify.add_argument("--k", type=int, default=1)

    p_scan = sub.add_parser("scan", help="classification sweep over dimensions")
    p_scan.add_argument("--n-max", type=int, default=12)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "seed", None) is None and hasattr(args, "seed"):
        args.seed = _default_seed()

    if args.command == "verify-symbol":
        if not 2 <= args.n_min <= args.n_max <= 12:
            parser.error("need 2 <= n-min <= n-max <= 12")
        if args.trials < 1:
            parser.error("--trials must be >= 1")
        return cmd_verify_symbol(args)
    if args.command == "identities":
        if args.n_max < 2:
            parser.error("--n-max must be >= 2")
        return cmd_identities(args)
    if args.command == "ftable":
        if not 2 <= args.n <= 12:
            parser.error("--n must be in 2..12")
        return cmd_ftable(args)
    if args.command == "classify":
        if args.n < 3:
            parser.error("--n must be >= 3")
        return cmd_classify(args, parser)
    if args.command == "scan":
        if args.n_max < 4:
            parser.error("--n-max must be >= 4")
        return cmd_scan(args)
    parser.error(f"unknown command {args.command!r}")
    return 2


if __name__ == "__main__":
    sys.exit(main())
