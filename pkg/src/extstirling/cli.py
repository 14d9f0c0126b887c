"""Command line: ``table``, ``verify`` and ``poisson-check``.

Exit codes: 0 all checks pass, 1 a verification or statistical failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from extstirling import bell, egf, poisson, stirling
from extstirling.config import POISSON_GRID, PROBES
from extstirling.numeric import ZERO, format_scalar, parse_scalar, poly_eval

N_MAX_LIMIT = 30
MAX_REPORTED_FAILURES = 10
DEFAULT_VERIFY_N_MAX = 12

IDENTITIES = (
    "defining_relation",
    "thm1",
    "thm2_vs_egf",
    "thm3",
    "thm5",
    "eq27",
    "eq30",
    "eq34",
    "eq39",
    "eq15_eq20",
    "r0_reduction",
)

_NEGATIVE_VALUE = re.compile(r"^-\d")
_VALUE_FLAGS = {"--r", "--lambda", "--x", "--n-max", "--seed", "--threshold", "--samples"}


class UsageError(Exception):
    pass


# -- tables --------------------------------------------------------------------


def table_entries(kind: str, n_max: int, r: Fraction | None, lam: Fraction) -> tuple[list[str], list[list[str]]]:
    """Header and rows (as strings) for one ``table`` invocation."""
    if kind == "s2":
        rows = stirling.s2_rows(n_max)
        return ["n", "k", "value"], [[str(n), str(k), str(v)] for n, row in enumerate(rows) for k, v in enumerate(row)]
    if kind == "s2r":
        t = stirling.s2r_table(n_max, r)
        return ["n", "k", "value"], [[str(n), str(k), format_scalar(v)] for n, k, v in t.entries()]
    if kind == "bell":
        return ["n", "value"], [[str(n), format_scalar(bell.bell_number(n))] for n in range(n_max + 1)]
    if kind == "bell_ext":
        t = stirling.s2r_table(n_max, r)
        return ["n", "value"], [
            [str(n), format_scalar(poly_eval(bell.bell_ext_poly(n, r, t), lam))] for n in range(n_max + 1)
        ]
    raise UsageError(f"unknown table kind {kind!r}")


def cmd_table(args: argparse.Namespace, out) -> int:
    if args.kind in ("s2r", "bell_ext") and args.r is None:
        raise UsageError(f"table {args.kind} requires --r")
    r = _single(args.r, "--r") if args.r is not None else None
    lam = _single(args.lam, "--lambda") if args.lam is not None else Fraction(1)
    header, rows = table_entries(args.kind, args.n_max, r, lam)
    if args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    else:
        doc = {
            "kind": args.kind,
            "n_max": args.n_max,
            "r": format_scalar(r) if r is not None else None,
            "lambda": format_scalar(lam) if args.kind == "bell_ext" else None,
            "entries": [dict(zip(header, (int(c) if h != "value" else c for h, c in zip(header, row)))) for row in rows],
        }
        json.dump(doc, out, indent=2)
        out.write("\n")
    return 0


# -- verification sweeps -------------------------------------------------------


@dataclass
class VerificationReport:
    identity: str
    grid: dict
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "grid": self.grid,
            "checked": self.checked,
            "failures": self.failures[:MAX_REPORTED_FAILURES],
            "pass": self.passed,
        }


def _fmt(*values) -> list:
    return [format_scalar(v) if isinstance(v, Fraction) else v for v in values]


def _sweep(cells: Iterable[tuple[list, bool]]) -> tuple[int, list]:
    checked, failures = 0, []
    for tup, ok in cells:
        checked += 1
        if not ok:
            failures.append(tup)
    return checked, failures


def _cells_defining(n_max, rs, lams, xs):
    for n in range(n_max + 1):
        yield [n], stirling.verify_defining_relation(n)


def _cells_thm1(n_max, rs, lams, xs):
    # Bel_{n,r}(lam) from the Stirling row and S_{2,r}(n,k|x) against the generating function
    for r in rs:
        t = stirling.s2r_table(n_max, r)
        for n in range(n_max + 1):
            p = bell.bell_ext_poly(n, r, t)
            for lam in lams:
                yield _fmt(n, r, lam), poly_eval(p, lam) == egf.bell_ext_via_egf(n, r, lam)
            for k in range(n + 1):
                q = stirling.s2r_poly(n, k, r, t)
                for x in xs:
                    yield _fmt(n, k, r, x), poly_eval(q, x) == egf.s2r_poly_via_egf(n, k, r, x)


def _cells_thm2(n_max, rs, lams, xs):
    for r in rs:
        t = stirling.s2r_table(n_max, r)
        oracle = egf.s2r_egf_triangle(n_max, r)
        for n, k, v in t.entries():
            yield _fmt(n, k, r), v == oracle[n][k]


def _known_failures(total: int, failures: Iterable) -> Iterator[tuple[list, bool]]:
    # adapts a failing-cell iterator to the (cell, ok) stream; passing cells are anonymous
    bad = list(failures)
    yield from ((f, False) for f in bad)
    yield from (([], True) for _ in range(total - len(bad)))


def _cells_thm3(n_max, rs, lams, xs):
    total = (n_max + 1) * (n_max + 2) // 2
    for r in rs:
        yield from _known_failures(total, (_fmt(*f, r) for f in stirling.inversion_failures(n_max, r)))


def _split(kind):
    def cells(n_max, rs, lams, xs):
        total = stirling.split_cell_count(n_max)
        for r in rs:
            yield from _known_failures(total, (_fmt(*f, r) for f in stirling.split_failures(kind, n_max, r)))

    return cells


def _cells_eq34(n_max, rs, lams, xs):
    for r in rs:
        for lam in lams:
            failing = (_fmt(n, r, lam) for n in bell.binomial_shift_failures(n_max, r, lam))
            yield from _known_failures(n_max + 1, failing)


def _cells_eq39(n_max, rs, lams, xs):
    for r in rs:
        for lam in lams:
            for x in xs:
                failing = (_fmt(n, r, lam, x) for n in bell.mixed_identity_failures(n_max, r, lam, x))
                yield from _known_failures(n_max + 1, failing)
            for n in range(n_max + 1):
                yield _fmt(n, r, lam, "interp"), bell.verify_mixed_identity_in_x(n, r, lam)


def _cells_eq15_eq20(n_max, rs, lams, xs):
    for r in rs:
        t = stirling.s2r_table(n_max, r)
        for n in range(n_max + 1):
            row_sum = sum(t.row(n), ZERO)
            yield _fmt(n, r), row_sum == bell.bell_ext_number_binomial(n, r)


def _cells_r0(n_max, rs, lams, xs):
    t = stirling.s2r_table(n_max, 0)
    classical = stirling.s2_rows(n_max)
    for n, k, v in t.entries():
        yield [n, k], v == classical[n][k]
    for n in range(n_max + 1):
        yield [n, "bell_poly"], bell.bell_ext_poly(n, 0, t) == bell.bell_poly(n)


_CELLS = {
    "defining_relation": _cells_defining,
    "thm1": _cells_thm1,
    "thm2_vs_egf": _cells_thm2,
    "thm3": _cells_thm3,
    "thm5": _split("convolution"),
    "eq27": _split("triple_sum"),
    "eq30": _split("inverse_triple_sum"),
    "eq34": _cells_eq34,
    "eq39": _cells_eq39,
    "eq15_eq20": _cells_eq15_eq20,
    "r0_reduction": _cells_r0,
}


def run_verification(
    identity: str,
    n_max: int,
    rs: Sequence[Fraction] = PROBES.r,
    lams: Sequence[Fraction] = PROBES.lam,
    xs: Sequence[Fraction] = PROBES.x,
) -> VerificationReport:
    if identity not in _CELLS:
        raise UsageError(f"unknown identity {identity!r}")
    if not 0 <= n_max <= N_MAX_LIMIT:
        raise UsageError(f"--n-max must lie in [0, {N_MAX_LIMIT}]")
    grid = {
        "n_max": n_max,
        "r": [format_scalar(r) for r in rs],
        "lambda": [format_scalar(v) for v in lams],
        "x": [format_scalar(v) for v in xs],
    }
    checked, failures = _sweep(_CELLS[identity](n_max, rs, lams, xs))
    return VerificationReport(identity, grid, checked, failures)


def cmd_verify(args: argparse.Namespace, out) -> int:
    rs = _scalar_list(args.r) if args.r else PROBES.r
    lams = _scalar_list(args.lam) if args.lam else PROBES.lam
    xs = _scalar_list(args.x) if args.x else PROBES.x
    report = run_verification(args.identity, args.n_max, rs, lams, xs)
    if args.format == "json":
        json.dump(report.to_json(), out, indent=2)
        out.write("\n")
    else:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["identity", "checked", "failures", "pass"])
        w.writerow([report.identity, report.checked, len(report.failures), str(report.passed).lower()])
    for tup in report.failures[:MAX_REPORTED_FAILURES]:
        print(f"FAIL {report.identity}: {tup}", file=sys.stderr)
    return 0 if report.passed else 1


# -- Monte Carlo -----------------------------------------------------------------


def cmd_poisson_check(args: argparse.Namespace, out) -> int:
    lam = _decimal_or_rational(args.lam, "--lambda")
    r = _decimal_or_rational(args.r, "--r")
    try:
        reports = poisson.moment_grid_check(
            args.n_max, lam, r, args.samples, args.seed, args.threshold, args.workers
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    ok = all(rep.passed for rep in reports)
    if args.format == "json":
        doc = {"threshold": args.threshold, "pass": ok, "reports": [rep.to_json() for rep in reports]}
        json.dump(doc, out, indent=2)
        out.write("\n")
    else:
        keys = ["n", "lambda", "r", "samples", "seed", "exact", "mean", "stderr", "z", "pass"]
        w = csv.writer(out, lineterminator="\n")
        w.writerow(keys)
        for rep in reports:
            d = rep.to_json()
            w.writerow([repr(d[k]) if isinstance(d[k], float) else d[k] for k in keys])
    return 0 if ok else 1


# -- argument handling -------------------------------------------------------------


def _scalar_list(items: Sequence[str]) -> list[Fraction]:
    out = []
    for item in items:
        for part in item.split(","):
            if part.strip():
                try:
                    out.append(parse_scalar(part))
                except (ValueError, ZeroDivisionError) as exc:
                    raise UsageError(str(exc)) from exc
    if not out:
        raise UsageError("empty value list")
    return out


def _single(items: Sequence[str], flag: str) -> Fraction:
    values = _scalar_list(items)
    if len(values) != 1:
        raise UsageError(f"{flag} takes a single value here")
    return values[0]


def _decimal_or_rational(text: str, flag: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{flag}: not a number: {text!r}") from None


def _join_negative_values(argv: Sequence[str]) -> list[str]:
    # argparse would read "-3/7" as an option; bind it to the preceding flag
    out: list[str] = []
    it = iter(range(len(argv)))
    for i in it:
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and _NEGATIVE_VALUE.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            next(it)
        else:
            out.append(tok)
    return out


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _nonneg_int(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="extstirling", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    t = sub.add_parser("table", help="print a triangle or sequence")
    t.add_argument("kind", choices=["s2", "s2r", "bell", "bell_ext"])
    t.add_argument("--n-max", type=_nonneg_int, required=True)
    t.add_argument("--r", action="append", help="rational p/q (s2r, bell_ext)")
    t.add_argument("--lambda", dest="lam", action="append", help="evaluation point for bell_ext (default 1)")
    t.add_argument("--format", choices=["csv", "json"], default="csv")
    t.set_defaults(func=cmd_table)

    v = sub.add_parser("verify", help="sweep one identity over a parameter grid")
    v.add_argument("identity", choices=IDENTITIES)
    v.add_argument("--n-max", type=_nonneg_int, default=DEFAULT_VERIFY_N_MAX)
    v.add_argument("--r", action="append", help="r values, repeatable or comma separated")
    v.add_argument("--lambda", dest="lam", action="append")
    v.add_argument("--x", action="append")
    v.add_argument("--format", choices=["csv", "json"], default="json")
    v.set_defaults(func=cmd_verify)

    g = POISSON_GRID
    p = sub.add_parser("poisson-check", help="Monte Carlo moments of a shifted Poisson variable")
    p.add_argument("--n-max", type=_nonneg_int, default=g.n_max)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--r", default="0")
    p.add_argument("--samples", type=int, default=g.samples)
    p.add_argument("--seed", type=int, default=g.seed)
    p.add_argument("--threshold", type=float, default=g.threshold)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=["csv", "json"], default="json")
    p.set_defaults(func=cmd_poisson_check)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"extstirling: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
