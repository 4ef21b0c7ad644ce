"""Command-line front end: ``mseq {profile,census,polytope,montecarlo,verify}``.

Exit status is 0 on success, 1 when a verification check fails, and 2 for
usage, parse, field, or budget errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import census, formats, polytope
from .field import FieldError
from .lfsr import jlc_fast, jlc_profile
from .verify import SUITES


class UnknownSuite(ValueError):
    pass


def int_range(text: str) -> list[int]:
    """Parse ``a..b`` (inclusive) or a single integer."""
    lo, sep, hi = text.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or a..b range, got {text!r}") from None
    if b < a:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return list(range(a, b + 1))


def _modulus(text: str) -> tuple[int, ...]:
    try:
        return formats.parse_modulus(text)
    except ValueError:
        raise argparse.ArgumentTypeError("--modulus takes comma separated base-p digits") from None


def cmd_profile(args) -> int:
    t = formats.parse_seqfile(Path(args.input).read_text(), args.modulus)
    prof = jlc_profile(t)
    L, witness = jlc_fast(t)
    poly = [1, *witness.coeffs]
    if args.format == "json":
        print(json.dumps({"q": t.field.q, "m": t.m, "n": t.n, "profile": list(prof.values), "L": L, "connection_poly": poly}))
    elif args.format == "csv":
        print("k,L")
        for k, v in enumerate(prof.values, start=1):
            print(f"{k},{v}")
        print(f"# L={L} connection_poly={' '.join(map(str, poly))}")
    else:
        print(f"q={t.field.q} m={t.m} n={t.n}")
        print("profile: " + ",".join(map(str, prof.values)))
        print(f"L: {L}")
        print("connection_poly: " + " ".join(map(str, poly)))
    return 0


def cmd_census(args) -> int:
    budget = census.default_budget() if args.budget is None else args.budget
    for q in args.q:
        for m in args.m:
            for n in args.n:
                if q ** (n * m) > budget:
                    raise census.BudgetExceeded(q, m, n, budget)
    cells = []
    for q in args.q:
        for m in args.m:
            for n in args.n:
                t = census.enumerate_distribution(q, m, n, budget=budget, jobs=args.jobs, modulus=args.modulus)
                cells.append((t, census.expectation(t), census.deviation_table(t), census.fit_bounds(t)))
    render = {"csv": formats.census_csv, "json": formats.census_json, "table": formats.census_table}[args.format]
    sys.stdout.write(render(cells))
    return 0


def cmd_polytope(args) -> int:
    table, verts, maxima = [], [], []
    for m in args.m:
        for L in args.L:
            value, argmax = polytope.functional_max(m, L)
            maxima.append([str(m), str(L), str(value), ";".join(map(str, argmax))])
            for H in range((m - 1) * L + 1):
                r = polytope.rho(m, L, H)
                M = polytope.count_lattice_points(m, L, H)
                bound = (H + 1) ** m
                table.append([str(m), str(L), str(H), str(r), str(M), str(bound), str(r <= M <= bound).lower()])
                if args.vertices and L > 0:
                    for nu, v in enumerate(polytope.vertices(m, L, H).vertices, start=1):
                        verts.append([str(m), str(L), str(H), str(nu), ";".join(map(str, v))])
    sections = [("polytope", table), ("functional_max", maxima)]
    if args.vertices:
        sections.append(("vertices", verts))
    if args.format == "json":
        out = {name: [dict(zip(formats.SCHEMAS[name], row)) for row in rows] for name, rows in sections}
        print(json.dumps(out, indent=2))
    else:
        sys.stdout.write(formats.write_sections(sections))
    return 0


def cmd_montecarlo(args) -> int:
    (q,), (m,), (n,) = args.q, args.m, args.n
    est = census.mc_estimate(q, m, n, args.samples, args.seed, jobs=args.jobs)
    if args.format == "json":
        print(json.dumps(dict(zip(formats.SCHEMAS["montecarlo"], formats.mc_rows(est)[0]))))
    else:
        sys.stdout.write(formats.write_sections([("montecarlo", formats.mc_rows(est))]))
    return 0


def cmd_verify(args) -> int:
    if args.suite not in SUITES:
        raise UnknownSuite(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    res = SUITES[args.suite]()
    status = "PASS" if res.ok else "FAIL"
    print(f"{res.name}: {status} ({res.checks} checks, {len(res.failures)} failures)")
    if not res.ok:
        print(f"first counterexample: {res.failures[0]}")
    return 0 if res.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mseq", description="Joint linear complexity of multisequences.")
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(p, default="csv"):
        p.add_argument("--format", choices=("csv", "json", "table"), default=default)

    p = sub.add_parser("profile", help="complexity profile of a sequence file")
    p.add_argument("input")
    p.add_argument("--modulus", type=_modulus)
    fmt(p, "table")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("census", help="exhaustive distribution, expectation and bound fits")
    p.add_argument("--q", type=int_range, required=True)
    p.add_argument("--m", type=int_range, required=True)
    p.add_argument("--n", type=int_range, required=True)
    p.add_argument("--budget", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--modulus", type=_modulus)
    fmt(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("polytope", help="slice counts, lattice points and vertices")
    p.add_argument("--m", type=int_range, required=True)
    p.add_argument("--L", type=int_range, required=True)
    p.add_argument("--vertices", action="store_true")
    fmt(p)
    p.set_defaults(func=cmd_polytope)

    p = sub.add_parser("montecarlo", help="seeded Monte Carlo estimate of the expectation")
    p.add_argument("--q", type=int_range, required=True)
    p.add_argument("--m", type=int_range, required=True)
    p.add_argument("--n", type=int_range, required=True)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    fmt(p)
    p.set_defaults(func=cmd_montecarlo)

    p = sub.add_parser("verify", help=f"run a check suite: {', '.join(SUITES)}")
    p.add_argument("suite")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "montecarlo" and any(len(v) != 1 for v in (args.q, args.m, args.n)):
        print("mseq: montecarlo takes single values for --q, --m, --n", file=sys.stderr)
        return 2
    if args.command in ("polytope",) and (min(args.m) < 1 or min(args.L) < 0):
        print("mseq: need m >= 1 and L >= 0", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (formats.ParseError, FieldError, census.BudgetExceeded, UnknownSuite, ValueError, OSError) as exc:
        print(f"mseq: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
