"""Named verification suites run by ``mseq verify``.

Each suite returns a :class:`SuiteResult`; the first failure message carries
the full parameters of the counterexample.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable

from . import census, polytope
from .field import field_make
from .lfsr import Multisequence, generates, jlc_fast, jlc_oracle

# (q, m, n values) cells enumerated exhaustively
CENSUS_GRID: tuple[tuple[int, int, tuple[int, ...]], ...] = (
    (2, 1, tuple(range(1, 15))),
    (2, 2, tuple(range(1, 10))),
    (2, 3, tuple(range(1, 7))),
    (3, 1, tuple(range(1, 9))),
    (3, 2, tuple(range(1, 6))),
)
RUEPPEL_CAP = Fraction(1)
RESIDUAL_CAP = Fraction(3, 2)
HALF_GROWTH = Fraction(5, 4)

POLYTOPE_M = 5
POLYTOPE_L = 25

ORACLE_RANDOM_CASES = 10_000
ORACLE_SEED = 20070101


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, cond: bool, message: Callable[[], str] | str) -> None:
        self.checks += 1
        if not cond:
            self.failures.append(message() if callable(message) else message)


def halves(ns):
    """Split an n-range at its midpoint; the midpoint goes to the first half."""
    ns = sorted(ns)
    mid = Fraction(ns[0] + ns[-1], 2)
    return [n for n in ns if n <= mid], [n for n in ns if n > mid]


def second_half_bounded(values: dict[int, Fraction], factor: Fraction = HALF_GROWTH) -> tuple[bool, Fraction, Fraction]:
    first, second = halves(values)
    a = max(values[n] for n in first)
    b = max(values[n] for n in second)
    return b <= a * factor, a, b


@lru_cache(maxsize=None)
def census_cell(q: int, m: int, n: int) -> census.DistributionTable:
    return census.enumerate_distribution(q, m, n, budget=2**26)


def census_cells():
    for q, m, ns in CENSUS_GRID:
        for n in ns:
            yield q, m, n, census_cell(q, m, n)


def suite_lemma2() -> SuiteResult:
    res = SuiteResult("lemma2")
    for q, m, n, t in census_cells():
        for L, c in enumerate(t.counts):
            res.check(c <= q ** ((m + 1) * L), lambda: f"q={q} m={m} n={n} L={L}: N={c} > q^((m+1)L)={q ** ((m + 1) * L)}")
    return res


def suite_identity(random_tuples: int = 100, seed: int = ORACLE_SEED) -> SuiteResult:
    res = SuiteResult("identity")
    for q, m, n, t in census_cells():
        res.check(sum(t.counts) == q ** (n * m), f"q={q} m={m} n={n}: mass {sum(t.counts)} != q^(nm)")
        res.check(t.counts[0] == 1, f"q={q} m={m} n={n}: N(0) = {t.counts[0]}")
        res.check(census.expectation_identity_check(t), f"q={q} m={m} n={n}: expectation identity fails")
    rng = random.Random(seed)
    for _ in range(random_tuples):
        q, m = rng.choice((2, 3)), rng.randint(1, 5)
        n = rng.randint(0, 40)
        L = rng.randint(0, n)
        res.check(polytope.sum_identity_check(q, m, n, L), f"sum identity fails at q={q} m={m} n={n} L={L}")
    return res


def suite_bounds() -> SuiteResult:
    res = SuiteResult("bounds")
    for q, m, ns in CENSUS_GRID:
        resid: dict[int, Fraction] = {}
        cz: dict[int, Fraction] = {}
        for n in ns:
            t = census_cell(q, m, n)
            e = census.expectation(t)
            fit = census.fit_bounds(t)
            resid[n] = abs(e.residual)
            cz[n] = fit.c_zdelta
            res.check(abs(e.residual) <= RESIDUAL_CAP, f"q={q} m={m} n={n}: |E - ceil| = {float(e.residual):+.6f} > {RESIDUAL_CAP}")
            if m == 1 and q == 2:
                dev = abs(e.e_exact - Fraction(n, 2))
                res.check(dev <= RUEPPEL_CAP, f"q=2 m=1 n={n}: |E - n/2| = {float(dev)} > {RUEPPEL_CAP}")
        for label, values in (("|residual|", resid), ("c_zdelta", cz)):
            ok, a, b = second_half_bounded(values)
            res.check(ok, f"q={q} m={m}: {label} second-half max {float(b)} > {HALF_GROWTH} x first-half max {float(a)}")
    return res


def suite_polytope(max_m: int = POLYTOPE_M, max_L: int = POLYTOPE_L) -> SuiteResult:
    res = SuiteResult("polytope")
    for m in range(1, max_m + 1):
        for L in range(max_L + 1):
            size = len(polytope.enumerate_partitions(m, L))
            top = (m - 1) * L
            res.check(
                sum(polytope.rho(m, L, H) for H in range(top + 1)) == size, f"m={m} L={L}: sum of rho != |P(m,L)|"
            )
            value, argmax = polytope.functional_max(m, L)
            res.check(value == top and argmax == polytope.simplex_vertex(m, L, m), f"m={m} L={L}: functional max")
            prev = 0
            for H in range(top + 1):
                r = polytope.rho(m, L, H)
                M = polytope.count_lattice_points(m, L, H)
                res.check(r <= M <= (H + 1) ** m, lambda: f"m={m} L={L} H={H}: rho={r} M={M} bound={(H + 1) ** m}")
                res.check((H - top) % 2 == 0 or r == 0, f"m={m} L={L} H={H}: off-parity rho = {r}")
                res.check(M >= prev, f"m={m} L={L} H={H}: M decreased")
                prev = M
                if L == 0:
                    continue
                centre = Fraction(L, m)
                box = polytope.coordinate_box(m, L, H)
                res.check(all(hi - lo <= H for lo, hi in box), f"m={m} L={L} H={H}: coordinate interval wider than H")
                vs = polytope.vertices(m, L, H)
                for nu, v in enumerate(vs.vertices, start=1):
                    res.check(sum(v) == L, f"m={m} L={L} H={H} nu={nu}: vertex off the simplex")
                    res.check(all(a >= b for a, b in zip(v, v[1:])), f"m={m} L={L} H={H} nu={nu}: vertex unordered")
                    target = top - H if nu < m else top
                    res.check(polytope.functional(v) == target, f"m={m} L={L} H={H} nu={nu}: vertex off hyperplane")
                    res.check(
                        polytope.in_box(v, centre - H, centre + H), f"m={m} L={L} H={H} nu={nu}: vertex outside box"
                    )
                for p in polytope.lattice_points(m, L, H):
                    res.check(
                        all(lo <= x <= hi for x, (lo, hi) in zip(p.parts, box)),
                        f"m={m} L={L} H={H}: point {p.parts} outside its coordinate box",
                    )
            res.check(prev == size, f"m={m} L={L}: M at H=(m-1)L is {prev}, |P(m,L)| = {size}")
    for q in (2, 3):
        for m in range(1, 5):
            lo, hi = polytope.series_c1(q, m, Fraction(1, 10**9))
            res.check(hi - lo <= Fraction(1, 10**9), f"series q={q} m={m}: bracket width {float(hi - lo)}")
    return res


def suite_oracle(random_cases: int = ORACLE_RANDOM_CASES, seed: int = ORACLE_SEED) -> SuiteResult:
    res = SuiteResult("oracle")
    f2 = field_make(2)
    for m in (1, 2):
        for n in range(7):
            for bits in product(range(2), repeat=m * n):
                t = Multisequence.from_rows(f2, (bits[i * n : (i + 1) * n] for i in range(m)))
                _oracle_case(res, t)
    rng = random.Random(seed)
    for _ in range(random_cases):
        t = random_multisequence(rng)
        _oracle_case(res, t)
    return res


def random_multisequence(rng: random.Random) -> Multisequence:
    q = rng.choice((2, 3, 4, 5))
    m, n = rng.randint(1, 4), rng.randint(0, 32)
    return Multisequence.from_rows(field_make(q), ([rng.randrange(q) for _ in range(n)] for _ in range(m)))


def _oracle_case(res: SuiteResult, t: Multisequence) -> None:
    expected = jlc_oracle(t)
    L, witness = jlc_fast(t)
    res.check(
        L == expected and generates(witness, t),
        lambda: f"q={t.field.q} m={t.m} n={t.n} rows={t.rows}: fast={L} oracle={expected}",
    )


SUITES: dict[str, Callable[[], SuiteResult]] = {
    "lemma2": suite_lemma2,
    "bounds": suite_bounds,
    "polytope": suite_polytope,
    "identity": suite_identity,
    "oracle": suite_oracle,
}
