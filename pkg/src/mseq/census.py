"""Exhaustive census of joint linear complexity over all q^(nm) multisequences.

Multisequences are indexed by integers in ``[0, q^(nm))``.  The index is
read in base q with nm digits, most significant first, and the digits are
laid out column by column: digit ``j*m + i`` is ``s_j`` of row i.  Under
this order the index space of a fixed length-j prefix is one contiguous
block, so a range ``[start, stop)`` is enumerated as a depth-first walk of
the prefix tree that reuses the synthesizer state of each prefix and skips
subtrees outside the range.  Partial count vectors over disjoint ranges add
up to the full census.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

import numpy as np

from .field import FieldSpec, field_make
from .lfsr import Multisequence, synthesizer

DEFAULT_BUDGET = 2**26
BUDGET_ENV = "MSEQ_BUDGET"
MC_BLOCK = 1024


class BudgetExceeded(RuntimeError):
    def __init__(self, q: int, m: int, n: int, budget: int):
        self.q, self.m, self.n, self.budget = q, m, n, budget
        super().__init__(f"q^(nm) = {q}^{n * m} exceeds the state-space budget {budget} (q={q}, m={m}, n={n})")


def default_budget() -> int:
    value = os.environ.get(BUDGET_ENV)
    return int(value) if value else DEFAULT_BUDGET


def center(m: int, n: int) -> int:
    """``ceil(m*n / (m+1))``, the centre of the complexity distribution."""
    return -((-m * n) // (m + 1))


@dataclass(frozen=True)
class DistributionTable:
    q: int
    m: int
    n: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != self.n + 1:
            raise ValueError(f"expected {self.n + 1} counts, got {len(self.counts)}")
        if sum(self.counts) != self.total:
            raise ValueError(f"counts sum to {sum(self.counts)}, expected q^(nm) = {self.total}")

    @property
    def total(self) -> int:
        return self.q ** (self.n * self.m)


@dataclass(frozen=True)
class DeviationTable:
    q: int
    m: int
    n: int
    center: int
    zcounts: dict[int, int]


@dataclass(frozen=True)
class ExpectationRecord:
    q: int
    m: int
    n: int
    e_exact: Fraction
    ceil_term: int
    residual: Fraction


@dataclass(frozen=True)
class BoundFitReport:
    q: int
    m: int
    n: int
    c_lemma2_ok: bool
    c_combined: Fraction
    c_zdelta: Fraction


@dataclass(frozen=True)
class MCEstimate:
    q: int
    m: int
    n: int
    samples: int
    seed: int
    mean: float
    stderr: float


# -- enumeration ------------------------------------------------------------


def decode_index(field: FieldSpec, m: int, n: int, index: int) -> Multisequence:
    """The multisequence at position ``index`` of the census order."""
    q = field.q
    digits = []
    for _ in range(n * m):
        index, d = divmod(index, q)
        digits.append(d)
    if index:
        raise IndexError("index out of range")
    digits.reverse()
    return Multisequence.from_rows(field, ([digits[j * m + i] for j in range(n)] for i in range(m)))


def count_range(field: FieldSpec, m: int, n: int, start: int, stop: int) -> list[int]:
    """Complexity counts over census indices ``[start, stop)``."""
    total = field.q ** (n * m)
    start, stop = max(start, 0), min(stop, total)
    counts = [0] * (n + 1)
    if start >= stop:
        return counts
    if n == 0:
        counts[0] = 1
        return counts

    columns = list(product(range(field.q), repeat=m))
    block = [field.q ** (m * (n - 1 - d)) for d in range(n)]

    def visit(syn, depth: int, lo: int) -> None:
        size = block[depth]
        if depth == n - 1:
            first = max(start - lo, 0)
            last = min(stop - lo, len(columns))
            for col in columns[first:last]:
                counts[syn.copy().extend(col)] += 1
            return
        for c, col in enumerate(columns):
            clo = lo + c * size
            if clo + size <= start:
                continue
            if clo >= stop:
                break
            child = syn.copy()
            child.extend(col)
            visit(child, depth + 1, clo)

    visit(synthesizer(field, m), 0, 0)
    return counts


def _count_job(args) -> list[int]:
    return count_range(*args)


def split_range(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    bounds = [total * k // parts for k in range(parts + 1)]
    return [(bounds[k], bounds[k + 1]) for k in range(parts)]


def enumerate_distribution(
    q: int,
    m: int,
    n: int,
    *,
    budget: int | None = None,
    jobs: int = 1,
    modulus: Sequence[int] | None = None,
) -> DistributionTable:
    """Exact ``N_n^(m)(L)`` for L = 0..n by exhaustive enumeration."""
    budget = default_budget() if budget is None else budget
    total = q ** (n * m)
    if total > budget:
        raise BudgetExceeded(q, m, n, budget)
    field = field_make(q, modulus)
    if jobs <= 1:
        counts = count_range(field, m, n, 0, total)
    else:
        tasks = [(field, m, n, a, b) for a, b in split_range(total, 4 * jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            partials = list(pool.map(_count_job, tasks))
        counts = [sum(col) for col in zip(*partials)]
    return DistributionTable(q, m, n, tuple(counts))


# -- derived views ------------------------------------------------------------


def expectation(t: DistributionTable) -> ExpectationRecord:
    e = Fraction(sum(L * c for L, c in enumerate(t.counts)), t.total)
    ceil_term = center(t.m, t.n)
    return ExpectationRecord(t.q, t.m, t.n, e, ceil_term, e - ceil_term)


def deviation_table(t: DistributionTable) -> DeviationTable:
    c = center(t.m, t.n)
    return DeviationTable(t.q, t.m, t.n, c, {L - c: cnt for L, cnt in enumerate(t.counts)})


def expectation_identity_check(t: DistributionTable) -> bool:
    """Centre plus the mean deviation equals the expectation, exactly."""
    z = deviation_table(t)
    correction = Fraction(sum(d * cnt for d, cnt in z.zcounts.items()), t.total)
    return z.center + correction == expectation(t).e_exact


def lemma2_check(t: DistributionTable) -> bool:
    """``N(L) <= q^((m+1)L)`` for every L."""
    return all(c <= t.q ** ((t.m + 1) * L) for L, c in enumerate(t.counts))


def fit_bounds(t: DistributionTable) -> BoundFitReport:
    """Least constants C with N(L) <= C q^(nm - |(m+1)L - mn|) and
    Z(d) <= C q^(nm - (m+1)|d|) over the whole table."""
    q, m, n = t.q, t.m, t.n
    c_combined = max(Fraction(c * q ** abs((m + 1) * L - m * n), t.total) for L, c in enumerate(t.counts))
    z = deviation_table(t)
    c_zdelta = max(Fraction(c * q ** ((m + 1) * abs(d)), t.total) for d, c in z.zcounts.items())
    return BoundFitReport(q, m, n, lemma2_check(t), c_combined, c_zdelta)


# -- Monte Carlo --------------------------------------------------------------


def _mc_block(q: int, m: int, n: int, seed: int, block: int, size: int) -> tuple[int, int]:
    # one Philox stream per block, keyed by (seed, block): independent of scheduling
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(block,))))
    draws = rng.integers(0, q, size=(size, n, m)).tolist()
    field = field_make(q)
    s = s2 = 0
    for sample in draws:
        syn = synthesizer(field, m)
        for col in sample:
            syn.extend(col)
        L = syn.complexity
        s += L
        s2 += L * L
    return s, s2


def _mc_job(args) -> tuple[int, int]:
    return _mc_block(*args)


def mc_estimate(q: int, m: int, n: int, samples: int, seed: int, *, jobs: int = 1) -> MCEstimate:
    """Mean joint linear complexity over ``samples`` uniform multisequences."""
    if samples < 2:
        raise ValueError("samples must be at least 2")
    if not 0 <= seed < 2**64:
        raise ValueError("seed must be a 64-bit unsigned value")
    if n == 0:
        return MCEstimate(q, m, n, samples, seed, 0.0, 0.0)
    tasks = []
    for b in range(math.ceil(samples / MC_BLOCK)):
        size = min(MC_BLOCK, samples - b * MC_BLOCK)
        tasks.append((q, m, n, seed, b, size))
    if jobs <= 1:
        parts = [_mc_job(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_mc_job, tasks))
    s = sum(p[0] for p in parts)
    s2 = sum(p[1] for p in parts)
    mean = Fraction(s, samples)
    var = (Fraction(s2) - samples * mean * mean) / (samples - 1)
    return MCEstimate(q, m, n, samples, seed, float(mean), math.sqrt(var / samples))
