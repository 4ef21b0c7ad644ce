"""Partitions of L into at most m parts and the lattice points of the
partition simplex cut by the weighted-sum functional.

Notation used throughout:

* ``P(m, L)``: nonincreasing m-tuples of nonnegative integers summing to L.
* ``functional(x) = 2 * sum_k (k-1) x_k`` (k counted from 1).  On the simplex
  ``x_1 >= ... >= x_m >= 0, sum x = L`` it peaks at ``(m-1)L``, attained only
  at the balanced point ``(L/m, ..., L/m)``.
* The slice ``H`` (``0 <= H <= (m-1)L``) is where the functional equals
  ``(m-1)L - H``; ``rho`` counts partitions on a slice and
  ``count_lattice_points`` counts partitions with functional ``>= (m-1)L - H``.

All geometry is exact (:class:`fractions.Fraction`).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence


class DegenerateSimplex(ValueError):
    pass


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        if any(a < b for a, b in zip(self.parts, self.parts[1:])) or (self.parts and self.parts[-1] < 0):
            raise ValueError(f"{self.parts} is not nonincreasing and nonnegative")

    @property
    def m(self) -> int:
        return len(self.parts)

    @property
    def total(self) -> int:
        return sum(self.parts)


@dataclass(frozen=True)
class VertexSet:
    m: int
    L: int
    H: int
    vertices: tuple[tuple[Fraction, ...], ...]  # vertices[nu - 1] = x(H, nu)


def _partitions(m: int, total: int, cap: int) -> Iterator[tuple[int, ...]]:
    if m == 1:
        if total <= cap:
            yield (total,)
        return
    for first in range(min(total, cap), -(-total // m) - 1, -1):
        for rest in _partitions(m - 1, total - first, first):
            yield (first,) + rest


def enumerate_partitions(m: int, L: int) -> list[Partition]:
    """``P(m, L)`` in lexicographically descending order."""
    if m < 1 or L < 0:
        raise ValueError("need m >= 1 and L >= 0")
    return [Partition(p) for p in _partitions(m, L, L)]


def functional(part: Partition | Sequence) -> int | Fraction:
    parts = part.parts if isinstance(part, Partition) else part
    return 2 * sum(k * x for k, x in enumerate(parts))


@lru_cache(maxsize=4096)
def _histogram(m: int, L: int) -> Counter:
    return Counter((m - 1) * L - functional(p) for p in _partitions(m, L, L))


def _check_slice(m: int, L: int, H: int) -> None:
    if m < 1 or L < 0 or not 0 <= H <= (m - 1) * L:
        raise ValueError(f"need m >= 1, L >= 0, 0 <= H <= (m-1)L; got m={m}, L={L}, H={H}")


def rho(m: int, L: int, H: int) -> int:
    """Number of partitions in ``P(m, L)`` with functional ``(m-1)L - H``."""
    _check_slice(m, L, H)
    return _histogram(m, L)[H]


def count_lattice_points(m: int, L: int, H: int) -> int:
    """Integer points of the simplex with functional ``>= (m-1)L - H``."""
    _check_slice(m, L, H)
    return sum(c for h, c in _histogram(m, L).items() if h <= H)


def lattice_points(m: int, L: int, H: int) -> list[Partition]:
    _check_slice(m, L, H)
    floor = (m - 1) * L - H
    return [p for p in enumerate_partitions(m, L) if functional(p) >= floor]


def lemma4_check(m: int, L: int, H: int) -> bool:
    """``rho <= M <= (H+1)^m`` on the slice H."""
    return rho(m, L, H) <= count_lattice_points(m, L, H) <= (H + 1) ** m


def simplex_vertex(m: int, L: int, nu: int) -> tuple[Fraction, ...]:
    """The vertex whose first ``nu`` coordinates are ``L/nu``, the rest 0."""
    if not 1 <= nu <= m:
        raise ValueError(f"nu must lie in [1, {m}]")
    return tuple(Fraction(L, nu) if k < nu else Fraction(0) for k in range(m))


def vertices(m: int, L: int, H: int) -> VertexSet:
    """Vertices of the relaxed slice simplex (``x_m >= 0`` dropped).

    ``x(H, nu) = (1 - t) x^m + t x^nu`` with ``t = H / ((m - nu) L)`` for
    ``nu < m``, and ``x(H, m) = x^m``.
    """
    if L == 0:
        raise DegenerateSimplex("the simplex collapses to the origin for L = 0")
    _check_slice(m, L, H)
    balanced = simplex_vertex(m, L, m)
    out = []
    for nu in range(1, m):
        t = Fraction(H, (m - nu) * L)
        corner = simplex_vertex(m, L, nu)
        out.append(tuple((1 - t) * b + t * c for b, c in zip(balanced, corner)))
    out.append(balanced)
    return VertexSet(m, L, H, tuple(out))


def coordinate_box(m: int, L: int, H: int) -> list[tuple[Fraction, Fraction]]:
    """Per-coordinate ``[min, max]`` over the vertices of the relaxed simplex.

    Every point of the slice region lies in this box.  Each interval
    contains ``L/m`` and has width at most H.
    """
    vs = vertices(m, L, H).vertices
    return [(min(v[j] for v in vs), max(v[j] for v in vs)) for j in range(m)]


def in_box(point: Sequence, lo, hi) -> bool:
    return all(lo <= x <= hi for x in point)


def functional_max(m: int, L: int) -> tuple[int, tuple[Fraction, ...]]:
    """``((m-1)L, x^m)``; raises if another simplex vertex ties the maximum."""
    if m < 1 or L < 0:
        raise ValueError("need m >= 1 and L >= 0")
    value = (m - 1) * L
    argmax = simplex_vertex(m, L, m)
    if functional(argmax) != value:
        raise AssertionError("balanced vertex misses the maximum")  # pragma: no cover
    if L > 0:
        for nu in range(1, m):
            v = functional(simplex_vertex(m, L, nu))
            if v != L * (nu - 1) or v >= value:
                raise AssertionError(f"vertex x^{nu} attains {v}, maximum not unique")
    return value, argmax


def sum_identity_check(q: int, m: int, n: int, L: int) -> bool:
    """Partition-sum form and slice-sum form of the count bound agree exactly."""
    if not (q >= 2 and m >= 1 and n >= L >= 0):
        raise ValueError("need q >= 2, m >= 1, n >= L >= 0")
    lhs = sum(q ** (functional(p) + 2 * m * (n - L)) for p in _partitions(m, L, L))
    rhs = sum(rho(m, L, H) * q ** (2 * m * n - (m + 1) * L - H) for H in range((m - 1) * L + 1))
    return lhs == rhs


def series_c1(q: int, m: int, eps) -> tuple[Fraction, Fraction]:
    """Bracket ``S(q, m) = sum_{H >= 0} (H+1)^m / q^H`` within ``eps``.

    Returns ``(lower, upper)``: the partial sum through ``H = N-1`` and that
    sum plus a geometric majorant of the tail.  For ``H >= N`` the ratio of
    consecutive terms is ``((H+2)/(H+1))^m / q``, which decreases in H, so the
    tail is at most ``term(N) / (1 - r)`` with ``r`` the ratio at N.
    """
    if q < 2 or m < 1:
        raise ValueError("need q >= 2 and m >= 1")
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    partial = Fraction(0)
    N = 0
    while True:
        term = Fraction((N + 1) ** m, q**N)
        ratio = Fraction((N + 2) ** m, (N + 1) ** m * q)
        if ratio < 1:
            tail = term / (1 - ratio)
            if tail <= eps:
                return partial, partial + tail
        partial += term
        N += 1
