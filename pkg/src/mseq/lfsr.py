"""Joint linear complexity of multisequences.

A multisequence T is an m x n array over F_q (row i is the i-th sequence).
Its joint linear complexity is the least L such that one connection
polynomial ``C(x) = 1 + c_1 x + ... + c_L x^L`` satisfies

    s_j + c_1 s_{j-1} + ... + c_L s_{j-L} = 0,   L <= j <= n-1,

for every row simultaneously.  Two independent routes compute it:

* :func:`jlc_oracle` solves the linear system in ``c_1..c_L`` for
  L = 0, 1, 2, ... and returns the first consistent L.
* :func:`jlc_fast` runs an online lattice-reduction synthesizer
  (:class:`Synthesizer`), one column of T at a time.

The synthesizer works in the module of polynomial vectors ``(f, r_1..r_m)``
with ``f * T_i == r_i (mod x^n)``, where ``T_i = sum_j s_j x^(n-1-j)`` is the
reversed i-th row.  A monic ``f`` of degree L with every ``deg r_i < L`` is
exactly the reciprocal of a valid connection polynomial of length L.  Keeping
a basis of that module in weak Popov form for the column shift
``(0, 1, ..., 1)`` makes the row whose leading position is column 0 a
minimal such ``f``.  Appending a column ``s`` maps the module isomorphically
via ``(f, r) -> (f, x*r + s*f)``; after each step the basis is re-reduced by
Mulders-Storjohann simple transformations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .field import FieldError, FieldSpec


@dataclass(frozen=True)
class Multisequence:
    field: FieldSpec
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.rows:
            raise ValueError("a multisequence needs at least one row")
        n = len(self.rows[0])
        for i, row in enumerate(self.rows):
            if len(row) != n:
                raise ValueError(f"row {i} has length {len(row)}, expected {n}")
            for j, v in enumerate(row):
                if not 0 <= v < self.field.q:
                    raise FieldError(f"row {i}, position {j}: symbol {v} outside [0, {self.field.q})")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Iterable[Iterable[int]]) -> Multisequence:
        return cls(field, tuple(tuple(int(v) for v in row) for row in rows))

    @classmethod
    def zeros(cls, field: FieldSpec, m: int, n: int) -> Multisequence:
        return cls(field, tuple((0,) * n for _ in range(m)))

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.rows)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.n)]

    def prefix(self, k: int) -> Multisequence:
        return Multisequence(self.field, tuple(row[:k] for row in self.rows))


@dataclass(frozen=True)
class ConnectionPoly:
    """``C(x) = 1 + c_1 x + ... + c_L x^L``; ``coeffs = (c_1, ..., c_L)``."""

    coeffs: tuple[int, ...]

    @property
    def degree_bound(self) -> int:
        return len(self.coeffs)


@dataclass(frozen=True)
class ComplexityProfile:
    values: tuple[int, ...]

    def __post_init__(self):
        prev = 0
        for k, v in enumerate(self.values, start=1):
            if v < prev or not 0 <= v <= k:
                raise ValueError(f"invalid profile entry {v} at prefix length {k}")
            prev = v

    @property
    def final(self) -> int:
        return self.values[-1] if self.values else 0


def generates(c: ConnectionPoly, t: Multisequence) -> bool:
    """True iff the recurrence ``c`` holds on every row for j in [L, n-1]."""
    fld, L = t.field, c.degree_bound
    if L > t.n:
        raise ValueError(f"degree bound {L} exceeds sequence length {t.n}")
    add, mul = fld.add_table, fld.mul_table
    for row in t.rows:
        for j in range(L, t.n):
            acc = row[j]
            for k, ck in enumerate(c.coeffs, start=1):
                acc = add[acc][mul[ck][row[j - k]]]
            if acc:
                return False
    return True


# -- oracle -----------------------------------------------------------------


def _consistent(t: Multisequence, L: int, tables) -> bool:
    """Is the system for (c_1..c_L) with length-L recurrence consistent?"""
    add, mul, neg, inv = tables
    s = np.asarray(t.rows, dtype=np.int64)
    if L == 0:
        return not s.any()
    # augmented matrix [A | b]: A[(i,j), k-1] = s_i[j-k], b = -s_i[j]
    blocks = []
    for j in range(L, t.n):
        window = s[:, j - L : j][:, ::-1]
        blocks.append(np.concatenate([window, neg[s[:, j : j + 1]]], axis=1))
    if not blocks:
        return True
    a = np.concatenate(blocks, axis=0)
    rank = 0
    for col in range(L):
        nz = np.nonzero(a[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        a[rank] = mul[inv[a[rank, col]], a[rank]]
        factors = a[:, col].copy()
        factors[rank] = 0
        rows = np.nonzero(factors)[0]
        if rows.size:
            a[rows] = add[a[rows], neg[mul[factors[rows, None], a[rank][None, :]]]]
        rank += 1
        if rank == a.shape[0]:
            break
    return not a[rank:, L].any()


def _np_tables(fld: FieldSpec):
    return (
        np.asarray(fld.add_table, dtype=np.int64),
        np.asarray(fld.mul_table, dtype=np.int64),
        np.asarray(fld.neg_table, dtype=np.int64),
        np.asarray(fld.inv_table, dtype=np.int64),
    )


def jlc_oracle(t: Multisequence) -> int:
    """Joint linear complexity by Gaussian elimination, L = 0, 1, ... upward."""
    tables = _np_tables(t.field)
    for L in range(t.n + 1):
        if _consistent(t, L, tables):
            return L
    raise AssertionError("L = n is always feasible")  # pragma: no cover


# -- fast synthesis ------------------------------------------------------------


class Synthesizer:
    """Online joint shift-register synthesis over a general F_q.

    Feed columns with :meth:`extend`; :attr:`complexity` is the joint linear
    complexity of everything fed so far.  Polynomials are coefficient lists,
    low degree first, without trailing zeros.
    """

    def __init__(self, field: FieldSpec, m: int):
        self.field = field
        self.m = m
        self.n = 0
        # identity basis: (1, 0..0) and (0, e_i); already weak Popov
        self.rows = [[[1] if c == k else [] for c in range(m + 1)] for k in range(m + 1)]
        self.info = [self._row_info(row) for row in self.rows]

    def copy(self) -> Synthesizer:
        other = object.__new__(type(self))
        other.field, other.m, other.n = self.field, self.m, self.n
        other.rows = [[list(p) for p in row] for row in self.rows]
        other.info = list(self.info)
        return other

    @staticmethod
    def _row_info(row) -> tuple[int, int]:
        best, lp = len(row[0]) - 1, 0
        for c in range(1, len(row)):
            d = len(row[c]) if row[c] else -1
            if d > best:
                best, lp = d, c
        return best, lp

    def extend(self, column: Sequence[int]) -> int:
        add, mul = self.field.add_table, self.field.mul_table
        for k, row in enumerate(self.rows):
            f = row[0]
            for i in range(self.m):
                r = [0] + row[i + 1]
                si = column[i]
                if si and f:
                    mrow = mul[si]
                    if len(f) > len(r):
                        r.extend([0] * (len(f) - len(r)))
                    for d, fd in enumerate(f):
                        r[d] = add[r[d]][mrow[fd]]
                while r and r[-1] == 0:
                    r.pop()
                row[i + 1] = r
            self.info[k] = self._row_info(row)
        self.n += 1
        self._reduce()
        return self.complexity

    def _leading(self, k: int) -> int:
        deg, lp = self.info[k]
        poly = self.rows[k][lp]
        return poly[-1]

    def _reduce(self) -> None:
        fld = self.field
        add, mul, neg = fld.add_table, fld.mul_table, fld.neg_table
        while True:
            seen: dict[int, int] = {}
            clash = None
            for k, (_, lp) in enumerate(self.info):
                if lp in seen:
                    clash = (seen[lp], k)
                    break
                seen[lp] = k
            if clash is None:
                return
            a, b = clash
            if self.info[a][0] < self.info[b][0]:
                a, b = b, a
            shift = self.info[a][0] - self.info[b][0]
            coef = neg[mul[self._leading(a)][fld.inv(self._leading(b))]]
            mrow = mul[coef]
            row_a, row_b = self.rows[a], self.rows[b]
            for c in range(self.m + 1):
                pb = row_b[c]
                if not pb:
                    continue
                pa = row_a[c]
                need = len(pb) + shift
                if len(pa) < need:
                    pa.extend([0] * (need - len(pa)))
                for d, v in enumerate(pb):
                    if v:
                        pa[d + shift] = add[pa[d + shift]][mrow[v]]
                while pa and pa[-1] == 0:
                    pa.pop()
            self.info[a] = self._row_info(row_a)

    def _minimal_row(self) -> int:
        for k, (_, lp) in enumerate(self.info):
            if lp == 0:
                return k
        raise AssertionError("basis lost its column-0 pivot")  # pragma: no cover

    @property
    def complexity(self) -> int:
        return self.info[self._minimal_row()][0]

    def connection_poly(self) -> ConnectionPoly:
        f = self.rows[self._minimal_row()][0]
        L = len(f) - 1
        lead_inv = self.field.inv(f[-1])
        mul = self.field.mul_table
        return ConnectionPoly(tuple(mul[f[L - k]][lead_inv] for k in range(1, L + 1)))


class BinarySynthesizer(Synthesizer):
    """:class:`Synthesizer` specialised to F_2, polynomials packed into ints."""

    def __init__(self, field: FieldSpec, m: int):
        if field.q != 2:
            raise ValueError("BinarySynthesizer requires q = 2")
        self.field = field
        self.m = m
        self.n = 0
        self.rows = [[1 if c == k else 0 for c in range(m + 1)] for k in range(m + 1)]
        self.info = [self._row_info(row) for row in self.rows]

    def copy(self) -> BinarySynthesizer:
        other = object.__new__(BinarySynthesizer)
        other.field, other.m, other.n = self.field, self.m, self.n
        other.rows = [list(row) for row in self.rows]
        other.info = list(self.info)
        return other

    @staticmethod
    def _row_info(row) -> tuple[int, int]:
        best, lp = row[0].bit_length() - 1, 0
        for c in range(1, len(row)):
            d = row[c].bit_length() if row[c] else -1
            if d > best:
                best, lp = d, c
        return best, lp

    def extend(self, column: Sequence[int]) -> int:
        m = self.m
        info = self.info
        for k, row in enumerate(self.rows):
            f = row[0]
            for i in range(m):
                row[i + 1] = (row[i + 1] << 1) ^ f if column[i] else row[i + 1] << 1
            info[k] = self._row_info(row)
        self.n += 1
        self._reduce()
        return self.complexity

    def _reduce(self) -> None:
        info, rows = self.info, self.rows
        width = self.m + 1
        while True:
            seen: dict[int, int] = {}
            clash = None
            for k, (_, lp) in enumerate(info):
                if lp in seen:
                    clash = (seen[lp], k)
                    break
                seen[lp] = k
            if clash is None:
                return
            a, b = clash
            if info[a][0] < info[b][0]:
                a, b = b, a
            shift = info[a][0] - info[b][0]
            row_a, row_b = rows[a], rows[b]
            for c in range(width):
                if row_b[c]:
                    row_a[c] ^= row_b[c] << shift
            info[a] = self._row_info(row_a)

    def connection_poly(self) -> ConnectionPoly:
        f = self.rows[self._minimal_row()][0]
        L = f.bit_length() - 1
        return ConnectionPoly(tuple((f >> (L - k)) & 1 for k in range(1, L + 1)))


def synthesizer(field: FieldSpec, m: int) -> Synthesizer:
    """Fastest available synthesizer for ``field``."""
    if field.q == 2:
        return BinarySynthesizer(field, m)
    return Synthesizer(field, m)


def jlc_fast(t: Multisequence) -> tuple[int, ConnectionPoly]:
    """Joint linear complexity and a minimal connection polynomial."""
    syn = synthesizer(t.field, t.m)
    for j in range(t.n):
        syn.extend(t.column(j))
    return syn.complexity, syn.connection_poly()


def jlc_profile(t: Multisequence) -> ComplexityProfile:
    syn = synthesizer(t.field, t.m)
    return ComplexityProfile(tuple(syn.extend(t.column(j)) for j in range(t.n)))
