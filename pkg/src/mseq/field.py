"""Finite field arithmetic for F_q, q = p^e <= 256.

Elements are plain integers in ``[0, q)``.  For ``e > 1`` an element is the
base-``p`` digit encoding of its coefficient vector over F_p, lowest digit =
constant term, so ``x + 1`` in F_4 is ``0b11 = 3`` and ``2x + 1`` in F_9 is
``2*3 + 1 = 7``.  This encoding is also the on-disk symbol encoding.

All arithmetic is table driven: the full addition, multiplication, negation
and inversion tables are built once at construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

MAX_Q = 256

# Irreducible moduli, coefficients low degree first.
DEFAULT_MODULI: dict[int, tuple[int, ...]] = {
    4: (1, 1, 1),  # x^2 + x + 1
    8: (1, 1, 0, 1),  # x^3 + x + 1
    9: (2, 2, 1),  # x^2 + 2x + 2
    16: (1, 1, 0, 0, 1),  # x^4 + x + 1
    25: (2, 4, 1),  # x^2 + 4x + 2
    27: (1, 2, 0, 1),  # x^3 + 2x + 1
    32: (1, 0, 1, 0, 0, 1),  # x^5 + x^2 + 1
    49: (3, 6, 1),  # x^2 + 6x + 3
    64: (1, 1, 0, 1, 1, 0, 1),  # x^6 + x^4 + x^3 + x + 1
    81: (2, 0, 0, 2, 1),  # x^4 + 2x^3 + 2
    125: (3, 3, 0, 1),  # x^3 + 3x + 3
    128: (1, 1, 0, 0, 0, 0, 0, 1),  # x^7 + x + 1
    243: (1, 2, 0, 0, 0, 1),  # x^5 + 2x + 1
    256: (1, 0, 1, 1, 1, 0, 0, 0, 1),  # x^8 + x^4 + x^3 + x^2 + 1
}


class FieldError(ValueError):
    """Base class for field construction and element errors."""


class NotPrimePower(FieldError):
    pass


class ReducibleModulus(FieldError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, e)`` with ``q == p**e`` and p prime, or None."""
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    return (p, e) if r == 1 else None


# -- polynomials over F_p, coefficient lists low degree first ---------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod_p(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim(list(a))
    b = _trim(list(b))
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        coef = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * bi) % p
        _trim(a)
    return a


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    poly = _trim(list(poly))
    deg = len(poly) - 1
    if deg < 1 or poly[-1] % p == 0:
        return False
    for d in range(1, deg // 2 + 1):
        for low in range(p**d):
            divisor = [(low // p**i) % p for i in range(d)] + [1]
            if not _polymod_p(poly, divisor, p):
                return False
    return True


def _to_digits(a: int, p: int, e: int) -> list[int]:
    return [(a // p**i) % p for i in range(e)]


def _from_digits(digits: Sequence[int], p: int) -> int:
    return sum(d * p**i for i, d in enumerate(digits))


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """The field F_q with precomputed operation tables.

    Use :func:`field_make` to construct.  Instances are immutable and are
    cheap to share across processes (they pickle by parameters).
    """

    q: int
    p: int
    e: int
    modulus: tuple[int, ...] | None
    add_table: tuple[tuple[int, ...], ...] = field(repr=False)
    mul_table: tuple[tuple[int, ...], ...] = field(repr=False)
    neg_table: tuple[int, ...] = field(repr=False)
    inv_table: tuple[int, ...] = field(repr=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.q, self.modulus) == (other.q, other.modulus)

    def __hash__(self) -> int:
        return hash((self.q, self.modulus))

    def __reduce__(self):
        return (field_make, (self.q, self.modulus))

    @property
    def is_prime(self) -> bool:
        return self.e == 1

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in F_{self.q}")
        return self.inv_table[a]

    def div(self, a: int, b: int) -> int:
        return self.mul_table[a][self.inv(b)]

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        result = 1
        while k:
            if k & 1:
                result = self.mul_table[result][a]
            a = self.mul_table[a][a]
            k >>= 1
        return result

    def element(self, value: int) -> FieldElement:
        return FieldElement(self, value)

    def check(self, value: int) -> int:
        if not 0 <= value < self.q:
            raise FieldError(f"symbol {value} outside [0, {self.q})")
        return value


@dataclass(frozen=True)
class FieldElement:
    """An element of ``field`` with operator overloading.

    Convenient for interactive use; the hot loops use raw ints and tables.
    """

    field: FieldSpec
    value: int

    def __post_init__(self):
        self.field.check(self.value)

    def _other(self, other: FieldElement | int) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError("operands belong to different fields")
            return other.value
        return self.field.check(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._other(other)))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._other(other)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, k: int):
        return FieldElement(self.field, self.field.pow(self.value, k))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.value))

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0


def field_make(q: int, modulus_override: Sequence[int] | None = None) -> FieldSpec:
    """Build F_q.

    ``modulus_override`` is a coefficient vector (low degree first) of a
    monic-or-not irreducible polynomial of degree e over F_p; it is ignored
    for prime q only if it is None.
    """
    if not 2 <= q <= MAX_Q:
        raise FieldError(f"q must lie in [2, {MAX_Q}], got {q}")
    pe = prime_power(q)
    if pe is None:
        raise NotPrimePower(f"{q} is not a prime power")
    modulus = tuple(modulus_override) if modulus_override is not None else None
    return _build(q, modulus)


@lru_cache(maxsize=None)
def _build(q: int, modulus: tuple[int, ...] | None) -> FieldSpec:
    p, e = prime_power(q)
    if e == 1:
        if modulus is not None:
            raise ReducibleModulus(f"prime field F_{q} takes no modulus")
        add = tuple(tuple((a + b) % p for b in range(q)) for a in range(q))
        mul = tuple(tuple((a * b) % p for b in range(q)) for a in range(q))
        neg = tuple((-a) % p for a in range(q))
        inv = (0,) + tuple(pow(a, p - 2, p) for a in range(1, q))
        return FieldSpec(q, p, e, None, add, mul, neg, inv)

    if modulus is None:
        modulus = DEFAULT_MODULI[q]
    modulus = tuple(c % p for c in modulus)
    trimmed = _trim(list(modulus))
    if len(trimmed) - 1 != e:
        raise ReducibleModulus(f"modulus must have degree {e}, got {len(trimmed) - 1}")
    if not is_irreducible(trimmed, p):
        raise ReducibleModulus(f"modulus {trimmed} is reducible over F_{p}")
    # normalise to monic
    lead_inv = pow(trimmed[-1], p - 2, p)
    modulus = tuple(c * lead_inv % p for c in trimmed)

    digits = [_to_digits(a, p, e) for a in range(q)]
    add = tuple(
        tuple(_from_digits([(x + y) % p for x, y in zip(digits[a], digits[b])], p) for b in range(q))
        for a in range(q)
    )
    neg = tuple(_from_digits([(-x) % p for x in digits[a]], p) for a in range(q))
    mul_rows = []
    for a in range(q):
        row = []
        for b in range(q):
            prod = [0] * (2 * e - 1)
            for i, x in enumerate(digits[a]):
                if x:
                    for j, y in enumerate(digits[b]):
                        prod[i + j] = (prod[i + j] + x * y) % p
            red = _polymod_p(prod, modulus, p)
            row.append(_from_digits(red + [0] * (e - len(red)), p))
        mul_rows.append(tuple(row))
    mul = tuple(mul_rows)
    inv = [0] * q
    for a in range(1, q):
        inv[a] = mul[a].index(1)
    return FieldSpec(q, p, e, modulus, add, mul, neg, tuple(inv))
