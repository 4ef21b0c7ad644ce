import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mseq.field import FieldError, field_make
from mseq.lfsr import (
    BinarySynthesizer,
    ComplexityProfile,
    ConnectionPoly,
    Multisequence,
    Synthesizer,
    generates,
    jlc_fast,
    jlc_oracle,
    jlc_profile,
)

F2, F3 = field_make(2), field_make(3)


def ms(field, *rows):
    return Multisequence.from_rows(field, rows)


def brute_complexity(t):
    """Smallest L for which some connection polynomial generates t."""
    for L in range(t.n + 1):
        for cs in itertools.product(range(t.field.q), repeat=L):
            if generates(ConnectionPoly(cs), t):
                return L


@st.composite
def multisequences(draw, qs=(2, 3, 4, 5), max_m=4, max_n=16):
    q = draw(st.sampled_from(qs))
    m = draw(st.integers(1, max_m))
    n = draw(st.integers(0, max_n))
    rows = draw(st.lists(st.lists(st.integers(0, q - 1), min_size=n, max_size=n), min_size=m, max_size=m))
    return Multisequence.from_rows(field_make(q), rows)


# -- worked examples---------------------------------------------------------------

CASES = [
    (ms(F2, (0,) * 5), 0),
    (ms(F3, (0, 0, 0), (0, 0, 0)), 0),
    (ms(F2, (0, 0, 0, 0, 1)), 5),
    (ms(F2, (0, 1), (1, 0)), 2),
    (ms(F2, (1, 1, 0)), 2),
]


@pytest.mark.parametrize("t, expected", CASES)
def test_oracle_examples(t, expected):
    assert jlc_oracle(t) == expected
    assert brute_complexity(t) == expected


@pytest.mark.parametrize("t, expected", CASES)
def test_fast_examples(t, expected):
    L, witness = jlc_fast(t)
    assert L == expected
    assert witness.degree_bound == L
    assert generates(witness, t)


def test_profile_examples():
    assert jlc_profile(ms(F2, (1, 1, 0))).values == (1, 1, 2)
    assert jlc_profile(Multisequence.zeros(F2, 2, 5)).values == (0,) * 5
    assert jlc_profile(ms(F2, (0, 1), (1, 0))).values == (1, 2)


def test_empty_sequence():
    t = Multisequence.zeros(F3, 3, 0)
    assert jlc_oracle(t) == 0
    assert jlc_fast(t) == (0, ConnectionPoly(()))
    assert jlc_profile(t).values == ()


def test_generates_examples():
    assert generates(ConnectionPoly(()), Multisequence.zeros(F2, 2, 4))
    assert not generates(ConnectionPoly(()), ms(F2, (0, 0, 1, 0)))
    assert generates(ConnectionPoly((1,)), ms(F2, (1, 1, 1, 1)))
    with pytest.raises(ValueError):
        generates(ConnectionPoly((1, 1, 1)), ms(F2, (1, 1)))


def test_validation():
    with pytest.raises(FieldError):
        ms(F2, (0, 2))
    with pytest.raises(ValueError):
        ms(F2, (0, 1), (1,))
    with pytest.raises(ValueError):
        ComplexityProfile((1, 0))
    with pytest.raises(ValueError):
        ComplexityProfile((2,))


# -- agreement between the two routes ------------------------------------------------


@pytest.mark.parametrize("m", [1, 2])
def test_exhaustive_agreement_q2(m):
    for n in range(7):
        for bits in itertools.product(range(2), repeat=m * n):
            t = Multisequence.from_rows(F2, (bits[i * n : (i + 1) * n] for i in range(m)))
            L, w = jlc_fast(t)
            assert L == jlc_oracle(t), t.rows
            assert generates(w, t)


def test_oracle_matches_brute_force_q3():
    rng = random.Random(3)
    for _ in range(150):
        n = rng.randint(0, 7)
        m = rng.randint(1, 3)
        t = Multisequence.from_rows(F3, ([rng.randrange(3) for _ in range(n)] for _ in range(m)))
        assert jlc_oracle(t) == brute_complexity(t)


def test_random_q3_m2_n12():
    rng = random.Random(12)
    for _ in range(200):
        t = Multisequence.from_rows(F3, ([rng.randrange(3) for _ in range(12)] for _ in range(2)))
        assert jlc_fast(t)[0] == jlc_oracle(t)


def test_generic_and_binary_synthesizers_agree():
    rng = random.Random(5)
    for _ in range(300):
        m, n = rng.randint(1, 4), rng.randint(0, 30)
        cols = [[rng.randrange(2) for _ in range(m)] for _ in range(n)]
        a, b = Synthesizer(F2, m), BinarySynthesizer(F2, m)
        for c in cols:
            assert a.extend(c) == b.extend(c)
        assert a.connection_poly() == b.connection_poly()


@settings(max_examples=300, deadline=None)
@given(multisequences())
def test_fast_equals_oracle(t):
    L, w = jlc_fast(t)
    assert L == jlc_oracle(t)
    assert w.degree_bound == L and generates(w, t)


@settings(max_examples=150, deadline=None)
@given(multisequences(qs=(2, 3), max_m=3, max_n=8))
def test_witness_is_minimal(t):
    L, _ = jlc_fast(t)
    if L > 0:
        assert not any(
            generates(ConnectionPoly(cs), t) for cs in itertools.product(range(t.field.q), repeat=L - 1)
        )


# -- structural properties ----------------------------------------------------------------


@settings(max_examples=200, deadline=None)
@given(multisequences())
def test_profile_monotone_and_final(t):
    prof = jlc_profile(t)
    assert len(prof.values) == t.n
    assert all(a <= b for a, b in zip(prof.values, prof.values[1:]))
    assert all(0 <= v <= k for k, v in enumerate(prof.values, start=1))
    assert prof.final == jlc_oracle(t)


@settings(max_examples=150, deadline=None)
@given(multisequences(max_m=3), st.data())
def test_adding_a_row_never_decreases(t, data):
    extra = data.draw(st.lists(st.integers(0, t.field.q - 1), min_size=t.n, max_size=t.n))
    bigger = Multisequence(t.field, t.rows + (tuple(extra),))
    assert jlc_oracle(bigger) >= jlc_oracle(t)


@settings(max_examples=150, deadline=None)
@given(multisequences(qs=(3, 4, 5, 7)), st.data())
def test_row_permutation_and_scaling_invariance(t, data):
    base = jlc_oracle(t)
    perm = data.draw(st.permutations(range(t.m)))
    scales = data.draw(st.lists(st.integers(1, t.field.q - 1), min_size=t.m, max_size=t.m))
    mul = t.field.mul
    changed = Multisequence.from_rows(t.field, ([mul(scales[k], v) for v in t.rows[i]] for k, i in enumerate(perm)))
    assert jlc_oracle(changed) == base
    assert jlc_fast(changed)[0] == base


def test_extension_field_q9_and_q16():
    rng = random.Random(9)
    for q in (8, 9, 16):
        f = field_make(q)
        for _ in range(60):
            m, n = rng.randint(1, 3), rng.randint(0, 14)
            t = Multisequence.from_rows(f, ([rng.randrange(q) for _ in range(n)] for _ in range(m)))
            assert jlc_fast(t)[0] == jlc_oracle(t)
