import math
from itertools import product

import pytest
from hypothesis import given, strategies as st

from pesect.errors import UsageError
from pesect.words import (
    Word,
    canonical_rotation,
    minimal_words,
    parse_word,
    precedes,
    rank_word,
    rotate,
    unrank_word,
)


def W(s, N=3):
    return parse_word(s, N)


@st.composite
def words(draw, max_len=8):
    N = draw(st.integers(2, 4))
    letters = draw(st.lists(st.integers(1, N), min_size=1, max_size=max_len))
    return Word(tuple(letters), N)


def brute_force_class_count(N, k):
    # group by the full set of rotations, not by minimum
    classes = {frozenset(w[t:] + w[:t] for t in range(k)) for w in product(range(1, N + 1), repeat=k)}
    return len(classes)


def necklace_count(N, k):
    phi = lambda n: sum(1 for a in range(1, n + 1) if math.gcd(a, n) == 1)
    return sum(phi(d) * N ** (k // d) for d in range(1, k + 1) if k % d == 0) // k


def test_rotate_examples():
    assert rotate(W("123"), 1).letters == (2, 3, 1)
    assert rotate(W("11", 2), 1).letters == (1, 1)
    assert rotate(W("311322"), 1).letters == (1, 1, 3, 2, 2, 3)
    assert rotate(W("123"), 4) == rotate(W("123"), 1)


def test_precedes_examples():
    assert precedes(W("12"), W("21"))
    assert precedes(W("12"), W("12"))
    assert not precedes(W("21"), W("12"))


def test_precedes_mismatch():
    with pytest.raises(UsageError):
        precedes(W("12"), W("123"))
    with pytest.raises(UsageError):
        precedes(W("12", 2), W("12", 3))


def test_canonical_rotation_examples():
    r = canonical_rotation(W("21"))
    assert (r.letters, r.period) == ((1, 2), 2)
    r = canonical_rotation(W("311322"))
    assert (r.letters, r.period) == ((1, 1, 3, 2, 2, 3), 6)
    r = canonical_rotation(W("1212", 2))
    assert (r.letters, r.period) == ((1, 2, 1, 2), 2)
    assert r.is_periodic


def test_minimal_words_examples():
    assert [r.letters for r in minimal_words(2, 1)] == [(1,), (2,)]
    assert [r.letters for r in minimal_words(2, 2)] == [(1, 1), (1, 2), (2, 2)]
    assert len(minimal_words(3, 2)) == brute_force_class_count(3, 2) == 6


def test_minimal_words_invalid():
    with pytest.raises(UsageError):
        minimal_words(1, 3)
    with pytest.raises(UsageError):
        minimal_words(2, 0)


@pytest.mark.parametrize("N", [2, 3])
@pytest.mark.parametrize("k", range(1, 9))
def test_minimal_word_count_matches_oracles(N, k):
    reps = minimal_words(N, k)
    assert len(reps) == brute_force_class_count(N, k) == necklace_count(N, k)
    assert [r.letters for r in reps] == sorted(r.letters for r in reps)


def test_rank_examples():
    assert rank_word(W("11")) == 0
    assert rank_word(W("23")) == 5
    assert unrank_word(2, 3, 7).letters == (2, 2, 2)
    with pytest.raises(UsageError):
        unrank_word(2, 3, 8)


def test_word_validation():
    with pytest.raises(UsageError):
        Word((), 2)
    with pytest.raises(UsageError):
        Word((0, 1), 2)
    with pytest.raises(UsageError):
        W("14")


def test_textual_syntax():
    assert str(W("113223")) == "113223"
    w = parse_word("1,10,2", 10)
    assert w.letters == (1, 10, 2)
    assert str(w) == "1,10,2"


@given(words(), st.integers(-20, 20))
def test_canonical_rotation_is_rotation_invariant(J, t):
    assert canonical_rotation(rotate(J, t)) == canonical_rotation(J)


@given(words())
def test_canonical_is_least_rotation(J):
    rep = canonical_rotation(J).word
    for t in range(len(J)):
        assert precedes(rep, rotate(J, t))


@given(words())
def test_period(J):
    rep = canonical_rotation(J)
    assert len(J) % rep.period == 0
    assert rotate(J, rep.period) == J
    n_distinct = len({rotate(J, t).letters for t in range(len(J))})
    assert (rep.period == len(J)) == (n_distinct == len(J))
    assert n_distinct == rep.period


@given(words(), words())
def test_precedes_total_order(J1, J2):
    if len(J1) != len(J2) or J1.N != J2.N:
        return
    assert precedes(J1, J2) or precedes(J2, J1)
    if precedes(J1, J2) and precedes(J2, J1):
        assert J1 == J2


@given(words())
def test_rank_roundtrip(J):
    assert unrank_word(J.N, len(J), rank_word(J)) == J
