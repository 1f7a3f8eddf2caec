import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from msow.omegaset import (
    FALSE,
    TRUE,
    UNKNOWN,
    GapTag,
    OmegaSet,
    Truth,
    canonical,
    format_set,
    parse_set,
    pi_digits,
)

N = 200

bitstrings = st.text(alphabet="01", max_size=12)
lassos = st.builds(OmegaSet.lasso, bitstrings, st.text(alphabet="01", min_size=1, max_size=8))


def test_kleene_tables():
    assert (TRUE & UNKNOWN) is UNKNOWN
    assert (FALSE & UNKNOWN) is FALSE
    assert (TRUE | UNKNOWN) is TRUE
    assert (FALSE | UNKNOWN) is UNKNOWN
    assert ~UNKNOWN is UNKNOWN and ~TRUE is FALSE
    assert Truth.of(True) is TRUE


def test_parse_and_format():
    for text in ["finite{3,5,8}", "lasso{prefix=0110;period=10}", "proc{name=pow2}", "proc{name=multiples;k=10}"]:
        s = parse_set(text)
        assert format_set(parse_set(format_set(s))) == format_set(s)
    assert list(parse_set("finite{3,5,8}").members_below(N)) == [3, 5, 8]
    with pytest.raises(ValueError):
        parse_set("lasso{prefix=01;period=}")
    with pytest.raises(ValueError):
        parse_set("proc{name=nope}")


def test_registry_members():
    assert list(parse_set("proc{name=pow2}").members_below(40)) == [1, 2, 4, 8, 16, 32]
    assert list(parse_set("proc{name=squares}").members_below(30)) == [0, 1, 4, 9, 16, 25]
    assert list(parse_set("proc{name=multiples;k=10}").members_below(35)) == [0, 10, 20, 30]
    # decimals of pi after the point
    assert pi_digits(6) == "141592"
    # the m-th member sits at 10m + (m-th digit), digits counted from 1
    assert list(parse_set("proc{name=pidigits}").members_below(60)) == [11, 24, 31, 45, 59]


def test_tags():
    assert parse_set("proc{name=pow2}").tag is GapTag.UNBOUNDED_GAPS
    assert parse_set("proc{name=multiples;k=10}").tag is GapTag.BOUNDED_GAPS
    assert parse_set("proc{name=pidigits}").tag is GapTag.BOUNDED_GAPS


@settings(max_examples=200, deadline=None)
@given(lassos, lassos)
def test_boolean_ops_match_bits(a, b):
    x, y = a.bits(N), b.bits(N)
    assert np.array_equal((a & b).bits(N), x & y)
    assert np.array_equal((a | b).bits(N), x | y)
    assert np.array_equal((a - b).bits(N), x & ~y)
    assert np.array_equal(a.complement().bits(N), ~x)
    assert (a | b).is_lasso


@settings(max_examples=200, deadline=None)
@given(lassos)
def test_canonical_is_same_set(a):
    c = canonical(a)
    assert np.array_equal(c.bits(N), a.bits(N))
    assert a.same_as(c) is TRUE
    assert canonical(c) == c


@settings(max_examples=200, deadline=None)
@given(lassos)
def test_infinite_and_empty(a):
    tail = a.bits(N + 64)[N:]
    assert a.is_infinite() is Truth.of(bool(tail.any()))
    assert a.is_empty() is Truth.of(not a.bits(N + 64).any())


def test_procedural_facts_are_three_valued():
    p = parse_set("proc{name=pow2}")
    assert p.is_infinite() is TRUE
    assert p.same_as(parse_set("proc{name=squares}")) is FALSE
    assert p.same_as(p) in (TRUE, UNKNOWN)
