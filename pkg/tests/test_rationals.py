from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from complegs.errors import CFDivisionByZero, DomainError
from complegs.rationals import (
    CFString,
    as_rational,
    cf_evaluate,
    cf_expand,
    cf_reciprocal,
    cf_reverse_value,
    format_cf,
    format_rational,
    i_value,
    lemma_equiv_check,
    mod_inverse,
    parse_cf,
    parse_rational,
    riemenschneider_dual,
    split_framing,
    strict_strings,
)

from oracles import hj_expand, hj_value, inverse_mod

strict_entries = st.lists(st.integers(2, 9), min_size=1, max_size=7).map(tuple)


@st.composite
def rationals_above_one(draw):
    q = draw(st.integers(1, 200))
    p = draw(st.integers(q + 1, q + 400))
    return Fraction(p, q)


@pytest.mark.parametrize("x, expected", [
    (Fraction(3), (3,)),
    (Fraction(7, 5), (2, 2, 3)),
    (Fraction(9, 2), (5, 2)),
])
def test_expand_examples(x, expected):
    assert cf_expand(x).entries == expected
    assert tuple(hj_expand(x)) == expected


@pytest.mark.parametrize("entries, value", [
    ((2, 2), Fraction(3, 2)),
    ((1,), Fraction(1)),
    ((4, 2), Fraction(7, 2)),
])
def test_evaluate_examples(entries, value):
    assert cf_evaluate(entries) == value == hj_value(list(entries))


def test_evaluate_rejects_zero_denominator():
    with pytest.raises(CFDivisionByZero):
        cf_evaluate((2, 1, 1))  # 1 - 1/1 = 0 midway
    with pytest.raises(DomainError):
        cf_evaluate(())


def test_expand_domain():
    for bad in (Fraction(1), Fraction(1, 2), Fraction(-3, 2)):
        with pytest.raises(DomainError):
            cf_expand(bad)


@pytest.mark.parametrize("s, dual", [
    ((2,), (2,)),
    ((2, 2, 3), (4, 2)),
    ((5, 2), (2, 2, 2, 3)),
])
def test_dual_examples(s, dual):
    assert riemenschneider_dual(s).entries == dual
    v = hj_value(list(s))
    assert hj_value(list(dual)) == Fraction(v.numerator, v.numerator - v.denominator)


def test_dual_of_nine_halves_is_nine_sevenths():
    # 9/2 -> 9/7, whose expansion is [2,2,2,3]
    assert riemenschneider_dual((5, 2)).value() == Fraction(9, 7)
    assert tuple(hj_expand(Fraction(9, 7))) == (2, 2, 2, 3)


@pytest.mark.parametrize("q, p, inv", [(1, 4, 1), (2, 5, 3), (2, 9, 5)])
def test_mod_inverse(q, p, inv):
    assert mod_inverse(q, p) == inv == inverse_mod(q, p)


def test_mod_inverse_non_coprime():
    with pytest.raises(DomainError):
        mod_inverse(2, 4)


@pytest.mark.parametrize("s, rev", [
    ((3, 2), Fraction(5, 3)),
    ((2, 2, 2, 2), Fraction(5, 4)),
    ((5, 2), Fraction(9, 5)),
])
def test_reverse_value(s, rev):
    assert cf_reverse_value(s) == rev == hj_value(list(s)[::-1])


@pytest.mark.parametrize("s, i", [((3,), 0), ((5, 2), 1), ((2, 2, 3), -2)])
def test_i_value(s, i):
    assert i_value(s) == i


@pytest.mark.parametrize("x, n, s", [
    (Fraction(-7, 3), 3, (2, 2)),
    (Fraction(-2), 2, ()),
    (Fraction(-5, 4), 2, (2, 2, 2)),
])
def test_split_framing_examples(x, n, s):
    got_n, got_s = split_framing(x)
    assert (got_n, got_s.entries) == (n, s)
    assert -got_n + cf_reciprocal(got_s) == x


def test_split_framing_spec_example_correction():
    # 1/[2,2,2,2] = 4/5, not 3/4, so [2,2,2,2] cannot be the string for -5/4
    assert -2 + cf_reciprocal((2, 2, 2, 2)) != Fraction(-5, 4)
    assert -2 + cf_reciprocal((2, 2, 2)) == Fraction(-5, 4)


@pytest.mark.parametrize("s, pair", [
    ((2, 3), (2, 2)),
    ((2, 2, 4), (3, 3)),
    ((2, 5), (4, 4)),
])
def test_lemma_equiv_examples(s, pair):
    assert lemma_equiv_check(s) == tuple(Fraction(x) for x in pair)


def test_parsing_and_formatting():
    assert parse_rational(" -7/3 ") == Fraction(-7, 3)
    assert parse_rational("4") == 4
    assert format_rational(Fraction(6, 4)) == "3/2"
    assert format_rational(Fraction(-2)) == "-2"
    assert parse_cf("[2, 2,3]") == CFString((2, 2, 3))
    assert parse_cf("[]") == CFString(())
    assert format_cf((2, 2, 3)) == "[2,2,3]"
    assert as_rational("3/6") == Fraction(1, 2)
    for bad in ("1/0", "x", "1/2/3", ""):
        with pytest.raises(DomainError):
            parse_rational(bad)
    assert parse_cf("2,3") == CFString((2, 3))
    for bad in ("[2,,3]", "[a]", "[2.5]"):
        with pytest.raises(DomainError):
            parse_cf(bad)


def test_strict_strings_enumeration():
    got = list(strict_strings(2, 3))
    assert len(got) == 2 + 4
    assert all(s.strict for s in got)


# ---------------------------------------------------------------------------
# properties


@given(rationals_above_one())
def test_expand_round_trip(x):
    s = cf_expand(x)
    assert s.strict
    assert cf_evaluate(s) == x
    assert list(s) == hj_expand(x)


@given(strict_entries)
def test_evaluate_matches_oracle(e):
    assert cf_evaluate(e) == hj_value(list(e))


@given(strict_entries)
def test_dual_is_involution_with_value_rule(e):
    s = CFString(e)
    v = s.value()
    if v == 1:
        return
    d = riemenschneider_dual(s)
    assert d.strict
    assert d.value() == Fraction(v.numerator, v.numerator - v.denominator)
    assert riemenschneider_dual(d) == s
    assert i_value(s) == len(d) - len(s) - 1


@given(strict_entries)
def test_reversal_is_mod_inverse(e):
    s = CFString(e)
    p, q = s.value().numerator, s.value().denominator
    r = cf_reverse_value(s)
    assert r.numerator == p
    if q > 1:
        assert (q * r.denominator) % p == 1


@given(st.fractions().filter(lambda x: x.denominator < 10 ** 6))
def test_split_framing_rebuilds(x):
    n, s = split_framing(x)
    assert -n + cf_reciprocal(s) == x
    assert not s.entries or s.strict
    assert 0 <= cf_reciprocal(s) < 1
