import math
from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings, strategies as st

from complegs.classify import (
    FillingVerdict,
    Kind,
    Rule,
    Smooth,
    Spherical,
    SymplecticCount,
    corollary_bound_check,
    figure2_lens,
    orientation_pair,
    pq_prime_member,
    smooth_verdict,
    spherical_seifert,
    spherical_table,
    symplectic_verdict,
    theta_canonical_of,
    theta_gate,
)
from complegs.errors import DomainError, InvariantViolation
from complegs.rationals import CFString, cf_evaluate
from complegs.seifert import SeifertData, reverse_orientation, seifert_to_plumbing, y_mhn

from oracles import lisca_brute

Y = SeifertData.parse


@st.composite
def complementary_spaces(draw, e0=st.integers(-5, 4)):
    b1 = draw(st.integers(2, 9))
    a1 = draw(st.integers(1, b1 - 1).filter(lambda a: math.gcd(a, b1) == 1))
    b2 = draw(st.integers(2, 30))
    a2 = draw(st.integers(1, b2 - 1).filter(lambda a: math.gcd(a, b2) == 1))
    y = SeifertData(draw(e0), (F(a1, b1), F(a2, b2), 1 - F(a1, b1)))
    assume(y.is_qhs)
    return y


def verdict(text):
    return symplectic_verdict(Y(text))


# ---------------------------------------------------------------------------
# concrete cases


@pytest.mark.parametrize("text", ["-2;1/2,1/3,1/2", "-2;1/3,1/2,2/3", "-3;1/2,1/5,1/2", "-4;2/5,3/7,3/5"])
def test_negative_e0_never_fills(text):
    v = verdict(text)
    assert v.symplectic.is_none
    assert v.rule_fired is Rule.NEGATIVE_E0


def test_y213():
    v = verdict("-1;1/2,4/11,1/2")
    assert v.symplectic == SymplecticCount.exactly(4)
    assert v.uniqueness_note == 4
    assert v.smooth is Smooth.Bounds


def test_y212_has_six():
    assert verdict("-1;1/2,4/7,1/2").symplectic == SymplecticCount.exactly(6)


@pytest.mark.parametrize("text, count", [
    ("-1;1/2,1/2,1/2", 3),  # M_2
    ("-1;1/2,1/3,1/2", 2),
    ("-1;1/2,1/7,1/2", 2),
    ("-1;2/3,1/2,1/3", 3),  # -T_3
])
def test_special_cases(text, count):
    v = verdict(text)
    assert v.symplectic == SymplecticCount.exactly(count)
    assert v.rule_fired is Rule.SPECIAL_CASE


def test_t3_canonical_orientation():
    v = verdict("-2;1/3,1/2,2/3")
    assert v.symplectic.is_none and v.smooth is Smooth.Bounds


def test_dihedral_nonnegative():
    assert verdict("0;1/2,1/3,1/2").symplectic == SymplecticCount.exactly(4)
    assert verdict("1;1/2,1/4,1/2").symplectic == SymplecticCount.exactly(4)
    # not of the balanced form
    for text in ("0;1/2,1/2,1/2", "0;1/2,2/5,1/2", "3;1/2,1/3,1/2"):
        v = verdict(text)
        assert v.symplectic.is_none
        assert v.rule_fired is Rule.DIHEDRAL_NONNEG


def test_uniquely_complementary_counts():
    lower = verdict("-1;1/5,4/23,4/5")
    assert lower.symplectic == SymplecticCount.at_least(2)
    assert lower.uniqueness_note == 10
    exact = verdict("-1;3/8,1/4,5/8")
    assert exact.symplectic == SymplecticCount.exactly(4)
    assert exact.rule_fired is Rule.UNIQUELY_COMPLEMENTARY


def test_not_uniquely_complementary_is_open():
    v = verdict("-1;1/3,4/11,2/3")
    assert v.symplectic.kind is Kind.OutOfTheoremScope
    assert v.rule_fired is Rule.OPEN


def test_balanced_range_and_residue():
    v = verdict("2;1/3,1/5,2/3")
    assert v.symplectic == SymplecticCount.between(4, 8)
    w = verdict("0;1/3,1/7,2/3")
    assert w.rule_fired in (Rule.BALANCED, Rule.SMOOTH_OBSTRUCTION)


def test_smooth_obstruction():
    v = verdict("0;1/3,1/4,2/3")
    assert v.smooth is Smooth.DoesNotBound
    assert v.symplectic.is_none
    assert v.rule_fired is Rule.SMOOTH_OBSTRUCTION


def test_sphere_chain_bounds():
    # Y(-1; 1/2, 1/2, 1/2): the lens space in the -1 framed picture is S^3
    y = Y("-1;1/2,1/2,1/2")
    assert figure2_lens(y) == CFString(())
    assert smooth_verdict(y) == (True, None)
    assert theta_gate(y) == -2


def test_domain_errors():
    # with a complementary pair e0 + r1 + r2 + r3 = e0 + 1 + r2 is never zero,
    # so a missing pair is the only way to fall outside the domain
    with pytest.raises(DomainError):
        verdict("0;1/3,1/3,1/3")
    with pytest.raises(DomainError):
        smooth_verdict(Y("-1;1/3,1/4,1/5"))


def test_verdict_json():
    j = verdict("-2;1/2,1/3,1/2").to_json()
    assert j["symplectic"] == {"kind": "None"}
    assert j["rule"] == Rule.NEGATIVE_E0.value
    assert verdict("-1;1/2,4/11,1/2").to_json()["symplectic"] == {"kind": "Exactly", "count": 4}
    assert SymplecticCount.between(4, 6).to_json() == {"kind": "Range", "lo": 4, "hi": 6}
    assert str(SymplecticCount.at_most(2)) == "AtMost(2)"


def test_verdict_invariant_guard():
    with pytest.raises(InvariantViolation):
        FillingVerdict(Smooth.DoesNotBound, None, SymplecticCount.exactly(1), Rule.SPHERICAL)


# ---------------------------------------------------------------------------
# spherical manifolds


@pytest.mark.parametrize("s, count", [
    (Spherical.lens(3, 1), 2),
    (Spherical.dihedral_neg(2, 1, 2), 6),
    (Spherical.dihedral_neg(2, 1, 3), 4),
    (Spherical.t_minus_3(), 3),
    (Spherical.dihedral_neg(1, 0, 2), 2),
    (Spherical.dihedral_neg(1, 0, 1), 3),
])
def test_spherical_table(s, count):
    assert spherical_table(s) == count


def test_spherical_table_matches_classifier():
    for m in range(1, 7):
        for h in range(0, m):
            if (m == 1) != (h == 0) or math.gcd(m, h) != 1:
                continue
            for n in range(1 if m == 1 else 2, 6):
                s = Spherical.dihedral_neg(m, h, n)
                v = symplectic_verdict(spherical_seifert(s))
                assert v.symplectic == SymplecticCount.exactly(spherical_table(s)), (m, h, n)
    assert symplectic_verdict(spherical_seifert(Spherical.t_minus_3())).symplectic == SymplecticCount.exactly(3)


def test_spherical_table_rejects():
    with pytest.raises(DomainError):
        spherical_table(Spherical.lens(4, 2))
    with pytest.raises(DomainError):
        spherical_table(Spherical("Octahedral"))


def test_corollary_bound():
    full = [symplectic_verdict(y_mhn(m, h, n)) for m, h, n in [(1, 0, 1), (1, 0, 3), (2, 1, 2), (3, 1, 4)]]
    assert corollary_bound_check(full)
    fake = FillingVerdict(Smooth.Bounds, None, SymplecticCount.exactly(7), Rule.SPHERICAL)
    assert not corollary_bound_check([fake])
    assert corollary_bound_check([])


# ---------------------------------------------------------------------------
# properties


@settings(max_examples=300, deadline=None)
@given(complementary_spaces())
def test_classifier_invariants(y):
    v, w = orientation_pair(y)
    # symplectic fillings are smooth fillings
    if v.symplectic.positive:
        assert v.smooth is Smooth.Bounds
        assert theta_gate(y) == -2
    # at most one orientation carries a filled structure
    assert v.symplectic.is_none or w.symplectic.is_none or \
        v.symplectic.kind is Kind.OutOfTheoremScope or w.symplectic.kind is Kind.OutOfTheoremScope
    # smooth bounding does not see orientation
    assert v.smooth == w.smooth
    assert reverse_orientation(reverse_orientation(y)) == y


@settings(max_examples=200, deadline=None)
@given(complementary_spaces())
def test_smooth_verdict_matches_brute_force(y):
    bounds, _ = smooth_verdict(y)
    a2 = figure2_lens(y)
    if not a2.entries:
        assert bounds
        return
    v = cf_evaluate(a2)
    assert bounds == lisca_brute(v.numerator, v.denominator)


@settings(max_examples=200, deadline=None)
@given(complementary_spaces(e0=st.integers(-5, -2)))
def test_canonical_theta_above_minus_two(y):
    _, a2ext = seifert_to_plumbing(y)
    if pq_prime_member(a2ext):
        assert theta_canonical_of(y) > -2
