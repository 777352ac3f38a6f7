"""The nine acceptance criteria, each run at its stated tolerance (exact equality throughout)."""
import math
import time
from fractions import Fraction
from functools import lru_cache

from acceptance_log import report
from complegs import classify, lisca, plumbing, seifert, verify
from complegs.matrix import q_inverse_direct
from complegs.plumbing import XiSign
from complegs.rationals import CFString, cf_evaluate, cf_expand, i_value

# Strings of length <= 5 with entries <= 6 on either side.  The full product is
# about 1.5e7 pairs; the grid is the full product of short strings plus a sweep
# that puts each of the 3905 strings on each side.
GRID = verify.GridSpec(max_string_len=5, max_entry=6, dense_len=3, dense_entry=5)


@lru_cache(maxsize=None)
def grid_pairs():
    return tuple(verify.plumbing_pairs(GRID))


@lru_cache(maxsize=None)
def formula_thetas():
    return {pair: plumbing.theta_canonical_formula(*pair) for pair in grid_pairs()}


def test_block_inverse_equivalence():
    pairs = grid_pairs()
    t0 = time.perf_counter()
    bad = [pair for pair in pairs
           if plumbing.q_inverse_blocks(q := plumbing.assemble_q(*pair)) != q_inverse_direct(q.matrix)]
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 120
    report(1, "block inverse equals direct inverse", ok,
           f"{len(pairs)} pairs, {len(bad)} mismatches, {elapsed:.1f}s single-threaded")
    assert not bad, bad[:3]
    assert elapsed < 120


def test_theta_paths_agree():
    pairs = grid_pairs()
    thetas = formula_thetas()
    bad = [pair for pair in pairs if thetas[pair] != plumbing.theta_canonical_matrix(*pair)]
    report(2, "theta formula equals matrix route", not bad, f"{len(pairs)} pairs, {len(bad)} mismatches")
    assert not bad, bad[:3]


def test_theta_above_minus_two_when_pq_prime_bounds():
    thetas = formula_thetas()
    relevant = [pair for pair in grid_pairs() if classify.pq_prime_member(CFString(pair[1]))]
    bad = [pair for pair in relevant if not thetas[pair].theta > -2]
    report(3, "theta(xi_can) > -2 whenever (p-q)/q' bounds", bool(relevant) and not bad,
           f"{len(relevant)} relevant pairs, {len(bad)} counterexamples")
    assert relevant
    assert not bad, bad[:3]


def test_concrete_anchors():
    failures = []
    if plumbing.theta_nonbalanced(0, 2, XiSign.Minus) != Fraction(-4, 3):
        failures.append("xi- on Y(0;1/2,1/2,1/2)")
    for n2 in range(0, 12):
        if plumbing.theta_canonical_formula((2,), (2,) * (n2 + 1)).theta != n2 + 1:
            failures.append(f"all-two chain n2={n2}")
    strings = [s.entries for s in verify.strings(GRID.max_string_len, GRID.max_entry)]
    for s in strings:
        inv = q_inverse_direct(plumbing.TridiagSpec(CFString(s)).build())
        val = cf_evaluate(s)
        first, last = plumbing.inverse_edge_columns(s)
        lhs, rhs = plumbing.dot_identity_check(s)
        checks = [
            plumbing.signed_det(s) == (-1) ** len(s) * val.numerator,
            first == inv.column(0),
            last == inv.column(len(s) - 1),
            lhs == rhs,
            plumbing.uv_vectors(s).v[0] == val.denominator,
        ]
        if not all(checks):
            failures.append(f"chain {list(s)}")
    report(4, "concrete anchors and chain identities", not failures,
           f"{len(strings)} chains, {len(failures)} failures")
    assert not failures, failures[:5]


def test_lisca_suite():
    t0 = time.perf_counter()
    bad, members, class_v = [], 0, 0
    for m in range(2, 51):
        p = m * m
        for q in range(1, p):
            if math.gcd(p, q) != 1:
                continue
            cert = lisca.r_membership(p, q)
            if cert is None:
                continue
            members += 1
            i = i_value(cf_expand(Fraction(p, q)))
            form = any(m * h - 1 == q and math.gcd(h, m) == 1 for h in range(1, m))
            class_v += form
            if not (lisca.verify_certificate(p, q, cert) and i <= 1 and (i == 1) == form):
                bad.append((p, q))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 60
    report(5, "Lisca certificates, I <= 1, I = 1 iff m^2/(mh-1)", ok,
           f"p <= 2500, {members} members, {class_v} with I = 1, {len(bad)} failures, {elapsed:.1f}s")
    assert not bad, bad[:5]
    assert elapsed < 60


def test_balanced_family_identities():
    bad, count = [], 0
    for m in range(2, 31):
        for h in range(1, m):
            if math.gcd(h, m) != 1:
                continue
            count += 1
            b = m * m - m * h + 1
            sols = [e for e in range(0, 101) if (e + 1) * b < m * m < (e + 2) * b]
            e0 = seifert.unique_e0(m, h)
            rep = seifert.section6_identities(m, h, e0)
            p, q, pp, qp = rep["p"], rep["q"], rep["p_prime"], rep["q_prime"]
            ok = (sols == [e0]
                  and p - 2 == (e0 + 1) * pp + qp
                  and pp == (m - h) ** 2
                  and (pp * q) % p == 1)
            for n in range(1, 6):
                y = seifert.y_mhn(m, h, n)
                d = seifert.dihedral_params(y)
                ok = ok and d == seifert.y_mhn_dihedral(m, h, n) and seifert.seifert_from_dihedral(d) == y
            if not ok:
                bad.append((m, h))
    report(6, "balanced-family identities, unique e0, dihedral round trip", not bad,
           f"{count} coprime pairs with m <= 30, {len(bad)} failures")
    assert not bad, bad


def test_nonbalanced_obstruction():
    minus_bad, plus_checked, plus_bad, outside = [], 0, [], []
    for e0 in range(0, 5):
        for p in range(2, 61):
            for q in range(1, p):
                if math.gcd(p, q) != 1:
                    continue
                pq = Fraction(p, q)
                if plumbing.theta_nonbalanced(e0, pq, XiSign.Minus).denominator == 1:
                    minus_bad.append((e0, p, q))
                plus = plumbing.theta_nonbalanced(e0, pq, XiSign.Plus)
                a = cf_expand(pq)
                rs = cf_evaluate((2,) * e0 + (a[0] + 1,) + a.entries[1:])
                if lisca.r_membership(rs.numerator, rs.denominator) is not None:
                    plus_checked += 1
                    if plus == -2:
                        plus_bad.append((e0, p, q))
                elif plus == -2:
                    # the argument does not need theta here: the space does not even bound smoothly
                    y = seifert.SeifertData(e0, (Fraction(1, 2), Fraction(q, p), Fraction(1, 2)))
                    v = classify.symplectic_verdict(y)
                    outside.append((e0, p, q))
                    if v.smooth is not classify.Smooth.DoesNotBound or not v.symplectic.is_none:
                        plus_bad.append((e0, p, q))
    ok = not minus_bad and not plus_bad
    report(7, "xi- never integral; xi+ != -2 where the smooth test passes", ok,
           f"e0 in [0,4], p <= 60; {len(minus_bad)} integral xi-; {plus_checked} xi+ cases with r/s in R, "
           f"{len(plus_bad)} failures; theta(xi+) = -2 only at {outside}, where r/s is not in R")
    assert not minus_bad and not plus_bad
    assert outside == [(0, 38, 7), (2, 38, 11)]


def test_classification_table():
    S = classify.Spherical
    reps = [S.lens(3, 1), S.dihedral_neg(2, 1, 2), S.dihedral_neg(2, 1, 3),
            S.dihedral_neg(1, 0, 1), S.dihedral_neg(1, 0, 2), S.t_minus_3()]
    counts = tuple(classify.spherical_table(s) for s in reps)
    special = {
        "M_2": classify.symplectic_verdict(seifert.SeifertData.parse("-1;1/2,1/2,1/2")).symplectic,
        "M_5": classify.symplectic_verdict(seifert.SeifertData.parse("-1;1/2,1/5,1/2")).symplectic,
        "-T_3": classify.symplectic_verdict(seifert.SeifertData.parse("-1;2/3,1/2,1/3")).symplectic,
    }
    want = {k: classify.SymplecticCount.exactly(c) for k, c in (("M_2", 3), ("M_5", 2), ("-T_3", 3))}
    agree = all(classify.symplectic_verdict(classify.spherical_seifert(s)).symplectic
                == classify.SymplecticCount.exactly(c) for s, c in zip(reps[1:], counts[1:]))
    ok = counts == (2, 6, 4, 3, 2, 3) and special == want and agree
    report(8, "spherical table and special cases", ok,
           f"table {counts}, special cases {', '.join(f'{k} -> {v}' for k, v in special.items())}")
    assert counts == (2, 6, 4, 3, 2, 3)
    assert special == want
    assert agree


STRUCTURAL = {
    "cf": ["cf_round_trip", "dual_involution", "dual_value", "i_duality", "reversal_mod_inverse",
           "equiv_lemma"],
    "classify": ["framing_table", "e0_from_n", "reverse_involution", "e0_sum", "containment",
                 "orientation_dichotomy"],
}


def test_structural_suites():
    reports = verify.run_suites(["all"], verify.GridSpec())
    missing = [c for r in reports for c in STRUCTURAL.get(r.suite, []) if r.by_check.get(c, [0])[0] == 0]
    failed = [r.summary() for r in reports if not r.ok]
    checks = sum(r.checks for r in reports)
    report(9, "structural suites on the default grid", not failed and not missing,
           f"{len(reports)} suites, {checks} checks, {sum(r.failures for r in reports)} failures"
           + (f", never exercised: {missing}" if missing else ""))
    assert not failed, [r.first_failure for r in reports if not r.ok]
    assert not missing
