"""Grid-driven invariant suites.

A suite is a list of picklable instances plus a module-level check function
that returns the failures for one instance.  Instances may be spread over a
process pool; results are merged in instance order, so a parallel run reports
exactly what a serial run reports.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Optional, Sequence

from . import classify, lisca, plumbing, rationals, seifert
from .errors import DomainError
from .matrix import det_bareiss, q_inverse_direct
from .rationals import CFString, cf_evaluate, cf_expand, format_cf, format_rational

SUITES = ("cf", "lisca", "matrix", "theta", "sections67", "classify")


@dataclass(frozen=True)
class GridSpec:
    max_string_len: int = 3
    max_entry: int = 5
    m_max: int = 10
    n_max: int = 4
    e0_range: tuple[int, int] = (-4, 4)
    p_max: int = 400
    cf_p_max: int = 150
    # pairs (a1, a2ext): full product below these bounds, plus a sweep that
    # puts every string up to (max_string_len, max_entry) on each side once
    dense_len: int = 2
    dense_entry: int = 4
    denom_max: int = 7
    theta_p_max: int = 60
    theta_e0_max: int = 4

    def __post_init__(self):
        lo, hi = self.e0_range
        bounds = [self.max_string_len, self.max_entry - 1, self.m_max, self.n_max, self.p_max, self.cf_p_max,
                  self.dense_len, self.dense_entry - 1, self.denom_max - 1, self.theta_p_max]
        if any(b < 1 for b in bounds) or lo > hi:
            raise DomainError(f"grid bounds must be positive: {self}")

    def to_json(self) -> dict:
        d = asdict(self)
        d["e0_range"] = list(self.e0_range)
        return d


@dataclass
class SuiteReport:
    suite: str
    instances: int
    checks: int = 0
    failures: int = 0
    first_failure: Optional[dict] = None
    by_check: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def summary(self) -> str:
        return f"{self.suite}: {self.instances} instances, {self.checks} checks, {self.failures} failures"

    def to_json(self) -> dict:
        return {
            "suite": self.suite, "instances": self.instances, "checks": self.checks,
            "failures": self.failures, "first_failure": self.first_failure, "by_check": self.by_check,
        }


# A check function returns a list of (name, ok, detail) triples.
Result = list[tuple[str, bool, dict]]


def _eq(name: str, lhs, rhs, **ctx) -> tuple[str, bool, dict]:
    ok = lhs == rhs
    return name, ok, ({} if ok else {**ctx, "lhs": _show(lhs), "rhs": _show(rhs)})


def _show(x):
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, CFString):
        return format_cf(x)
    if isinstance(x, (tuple, list)):
        return [_show(a) for a in x]
    return repr(x) if not isinstance(x, (int, str, bool, type(None))) else x


# ---------------------------------------------------------------------------
# instance generators


def strings(max_len: int, max_entry: int) -> list[CFString]:
    return list(rationals.strict_strings(max_len, max_entry))


def plumbing_pairs(g: GridSpec) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    dense = [s.entries for s in strings(g.dense_len, g.dense_entry)]
    every = [s.entries for s in strings(g.max_string_len, g.max_entry)]
    k = len(every)
    seen = {}
    for pair in product(dense, dense):
        seen.setdefault(pair, None)
    for i, s in enumerate(every):
        seen.setdefault((s, every[(7 * i + 3) % k]), None)
        seen.setdefault((every[(11 * i + 5) % k], s), None)
    return list(seen)


def fractions_up_to(denom_max: int) -> list[Fraction]:
    return sorted({Fraction(a, b) for b in range(2, denom_max + 1) for a in range(1, b)})


def seifert_grid(g: GridSpec) -> list[SeifertData]:
    lo, hi = g.e0_range
    r1s = fractions_up_to(g.denom_max)
    r2s = fractions_up_to(g.denom_max + 4)
    out = {}
    for e0 in range(lo, hi + 1):
        for r1 in r1s:
            for r2 in r2s:
                y = seifert.SeifertData(e0, (r1, r2, 1 - r1))
                out.setdefault(y, None)
    return sorted(out, key=seifert.SeifertData.sort_key)


SeifertData = seifert.SeifertData


# ---------------------------------------------------------------------------
# checks


def check_rational(pq: tuple[int, int]) -> Result:
    p, q = pq
    r = Fraction(p, q)
    s = cf_expand(r)
    out = [_eq("cf_round_trip", cf_evaluate(s), r, p=p, q=q),
           ("cf_strict", s.strict, {"p": p, "q": q})]
    if q > 1:
        out.append(_eq("reversal_mod_inverse", cf_evaluate(s.reversed()),
                       rationals.cf_reverse_value(s), p=p, q=q))
    for x in (r, -r, 1 / r, -1 / r):
        n, t = rationals.split_framing(x)
        out.append(_eq("split_framing_rebuild", -n + rationals.cf_reciprocal(t), x, x=_show(x)))
        out.append(("split_framing_strict", not t.entries or t.strict, {"x": _show(x)}))
    return out


def check_string(entries: tuple[int, ...]) -> Result:
    s = CFString(entries)
    d = rationals.riemenschneider_dual(s) if cf_evaluate(s) != 1 else None
    out = []
    if d is not None:
        v = cf_evaluate(s)
        out.append(_eq("dual_value", cf_evaluate(d), Fraction(v.numerator, v.numerator - v.denominator), s=str(s)))
        out.append(_eq("dual_involution", rationals.riemenschneider_dual(d), s, s=str(s)))
        out.append(_eq("i_duality", rationals.i_value(s), len(d) - len(s) - 1, s=str(s)))
    t = 0
    while t < len(s) and s[t] == 2:
        t += 1
    if 0 < t < len(s):
        lhs, rhs = rationals.lemma_equiv_check(s)
        out.append(_eq("equiv_lemma", lhs, rhs, s=str(s)))
    return out


def check_lisca(p: int) -> Result:
    out = []
    m = math.isqrt(p)
    for q in range(1, p):
        if math.gcd(p, q) != 1:
            continue
        cert = lisca.r_membership(p, q)
        if cert is None:
            continue
        qs = rationals.mod_inverse(q, p)
        i = rationals.i_value(cf_expand(Fraction(p, q)))
        class_v = any(m * h - 1 == q and math.gcd(h, m) == 1 for h in range(1, m))
        out += [
            ("certificate", lisca.verify_certificate(p, q, cert), {"p": p, "q": q}),
            ("qstar_closure", lisca.r_membership(p, qs) is not None, {"p": p, "q": q}),
            ("i_bound", i <= 1, {"p": p, "q": q, "I": i}),
            _eq("class_v", i == 1, class_v, p=p, q=q),
        ]
    return out


def check_tridiag(entries: tuple[int, ...]) -> Result:
    s = CFString(entries)
    spec = plumbing.TridiagSpec(s)
    m = spec.build()
    inv = q_inverse_direct(m)
    v = cf_evaluate(s)
    uv = plumbing.uv_vectors(spec)
    first, last = plumbing.inverse_edge_columns(spec)
    lhs, rhs = plumbing.dot_identity_check(spec)
    d1, d2 = plumbing.first_column_replaced_det(spec)
    ctx = {"s": str(s)}
    return [
        _eq("det", plumbing.signed_det(spec), (-1) ** len(s) * v.numerator, **ctx),
        _eq("det_bareiss", det_bareiss(m), plumbing.signed_det(spec), **ctx),
        _eq("first_column", first, inv.column(0), **ctx),
        _eq("last_column", last, inv.column(len(s) - 1), **ctx),
        _eq("dot_identity", lhs, rhs, **ctx),
        _eq("replaced_column_det", d1, d2, **ctx),
        _eq("v_first_is_t", uv.v[0], v.denominator, **ctx),
        _eq("closed_form_inverse", plumbing.tridiag_inverse(spec), inv, **ctx),
        _eq("lens_theta_paths", plumbing.theta_lens_canonical(s), plumbing.theta_lens_matrix(s), **ctx),
    ]


def check_block_inverse(pair) -> Result:
    a1, a2 = pair
    q = plumbing.assemble_q(a1, a2)
    ctx = {"a1": format_cf(a1), "a2ext": format_cf(a2)}
    lhs, rhs = plumbing.appendix_row_relation(q)
    return [
        _eq("block_inverse", plumbing.q_inverse_blocks(q), q_inverse_direct(q.matrix), **ctx),
        _eq("row_relation", lhs, rhs, **ctx),
        _eq("q_times_qtilde", q.matrix @ plumbing.q_tilde(q), plumbing.q_times_qtilde_expected(q), **ctx),
    ]


def check_theta(pair) -> Result:
    a1, a2 = pair
    ctx = {"a1": format_cf(a1), "a2ext": format_cf(a2)}
    f = plumbing.theta_canonical_formula(a1, a2)
    out = [_eq("theta_paths", f, plumbing.theta_canonical_matrix(a1, a2), **ctx),
           _eq("d3", 4 * f.d3 - 2, f.theta, **ctx)]
    if classify.pq_prime_member(CFString(a2)):
        out.append(("theta_above_minus_two", f.theta > -2, {**ctx, "theta": _show(f.theta)}))
    for name, (l, r) in plumbing.proof_lemma_checks(a1, a2).items():
        out.append(_eq(name, l, r, **ctx))
    return out


def check_nonbalanced(inst) -> Result:
    e0, p, q = inst
    r = Fraction(p, q)
    minus = plumbing.theta_nonbalanced(e0, r, plumbing.XiSign.Minus)
    plus = plumbing.theta_nonbalanced(e0, r, plumbing.XiSign.Plus)
    ctx = {"e0": e0, "p": p, "q": q}
    out = [("xi_minus_not_integral", minus.denominator != 1, {**ctx, "theta": _show(minus)})]
    # the bound on theta(xi+) needs I(r/s) <= 1, which holds only when r/s bounds smoothly
    rs = cf_evaluate(CFString((2,) * e0) + _bump_first(cf_expand(r)))
    if rs.numerator > 1 and lisca.r_membership(rs.numerator, rs.denominator) is not None:
        out.append(("xi_plus_not_minus_two", plus != -2, ctx))
    return out


def _bump_first(a: CFString) -> CFString:
    return CFString((a[0] + 1,) + tuple(a.entries[1:]))


def check_mh(mh) -> Result:
    m, h = mh
    ctx = {"m": m, "h": h}
    b = m * m - m * h + 1
    sols = [e for e in range(0, 101) if (e + 1) * b < m * m < (e + 2) * b]
    e0 = seifert.unique_e0(m, h)
    out = [_eq("unique_e0_brute_force", sols, [e0], **ctx)]
    rep = seifert.section6_identities(m, h, e0)
    out += [("balanced_inverse", rep["inverse_ok"], ctx), ("balanced_p_minus_two", rep["p_minus_two_ok"], ctx),
            _eq("balanced_p_prime", rep["p_prime"], (m - h) ** 2, **ctx)]
    a = cf_expand(Fraction(rep["p"], rep["q"]))
    pre = (1, 0) if len(a) == 1 else (cf_evaluate(a[:-1]).numerator, cf_evaluate(a[:-1]).denominator)
    out.append(_eq("balanced_prefix", pre, (rep["p_prime"], rep["q_prime"]), **ctx))
    y = seifert.y_mhn(m, h, 1)
    out.append(_eq("balanced_s_matches", seifert.balanced_s(m, h, e0), y.r2, **ctx))
    out.append(("balanced_recognized", seifert.match_balanced_form(y) == seifert.BalancedMatch(m, h, e0), ctx))
    return out


def check_ymhn(inst) -> Result:
    m, h, n = inst
    ctx = {"m": m, "h": h, "n": n}
    y = seifert.y_mhn(m, h, n)
    d = seifert.dihedral_params(y)
    out = [_eq("dihedral_closed_form", d, seifert.y_mhn_dihedral(m, h, n), **ctx),
           _eq("dihedral_round_trip", seifert.seifert_from_dihedral(d), y, **ctx)]
    if y.e0 == -1:
        mm = seifert.match_minus_one_form(y)
        out.append(("minus_one_recognized", mm is not None and (mm.m, mm.h, mm.n) == (m, h, n), ctx))
    v = classify.symplectic_verdict(y)
    expect = classify.spherical_table(classify.Spherical.dihedral_neg(m, h, n))
    out.append(_eq("spherical_count", v.symplectic, classify.SymplecticCount.exactly(expect), **ctx))
    out.append(_eq("gate", classify.theta_gate(y), Fraction(-2), **ctx))
    return out


def check_seifert(y: SeifertData) -> Result:
    ctx = {"Y": str(y)}
    out = []
    rev = seifert.reverse_orientation(y)
    out.append(_eq("reverse_involution", seifert.reverse_orientation(rev), y, **ctx))
    out.append(_eq("e0_sum", y.e0 + rev.e0, -3, **ctx))
    f = seifert.to_figure2(y)
    out.append(_eq("figure2_round_trip", seifert.from_figure2(f), y, **ctx))
    n = f.n
    e0_expected = seifert.e0_from_framing(n, rationals.cf_reciprocal(f.a2string))
    out.append(_eq("e0_from_n", e0_expected, y.e0, **ctx))
    table_ok = ((n == 1 and y.e0 >= 0) or (n >= 2 and y.e0 == -1)
                or (n <= -1 and y.e0 == -2) or (n == 0 and y.e0 <= -3))
    out.append(("framing_table", table_ok, {**ctx, "n": n}))
    v = classify.symplectic_verdict(y)
    w = classify.symplectic_verdict(rev)
    out.append(("containment", v.symplectic.is_none or v.symplectic.kind is classify.Kind.OutOfTheoremScope
                or v.smooth is classify.Smooth.Bounds, ctx))
    out.append(("orientation_dichotomy", v.symplectic.is_none or w.symplectic.is_none, ctx))
    if y.is_dihedral_shape or y.is_tetrahedral_shape:
        out.append(("corollary_bound", classify.corollary_bound_check([v]), ctx))
    if v.symplectic.positive:
        out.append(_eq("theta_gate", classify.theta_gate(y), Fraction(-2), **ctx))
    if y.e0 <= -2:
        a1, a2 = seifert.seifert_to_plumbing(y)
        out.append(_eq("plumbing_round_trip", seifert.plumbing_to_seifert(a1, a2), y, **ctx))
        bounds = v.smooth is classify.Smooth.Bounds
        out.append(_eq("smooth_criteria_agree", classify.pq_prime_member(a2), bounds, **ctx))
        if bounds:
            th = classify.theta_canonical_of(y)
            out.append(("theta_above_minus_two", th > -2, {**ctx, "theta": _show(th)}))
    return out


# ---------------------------------------------------------------------------
# suites


def suite_instances(name: str, g: GridSpec) -> list[tuple[Callable, list]]:
    if name == "cf":
        rats = [(p, q) for p in range(2, g.cf_p_max + 1) for q in range(1, p) if math.gcd(p, q) == 1]
        strs = [s.entries for s in strings(g.max_string_len + 1, g.max_entry)]
        return [(check_rational, rats), (check_string, strs)]
    if name == "lisca":
        return [(check_lisca, [m * m for m in range(2, math.isqrt(g.p_max) + 1)])]
    if name == "matrix":
        strs = [s.entries for s in strings(g.max_string_len, g.max_entry)]
        return [(check_tridiag, strs), (check_block_inverse, plumbing_pairs(g))]
    if name == "theta":
        nb = [(e0, p, q) for e0 in range(0, g.theta_e0_max + 1) for p in range(2, g.theta_p_max + 1)
              for q in range(1, p) if math.gcd(p, q) == 1]
        return [(check_theta, plumbing_pairs(g)), (check_nonbalanced, nb)]
    if name == "sections67":
        mh = [(m, h) for m in range(2, g.m_max + 1) for h in range(1, m) if math.gcd(h, m) == 1]
        ys = [(1, 0, n) for n in range(1, g.n_max + 1)] + [
            (m, h, n) for (m, h) in mh for n in range(1, g.n_max + 1)]
        return [(check_mh, mh), (check_ymhn, ys)]
    if name == "classify":
        return [(check_seifert, seifert_grid(g))]
    raise DomainError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")


def _run_one(args):
    fn, inst = args
    return fn(inst)


def run_suite(name: str, grid: GridSpec = GridSpec(), jobs: int = 1) -> SuiteReport:
    parts = suite_instances(name, grid)
    report = SuiteReport(name, sum(len(insts) for _, insts in parts))
    work = [(fn, inst) for fn, insts in parts for inst in insts]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_run_one, work, chunksize=max(1, len(work) // (8 * jobs))))
    else:
        results = [_run_one(w) for w in work]
    for res in results:
        for check, ok, detail in res:
            report.checks += 1
            tally = report.by_check.setdefault(check, [0, 0])
            tally[0] += 1
            if not ok:
                tally[1] += 1
                report.failures += 1
                if report.first_failure is None:
                    report.first_failure = {"check": check, **detail}
    return report


def run_suites(names: Sequence[str], grid: GridSpec = GridSpec(), jobs: int = 1) -> list[SuiteReport]:
    names = list(SUITES) if list(names) == ["all"] else list(names)
    return [run_suite(n, grid, jobs) for n in names]
