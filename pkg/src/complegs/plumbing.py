"""Exact linear algebra of the star-shaped plumbing with two complementary legs.

``M(m_1, ..., m_n)`` is the tridiagonal matrix with diagonal ``-m_i`` and
off-diagonal entries 1.  The plumbing matrix ``Q`` places three such chains
on the diagonal:

* ``A = M(reversed a1)`` in rows ``0 .. n1-1``
* ``B = M(a2ext)`` in rows ``n1 .. n1+n2``
* ``C = M(dual(a1))`` in the last ``n3`` rows

The central vertex (row ``n1``) is linked to the last vertex of ``A`` and the
first vertex of ``C``.  All indices in this module are 0-based.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, InvariantViolation, SingularMatrix
from .matrix import ExactMatrix, det_bareiss, place_blocks, q_inverse_direct
from .rationals import (
    CFLike,
    CFString,
    cf_evaluate,
    cf_expand,
    cf_reciprocal,
    format_rational,
    i_value,
    mod_inverse,
    riemenschneider_dual,
)


# ---------------------------------------------------------------------------
# tridiagonal chains


@dataclass(frozen=True)
class TridiagSpec:
    """Entries of a chain; strict, or relaxed with first entry 1 (as in ``B~``)."""

    entries: CFString

    def __post_init__(self):
        object.__setattr__(self, "entries", CFString.of(self.entries))
        if not self.entries.entries:
            raise DomainError("a chain needs at least one vertex")

    @property
    def n(self) -> int:
        return len(self.entries)

    def build(self) -> ExactMatrix:
        e = self.entries.entries
        n = len(e)
        return ExactMatrix(tuple(
            tuple(-e[i] if i == j else (1 if abs(i - j) == 1 else 0) for j in range(n))
            for i in range(n)
        ))


def _spec(s) -> TridiagSpec:
    return s if isinstance(s, TridiagSpec) else TridiagSpec(CFString.of(s))


def continuants(entries: Sequence[int]) -> list[int]:
    """``K_0 = 1, K_1 = a_1, K_i = a_i K_{i-1} - K_{i-2}``; ``|det M(a_1..a_i)| = K_i`` when strict."""
    out = [1]
    prev = 0
    for a in entries:
        out.append(a * out[-1] - prev)
        prev = out[-2]
    return out


@dataclass(frozen=True)
class UVVectors:
    u: tuple[int, ...]  # u_0 = 1, u_1, ..., u_{n-1}
    v: tuple[int, ...]  # v_{n-1}, ..., v_1, v_0 = 1


def uv_vectors(s) -> UVVectors:
    """Leading and trailing principal minors, up to the sign ``(-1)^i``.

    These are continuants, so they coincide with the absolute values of the
    minors for strict chains.  For relaxed chains the signed continuants are
    kept, since the closed-form inverse needs them.
    """
    e = _spec(s).entries.entries
    lead = continuants(e)
    trail = continuants(e[::-1])
    n = len(e)
    return UVVectors(u=tuple(lead[:n]), v=tuple(trail[n - 1::-1]))


def signed_det(s) -> int:
    """``det M = (-1)^n K_n``, which is ``(-1)^n`` times the numerator of the value."""
    e = _spec(s).entries.entries
    return (-1) ** len(e) * continuants(e)[-1]


def tridiag_inverse(s) -> ExactMatrix:
    """Closed form ``M^{-1}_{ij} = -K_{min(i,j)} K'_{max(i,j)} / K_n`` (0-based)."""
    e = _spec(s).entries.entries
    n = len(e)
    lead = continuants(e)
    trail = continuants(e[::-1])  # trail[k] = continuant of the last k entries
    det_abs = lead[-1]
    if det_abs == 0:
        raise SingularMatrix(f"M{list(e)} is singular")
    return ExactMatrix(tuple(
        tuple(Fraction(-lead[min(i, j)] * trail[n - 1 - max(i, j)], det_abs) for j in range(n))
        for i in range(n)
    ))


def inverse_edge_columns(s) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """First column ``-(1/s) v`` and last column ``-(1/s) u`` of ``M^{-1}``."""
    spec = _spec(s)
    uv = uv_vectors(spec)
    sval = continuants(spec.entries.entries)[-1]
    if sval == 0:
        raise SingularMatrix(f"M{spec.entries} is singular")
    first = tuple(Fraction(-x, sval) for x in uv.v)
    last = tuple(Fraction(-x, sval) for x in uv.u)
    return first, last


def dot_identity_check(s) -> tuple[Fraction, Fraction]:
    """``first_col(M^{-1}) . (m_i - 2)`` and ``-1 + (1+t)/s`` for a strict chain of value ``s/t``."""
    spec = _spec(s)
    if not spec.entries.strict:
        raise DomainError("dot_identity_check needs a strict chain")
    first, _ = inverse_edge_columns(spec)
    r = [a - 2 for a in spec.entries]
    lhs = sum((c * x for c, x in zip(first, r)), Fraction(0))
    val = cf_evaluate(spec.entries)
    rhs = -1 + Fraction(1 + val.denominator, val.numerator)
    return lhs, rhs


def first_column_replaced_det(s) -> tuple[Fraction, int]:
    """``det`` of ``M`` with its first column replaced by ``(m_i - 2)``, and ``(-1)^{n+1}(s-t-1)``."""
    spec = _spec(s)
    m = spec.build()
    r = [a - 2 for a in spec.entries]
    rows = tuple((r[i],) + row[1:] for i, row in enumerate(m.rows))
    val = cf_evaluate(spec.entries)
    sv, tv = val.numerator, val.denominator
    return det_bareiss(ExactMatrix(rows)), (-1) ** (spec.n + 1) * (sv - tv - 1)


# ---------------------------------------------------------------------------
# the plumbing matrix


@dataclass(frozen=True)
class PlumbingQ:
    a1: CFString
    a2ext: CFString
    a3: CFString
    matrix: ExactMatrix

    @property
    def n1(self) -> int:
        return len(self.a1)

    @property
    def n2(self) -> int:
        return len(self.a2ext) - 1

    @property
    def n3(self) -> int:
        return len(self.a3)

    @property
    def size(self) -> int:
        return self.n1 + self.n2 + self.n3 + 1

    @property
    def center(self) -> int:
        return self.n1

    @property
    def c_start(self) -> int:
        return self.n1 + self.n2 + 1

    @property
    def ptilde_qtilde(self) -> Fraction:
        return cf_evaluate(self.a1)

    @property
    def pq(self) -> Fraction:
        return cf_evaluate(self.a2ext)


def _check_inputs(a1: CFString, a2ext: CFString) -> None:
    if not a1.entries or not a1.strict:
        raise DomainError(f"a1 = {a1} must be a nonempty strict string")
    if not a2ext.entries or not a2ext.strict:
        raise DomainError(f"a2ext = {a2ext} must be a nonempty strict string")


def assemble_q(a1: CFLike, a2ext: CFLike) -> PlumbingQ:
    a1, a2ext = CFString.of(a1), CFString.of(a2ext)
    _check_inputs(a1, a2ext)
    a3 = riemenschneider_dual(a1)
    n1, n2, n3 = len(a1), len(a2ext) - 1, len(a3)
    size = n1 + n2 + n3 + 1
    mat = place_blocks(size, [
        (0, 0, TridiagSpec(a1.reversed()).build()),
        (n1, n1, TridiagSpec(a2ext).build()),
        (n1 + n2 + 1, n1 + n2 + 1, TridiagSpec(a3).build()),
    ])
    rows = [list(r) for r in mat.rows]
    for i, j in ((n1 - 1, n1), (n1, n1 + n2 + 1)):
        rows[i][j] = rows[j][i] = Fraction(1)
    return PlumbingQ(a1, a2ext, a3, ExactMatrix(tuple(tuple(r) for r in rows)))


@dataclass(frozen=True)
class _BlockData:
    pt: int
    qt: int
    p: int
    q: int
    uA: tuple[int, ...]
    vB: tuple[int, ...]
    vC: tuple[int, ...]


def _block_data(q: PlumbingQ) -> _BlockData:
    v1 = cf_evaluate(q.a1)
    v2 = cf_evaluate(q.a2ext)
    if v2.numerator == v2.denominator:
        raise SingularMatrix("p = q")
    return _BlockData(
        pt=v1.numerator, qt=v1.denominator, p=v2.numerator, q=v2.denominator,
        uA=uv_vectors(q.a1.reversed()).u,
        vB=uv_vectors(q.a2ext).v,
        vC=uv_vectors(q.a3).v,
    )


def _off_blocks(q: PlumbingQ, bd: _BlockData):
    pt, p, qq = bd.pt, bd.p, bd.q
    k2 = Fraction(-qq, pt * pt * (p - qq))
    k1 = Fraction(-1, pt * (p - qq))
    G = ExactMatrix.outer(bd.uA, bd.uA, k2)
    D = ExactMatrix.outer(bd.uA, bd.vB, k1)
    E = ExactMatrix.outer(bd.uA, bd.vC, k2)
    F = ExactMatrix.outer(bd.vB, bd.vC, k1)
    H = ExactMatrix.outer(bd.vC, bd.vC, k2)
    return G, D, E, F, H


def _btilde(q: PlumbingQ) -> TridiagSpec:
    return TridiagSpec(CFString((q.a2ext[0] - 1,) + q.a2ext.entries[1:]))


def q_tilde(q: PlumbingQ) -> ExactMatrix:
    """The block inverse with the ``A^{-1}`` and ``C^{-1}`` contributions removed."""
    bd = _block_data(q)
    G, D, E, F, H = _off_blocks(q, bd)
    n1, b0, c0 = q.n1, q.center, q.c_start
    return place_blocks(q.size, [
        (0, 0, G), (0, b0, D), (0, c0, E),
        (b0, 0, D.T), (b0, b0, tridiag_inverse(_btilde(q))), (b0, c0, F),
        (c0, 0, E.T), (c0, b0, F.T), (c0, c0, H),
    ])


def q_inverse_blocks(q: PlumbingQ) -> ExactMatrix:
    """``Q^{-1}`` assembled from the closed-form blocks; no elimination involved."""
    bd = _block_data(q)
    G, D, E, F, H = _off_blocks(q, bd)
    b0, c0 = q.center, q.c_start
    return place_blocks(q.size, [
        (0, 0, tridiag_inverse(q.a1.reversed()) + G), (0, b0, D), (0, c0, E),
        (b0, 0, D.T), (b0, b0, tridiag_inverse(_btilde(q))), (b0, c0, F),
        (c0, 0, E.T), (c0, b0, F.T), (c0, c0, tridiag_inverse(q.a3) + H),
    ])


def q_times_qtilde_expected(q: PlumbingQ) -> ExactMatrix:
    """Predicted ``Q @ q_tilde(Q)``: zero outside the middle rows, whose block is the identity
    and whose first row carries ``u^A / p~`` and ``v^C / p~`` in the outer columns."""
    bd = _block_data(q)
    rows = [[Fraction(0)] * q.size for _ in range(q.size)]
    for k in range(q.n2 + 1):
        rows[q.center + k][q.center + k] = Fraction(1)
    for j, x in enumerate(bd.uA):
        rows[q.center][j] = Fraction(x, bd.pt)
    for j, x in enumerate(bd.vC):
        rows[q.center][q.c_start + j] = Fraction(x, bd.pt)
    return ExactMatrix(tuple(tuple(r) for r in rows))


def appendix_row_relation(q: PlumbingQ) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Rows of ``q_tilde``: (last A-row + first C-row, first B-row)."""
    qt = q_tilde(q)
    lhs = tuple(a + b for a, b in zip(qt.rows[q.n1 - 1], qt.rows[q.c_start]))
    return lhs, qt.rows[q.center]


# ---------------------------------------------------------------------------
# theta of the canonical contact structure


@dataclass(frozen=True)
class ThetaResult:
    theta: Fraction
    c1_squared: Fraction
    sigma: int
    chi: int
    d3: Fraction

    @classmethod
    def from_theta(cls, theta: Fraction, sigma: int, chi: int) -> "ThetaResult":
        return cls(theta, theta + 3 * sigma + 2 * chi, sigma, chi, (theta + 2) / 4)

    @classmethod
    def from_c1(cls, c1sq: Fraction, sigma: int, chi: int) -> "ThetaResult":
        theta = c1sq - 3 * sigma - 2 * chi
        return cls(theta, c1sq, sigma, chi, (theta + 2) / 4)

    def to_json(self) -> dict:
        return {
            "theta": format_rational(self.theta),
            "c1_squared": format_rational(self.c1_squared),
            "sigma": self.sigma,
            "chi": self.chi,
            "d3": format_rational(self.d3),
        }


def _sizes(a1: CFString, a2ext: CFString) -> tuple[int, int, int]:
    return len(a1), len(a2ext) - 1, len(riemenschneider_dual(a1))


def theta_canonical_formula(a1: CFLike, a2ext: CFLike) -> ThetaResult:
    a1, a2ext = CFString.of(a1), CFString.of(a2ext)
    _check_inputs(a1, a2ext)
    n1, n2, n3 = _sizes(a1, a2ext)
    pt = cf_evaluate(a1).numerator
    v2 = cf_evaluate(a2ext)
    p, q = v2.numerator, v2.denominator
    tail = CFString(a2ext.entries[:0:-1] + (a2ext[0] - 1,))
    theta = (
        1
        - i_value(a2ext)
        - cf_reciprocal(tail)
        + Fraction(2 * (pt - 2), pt * (p - q))
        - Fraction((pt - 2) ** 2 * q, pt * pt * (p - q))
    )
    return ThetaResult.from_theta(theta, -(n1 + n2 + n3 + 1), n1 + n2 + n3 + 2)


def rotation_parts(q: PlumbingQ) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    """``x``, ``y_{a1}``, ``y_{a3}`` with ``r_can = x + y_{a1} + y_{a3}``."""
    n1, n2, n3 = q.n1, q.n2, q.n3
    x = (0,) * n1 + tuple(a - 2 for a in q.a2ext) + (0,) * n3
    ya1 = tuple(a - 2 for a in q.a1.reversed()) + (0,) * (n2 + 1 + n3)
    ya3 = (0,) * (n1 + n2 + 1) + tuple(a - 2 for a in q.a3)
    return x, ya1, ya3


def theta_canonical_matrix(a1: CFLike, a2ext: CFLike) -> ThetaResult:
    q = assemble_q(a1, a2ext)
    x, ya1, ya3 = rotation_parts(q)
    r = tuple(a + b + c for a, b, c in zip(x, ya1, ya3))
    qinv = q_inverse_direct(q.matrix)
    return ThetaResult.from_c1(qinv.quadratic(r), -q.size, q.size + 1)


def theta_lens_canonical(s: CFLike) -> Fraction:
    """``theta`` of the canonical structure on the lens space bounded by the chain ``M(s)``.

    ``-(2 + q + q*)/p - I(p/q)``.  The empty chain is ``S^3`` with ``theta = -2``.
    """
    s = CFString.of(s)
    if not s.entries:
        return Fraction(-2)
    v = cf_evaluate(s)
    p, q = v.numerator, v.denominator
    qs = mod_inverse(q, p) if q < p and p > 1 else q
    return -Fraction(2 + q + qs, p) - i_value(s)


def theta_lens_matrix(s: CFLike) -> Fraction:
    """Same quantity via ``r^T M^{-1} r - 3 sigma - 2 chi`` on the chain."""
    s = CFString.of(s)
    if not s.entries:
        return Fraction(-2)
    n = len(s)
    r = [a - 2 for a in s]
    c1 = tridiag_inverse(s).quadratic(r)
    return c1 + 3 * n - 2 * (n + 1)


# ---------------------------------------------------------------------------
# the individual quadratic-form identities


@dataclass(frozen=True)
class ProofQuantities:
    alpha: Fraction
    beta: Fraction
    x: tuple[int, ...]
    y: tuple[int, ...]
    qstar_tilde: int


def proof_quantities(a1: CFLike, a2ext: CFLike) -> ProofQuantities:
    q = assemble_q(a1, a2ext)
    v1 = cf_evaluate(q.a1)
    pt, qt = v1.numerator, v1.denominator
    x, ya1, ya3 = rotation_parts(q)
    return ProofQuantities(
        alpha=-1 + Fraction(1 + qt, pt),
        beta=Fraction(1 - qt, pt),
        x=x,
        y=tuple(a + b for a, b in zip(ya1, ya3)),
        qstar_tilde=mod_inverse(qt, pt) if qt < pt and pt > 1 else qt,
    )


def proof_lemma_checks(a1: CFLike, a2ext: CFLike) -> dict[str, tuple[Fraction, Fraction]]:
    """Each quadratic-form identity as ``name -> (computed, closed form)``."""
    q = assemble_q(a1, a2ext)
    pq = proof_quantities(q.a1, q.a2ext)
    qinv = q_inverse_direct(q.matrix)
    x, ya1, ya3 = rotation_parts(q)
    y = pq.y
    v1, v2 = cf_evaluate(q.a1), cf_evaluate(q.a2ext)
    pt, qt = v1.numerator, v1.denominator
    p, qq = v2.numerator, v2.denominator
    al, be, qst = pq.alpha, pq.beta, pq.qstar_tilde
    ratio = Fraction(qq, p - qq)
    factor = 1 - Fraction(1, p - qq)
    tail = CFString(q.a2ext.entries[:0:-1] + (q.a2ext[0] - 1,))
    return {
        "alpha_plus_beta": (al + be, Fraction(2 - pt, pt)),
        "xQx": (qinv.quadratic(x), 2 * q.n2 + 3 - sum(q.a2ext) - cf_reciprocal(tail)),
        "xQy": (qinv.quadratic(x, y), (al + be) * factor),
        "ya1Qx": (qinv.quadratic(ya1, x), al * factor),
        "ya3Qx": (qinv.quadratic(ya3, x), be * factor),
        "ya1Qya3": (qinv.quadratic(ya1, ya3), -al * be * ratio),
        "ya1Qya1": (
            qinv.quadratic(ya1),
            -2 * al - al * al * ratio - (q.n3 - 1) + Fraction(qt - qst, pt),
        ),
        "ya3Qya3": (
            qinv.quadratic(ya3),
            -2 * be - be * be * ratio - (q.n1 - 1) + Fraction(qst - qt, pt),
        ),
        "yQy": (
            qinv.quadratic(y),
            Fraction(2 * (pt - 2), pt) - (q.n1 + q.n3 - 2) - Fraction(pt - 2, pt) ** 2 * ratio,
        ),
    }


# ---------------------------------------------------------------------------
# the two non-canonical structures on Y(e0; 1/2, q/p, 1/2)


class XiSign(enum.Enum):
    Plus = "Plus"
    Minus = "Minus"


def _prefix_pq(a: CFString) -> tuple[int, int]:
    if len(a) == 1:
        return 1, 0
    v = cf_evaluate(a[:-1])
    return v.numerator, v.denominator


def theta_nonbalanced(e0: int, pq, sign) -> Fraction:
    """``theta`` of the two non-balanced structures for ``e0 >= 0`` and ``pq = p/q > 1``.

    The ``Plus`` value is confirmed against an independent expression through
    ``r/s = [2 (e0 times), a_1 + 1, a_2, ..., a_k]``.
    """
    sign = XiSign(sign.value if isinstance(sign, enum.Enum) else sign)
    if e0 < 0:
        raise DomainError(f"e0 = {e0} must be >= 0")
    pq = Fraction(pq)
    if pq <= 1:
        raise DomainError("p/q must exceed 1")
    a = cf_expand(pq)
    p, q = pq.numerator, pq.denominator
    k = len(a)
    pp, qp = _prefix_pq(a)
    den = (e0 + 1) * p + q
    common = Fraction((e0 + 1) * pp + qp, den)
    minus = -(sum(a) - (3 * k + e0 - 2)) - common
    plus = -(sum(a) - (3 * k + e0 - 1)) - common - Fraction((e0 - 3) * p + q + 4, den)
    if sign is XiSign.Minus:
        return minus
    rs = CFString((2,) * e0 + (a[0] + 1,) + a.entries[1:])
    rev = CFString(a.entries[:0:-1] + (a[0] + 1,) + (2,) * e0)
    if common != cf_reciprocal(rev):
        raise InvariantViolation("reversed-string expression for the shared term disagrees")
    alt = -i_value(rs) - common - Fraction((e0 - 3) * p + q + 4, den)
    if alt != plus:
        raise InvariantViolation(f"theta(xi+) paths disagree: {plus} vs {alt}")
    return plus
