"""Small Seifert fibered spaces ``Y(e0; r1, r2, r3)`` and their complementary legs.

Normalized data has ``e0`` an integer and each ``r_i`` in ``(0, 1)``.  When two
legs are complementary (``r_i + r_j = 1``) they are moved to positions 1 and 3.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DomainError, InvariantViolation
from .rationals import (
    CFLike,
    CFString,
    RationalLike,
    as_rational,
    cf_evaluate,
    cf_expand,
    cf_reciprocal,
    format_cf,
    format_rational,
    riemenschneider_dual,
    split_framing,
)

HALF = Fraction(1, 2)


def _complementary_pair(r: Sequence[Fraction]) -> Optional[tuple[int, int]]:
    for i in range(3):
        for j in range(i + 1, 3):
            if r[i] + r[j] == 1:
                return i, j
    return None


@dataclass(frozen=True, eq=False)
class SeifertData:
    """Normalized Seifert invariants; build with :func:`normalize` or :meth:`parse`.

    The complementary pair, if any, sits in positions 0 and 2 in the order it
    was given.  Equality and hashing ignore the order of the fibers.
    """

    e0: int
    r: tuple[Fraction, Fraction, Fraction]
    original_order: tuple[int, int, int] = field(default=(0, 1, 2), compare=False, repr=False)

    def __post_init__(self):
        r = tuple(Fraction(x) for x in self.r)
        if len(r) != 3:
            raise DomainError("exactly three singular fibers are required")
        if not all(0 < x < 1 for x in r):
            raise DomainError(f"coefficients {[format_rational(x) for x in r]} are not in (0, 1)")
        order = tuple(self.original_order)
        pair = _complementary_pair(r)
        if pair is not None and pair != (0, 2):
            i, j = pair
            k = 3 - i - j
            r = (r[i], r[k], r[j])
            order = (order[i], order[k], order[j])
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "original_order", order)
        object.__setattr__(self, "e0", int(self.e0))

    r1 = property(lambda self: self.r[0])
    r2 = property(lambda self: self.r[1])
    r3 = property(lambda self: self.r[2])

    @property
    def complementary(self) -> bool:
        return self.r[0] + self.r[2] == 1

    @property
    def euler(self) -> Fraction:
        return self.e0 + sum(self.r)

    @property
    def is_qhs(self) -> bool:
        return self.euler != 0

    @property
    def is_dihedral_shape(self) -> bool:
        """``Y(e0; 1/2, s, 1/2)``."""
        return self.r[0] == HALF and self.r[2] == HALF

    @property
    def is_tetrahedral_shape(self) -> bool:
        """``Y(e0; 2/3, 1/2, 1/3)`` up to swapping the complementary legs."""
        return self.r[1] == HALF and {self.r[0], self.r[2]} == {Fraction(1, 3), Fraction(2, 3)}

    def canonical_key(self) -> tuple:
        return (self.e0, tuple(sorted(self.r)))

    def __eq__(self, other):
        if not isinstance(other, SeifertData):
            return NotImplemented
        return self.canonical_key() == other.canonical_key()

    def __hash__(self):
        return hash(self.canonical_key())

    def sort_key(self) -> tuple:
        return (self.e0, self.r)

    def __str__(self):
        return f"Y({self.e0}; {', '.join(format_rational(x) for x in self.r)})"

    def to_json(self) -> dict:
        return {"e0": self.e0, "r": [format_rational(x) for x in self.r]}

    @classmethod
    def parse(cls, text: str) -> "SeifertData":
        """Parse ``"e0;r1,r2,r3"`` and normalize."""
        m = re.match(r"^\s*([+-]?\d+)\s*;(.*)$", text)
        if not m:
            raise DomainError(f"expected 'e0;r1,r2,r3', got {text!r}")
        parts = [p for p in m.group(2).split(",")]
        if len(parts) != 3:
            raise DomainError(f"expected three coefficients in {text!r}")
        return normalize(int(m.group(1)), [as_rational(p) for p in parts])


def normalize(e: int, coeffs: Sequence[RationalLike]) -> SeifertData:
    """Fold integer parts of the coefficients into ``e0``."""
    rs = [as_rational(c) for c in coeffs]
    if len(rs) != 3:
        raise DomainError("exactly three coefficients are required")
    out = []
    for x in rs:
        if x.denominator == 1:
            raise DomainError(f"integral coefficient {x}: fewer than three singular fibers")
        k = math.floor(x)
        e += k
        out.append(x - k)
    return SeifertData(e, tuple(out))


def reverse_orientation(y: SeifertData) -> SeifertData:
    return SeifertData(-3 - y.e0, tuple(1 - x for x in y.r))


# ---------------------------------------------------------------------------
# legs


@dataclass(frozen=True)
class LegStructure:
    legs: tuple[CFString, CFString, CFString]
    complementary_pair: Optional[tuple[int, int]]
    uniquely_complementary: bool


def _prefixes(s: CFString):
    return [s[:k] for k in range(1, len(s) + 1)]


def leg_structure(y: SeifertData) -> LegStructure:
    legs = tuple(cf_expand(1 / x) for x in y.r)
    if not y.complementary:
        return LegStructure(legs, None, False)
    third = legs[1]
    comp_prefixes = {p.entries for leg in (legs[0], legs[2]) for p in _prefixes(leg)}
    clash = any(riemenschneider_dual(p).entries in comp_prefixes for p in _prefixes(third))
    return LegStructure(legs, (0, 2), not clash)


# ---------------------------------------------------------------------------
# the surgery picture with central framing -1


@dataclass(frozen=True)
class Figure2Form:
    """Central ``-1`` curve with legs ``ab`` and ``ab/(ab-1)``, and a ``-n`` curve
    followed by the chain ``a2string``.  ``ab = 1/r1`` is the first leg's value."""

    ab: Fraction
    n: int
    a2string: CFString

    @property
    def degenerate(self) -> bool:
        """Empty chain: the left-hand lens space is ``S^3``."""
        return not self.a2string.entries

    def to_json(self) -> dict:
        return {"ab": format_rational(self.ab), "n": self.n, "a2": format_cf(self.a2string)}


def rolfsen_framing(y: SeifertData) -> Fraction:
    """``-1/r2'`` after ``-e0 - 1`` Rolfsen twists bring the central framing to ``-1``."""
    return -1 / (y.r2 + y.e0 + 1)


def _require_complementary(y: SeifertData) -> None:
    if not y.complementary:
        raise DomainError(f"{y} has no complementary legs")


def to_figure2(y: SeifertData) -> Figure2Form:
    _require_complementary(y)
    n, a2 = split_framing(rolfsen_framing(y))
    return Figure2Form(1 / y.r1, n, a2)


def from_figure2(f: Figure2Form) -> SeifertData:
    r1 = 1 / Fraction(f.ab)
    denom = f.n - cf_reciprocal(f.a2string)  # the middle leg is n - 1/[a2]
    if denom == 0:
        raise DomainError("middle coefficient is infinite")
    r2 = 1 / denom
    if r2.denominator == 1:
        raise DomainError("middle coefficient is integral: the space is a lens space")
    return normalize(-1, [r1, r2, 1 - r1])


def figure2_euler(y: SeifertData) -> tuple[int, int, int]:
    """``(n, p, q)`` read off from ``e0 + 1 + r2 = p/(np - q)`` with ``0 <= q < p``."""
    _require_complementary(y)
    inv = 1 / (y.e0 + 1 + y.r2)
    n = math.ceil(inv)
    rest = n - inv  # q/p in [0, 1)
    return n, rest.denominator, rest.numerator


def e0_from_framing(n: int, qp: Fraction) -> int:
    """``e0`` of the normalized form of the space with ``-n + q/p`` on the middle curve."""
    qp = Fraction(qp)
    if not 0 <= qp < 1:
        raise DomainError("q/p must lie in [0, 1)")
    if n >= 2:
        return -1
    if n <= -1:
        return -2
    p, q = qp.denominator, qp.numerator
    if n == 1:
        if q == 0 or p % (p - q) == 0:
            raise DomainError("degenerate: middle coefficient integral")
        return p // (p - q) - 1
    if q == 0 or p % q == 0:
        raise DomainError("degenerate: middle coefficient integral or infinite")
    return -(p // q) - 2


# ---------------------------------------------------------------------------
# plumbing strings for e0 <= -2


def seifert_to_plumbing(y: SeifertData) -> tuple[CFString, CFString]:
    _require_complementary(y)
    if y.e0 > -2:
        raise DomainError(f"plumbing form needs e0 <= -2, got {y.e0}")
    return cf_expand(1 / y.r1), CFString((-y.e0,)) + cf_expand(1 / y.r2)


def plumbing_to_seifert(a1: CFLike, a2ext: CFLike) -> SeifertData:
    a1, a2ext = CFString.of(a1), CFString.of(a2ext)
    if not a1.entries or not a1.strict or len(a2ext) < 2 or not a2ext.strict:
        raise DomainError("need a strict a1 and a strict a2ext with at least two entries")
    r1 = 1 / cf_evaluate(a1)
    return SeifertData(-a2ext[0], (r1, 1 / cf_evaluate(a2ext[1:]), 1 - r1))


# ---------------------------------------------------------------------------
# dihedral manifolds D(P, Q)


@dataclass(frozen=True)
class DihedralParams:
    """``Y = orientation * D(P, Q)`` with ``orientation`` in ``{+1, -1}``."""

    orientation: int
    P: int
    Q: int

    def __str__(self):
        return ("" if self.orientation > 0 else "-") + f"D({self.P}, {self.Q})"


def dihedral_params(y: SeifertData) -> DihedralParams:
    if not y.is_dihedral_shape:
        raise DomainError(f"{y} is not of the form Y(e0; 1/2, s, 1/2)")
    if y.e0 <= -2:
        v = -y.e0 - y.r2
        return DihedralParams(1, v.numerator, v.denominator)
    p, q = y.r2.denominator, y.r2.numerator
    return DihedralParams(-1, (y.e0 + 2) * p + q, p)


def seifert_from_dihedral(d: DihedralParams) -> SeifertData:
    v = Fraction(d.P, d.Q)
    if math.gcd(d.P, d.Q) != 1 or v <= 1 or v.denominator == 1:
        raise DomainError(f"D({d.P}, {d.Q}) needs coprime P > Q > 1")
    s = cf_expand(v)
    y = SeifertData(-s[0], (HALF, cf_reciprocal(s[1:]), HALF))
    return y if d.orientation > 0 else reverse_orientation(y)


dihedral_from_seifert = dihedral_params


# ---------------------------------------------------------------------------
# the families Y_{m,h,n} and the e0 >= 0 balanced family


def _check_mh(m: int, h: int) -> None:
    if not (0 < h < m and math.gcd(h, m) == 1):
        raise DomainError(f"need coprime 0 < h < m, got m={m}, h={h}")


def unique_e0(m: int, h: int) -> int:
    """The ``e0 >= 0`` with ``(e0+1)B < m^2 < (e0+2)B`` where ``B = m^2 - mh + 1``."""
    if not 0 < h < m:
        raise DomainError(f"need 0 < h < m, got m={m}, h={h}")
    b = m * m - m * h + 1
    e0 = m * m // b - 1
    if not (e0 + 1) * b < m * m < (e0 + 2) * b:
        raise InvariantViolation(f"inequality fails for m={m}, h={h}")
    return e0


def balanced_s(m: int, h: int, e0: int) -> Fraction:
    b = m * m - m * h + 1
    return Fraction(m * m - (e0 + 1) * b, b)


def y_mhn(m: int, h: int, n: int) -> SeifertData:
    if m == 1 and h == 0:
        if n < 1:
            raise DomainError("n >= 1 required when m = 1")
        return SeifertData(-1, (HALF, Fraction(1, n + 1), HALF))
    _check_mh(m, h)
    if n >= 2:
        return SeifertData(-1, (HALF, Fraction(m * m, n * m * m - m * h + 1), HALF))
    if n == 1:
        e0 = unique_e0(m, h)
        return SeifertData(e0, (HALF, balanced_s(m, h, e0), HALF))
    raise DomainError(f"n = {n} must be >= 1")


def y_mhn_dihedral(m: int, h: int, n: int) -> DihedralParams:
    """Closed form ``-D((n+1)m^2 - mh + 1, nm^2 - mh + 1)``."""
    return DihedralParams(-1, (n + 1) * m * m - m * h + 1, n * m * m - m * h + 1)


@dataclass(frozen=True)
class MinusOneMatch:
    m: int
    h: int
    n: int
    b: int  # denominator of the complementary coefficient


def match_minus_one_form(y: SeifertData) -> Optional[MinusOneMatch]:
    """Recognize ``Y(-1; a/b, m^2/(nm^2 - mh + 1), 1 - a/b)``."""
    if y.e0 != -1 or not y.complementary:
        return None
    p2, q2 = y.r2.numerator, y.r2.denominator
    m = math.isqrt(p2)
    if m * m != p2:
        return None
    c = (1 - q2) % p2
    if c % m:
        return None
    h = c // m
    if m == 1:
        if h != 0:
            return None
    elif not (0 < h < m and math.gcd(h, m) == 1):
        return None
    num = q2 + m * h - 1
    if num % p2:
        return None
    n = num // p2
    if n < (1 if m == 1 else 2):
        return None
    return MinusOneMatch(m, h, n, y.r1.denominator)


@dataclass(frozen=True)
class BalancedMatch:
    m: int
    h: int
    e0: int


def match_balanced_form(y: SeifertData) -> Optional[BalancedMatch]:
    """Recognize ``Y(e0; r, s, 1 - r)`` with ``s = (m^2 - (e0+1)B)/B``, ``B = m^2 - mh + 1``."""
    if y.e0 < 0 or not y.complementary:
        return None
    p2, q2 = y.r2.numerator, y.r2.denominator
    sq = p2 + (y.e0 + 1) * q2
    m = math.isqrt(sq)
    if m * m != sq or m < 2:
        return None
    num = sq + 1 - q2
    if num % m:
        return None
    h = num // m
    if not (0 < h < m and math.gcd(h, m) == 1):
        return None
    if unique_e0(m, h) != y.e0:
        return None
    return BalancedMatch(m, h, y.e0)


# ---------------------------------------------------------------------------
# arithmetic behind the non-balanced structures


def section6_identities(m: int, h: int, e0: int) -> dict:
    _check_mh(m, h)
    p = m * m - m * h + 1
    q = (e0 + 1) * (m * h - 1) - e0 * m * m
    if q <= 0:
        raise DomainError(f"q = {q} <= 0 for m={m}, h={h}, e0={e0}")
    pp = (m - h) ** 2
    qp = (2 * e0 + 1) * m * h - (e0 + 1) * h * h - e0 * m * m - 1
    return {
        "p": p, "q": q, "p_prime": pp, "q_prime": qp,
        "inverse_ok": (pp * (m * h - 1 - p * e0) - 1) % p == 0,
        "p_minus_two_ok": p - 2 == (e0 + 1) * pp + qp,
    }
