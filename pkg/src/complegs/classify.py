"""Which small Seifert fibered spaces with complementary legs bound rational homology balls,
smoothly and symplectically, and with how many contact structures.

Every verdict carries a :class:`Rule` naming the result that decided it.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .errors import DomainError, InvariantViolation
from .lisca import RCertificate, r_membership
from .plumbing import theta_canonical_formula, theta_lens_canonical
from .rationals import CFString, cf_evaluate, format_rational
from .seifert import (
    SeifertData,
    figure2_euler,
    leg_structure,
    match_balanced_form,
    match_minus_one_form,
    reverse_orientation,
    rolfsen_framing,
    seifert_to_plumbing,
    split_framing,
    y_mhn,
)


class Smooth(enum.Enum):
    Bounds = "Bounds"
    DoesNotBound = "DoesNotBound"


class Kind(enum.Enum):
    NONE = "None"
    Exactly = "Exactly"
    AtLeast = "AtLeast"
    AtMost = "AtMost"
    Range = "Range"
    OutOfTheoremScope = "OutOfTheoremScope"


class Rule(enum.Enum):
    SMOOTH_OBSTRUCTION = "no_smooth_rational_ball"
    NEGATIVE_E0 = "e0_le_-2_theta_obstruction"
    UNIQUELY_COMPLEMENTARY = "e0_eq_-1_uniquely_complementary"
    BALANCED = "e0_ge_0_balanced_family"
    DIHEDRAL_NONNEG = "e0_ge_0_dihedral"
    SPHERICAL = "spherical_classification"
    SPECIAL_CASE = "e0_eq_-1_special_case"
    OPEN = "outside_known_results"


@dataclass(frozen=True)
class SymplecticCount:
    kind: Kind
    lo: Optional[int] = None
    hi: Optional[int] = None

    @classmethod
    def none(cls):
        return cls(Kind.NONE)

    @classmethod
    def exactly(cls, k):
        return cls(Kind.Exactly, k, k)

    @classmethod
    def at_least(cls, k):
        return cls(Kind.AtLeast, k, None)

    @classmethod
    def at_most(cls, k):
        return cls(Kind.AtMost, 0, k)

    @classmethod
    def between(cls, lo, hi):
        return cls(Kind.Range, lo, hi)

    @classmethod
    def open(cls):
        return cls(Kind.OutOfTheoremScope)

    @property
    def is_none(self) -> bool:
        return self.kind is Kind.NONE

    @property
    def positive(self) -> bool:
        """At least one structure is known to fill."""
        return self.lo is not None and self.lo > 0

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind.value}
        if self.kind is Kind.Exactly:
            out["count"] = self.lo
        elif self.kind is Kind.AtLeast:
            out["count"] = self.lo
        elif self.kind is Kind.AtMost:
            out["count"] = self.hi
        elif self.kind is Kind.Range:
            out["lo"], out["hi"] = self.lo, self.hi
        return out

    def __str__(self):
        j = self.to_json()
        if self.kind is Kind.Range:
            return f"Range({self.lo},{self.hi})"
        return f"{self.kind.value}({j['count']})" if "count" in j else self.kind.value


@dataclass(frozen=True)
class FillingVerdict:
    smooth: Smooth
    smooth_certificate: Optional[RCertificate]
    symplectic: SymplecticCount
    rule_fired: Rule
    uniqueness_note: Optional[int] = None
    notes: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if not self.symplectic.is_none and self.symplectic.kind is not Kind.OutOfTheoremScope:
            if self.smooth is not Smooth.Bounds:
                raise InvariantViolation("symplectic filling without a smooth one")

    def to_json(self) -> dict:
        return {
            "smooth": self.smooth.value,
            "symplectic": self.symplectic.to_json(),
            "rule": self.rule_fired.value,
            "certificate": self.smooth_certificate.to_json() if self.smooth_certificate else None,
            "uniqueness_note": self.uniqueness_note,
            "notes": list(self.notes),
        }


# ---------------------------------------------------------------------------
# smooth


def _member(p: int, q: int) -> tuple[bool, Optional[RCertificate]]:
    if q == 0:  # S^3
        return True, None
    cert = r_membership(p, q)
    return cert is not None, cert


def figure2_lens(y: SeifertData) -> CFString:
    """The chain ``[a_1, ..., a_k]`` of the lens space normal-summed into ``Y``."""
    _, a2 = split_framing(rolfsen_framing(y))
    return a2


def smooth_verdict(y: SeifertData) -> tuple[bool, Optional[RCertificate]]:
    """Decide smooth bounding through two independent routes and insist they agree.

    Route one twists the middle curve until the central framing is ``-1`` and
    splits its new coefficient; route two reads ``p/(np - q)`` off the Euler
    number.  An empty chain means the lens space is ``S^3``.
    """
    if not y.complementary:
        raise DomainError(f"{y} has no complementary legs")
    if not y.is_qhs:
        raise DomainError(f"{y} is not a rational homology sphere")
    a2 = figure2_lens(y)
    if a2.entries:
        v = cf_evaluate(a2)
        route1 = _member(v.numerator, v.denominator)
        pq1 = (v.numerator, v.denominator)
    else:
        route1, pq1 = (True, None), (1, 0)
    _, p, q = figure2_euler(y)
    route2 = _member(p, q)
    if route1[0] != route2[0] or pq1 != (p, q):
        raise InvariantViolation(f"smooth routes disagree on {y}")
    return route1


def pq_prime_member(a2ext: CFString) -> bool:
    """Membership of ``(p-q)/q'`` for ``p/q = [a2ext]``, ``q'`` the residue of ``q`` mod ``p-q``."""
    v = cf_evaluate(a2ext)
    p, q = v.numerator, v.denominator
    d = p - q
    if d == 1:
        return True
    return r_membership(d, q % d) is not None


# ---------------------------------------------------------------------------
# symplectic


def _minus_one_count(m: int, n: int, b: int) -> tuple[SymplecticCount, Optional[int], tuple[str, ...]]:
    half = b // 2
    if m == 1:
        lower, exact = min(half, n), n + 1
    else:
        lower, exact = min(half, 2 * n), 2 * n
    notes = [f"lower bound min(floor(b/2), {'n' if m == 1 else '2n'}) = {lower}"]
    count = SymplecticCount.at_least(lower)
    if 2 * exact <= b:
        count = SymplecticCount.exactly(exact)
        notes.append(f"exact count {'n+1' if m == 1 else '2n'} = {exact} since it is <= b/2")
    unique = None
    if n > 2:
        unique = n - 2 if m == 1 else 2 * n - 2
    return count, unique, tuple(notes)


def _dihedral_verdict(y: SeifertData, smooth: Smooth, cert) -> FillingVerdict:
    """``Y(e0; 1/2, s, 1/2)`` with ``e0 >= -1``: the complete spherical list decides."""
    if y.e0 == -1:
        mm = match_minus_one_form(y)
        if mm is None:
            return FillingVerdict(smooth, cert, SymplecticCount.none(), Rule.SPHERICAL)
        if mm.m == 1:
            k = 3 if mm.n == 1 else 2
            return FillingVerdict(smooth, cert, SymplecticCount.exactly(k), Rule.SPECIAL_CASE,
                                  notes=(f"M_{mm.n + 1}",))
        k = 6 if mm.n == 2 else 4
        unique = 2 * mm.n - 2 if mm.n > 2 else None
        return FillingVerdict(smooth, cert, SymplecticCount.exactly(k), Rule.SPHERICAL,
                              uniqueness_note=unique, notes=(f"Y_{{{mm.m},{mm.h},{mm.n}}}",))
    bm = match_balanced_form(y)
    if bm is None:
        return FillingVerdict(smooth, cert, SymplecticCount.none(), Rule.DIHEDRAL_NONNEG)
    return FillingVerdict(smooth, cert, SymplecticCount.exactly(4), Rule.DIHEDRAL_NONNEG,
                          notes=(f"Y_{{{bm.m},{bm.h},1}}", "four balanced structures"))


def symplectic_verdict(y: SeifertData) -> FillingVerdict:
    ls = leg_structure(y)
    if ls.complementary_pair is None:
        raise DomainError(f"{y} has no complementary legs")
    bounds, cert = smooth_verdict(y)
    smooth = Smooth.Bounds if bounds else Smooth.DoesNotBound

    if y.e0 <= -2:
        return FillingVerdict(smooth, cert, SymplecticCount.none(), Rule.NEGATIVE_E0)
    if y.is_dihedral_shape:
        return _dihedral_verdict(y, smooth, cert)
    if y.is_tetrahedral_shape:
        if y.e0 == -1:
            return FillingVerdict(smooth, cert, SymplecticCount.exactly(3), Rule.SPECIAL_CASE,
                                  notes=("-T_3",))
        return FillingVerdict(smooth, cert, SymplecticCount.none(), Rule.SPHERICAL)
    if not bounds:
        return FillingVerdict(smooth, cert, SymplecticCount.none(), Rule.SMOOTH_OBSTRUCTION)

    if y.e0 == -1:
        if not ls.uniquely_complementary:
            return FillingVerdict(smooth, cert, SymplecticCount.open(), Rule.OPEN,
                                  notes=("complementary but not uniquely complementary",))
        mm = match_minus_one_form(y)
        if mm is None:
            return FillingVerdict(smooth, cert, SymplecticCount.none(), Rule.UNIQUELY_COMPLEMENTARY)
        count, unique, notes = _minus_one_count(mm.m, mm.n, mm.b)
        return FillingVerdict(smooth, cert, count, Rule.UNIQUELY_COMPLEMENTARY,
                              uniqueness_note=unique,
                              notes=(f"m={mm.m}, h={mm.h}, n={mm.n}, b={mm.b}",) + notes)

    residue = 2 if y.e0 == 0 else 4
    bm = match_balanced_form(y)
    if bm is not None:
        return FillingVerdict(smooth, cert, SymplecticCount.between(4, 4 + residue), Rule.BALANCED,
                              notes=(f"m={bm.m}, h={bm.h}", "four balanced structures fill",
                                     f"at most {residue} non-balanced ones may"))
    return FillingVerdict(smooth, cert, SymplecticCount.at_most(residue), Rule.BALANCED,
                          notes=("no balanced structure fills",))


def theta_gate(y: SeifertData) -> Fraction:
    """``theta`` of the canonical structure on the lens space in the ``-1`` framed picture.

    Every filling this module reports is built from a ball filling of that lens
    space, so a positive verdict must see ``-2`` here.
    """
    return theta_lens_canonical(figure2_lens(y))


def theta_canonical_of(y: SeifertData) -> Fraction:
    """``theta(xi_can)`` for ``e0 <= -2`` via the plumbing formula."""
    a1, a2ext = seifert_to_plumbing(y)
    return theta_canonical_formula(a1, a2ext).theta


# ---------------------------------------------------------------------------
# spherical manifolds


@dataclass(frozen=True)
class Spherical:
    kind: str  # "Lens", "DihedralNeg" or "TMinus3"
    m: int = 0
    h: int = 0
    n: int = 0

    @classmethod
    def lens(cls, m, h):
        return cls("Lens", m, h)

    @classmethod
    def dihedral_neg(cls, m, h, n):
        return cls("DihedralNeg", m, h, n)

    @classmethod
    def t_minus_3(cls):
        return cls("TMinus3")


def spherical_table(s: Spherical) -> int:
    """Number of contact structures with a symplectic rational ball filling."""
    if s.kind == "Lens":
        if not (0 < s.h < s.m and math.gcd(s.h, s.m) == 1):
            raise DomainError(f"L(m^2, mh-1) needs coprime 0 < h < m, got m={s.m}, h={s.h}")
        return 2
    if s.kind == "TMinus3":
        return 3
    if s.kind == "DihedralNeg":
        if s.m == 1 and s.h == 0:
            if s.n < 1:
                raise DomainError("n >= 1 required")
            return 3 if s.n == 1 else 2
        if not (0 < s.h < s.m and math.gcd(s.h, s.m) == 1) or s.n < 1:
            raise DomainError(f"invalid parameters m={s.m}, h={s.h}, n={s.n}")
        return 6 if s.n == 2 else 4
    raise DomainError(f"unknown spherical family {s.kind!r}")


def spherical_seifert(s: Spherical) -> SeifertData:
    if s.kind == "DihedralNeg":
        return y_mhn(s.m, s.h, s.n)
    if s.kind == "TMinus3":
        return SeifertData(-1, (Fraction(2, 3), Fraction(1, 2), Fraction(1, 3)))
    raise DomainError("lens spaces have no three-fiber Seifert form")


def corollary_bound_check(verdicts: Iterable[FillingVerdict]) -> bool:
    """No verdict admits more than six filled contact structures."""
    for v in verdicts:
        c = v.symplectic
        bound = c.hi if c.hi is not None else c.lo
        if bound is not None and bound > 6:
            return False
    return True


def orientation_pair(y: SeifertData) -> tuple[FillingVerdict, FillingVerdict]:
    return symplectic_verdict(y), symplectic_verdict(reverse_orientation(y))
