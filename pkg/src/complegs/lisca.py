"""Membership in Lisca's set R of rationals ``p/q`` with ``L(p, q)`` bounding a rational ball.

``p/q`` is a member when ``p = m^2`` and one of ``q``, ``p - q``, ``q*`` or ``p - q*`` (``q*`` the
inverse of ``q`` mod ``p``) has one of four arithmetic shapes:

* F1: ``mh +- 1`` with ``0 < h < m`` and ``gcd(h, m) = 1``
* F2: ``mh +- 1`` with ``0 < h < m`` and ``gcd(h, m) = 2``
* F3: ``h(m +- 1)`` with ``h > 1`` dividing ``2m -+ 1``
* F4: ``h(m +- 1)`` with ``h > 1`` odd, dividing ``m +- 1``

F2 (the ``gcd = 2`` case of ``mh +- 1``) is part of the set.

``p - q*`` is tested as well: ``L(p, q)``, ``L(p, q*)`` and ``-L(p, q) = L(p, p-q)``
bound rational balls together, and with only the first three targets the
set would not be closed under ``q -> q*``: ``81/31`` is a member through
``p - q = 50``, and its partner ``81/34`` only through ``p - q* = 50``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import DomainError
from .rationals import mod_inverse


class WitnessTarget(enum.Enum):
    Q = "Q"
    PminusQ = "PminusQ"
    QStar = "QStar"
    PminusQStar = "PminusQStar"


class Family(enum.Enum):
    F1 = "F1_mh±1_coprime"
    F2 = "F2_mh±1_gcd2"
    F3 = "F3_h_times_m±1_divides_2m∓1"
    F4 = "F4_h_times_m±1_odd_divides_m±1"


class Sign(enum.Enum):
    Plus = "Plus"
    Minus = "Minus"


_ORDER = {
    **{t: i for i, t in enumerate(WitnessTarget)},
    **{f: i for i, f in enumerate(Family)},
    **{s: i for i, s in enumerate(Sign)},
}


def family_value(family: Family, m: int, h: int, sign: Sign) -> int:
    """Evaluate a family's closed form (side conditions are not checked)."""
    eps = 1 if sign is Sign.Plus else -1
    if family in (Family.F1, Family.F2):
        return m * h + eps
    return h * (m + eps)


def family_conditions(family: Family, m: int, h: int, sign: Sign) -> bool:
    eps = 1 if sign is Sign.Plus else -1
    if family is Family.F1:
        return 0 < h < m and math.gcd(h, m) == 1
    if family is Family.F2:
        return 0 < h < m and math.gcd(h, m) == 2
    if family is Family.F3:
        return h > 1 and (2 * m - eps) % h == 0
    return h > 1 and h % 2 == 1 and (m + eps) % h == 0


@dataclass(frozen=True)
class RCertificate:
    m: int
    witness_target: WitnessTarget
    family: Family
    h: int
    sign: Sign

    @property
    def value(self) -> int:
        return family_value(self.family, self.m, self.h, self.sign)

    def sort_key(self) -> tuple:
        return (_ORDER[self.witness_target], _ORDER[self.family], self.h, _ORDER[self.sign])

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "witness_target": self.witness_target.name,
            "family": self.family.value,
            "h": self.h,
            "sign": self.sign.name,
        }


def _targets(p: int, q: int) -> dict[WitnessTarget, int]:
    qs = mod_inverse(q, p)
    return {
        WitnessTarget.Q: q,
        WitnessTarget.PminusQ: p - q,
        WitnessTarget.QStar: qs,
        WitnessTarget.PminusQStar: p - qs,
    }


def _family_hits(t: int, m: int) -> Iterator[tuple[Family, int, Sign]]:
    """All ``(family, h, sign)`` whose closed form equals ``t`` for this ``m``.

    Each family is linear in ``h``, so ``h`` is solved for rather than searched.
    """
    for family in Family:
        for sign in Sign:
            eps = 1 if sign is Sign.Plus else -1
            if family in (Family.F1, Family.F2):
                num, den = t - eps, m
            else:
                num, den = t, m + eps
            if den <= 0 or num % den:
                continue
            h = num // den
            if family_conditions(family, m, h, sign):
                yield family, h, sign


def all_certificates(p: int, q: int) -> list[RCertificate]:
    """Every certificate for ``p/q``, sorted by the tie-break order."""
    _check_pair(p, q)
    m = math.isqrt(p)
    if m * m != p:
        return []
    certs = [
        RCertificate(m, target, family, h, sign)
        for target, t in _targets(p, q).items()
        for family, h, sign in _family_hits(t, m)
    ]
    return sorted(certs, key=RCertificate.sort_key)


def _check_pair(p: int, q: int) -> None:
    if not (isinstance(p, int) and isinstance(q, int)):
        raise DomainError("p and q must be integers")
    if not 1 <= q < p:
        raise DomainError(f"need p > q >= 1, got p={p}, q={q}")
    if math.gcd(p, q) != 1:
        raise DomainError(f"gcd({p}, {q}) != 1")


def r_membership(p: int, q: int) -> Optional[RCertificate]:
    """Lexicographically first certificate for ``p/q``, or ``None``."""
    certs = all_certificates(p, q)
    return certs[0] if certs else None


def verify_certificate(p: int, q: int, cert: RCertificate) -> bool:
    """Re-evaluate the certificate's family against the named target value."""
    if cert.m * cert.m != p:
        return False
    if not family_conditions(cert.family, cert.m, cert.h, cert.sign):
        return False
    return _targets(p, q)[cert.witness_target] == cert.value


def r_grid(p_max: int) -> list[tuple[int, int]]:
    """All members ``(p, q)`` with ``1 <= q < p <= p_max``, sorted."""
    out = []
    for m in range(2, math.isqrt(p_max) + 1):
        p = m * m
        for q in range(1, p):
            if math.gcd(p, q) == 1 and r_membership(p, q) is not None:
                out.append((p, q))
    return out


def in_r_or_trivial(p: int, q: int) -> bool:
    """Membership allowing ``p/q = 1/0``, i.e. ``S^3 = L(1, 0)``, which bounds ``B^4``.

    Arises as an empty leg string or as ``(p-q)/q'`` with ``p - q = 1``.
    """
    if p == 1 and q == 0:
        return True
    return r_membership(p, q) is not None
