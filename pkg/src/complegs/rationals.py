"""Exact rationals and Hirzebruch-Jung continued fractions.

``[a0, a1, ..., an]`` always means the *negative* continued fraction
``a0 - 1/(a1 - 1/(... - 1/an))``.  Rationals are :class:`fractions.Fraction`
throughout, which are kept reduced with a positive denominator.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import CFDivisionByZero, DomainError

Rational = Fraction
RationalLike = Union[Fraction, int, str]


def as_rational(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"n"``; the denominator must be positive."""
    match = _RATIONAL_RE.match(text)
    if not match:
        raise DomainError(f"not a rational: {text!r}")
    num = int(match.group(1))
    den = int(match.group(2)) if match.group(2) is not None else 1
    if den == 0:
        raise DomainError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(x: RationalLike) -> str:
    x = as_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class CFString:
    """A finite sequence of continued-fraction coefficients.

    The string is *strict* when every entry is at least 2; strict strings
    always evaluate to a rational > 1.  Anything else is *relaxed* and may
    fail to evaluate.
    """

    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(a) for a in self.entries))

    @classmethod
    def of(cls, s: "CFLike") -> "CFString":
        if isinstance(s, CFString):
            return s
        if isinstance(s, str):
            return parse_cf(s)
        return cls(tuple(s))

    @property
    def strict(self) -> bool:
        return all(a >= 2 for a in self.entries)

    def value(self) -> Fraction:
        return cf_evaluate(self)

    def reversed(self) -> "CFString":
        return CFString(self.entries[::-1])

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return CFString(self.entries[item])
        return self.entries[item]

    def __add__(self, other):
        return CFString(self.entries + CFString.of(other).entries)

    def __str__(self):
        return "[" + ",".join(str(a) for a in self.entries) + "]"


CFLike = Union[CFString, Sequence[int], str]


def parse_cf(text: str) -> CFString:
    """Parse a bracketed list such as ``"[2,2,3]"`` (brackets optional)."""
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    body = body.strip()
    if not body:
        return CFString(())
    try:
        return CFString(tuple(int(tok) for tok in body.split(",")))
    except ValueError as exc:
        raise DomainError(f"not a continued fraction string: {text!r}") from exc


def format_cf(s: CFLike) -> str:
    return str(CFString.of(s))


def _require_strict(s: CFString, what: str = "string") -> None:
    if not s.entries:
        raise DomainError(f"{what} must be nonempty")
    if not s.strict:
        raise DomainError(f"{what} {s} is not strict (entries must be >= 2)")


def cf_expand(r: RationalLike) -> CFString:
    """Strict expansion of ``r > 1`` via ``a = ceil(r)``, ``r <- 1/(a - r)``."""
    r = as_rational(r)
    if r <= 1:
        raise DomainError(f"cf_expand needs r > 1, got {format_rational(r)}")
    entries = []
    while True:
        a = math.ceil(r)
        entries.append(a)
        rem = a - r
        if rem == 0:
            break
        nxt = 1 / rem
        # termination: the denominators strictly decrease
        assert nxt.denominator < r.denominator
        r = nxt
    return CFString(tuple(entries))


def cf_evaluate(s: CFLike) -> Fraction:
    """Evaluate ``[a0, ..., an]``; relaxed strings may raise CFDivisionByZero."""
    s = CFString.of(s)
    if not s.entries:
        raise DomainError("the empty string has no finite value; use cf_reciprocal")
    val = Fraction(s.entries[-1])
    for a in reversed(s.entries[:-1]):
        if val == 0:
            raise CFDivisionByZero(f"suffix of {s} evaluates to 0")
        val = a - 1 / val
    return val


def cf_reciprocal(s: CFLike) -> Fraction:
    """``1/[s]`` with the convention ``1/[] = 0``."""
    s = CFString.of(s)
    if not s.entries:
        return Fraction(0)
    val = cf_evaluate(s)
    if val == 0:
        raise CFDivisionByZero(f"{s} evaluates to 0")
    return 1 / val


def riemenschneider_dual(s: CFLike) -> CFString:
    """Dual string of ``p/q`` (the expansion of ``p/(p-q)``) by the point rule.

    Row ``i`` of the point diagram holds ``a_i - 1`` points and starts in the
    column where row ``i - 1`` ended; the dual entries are one more than the
    column counts.
    """
    s = CFString.of(s)
    _require_strict(s)
    counts: list[int] = []
    col = 0
    for i, a in enumerate(s.entries):
        start = col
        stop = col + a - 1  # a - 1 points in columns start .. stop-1
        for c in range(start, stop):
            if c == len(counts):
                counts.append(0)
            counts[c] += 1
        col = stop - 1
    if not counts:
        raise DomainError(f"{s} has value 1; no dual exists")
    return CFString(tuple(c + 1 for c in counts))


def mod_inverse(q: int, p: int) -> int:
    """The inverse ``0 < q* < p`` of ``q`` modulo ``p``."""
    if not 0 < q < p:
        raise DomainError(f"mod_inverse needs 0 < q < p, got q={q}, p={p}")
    if math.gcd(q, p) != 1:
        raise DomainError(f"gcd({q}, {p}) != 1")
    return pow(q, -1, p) if p > 1 else 0


def cf_reverse_value(s: CFLike) -> Fraction:
    """Value of the reversed string, computed arithmetically as ``p/q*``."""
    s = CFString.of(s)
    _require_strict(s)
    v = cf_evaluate(s)
    p, q = v.numerator, v.denominator
    if q == 1:
        return Fraction(p, 1)
    return Fraction(p, mod_inverse(q, p))


def i_value(s: CFLike) -> int:
    """Lisca's complexity ``I = sum(a_i - 3)``."""
    s = CFString.of(s)
    _require_strict(s)
    return sum(a - 3 for a in s.entries)


def split_framing(x: RationalLike) -> tuple[int, CFString]:
    """Write ``x = -n + 1/[s]`` with ``[s] > 1`` strict (``s = []`` if integral).

    Defined for every rational: negative inputs come from ``e0 >= -1`` and
    positive ones from ``e0 <= -2``.
    """
    x = as_rational(x)
    n = -math.floor(x)
    rem = x + n
    if rem == 0:
        return n, CFString(())
    return n, cf_expand(1 / rem)


def lemma_equiv_check(s: CFLike) -> tuple[Fraction, Fraction]:
    """Both sides of ``(p-q)/q' = [a_t - 1, a_{t+1}, ...]`` for ``s = [2^t, a_t, ...]``."""
    s = CFString.of(s)
    _require_strict(s)
    t = 0
    while t < len(s) and s[t] == 2:
        t += 1
    if t == 0 or t == len(s):
        raise DomainError(f"{s} must be a nonempty run of 2s followed by an entry > 2")
    v = cf_evaluate(s)
    p, q = v.numerator, v.denominator
    lhs = Fraction(p - q, q % (p - q))
    rhs = cf_evaluate((s[t] - 1,) + s.entries[t + 1:])
    return lhs, rhs


def strict_strings(max_len: int, max_entry: int, min_len: int = 1) -> Iterable[CFString]:
    """All strict strings with ``min_len <= len <= max_len`` and entries ``<= max_entry``."""
    from itertools import product

    for n in range(min_len, max_len + 1):
        for entries in product(range(2, max_entry + 1), repeat=n):
            yield CFString(entries)
