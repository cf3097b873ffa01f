"""Even continued fractions and chord diagrams of rational knots.

A fraction ``p/q`` with ``0 < |p/q| < 1`` and ``p`` even, ``q`` odd expands
as ``1/(b_1 + 1/(b_2 + ...))`` with every ``b_i`` even and nonzero.  Each
pair of terms becomes a block of chords: a run of outer chords built by
nesting (op2) and a run of inner chords built by flanking (op1).  The last
chord added by nesting is certified as a support chord.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .chords import ChordDiagram, apply_op1, apply_op2, elementary_diagram
from .laurent import LaurentPoly, lp_normalize

__all__ = [
    "EvenCF",
    "RationalError",
    "even_cf",
    "cf_value",
    "rational_diagram",
    "parse_fraction",
    "two_bridge_alexander",
]


class RationalError(ValueError):
    pass


@dataclass(frozen=True)
class EvenCF:
    terms: tuple[int, ...]

    def __post_init__(self):
        for b in self.terms:
            if b == 0 or b % 2:
                raise RationalError(f"continued-fraction terms must be even and nonzero, got {b}")

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __str__(self) -> str:
        return "[" + ", ".join(str(b) for b in self.terms) + "]"


def parse_fraction(text: str) -> tuple[int, int]:
    """Parse ``p/q`` into a pair of integers."""
    try:
        p, q = text.split("/")
        return int(p), int(q)
    except ValueError:
        raise RationalError(f"expected a fraction p/q, got {text!r}") from None


def _nearest_even(x: Fraction) -> int:
    lo = 2 * math.floor(x / 2)
    hi = lo + 2
    dlo, dhi = x - lo, hi - x
    if dlo < dhi:
        return lo
    if dhi < dlo:
        return hi
    # x is an odd integer; pick the side that leaves a negative remainder
    return hi


def even_cf(p: int, q: int) -> EvenCF:
    """Greedy expansion of ``p/q`` into even terms."""
    if q == 0:
        raise RationalError("denominator must be nonzero")
    if math.gcd(p, q) != 1:
        raise RationalError(f"{p}/{q} is not in lowest terms")
    v = Fraction(p, q)
    if not 0 < abs(v) < 1:
        raise RationalError(f"need 0 < |p/q| < 1, got {p}/{q}")
    if p % 2 and q % 2:
        raise RationalError(f"{p}/{q} has odd numerator and denominator, so it has no even expansion")
    terms = []
    for _ in range(abs(q) + 2):
        x = 1 / v
        b = _nearest_even(x)
        if b == 0:
            raise RationalError(f"even expansion of {p}/{q} failed")
        terms.append(b)
        v = x - b
        if v == 0:
            cf = EvenCF(tuple(terms))
            if cf_value(cf) != Fraction(p, q):
                raise RationalError(f"internal error: expansion of {p}/{q} does not round-trip")
            return cf
    raise RationalError(f"even expansion of {p}/{q} did not terminate")


def cf_value(cf: EvenCF | Sequence[int]) -> Fraction:
    """Exact value of ``1/(b_1 + 1/(b_2 + ...))``; the empty expansion is 0."""
    terms = list(cf.terms if isinstance(cf, EvenCF) else cf)
    v = Fraction(0)
    for b in reversed(terms):
        denom = b + v
        if denom == 0:
            raise RationalError(f"continued fraction {terms} divides by zero")
        v = 1 / denom
    return v


def _sgn(x: int) -> int:
    return 1 if x > 0 else -1


# Chord signs relative to the continued-fraction signs.  Chosen so that the
# reconstructed knot has the two-bridge Alexander polynomial of its fraction
# (see tests/test_rational.py); outer chords carry the opposite sign.
OUTER_SIGN_FLIP = -1
INNER_SIGN_FLIP = 1


def rational_diagram(cf: EvenCF | Sequence[int]) -> tuple[ChordDiagram, int]:
    """Chord diagram of the rational knot with expansion ``cf``.

    Terms are consumed in pairs from the end: the last pair ``(a, b)``
    gives the base two-chord diagram plus ``|b|/2 - 1`` inner chords (op1 on
    the outer chord) and ``|a|/2 - 1`` outer chords (op2).  Each earlier pair
    adds one outer chord by op2, then ``|b|/2`` inner chords on it by op1,
    then ``|a|/2 - 1`` more outer chords by op2.

    Returns the diagram and a certified support chord: the last chord added
    by op2, or the base outer chord if op2 was never used.  Chords added by
    op1 afterwards keep it a support chord, but are not support chords
    themselves in general.
    """
    if not isinstance(cf, EvenCF):
        cf = EvenCF(tuple(cf))
    terms = cf.terms
    if not terms:
        raise RationalError("empty continued fraction")
    if len(terms) % 2:
        raise RationalError(f"continued fraction {cf} has odd length: a rational link, not a knot")
    pairs = [(terms[i] // 2, terms[i + 1] // 2) for i in range(0, len(terms), 2)]
    a, b = pairs[-1]
    out_sign = OUTER_SIGN_FLIP * _sgn(a)
    in_sign = INNER_SIGN_FLIP * _sgn(b)
    d = elementary_diagram(out_sign, in_sign)
    outer = last = 1
    for _ in range(abs(b) - 1):
        d = apply_op1(d, outer, in_sign)
    for _ in range(abs(a) - 1):
        d = apply_op2(d, outer, out_sign)
        outer = last = max(d.ids)
    for a, b in reversed(pairs[:-1]):
        out_sign = OUTER_SIGN_FLIP * _sgn(a)
        in_sign = INNER_SIGN_FLIP * _sgn(b)
        d = apply_op2(d, outer, out_sign)
        outer = last = max(d.ids)
        for _ in range(abs(b)):
            d = apply_op1(d, outer, in_sign)
        for _ in range(abs(a) - 1):
            d = apply_op2(d, outer, out_sign)
            outer = last = max(d.ids)
    return d, last


def two_bridge_alexander(alpha: int, beta: int) -> LaurentPoly:
    """Alexander polynomial of the two-bridge knot b(alpha, beta), alpha odd.

    Uses the closed form sum_k (-1)^k t^(e_1 + ... + e_k) with
    e_i = (-1)^floor(i*beta/alpha), valid for odd beta.  Independent of the
    chord machinery, so it serves as a reference.
    """
    alpha = abs(alpha)
    if alpha % 2 == 0:
        raise RationalError("two-bridge knots have odd alpha")
    if beta % 2 == 0:
        beta -= alpha
    acc: dict[int, int] = {}
    e = 0
    for k in range(alpha):
        if k:
            e += -1 if (k * beta // alpha) % 2 else 1
        acc[e] = acc.get(e, 0) + (-1) ** k
    return lp_normalize(LaurentPoly(acc))
