"""Exact arithmetic in Z[t, t^-1].

A :class:`LaurentPoly` is an immutable sparse map ``exponent -> coefficient``
with no zero coefficients stored.  Coefficients are Python ints, so there is
no overflow.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

__all__ = [
    "LaurentPoly",
    "lp_mul",
    "lp_is_unit",
    "lp_normalize",
    "lp_gcd",
    "lp_gcd_many",
    "format_laurent",
    "parse_laurent",
    "T",
    "ONE",
    "ZERO",
]

Coercible = Union["LaurentPoly", int]


class LaurentPoly:
    """Element of Z[t, t^-1] in canonical sparse form."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, int] = {}
        for e, c in items:
            if c:
                acc[int(e)] = acc.get(int(e), 0) + int(c)
        self._terms = tuple(sorted((e, c) for e, c in acc.items() if c))
        self._hash = None

    # construction helpers

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, c: int, e: int) -> "LaurentPoly":
        return cls({e: c})

    @classmethod
    def from_dense(cls, coeffs: Iterable[int], low: int = 0) -> "LaurentPoly":
        """Build from coefficients listed from exponent ``low`` upward."""
        return cls({low + i: c for i, c in enumerate(coeffs)})

    @staticmethod
    def coerce(x: Coercible) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return LaurentPoly({0: x})
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    # accessors

    @property
    def terms(self) -> tuple[tuple[int, int], ...]:
        """Sorted ``(exponent, coefficient)`` pairs."""
        return self._terms

    def coeff(self, e: int) -> int:
        for k, c in self._terms:
            if k == e:
                return c
        return 0

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def valuation(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no valuation")
        return self._terms[0][0]

    @property
    def degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return self._terms[-1][0]

    @property
    def span(self) -> int:
        return self.degree - self.valuation if self._terms else -1

    def content(self) -> int:
        g = 0
        for _, c in self._terms:
            g = math.gcd(g, c)
        return g

    def to_dense(self) -> list[int]:
        """Coefficients from valuation to degree (the polynomial ``self * t^-val``)."""
        if not self._terms:
            return []
        low = self.valuation
        out = [0] * (self.degree - low + 1)
        for e, c in self._terms:
            out[e - low] = c
        return out

    # arithmetic

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __neg__(self) -> "LaurentPoly":
        return _raw(tuple((e, -c) for e, c in self._terms))

    def __add__(self, other: Coercible) -> "LaurentPoly":
        other = LaurentPoly.coerce(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        acc = dict(self._terms)
        for e, c in other._terms:
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly(acc)

    __radd__ = __add__

    def __sub__(self, other: Coercible) -> "LaurentPoly":
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other: Coercible) -> "LaurentPoly":
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other: Coercible) -> "LaurentPoly":
        other = LaurentPoly.coerce(other)
        if not self._terms or not other._terms:
            return ZERO
        if len(other._terms) == 1:
            (f, d), = other._terms
            return _raw(tuple((e + f, c * d) for e, c in self._terms))
        if len(self._terms) == 1:
            return other * self
        acc: dict[int, int] = {}
        for e, c in self._terms:
            for f, d in other._terms:
                acc[e + f] = acc.get(e + f, 0) + c * d
        return LaurentPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if not lp_is_unit(self):
                raise ValueError("negative power of a non-unit")
            (e, c), = self._terms
            return LaurentPoly({e * k: c ** -k})
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``t^k``."""
        if not k:
            return self
        return _raw(tuple((e + k, c) for e, c in self._terms))

    def conjugate(self) -> "LaurentPoly":
        """Substitute ``t -> t^-1``."""
        return LaurentPoly({-e: c for e, c in self._terms})

    def __call__(self, x):
        """Evaluate at an int, Fraction or other ring element (no floats promised)."""
        total = 0
        for e, c in self._terms:
            if e >= 0:
                total += c * x ** e
            else:
                total += c * Fraction(1) / Fraction(x) ** (-e)
        return total

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Return ``self / other``; raises ``ArithmeticError`` if the division is not exact."""
        q = self.divides_by(other)
        if q is None:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def divides_by(self, other: "LaurentPoly") -> "LaurentPoly | None":
        """Quotient ``self / other`` in Z[t, t^-1] if it exists, else ``None``."""
        if not other._terms:
            raise ZeroDivisionError("division by zero polynomial")
        if not self._terms:
            return ZERO
        if len(other._terms) == 1:
            (f, d), = other._terms
            out = []
            for e, c in self._terms:
                q, r = divmod(c, d)
                if r:
                    return None
                out.append((e - f, q))
            return _raw(tuple(out))
        num = self.to_dense()
        den = other.to_dense()
        q = _dense_exact_div(num, den)
        if q is None:
            return None
        return LaurentPoly.from_dense(q, self.valuation - other.valuation)

    # text

    def __str__(self) -> str:
        return format_laurent(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({format_laurent(self)!r})"


def _raw(terms: tuple[tuple[int, int], ...]) -> LaurentPoly:
    # terms already canonical: sorted, nonzero
    p = LaurentPoly.__new__(LaurentPoly)
    p._terms = terms
    p._hash = None
    return p


def _dense_exact_div(num: list[int], den: list[int]) -> list[int] | None:
    """Exact division of integer polynomials (ascending coefficient lists)."""
    if len(num) < len(den):
        return None
    num = list(num)
    lead = den[-1]
    dn = len(den)
    q = [0] * (len(num) - dn + 1)
    for i in range(len(q) - 1, -1, -1):
        c, r = divmod(num[i + dn - 1], lead)
        if r:
            return None
        q[i] = c
        if c:
            for j in range(dn):
                num[i + j] -= c * den[j]
    if any(num[: dn - 1]):
        return None
    return q


ZERO = LaurentPoly()
ONE = LaurentPoly({0: 1})
T = LaurentPoly({1: 1})


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def lp_is_unit(a: LaurentPoly) -> bool:
    """True iff ``a = ±t^k``."""
    return len(a.terms) == 1 and abs(a.terms[0][1]) == 1


def lp_normalize(a: LaurentPoly) -> LaurentPoly:
    """Unit multiple of ``a`` with lowest exponent 0 and positive constant term."""
    if a.is_zero():
        raise ValueError("cannot normalize the zero polynomial")
    low, c0 = a.terms[0]
    out = a.shift(-low)
    return -out if c0 < 0 else out


def _primitive(p: list[int]) -> list[int]:
    g = 0
    for c in p:
        g = math.gcd(g, c)
    if g == 0:
        return p
    if p[-1] < 0:
        g = -g
    return [c // g for c in p]


def _pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    lb = b[-1]
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        la = a[-1]
        shift = len(a) - 1 - db
        a = [c * lb for c in a]
        for j in range(db + 1):
            a[shift + j] -= la * b[j]
        while a and a[-1] == 0:
            a.pop()
    return a


def lp_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Greatest common divisor in Z[t, t^-1], reported in normalized form.

    Content gcd times the gcd of primitive parts, the latter computed with a
    primitive (fraction-free) remainder sequence in Z[t].
    """
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if a.is_zero():
        return lp_normalize(b)
    if b.is_zero():
        return lp_normalize(a)
    cont = math.gcd(a.content(), b.content())
    x = _primitive(a.to_dense())
    y = _primitive(b.to_dense())
    if len(x) < len(y):
        x, y = y, x
    while y and len(y) > 1:
        r = _pseudo_rem(x, y)
        x, y = y, (_primitive(r) if r else [])
    g = [1] if y else x
    return lp_normalize(LaurentPoly.from_dense(_primitive(g)) * cont)


def lp_gcd_many(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    """gcd of a family; zero if every member is zero."""
    g = ZERO
    for p in polys:
        if p.is_zero():
            continue
        g = lp_normalize(p) if g.is_zero() else lp_gcd(g, p)
        if g == ONE:
            break
    return g


# text format: "t^2 - t + 1", "t^-1 - 3 + t", "2*t^3", "-t"

def format_laurent(p: LaurentPoly) -> str:
    """Render with exponents in decreasing order, e.g. ``t^2 - t + 1``."""
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for e, c in reversed(p.terms):
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            var = "t" if e == 1 else f"t^{e}"
            body = var if mag == 1 else f"{mag}*{var}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
          (?P<coef>\d+)\s*(?:\*?\s*(?P<var1>t)(?:\s*\^\s*(?P<exp1>[+-]?\d+))?)?
          |
          (?P<var2>t)(?:\s*\^\s*(?P<exp2>[+-]?\d+))?
        )\s*""",
    re.VERBOSE,
)


def parse_laurent(text: str) -> LaurentPoly:
    """Parse the rendering grammar; accepts ``2t^3``, ``2*t^3``, ``t^-1`` and any term order."""
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial")
    if s == "0":
        return ZERO
    pos = 0
    acc: dict[int, int] = {}
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (not first and not m.group("sign")):
            raise ValueError(f"cannot parse polynomial {text!r} at column {pos + 1}")
        first = False
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("coef") is not None:
            c = int(m.group("coef"))
            if m.group("var1"):
                e = int(m.group("exp1")) if m.group("exp1") else 1
            else:
                e = 0
        else:
            c = 1
            e = int(m.group("exp2")) if m.group("exp2") else 1
        acc[e] = acc.get(e, 0) + sign * c
        pos = m.end()
    return LaurentPoly(acc)
