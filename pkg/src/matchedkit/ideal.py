"""Finitely generated ideals of Z[t, t^-1].

Queries are answered with a strong Groebner basis over the integers.  The
Laurent ring is presented as Z[t, s] / (ts - 1); Buchberger's algorithm runs
there with S-polynomials and GCD-polynomials (needed because Z is not a
field) under a degree-then-lexicographic order with t > s.  An element lies
in the ideal iff its normal form is zero.
"""

from __future__ import annotations

import heapq
import itertools
import math
import os
from typing import Iterable, Sequence

from .laurent import ONE, LaurentPoly, lp_is_unit, lp_normalize

__all__ = [
    "IdealHandle",
    "WorkLimitExceeded",
    "ideal_from_generators",
    "ideal_is_trivial",
    "ideal_contains",
    "ideal_equal",
    "DEFAULT_WORK_LIMIT",
    "get_work_limit",
]

DEFAULT_WORK_LIMIT = 10**6
WORK_LIMIT_ENV = "MATCHEDKIT_WORK_LIMIT"

Mono = tuple[int, int]  # (deg_t, deg_s)
Poly = dict  # Mono -> int


class WorkLimitExceeded(RuntimeError):
    """Raised when a Groebner computation exceeds its reduction-step budget."""


def get_work_limit() -> int:
    raw = os.environ.get(WORK_LIMIT_ENV)
    if raw:
        try:
            value = int(raw)
        except ValueError:
            raise ValueError(f"{WORK_LIMIT_ENV} must be an integer, got {raw!r}") from None
        if value <= 0:
            raise ValueError(f"{WORK_LIMIT_ENV} must be positive")
        return value
    return DEFAULT_WORK_LIMIT


def _key(m: Mono) -> tuple[int, int]:
    return (m[0] + m[1], m[0])


class _Element:
    __slots__ = ("poly", "lm", "lc")

    def __init__(self, poly: Poly):
        lm = max(poly, key=_key)
        if poly[lm] < 0:
            poly = {m: -c for m, c in poly.items()}
        self.poly = poly
        self.lm = lm
        self.lc = poly[lm]


def _divides(a: Mono, b: Mono) -> bool:
    return a[0] <= b[0] and a[1] <= b[1]


def _addmul(f: Poly, q: int, shift: Mono, g: Poly) -> None:
    """f -= q * x^shift * g, in place."""
    di, dj = shift
    for (i, j), c in g.items():
        m = (i + di, j + dj)
        v = f.get(m, 0) - q * c
        if v:
            f[m] = v
        else:
            f.pop(m, None)


class _Budget:
    __slots__ = ("limit", "used")

    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def tick(self) -> None:
        self.used += 1
        if self.used > self.limit:
            raise WorkLimitExceeded(
                f"Groebner basis computation exceeded {self.limit} reduction steps "
                f"(raise {WORK_LIMIT_ENV} to allow more)"
            )


def _normal_form(f: Poly, basis: Sequence[_Element], budget: _Budget) -> Poly:
    f = dict(f)
    rem: Poly = {}
    while f:
        m = max(f, key=_key)
        c = f[m]
        reduced = False
        for g in basis:
            if _divides(g.lm, m):
                q = c // g.lc
                if q:
                    budget.tick()
                    _addmul(f, q, (m[0] - g.lm[0], m[1] - g.lm[1]), g.poly)
                    reduced = True
                    break
        if not reduced:
            rem[m] = c
            del f[m]
    return rem


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _pair_polys(f: _Element, g: _Element) -> list[Poly]:
    m = (max(f.lm[0], g.lm[0]), max(f.lm[1], g.lm[1]))
    sf = (m[0] - f.lm[0], m[1] - f.lm[1])
    sg = (m[0] - g.lm[0], m[1] - g.lm[1])
    a, b = f.lc, g.lc
    out = []
    coprime_mono = sf == g.lm and sg == f.lm
    if not (coprime_mono and math.gcd(a, b) == 1):
        lcm = a * b // math.gcd(a, b)
        s: Poly = {}
        _addmul(s, -(lcm // a), sf, f.poly)
        _addmul(s, lcm // b, sg, g.poly)
        if s:
            out.append(s)
    if a % b and b % a:
        _, u, v = _xgcd(a, b)
        gp: Poly = {}
        _addmul(gp, -u, sf, f.poly)
        _addmul(gp, -v, sg, g.poly)
        if gp:
            out.append(gp)
    return out


class _Groebner:
    """Incrementally completed strong Groebner basis over Z."""

    def __init__(self, budget: _Budget):
        self.budget = budget
        self.elements: list[_Element] = []
        self._pairs: list = []
        self._counter = 0

    def _push_pairs(self, idx: int) -> None:
        new = self.elements[idx]
        for j, old in enumerate(self.elements):
            if j == idx or old is None:
                continue
            m = (max(new.lm[0], old.lm[0]), max(new.lm[1], old.lm[1]))
            self._counter += 1
            heapq.heappush(self._pairs, (_key(m), self._counter, j, idx))

    def _live(self) -> list[_Element]:
        return [e for e in self.elements if e is not None]

    def add(self, poly: Poly) -> bool:
        """Insert a polynomial and complete; returns False if it was already in the ideal."""
        nf = _normal_form(poly, self._live(), self.budget)
        if not nf:
            return False
        self._insert(nf)
        self._complete()
        return True

    def _insert(self, poly: Poly) -> None:
        el = _Element(poly)
        self.elements.append(el)
        self._push_pairs(len(self.elements) - 1)

    def _complete(self) -> None:
        while self._pairs:
            _, _, i, j = heapq.heappop(self._pairs)
            f, g = self.elements[i], self.elements[j]
            if f is None or g is None:
                continue
            for p in _pair_polys(f, g):
                nf = _normal_form(p, self._live(), self.budget)
                if nf:
                    self._insert(nf)
            if self.elements[-1].lc == 1 and self.elements[-1].lm == (0, 0):
                # unit ideal; nothing further to learn
                self._pairs.clear()
                break

    def reduced(self) -> list[_Element]:
        """Minimal, tail-reduced strong basis (canonical up to the fixed order)."""
        live = self._live()
        live.sort(key=lambda e: (_key(e.lm), e.lc))
        minimal: list[_Element] = []
        for e in live:
            if any(_divides(k.lm, e.lm) and e.lc % k.lc == 0 for k in minimal):
                continue
            minimal.append(e)
        out = []
        for e in minimal:
            others = [k for k in minimal if k is not e]
            tail = dict(e.poly)
            lead = {e.lm: tail.pop(e.lm)}
            tail = _normal_form(tail, others + [e], self.budget) if tail else {}
            lead.update(tail)
            out.append(_Element(lead))
        out.sort(key=lambda e: (_key(e.lm), e.lc))
        return out


def _lift(p: LaurentPoly) -> Poly:
    low = p.valuation
    return {(e - low, 0): c for e, c in p.terms}


def _unlift(poly: Poly) -> LaurentPoly:
    acc: dict[int, int] = {}
    for (i, j), c in poly.items():
        acc[i - j] = acc.get(i - j, 0) + c
    return LaurentPoly(acc)


_TS_MINUS_ONE: Poly = {(1, 1): 1, (0, 0): -1}


class IdealHandle:
    """An ideal of Z[t, t^-1] given by generators, with a precomputed decision structure."""

    def __init__(self, generators: Iterable[LaurentPoly], work_limit: int | None = None):
        self.generators: tuple[LaurentPoly, ...] = tuple(LaurentPoly.coerce(g) for g in generators)
        limit = get_work_limit() if work_limit is None else work_limit
        self._budget = _Budget(limit)
        normed = sorted(
            {lp_normalize(g) for g in self.generators if not g.is_zero()},
            key=lambda p: (len(p), p.span, [abs(c) for _, c in p.terms]),
        )
        self._normed: tuple[LaurentPoly, ...] = tuple(normed)
        self._unit = any(lp_is_unit(g) for g in normed)
        self._gb: _Groebner | None = None
        self._basis: list[_Element] | None = None
        if self._unit:
            self._normed = (ONE,)
        elif len(normed) >= 2:
            gb = _Groebner(self._budget)
            gb.add(_TS_MINUS_ONE)
            for g in normed:
                gb.add(_lift(g))
                if any(e.lm == (0, 0) and e.lc == 1 for e in gb._live()):
                    self._unit = True
                    break
            if self._unit:
                self._normed = (ONE,)
            else:
                self._gb = gb
                self._basis = gb.reduced()

    # queries

    @property
    def is_zero(self) -> bool:
        return not self._normed

    def is_trivial(self) -> bool:
        return self._unit

    def contains(self, f: LaurentPoly | int) -> bool:
        f = LaurentPoly.coerce(f)
        if f.is_zero() or self._unit:
            return True
        if not self._normed:
            return False
        if len(self._normed) == 1:
            return f.divides_by(self._normed[0]) is not None
        assert self._basis is not None
        return not _normal_form(_lift(f), self._basis, _Budget(self._budget.limit))

    def contains_ideal(self, other: "IdealHandle") -> bool:
        return all(self.contains(g) for g in other.generators)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IdealHandle):
            return NotImplemented
        return self.contains_ideal(other) and other.contains_ideal(self)

    __hash__ = None  # type: ignore[assignment]

    @property
    def basis(self) -> list[LaurentPoly]:
        """The reduced strong basis mapped back to Laurent polynomials (``s -> t^-1``)."""
        if self._unit:
            return [ONE]
        if not self._normed:
            return []
        if self._basis is None:
            return [self._normed[0]]
        out = [_unlift(e.poly) for e in self._basis]
        return [p for p in out if not p.is_zero()]

    def basis_text(self) -> list[str]:
        """The lifted basis written in t and s (s standing for t^-1)."""
        if self._basis is None:
            return [str(p) for p in self.basis]
        return [_format_bivariate(e.poly) for e in self._basis]

    def minimal_generators(self) -> list[LaurentPoly]:
        """A small generating set, largest span first (e.g. ``[t^2 - t + 1, 2]``)."""
        if self._unit:
            return [ONE]
        if not self._normed:
            return []
        if len(self._normed) == 1:
            return [self._normed[0]]
        cands = {lp_normalize(p) for p in self.basis if not p.is_zero()}
        cands |= set(self._normed)
        order = sorted(cands, key=lambda p: (p.span, len(p), [abs(c) for _, c in p.terms], str(p)))
        kept: list[LaurentPoly] = []
        for p in order:
            if kept and IdealHandle(kept, self._budget.limit).contains(p):
                continue
            kept.append(p)
        # later, larger candidates may have made earlier ones redundant
        changed = True
        while changed and len(kept) > 1:
            changed = False
            for p in list(kept):
                rest = [q for q in kept if q is not p]
                if IdealHandle(rest, self._budget.limit).contains(p):
                    kept = rest
                    changed = True
                    break
        kept = _canonical_mod_integer(kept)
        return sorted(kept, key=lambda p: (-p.span, str(p)))

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.minimal_generators())
        return f"IdealHandle(<{gens}>)"


def _canonical_mod_integer(gens: list[LaurentPoly]) -> list[LaurentPoly]:
    """Reduce generators modulo an integer generator to symmetric residues.

    A residue of exactly k/2 can go either way; the choice giving the
    symmetric one with the smallest |f(1)| wins, so (t^2 + t + 1, 2) is shown
    as (t^2 - t + 1, 2).
    """
    ints = [g for g in gens if g.span == 0 and g.valuation == 0]
    if len(ints) != 1 or ints[0].coeff(0) <= 1:
        return gens
    k = ints[0].coeff(0)
    out = [ints[0]]
    for g in gens:
        if g is ints[0]:
            continue
        fixed: dict[int, int] = {}
        ties: list[int] = []
        for e, c in g.terms:
            r = c % k
            if 2 * r == k:
                ties.append(e)
            elif r:
                fixed[e] = r if 2 * r < k else r - k
        best = None
        for choice in itertools.product((k // 2, -(k // 2)), repeat=min(len(ties), 12)):
            terms = dict(fixed)
            terms.update(zip(ties, choice))
            cand = lp_normalize(LaurentPoly(terms))
            symmetric = cand == lp_normalize(cand.conjugate())
            key = (not symmetric, abs(cand(1)), cand.span, [-c for _, c in cand.terms])
            if best is None or key < best[0]:
                best = (key, cand)
        if len(ties) > 12 or best is None:
            out.append(g)
        elif not best[1].is_zero():
            out.append(best[1])
    return out


def _format_bivariate(poly: Poly) -> str:
    parts = []
    for (i, j), c in sorted(poly.items(), key=lambda kv: _key(kv[0]), reverse=True):
        mono = "*".join(
            x for x in (
                ("t" if i == 1 else f"t^{i}") if i else "",
                ("s" if j == 1 else f"s^{j}") if j else "",
            ) if x
        )
        mag = abs(c)
        body = mono if mono and mag == 1 else (f"{mag}*{mono}" if mono else str(mag))
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts) if parts else "0"


def ideal_from_generators(gens: Iterable[LaurentPoly], work_limit: int | None = None) -> IdealHandle:
    return IdealHandle(gens, work_limit)


def ideal_is_trivial(ideal: IdealHandle) -> bool:
    return ideal.is_trivial()


def ideal_contains(ideal: IdealHandle, f: LaurentPoly | int) -> bool:
    return ideal.contains(f)


def ideal_equal(a: IdealHandle, b: IdealHandle) -> bool:
    return a == b

