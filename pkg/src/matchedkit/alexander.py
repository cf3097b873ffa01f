"""Presentation matrices, elementary ideals and support chords.

Two builders produce the abelianized Jacobian of the Wirtinger relators:
``build_matrix_wirtinger`` runs Fox calculus on an arbitrary crossing list
and serves as the oracle, while ``build_matrix_stencil`` writes frozen
per-chord row templates straight from a chord diagram.
"""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Sequence

from .chords import INNER, OUTER, ChordDiagram
from .ideal import IdealHandle, get_work_limit
from .knots import KnotDiagram, chord_to_knot
from .laurent import ONE, T, ZERO, LaurentPoly, format_laurent, lp_gcd_many, lp_is_unit, lp_normalize

__all__ = [
    "PresentationMatrix",
    "STENCILS",
    "fox_derivative",
    "wirtinger_relator",
    "build_matrix_wirtinger",
    "build_matrix_stencil",
    "det",
    "elementary_ideal",
    "alexander_polynomial",
    "support_chords",
    "is_support_chord",
    "theorem1_check",
    "Theorem1Report",
    "matrix_of",
    "oracle_matrix",
]

log = logging.getLogger(__name__)

Word = Sequence[tuple[Hashable, int]]
Matrix = list[list[LaurentPoly]]


def fox_derivative(word: Word, generator: Hashable, alphabet: Iterable[Hashable] | None = None) -> LaurentPoly:
    """Abelianized free derivative of ``word`` with respect to ``generator``.

    ``word`` is a sequence of ``(generator, exponent)`` letters; every
    generator maps to ``t`` under abelianization.
    """
    gens = None if alphabet is None else set(alphabet)
    if gens is not None:
        for g, _ in word:
            if g not in gens:
                raise ValueError(f"generator {g!r} is not in the alphabet")
        if generator not in gens:
            raise ValueError(f"generator {generator!r} is not in the alphabet")
    total = ZERO
    prefix = 0  # abelianized exponent of the prefix read so far
    for g, e in word:
        if g == generator and e:
            # d(x^e)/dx = 1 + t + ... + t^(e-1), or -(t^-1 + ... + t^e) for e < 0
            if e > 0:
                part = LaurentPoly({prefix + i: 1 for i in range(e)})
            else:
                part = LaurentPoly({prefix + i: -1 for i in range(e, 0)})
            total = total + part
        prefix += e
    return total


def wirtinger_relator(c) -> list[tuple[Hashable, int]]:
    """Relator ``x^e y x^-e z^-1`` with x over, y under-in, z under-out and e = -sign."""
    e = -c.sign
    return [(c.over, e), (c.under_in, 1), (c.over, -e), (c.under_out, -1)]


@dataclass(frozen=True)
class PresentationMatrix:
    entries: tuple[tuple[LaurentPoly, ...], ...]
    row_labels: tuple
    col_labels: tuple

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.col_labels)

    def rows(self) -> Matrix:
        return [list(r) for r in self.entries]

    def row_sums(self) -> list[LaurentPoly]:
        out = []
        for r in self.entries:
            s = ZERO
            for x in r:
                s = s + x
            out.append(s)
        return out

    def format_grid(self) -> str:
        cells = [[format_laurent(x) for x in r] for r in self.entries]
        head = [""] + [str(c) for c in self.col_labels]
        body = [[str(lab)] + r for lab, r in zip(self.row_labels, cells)]
        widths = [max(len(row[i]) for row in [head] + body) for i in range(len(head))]
        lines = ["  ".join(s.rjust(w) for s, w in zip(row, widths)) for row in [head] + body]
        return "\n".join(lines) + "\n"


def _from_rows(rows: Matrix, row_labels, col_labels) -> PresentationMatrix:
    return PresentationMatrix(tuple(tuple(r) for r in rows), tuple(row_labels), tuple(col_labels))


def build_matrix_wirtinger(k: KnotDiagram) -> PresentationMatrix:
    """Fox-calculus matrix: one row per crossing, one column per arc."""
    if not k.crossings:
        # the crossingless unknot: one generator, no relations
        return _from_rows([], [], [0])
    arcs = k.arcs
    col = {a: i for i, a in enumerate(arcs)}
    rows = []
    for c in k.crossings:
        word = wirtinger_relator(c)
        row = [ZERO] * len(arcs)
        for a in {c.over, c.under_in, c.under_out}:
            row[col[a]] = fox_derivative(word, a)
        rows.append(row)
    return _from_rows(rows, [c.id for c in k.crossings], arcs)


_TI = LaurentPoly({-1: 1})
_ONE_MINUS_T = ONE - T
_ONE_MINUS_TI = ONE - _TI

# Rows of a chord's two crossings (endpoint p, then endpoint q) on the arcs
# ending/starting at its endpoints, in the order (p-1, p, q-1, q).  Derived
# from fox_derivative on the relators of chord_to_knot's clasp fragment; the
# derivation is re-run in tests/test_alexander.py.
STENCILS: dict[tuple[str, int], tuple[tuple[LaurentPoly, ...], tuple[LaurentPoly, ...]]] = {
    (INNER, -1): ((T, -ONE, ZERO, _ONE_MINUS_T), (ZERO, _ONE_MINUS_T, T, -ONE)),
    (OUTER, +1): ((_TI, -ONE, ZERO, _ONE_MINUS_TI), (ZERO, _ONE_MINUS_TI, _TI, -ONE)),
    (INNER, +1): ((_TI, -ONE, _ONE_MINUS_TI, ZERO), (_ONE_MINUS_TI, ZERO, _TI, -ONE)),
    (OUTER, -1): ((T, -ONE, _ONE_MINUS_T, ZERO), (_ONE_MINUS_T, ZERO, T, -ONE)),
}


def build_matrix_stencil(d: ChordDiagram) -> PresentationMatrix:
    """Matrix written chord by chord from the frozen stencils.

    Columns are circle arcs ``0..2n-1`` (arc ``i`` starts at endpoint ``i``);
    rows are labeled by endpoint, two per chord.  Entries add when two of a
    chord's adjacent arcs coincide.
    """
    n2 = 2 * d.n
    if n2 == 0:
        return _from_rows([], [], [0])
    rows: dict[int, list[LaurentPoly]] = {}
    for ch in d.chords:
        p, q = ch.p, ch.q
        cols = ((p - 1) % n2, p, (q - 1) % n2, q)
        for endpoint, stencil_row in zip((p, q), STENCILS[(ch.placement, ch.sign)]):
            row = [ZERO] * n2
            for c, v in zip(cols, stencil_row):
                row[c] = row[c] + v
            rows[endpoint] = row
    order = sorted(rows)
    return _from_rows([rows[i] for i in order], order, range(n2))


# determinants and minors

def _unit_inverse(u: LaurentPoly) -> LaurentPoly:
    (e, c), = u.terms
    return LaurentPoly({-e: c})


def _pick_unit(m: Matrix) -> tuple[int, int] | None:
    for i, row in enumerate(m):
        for j, x in enumerate(row):
            if x and lp_is_unit(x):
                return i, j
    return None


def _eliminate(m: Matrix, i: int, j: int) -> Matrix:
    """Schur complement at a unit pivot: drops row ``i`` and column ``j``."""
    inv = _unit_inverse(m[i][j])
    prow = m[i]
    out = []
    for k, row in enumerate(m):
        if k == i:
            continue
        f = row[j]
        if f:
            f = f * inv
            out.append([x - f * y for c, (x, y) in enumerate(zip(row, prow)) if c != j])
        else:
            out.append([x for c, x in enumerate(row) if c != j])
    return out


def det(m: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    """Determinant over Z[t, t^-1] by unit pivots, then fraction-free elimination."""
    a = [list(r) for r in m]
    size = len(a)
    if any(len(r) != size for r in a):
        raise ValueError("det needs a square matrix")
    scale = ONE
    while a:
        pos = _pick_unit(a)
        if pos is None:
            break
        i, j = pos
        sign = -1 if (i + j) % 2 else 1
        scale = scale * a[i][j] * sign
        a = _eliminate(a, i, j)
    if not a:
        return scale
    return scale * _bareiss(a)


def _bareiss(a: Matrix) -> LaurentPoly:
    n = len(a)
    sign = 1
    prev = ONE
    for k in range(n - 1):
        # prefer a short pivot to keep intermediate entries small
        best = None
        for i in range(k, n):
            x = a[i][k]
            if x and (best is None or len(x) < len(a[best][k])):
                best = i
        if best is None:
            return ZERO
        if best != k:
            a[k], a[best] = a[best], a[k]
            sign = -sign
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * piv - a[i][k] * a[k][j]).exact_div(prev)
        prev = piv
    return a[n - 1][n - 1] * sign


def _reduce(rows: Matrix, order: int) -> tuple[Matrix, int, LaurentPoly | None]:
    """Lower the minor order by eliminating unit pivots; drop zero rows and columns.

    Returns (matrix, order, verdict) where verdict is ONE or ZERO when the
    ideal is already decided.
    """
    m = [list(r) for r in rows]
    while order > 0:
        if not m:
            break
        pos = _pick_unit(m)
        if pos is None:
            break
        m = _eliminate(m, *pos)
        order -= 1
    if order <= 0:
        return m, 0, ONE
    m = [r for r in m if any(r)]
    if m:
        keep = [j for j in range(len(m[0])) if any(r[j] for r in m)]
        m = [[r[j] for j in keep] for r in m]
    if len(m) < order or (m and len(m[0]) < order) or not m:
        return m, order, ZERO
    return m, order, None


def _minor_task(args) -> list[LaurentPoly]:
    m, order, row_sets, stop_on_unit = args
    out = []
    ncols = len(m[0])
    for rs in row_sets:
        sub = [m[i] for i in rs]
        for cs in itertools.combinations(range(ncols), order):
            d = det([[r[j] for j in cs] for r in sub])
            if d:
                d = lp_normalize(d)
                out.append(d)
                if stop_on_unit and d == ONE:
                    return out
    return out


def _minors(m: Matrix, order: int, jobs: int = 1, stop_on_unit: bool = True) -> list[LaurentPoly]:
    row_sets = list(itertools.combinations(range(len(m)), order))
    if jobs > 1 and len(row_sets) > 1:
        chunks = [row_sets[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_minor_task, [(m, order, c, stop_on_unit) for c in chunks if c]))
        found = [x for part in parts for x in part]
    else:
        found = _minor_task((m, order, row_sets, stop_on_unit))
    if stop_on_unit and ONE in found:
        return [ONE]
    return sorted(set(found), key=lambda p: (p.span, p.terms))


def _rows_of(q) -> tuple[Matrix, int]:
    if isinstance(q, PresentationMatrix):
        return q.rows(), len(q.col_labels)
    rows = [list(map(LaurentPoly.coerce, r)) for r in q]
    return rows, (len(rows[0]) if rows else 0)


def elementary_ideal(q, m: int, jobs: int = 1, work_limit: int | None = None) -> IdealHandle:
    """E_m: the ideal of minors of order ``ncols - m``.

    Accepts a ``PresentationMatrix`` or a nested list of polynomials.
    """
    if m < 0:
        raise ValueError("elementary ideal index must be non-negative")
    rows, ncols = _rows_of(q)
    order = ncols - m
    if order <= 0:
        return IdealHandle([ONE])
    if order > len(rows):
        return IdealHandle([])
    red, order, verdict = _reduce(rows, order)
    if verdict is not None:
        return IdealHandle([verdict] if verdict else [])
    gens = _minors(red, order, jobs)
    return IdealHandle(gens, work_limit=work_limit if work_limit is not None else get_work_limit())


def alexander_polynomial(q) -> LaurentPoly:
    """Normalized gcd of the minors of order ``ncols - 1``."""
    rows, ncols = _rows_of(q)
    order = ncols - 1
    if order <= 0:
        return ONE
    red, order, verdict = _reduce(rows, order)
    if verdict is not None:
        return verdict
    return lp_normalize(lp_gcd_many(_minors(red, order, stop_on_unit=True)))


# support chords

def _has_unit_maximal_minor_fast(rows: Matrix) -> bool:
    """Greedy row reduction on unit pivots; success exhibits a unit maximal minor."""
    m = [list(r) for r in rows]
    while m:
        pos = _pick_unit(m)
        if pos is None:
            return False
        i, j = pos
        inv = _unit_inverse(m[i][j])
        prow = m[i]
        nxt = []
        for k, row in enumerate(m):
            if k == i:
                continue
            f = row[j]
            if f:
                f = f * inv
                row = [x - f * y for x, y in zip(row, prow)]
            nxt.append(row)
        # the pivot column is now zero outside row i; mark it used
        m = [[ZERO if c == j else x for c, x in enumerate(r)] for r in nxt]
    return True


def _rational_det(m: list[list[Fraction]]) -> Fraction:
    a = [list(r) for r in m]
    n = len(a)
    out = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            out = -out
        out *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return out


def _could_be_unit(at_minus_one: Fraction, at_two: Fraction) -> bool:
    # a unit +-t^k takes the values +-1 at t = -1 and +-2^k at t = 2
    if abs(at_minus_one) != 1 or not at_two:
        return False
    num, den = abs(at_two.numerator), at_two.denominator
    return num & (num - 1) == 0 and den & (den - 1) == 0


def _has_unit_maximal_minor_brute(rows: Matrix) -> bool:
    if not rows:
        return True
    r = len(rows)
    at_m1 = [[Fraction(e(-1)) for e in row] for row in rows]
    at_2 = [[Fraction(e(Fraction(2))) for e in row] for row in rows]
    for cs in itertools.combinations(range(len(rows[0])), r):
        v1 = _rational_det([[row[j] for j in cs] for row in at_m1])
        if abs(v1) != 1:
            continue
        v2 = _rational_det([[row[j] for j in cs] for row in at_2])
        if not _could_be_unit(v1, v2):
            continue
        d = det([[row[j] for j in cs] for row in rows])
        if d and lp_is_unit(d):
            return True
    return False


def is_support_chord(d: ChordDiagram, cid: int, q: PresentationMatrix | None = None, brute: bool = False) -> bool:
    """Whether deleting the chord's two rows leaves a unit maximal minor."""
    ch = d.chord(cid)
    q = q or build_matrix_stencil(d)
    rows = [list(r) for lab, r in zip(q.row_labels, q.entries) if lab not in (ch.p, ch.q)]
    if brute:
        return _has_unit_maximal_minor_brute(rows)
    return _has_unit_maximal_minor_fast(rows) or _has_unit_maximal_minor_brute(rows)


def support_chords(d: ChordDiagram) -> list[int]:
    q = build_matrix_stencil(d)
    return [cid for cid in d.ids if is_support_chord(d, cid, q)]


# t + 1 membership check

@dataclass(frozen=True)
class Theorem1Report:
    k: int
    trivial: bool
    contains_t_plus_1: bool | None
    generators: tuple[LaurentPoly, ...]

    @property
    def ok(self) -> bool:
        return self.trivial or not self.contains_t_plus_1


def theorem1_check(d: ChordDiagram | KnotDiagram, k: int, jobs: int = 1) -> Theorem1Report:
    """Compute E_k and, if it is proper, whether it contains t + 1."""
    q = build_matrix_stencil(d) if isinstance(d, ChordDiagram) else build_matrix_wirtinger(d)
    ideal = elementary_ideal(q, k, jobs)
    if ideal.is_trivial():
        return Theorem1Report(k, True, None, (ONE,))
    return Theorem1Report(k, False, ideal.contains(T + 1), tuple(ideal.minimal_generators()))


def matrix_of(obj) -> PresentationMatrix:
    """Presentation matrix of a chord diagram, knot diagram or tangle."""
    if isinstance(obj, ChordDiagram):
        return build_matrix_stencil(obj)
    if isinstance(obj, KnotDiagram):
        return build_matrix_wirtinger(obj)
    diagram = getattr(obj, "diagram", None)
    if isinstance(diagram, KnotDiagram):
        return build_matrix_wirtinger(diagram)
    raise TypeError(f"no presentation matrix for {type(obj).__name__}")


def oracle_matrix(d: ChordDiagram) -> PresentationMatrix:
    return build_matrix_wirtinger(chord_to_knot(d))
