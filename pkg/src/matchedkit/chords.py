"""Signed bipartite chord diagrams.

A diagram of order n has 2n endpoint positions 0..2n-1 around a circle
oriented counterclockwise.  Arc ``i`` runs from position ``i`` to ``i + 1``
(mod 2n).  Chords are drawn inside (``I``) or outside (``O``) the circle and
two chords on the same side may never interleave, which makes the
intersection graph bipartite with parts inner/outer.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field
from typing import Iterable

__all__ = [
    "Chord",
    "ChordDiagram",
    "DiagramError",
    "IntersectionGraph",
    "parse_diagram",
    "format_diagram",
    "intersection_graph",
    "is_trivial_diagram",
    "apply_op1",
    "apply_op2",
    "delete_chord",
    "elementary_diagram",
    "random_diagram",
    "interleave",
    "to_dot",
    "to_svg",
]

log = logging.getLogger(__name__)

INNER = "I"
OUTER = "O"


class DiagramError(ValueError):
    """Malformed or invalid diagram input."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        if line is not None:
            loc = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{loc}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


@dataclass(frozen=True, order=True)
class Chord:
    p: int
    q: int
    id: int = field(compare=False)
    placement: str = field(compare=False)
    sign: int = field(compare=False)

    def __post_init__(self):
        if self.placement not in (INNER, OUTER):
            raise DiagramError(f"chord {self.id}: placement must be I or O")
        if self.sign not in (1, -1):
            raise DiagramError(f"chord {self.id}: sign must be + or -")
        if not self.p < self.q:
            raise DiagramError(f"chord {self.id}: endpoints must satisfy p < q")

    @property
    def ends(self) -> tuple[int, int]:
        return (self.p, self.q)

    @property
    def sign_char(self) -> str:
        return "+" if self.sign > 0 else "-"


def interleave(a: tuple[int, int], b: tuple[int, int]) -> bool:
    (p, q), (r, s) = a, b
    return p < r < q < s or r < p < s < q


class ChordDiagram:
    """Validated, immutable chord diagram; chords kept sorted by smaller endpoint."""

    __slots__ = ("chords", "_by_id")

    def __init__(self, chords: Iterable[Chord]):
        chords = tuple(sorted(chords))
        n = len(chords)
        seen: dict[int, int] = {}
        by_id: dict[int, Chord] = {}
        for ch in chords:
            if ch.id in by_id:
                raise DiagramError(f"duplicate chord id {ch.id}")
            by_id[ch.id] = ch
            for e in ch.ends:
                if not 0 <= e < 2 * n:
                    raise DiagramError(f"chord {ch.id}: endpoint {e} out of range 0..{2 * n - 1}")
                if e in seen:
                    raise DiagramError(f"endpoint {e} used by chords {seen[e]} and {ch.id}")
                seen[e] = ch.id
        for i, a in enumerate(chords):
            for b in chords[i + 1:]:
                if a.placement == b.placement and interleave(a.ends, b.ends):
                    side = "inner" if a.placement == INNER else "outer"
                    raise DiagramError(
                        f"{side} chords {a.id} and {b.id} interleave (same-placement chords must not cross)"
                    )
        self.chords: tuple[Chord, ...] = chords
        self._by_id = by_id

    @property
    def n(self) -> int:
        return len(self.chords)

    @property
    def ids(self) -> list[int]:
        return [c.id for c in self.chords]

    def chord(self, cid: int) -> Chord:
        try:
            return self._by_id[cid]
        except KeyError:
            raise DiagramError(f"unknown chord id {cid}") from None

    def endpoint_owner(self) -> list[Chord]:
        """Chord attached at each position."""
        owner: list[Chord] = [None] * (2 * self.n)  # type: ignore[list-item]
        for ch in self.chords:
            owner[ch.p] = ch
            owner[ch.q] = ch
        return owner

    def neighbors(self, cid: int) -> set[int]:
        me = self.chord(cid)
        return {c.id for c in self.chords if c.id != cid and interleave(me.ends, c.ends)}

    def next_id(self) -> int:
        return max(self._by_id, default=0) + 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChordDiagram):
            return NotImplemented
        return [(c.p, c.q, c.id, c.placement, c.sign) for c in self.chords] == [
            (c.p, c.q, c.id, c.placement, c.sign) for c in other.chords
        ]

    def __hash__(self) -> int:
        return hash(tuple((c.p, c.q, c.id, c.placement, c.sign) for c in self.chords))

    def __repr__(self) -> str:
        body = ", ".join(f"{c.id}{c.placement}{c.sign_char}({c.p},{c.q})" for c in self.chords)
        return f"ChordDiagram([{body}])"

    def __str__(self) -> str:
        return format_diagram(self)


# text format

def parse_diagram(text: str) -> ChordDiagram:
    """Parse ``cd <n>`` followed by n lines ``chord <id> <I|O> <+|-> <p> <q>``."""
    header: int | None = None
    chords: list[Chord] = []
    header_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        toks = line.split()
        col = raw.index(toks[0]) + 1
        if header is None:
            if toks[0] != "cd" or len(toks) != 2:
                raise DiagramError("expected header 'cd <n>'", lineno, col)
            try:
                header = int(toks[1])
            except ValueError:
                raise DiagramError(f"chord count must be an integer, got {toks[1]!r}", lineno,
                                   raw.index(toks[1]) + 1) from None
            if header < 0:
                raise DiagramError("chord count must be nonnegative", lineno, col)
            header_line = lineno
            continue
        if toks[0] != "chord" or len(toks) != 6:
            raise DiagramError("expected 'chord <id> <I|O> <+|-> <p> <q>'", lineno, col)
        _, cid, place, sign, p, q = toks
        try:
            cid_i, p_i, q_i = int(cid), int(p), int(q)
        except ValueError:
            raise DiagramError("chord id and endpoints must be integers", lineno, col) from None
        if place not in (INNER, OUTER):
            raise DiagramError(f"placement must be I or O, got {place!r}", lineno, raw.index(place, col) + 1)
        if sign not in ("+", "-", "\u2212"):
            raise DiagramError(f"sign must be + or -, got {sign!r}", lineno)
        if p_i == q_i:
            raise DiagramError(f"chord {cid_i} has both ends at {p_i}", lineno)
        lo, hi = min(p_i, q_i), max(p_i, q_i)
        chords.append(Chord(lo, hi, cid_i, place, 1 if sign == "+" else -1))
    if header is None:
        raise DiagramError("empty diagram file (missing 'cd <n>' header)")
    if header != len(chords):
        raise DiagramError(f"header declares {header} chords but {len(chords)} given", header_line)
    diagram = ChordDiagram(chords)
    if diagram.n and not _connected(diagram):
        log.warning("intersection graph is disconnected; the diagram still defines a knot")
    return diagram


def format_diagram(d: ChordDiagram) -> str:
    lines = [f"cd {d.n}"]
    for c in d.chords:
        lines.append(f"chord {c.id} {c.placement} {c.sign_char} {c.p} {c.q}")
    return "\n".join(lines) + "\n"


# intersection graph

@dataclass(frozen=True)
class IntersectionGraph:
    vertices: dict  # chord id -> (placement, sign)
    edges: frozenset  # frozenset({a, b})

    def neighbors(self, v: int) -> set[int]:
        return {w for e in self.edges if v in e for w in e if w != v}

    def is_bipartite_by_placement(self) -> bool:
        return all(len({self.vertices[v][0] for v in e}) == 2 for e in self.edges)

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        start = next(iter(self.vertices))
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in self.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)


def intersection_graph(d: ChordDiagram) -> IntersectionGraph:
    verts = {c.id: (c.placement, c.sign) for c in d.chords}
    edges = set()
    for i, a in enumerate(d.chords):
        for b in d.chords[i + 1:]:
            if interleave(a.ends, b.ends):
                edges.add(frozenset((a.id, b.id)))
    return IntersectionGraph(verts, frozenset(edges))


def _connected(d: ChordDiagram) -> bool:
    return intersection_graph(d).is_connected()


def is_trivial_diagram(d: ChordDiagram) -> bool:
    return len({c.placement for c in d.chords}) <= 1


# chord operations

def _opposite(placement: str) -> str:
    return OUTER if placement == INNER else INNER


def _insert_points(d: ChordDiagram, before: int, after: int) -> tuple[list[Chord], int, int]:
    """Open two new positions, one just before old position ``before`` and one just after ``after``.

    Returns the renumbered chords and the two new positions.
    """
    def move(x: int) -> int:
        return x + (x >= before) + (x > after)

    moved = [Chord(move(c.p), move(c.q), c.id, c.placement, c.sign) for c in d.chords]
    return moved, before, after + 2


def _sign_value(sign) -> int:
    if sign in (1, "+", "+1"):
        return 1
    if sign in (-1, "-", "-1"):
        return -1
    raise DiagramError(f"sign must be + or -, got {sign!r}")


def apply_op1(d: ChordDiagram, target: int, sign, endpoint: str = "p") -> ChordDiagram:
    """Add a small chord crossing ``target`` next to one of its ends.

    The new chord takes the opposite placement and its ends flank the chosen
    endpoint (``"p"``, the smaller position, or ``"q"``), so it interleaves
    the target and nothing else.
    """
    ch = d.chord(target)
    if endpoint not in ("p", "q"):
        raise DiagramError("endpoint selector must be 'p' or 'q'")
    e = ch.p if endpoint == "p" else ch.q
    moved, a, b = _insert_points(d, e, e)
    new = Chord(a, b, d.next_id(), _opposite(ch.placement), _sign_value(sign))
    return ChordDiagram(moved + [new])


def apply_op2(d: ChordDiagram, target: int, sign) -> ChordDiagram:
    """Add a chord parallel to ``target`` that nests just outside it."""
    ch = d.chord(target)
    moved, a, b = _insert_points(d, ch.p, ch.q)
    new = Chord(a, b, d.next_id(), ch.placement, _sign_value(sign))
    return ChordDiagram(moved + [new])


def delete_chord(d: ChordDiagram, cid: int) -> ChordDiagram:
    """Remove a chord and close up the positions."""
    gone = d.chord(cid)

    def move(x: int) -> int:
        return x - (x > gone.p) - (x > gone.q)

    return ChordDiagram(
        Chord(move(c.p), move(c.q), c.id, c.placement, c.sign) for c in d.chords if c.id != cid
    )


def elementary_diagram(outer_sign, inner_sign, outer_id: int = 1, inner_id: int = 2) -> ChordDiagram:
    """The two-chord diagram: outer chord (0, 2) crossing inner chord (1, 3)."""
    return ChordDiagram([
        Chord(0, 2, outer_id, OUTER, _sign_value(outer_sign)),
        Chord(1, 3, inner_id, INNER, _sign_value(inner_sign)),
    ])


def random_diagram(n: int, rng: random.Random, connected: bool = False, max_tries: int = 10_000) -> ChordDiagram:
    """Random valid diagram with n chords.

    A random perfect matching is drawn until its interleaving graph is
    bipartite; each component then gets a random choice of which side is
    inner, and every chord a random sign.
    """
    for _ in range(max_tries):
        pts = list(range(2 * n))
        rng.shuffle(pts)
        pairs = [tuple(sorted(pts[2 * i: 2 * i + 2])) for i in range(n)]
        adj: dict[int, list[int]] = {i: [] for i in range(n)}
        for i in range(n):
            for j in range(i + 1, n):
                if interleave(pairs[i], pairs[j]):
                    adj[i].append(j)
                    adj[j].append(i)
        color: dict[int, int] = {}
        ok = True
        components = 0
        for s in range(n):
            if s in color:
                continue
            components += 1
            color[s] = rng.randrange(2)
            stack = [s]
            while stack and ok:
                v = stack.pop()
                for w in adj[v]:
                    if w not in color:
                        color[w] = 1 - color[v]
                        stack.append(w)
                    elif color[w] == color[v]:
                        ok = False
                        break
        if not ok or (connected and components > 1):
            continue
        chords = [
            Chord(p, q, i + 1, INNER if color[i] else OUTER, rng.choice((1, -1)))
            for i, (p, q) in enumerate(pairs)
        ]
        return ChordDiagram(chords)
    raise RuntimeError(f"could not draw a valid diagram with {n} chords")


# exports

def to_dot(d: ChordDiagram, name: str = "G") -> str:
    """Graphviz source for the intersection graph; inner chords are filled."""
    g = intersection_graph(d)
    lines = [f"graph {name} {{", "  node [shape=circle];"]
    for c in d.chords:
        style = 'style=filled, fillcolor=black, fontcolor=white' if c.placement == INNER else 'style=solid'
        lines.append(f'  {c.id} [label="{c.id}{c.sign_char}", {style}];')
    for e in sorted(tuple(sorted(e)) for e in g.edges):
        lines.append(f"  {e[0]} -- {e[1]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_svg(d: ChordDiagram, size: int = 360) -> str:
    """Decorative SVG drawing: inner chords as segments, outer chords as exterior arcs."""
    cx = cy = size / 2
    r = size * 0.3
    m = max(2 * d.n, 1)

    def point(k: int, rad: float = r) -> tuple[float, float]:
        ang = 2 * math.pi * k / m
        return cx + rad * math.cos(ang), cy - rad * math.sin(ang)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<circle cx="{cx:.1f}" cy="{cy:.1f}" r="{r:.1f}" fill="none" stroke="black" stroke-width="2"/>',
    ]
    for c in d.chords:
        x1, y1 = point(c.p)
        x2, y2 = point(c.q)
        color = "#1f5fbf" if c.sign > 0 else "#bf3f1f"
        if c.placement == INNER:
            out.append(f'<line x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" y2="{y2:.1f}" '
                       f'stroke="{color}" stroke-width="2"/>')
            lx, ly = (x1 + x2) / 2, (y1 + y2) / 2
        else:
            span = min(c.q - c.p, m - (c.q - c.p))
            reach = r * (1.15 + 0.35 * span / m)
            mid = (c.p + c.q) / 2 if c.q - c.p <= m / 2 else (c.p + c.q) / 2 + m / 2
            mx, my = point(mid, reach * 1.3)
            out.append(f'<path d="M {x1:.1f} {y1:.1f} Q {mx:.1f} {my:.1f} {x2:.1f} {y2:.1f}" '
                       f'fill="none" stroke="{color}" stroke-width="2" stroke-dasharray="5,3"/>')
            lx, ly = point(mid, reach)
        out.append(f'<text x="{lx:.1f}" y="{ly:.1f}" font-size="12" text-anchor="middle">'
                   f'{c.id}{c.sign_char}</text>')
    for k in range(2 * d.n):
        x, y = point(k, r * 0.9)
        out.append(f'<text x="{x:.1f}" y="{y:.1f}" font-size="9" fill="gray" text-anchor="middle">{k}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
