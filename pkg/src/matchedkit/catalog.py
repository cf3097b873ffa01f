"""Named diagrams: small knots, the tangles used for duplicates, and the two families.

``milnor-fox:<n>`` duplicates the trefoil through an ``n``-crossing twist
region and ``kanenobu:<n>`` does the same for the figure-eight knot.  Every
cut below was checked to give planar duplicates (``surface_genus == 0``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from .chords import Chord, ChordDiagram, OUTER
from .knots import (
    Crossing,
    KnotDiagram,
    TanglePresentation,
    chord_to_knot,
    cut_to_tangle,
    duplicate,
)
from .rational import rational_diagram

__all__ = ["CatalogEntry", "CatalogError", "catalog_get", "catalog_names"]

Payload = Union[ChordDiagram, KnotDiagram, TanglePresentation]


class CatalogError(KeyError):
    def __str__(self) -> str:
        return str(self.args[0])


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    payload: Payload
    provenance: str


def _trefoil_pd() -> KnotDiagram:
    # crossing i: under-strand runs from arc i to arc i+1 beneath arc i+2
    return KnotDiagram([Crossing(i, 1, (i + 2) % 3, i, (i + 1) % 3) for i in range(3)])


def _trefoil_cd() -> ChordDiagram:
    return rational_diagram([2, -2])[0]


def _figure8_cd() -> ChordDiagram:
    return rational_diagram([2, 2])[0]


def _trefoil_tangle() -> TanglePresentation:
    return cut_to_tangle(_trefoil_pd(), [0, 1])


def _trefoil_cd_tangle() -> TanglePresentation:
    # arc 3 is cut after its first over-passage so that the clasps survive
    return cut_to_tangle(chord_to_knot(_trefoil_cd()), [0, 3], {3: 1})


def _figure8_tangle() -> TanglePresentation:
    return cut_to_tangle(chord_to_knot(_figure8_cd()), [0, 3])


def _milnor_fox(n: int) -> KnotDiagram:
    return duplicate(_trefoil_tangle(), [n])


def _kanenobu(n: int) -> KnotDiagram:
    return duplicate(_figure8_tangle(), [n])


def _k8_20_tangle() -> TanglePresentation:
    return cut_to_tangle(_milnor_fox(2), [0, 2])


_STATIC = {
    "unknot": (
        lambda: ChordDiagram([Chord(0, 1, 1, OUTER, 1)]),
        "single chord; every chord on one side gives a trivial knot",
    ),
    "trefoil-cd": (_trefoil_cd, "elementary diagram of the even expansion [2, -2] of 2/3"),
    "figure8-cd": (_figure8_cd, "elementary diagram of the even expansion [2, 2] of 2/5"),
    "trefoil-pd": (_trefoil_pd, "standard 3-crossing trefoil diagram"),
    "trefoil-tangle": (_trefoil_tangle, "standard trefoil cut at arcs 0 and 1"),
    "trefoil-cd-tangle": (_trefoil_cd_tangle, "matched trefoil cut at arcs 0 and 3; duplicates stay matched"),
    "figure8-tangle": (_figure8_tangle, "matched figure-eight cut at arcs 0 and 3"),
    "8_20": (lambda: _milnor_fox(2), "milnor-fox:2, duplicate of the trefoil with a 2-crossing twist"),
    "10_140": (lambda: _milnor_fox(4), "milnor-fox:4, duplicate of the trefoil with a 4-crossing twist"),
    "8_20-tangle": (_k8_20_tangle, "8_20 cut at arcs 0 and 2, used to duplicate 8_20 again"),
}

_FAMILIES = {
    "milnor-fox": (_milnor_fox, "duplicate of trefoil-tangle with twist parameter {n}"),
    "kanenobu": (_kanenobu, "duplicate of figure8-tangle with twist parameter {n}"),
}

_NOT_SHIPPED = {
    "8_18": (
        "8_18 is not shipped: no machine-readable matched diagram is available. "
        "Its reported second elementary ideal is (t^2 - t + 1); supply a diagram "
        "file and check it with `matchedkit ideal --file <f> -k 2`."
    ),
}

_ALIASES = {"milnor-fox:2": "8_20", "milnor-fox:4": "10_140"}

_FAMILY_RE = re.compile(r"^(milnor-fox|kanenobu):(-?\d+)$")


def catalog_names() -> list[str]:
    return sorted(_STATIC) + ["kanenobu:<n>", "milnor-fox:<n>"]


@lru_cache(maxsize=64)
def catalog_get(name: str) -> CatalogEntry:
    """Look up a named construction."""
    if name in _STATIC:
        build, note = _STATIC[name]
        return CatalogEntry(name, build(), note)
    m = _FAMILY_RE.match(name)
    if m:
        family, n = m.group(1), int(m.group(2))
        if n == 0:
            raise CatalogError(f"{family} needs a nonzero twist parameter")
        build, note = _FAMILIES[family]
        note = note.format(n=n)
        if name in _ALIASES:
            note += f"; this is the knot {_ALIASES[name]}"
        return CatalogEntry(name, build(n), note)
    if name in _NOT_SHIPPED:
        raise CatalogError(_NOT_SHIPPED[name])
    raise CatalogError(f"unknown catalog name {name!r}; available: {', '.join(catalog_names())}")
