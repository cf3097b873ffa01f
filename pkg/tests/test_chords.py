import random

import pytest

from matchedkit.chords import (
    INNER,
    OUTER,
    Chord,
    ChordDiagram,
    DiagramError,
    apply_op1,
    apply_op2,
    delete_chord,
    elementary_diagram,
    format_diagram,
    intersection_graph,
    interleave,
    is_trivial_diagram,
    parse_diagram,
    random_diagram,
    to_dot,
    to_svg,
)


def edges(d):
    return {tuple(sorted(e)) for e in intersection_graph(d).edges}


def brute_edges(d):
    # independent check: two chords cross iff exactly one end of one lies strictly inside the other
    out = set()
    for a in d.chords:
        for b in d.chords:
            if a.id < b.id and ((a.p < b.p < a.q) != (a.p < b.q < a.q)):
                out.add((a.id, b.id))
    return out


def test_parse_elementary():
    d = parse_diagram("cd 2\nchord 1 O + 0 2\nchord 2 I + 1 3\n")
    assert d == elementary_diagram("+", "+")
    assert edges(d) == {(1, 2)}


def test_parse_single_chord_with_typographic_minus():
    d = parse_diagram("cd 1\nchord 1 I − 0 1\n")
    assert d.n == 1 and d.chord(1).sign == -1 and d.chord(1).placement == INNER
    assert is_trivial_diagram(d)


def test_parse_errors():
    with pytest.raises(DiagramError, match="interleave"):
        parse_diagram("cd 2\nchord 1 I + 0 2\nchord 2 I + 1 3\n")
    with pytest.raises(DiagramError, match="line 2"):
        parse_diagram("cd 1\nchord 1 X + 0 1\n")
    with pytest.raises(DiagramError, match="declares 2"):
        parse_diagram("cd 2\nchord 1 O + 0 1\n")
    with pytest.raises(DiagramError, match="header"):
        parse_diagram("# nothing\n")
    with pytest.raises(DiagramError, match="used by"):
        parse_diagram("cd 2\nchord 1 O + 0 1\nchord 2 I + 1 3\n")
    with pytest.raises(DiagramError, match="out of range"):
        parse_diagram("cd 1\nchord 1 O + 0 5\n")
    with pytest.raises(DiagramError):
        Chord(0, 1, 1, OUTER, 2)


def test_format_round_trip(rng):
    for n in range(0, 7):
        d = random_diagram(n, rng)
        assert parse_diagram(format_diagram(d)) == d


def test_intersection_graph_examples():
    g = intersection_graph(elementary_diagram(1, 1))
    assert set(g.vertices) == {1, 2} and len(g.edges) == 1
    single = ChordDiagram([Chord(0, 1, 1, OUTER, 1)])
    assert not intersection_graph(single).edges


def test_trivial_diagram():
    three_inner = ChordDiagram([Chord(0, 1, 1, INNER, 1), Chord(2, 5, 2, INNER, -1), Chord(3, 4, 3, INNER, 1)])
    assert is_trivial_diagram(three_inner)
    assert not is_trivial_diagram(elementary_diagram(1, -1))
    assert is_trivial_diagram(ChordDiagram([]))


def test_op1_gives_path_then_star():
    d = apply_op1(elementary_diagram(1, 1), 1, "+")
    assert d.n == 3
    assert edges(d) == brute_edges(d) == {(1, 2), (1, 3)}
    assert d.chord(3).placement == INNER
    d2 = apply_op1(d, 1, "-")
    assert edges(d2) == brute_edges(d2) == {(1, 2), (1, 3), (1, 4)}


def test_op1_on_single_chord():
    d = apply_op1(ChordDiagram([Chord(0, 1, 1, OUTER, 1)]), 1, -1)
    assert edges(d) == {(1, 2)}
    assert d.chord(2).placement == INNER and d.chord(2).sign == -1


def test_op2_examples():
    d = apply_op2(elementary_diagram(1, 1), 1, "-")
    assert edges(d) == brute_edges(d) == {(1, 2), (2, 3)}
    assert d.chord(3).placement == OUTER
    single = apply_op2(ChordDiagram([Chord(0, 1, 1, INNER, 1)]), 1, "+")
    assert not edges(single) and single.n == 2


def test_ops_copy_neighbourhood(rng):
    for _ in range(100):
        d = random_diagram(rng.randint(1, 6), rng)
        target = rng.choice(d.ids)
        d2 = apply_op2(d, target, rng.choice("+-"))
        new = max(d2.ids)
        g = intersection_graph(d2)
        assert g.neighbors(new) == g.neighbors(target)
        assert edges(d2) == brute_edges(d2)
        d1 = apply_op1(d, target, rng.choice("+-"), rng.choice("pq"))
        assert intersection_graph(d1).neighbors(max(d1.ids)) == {target}
        assert delete_chord(d1, max(d1.ids)) == d
        assert delete_chord(d2, new) == d


def test_random_diagrams_valid(rng):
    for _ in range(200):
        d = random_diagram(rng.randint(1, 7), rng, connected=rng.random() < 0.5)
        g = intersection_graph(d)
        assert g.is_bipartite_by_placement()
        assert sorted(e for c in d.chords for e in c.ends) == list(range(2 * d.n))


def test_interleave_symmetric():
    assert interleave((0, 2), (1, 3)) and interleave((1, 3), (0, 2))
    assert not interleave((0, 3), (1, 2))


def test_dot_and_svg():
    d = apply_op1(elementary_diagram(1, -1), 1, "+")
    dot = to_dot(d)
    assert dot.startswith("graph G {") and "1 -- 2;" in dot and "1 -- 3;" in dot
    svg = to_svg(d)
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")


def test_seeded_rng_reproducible():
    a = random_diagram(5, random.Random(3))
    b = random_diagram(5, random.Random(3))
    assert a == b
