import itertools
from fractions import Fraction

import pytest

from matchedkit.alexander import alexander_polynomial, build_matrix_stencil, elementary_ideal, support_chords
from matchedkit.chords import elementary_diagram
from matchedkit.laurent import parse_laurent
from matchedkit.rational import EvenCF, RationalError, cf_value, even_cf, parse_fraction, rational_diagram, two_bridge_alexander

P = parse_laurent


def delta(d):
    return alexander_polynomial(build_matrix_stencil(d))


def test_even_cf_examples():
    assert even_cf(2, 3).terms == (2, -2)
    assert even_cf(2, 5).terms == (2, 2)
    assert even_cf(4, 7).terms == (2, -4)
    assert even_cf(-2, 5).terms == (-2, -2)
    assert str(even_cf(2, 9)) == "[4, 2]"


def test_cf_value_examples():
    assert cf_value([2, 2]) == Fraction(2, 5)
    assert cf_value(EvenCF((2, -2))) == Fraction(2, 3)
    assert cf_value([]) == 0
    assert cf_value([4, 2]) == Fraction(2, 9)
    with pytest.raises(RationalError):
        cf_value([1, -1])  # raw sequences can hit 0 in a denominator


def test_even_cf_errors():
    for p, q in [(4, 6), (3, 2), (1, 1), (0, 5), (1, 0), (1, 3)]:
        with pytest.raises(RationalError):
            even_cf(p, q)
    with pytest.raises(RationalError):
        EvenCF((2, 3))
    with pytest.raises(RationalError):
        parse_fraction("2:5")
    assert parse_fraction("-4/7") == (-4, 7)


def test_round_trip():
    for q in range(3, 60, 2):
        for p in range(-q + 1, q):
            if p % 2 == 0 and p and Fraction(p, q).denominator == q:
                cf = even_cf(p, q)
                assert cf_value(cf) == Fraction(p, q)
                assert len(cf) % 2 == 0


def test_diagram_examples():
    d, cert = rational_diagram([2, -2])
    assert d.n == 2 and abs(delta(d)(-1)) == 3
    d, cert = rational_diagram([2, 2])
    assert d.n == 2 and abs(delta(d)(-1)) == 5
    d, cert = rational_diagram([4, 2])
    assert d.n == 3
    assert cert in support_chords(d)
    assert elementary_ideal(build_matrix_stencil(d), 2).is_trivial()


def test_diagram_errors():
    with pytest.raises(RationalError, match="link"):
        rational_diagram([2])
    with pytest.raises(RationalError):
        rational_diagram([])


def test_elementary_diagrams_by_sign():
    # same-sign chords give the trefoil, opposite signs the figure-eight
    for so, si in itertools.product((1, -1), repeat=2):
        want = 3 if so == si else 5
        assert abs(delta(elementary_diagram(so, si))(-1)) == want


def test_two_bridge_oracle_examples():
    assert two_bridge_alexander(3, 1) == P("t^2 - t + 1")
    assert two_bridge_alexander(5, 2) == P("t^2 - 3t + 1")
    assert two_bridge_alexander(7, 4) == two_bridge_alexander(7, 2)


def test_diagrams_match_two_bridge_oracle():
    terms = [b for b in range(-6, 7) if b and b % 2 == 0]
    count = 0
    for length in (2, 4):
        for cf in itertools.product(terms, repeat=length):
            try:
                v = cf_value(cf)
            except RationalError:
                continue
            d, _ = rational_diagram(cf)
            assert delta(d) == two_bridge_alexander(v.denominator, v.numerator), cf
            count += 1
    assert count > 1000
