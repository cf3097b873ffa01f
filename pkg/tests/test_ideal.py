import random

import pytest

from finite_fields import FIELDS, GF, killing_homomorphism
from matchedkit.ideal import (
    IdealHandle,
    WorkLimitExceeded,
    get_work_limit,
    ideal_contains,
    ideal_equal,
    ideal_from_generators,
    ideal_is_trivial,
)
from matchedkit.laurent import ONE, T, ZERO, LaurentPoly, parse_laurent

P = parse_laurent


def ideal(*texts):
    return ideal_from_generators([P(s) for s in texts])


def test_empty_and_zero_generators():
    z = ideal_from_generators([])
    assert not ideal_is_trivial(z)
    assert ideal_contains(z, ZERO)
    assert not ideal_contains(z, ONE)
    assert ideal_equal(z, ideal_from_generators([ZERO, ZERO]))
    assert z.minimal_generators() == []


def test_unit_generators():
    assert ideal_equal(ideal("t^3"), ideal("1"))
    assert ideal_is_trivial(ideal("t"))
    assert ideal_is_trivial(ideal("-t^-4", "2"))


def test_triviality_examples():
    assert not ideal_is_trivial(ideal("2", "t - 1"))
    assert ideal_is_trivial(ideal("t + 2", "t - 2"))
    assert not ideal_is_trivial(ideal("t^2 - t + 1", "2"))
    assert not ideal_is_trivial(ideal("t^2 - t + 1"))


def test_membership_examples():
    assert not ideal_contains(ideal("t^2 - t + 1"), P("t + 1"))
    assert ideal_contains(ideal("t^2 - t + 1", "t + 1"), LaurentPoly.const(3))
    assert not ideal_contains(ideal("t^2 - t + 1", "t + 1"), ONE)
    assert ideal_contains(ideal("t^2 - t + 1"), P("t^3 + 1"))
    assert ideal_contains(ideal("2", "t - 1"), P("t^5 - 1"))
    assert not ideal_contains(ideal("2", "t - 1"), P("t^5"))
    for i in (ideal("3"), ideal("t + 1", "5"), ideal()):
        assert ideal_contains(i, ZERO)


def test_equality_examples():
    assert ideal_equal(ideal("t^2 - t + 1", "2t"), ideal("t^2 - t + 1", "2"))
    assert not ideal_equal(ideal("2", "t - 1"), ideal("1"))
    assert ideal_equal(ideal(), ideal())
    # t^2 + t + 1 = (t^2 - t + 1) + 2t
    assert ideal_equal(ideal("t^2 + t + 1", "2"), ideal("t^2 - t + 1", "2"))
    assert ideal("3", "t^2 - t + 1") != ideal("2", "t^2 - t + 1")


def test_minimal_generators_display():
    assert ideal("t^2 + t + 1", "2").minimal_generators() == [P("t^2 - t + 1"), P("2")]
    assert ideal("t + 2", "t - 2").minimal_generators() == [ONE]
    assert ideal("2t - 2", "t^2 - 1").minimal_generators()[0].span >= 1


def test_work_limit(monkeypatch):
    monkeypatch.setenv("MATCHEDKIT_WORK_LIMIT", "123")
    assert get_work_limit() == 123
    with pytest.raises(WorkLimitExceeded):
        IdealHandle([P("7t^5 - 3t^2 + 11"), P("5t^4 + 13t - 2"), P("9t^3 + 4t^2 - 17")], work_limit=5)


def test_field_helper_sanity():
    gf4 = GF(2, 2)
    # t^2 + t + 1 has a root in GF(4) but none in GF(2)
    f = P("t^2 + t + 1")
    assert any(gf4.evaluate(f, a) == 0 for a in gf4.units())
    assert all(GF(2, 1).evaluate(f, a) for a in GF(2, 1).units())
    assert sorted(f.q for f in FIELDS)[-3:] == [43, 47, 49]


def test_modular_oracle_on_examples():
    cases = [
        (["t"], True),
        (["2", "t - 1"], False),
        (["t + 2", "t - 2"], True),
        (["t^2 - t + 1", "t + 1"], False),
        (["t^2 - t + 1", "2"], False),
        (["t^2 - 3t + 1", "t^2 - t + 1"], False),
        (["t^2 - 3t + 1", "t + 1"], False),
        (["t^2 - 3t + 1", "t - 1"], True),
    ]
    for texts, trivial in cases:
        gens = [P(s) for s in texts]
        assert ideal_is_trivial(ideal_from_generators(gens)) is trivial
        witness = killing_homomorphism(gens)
        if witness is not None:
            assert not trivial, (texts, witness)


def _random_poly(rng, span=3, bound=4):
    lo = rng.randint(-2, 2)
    return LaurentPoly({lo + i: rng.randint(-bound, bound) for i in range(rng.randint(1, span + 1))})


def test_modular_oracle_random():
    rng = random.Random(7)
    for _ in range(150):
        gens = [_random_poly(rng) for _ in range(rng.randint(1, 3))]
        i = ideal_from_generators(gens)
        assert i.is_trivial() == i.contains(ONE)
        if killing_homomorphism(gens) is not None:
            assert not i.is_trivial(), gens


def test_unit_invariance_saturation_monotonicity():
    rng = random.Random(11)
    for _ in range(60):
        gens = [_random_poly(rng) for _ in range(rng.randint(1, 3))]
        probe = _random_poly(rng)
        i = ideal_from_generators(gens)
        k = rng.randint(-3, 3)
        scaled = [g * LaurentPoly.monomial(rng.choice([1, -1]), k) for g in gens]
        j = ideal_from_generators(list(reversed(scaled)))
        assert i.contains(probe) == j.contains(probe)
        assert i.is_trivial() == j.is_trivial()
        for g in gens:
            assert i.contains(T * g)
            assert i.contains(T**-1 * g)
        bigger = ideal_from_generators(gens + [_random_poly(rng)])
        if i.contains(probe):
            assert bigger.contains(probe)
        assert bigger.contains_ideal(i)
