"""Cycle algebra: canonical form, convolution, pushforward, degree, caps."""

import json
import random
from fractions import Fraction

import pytest

from pontcalc.cycles import (
    Cycle,
    GroupPoint,
    RingContext,
    SupportCapExceeded,
    cycle_add,
    degree,
    pontryagin,
    pushforward,
    star_power,
)

CTX = RingContext(rank=2, geom_dim=3, support_cap=1000)
O = GroupPoint.origin(2)
X = GroupPoint.generator(2, 0)
Y = GroupPoint.generator(2, 1)


def rand_cycle(rng, rank, max_support=6, coord=2):
    terms = {}
    for _ in range(rng.randint(0, max_support)):
        p = GroupPoint(tuple(rng.randint(-coord, coord) for _ in range(rank)))
        terms[p] = terms.get(p, Fraction(0)) + Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return Cycle(rank, terms)


def test_canonical_form():
    assert cycle_add(Cycle.point(X) + Cycle.point(Y), Cycle.point(Y).scale(-1)) == Cycle.point(X)
    c = rand_cycle(random.Random(1), 2)
    assert cycle_add(c, Cycle.zero(2)) == c
    assert Cycle.point(X) + Cycle.point(X) == Cycle.point(X, 2)
    # zero coefficients are never stored
    assert (Cycle.point(X) - Cycle.point(X)).support_size() == 0


def test_point_validation():
    with pytest.raises(TypeError):
        GroupPoint((1.5, 0))
    with pytest.raises(ValueError):
        Cycle(2, {GroupPoint((1,)): 1})
    with pytest.raises(ValueError):
        Cycle.point(X) + Cycle.point(GroupPoint((1,)))


def test_pontryagin_on_points():
    assert pontryagin(Cycle.point(X), Cycle.point(Y), CTX) == Cycle.point(X + Y)
    c = rand_cycle(random.Random(2), 2)
    assert pontryagin(Cycle.unit(2), c, CTX) == c


def test_pontryagin_square_of_difference():
    u = Cycle.point(X) - Cycle.unit(2)
    got = pontryagin(u, u, CTX)
    assert got == Cycle(2, {X.scale(2): 1, X: -2, O: 1})


def test_star_power_basics():
    assert star_power(Cycle.point(X), 3, CTX) == Cycle.point(X.scale(3))
    c = rand_cycle(random.Random(3), 2)
    assert star_power(c, 0, CTX) == Cycle.unit(2)
    with pytest.raises(ValueError):
        star_power(c, -1, CTX)


def test_star_power_alternating_expansion():
    from math import comb

    u = Cycle.point(X) - Cycle.unit(2)
    for k in range(1, 5):
        expected = Cycle(2, {X.scale(i): (-1) ** (k - i) * comb(k, i) for i in range(k + 1)})
        assert star_power(u, k, CTX) == expected


def test_ring_axioms_random():
    rng = random.Random(0)
    ctx = RingContext(rank=3, geom_dim=2, support_cap=10**6)
    for _ in range(25):
        a = rand_cycle(rng, 3)
        b = rand_cycle(rng, 3)
        c = rand_cycle(rng, 3)
        assert pontryagin(a, b, ctx) == pontryagin(b, a, ctx)
        assert pontryagin(pontryagin(a, b, ctx), c, ctx) == pontryagin(a, pontryagin(b, c, ctx), ctx)
        assert pontryagin(a, b + c, ctx) == pontryagin(a, b, ctx) + pontryagin(a, c, ctx)
        assert pontryagin(Cycle.unit(3), a, ctx) == a
        assert degree(pontryagin(a, b, ctx)) == degree(a) * degree(b)


def test_degree_examples():
    assert degree(Cycle.point(X)) == 1
    assert degree(Cycle.point(X) - Cycle.unit(2)) == 0
    assert degree(Cycle.unit(2).scale(5)) == 5
    a = rand_cycle(random.Random(4), 2)
    b = rand_cycle(random.Random(5), 2)
    assert degree(a + b) == degree(a) + degree(b)


def test_pushforward():
    assert pushforward(Cycle.point(X), 2) == Cycle.point(X.scale(2))
    rng = random.Random(6)
    ctx = RingContext(rank=2, geom_dim=2, support_cap=10**6)
    for n in (-2, -1, 0, 1, 2, 3):
        a = rand_cycle(rng, 2)
        b = rand_cycle(rng, 2)
        assert pushforward(pontryagin(a, b, ctx), n) == pontryagin(
            pushforward(a, n), pushforward(b, n), ctx
        )
        assert pushforward(a, 1) == a


def test_pushforward_collapses_points():
    c = Cycle.point(X) - Cycle.point(Y)
    assert pushforward(c, 0).is_zero()


def test_pushforward_of_gamma_one():
    # (m_{i+1})_* applied to -{x_1} + k{0} scales the moving point only
    k = 4
    c = Cycle(2, {X: -1, O: k})
    assert pushforward(c, 3) == Cycle(2, {X.scale(3): -1, O: k})


def test_support_cap_fails_loudly():
    small = RingContext(rank=2, geom_dim=3, support_cap=1)
    u = Cycle.point(X)
    with pytest.raises(SupportCapExceeded):
        pontryagin(u, u, small)
    far = Cycle.point(GroupPoint((5, 0)))
    with pytest.raises(SupportCapExceeded) as info:
        pontryagin(far, u, small)
    assert info.value.where == "input"


def test_context_validation():
    with pytest.raises(ValueError):
        RingContext(rank=0, geom_dim=1, support_cap=10)
    with pytest.raises(ValueError):
        RingContext(rank=1, geom_dim=0, support_cap=10)
    with pytest.raises(ValueError):
        RingContext(rank=1, geom_dim=1, support_cap=-1)


def test_serialization_round_trip():
    rng = random.Random(7)
    for _ in range(10):
        c = rand_cycle(rng, 2)
        again = Cycle.from_json(c.to_json())
        assert again == c


def test_serialization_format():
    c = Cycle(2, {X: Fraction(1, 2), O: -3, Y: 1})
    data = c.to_json_dict()
    assert data["rank"] == 2
    # lexicographic point order, decimal-free p/q coefficients
    assert [t["point"] for t in data["terms"]] == [[0, 0], [0, 1], [1, 0]]
    assert [t["coeff"] for t in data["terms"]] == ["-3/1", "1/1", "1/2"]
    parsed = json.loads(c.to_json())
    assert parsed == data


def test_cycles_are_immutable():
    c = Cycle.point(X)
    with pytest.raises(AttributeError):
        c.rank = 3
    with pytest.raises(AttributeError):
        X.coords = (0, 0)
