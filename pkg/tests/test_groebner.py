import pytest

from meshgb.errors import LpOfZero, NotReducible
from meshgb.groebner import STRATEGIES, is_groebner, is_reduced, reduce_full, reduce_once
from meshgb.lincomb import LinComb
from meshgb.relations import enumerate_mesh_canonical, values

import support


@pytest.fixture
def named1(T1):
    return support.numbered(enumerate_mesh_canonical(T1, "x", "y"), support.ex1_named_values(T1))


@pytest.fixture
def named2(T2):
    return support.numbered(enumerate_mesh_canonical(T2, "x", "y"), support.ex2_named_values(T2))


def test_reduce_once(T1, order1, named1):
    r1, r2, r3, r4, r5 = values(named1)
    e = support.ex1_paths(T1)
    out = reduce_once(r4, r1, order1)
    assert out == LinComb("x", "y", [(e[1], -1), (e[2], 1), (e[4], 1)])
    with pytest.raises(NotReducible):
        reduce_once(r2, r1, order1)
    with pytest.raises(LpOfZero):
        reduce_once(r1, LinComb.zero("x", "y"), order1)


def test_r4_reduces_to_zero(order1, named1):
    r1, r2, r3, r4, r5 = values(named1)
    for strategy in STRATEGIES:
        trace = reduce_full(r4, [r1, r2, r3, r5], order1, strategy, seed=3)
        assert trace.remainder.is_zero()
        assert trace.replay([r1, r2, r3, r5]) == trace.remainder


def test_trace_records_each_step(order1, named1):
    r1, r2, r3, r4, r5 = values(named1)
    trace = reduce_full(r4, [r1, r2, r3, r5], order1, "first")
    # r1 kills e1, leaving -e2+e3+e5; then r2, r3 and finally r5
    assert [s.reducer for s in trace.steps] == [0, 1, 2, 3]
    assert trace.start == r4


def test_unknown_strategy(order1, named1):
    with pytest.raises(ValueError):
        reduce_full(named1[0].value, [], order1, "fastest")


def test_ex1_is_groebner(T1, order1, named1):
    verdict = is_groebner(values(named1), order1)
    assert verdict.ok and verdict.witness is None
    e = support.ex1_paths(T1)
    assert verdict.lp_set == {e[0], e[1], e[2], e[4]}
    assert verdict.rank == 4
    assert [order1.leading_path(r.value) for r in named1] == [e[0], e[2], e[4], e[0], e[1]]


def test_ex2_is_not_groebner(T2, order2, named2):
    e = support.ex2_paths(T2)
    assert [order2.leading_path(r.value) for r in named2] == [e[1], e[2], e[0], e[1], e[0]]
    verdict = is_groebner(values(named2), order2)
    assert not verdict.ok
    assert verdict.witness == LinComb.of_path(e[3])
    assert verdict.rank == 4


def test_e4_is_reduced_but_in_the_span(T2, order2, named2):
    e4 = LinComb.of_path(support.ex2_paths(T2)[3])
    G = values(named2)
    assert is_reduced(e4, G, order2)
    assert reduce_full(e4, G, order2).remainder == e4
    r1, r2, r3, r4, r5 = G
    assert r2 - r5 + r3 == e4


def test_ex2_remainders_depend_on_strategy(T2, order2, named2):
    e = support.ex2_paths(T2)
    G = values(named2)
    f = LinComb.of_path(e[0])
    # e1 alone reduces to 0; via e1+e2 and then e2+e4 it gets stuck at e4
    runs = [("first", 0), ("largest", 0)] + [("random", seed) for seed in range(20)]
    remainders = {reduce_full(f, G, order2, s, seed).remainder for s, seed in runs}
    assert remainders == {LinComb.of_path(e[3]), LinComb.zero("x", "y")}
