"""Property-based checks of the structural invariants."""

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from meshgb.covering import disjoint_copies, lift_path, validate_covering
from meshgb.dsl import format_quiver, load_quiver
from meshgb.fields import QQ, PrimeField
from meshgb.groebner import STRATEGIES, is_groebner, reduce_full
from meshgb.homotopy import homotopy_classes
from meshgb.lincomb import LinComb, combine, concat
from meshgb.order import build_mesh_lex_order, check_mesh_lexicographic
from meshgb.quiver import (
    Counting,
    classify_path,
    enumerate_paths,
    generate_zq_window,
    mesh_of,
    plain_quiver,
    validate_translation_quiver,
)
from meshgb.relations import build_S, enumerate_mesh_canonical, values
from meshgb.span import span_oracle, verify_certificate

import support

SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def acyclic_quivers(draw, max_vertices=5, max_arrows=6):
    n = draw(st.integers(1, max_vertices))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), max_size=max_arrows)) if pairs else []
    # a random relabelling so that declaration order is not the topological order
    perm = draw(st.permutations(range(n)))
    arrows = [(f"f{k}", f"v{perm[i]}", f"v{perm[j]}") for k, (i, j) in enumerate(chosen)]
    return plain_quiver([f"v{i}" for i in range(n)], arrows)


@st.composite
def windows(draw, max_depth=3):
    return generate_zq_window(draw(acyclic_quivers()), draw(st.integers(0, max_depth)))


@st.composite
def window_pairs(draw):
    T = draw(windows())
    x = draw(st.sampled_from(T.vertices))
    reach = sorted(T.reachable(x), key=T.vertex_index)
    y = draw(st.sampled_from(reach))
    return T, x, y


@SETTINGS
@given(acyclic_quivers(), st.integers(0, 4))
def test_windows_are_translation_quivers(Q, depth):
    T = generate_zq_window(Q, depth)
    assert validate_translation_quiver(T).ok
    assert len(T.vertices) == (depth + 1) * len(Q.vertices)
    for v in T.vertices:
        if not T.is_projective(v):
            m = mesh_of(T, v)
            assert len(m.pairs) == len(T.in_arrows(v)) == len(T.out_arrows(T.tau_of(v)))


@SETTINGS
@given(window_pairs())
def test_paths_are_distinct_sorted_and_stable(args):
    T, x, y = args
    paths = enumerate_paths(T, x, y)
    assert len(set(paths)) == len(paths)
    assert [p.key for p in paths] == sorted(p.key for p in paths)
    again, _ = load_quiver(format_quiver(T))
    assert [p.key for p in enumerate_paths(again, x, y)] == [p.key for p in paths]
    assert all(p.source == x and p.target == y for p in paths)


@SETTINGS
@given(window_pairs())
def test_arrow_counting_is_finer(args):
    # an arrow-counted open path is open for vertex counting too
    T, x, y = args
    for p in enumerate_paths(T, x, y):
        if not classify_path(T, p, Counting.ARROWS).closed:
            assert not classify_path(T, p, Counting.VERTICES).closed


WITH_RELATIONS = [
    (T, x, y)
    for _, _, T in support.windows(2)
    for x in T.vertices
    for y in T.vertices
    if enumerate_mesh_canonical(T, x, y)
] + [(support.ex2(), "x", "y")]


@SETTINGS
@given(st.sampled_from(WITH_RELATIONS), st.randoms(use_true_random=False))
def test_span_certificates(args, rng):
    T, x, y = args
    rels = values(enumerate_mesh_canonical(T, x, y))
    coeffs = [QQ.random_element(rng) for _ in rels]
    f = combine(coeffs, rels, x, y)
    rep = span_oracle(rels, f)
    assert rep.member
    assert verify_certificate(rels, rep.coefficients, f)
    assert rep.rank <= min(len(rels), len(enumerate_paths(T, x, y)))


@SETTINGS
@given(window_pairs(), st.data())
def test_mesh_lex_orders_give_groebner_bases(args, data):
    T, x, y = args
    base = support.admissible_base(T, x, y)
    perm = data.draw(st.permutations(base))
    order = build_mesh_lex_order(T, x, y, perm)
    assert check_mesh_lexicographic(order) == []
    assert order.paths() == order.descending(enumerate_paths(T, x, y))
    if not support.all_paths_closed(T, x, y):
        return
    rels = enumerate_mesh_canonical(T, x, y)
    for m in {r.length for r in rels}:
        assert is_groebner([r.value for r in rels if r.length == m], order).ok
    res = build_S(T, x, y, order)
    assert res.distinct_leading_paths
    assert span_oracle(values(res.S)).rank == span_oracle(values(rels)).rank


CLOSED_WITH_RELATIONS = [
    (T, x, y) for _, _, T in support.windows(3) for x, y in support.closed_pairs(T, with_relations=True)
]


@SETTINGS
@given(st.sampled_from(CLOSED_WITH_RELATIONS), st.randoms(use_true_random=False), st.sampled_from(STRATEGIES))
def test_span_members_reduce_to_zero(args, rng, strategy):
    T, x, y = args
    rels = values(enumerate_mesh_canonical(T, x, y))
    order = build_mesh_lex_order(T, x, y)
    f = combine([QQ.random_element(rng) for _ in rels], rels, x, y)
    trace = reduce_full(f, rels, order, strategy, rng.randrange(1000))
    assert trace.remainder.is_zero()
    assert trace.replay(rels).is_zero()


@SETTINGS
@given(st.sampled_from(CLOSED_WITH_RELATIONS), st.randoms(use_true_random=False))
def test_remainders_do_not_depend_on_strategy(args, rng):
    T, x, y = args
    rels = values(enumerate_mesh_canonical(T, x, y))
    order = build_mesh_lex_order(T, x, y)
    paths = enumerate_paths(T, x, y)
    f = LinComb(x, y, [(p, QQ.random_element(rng)) for p in paths])
    runs = [("first", 0), ("largest", 0)] + [("random", rng.randrange(1000)) for _ in range(3)]
    remainders = {reduce_full(f, rels, order, s, seed).remainder for s, seed in runs}
    assert len(remainders) == 1


@SETTINGS
@given(window_pairs())
def test_homotopy_partition(args):
    T, x, y = args
    part = homotopy_classes(T, x, y)
    flat = [p for c in part.classes for p in c]
    assert sorted(p.key for p in flat) == sorted(p.key for p in enumerate_paths(T, x, y))
    for c in part.classes:
        assert len({len(p) for p in c}) == 1


@SETTINGS
@given(windows(), st.integers(1, 3), st.randoms(use_true_random=False))
def test_lift_round_trip(T, sheets, rng):
    c = disjoint_copies(T, sheets)
    assert validate_covering(c).ok
    for _ in range(5):
        p = support.random_path(T, rng)
        start = f"{p.source}^{rng.randint(1, sheets)}"
        q = lift_path(c, p, start)
        assert c.project(q) == p
        assert classify_path(c.source, q) == classify_path(T, p)


@st.composite
def prime_elements(draw):
    F = PrimeField(draw(st.sampled_from([2, 3, 7, 32003])))
    return F, [F(draw(st.integers(-10**6, 10**6))) for _ in range(3)]


@SETTINGS
@given(prime_elements())
def test_prime_field_axioms(args):
    F, (a, b, c) = args
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a - a == F.zero
    if b:
        assert (a / b) * b == a


@SETTINGS
@given(st.randoms(use_true_random=False))
def test_composition_is_associative(rng):
    T = support.ex1()

    def random_comb(u, v):
        paths = enumerate_paths(T, u, v)
        return LinComb(u, v, [(p, QQ.random_element(rng)) for p in paths])

    f, g, h = random_comb("x", "x1"), random_comb("x1", "a'"), random_comb("a'", "y")
    assert concat(h, concat(g, f)) == concat(concat(h, g), f)
    f2 = random_comb("x", "x1")
    assert concat(g, f + f2) == concat(g, f) + concat(g, f2)
