"""Shared builders for the test-suite: fixture quivers and the ZQ sweep instances."""
import itertools
import json
from functools import lru_cache
from pathlib import Path as FsPath

from meshgb.dsl import load_quiver
from meshgb.order import PathOrder, build_mesh_lex_order
from meshgb.quiver import all_paths_closed, enumerate_paths, generate_zq_window, plain_quiver
from meshgb.relations import enumerate_mesh_canonical

FIXTURES = FsPath(__file__).parent / "fixtures"

DYNKIN = {
    "A2": (["1", "2"], [("a", "1", "2")]),
    "A3": (["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")]),
    "A4": (["1", "2", "3", "4"], [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4")]),
    "D4-source": (["0", "1", "2", "3"], [("a", "0", "1"), ("b", "0", "2"), ("c", "0", "3")]),
    "D4-sink": (["0", "1", "2", "3"], [("a", "1", "0"), ("b", "2", "0"), ("c", "3", "0")]),
}


def fixture_text(name):
    return (FIXTURES / name).read_text()


@lru_cache(maxsize=None)
def fixture_quiver(name):
    T, report = load_quiver(fixture_text(name))
    assert report.ok, report
    return T


def fixture_order(T, name):
    return PathOrder.from_json(T, json.loads(fixture_text(name)))


def ex1():
    return fixture_quiver("ex1.quiver")


def ex2():
    return fixture_quiver("ex2.quiver")


def ex1_paths(T):
    """e1..e6 in the standard numbering of the fixture."""
    names = [
        "alpha1.beta1.gamma1.delta1",
        "alpha1.beta1.gamma2.delta2",
        "alpha2.beta2.gamma1.delta1",
        "alpha2.beta2.gamma2.delta2",
        "alpha3.beta3.gamma1.delta1",
        "alpha3.beta3.gamma2.delta2",
    ]
    return [T.path_of(n.split(".")) for n in names]


def ex2_paths(T):
    names = ["u1.v1.w1.t1", "u1.v1.w2.t2", "u2.v2.w1.t1", "u2.v2.w2.t2"]
    return [T.path_of(n.split(".")) for n in names]


@lru_cache(maxsize=None)
def zq_window(name, depth):
    return generate_zq_window(plain_quiver(*DYNKIN[name]), depth)


def windows(max_depth=4):
    for name in DYNKIN:
        for d in range(1, max_depth + 1):
            yield name, d, zq_window(name, d)


def admissible_base(T, x, y):
    return [a for a in T.out_arrows(x) if T.has_path(a.target, y)]


def closed_pairs(T, with_relations=False):
    for x in T.vertices:
        for y in T.vertices:
            if not enumerate_paths(T, x, y) or not all_paths_closed(T, x, y):
                continue
            if with_relations and not enumerate_mesh_canonical(T, x, y):
                continue
            yield x, y


def sweep_instances(with_relations=False):
    """(label, T, x, y, order) for every closed pair of every window and every base permutation."""
    for name, d, T in windows():
        for x, y in closed_pairs(T, with_relations):
            for perm in itertools.permutations(admissible_base(T, x, y)):
                yield f"{name}/d{d}/{x}->{y}", T, x, y, build_mesh_lex_order(T, x, y, perm)


def ex1_named_values(T):
    """r1..r5 in the standard numbering of the fixture, as linear combinations."""
    from meshgb.lincomb import LinComb

    e = ex1_paths(T)
    groups = [(0, 1), (2, 3), (4, 5), (0, 2, 4), (1, 3, 5)]
    return [LinComb.sum_of([e[i] for i in g], "x", "y") for g in groups]


def ex2_named_values(T):
    from meshgb.lincomb import LinComb

    e = ex2_paths(T)
    groups = [(1, 0), (2, 3), (0,), (1, 3), (0, 2)]
    return [LinComb.sum_of([e[i] for i in g], "x", "y") for g in groups]


def numbered(relations, named_values):
    """Reorder enumerated relations to the standard numbering r1..r5."""
    by_value = {r.value: r for r in relations}
    assert len(by_value) == len(relations)
    return [by_value[v] for v in named_values]


def alternating_cycle(n):
    """Cycle with n (even) vertices, arrows oriented from even to odd vertices."""
    arrows = []
    for k in range(n):
        u, v = str(k), str((k + 1) % n)
        arrows.append((f"e{k}", u, v) if k % 2 == 0 else (f"e{k}", v, u))
    return plain_quiver([str(k) for k in range(n)], arrows)


def cycle_window_covering(depth, sheets=2, n=4):
    """Window covering induced by the degree-``sheets`` covering of alternating cycles."""
    from meshgb.covering import window_covering

    big, small = alternating_cycle(n * sheets), alternating_cycle(n)
    vmap = {str(k): str(k % n) for k in range(n * sheets)}
    amap = {f"e{k}": f"e{k % n}" for k in range(n * sheets)}
    return window_covering(big, small, vmap, amap, depth)


def random_path(T, rng, max_length=6):
    v = rng.choice(T.vertices)
    arrows = []
    for _ in range(rng.randint(0, max_length)):
        outs = T.out_arrows(v)
        if not outs:
            break
        a = rng.choice(outs)
        arrows.append(a)
        v = a.target
    from meshgb.quiver import Path

    return Path(arrows[0].source if arrows else v, arrows)
