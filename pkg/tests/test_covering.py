import json
import random

import pytest

from meshgb.covering import CoveringMap, disjoint_copies, identity_covering, lift_path, validate_covering
from meshgb.errors import EndpointMismatch, NoLift
from meshgb.quiver import classify_path, validate_translation_quiver

import support


def _from_fixture(name):
    data = json.loads(support.fixture_text(name))
    return CoveringMap(
        support.fixture_quiver(data["source"]),
        support.fixture_quiver(data["target"]),
        data["vertex_map"],
        data["arrow_map"],
    )


def test_double_cover_fixture():
    assert validate_covering(_from_fixture("ex1_double_cover.json")).ok


def test_shift_embedding_is_not_a_covering():
    report = validate_covering(_from_fixture("za2_shift.json"))
    assert "projectivity" in report.kinds()
    assert "local_bijection" in report.kinds()


def test_identity_and_copies(T1, T2):
    for T in (T1, T2):
        assert validate_covering(identity_covering(T)).ok
        c = disjoint_copies(T, 3)
        assert validate_translation_quiver(c.source).ok
        assert validate_covering(c).ok
        assert len(c.source.vertices) == 3 * len(T.vertices)


def test_cycle_window_covering():
    for depth in (1, 2, 3):
        c = support.cycle_window_covering(depth)
        assert validate_translation_quiver(c.source).ok
        assert validate_translation_quiver(c.target).ok
        assert validate_covering(c).ok


def test_lift_then_project(T2):
    c = disjoint_copies(T2)
    e1 = support.ex2_paths(T2)[0]
    q = lift_path(c, e1, "x^2")
    assert str(q) == "u1^2.v1^2.w1^2.t1^2"
    assert c.project(q) == e1
    assert not classify_path(c.source, q).closed


def test_lift_errors(T2):
    c = disjoint_copies(T2)
    e1 = support.ex2_paths(T2)[0]
    with pytest.raises(EndpointMismatch):
        lift_path(c, e1, "a^1")
    broken = CoveringMap(c.source, T2, c.vertex_map, {**c.arrow_map, "u1^1": "u2"})
    with pytest.raises(NoLift):
        lift_path(broken, e1, "x^1")


def test_broken_maps_are_reported(T1):
    c = identity_covering(T1)
    missing = CoveringMap(T1, T1, {v: v for v in T1.vertices if v != "y"}, c.arrow_map)
    assert "map_not_total" in validate_covering(missing).kinds()
    swapped = CoveringMap(T1, T1, c.vertex_map, {**c.arrow_map, "alpha1": "alpha2"})
    assert "not_a_morphism" in validate_covering(swapped).kinds()


def test_random_lifts_on_cycle_cover():
    rng = random.Random(7)
    c = support.cycle_window_covering(3)
    for _ in range(50):
        p = support.random_path(c.target, rng)
        start = rng.choice([v for v, w in c.vertex_map.items() if w == p.source])
        q = lift_path(c, p, start)
        assert c.project(q) == p
        assert classify_path(c.source, q) == classify_path(c.target, p)
