"""Coverings of translation quivers and unique path lifting."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Mapping

from .errors import EndpointMismatch, NoLift, UnknownName
from .quiver import Path, TranslationQuiver, ValidationReport, Violation


@dataclass(frozen=True)
class CoveringMap:
    source: TranslationQuiver
    target: TranslationQuiver
    vertex_map: Mapping[str, str]
    arrow_map: Mapping[str, str]

    def vertex(self, v: str) -> str:
        return self.vertex_map[v]

    def project(self, q: Path) -> Path:
        """Image of a path of the source quiver."""
        return Path(self.vertex_map[q.source], [self.target.arrow(self.arrow_map[a.name]) for a in q.arrows])


def validate_covering(c: CoveringMap) -> ValidationReport:
    S, T = c.source, c.target
    out = []
    for v in S.vertices:
        if v not in c.vertex_map:
            out.append(Violation("map_not_total", f"vertex {v} has no image", v))
        elif not T.has_vertex(c.vertex_map[v]):
            out.append(Violation("map_not_total", f"vertex {v} maps to unknown {c.vertex_map[v]}", v))
    for a in S.arrows:
        image = c.arrow_map.get(a.name)
        if image is None:
            out.append(Violation("map_not_total", f"arrow {a.name} has no image", a.name))
            continue
        try:
            b = T.arrow(image)
        except UnknownName:
            out.append(Violation("map_not_total", f"arrow {a.name} maps to unknown {image}", a.name))
            continue
        if (c.vertex_map.get(a.source), c.vertex_map.get(a.target)) != (b.source, b.target):
            out.append(Violation("not_a_morphism", f"arrow {a.name} maps to {image} with other endpoints", a.name))
    if out:
        return ValidationReport(tuple(out))

    for v in S.vertices:
        w = c.vertex_map[v]
        if S.is_projective(v) != T.is_projective(w):
            out.append(Violation("projectivity", f"{v} projective={S.is_projective(v)} but image {w} projective={T.is_projective(w)}", v))
        if S.is_injective(v) != T.is_injective(w):
            out.append(Violation("injectivity", f"{v} injective={S.is_injective(v)} but image {w} injective={T.is_injective(w)}", v))
    for v, tv in S.tau.items():
        w = c.vertex_map[v]
        if T.tau_of(w) != c.vertex_map[tv]:
            out.append(Violation("tau_commutation", f"image of tau({v}) is {c.vertex_map[tv]}, tau of image is {T.tau_of(w)}", v))
    for v in S.vertices:
        w = c.vertex_map[v]
        for side, here, there in (
            ("outgoing", S.out_arrows(v), T.out_arrows(w)),
            ("incoming", S.in_arrows(v), T.in_arrows(w)),
        ):
            images = Counter(c.arrow_map[a.name] for a in here)
            if images != Counter(b.name for b in there):
                out.append(Violation("local_bijection", f"{side} arrows at {v} do not map bijectively onto those at {w}", v))
    return ValidationReport(tuple(out))


def lift_path(c: CoveringMap, p: Path, start: str) -> Path:
    """The unique path of the source starting at ``start`` whose image is ``p``."""
    if c.vertex_map.get(start) != p.source:
        raise EndpointMismatch(f"{start} does not lie over {p.source}")
    here, lifted = start, []
    for b in p.arrows:
        options = [a for a in c.source.out_arrows(here) if c.arrow_map.get(a.name) == b.name]
        if len(options) != 1:
            raise NoLift(f"arrow {b.name} has {len(options)} preimages at {here}")
        lifted.append(options[0])
        here = options[0].target
    q = Path(start, lifted)
    assert c.project(q) == p
    return q


def disjoint_copies(T: TranslationQuiver, sheets: int = 2) -> CoveringMap:
    """The trivial covering by ``sheets`` disjoint copies of T (names suffixed ``^k``)."""
    vertices, arrows, tau, sigma = [], [], {}, {}
    vmap, amap = {}, {}
    for k in range(1, sheets + 1):
        for v in T.vertices:
            vertices.append(f"{v}^{k}")
            vmap[f"{v}^{k}"] = v
        for a in T.arrows:
            arrows.append((f"{a.name}^{k}", f"{a.source}^{k}", f"{a.target}^{k}"))
            amap[f"{a.name}^{k}"] = a.name
        tau.update({f"{u}^{k}": f"{v}^{k}" for u, v in T.tau.items()})
        sigma.update({f"{u}^{k}": f"{v}^{k}" for u, v in T.sigma.items()})
    return CoveringMap(TranslationQuiver(vertices, arrows, tau, sigma), T, vmap, amap)


def identity_covering(T: TranslationQuiver) -> CoveringMap:
    return CoveringMap(T, T, {v: v for v in T.vertices}, {a.name: a.name for a in T.arrows})


def window_covering(
    cover: TranslationQuiver,
    base: TranslationQuiver,
    vertex_map: Mapping[str, str],
    arrow_map: Mapping[str, str],
    depth: int,
) -> CoveringMap:
    """Covering of ZQ windows induced by a quiver covering ``cover -> base`` (layer by layer)."""
    from .quiver import generate_zq_window

    up, down = generate_zq_window(cover, depth), generate_zq_window(base, depth)
    vmap = {f"{v}@{i}": f"{vertex_map[v]}@{i}" for v in cover.vertices for i in range(depth + 1)}
    amap = {}
    for a in cover.arrows:
        for i in range(depth + 1):
            amap[f"{a.name}@{i}"] = f"{arrow_map[a.name]}@{i}"
            if i < depth:
                amap[f"{a.name}'@{i}"] = f"{arrow_map[a.name]}'@{i}"
    return CoveringMap(up, down, vmap, amap)
