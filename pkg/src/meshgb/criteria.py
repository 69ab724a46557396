"""Nonvanishing of composites in the mesh category, and the thin-mesh hypothesis checks."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import CycleNeedsBound, MalformedLayerSpec, MeshError
from .fields import QQ, Field
from .groebner import is_groebner, reduce_full
from .homotopy import Homotopy, _component, single_class
from .lincomb import LinComb, concat
from .order import PathOrder, build_mesh_lex_order, default_order
from .quiver import Counting, Path, TranslationQuiver, classify_path, enumerate_paths
from .relations import enumerate_mesh_canonical, values
from .span import span_oracle

THEOREM_APPLIES = "THEOREM_APPLIES"
HYPOTHESES_UNVERIFIED = "HYPOTHESES_UNVERIFIED"
THEOREM_VIOLATION = "THEOREM_VIOLATION"


@dataclass(frozen=True)
class LayerSpec:
    """A chain x0 -> x1 -> ... -> xn with, per step, coefficients on the arrows x_{i-1} -> x_i.

    Arrows left out of a layer have coefficient zero.
    """

    vertices: tuple[str, ...]
    layers: tuple[tuple[tuple[str, object], ...], ...]

    @classmethod
    def from_json(cls, data: Mapping, field: Field = QQ) -> "LayerSpec":
        try:
            layers = tuple(
                tuple((t["arrow"], field.parse(str(t["coeff"]))) for t in layer) for layer in data["layers"]
            )
            return cls(tuple(data["vertices"]), layers)
        except (KeyError, TypeError) as exc:
            raise MalformedLayerSpec(f"malformed layer document: {exc}") from exc

    def to_json(self, field: Field = QQ) -> dict:
        return {
            "vertices": list(self.vertices),
            "layers": [[{"arrow": a, "coeff": field.format(c)} for a, c in layer] for layer in self.layers],
        }


def layer_combinations(T: TranslationQuiver, spec: LayerSpec, field: Field = QQ) -> list[LinComb]:
    if len(spec.vertices) != len(spec.layers) + 1 or not spec.layers:
        raise MalformedLayerSpec("need n >= 1 layers and n + 1 vertices")
    out = []
    for i, layer in enumerate(spec.layers, start=1):
        u, v = spec.vertices[i - 1], spec.vertices[i]
        terms = []
        seen = set()
        for name, c in layer:
            a = T.arrow(name)
            if (a.source, a.target) != (u, v):
                raise MalformedLayerSpec(f"layer {i}: arrow {name} does not run {u} -> {v}")
            if name in seen:
                raise MalformedLayerSpec(f"layer {i}: arrow {name} listed twice")
            seen.add(name)
            terms.append((Path(u, (a,)), c))
        h = LinComb(u, v, terms, field)
        if not h:
            raise MalformedLayerSpec(f"layer {i} is zero")
        out.append(h)
    return out


@dataclass(frozen=True)
class ZeroTestReport:
    product: LinComb
    remainder: LinComb | None
    zero_in_quotient: bool
    zero_by_reduction: bool | None
    groebner: bool | None
    verdicts_agree: bool | None
    hypotheses: dict
    status: str
    certificate: tuple | None


def zero_test_composite(
    T: TranslationQuiver,
    spec: LayerSpec,
    order: PathOrder | None = None,
    field: Field = QQ,
    counting: Counting = Counting.ARROWS,
) -> ZeroTestReport:
    """Decide whether h_n ... h_1 vanishes in the mesh category and whether nonvanishing is guaranteed.

    Vanishing is decided by span membership in the relations of length n; when
    those relations form a Groebner basis under ``order`` the reduction verdict
    is computed too and compared.
    """
    hs = layer_combinations(T, spec, field)
    product = hs[0]
    for h in hs[1:]:
        product = concat(h, product)
    x, y, n = spec.vertices[0], spec.vertices[-1], len(hs)
    rels = values(enumerate_mesh_canonical(T, x, y, n, field))

    try:
        all_paths = enumerate_paths(T, x, y)
        homotopic = Homotopy.HOMOTOPIC if single_class(T, all_paths) else Homotopy.NOT_SHOWN
        closed = all(classify_path(T, p, counting).closed for p in all_paths)
    except CycleNeedsBound:
        all_paths = None
        homotopic, closed = Homotopy.NOT_SHOWN, False

    if order is None and all_paths is not None:
        try:
            order = build_mesh_lex_order(T, x, y)
        except MeshError:
            order = default_order(T, x, y)

    member = span_oracle(rels, product, order)
    remainder = zero_by_reduction = groebner = agree = None
    if order is not None:
        remainder = reduce_full(product, rels, order).remainder
        zero_by_reduction = remainder.is_zero()
        groebner = is_groebner(rels, order).ok if rels else True
        if groebner:
            agree = zero_by_reduction == member.member

    hypotheses = {
        "pairwise_homotopic": homotopic.value,
        "all_closed": closed,
        "layers_nonzero": True,
    }
    if homotopic is Homotopy.HOMOTOPIC and closed:
        status = THEOREM_VIOLATION if member.member else THEOREM_APPLIES
    else:
        status = HYPOTHESES_UNVERIFIED
    return ZeroTestReport(
        product, remainder, bool(member.member), zero_by_reduction, groebner, agree, hypotheses, status, member.coefficients
    )


@dataclass(frozen=True)
class MainHypothesisReport:
    ok: bool
    violations: tuple[str, ...]


def _thin(T: TranslationQuiver, z: str, counting: Counting) -> bool:
    n = len(T.in_arrows(z)) if counting is Counting.ARROWS else len(T.predecessors(z))
    return n < 2


def check_main_hypothesis(
    T: TranslationQuiver, X: str, Y: str, counting: Counting = Counting.ARROWS
) -> MainHypothesisReport:
    """Every non-projective Z with X ~> tau Z and Z ~> Y must have a mesh with at least two middle terms."""
    T.check_vertex(X)
    T.check_vertex(Y)
    bad = tuple(
        z
        for z in T.vertices
        if not T.is_projective(z)
        and T.has_path(X, T.tau_of(z))
        and T.has_path(z, Y)
        and _thin(T, z, counting)
    )
    return MainHypothesisReport(not bad, bad)


@dataclass(frozen=True)
class MeshWitness:
    z: str
    gamma1: Path  # X ~> tau Z
    middle: str  # the single middle term E
    gamma2: Path  # Z ~> Y
    path: Path  # gamma1, then tau Z -> E -> Z, then gamma2
    status: Homotopy


def find_mesh_witness(
    T: TranslationQuiver, p: Path, counting: Counting = Counting.ARROWS
) -> MeshWitness | None:
    """Look for a thin mesh tau Z -> E -> Z and a path through it homotopic to ``p``.

    Returns the first confirmed witness in canonical order; failing that, the
    first structural candidate (labelled NotShown); None if there is none.
    """
    X, Y, n = p.source, p.target, len(p)
    if n < 2:
        return None
    candidates = check_main_hypothesis(T, X, Y, counting).violations
    component = None
    fallback = None
    for z in candidates:
        tz = T.tau_of(z)
        for l1 in range(n - 1):
            for g1 in enumerate_paths(T, X, tz, l1):
                for a in T.out_arrows(tz):
                    for b in T.arrows_between(a.target, z):
                        for g2 in enumerate_paths(T, z, Y, n - 2 - l1):
                            w = g1.then(Path(tz, (a, b))).then(g2)
                            if component is None:
                                component = _component(T, p)
                            if w in component:
                                return MeshWitness(z, g1, a.target, g2, w, Homotopy.HOMOTOPIC)
                            if fallback is None:
                                fallback = MeshWitness(z, g1, a.target, g2, w, Homotopy.NOT_SHOWN)
    return fallback
