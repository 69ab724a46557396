"""Mesh relations, mesh-canonical relations and the Groebner structure they carry.

A mesh-canonical relation between x and y is ``gamma2 . m_z . gamma1`` for a
non-injective vertex z, a path gamma1: x ~> z and a path gamma2: tau^-1(z) ~> y,
where ``m_z`` sums the length-2 paths ``alpha`` then ``sigma^-1(alpha)`` over
the arrows alpha leaving z. Relations are identified by their triple, not by
their value: distinct triples may expand to the same linear combination.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import HypothesisViolated, NoMeshRelation, NotMeshLexicographic, EndpointMismatch
from .fields import QQ, Field
from .groebner import ReductionTrace, is_groebner, reduce_full
from .lincomb import LinComb, concat
from .order import PathOrder, check_mesh_lexicographic
from .quiver import Counting, Path, TranslationQuiver, all_paths_closed, enumerate_paths
from .span import span_oracle


@dataclass(frozen=True)
class MeshCanonicalRelation:
    z: str
    gamma1: Path
    gamma2: Path
    value: LinComb = field(compare=False, hash=False)

    @property
    def length(self) -> int:
        return len(self.gamma1) + 2 + len(self.gamma2)

    def label(self) -> str:
        return f"{self.gamma2} . m[{self.z}] . {self.gamma1}"

    def __str__(self):
        return f"{self.label()} = {self.value}"


def mesh_relation(T: TranslationQuiver, z: str, field: Field = QQ) -> LinComb:
    """m_z: the sum of the paths ``alpha`` then ``sigma^-1(alpha)`` over all arrows alpha leaving z."""
    w = T.tau_inverse(z)
    if w is None:
        raise NoMeshRelation(f"{z} is injective; no mesh starts there")
    terms = []
    for a in T.out_arrows(z):
        b = T.sigma_inverse(a)
        if b is None:
            raise NoMeshRelation(f"sigma^-1({a.name}) is undefined")
        terms.append((Path(z, (a, b)), 1))
    return LinComb(z, w, terms, field)


def _relation(T, z, g1: Path, g2: Path, field) -> MeshCanonicalRelation:
    return MeshCanonicalRelation(z, g1, g2, concat(g2, concat(mesh_relation(T, z, field), g1)))


def enumerate_mesh_canonical(
    T: TranslationQuiver, x: str, y: str, length: int | None = None, field: Field = QQ
) -> list[MeshCanonicalRelation]:
    """All mesh-canonical relations between x and y (of total ``length`` if given), canonically ordered."""
    if length is None:
        enumerate_paths(T, x, y)  # raises when the x ~> y paths are infinite
    out = []
    reach_x = T.reachable(x)
    for z in T.vertices:
        w = T.tau_inverse(z)
        if w is None or z not in reach_x or not T.has_path(w, y):
            continue
        if length is None:
            pairs = [(g1, g2) for g1 in enumerate_paths(T, x, z) for g2 in enumerate_paths(T, w, y)]
        else:
            pairs = [
                (g1, g2)
                for l1 in range(max(length - 1, 0))
                for g1 in enumerate_paths(T, x, z, l1)
                for g2 in enumerate_paths(T, w, y, length - 2 - l1)
            ]
        out.extend(_relation(T, z, g1, g2, field) for g1, g2 in pairs)
    out.sort(key=lambda r: (r.gamma1.key, T.vertex_index(r.z), r.gamma2.key))
    return out


def values(relations: Sequence[MeshCanonicalRelation]) -> list[LinComb]:
    return [r.value for r in relations]


@dataclass(frozen=True)
class DerivedPartition:
    mesh_derived: tuple[MeshCanonicalRelation, ...]  # relations using m_x directly
    by_successor: dict  # successor vertex -> relations whose gamma1 starts with an arrow into it
    comesh_derived: tuple[MeshCanonicalRelation, ...]  # r . sigma^-1(alpha) . alpha with r between tau^-1 x and y


def is_comesh_derived(T: TranslationQuiver, r: MeshCanonicalRelation) -> bool:
    arrows = r.gamma1.arrows
    if len(arrows) < 2 or T.tau_inverse(r.gamma1.source) is None:
        return False
    return arrows[1] == T.sigma_inverse(arrows[0])


def partition_derived(
    T: TranslationQuiver, x: str, y: str, relations: Sequence[MeshCanonicalRelation]
) -> DerivedPartition:
    mesh, by_succ, comesh = [], {}, []
    for r in relations:
        if r.gamma1.source != x or r.gamma2.target != y:
            raise EndpointMismatch(f"relation {r.label()} is not between {x} and {y}")
        if not r.gamma1.arrows:
            mesh.append(r)
        else:
            by_succ.setdefault(r.gamma1.arrows[0].target, []).append(r)
        if is_comesh_derived(T, r):
            comesh.append(r)
    return DerivedPartition(tuple(mesh), {k: tuple(v) for k, v in by_succ.items()}, tuple(comesh))


def _require_mesh_lex(order: PathOrder, x: str, y: str):
    if (order.source, order.target) != (x, y):
        raise EndpointMismatch(f"order is for {order.source} ~> {order.target}, not {x} ~> {y}")
    bad = check_mesh_lexicographic(order)
    if bad:
        raise NotMeshLexicographic(str(bad[0]))


@dataclass(frozen=True)
class BimeshResult:
    alpha1: object  # largest admissible arrow at x, or None
    mesh_derived: tuple[MeshCanonicalRelation, ...]
    sc: tuple[MeshCanonicalRelation, ...]
    comesh_derived: tuple[MeshCanonicalRelation, ...]
    decompositions: dict  # relation in R_x \ Sc -> tuple of (relation, coefficient) over comesh_derived + sc


def _sc(T, x, y, order, mesh_derived, field):
    if not mesh_derived:
        return None, ()
    alpha1 = order.base[0]
    w = T.tau_inverse(x)
    prefix = Path(x, (alpha1, T.sigma_inverse(alpha1)))
    blocked = {
        order.leading_path(concat(s.value, prefix))
        for s in enumerate_mesh_canonical(T, w, y, field=field)
    }
    return alpha1, tuple(r for r in mesh_derived if order.leading_path(r.value) not in blocked)


def bimesh_Sc(
    T: TranslationQuiver,
    x: str,
    y: str,
    order: PathOrder,
    relations: Sequence[MeshCanonicalRelation] | None = None,
    field: Field = QQ,
) -> BimeshResult:
    """The relations derived from the mesh of x whose leading path is not hit by the comesh.

    Each remaining relation of R_x is written as an explicit combination of
    the comesh-derived relations and Sc, found by row reduction.
    """
    _require_mesh_lex(order, x, y)
    if relations is None:
        relations = enumerate_mesh_canonical(T, x, y, field=field)
    part = partition_derived(T, x, y, relations)
    alpha1, sc = _sc(T, x, y, order, part.mesh_derived, field)
    spanning = list(part.comesh_derived) + [r for r in sc if r not in part.comesh_derived]
    decompositions = {}
    for r in part.mesh_derived:
        if r in sc:
            continue
        rep = span_oracle(values(spanning), r.value, order)
        decompositions[r] = (
            tuple((s, c) for s, c in zip(spanning, rep.coefficients) if c) if rep.member else None
        )
    return BimeshResult(alpha1, part.mesh_derived, sc, part.comesh_derived, decompositions)


@dataclass(frozen=True)
class BuildSResult:
    relations: tuple[MeshCanonicalRelation, ...]  # all of R(x,y)
    S: tuple[MeshCanonicalRelation, ...]
    certificates: dict  # relation in R \ S -> tuple of (relation in S, coefficient), or None
    leading_paths: tuple[Path, ...]  # lp of each member of S, aligned with S

    @property
    def distinct_leading_paths(self) -> bool:
        return len(set(self.leading_paths)) == len(self.leading_paths)


def _build_S(T, x, y, order: PathOrder, field) -> list[MeshCanonicalRelation]:
    relations = enumerate_mesh_canonical(T, x, y, field=field)
    if not relations:
        return []
    part = partition_derived(T, x, y, relations)
    _, sc = _sc(T, x, y, order, part.mesh_derived, field)
    result = list(sc)
    successors = []
    for a in order.base:
        if a.target not in successors:
            successors.append(a.target)
    for succ in successors:
        sub = _build_S(T, succ, y, order.suborder(succ), field)
        for a in order.base:
            if a.target != succ:
                continue
            step = Path(x, (a,))
            for s in sub:
                result.append(MeshCanonicalRelation(s.z, step.then(s.gamma1), s.gamma2, concat(s.value, step)))
    return result


def build_S(
    T: TranslationQuiver,
    x: str,
    y: str,
    order: PathOrder,
    counting: Counting = Counting.ARROWS,
    field: Field = QQ,
) -> BuildSResult:
    """The subset S(x,y) of R(x,y) with pairwise distinct leading paths spanning all of R(x,y).

    Built recursively: Sc at x together with the relations obtained by
    prefixing S(x_i, y) with each arrow x -> x_i. Every relation left out is
    certified as a combination of S by row reduction.
    """
    if not all_paths_closed(T, x, y, counting):
        raise HypothesisViolated(f"some path {x} ~> {y} is open")
    _require_mesh_lex(order, x, y)
    relations = enumerate_mesh_canonical(T, x, y, field=field)
    S = _build_S(T, x, y, order, field)
    leads = [order.leading_path(r.value) for r in S]
    chosen = set(S)
    certificates = {}
    for r in relations:
        if r in chosen:
            continue
        rep = span_oracle(values(S), r.value, order)
        certificates[r] = tuple((s, c) for s, c in zip(S, rep.coefficients) if c) if rep.member else None
    return BuildSResult(tuple(relations), tuple(S), certificates, tuple(leads))


@dataclass(frozen=True)
class NormalForm:
    representative: LinComb
    quotient_dim: int
    zero_by_reduction: bool
    zero_in_quotient: bool
    groebner: bool
    certificate: tuple | None
    trace: ReductionTrace
    relations: tuple[MeshCanonicalRelation, ...]


def quotient_dim(T: TranslationQuiver, x: str, y: str, length: int | None = None, field: Field = QQ) -> int:
    """dim of the mesh-category slice k(T)(x, y) (restricted to one path length if given)."""
    paths = enumerate_paths(T, x, y, length)
    rels = enumerate_mesh_canonical(T, x, y, length, field)
    return len(paths) - span_oracle(values(rels)).rank


def normal_form(
    T: TranslationQuiver,
    v: LinComb,
    order: PathOrder,
    length: int | None = None,
    strategy: str = "largest",
    seed: int | None = None,
) -> NormalForm:
    """Reduce ``v`` modulo R(x,y) and decide independently whether it vanishes in the mesh category.

    The representative is canonical only when R(x,y) is a Groebner basis under
    ``order``; zero-ness is always also decided by span membership.
    """
    x, y = v.source, v.target
    rels = enumerate_mesh_canonical(T, x, y, length, v.field)
    vals = values(rels)
    trace = reduce_full(v, vals, order, strategy, seed)
    rep = span_oracle(vals, v, order)
    groebner = is_groebner(vals, order).ok if vals else True
    dim = len(enumerate_paths(T, x, y, length)) - rep.rank
    return NormalForm(
        trace.remainder,
        dim,
        trace.remainder.is_zero(),
        bool(rep.member),
        groebner,
        rep.coefficients,
        trace,
        tuple(rels),
    )
