"""Translation quivers, paths between their vertices, and the path classifiers.

Vertices are strings; arrows are interned :class:`Arrow` records whose
``index`` (declaration order) is the canonical tie-break everywhere.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import (
    CycleNeedsBound,
    CyclicQuiver,
    EndpointMismatch,
    InvalidPath,
    MeshError,
    NoMesh,
    UnknownName,
)


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str
    index: int

    def __str__(self):
        return self.name


class Path:
    """A composable sequence of arrows; the empty sequence is the trivial path at ``source``."""

    __slots__ = ("source", "arrows", "_key", "_hash")

    def __init__(self, source: str, arrows: Iterable[Arrow] = ()):
        arrows = tuple(arrows)
        here = source
        for a in arrows:
            if a.source != here:
                raise InvalidPath(f"arrow {a.name} starts at {a.source}, expected {here}")
            here = a.target
        self.source = source
        self.arrows = arrows
        self._key = tuple(a.index for a in arrows)
        self._hash = hash((source, self._key))

    @property
    def target(self) -> str:
        return self.arrows[-1].target if self.arrows else self.source

    @property
    def key(self) -> tuple[int, ...]:
        """Canonical sort key: arrow indices in traversal order."""
        return self._key

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.arrows)

    @property
    def vertices(self) -> tuple[str, ...]:
        return (self.source,) + tuple(a.target for a in self.arrows)

    def then(self, other: "Path") -> "Path":
        """Traverse ``self`` first, then ``other``."""
        if self.target != other.source:
            raise EndpointMismatch(f"cannot compose {self} (ends at {self.target}) with {other} (starts at {other.source})")
        return Path(self.source, self.arrows + other.arrows)

    def __len__(self):
        return len(self.arrows)

    def __eq__(self, other):
        if not isinstance(other, Path):
            return NotImplemented
        return self.source == other.source and self._key == other._key

    def __hash__(self):
        return self._hash

    def __str__(self):
        return ".".join(self.names) if self.arrows else f"1_{self.source}"

    def __repr__(self):
        return f"Path({self})"


class Counting(enum.Enum):
    """How branching at a vertex is counted: arrows with multiplicity, or distinct successor vertices."""

    ARROWS = "arrows"
    VERTICES = "vertices"


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    subject: str = ""


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> list[str]:
        return [v.kind for v in self.violations]

    def __iter__(self):
        return iter(self.violations)

    def __len__(self):
        return len(self.violations)


@dataclass(frozen=True)
class Neighborhood:
    vertex: str
    predecessors: frozenset
    successors: frozenset
    in_arrows: tuple[Arrow, ...]
    out_arrows: tuple[Arrow, ...]


@dataclass(frozen=True)
class MeshView:
    vertex: str
    tau: str
    in_arrows: tuple[Arrow, ...]
    out_arrows: tuple[Arrow, ...]
    pairs: tuple[tuple[Arrow, Arrow], ...]  # (alpha into vertex, sigma(alpha) out of tau)

    @property
    def middle(self) -> tuple[str, ...]:
        seen = []
        for a in self.in_arrows:
            if a.source not in seen:
                seen.append(a.source)
        return tuple(seen)


@dataclass(frozen=True)
class Classification:
    closed: bool
    witnesses: tuple[int, ...] = ()

    def __str__(self):
        return "Closed" if self.closed else f"Open{list(self.witnesses)}"


class TranslationQuiver:
    """A finite quiver with a partial translation ``tau`` and arrow map ``sigma``.

    Construction only checks that every name resolves; the translation-quiver
    axioms are checked by :func:`validate_translation_quiver`.
    """

    def __init__(
        self,
        vertices: Iterable[str],
        arrows: Iterable[tuple[str, str, str]],
        tau: Mapping[str, str] | None = None,
        sigma: Mapping[str, str] | None = None,
    ):
        self.vertices: tuple[str, ...] = tuple(vertices)
        self._vindex = {}
        for i, v in enumerate(self.vertices):
            if v in self._vindex:
                raise MeshError(f"duplicate vertex {v!r}")
            self._vindex[v] = i
        arrow_list = []
        self._arrows: dict[str, Arrow] = {}
        for i, (name, src, dst) in enumerate(arrows):
            if name in self._arrows:
                raise MeshError(f"duplicate arrow {name!r}")
            for v in (src, dst):
                if v not in self._vindex:
                    raise UnknownName(f"arrow {name} uses unknown vertex {v!r}")
            a = Arrow(name, src, dst, i)
            self._arrows[name] = a
            arrow_list.append(a)
        self.arrows: tuple[Arrow, ...] = tuple(arrow_list)
        self.tau: dict[str, str] = dict(tau or {})
        for k, v in self.tau.items():
            for w in (k, v):
                if w not in self._vindex:
                    raise UnknownName(f"tau uses unknown vertex {w!r}")
        self.sigma: dict[str, str] = dict(sigma or {})
        for k, v in self.sigma.items():
            for b in (k, v):
                if b not in self._arrows:
                    raise UnknownName(f"sigma uses unknown arrow {b!r}")
        self._tau_inv: dict[str, str] = {}
        for k in sorted(self.tau, key=self._vindex.__getitem__):
            self._tau_inv.setdefault(self.tau[k], k)
        self._sigma_inv: dict[str, str] = {}
        for k in sorted(self.sigma, key=lambda n: self._arrows[n].index):
            self._sigma_inv.setdefault(self.sigma[k], k)
        self._out = {v: [] for v in self.vertices}
        self._in = {v: [] for v in self.vertices}
        for a in self.arrows:
            self._out[a.source].append(a)
            self._in[a.target].append(a)
        self._out = {v: tuple(x) for v, x in self._out.items()}
        self._in = {v: tuple(x) for v, x in self._in.items()}
        self._reach: dict[str, frozenset] = {}
        self._coreach: dict[str, frozenset] = {}
        self._path_cache: dict = {}

    # -- lookup -----------------------------------------------------------
    def arrow(self, name: str) -> Arrow:
        try:
            return self._arrows[name]
        except KeyError:
            raise UnknownName(f"unknown arrow {name!r}") from None

    def has_vertex(self, v: str) -> bool:
        return v in self._vindex

    def check_vertex(self, v: str) -> str:
        if v not in self._vindex:
            raise UnknownName(f"unknown vertex {v!r}")
        return v

    def vertex_index(self, v: str) -> int:
        return self._vindex[self.check_vertex(v)]

    def out_arrows(self, v: str) -> tuple[Arrow, ...]:
        return self._out[self.check_vertex(v)]

    def in_arrows(self, v: str) -> tuple[Arrow, ...]:
        return self._in[self.check_vertex(v)]

    def arrows_between(self, u: str, v: str) -> tuple[Arrow, ...]:
        return tuple(a for a in self.out_arrows(u) if a.target == v)

    def successors(self, v: str) -> list[str]:
        return _unique(a.target for a in self.out_arrows(v))

    def predecessors(self, v: str) -> list[str]:
        return _unique(a.source for a in self.in_arrows(v))

    # -- translation ------------------------------------------------------
    def is_projective(self, v: str) -> bool:
        return self.check_vertex(v) not in self.tau

    def is_injective(self, v: str) -> bool:
        return self.check_vertex(v) not in self._tau_inv

    def tau_of(self, v: str) -> str | None:
        return self.tau.get(self.check_vertex(v))

    def tau_inverse(self, v: str) -> str | None:
        return self._tau_inv.get(self.check_vertex(v))

    def sigma_of(self, a: Arrow) -> Arrow | None:
        name = self.sigma.get(a.name)
        return self._arrows[name] if name is not None else None

    def sigma_inverse(self, a: Arrow) -> Arrow | None:
        name = self._sigma_inv.get(a.name)
        return self._arrows[name] if name is not None else None

    @property
    def projectives(self) -> list[str]:
        return [v for v in self.vertices if v not in self.tau]

    @property
    def injectives(self) -> list[str]:
        return [v for v in self.vertices if v not in self._tau_inv]

    # -- paths ------------------------------------------------------------
    def path(self, source: str, names: Sequence[str] = ()) -> Path:
        self.check_vertex(source)
        return Path(source, [self.arrow(n) for n in names])

    def path_of(self, names: Sequence[str], source: str | None = None) -> Path:
        """Build a path from arrow names; ``source`` is only needed for the trivial path."""
        if not names:
            if source is None:
                raise InvalidPath("a trivial path needs an explicit source vertex")
            return self.path(source)
        first = self.arrow(names[0])
        if source is not None and source != first.source:
            raise InvalidPath(f"path starts with {first.name} at {first.source}, not {source}")
        return self.path(first.source, names)

    def reachable(self, v: str) -> frozenset:
        """All vertices w with a path v ~> w (including v)."""
        if v not in self._reach:
            self._reach[v] = frozenset(_bfs(self.check_vertex(v), lambda u: (a.target for a in self._out[u])))
        return self._reach[v]

    def coreachable(self, v: str) -> frozenset:
        """All vertices w with a path w ~> v (including v)."""
        if v not in self._coreach:
            self._coreach[v] = frozenset(_bfs(self.check_vertex(v), lambda u: (a.source for a in self._in[u])))
        return self._coreach[v]

    def has_path(self, u: str, v: str) -> bool:
        return v in self.reachable(u)

    def is_acyclic(self, region: Iterable[str] | None = None) -> bool:
        region = set(self.vertices if region is None else region)
        indeg = {v: 0 for v in region}
        for a in self.arrows:
            if a.source in region and a.target in region:
                indeg[a.target] += 1
        queue = deque(v for v, d in indeg.items() if d == 0)
        seen = 0
        while queue:
            u = queue.popleft()
            seen += 1
            for a in self._out[u]:
                if a.target in region:
                    indeg[a.target] -= 1
                    if indeg[a.target] == 0:
                        queue.append(a.target)
        return seen == len(region)

    def __repr__(self):
        return f"TranslationQuiver({len(self.vertices)} vertices, {len(self.arrows)} arrows, {len(self.tau)} tau pairs)"


def _unique(items):
    seen = []
    for x in items:
        if x not in seen:
            seen.append(x)
    return seen


def _bfs(start, step):
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in step(u):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def validate_translation_quiver(T: TranslationQuiver) -> ValidationReport:
    out = []
    for a in T.arrows:
        if a.source == a.target:
            out.append(Violation("loop", f"arrow {a.name} is a loop at {a.source}", a.name))
    images: dict[str, list[str]] = {}
    for k, v in T.tau.items():
        images.setdefault(v, []).append(k)
    for v, ks in images.items():
        if len(ks) > 1:
            out.append(Violation("tau_not_injective", f"tau maps {', '.join(ks)} to {v}", v))
    for name, image in T.sigma.items():
        a, b = T.arrow(name), T.arrow(image)
        if a.target not in T.tau:
            out.append(Violation("sigma_on_projective", f"sigma({name}) defined but {a.target} is projective", name))
            continue
        tx = T.tau[a.target]
        if (b.source, b.target) != (tx, a.source):
            out.append(
                Violation(
                    "sigma_endpoint_mismatch",
                    f"sigma({name}) = {image} runs {b.source}->{b.target}, expected {tx}->{a.source}",
                    name,
                )
            )
    for x in T.vertices:
        if x not in T.tau:
            continue
        ins = T.in_arrows(x)
        outs = T.out_arrows(T.tau[x])
        imgs = [T.sigma.get(a.name) for a in ins]
        if None in imgs or len(set(imgs)) != len(imgs) or set(imgs) != {b.name for b in outs}:
            out.append(Violation("sigma_not_bijective", f"sigma not bijective on mesh of {x}", x))
    return ValidationReport(tuple(out))


def neighbors(T: TranslationQuiver, z: str) -> Neighborhood:
    return Neighborhood(
        z,
        frozenset(T.predecessors(z)),
        frozenset(T.successors(z)),
        T.in_arrows(z),
        T.out_arrows(z),
    )


def enumerate_paths(T: TranslationQuiver, x: str, y: str, length: int | None = None) -> tuple[Path, ...]:
    """All paths x ~> y in lexicographic order of arrow indices.

    Without ``length`` the vertices lying on x ~> y walks must span an acyclic
    subquiver, otherwise :class:`CycleNeedsBound` is raised.
    """
    T.check_vertex(x)
    T.check_vertex(y)
    if length is not None and length < 0:
        raise ValueError("length must be non-negative")
    key = (x, y, length)
    if key in T._path_cache:
        return T._path_cache[key]
    alive = T.reachable(x) & T.coreachable(y)
    if length is None and not T.is_acyclic(alive):
        raise CycleNeedsBound(f"paths {x} ~> {y} pass through a cycle; give a length")
    found: list[Path] = []
    if x in alive:
        stack: list = []

        def walk(v, remaining):
            if v == y and (remaining is None or remaining == 0):
                found.append(Path(x, stack))
                if remaining is None:
                    return
            if remaining == 0:
                return
            for a in T.out_arrows(v):
                if a.target in alive:
                    stack.append(a)
                    walk(a.target, None if remaining is None else remaining - 1)
                    stack.pop()

        walk(x, length)
    result = tuple(found)
    T._path_cache[key] = result
    return result


def is_sectional(T: TranslationQuiver, p: Path) -> bool:
    vs = p.vertices
    return all(vs[i] != T.tau_of(vs[i + 2]) for i in range(len(vs) - 2))


def mesh_of(T: TranslationQuiver, x: str) -> MeshView:
    if T.is_projective(x):
        raise NoMesh(f"{x} is projective; no mesh ends there")
    ins = T.in_arrows(x)
    return MeshView(x, T.tau_of(x), ins, T.out_arrows(T.tau_of(x)), tuple((a, T.sigma_of(a)) for a in ins))


def branching(T: TranslationQuiver, v: str, counting: Counting = Counting.ARROWS) -> int:
    if counting is Counting.ARROWS:
        return len(T.out_arrows(v))
    return len(T.successors(v))


def classify_path(T: TranslationQuiver, p: Path, counting: Counting = Counting.ARROWS) -> Classification:
    vs = p.vertices
    bad = tuple(
        i
        for i in range(len(vs) - 2)
        if vs[i] == T.tau_of(vs[i + 2]) and branching(T, vs[i], counting) < 2
    )
    return Classification(not bad, bad)


def all_paths_closed(T: TranslationQuiver, x: str, y: str, counting: Counting = Counting.ARROWS) -> bool:
    return all(classify_path(T, p, counting).closed for p in enumerate_paths(T, x, y))


def generate_zq_window(Q: TranslationQuiver, depth: int) -> TranslationQuiver:
    """The window of the repetition quiver ZQ on layers 0..depth.

    Vertex ``v@i`` is (i, v). For an arrow ``a: u -> w`` of Q there are arrows
    ``a@i: u@i -> w@i`` and ``a'@i: w@i -> u@(i+1)``; tau(v@(i+1)) = v@i.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    if Q.tau:
        raise ValueError("expected a plain quiver (no translation)")
    if not Q.is_acyclic():
        raise CyclicQuiver("ZQ windows need an acyclic quiver Q")
    if not validate_translation_quiver(Q).ok:
        raise MeshError("Q has loops")

    def v_(v, i):
        return f"{v}@{i}"

    vertices = [v_(v, i) for i in range(depth + 1) for v in Q.vertices]
    arrows = []
    for i in range(depth + 1):
        for a in Q.arrows:
            arrows.append((f"{a.name}@{i}", v_(a.source, i), v_(a.target, i)))
        if i < depth:
            for a in Q.arrows:
                arrows.append((f"{a.name}'@{i}", v_(a.target, i), v_(a.source, i + 1)))
    tau = {v_(v, i + 1): v_(v, i) for i in range(depth) for v in Q.vertices}
    sigma = {}
    for i in range(depth):
        for a in Q.arrows:
            sigma[f"{a.name}@{i + 1}"] = f"{a.name}'@{i}"
            sigma[f"{a.name}'@{i}"] = f"{a.name}@{i}"
    return TranslationQuiver(vertices, arrows, tau, sigma)


def plain_quiver(vertices: Iterable[str], arrows: Iterable[tuple[str, str, str]]) -> TranslationQuiver:
    return TranslationQuiver(vertices, arrows)
