"""Lexicographic and mesh-lexicographic total orders on the paths x ~> y.

An order is stored as one arrow ranking per *prefix signature*: the vertex
sequence of a path prefix x ~> z. Two paths are compared at their first
differing arrow using the ranking of their common prefix. Keying rankings by
vertex sequence (rather than arrow sequence) makes parallel prefixes share a
ranking by construction.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import EndpointMismatch, InvalidOrder, LpOfZero, MeshLexUnavailable
from .quiver import Arrow, Path, TranslationQuiver, enumerate_paths

Signature = tuple  # tuple[str, ...]


def prefix_signatures(T: TranslationQuiver, x: str, y: str) -> dict[Signature, tuple[Arrow, ...]]:
    """Every prefix signature of a path x ~> y, mapped to its admissible arrows.

    The admissible arrows at a prefix ending in z are the arrows leaving z
    toward a predecessor of y (or y itself), in declaration order.
    """
    good = T.coreachable(y)
    sigs: dict[Signature, tuple[Arrow, ...]] = {}
    for p in enumerate_paths(T, x, y):
        vs = p.vertices
        for i in range(len(p)):
            sig = vs[: i + 1]
            if sig not in sigs:
                sigs[sig] = tuple(a for a in T.out_arrows(vs[i]) if a.target in good)
    return sigs


def _sig_key(T, sig):
    return (len(sig), tuple(T.vertex_index(v) for v in sig))


@dataclass(frozen=True)
class MeshLexViolation:
    signature: Signature
    alpha: Arrow
    beta: Arrow

    def __str__(self):
        return (
            f"at prefix ({','.join(self.signature)}): maximal arrow {self.alpha.name} forces "
            f"its sigma-inverse to be minimal at ({','.join(self.signature + (self.alpha.target,))}), "
            f"but {self.beta.name} ranks below it"
        )


class PathOrder:
    """A lexicographic total order on the paths ``source ~> target``.

    ``rankings`` maps each prefix signature to its admissible arrows listed
    from largest to smallest. Signatures with a single admissible arrow may be
    omitted; there is nothing to choose.
    """

    def __init__(self, T: TranslationQuiver, source: str, target: str, rankings: Mapping[Signature, Sequence]):
        self.quiver = T
        self.source = source
        self.target = target
        admissible = prefix_signatures(T, source, target)
        given = {tuple(sig): tuple(a if isinstance(a, Arrow) else T.arrow(a) for a in arrows) for sig, arrows in rankings.items()}
        extra = set(given) - set(admissible)
        if extra:
            raise InvalidOrder(f"signatures not on any path {source} ~> {target}: {sorted(extra)}")
        self._rankings: dict[Signature, tuple[Arrow, ...]] = {}
        for sig, allowed in admissible.items():
            ranked = given.get(sig)
            if ranked is None:
                if len(allowed) > 1:
                    raise InvalidOrder(f"no ranking given for prefix ({','.join(sig)})")
                ranked = allowed
            if len(ranked) != len(allowed) or set(ranked) != set(allowed):
                raise InvalidOrder(
                    f"ranking at ({','.join(sig)}) must list exactly {[a.name for a in allowed]}, got {[a.name for a in ranked]}"
                )
            self._rankings[sig] = ranked
        self._rank = {
            sig: {a.index: len(r) - 1 - i for i, a in enumerate(r)} for sig, r in self._rankings.items()
        }
        self._keys: dict[Path, tuple[int, ...]] = {}

    # -- queries ------------------------------------------------------------
    @property
    def signatures(self) -> list[Signature]:
        return sorted(self._rankings, key=lambda s: _sig_key(self.quiver, s))

    def ranking(self, signature: Iterable[str]) -> tuple[Arrow, ...]:
        """Admissible arrows at ``signature``, largest first."""
        return self._rankings[tuple(signature)]

    @property
    def base(self) -> tuple[Arrow, ...]:
        return self._rankings.get((self.source,), ())

    def sort_key(self, p: Path) -> tuple[int, ...]:
        """A tuple that sorts paths of this context in the order (larger key = larger path)."""
        k = self._keys.get(p)
        if k is None:
            if p.source != self.source or p.target != self.target:
                raise EndpointMismatch(f"path {p} is not a path {self.source} ~> {self.target}")
            vs = p.vertices
            try:
                k = tuple(self._rank[vs[: i + 1]][a.index] for i, a in enumerate(p.arrows))
            except KeyError:
                raise EndpointMismatch(f"path {p} leaves the context {self.source} ~> {self.target}") from None
            self._keys[p] = k
        return k

    def compare(self, p: Path, q: Path) -> int:
        kp, kq = self.sort_key(p), self.sort_key(q)
        return (kp > kq) - (kp < kq)

    def descending(self, paths: Iterable[Path]) -> list[Path]:
        return sorted(paths, key=self.sort_key, reverse=True)

    def paths(self) -> list[Path]:
        """All paths of the context, largest first."""
        return self.descending(enumerate_paths(self.quiver, self.source, self.target))

    def leading_path(self, v) -> Path:
        support = v.support()
        if not support:
            raise LpOfZero("the zero vector has no leading path")
        return max(support, key=self.sort_key)

    def suborder(self, successor: str) -> "PathOrder":
        """The induced order on paths ``successor ~> target`` (prefixing by an arrow source -> successor)."""
        rankings = {sig[1:]: r for sig, r in self._rankings.items() if len(sig) >= 2 and sig[1] == successor}
        return PathOrder(self.quiver, successor, self.target, rankings)

    def to_json(self) -> dict:
        return {
            "from": self.source,
            "to": self.target,
            "rankings": [
                {"signature": list(sig), "arrows": [a.name for a in self._rankings[sig]]} for sig in self.signatures
            ],
        }

    @classmethod
    def from_json(cls, T: TranslationQuiver, data: Mapping) -> "PathOrder":
        try:
            rankings = {tuple(r["signature"]): list(r["arrows"]) for r in data.get("rankings", [])}
            return cls(T, data["from"], data["to"], rankings)
        except (KeyError, TypeError) as exc:
            raise InvalidOrder(f"malformed order document: {exc}") from exc

    def __eq__(self, other):
        if not isinstance(other, PathOrder):
            return NotImplemented
        return (self.source, self.target, self._rankings) == (other.source, other.target, other._rankings)

    def __repr__(self):
        return f"PathOrder({self.source} ~> {self.target}, {len(self._rankings)} rankings)"


def compare_paths(order: PathOrder, p: Path, q: Path) -> int:
    """-1, 0 or 1 as p is less than, equal to or greater than q."""
    return order.compare(p, q)


def leading_path(v, order: PathOrder) -> Path:
    return order.leading_path(v)


def default_order(T: TranslationQuiver, x: str, y: str) -> PathOrder:
    """Plain lexicographic order: earlier-declared arrows rank higher at every prefix."""
    return PathOrder(T, x, y, prefix_signatures(T, x, y))


def check_mesh_lexicographic(order: PathOrder) -> list[MeshLexViolation]:
    """Violations of the mesh compatibility condition; an empty list means the order is mesh-lexicographic.

    At every prefix ending in z with tau^-1(z) a predecessor of the target, if
    alpha is the largest arrow there, sigma^-1(alpha) must be the smallest
    arrow at the prefix extended by alpha.
    """
    T = order.quiver
    good = T.coreachable(order.target)
    out = []
    for sig in order.signatures:
        z = sig[-1]
        w = T.tau_inverse(z)
        if w is None or w not in good:
            continue
        alpha = order.ranking(sig)[0]
        child = sig + (alpha.target,)
        if child not in order._rankings:
            continue
        s = T.sigma_inverse(alpha)
        ranked = order.ranking(child)
        if s is None or s not in ranked:
            continue
        for beta in ranked[ranked.index(s) + 1 :]:
            out.append(MeshLexViolation(sig, alpha, beta))
    return out


def build_mesh_lex_order(T: TranslationQuiver, x: str, y: str, base: Sequence | None = None) -> PathOrder:
    """Construct a mesh-lexicographic order restricting to ``base`` (largest first) at the trivial prefix.

    Each prefix gets the declaration-order ranking, except that whenever the
    parent's largest arrow alpha starts at a vertex z whose tau^-1 is a
    predecessor of y, sigma^-1(alpha) is moved to the bottom. The result is
    checked before it is returned.
    """
    sigs = prefix_signatures(T, x, y)
    rankings: dict[Signature, tuple[Arrow, ...]] = {}
    good = T.coreachable(y)
    for sig in sorted(sigs, key=lambda s: _sig_key(T, s)):
        allowed = sigs[sig]
        if len(sig) == 1:
            if base is None:
                ranked = allowed
            else:
                ranked = tuple(a if isinstance(a, Arrow) else T.arrow(a) for a in base)
                if len(ranked) != len(allowed) or set(ranked) != set(allowed):
                    raise InvalidOrder(f"base must rank exactly {[a.name for a in allowed]}")
        else:
            ranked = list(allowed)
            parent = sig[:-1]
            alpha = rankings[parent][0]
            w = T.tau_inverse(alpha.source)
            if alpha.target == sig[-1] and w is not None and w in good:
                s = T.sigma_inverse(alpha)
                if s in ranked:
                    ranked.remove(s)
                    ranked.append(s)
            ranked = tuple(ranked)
        rankings[sig] = ranked
    order = PathOrder(T, x, y, rankings)
    violations = check_mesh_lexicographic(order)
    if violations:
        raise MeshLexUnavailable("; ".join(str(v) for v in violations))
    return order
