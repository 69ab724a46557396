"""Path-level homotopy generated by mesh exchanges and parallel-arrow swaps.

Only moves between paths are used (no formal inverses), so the relation
computed here refines the homotopy of walks: a positive answer is sound, a
negative one is reported as "not shown".
"""
from __future__ import annotations

import enum
import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .errors import EndpointMismatch
from .quiver import Path, TranslationQuiver, enumerate_paths


class Homotopy(enum.Enum):
    HOMOTOPIC = "Homotopic"
    NOT_SHOWN = "NotShown"


@dataclass(frozen=True)
class HomotopyVerdict:
    status: Homotopy
    reason: str | None = None

    @property
    def homotopic(self) -> bool:
        return self.status is Homotopy.HOMOTOPIC


@dataclass(frozen=True)
class HomotopyPartition:
    source: str
    target: str
    length: int | None
    classes: tuple[tuple[Path, ...], ...]

    def class_of(self, p: Path) -> int:
        for i, c in enumerate(self.classes):
            if p in c:
                return i
        raise KeyError(p)

    def to_json(self) -> dict:
        return {
            "from": self.source,
            "to": self.target,
            "length": self.length,
            "classes": [[str(p) for p in c] for c in self.classes],
        }


def elementary_neighbors(T: TranslationQuiver, p: Path) -> set[Path]:
    """Paths one move away from ``p``: a mesh exchange or a parallel-arrow swap."""
    arrows = p.arrows
    out: set[Path] = set()
    for i in range(len(arrows) - 1):
        first, second = arrows[i], arrows[i + 1]
        end = second.target
        if T.is_projective(end) or T.sigma_of(second) != first:
            continue
        for other in T.in_arrows(end):
            if other == second:
                continue
            partner = T.sigma_of(other)
            if partner is None:
                continue
            out.add(Path(p.source, arrows[:i] + (partner, other) + arrows[i + 2 :]))
    for i, a in enumerate(arrows):
        for b in T.arrows_between(a.source, a.target):
            if b != a:
                out.add(Path(p.source, arrows[:i] + (b,) + arrows[i + 1 :]))
    out.discard(p)
    return out


def _component(T, start: Path) -> set[Path]:
    seen = {start}
    queue = deque([start])
    while queue:
        q = queue.popleft()
        for r in elementary_neighbors(T, q):
            if r not in seen:
                seen.add(r)
                queue.append(r)
    return seen


def homotopy_classes(
    T: TranslationQuiver, x: str, y: str, length: int | None = None, seed: int | None = None
) -> HomotopyPartition:
    """Connected components of the elementary-move graph on the paths x ~> y.

    ``seed`` shuffles the traversal; the returned partition is normalized and
    does not depend on it.
    """
    paths = list(enumerate_paths(T, x, y, length))
    if seed is not None:
        random.Random(seed).shuffle(paths)
    assigned: set[Path] = set()
    classes = []
    for p in paths:
        if p in assigned:
            continue
        comp = _component(T, p)
        assigned |= comp
        classes.append(tuple(sorted(comp, key=lambda q: q.key)))
    classes.sort(key=lambda c: c[0].key)
    return HomotopyPartition(x, y, length, tuple(classes))


def are_homotopic(T: TranslationQuiver, p: Path, q: Path) -> HomotopyVerdict:
    if (p.source, p.target) != (q.source, q.target):
        raise EndpointMismatch(f"{p} and {q} do not share endpoints")
    if len(p) != len(q):
        return HomotopyVerdict(Homotopy.NOT_SHOWN, "LENGTH_MISMATCH")
    if p == q or q in _component(T, p):
        return HomotopyVerdict(Homotopy.HOMOTOPIC)
    return HomotopyVerdict(Homotopy.NOT_SHOWN, "NO_MOVE_SEQUENCE")


def single_class(T: TranslationQuiver, paths: Iterable[Path]) -> bool:
    """True iff all given paths are pairwise homotopic under the restricted moves."""
    paths = list(paths)
    if not paths:
        return True
    comp = _component(T, paths[0])
    return all(p in comp for p in paths)
