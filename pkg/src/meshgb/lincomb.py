"""Finite linear combinations of parallel paths over an exact field."""
from __future__ import annotations

from typing import Iterable, Mapping

from .errors import EndpointMismatch
from .fields import QQ, Field
from .quiver import Path


class LinComb:
    """An element of the path space k[x ~> y]; zero coefficients are never stored."""

    __slots__ = ("source", "target", "field", "_terms")

    def __init__(self, source: str, target: str, terms: Mapping[Path, object] | Iterable = (), field: Field = QQ):
        self.source = source
        self.target = target
        self.field = field
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Path, object] = {}
        for p, c in items:
            if p.source != source or p.target != target:
                raise EndpointMismatch(f"path {p} is not a path {source} ~> {target}")
            c = field(c)
            acc[p] = acc[p] + c if p in acc else c
        self._terms = {p: c for p, c in acc.items() if c}

    @classmethod
    def zero(cls, source: str, target: str, field: Field = QQ) -> "LinComb":
        return cls(source, target, (), field)

    @classmethod
    def of_path(cls, p: Path, coeff=1, field: Field = QQ) -> "LinComb":
        return cls(p.source, p.target, [(p, coeff)], field)

    @classmethod
    def sum_of(cls, paths: Iterable[Path], source: str, target: str, field: Field = QQ) -> "LinComb":
        return cls(source, target, [(p, 1) for p in paths], field)

    # -- access -------------------------------------------------------------
    def coefficient(self, p: Path):
        return self._terms.get(p, self.field.zero)

    def support(self) -> list[Path]:
        return sorted(self._terms, key=lambda p: p.key)

    def items(self) -> list[tuple[Path, object]]:
        return [(p, self._terms[p]) for p in self.support()]

    def __contains__(self, p: Path) -> bool:
        return p in self._terms

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degrees(self) -> set[int]:
        return {len(p) for p in self._terms}

    # -- arithmetic -----------------------------------------------------------
    def _check(self, other: "LinComb"):
        if (self.source, self.target) != (other.source, other.target):
            raise EndpointMismatch(
                f"cannot add {self.source}~>{self.target} and {other.source}~>{other.target}"
            )
        if self.field != other.field:
            raise ValueError("linear combinations over different fields")

    def __add__(self, other: "LinComb") -> "LinComb":
        self._check(other)
        terms = dict(self._terms)
        for p, c in other._terms.items():
            terms[p] = terms[p] + c if p in terms else c
        return LinComb(self.source, self.target, terms, self.field)

    def __neg__(self) -> "LinComb":
        return LinComb(self.source, self.target, {p: -c for p, c in self._terms.items()}, self.field)

    def __sub__(self, other: "LinComb") -> "LinComb":
        return self + (-other)

    def scale(self, c) -> "LinComb":
        c = self.field(c)
        if not c:
            return LinComb.zero(self.source, self.target, self.field)
        return LinComb(self.source, self.target, {p: c * v for p, v in self._terms.items()}, self.field)

    def __rmul__(self, c) -> "LinComb":
        return self.scale(c)

    def after(self, f: "LinComb") -> "LinComb":
        """Composition ``self o f``: every path of ``f`` followed by every path of ``self``."""
        return concat(self, f)

    def __eq__(self, other):
        if not isinstance(other, LinComb):
            return NotImplemented
        return (self.source, self.target) == (other.source, other.target) and self._terms == other._terms

    def __hash__(self):
        return hash((self.source, self.target, frozenset(self._terms.items())))

    def format(self, label=str) -> str:
        if not self._terms:
            return "0"
        parts = []
        for p, c in self.items():
            if c == 1:
                parts.append(f"+ {label(p)}")
            elif c == -1:
                parts.append(f"- {label(p)}")
            else:
                s = self.field.format(c)
                if s.startswith("-"):
                    parts.append(f"- {s[1:]}*{label(p)}")
                else:
                    parts.append(f"+ {s}*{label(p)}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"LinComb({self.source}~>{self.target}: {self})"


def concat(g: LinComb | Path, f: LinComb | Path, field: Field | None = None) -> LinComb:
    """Bilinear composition ``g o f`` for ``f: x ~> y`` and ``g: y ~> z``. Paths are promoted."""
    if field is None:
        field = next((h.field for h in (g, f) if isinstance(h, LinComb)), QQ)
    if isinstance(g, Path):
        g = LinComb.of_path(g, field=field)
    if isinstance(f, Path):
        f = LinComb.of_path(f, field=field)
    if f.target != g.source:
        raise EndpointMismatch(f"cannot compose {f.source}~>{f.target} with {g.source}~>{g.target}")
    terms: dict[Path, object] = {}
    for p, a in f._terms.items():
        for q, b in g._terms.items():
            pq = p.then(q)
            terms[pq] = terms[pq] + a * b if pq in terms else a * b
    return LinComb(f.source, g.target, terms, field)


def combine(coefficients: Iterable, vectors: Iterable[LinComb], source: str, target: str, field: Field = QQ) -> LinComb:
    """The linear combination sum(c_i * v_i)."""
    total = LinComb.zero(source, target, field)
    for c, v in zip(coefficients, vectors):
        if c:
            total = total + v.scale(c)
    return total
