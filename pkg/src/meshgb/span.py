"""Row reduction over the ordered path basis.

This is the independent oracle that every Groebner-basis claim is checked
against: it knows nothing about reduction strategies or mesh structure, it
just echelonizes a matrix whose columns are paths sorted by the given order.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .fields import QQ
from .lincomb import LinComb, combine
from .quiver import Path


@dataclass(frozen=True)
class SpanReport:
    rank: int
    leading: tuple[Path, ...]
    basis: tuple[LinComb, ...]
    member: bool | None = None
    coefficients: tuple | None = None

    @property
    def leading_set(self) -> frozenset:
        return frozenset(self.leading)


def _sort_key(order) -> Callable[[Path], object]:
    if order is None:
        return lambda p: p.key
    return order.sort_key


def span_oracle(vectors: Sequence[LinComb], probe: LinComb | None = None, order=None) -> SpanReport:
    """Echelonize ``vectors``; optionally decide whether ``probe`` lies in their span.

    ``leading`` lists the leading paths of the reduced echelon basis, largest
    first; this is exactly the set of leading paths of nonzero span members.
    When ``probe`` is a member, ``coefficients`` (aligned with ``vectors``)
    recombine to it exactly.
    """
    vectors = list(vectors)
    ref = vectors[0] if vectors else probe
    if ref is None:
        return SpanReport(0, (), ())
    field = ref.field
    source, target = ref.source, ref.target
    key = _sort_key(order)
    zero, one = field.zero, field.one

    pivots: dict[Path, tuple[dict, dict]] = {}

    def eliminate(row: dict, combo: dict, only_leading: bool):
        while row:
            if only_leading:
                lead = max(row, key=key)
                if lead not in pivots:
                    return
                targets = [lead]
            else:
                targets = [p for p in row if p in pivots]
                if not targets:
                    return
            for p in targets:
                c = row.get(p)
                if not c:
                    continue
                prow, pcombo = pivots[p]
                _axpy(row, -c, prow)
                _axpy(combo, -c, pcombo)

    for i, v in enumerate(vectors):
        row = dict(v._terms)
        combo = {i: one}
        eliminate(row, combo, only_leading=True)
        if not row:
            continue
        lead = max(row, key=key)
        inv = one / row[lead]
        row = {p: c * inv for p, c in row.items()}
        combo = {j: c * inv for j, c in combo.items()}
        pivots[lead] = (row, combo)

    # back-substitute to the reduced echelon form
    order_desc = sorted(pivots, key=key, reverse=True)
    for lead in reversed(order_desc):
        prow, pcombo = pivots[lead]
        for other in order_desc:
            if other == lead:
                continue
            orow, ocombo = pivots[other]
            c = orow.get(lead)
            if c:
                _axpy(orow, -c, prow)
                _axpy(ocombo, -c, pcombo)

    basis = tuple(LinComb(source, target, pivots[p][0], field) for p in order_desc)
    member = coefficients = None
    if probe is not None:
        row = dict(probe._terms)
        combo: dict = {}
        # combo tracks -(combination); the probe minus it leaves the residue
        eliminate(row, combo, only_leading=False)
        member = not row
        if member:
            coefficients = tuple(-combo.get(i, zero) for i in range(len(vectors)))
    return SpanReport(len(pivots), tuple(order_desc), basis, member, coefficients)


def _axpy(target: dict, c, source: dict):
    for p, v in source.items():
        w = target.get(p)
        w = c * v if w is None else w + c * v
        if w:
            target[p] = w
        else:
            target.pop(p, None)


def span_rank(vectors: Sequence[LinComb]) -> int:
    return span_oracle(vectors).rank


def verify_certificate(vectors: Sequence[LinComb], coefficients: Sequence, probe: LinComb) -> bool:
    """True iff sum(coefficients[i] * vectors[i]) == probe exactly."""
    field = probe.field if probe is not None else QQ
    return combine(coefficients, vectors, probe.source, probe.target, field) == probe
