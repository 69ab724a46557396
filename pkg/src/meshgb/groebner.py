"""Simple reduction, reduction to a remainder, and Groebner-basis verification."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .errors import LpOfZero, NotReducible
from .lincomb import LinComb
from .order import PathOrder
from .quiver import Path
from .span import span_oracle

FIRST_MATCH = "first"
LARGEST_LP = "largest"
SEEDED = "random"
STRATEGIES = (FIRST_MATCH, LARGEST_LP, SEEDED)


@dataclass(frozen=True)
class ReductionStep:
    reducer: int  # index into the reducing family
    path: Path  # the eliminated leading path of the reducer
    multiplier: object  # r = f - multiplier * g


@dataclass
class ReductionTrace:
    start: LinComb
    steps: list[ReductionStep] = field(default_factory=list)
    remainder: LinComb | None = None

    def replay(self, G: Sequence[LinComb]) -> LinComb:
        f = self.start
        for s in self.steps:
            f = f - G[s.reducer].scale(s.multiplier)
        return f


def reduce_once(f: LinComb, g: LinComb, order: PathOrder) -> LinComb:
    """Kill the coefficient of lp(g) in f by subtracting a multiple of g."""
    if not g:
        raise LpOfZero("cannot reduce modulo the zero vector")
    lead = order.leading_path(g)
    a = f.coefficient(lead)
    if not a:
        raise NotReducible(f"{lead} (the leading path of the reducer) does not occur in f")
    return f - g.scale(a / g.coefficient(lead))


def reduce_full(
    f: LinComb,
    G: Sequence[LinComb],
    order: PathOrder,
    strategy: str = LARGEST_LP,
    seed: int | None = None,
) -> ReductionTrace:
    """Reduce ``f`` modulo ``G`` until no lp(g) occurs in it.

    ``strategy`` picks the reducer among the applicable ones: ``first`` takes
    the first in ``G``, ``largest`` the one with the largest leading path,
    ``random`` a uniformly random one (seeded).
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    leads = [order.leading_path(g) for g in G]
    rng = random.Random(seed)
    trace = ReductionTrace(f)
    while True:
        applicable = [i for i, lp in enumerate(leads) if lp in f]
        if not applicable:
            break
        if strategy == FIRST_MATCH:
            i = applicable[0]
        elif strategy == LARGEST_LP:
            i = max(applicable, key=lambda j: order.sort_key(leads[j]))
        else:
            i = rng.choice(applicable)
        g = G[i]
        m = f.coefficient(leads[i]) / g.coefficient(leads[i])
        f = f - g.scale(m)
        trace.steps.append(ReductionStep(i, leads[i], m))
    trace.remainder = f
    return trace


def is_reduced(f: LinComb, G: Sequence[LinComb], order: PathOrder) -> bool:
    return not any(order.leading_path(g) in f for g in G)


@dataclass(frozen=True)
class GroebnerVerdict:
    ok: bool
    witness: LinComb | None
    lp_set: frozenset
    span_lp_set: frozenset
    rank: int


def is_groebner(G: Sequence[LinComb], order: PathOrder) -> GroebnerVerdict:
    """Compare the leading paths of G with those of the echelonized span of G."""
    G = list(G)
    lps = frozenset(order.leading_path(g) for g in G)
    report = span_oracle(G, order=order)
    missing = [b for b in report.basis if order.leading_path(b) not in lps]
    witness = min(missing, key=lambda b: order.sort_key(order.leading_path(b))) if missing else None
    return GroebnerVerdict(not missing, witness, lps, report.leading_set, report.rank)
