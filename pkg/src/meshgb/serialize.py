"""JSON encodings of the library's values and reports.

All encoders return plain dicts and lists with deterministic ordering so that
``json.dumps`` output is byte-stable.
"""
from __future__ import annotations

from typing import Mapping

from .errors import EndpointMismatch, MeshError
from .fields import QQ, Field
from .groebner import GroebnerVerdict, ReductionTrace
from .lincomb import LinComb
from .quiver import Path, TranslationQuiver, ValidationReport


class MalformedDocument(MeshError):
    code = "MALFORMED_DOCUMENT"


def path_json(p: Path) -> dict:
    return {"from": p.source, "to": p.target, "arrows": list(p.names)}


def lincomb_json(v: LinComb) -> dict:
    return {
        "from": v.source,
        "to": v.target,
        "terms": [{"path": list(p.names), "coeff": v.field.format(c)} for p, c in v.items()],
    }


def lincomb_from_json(T: TranslationQuiver, data: Mapping, field: Field = QQ) -> LinComb:
    try:
        x, y = data["from"], data["to"]
        T.check_vertex(x)
        T.check_vertex(y)
        terms = []
        for t in data["terms"]:
            p = T.path(x, t["path"])
            if p.target != y:
                raise EndpointMismatch(f"term {p} ends at {p.target}, not {y}")
            terms.append((p, field.parse(str(t["coeff"]))))
    except (KeyError, TypeError) as exc:
        raise MalformedDocument(f"malformed linear combination: {exc}") from exc
    return LinComb(x, y, terms, field)


def report_json(report: ValidationReport) -> dict:
    return {
        "ok": report.ok,
        "violations": [{"kind": v.kind, "message": v.message, "subject": v.subject} for v in report],
    }


def relation_json(r) -> dict:
    return {
        "z": r.z,
        "gamma1": path_json(r.gamma1),
        "gamma2": path_json(r.gamma2),
        "label": r.label(),
        "value": lincomb_json(r.value),
    }


def trace_json(trace: ReductionTrace) -> dict:
    field = trace.start.field
    return {
        "start": lincomb_json(trace.start),
        "steps": [
            {"reducer": s.reducer, "path": list(s.path.names), "multiplier": field.format(s.multiplier)}
            for s in trace.steps
        ],
        "remainder": lincomb_json(trace.remainder),
    }


def coefficients_json(coefficients, field: Field) -> list | None:
    return None if coefficients is None else [field.format(c) for c in coefficients]


def _sorted_paths(paths, order) -> list:
    return [list(p.names) for p in order.descending(paths)]


def groebner_json(verdict: GroebnerVerdict, order) -> dict:
    return {
        "groebner": verdict.ok,
        "rank": verdict.rank,
        "witness": None if verdict.witness is None else lincomb_json(verdict.witness),
        "witness_lp": None if verdict.witness is None else list(order.leading_path(verdict.witness).names),
        "lp_set": _sorted_paths(verdict.lp_set, order),
        "span_lp_set": _sorted_paths(verdict.span_lp_set, order),
    }
