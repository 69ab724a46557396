"""Command-line interface: ``meshgb SUBCOMMAND FILE [options]``.

Results go to stdout (text, or JSON with ``--json``); diagnostics go to stderr.
Exit codes: 0 success, 1 a checked property failed, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Callable

from . import covering as cov
from .criteria import (
    THEOREM_VIOLATION,
    LayerSpec,
    check_main_hypothesis,
    find_mesh_witness,
    zero_test_composite,
)
from .dsl import DslError, format_quiver, load_quiver
from .errors import EndpointMismatch, HypothesisViolated, MeshError, MeshLexUnavailable, NotMeshLexicographic
from .fields import Field, field_from_spec
from .groebner import STRATEGIES, is_groebner, reduce_full
from .homotopy import are_homotopic, homotopy_classes
from .lincomb import LinComb
from .order import PathOrder, build_mesh_lex_order, check_mesh_lexicographic, default_order
from .quiver import (
    Counting,
    Path,
    TranslationQuiver,
    classify_path,
    enumerate_paths,
    generate_zq_window,
    is_sectional,
    mesh_of,
)
from .relations import bimesh_Sc, build_S, enumerate_mesh_canonical, normal_form, quotient_dim, values
from .serialize import (
    coefficients_json,
    groebner_json,
    lincomb_from_json,
    lincomb_json,
    path_json,
    relation_json,
    report_json,
    trace_json,
)

OK, FAILED, BAD_INPUT = 0, 1, 2
_CHECK_FAILURES = (HypothesisViolated, NotMeshLexicographic, MeshLexUnavailable)


class InputError(Exception):
    pass


@dataclass
class Outcome:
    code: int
    payload: object
    text: str


@dataclass
class Context:
    args: argparse.Namespace
    field: Field
    counting: Counting
    notes: list

    def note(self, message: str):
        self.notes.append(message)


# -- input helpers -----------------------------------------------------------


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _read_json(path: str):
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON ({exc.msg})") from exc


def _load(path: str, require_valid: bool = True) -> tuple[TranslationQuiver, object]:
    try:
        T, report = load_quiver(_read(path))
    except DslError as exc:
        raise InputError("\n".join(f"{path}:{d}" for d in exc.diagnostics)) from exc
    if require_valid and not report.ok:
        lines = [f"{path}: not a translation quiver"] + [f"  {v.kind}: {v.message}" for v in report]
        raise InputError("\n".join(lines))
    return T, report


def _path(T: TranslationQuiver, text: str, start: str | None = None) -> Path:
    names = [n for n in text.split(".") if n] if text not in ("", "1") else []
    return T.path_of(names, start)


def _order(T, x, y, ctx: Context) -> PathOrder:
    if ctx.args.order:
        order = PathOrder.from_json(T, _read_json(ctx.args.order))
        if (order.source, order.target) != (x, y):
            raise EndpointMismatch(f"order file is for {order.source} ~> {order.target}, not {x} ~> {y}")
        return order
    try:
        return build_mesh_lex_order(T, x, y)
    except MeshError as exc:
        ctx.note(f"note: no mesh-lexicographic order ({exc}); using declaration order")
        return default_order(T, x, y)


def _vector(T, args, ctx: Context) -> LinComb:
    if args.vector:
        return lincomb_from_json(T, _read_json(args.vector), ctx.field)
    if args.path is not None:
        return LinComb.of_path(_path(T, args.path, args.start), 1, ctx.field)
    raise InputError("give --vector FILE or --path P")


def _endpoints(args) -> tuple[str, str]:
    if not args.source or not args.target:
        raise InputError("this command needs --from and --to")
    return args.source, args.target


def _labels(rels) -> dict:
    return {r: i + 1 for i, r in enumerate(rels)}


# -- commands ----------------------------------------------------------------


def cmd_validate(args, ctx):
    T, report = _load(args.quiver, require_valid=False)
    payload = {
        **report_json(report),
        "vertices": len(T.vertices),
        "arrows": len(T.arrows),
        "projective": T.projectives,
        "injective": T.injectives,
    }
    lines = [f"{len(T.vertices)} vertices, {len(T.arrows)} arrows"]
    lines += [f"{v.kind}: {v.message}" for v in report] or ["valid translation quiver"]
    return Outcome(OK if report.ok else FAILED, payload, "\n".join(lines))


def cmd_paths(args, ctx):
    T, _ = _load(args.quiver)
    x, y = _endpoints(args)
    paths = list(enumerate_paths(T, x, y, args.length))
    if args.order:
        paths = _order(T, x, y, ctx).descending(paths)
    payload = {"from": x, "to": y, "length": args.length, "count": len(paths), "paths": [path_json(p) for p in paths]}
    return Outcome(OK, payload, "\n".join(str(p) for p in paths))


def cmd_sectional(args, ctx):
    T, _ = _load(args.quiver)
    p = _path(T, args.path, args.start)
    ok = is_sectional(T, p)
    return Outcome(OK if ok else FAILED, {"path": path_json(p), "sectional": ok}, "sectional" if ok else "not sectional")


def _classification_json(T, p, counting):
    c = classify_path(T, p, counting)
    return {"path": path_json(p), "closed": c.closed, "witnesses": list(c.witnesses)}, f"{p}: {c}"


def cmd_classify(args, ctx):
    T, _ = _load(args.quiver)
    if args.path is not None:
        paths = [_path(T, args.path, args.start)]
    else:
        paths = list(enumerate_paths(T, *_endpoints(args), args.length))
    items = [_classification_json(T, p, ctx.counting) for p in paths]
    payload = {"counting": ctx.counting.value, "paths": [i[0] for i in items]}
    return Outcome(OK, payload, "\n".join(i[1] for i in items))


def cmd_mesh(args, ctx):
    T, _ = _load(args.quiver)
    m = mesh_of(T, args.vertex)
    payload = {
        "vertex": m.vertex,
        "tau": m.tau,
        "middle": list(m.middle),
        "pairs": [{"in": a.name, "out": b.name} for a, b in m.pairs],
    }
    lines = [f"mesh {m.tau} -> [{', '.join(m.middle)}] -> {m.vertex}"]
    lines += [f"  sigma({a.name}) = {b.name}" for a, b in m.pairs]
    return Outcome(OK, payload, "\n".join(lines))


def cmd_homotopy(args, ctx):
    T, _ = _load(args.quiver)
    if args.path:
        if len(args.path) != 2:
            raise InputError("give exactly two --path options to compare paths")
        p, q = (_path(T, s) for s in args.path)
        v = are_homotopic(T, p, q)
        payload = {"p": path_json(p), "q": path_json(q), "status": v.status.value, "reason": v.reason}
        return Outcome(OK, payload, v.status.value + (f" ({v.reason})" if v.reason else ""))
    x, y = _endpoints(args)
    part = homotopy_classes(T, x, y, args.length, args.seed)
    lines = [f"class {i + 1} ({len(c)}): " + ", ".join(str(p) for p in c) for i, c in enumerate(part.classes)]
    return Outcome(OK, part.to_json(), "\n".join(lines) or "no paths")


def cmd_relations(args, ctx):
    T, _ = _load(args.quiver)
    x, y = _endpoints(args)
    rels = enumerate_mesh_canonical(T, x, y, args.length, ctx.field)
    order = _order(T, x, y, ctx) if args.order else None
    items, lines = [], []
    for i, r in enumerate(rels, start=1):
        item = relation_json(r)
        text = f"r{i}: {r.label()} = {r.value}"
        if order is not None:
            lp = order.leading_path(r.value)
            item["lp"] = list(lp.names)
            text += f"   [lp {lp}]"
        items.append(item)
        lines.append(text)
    return Outcome(OK, {"from": x, "to": y, "count": len(rels), "relations": items}, "\n".join(lines))


def cmd_order_build(args, ctx):
    T, _ = _load(args.quiver)
    x, y = _endpoints(args)
    base = [n for n in args.base.split(",") if n] if args.base else None
    order = build_mesh_lex_order(T, x, y, base)
    lines = [f"({','.join(s)}): " + " > ".join(a.name for a in order.ranking(s)) for s in order.signatures]
    lines += [f"{i + 1}. {p}" for i, p in enumerate(order.paths())]
    return Outcome(OK, order.to_json(), "\n".join(lines))


def cmd_order_check(args, ctx):
    T, _ = _load(args.quiver)
    if not args.order:
        raise InputError("order-check needs --order FILE")
    order = PathOrder.from_json(T, _read_json(args.order))
    bad = check_mesh_lexicographic(order)
    payload = {
        "mesh_lexicographic": not bad,
        "violations": [
            {"signature": list(v.signature), "alpha": v.alpha.name, "beta": v.beta.name, "message": str(v)}
            for v in bad
        ],
        "paths": [list(p.names) for p in order.paths()],
    }
    text = "\n".join(str(v) for v in bad) or "mesh-lexicographic"
    return Outcome(FAILED if bad else OK, payload, text)


def _reduction_context(T, args, ctx):
    v = _vector(T, args, ctx)
    x, y = args.source or v.source, args.target or v.target
    if (x, y) != (v.source, v.target):
        raise EndpointMismatch(f"vector runs {v.source} ~> {v.target}, not {x} ~> {y}")
    return v, x, y


def cmd_reduce(args, ctx):
    T, _ = _load(args.quiver)
    v, x, y = _reduction_context(T, args, ctx)
    order = _order(T, x, y, ctx)
    rels = values(enumerate_mesh_canonical(T, x, y, args.length, ctx.field))
    trace = reduce_full(v, rels, order, args.strategy, args.seed)
    payload = {"remainder": lincomb_json(trace.remainder), "steps": len(trace.steps), "reduced_to_zero": trace.remainder.is_zero()}
    lines = [f"remainder: {trace.remainder}"]
    if args.trace:
        payload["trace"] = trace_json(trace)
        lines += [f"  step {i + 1}: subtract {ctx.field.format(s.multiplier)} * r{s.reducer + 1} (kills {s.path})" for i, s in enumerate(trace.steps)]
    return Outcome(OK, payload, "\n".join(lines))


def cmd_groebner_check(args, ctx):
    T, _ = _load(args.quiver)
    x, y = _endpoints(args)
    order = _order(T, x, y, ctx)
    rels = values(enumerate_mesh_canonical(T, x, y, args.length, ctx.field))
    if not rels:
        payload = {"groebner": True, "rank": 0, "witness": None, "witness_lp": None, "lp_set": [], "span_lp_set": []}
        return Outcome(OK, payload, "Groebner basis (no relations)")
    verdict = is_groebner(rels, order)
    payload = groebner_json(verdict, order)
    if verdict.ok:
        text = f"Groebner basis (rank {verdict.rank})"
    else:
        text = f"not a Groebner basis: {verdict.witness} has leading path {order.leading_path(verdict.witness)}"
    return Outcome(OK if verdict.ok else FAILED, payload, text)


def cmd_bimesh(args, ctx):
    T, _ = _load(args.quiver)
    x, y = _endpoints(args)
    order = _order(T, x, y, ctx)
    rels = enumerate_mesh_canonical(T, x, y, field=ctx.field)
    res = bimesh_Sc(T, x, y, order, rels, ctx.field)
    num = _labels(rels)

    def refs(rs):
        return [num[r] for r in rs]

    decomp = []
    for r, combo in res.decompositions.items():
        decomp.append(
            {
                "relation": num[r],
                "combination": None
                if combo is None
                else [{"relation": num[s], "coeff": ctx.field.format(c)} for s, c in combo],
            }
        )
    payload = {
        "alpha1": None if res.alpha1 is None else res.alpha1.name,
        "relations": [relation_json(r) for r in rels],
        "mesh_derived": refs(res.mesh_derived),
        "sc": refs(res.sc),
        "comesh_derived": refs(res.comesh_derived),
        "decompositions": decomp,
    }
    lines = [f"r{i}: {r.label()} = {r.value}" for r, i in num.items()]
    lines.append("mesh-derived: " + " ".join(f"r{i}" for i in refs(res.mesh_derived)))
    lines.append("comesh-derived: " + " ".join(f"r{i}" for i in refs(res.comesh_derived)))
    lines.append("Sc: " + " ".join(f"r{i}" for i in refs(res.sc)))
    for d in decomp:
        if d["combination"] is None:
            lines.append(f"r{d['relation']} = (no decomposition)")
        else:
            lines.append(f"r{d['relation']} = " + " + ".join(f"({c['coeff']}) r{c['relation']}" for c in d["combination"]))
    return Outcome(OK, payload, "\n".join(lines))


def cmd_build_s(args, ctx):
    T, _ = _load(args.quiver)
    x, y = _endpoints(args)
    order = _order(T, x, y, ctx)
    res = build_S(T, x, y, order, ctx.counting, ctx.field)
    num = _labels(res.relations)
    certs = []
    for r, combo in res.certificates.items():
        certs.append(
            {
                "relation": num[r],
                "combination": None
                if combo is None
                else [{"relation": num[s], "coeff": ctx.field.format(c)} for s, c in combo],
            }
        )
    ok = res.distinct_leading_paths and all(c["combination"] is not None for c in certs)
    payload = {
        "relations": [relation_json(r) for r in res.relations],
        "S": [num[s] for s in res.S],
        "leading_paths": [list(p.names) for p in res.leading_paths],
        "distinct_leading_paths": res.distinct_leading_paths,
        "certificates": certs,
    }
    lines = [f"r{num[s]}: {s.label()}   [lp {p}]" for s, p in zip(res.S, res.leading_paths)]
    lines.append(f"{len(res.S)} of {len(res.relations)} relations; leading paths distinct: {res.distinct_leading_paths}")
    return Outcome(OK if ok else FAILED, payload, "\n".join(lines))


def cmd_normal_form(args, ctx):
    T, _ = _load(args.quiver)
    v, x, y = _reduction_context(T, args, ctx)
    order = _order(T, x, y, ctx)
    nf = normal_form(T, v, order, args.length, args.strategy, args.seed)
    payload = {
        "representative": lincomb_json(nf.representative),
        "quotient_dim": nf.quotient_dim,
        "zero_by_reduction": nf.zero_by_reduction,
        "zero_in_quotient": nf.zero_in_quotient,
        "groebner": nf.groebner,
        "certificate": coefficients_json(nf.certificate, ctx.field),
    }
    lines = [
        f"normal form: {nf.representative}",
        f"zero in quotient: {nf.zero_in_quotient}",
        f"quotient dimension: {nf.quotient_dim}",
    ]
    if not nf.groebner:
        lines.append("warning: relations are not a Groebner basis here; the representative is not canonical")
    if args.trace:
        payload["trace"] = trace_json(nf.trace)
    return Outcome(OK, payload, "\n".join(lines))


def cmd_quotient_dim(args, ctx):
    T, _ = _load(args.quiver)
    x, y = _endpoints(args)
    d = quotient_dim(T, x, y, args.length, ctx.field)
    return Outcome(OK, {"from": x, "to": y, "length": args.length, "dimension": d}, str(d))


def cmd_zero_test(args, ctx):
    T, _ = _load(args.quiver)
    if not args.layers:
        raise InputError("zero-test needs --layers FILE")
    spec = LayerSpec.from_json(_read_json(args.layers), ctx.field)
    order = None
    if args.order:
        order = _order(T, spec.vertices[0], spec.vertices[-1], ctx)
    rep = zero_test_composite(T, spec, order, ctx.field, ctx.counting)
    payload = {
        "product": lincomb_json(rep.product),
        "remainder": None if rep.remainder is None else lincomb_json(rep.remainder),
        "zero_in_quotient": rep.zero_in_quotient,
        "zero_by_reduction": rep.zero_by_reduction,
        "groebner": rep.groebner,
        "verdicts_agree": rep.verdicts_agree,
        "hypotheses": rep.hypotheses,
        "status": rep.status,
        "certificate": coefficients_json(rep.certificate, ctx.field),
    }
    lines = [
        f"product: {rep.product}",
        f"zero in quotient: {rep.zero_in_quotient}",
        f"status: {rep.status}",
    ]
    failed = rep.status == THEOREM_VIOLATION or rep.verdicts_agree is False
    return Outcome(FAILED if failed else OK, payload, "\n".join(lines))


def cmd_main_hypothesis(args, ctx):
    T, _ = _load(args.quiver)
    x, y = _endpoints(args)
    rep = check_main_hypothesis(T, x, y, ctx.counting)
    payload = {"ok": rep.ok, "counting": ctx.counting.value, "violations": list(rep.violations)}
    text = "hypothesis holds" if rep.ok else "thin meshes at: " + ", ".join(rep.violations)
    return Outcome(OK if rep.ok else FAILED, payload, text)


def cmd_witness(args, ctx):
    T, _ = _load(args.quiver)
    p = _path(T, args.path, args.start)
    w = find_mesh_witness(T, p, ctx.counting)
    if w is None:
        return Outcome(OK, {"found": False, "witness": None}, "no thin mesh between the endpoints")
    payload = {
        "found": True,
        "witness": {
            "z": w.z,
            "gamma1": path_json(w.gamma1),
            "middle": w.middle,
            "gamma2": path_json(w.gamma2),
            "path": path_json(w.path),
            "status": w.status.value,
        },
    }
    text = f"Z = {w.z} via {w.path} (middle term {w.middle}): {w.status.value}"
    return Outcome(OK, payload, text)


def _covering(path: str) -> cov.CoveringMap:
    data = _read_json(path)
    base = os.path.dirname(os.path.abspath(path))
    try:
        src = _load(os.path.join(base, data["source"]))[0]
        dst = _load(os.path.join(base, data["target"]))[0]
        return cov.CoveringMap(src, dst, dict(data["vertex_map"]), dict(data["arrow_map"]))
    except (KeyError, TypeError) as exc:
        raise InputError(f"{path}: malformed covering document ({exc})") from exc


def cmd_cover_check(args, ctx):
    c = _covering(args.quiver)
    report = cov.validate_covering(c)
    text = "\n".join(f"{v.kind}: {v.message}" for v in report) or "covering"
    return Outcome(OK if report.ok else FAILED, report_json(report), text)


def cmd_lift(args, ctx):
    c = _covering(args.quiver)
    if args.path is None or not args.start:
        raise InputError("lift needs --path P and --start V")
    p = _path(c.target, args.path, c.vertex_map.get(args.start))
    q = cov.lift_path(c, p, args.start)
    before, after = classify_path(c.target, p, ctx.counting), classify_path(c.source, q, ctx.counting)
    payload = {"path": path_json(p), "lift": path_json(q), "closed_below": before.closed, "closed_above": after.closed}
    return Outcome(OK, payload, f"{q} (over {p}); {after}")


def cmd_gen_zq(args, ctx):
    Q, _ = _load(args.quiver)
    if args.depth is None:
        raise InputError("gen-zq needs --depth D")
    T = generate_zq_window(Q, args.depth)
    payload = {
        "vertices": list(T.vertices),
        "arrows": [{"name": a.name, "source": a.source, "target": a.target} for a in T.arrows],
        "tau": [[v, T.tau[v]] for v in T.vertices if v in T.tau],
        "sigma": [[a.name, T.sigma[a.name]] for a in T.arrows if a.name in T.sigma],
    }
    return Outcome(OK, payload, format_quiver(T).rstrip("\n"))


COMMANDS: dict[str, tuple[Callable, str]] = {
    "validate": (cmd_validate, "parse and validate a quiver file"),
    "paths": (cmd_paths, "list the paths between two vertices"),
    "sectional": (cmd_sectional, "test whether a path is sectional"),
    "classify": (cmd_classify, "classify paths as closed or open"),
    "mesh": (cmd_mesh, "show the mesh ending at a vertex"),
    "homotopy": (cmd_homotopy, "homotopy classes, or compare two paths"),
    "relations": (cmd_relations, "list mesh-canonical relations"),
    "order-build": (cmd_order_build, "build a mesh-lexicographic order"),
    "order-check": (cmd_order_check, "check an order file for the mesh-lexicographic property"),
    "reduce": (cmd_reduce, "reduce a vector modulo the relations"),
    "groebner-check": (cmd_groebner_check, "decide whether the relations form a Groebner basis"),
    "bimesh": (cmd_bimesh, "split the relations at the source and decompose them"),
    "build-s": (cmd_build_s, "build a spanning subset with distinct leading paths"),
    "normal-form": (cmd_normal_form, "normal form and zero test in the mesh category"),
    "quotient-dim": (cmd_quotient_dim, "dimension of a hom-space of the mesh category"),
    "zero-test": (cmd_zero_test, "test a composite of layered maps for vanishing"),
    "main-hypothesis": (cmd_main_hypothesis, "look for meshes with a single middle term"),
    "witness": (cmd_witness, "find a path through a thin mesh homotopic to a path"),
    "cover-check": (cmd_cover_check, "validate a covering (takes a covering JSON file)"),
    "lift": (cmd_lift, "lift a path along a covering (takes a covering JSON file)"),
    "gen-zq": (cmd_gen_zq, "generate a ZQ window from a plain quiver"),
}


def _global_options(parser: argparse.ArgumentParser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--field", default=d("Q"), help="coefficient field: Q or Fp:<prime>")
    parser.add_argument("--order", default=d(None), metavar="FILE", help="order file overriding the builder")
    parser.add_argument("--counting", choices=["arrows", "vertices"], default=d("arrows"))
    parser.add_argument("--json", action="store_true", default=d(False), help="emit JSON")
    parser.add_argument("--trace", action="store_true", default=d(False), help="include reduction traces")
    parser.add_argument("--seed", type=int, default=d(None))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="meshgb", description="Mesh relations and Groebner bases on translation quivers.")
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        _global_options(p, suppress=True)
        p.add_argument("quiver", metavar="FILE")
        p.add_argument("--from", dest="source")
        p.add_argument("--to", dest="target")
        p.add_argument("--length", type=int)
        p.add_argument("--path", action="append" if name == "homotopy" else "store")
        p.add_argument("--start", help="source vertex (needed for trivial paths and lifts)")
        p.add_argument("--vertex")
        p.add_argument("--vector", metavar="FILE")
        p.add_argument("--base", help="comma-separated arrows out of the source, largest first")
        p.add_argument("--strategy", choices=STRATEGIES, default="largest")
        p.add_argument("--layers", metavar="FILE")
        p.add_argument("--depth", type=int)
    return parser


def run_command(argv, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    ctx = Context(args, None, Counting.VERTICES if args.counting == "vertices" else Counting.ARROWS, [])
    handler = COMMANDS[args.command][0]
    try:
        ctx.field = field_from_spec(args.field)
        out = handler(args, ctx)
    except InputError as exc:
        print(f"error: {exc}", file=stderr)
        return BAD_INPUT
    except _CHECK_FAILURES as exc:
        print(f"check failed: {exc}", file=stderr)
        return FAILED
    except (MeshError, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return BAD_INPUT
    for n in ctx.notes:
        print(n, file=stderr)
    if args.json:
        stdout.write(json.dumps(out.payload, indent=2, ensure_ascii=False) + "\n")
    else:
        stdout.write(out.text + "\n")
    return out.code


def main(argv=None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
