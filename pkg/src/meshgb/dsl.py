"""A small line-oriented language for translation quivers.

::

    # comment
    vertices x a b y ;
    arrow alpha : x -> a ;
    tau y -> x ;              # tau(y) = x
    sigma delta -> gamma ;    # sigma(delta) = gamma
    projective x a ;          # optional; cross-checked against tau
    injective a y ;           # optional; cross-checked against tau

Statements end with ``;`` and may span lines.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import MeshError
from .quiver import TranslationQuiver, ValidationReport, Violation, validate_translation_quiver

_TOKEN = re.compile(r"\s*(?:(->)|([:;])|([A-Za-z0-9_][A-Za-z0-9_'@^]*)|(\S))")
KEYWORDS = ("vertices", "arrow", "tau", "sigma", "projective", "injective")


@dataclass(frozen=True)
class Diagnostic:
    line: int
    column: int
    message: str
    hint: str = ""

    def __str__(self):
        text = f"{self.line}:{self.column}: {self.message}"
        return f"{text} (hint: {self.hint})" if self.hint else text


class DslError(MeshError):
    code = "PARSE_ERROR"

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = diagnostics
        super().__init__("\n".join(str(d) for d in diagnostics))


@dataclass
class QuiverDocument:
    vertices: list[str] = field(default_factory=list)
    arrows: list[tuple[str, str, str]] = field(default_factory=list)
    tau: dict[str, str] = field(default_factory=dict)
    sigma: dict[str, str] = field(default_factory=dict)
    declared_projective: list[str] | None = None
    declared_injective: list[str] | None = None
    spans: dict[str, tuple[int, int]] = field(default_factory=dict)

    def to_quiver(self) -> TranslationQuiver:
        return TranslationQuiver(self.vertices, self.arrows, self.tau, self.sigma)


@dataclass(frozen=True)
class _Tok:
    kind: str  # "arrow", "punct", "name", "bad"
    text: str
    line: int
    col: int


def _tokenize(text: str, diags: list[Diagnostic]) -> list[_Tok]:
    toks = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        pos = 0
        while pos < len(line):
            m = _TOKEN.match(line, pos)
            if m is None or m.end() == pos:
                break
            col = m.start(m.lastindex) + 1
            kind = ("arrow", "punct", "name", "bad")[m.lastindex - 1]
            if kind == "bad":
                diags.append(Diagnostic(lineno, col, f"unexpected character {m.group(4)!r}", "names use letters, digits, _ ' @ ^"))
            else:
                toks.append(_Tok(kind, m.group(m.lastindex), lineno, col))
            pos = m.end()
    return toks


def _statements(toks: list[_Tok], diags: list[Diagnostic]):
    current: list[_Tok] = []
    for t in toks:
        if t.text == ";" and t.kind == "punct":
            if current:
                yield current
            current = []
        else:
            current.append(t)
    if current:
        last = current[-1]
        diags.append(Diagnostic(last.line, last.col + len(last.text), "missing ';' at end of statement", "terminate every statement with ';'"))


def parse_quiver(text: str) -> QuiverDocument:
    """Parse DSL text into a document; syntax and name errors raise :class:`DslError`."""
    diags: list[Diagnostic] = []
    doc = QuiverDocument()
    pending: list[tuple[str, _Tok, str]] = []  # (namespace, token, context) to resolve later
    toks = _tokenize(text, diags)
    for st in _statements(toks, diags):
        head, rest = st[0], st[1:]
        kw = head.text
        if head.kind != "name" or kw not in KEYWORDS:
            diags.append(Diagnostic(head.line, head.col, f"unknown statement {kw!r}", f"statements start with one of {', '.join(KEYWORDS)}"))
            continue
        if kw == "vertices":
            for t in rest:
                if t.kind != "name":
                    diags.append(Diagnostic(t.line, t.col, f"expected a vertex name, got {t.text!r}", "list names separated by spaces"))
                elif t.text in doc.spans and t.text in doc.vertices:
                    diags.append(Diagnostic(t.line, t.col, f"duplicate vertex {t.text!r}", "declare each vertex once"))
                else:
                    doc.vertices.append(t.text)
                    doc.spans.setdefault(t.text, (t.line, t.col))
        elif kw == "arrow":
            shape = [t.kind if t.kind != "punct" else t.text for t in rest]
            if shape != ["name", ":", "name", "arrow", "name"]:
                diags.append(Diagnostic(head.line, head.col, "malformed arrow statement", "write: arrow NAME : SOURCE -> TARGET ;"))
                continue
            name, src, dst = rest[0], rest[2], rest[4]
            if any(a[0] == name.text for a in doc.arrows):
                diags.append(Diagnostic(name.line, name.col, f"duplicate arrow {name.text!r}", "arrow names must be unique"))
                continue
            doc.arrows.append((name.text, src.text, dst.text))
            doc.spans.setdefault(name.text, (name.line, name.col))
            pending += [("vertex", src, f"arrow {name.text}"), ("vertex", dst, f"arrow {name.text}")]
        elif kw in ("tau", "sigma"):
            shape = [t.kind for t in rest]
            if shape != ["name", "arrow", "name"]:
                what = "V1 -> V2" if kw == "tau" else "A1 -> A2"
                diags.append(Diagnostic(head.line, head.col, f"malformed {kw} statement", f"write: {kw} {what} ;"))
                continue
            a, b = rest[0], rest[2]
            table = doc.tau if kw == "tau" else doc.sigma
            if a.text in table:
                diags.append(Diagnostic(a.line, a.col, f"{kw} of {a.text!r} given twice", f"{kw} is a function; give one image"))
                continue
            table[a.text] = b.text
            ns = "vertex" if kw == "tau" else "arrow"
            pending += [(ns, a, kw), (ns, b, kw)]
        else:
            names = []
            for t in rest:
                if t.kind != "name":
                    diags.append(Diagnostic(t.line, t.col, f"expected a vertex name, got {t.text!r}", "list names separated by spaces"))
                else:
                    names.append(t.text)
                    pending.append(("vertex", t, kw))
            target = "declared_projective" if kw == "projective" else "declared_injective"
            setattr(doc, target, (getattr(doc, target) or []) + names)
    vertex_set = set(doc.vertices)
    arrow_set = {a[0] for a in doc.arrows}
    for ns, t, ctx in pending:
        known = vertex_set if ns == "vertex" else arrow_set
        if t.text not in known:
            hint = "add it to a 'vertices' statement" if ns == "vertex" else "declare it with an 'arrow' statement"
            diags.append(Diagnostic(t.line, t.col, f"unresolved {ns} {t.text!r} in {ctx}", hint))
    if diags:
        raise DslError(sorted(diags, key=lambda d: (d.line, d.column)))
    return doc


def check_declarations(doc: QuiverDocument, T: TranslationQuiver) -> list[Violation]:
    out = []
    for label, declared, derived in (
        ("projective", doc.declared_projective, T.projectives),
        ("injective", doc.declared_injective, T.injectives),
    ):
        if declared is None:
            continue
        for v in sorted(set(declared) ^ set(derived), key=T.vertex_index):
            actual = v in derived
            out.append(Violation("declared_status", f"{v} declared {'' if not actual else 'not '}{label} but tau makes it {'' if actual else 'not '}{label}", v))
    return out


def load_quiver(text: str) -> tuple[TranslationQuiver, ValidationReport]:
    """Parse, build and validate. Violations of the axioms are returned as data."""
    doc = parse_quiver(text)
    T = doc.to_quiver()
    report = validate_translation_quiver(T)
    extra = check_declarations(doc, T)
    return T, ValidationReport(report.violations + tuple(extra))


def format_quiver(T: TranslationQuiver) -> str:
    lines = []
    if T.vertices:
        lines.append("vertices " + " ".join(T.vertices) + " ;")
    lines += [f"arrow {a.name} : {a.source} -> {a.target} ;" for a in T.arrows]
    for v in T.vertices:
        if v in T.tau:
            lines.append(f"tau {v} -> {T.tau[v]} ;")
    for a in T.arrows:
        if a.name in T.sigma:
            lines.append(f"sigma {a.name} -> {T.sigma[a.name]} ;")
    return "\n".join(lines) + "\n"
