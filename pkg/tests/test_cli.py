import io
import json
import os
import subprocess
import sys
from importlib.resources import files

import jsonschema
import pytest

from meshgb.cli import COMMANDS, run_command

import support

GOLDEN = support.FIXTURES.parent / "golden"
SCHEMA = json.loads(files("meshgb").joinpath("schemas/cli-output.schema.json").read_text())


def fx(name):
    return str(support.FIXTURES / name)


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


# (case name, argv, expected exit code); every subcommand appears at least once
CASES = [
    ("validate-ex1", ["validate", fx("ex1.quiver")], 0),
    ("paths-ex1", ["paths", fx("ex1.quiver"), "--from", "x", "--to", "y"], 0),
    ("paths-ex2-ordered", ["paths", fx("ex2.quiver"), "--from", "x", "--to", "y", "--order", fx("ex2_order.json")], 0),
    ("sectional-ex1", ["sectional", fx("ex1.quiver"), "--path", "beta1.gamma1"], 0),
    ("sectional-ex1-no", ["sectional", fx("ex1.quiver"), "--path", "alpha1.beta1"], 1),
    ("classify-ex2", ["classify", fx("ex2.quiver"), "--from", "x", "--to", "y"], 0),
    ("mesh-ex1", ["mesh", fx("ex1.quiver"), "--vertex", "y"], 0),
    ("homotopy-ex1", ["homotopy", fx("ex1.quiver"), "--from", "x", "--to", "y"], 0),
    ("homotopy-pair", ["homotopy", fx("ex2.quiver"), "--path", "u1.v1.w1.t1", "--path", "u2.v2.w2.t2"], 0),
    ("relations-ex2", ["relations", fx("ex2.quiver"), "--from", "x", "--to", "y", "--order", fx("ex2_order.json")], 0),
    ("order-build-ex1", ["order-build", fx("ex1.quiver"), "--from", "x", "--to", "y"], 0),
    ("order-build-ex2", ["order-build", fx("ex2.quiver"), "--from", "x", "--to", "y", "--base", "u2,u1"], 0),
    ("order-check-ex1", ["order-check", fx("ex1.quiver"), "--order", fx("ex1_order.json")], 0),
    ("order-check-ex2-bad", ["order-check", fx("ex2.quiver"), "--order", fx("ex2_bad_order.json")], 1),
    ("reduce-ex1", ["reduce", fx("ex1.quiver"), "--path", "alpha1.beta1.gamma1.delta1", "--trace"], 0),
    ("groebner-check-ex1", ["groebner-check", fx("ex1.quiver"), "--from", "x", "--to", "y", "--order", fx("ex1_order.json")], 0),
    ("groebner-check-ex2", ["groebner-check", fx("ex2.quiver"), "--from", "x", "--to", "y", "--order", fx("ex2_order.json")], 1),
    ("bimesh-ex1", ["bimesh", fx("ex1.quiver"), "--from", "x", "--to", "y", "--order", fx("ex1_order.json")], 0),
    ("build-s-ex1", ["build-s", fx("ex1.quiver"), "--from", "x", "--to", "y"], 0),
    ("normal-form-ex1", ["normal-form", fx("ex1.quiver"), "--path", "alpha1.beta1.gamma1.delta1", "--trace"], 0),
    ("normal-form-ex1-fp", ["--field", "Fp:7", "normal-form", fx("ex1.quiver"), "--path", "alpha2.beta2.gamma1.delta1"], 0),
    ("quotient-dim-ex1", ["quotient-dim", fx("ex1.quiver"), "--from", "x", "--to", "y"], 0),
    ("zero-test-ex1", ["zero-test", fx("ex1.quiver"), "--layers", fx("ex1_layers.json")], 0),
    ("main-hypothesis-ex1", ["main-hypothesis", fx("ex1.quiver"), "--from", "x", "--to", "y"], 0),
    ("main-hypothesis-ex2", ["main-hypothesis", fx("ex2.quiver"), "--from", "x", "--to", "y"], 1),
    ("witness-ex2", ["witness", fx("ex2.quiver"), "--path", "u1.v1.w1.t1"], 0),
    ("witness-ex1", ["witness", fx("ex1.quiver"), "--path", "alpha1.beta1.gamma1.delta1"], 0),
    ("cover-check-double", ["cover-check", fx("ex1_double_cover.json")], 0),
    ("cover-check-shift", ["cover-check", fx("za2_shift.json")], 1),
    ("lift-double", ["lift", fx("ex1_double_cover.json"), "--path", "alpha2.beta2", "--start", "x^2"], 0),
    ("gen-zq-a2", ["gen-zq", fx("a2.quiver"), "--depth", "2"], 0),
]


def test_every_subcommand_is_exercised():
    assert {argv[0] if not argv[0].startswith("--") else argv[2] for _, argv, _ in CASES} == set(COMMANDS)


@pytest.mark.parametrize("name,argv,code", CASES, ids=[c[0] for c in CASES])
def test_json_output_is_schema_valid(name, argv, code):
    got, out, err = run("--json", *argv)
    assert got == code, err
    payload = json.loads(out)
    command = argv[0] if not argv[0].startswith("--") else argv[2]
    jsonschema.validate(payload, {**SCHEMA, "$ref": f"#/$defs/{command}"})


@pytest.mark.parametrize("name,argv,code", CASES, ids=[c[0] for c in CASES])
def test_golden_output(name, argv, code):
    _, out, _ = run("--json", *argv)
    target = GOLDEN / f"{name}.json"
    if os.environ.get("MESHGB_UPDATE_GOLDEN"):
        target.write_text(out, encoding="utf-8")
    assert out == target.read_text(encoding="utf-8")


@pytest.mark.parametrize("name,argv,code", CASES, ids=[c[0] for c in CASES])
def test_text_output(name, argv, code):
    got, out, _ = run(*argv)
    assert got == code
    assert out.strip()


def test_relations_match_ex2():
    code, out, _ = run("--json", "relations", fx("ex2.quiver"), "--from", "x", "--to", "y")
    rels = json.loads(out)["relations"]
    assert len(rels) == 5
    got = {frozenset(".".join(t["path"]) for t in r["value"]["terms"]) for r in rels}
    T = support.ex2()
    assert got == {frozenset(str(p) for p in v.support()) for v in support.ex2_named_values(T)}


def test_groebner_check_ex2_witness():
    code, out, _ = run("--json", "groebner-check", fx("ex2.quiver"), "--from", "x", "--to", "y", "--order", fx("ex2_order.json"))
    assert code == 1
    assert json.loads(out)["witness_lp"] == ["u2", "v2", "w2", "t2"]


def test_quotient_dim_ex1_text():
    assert run("quotient-dim", fx("ex1.quiver"), "--from", "x", "--to", "y")[1] == "2\n"


def test_flags_after_the_subcommand():
    a = run("--json", "--counting", "vertices", "classify", fx("ex2.quiver"), "--from", "x", "--to", "y")
    b = run("classify", fx("ex2.quiver"), "--from", "x", "--to", "y", "--json", "--counting", "vertices")
    assert a == b
    assert json.loads(a[1])["counting"] == "vertices"


def test_input_errors_exit_2(tmp_path):
    assert run("bogus")[0] == 2
    assert run()[0] == 2
    assert run("paths", fx("ex1.quiver"), "--from", "x", "--to", "nowhere")[0] == 2
    assert run("paths", fx("ex1.quiver"), "--from", "x")[0] == 2
    assert run("paths", str(tmp_path / "missing.quiver"), "--from", "x", "--to", "y")[0] == 2
    assert run("--field", "Fp:9", "quotient-dim", fx("ex1.quiver"), "--from", "x", "--to", "y")[0] == 2
    assert run("mesh", fx("ex1.quiver"), "--vertex", "x")[0] == 2
    assert run("groebner-check", fx("ex1.quiver"), "--from", "x", "--to", "x1", "--order", fx("ex1_order.json"))[0] == 2
    bad_json = tmp_path / "order.json"
    bad_json.write_text("{ nope")
    code, out, err = run("order-check", fx("ex1.quiver"), "--order", bad_json)
    assert code == 2 and out == "" and "invalid JSON" in err


def test_diagnostics_go_to_stderr(tmp_path):
    bad = tmp_path / "bad.quiver"
    bad.write_text("vertices x ;\narrow f : x -> y ;\n")
    code, out, err = run("paths", bad, "--from", "x", "--to", "x")
    assert code == 2 and out == ""
    assert "2:16: unresolved vertex 'y'" in err and "hint:" in err


def test_validate_reports_loop(tmp_path):
    bad = tmp_path / "loop.quiver"
    bad.write_text("vertices x ;\narrow a : x -> x ;\n")
    code, out, _ = run("--json", "validate", bad)
    assert code == 1
    assert [v["kind"] for v in json.loads(out)["violations"]] == ["loop"]
    # other commands refuse an invalid quiver
    assert run("paths", bad, "--from", "x", "--to", "x", "--length", "1")[0] == 2


def test_vector_input(tmp_path):
    T = support.ex1()
    from meshgb.serialize import lincomb_json

    vec = tmp_path / "v.json"
    vec.write_text(json.dumps(lincomb_json(support.ex1_named_values(T)[3])))
    code, out, _ = run("--json", "normal-form", fx("ex1.quiver"), "--vector", vec)
    data = json.loads(out)
    assert code == 0 and data["zero_in_quotient"] and data["representative"]["terms"] == []


def test_build_s_on_open_pair_fails_check():
    code, _, err = run("build-s", fx("ex2.quiver"), "--from", "x", "--to", "y", "--order", fx("ex2_order.json"))
    assert code == 1 and "open" in err


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "meshgb", "quotient-dim", fx("ex1.quiver"), "--from", "x", "--to", "y"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout == "2\n"
