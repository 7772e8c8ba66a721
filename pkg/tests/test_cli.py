import json
import os
import subprocess
import sys

import jsonschema
import pytest

from semidirect import catalog, cli, verifier
from semidirect.monoid import load, save

SCHEMA_DIR = os.path.join(os.path.dirname(cli.__file__), "schemas")


def schema(name):
    with open(os.path.join(SCHEMA_DIR, name)) as fh:
        return json.load(fh)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name in ("u2", "cyclic(2)", "diamond", "chain(4)"):
        p = str(tmp_path / (name.replace("(", "_").replace(")", "") + ".mon"))
        save(catalog.get(name).monoid, p)
        paths[name] = p
    return paths


def test_inspect_json(capsys, files):
    code, out, _ = run(capsys, "inspect", "--in", files["u2"], "--json")
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, schema("inspect.json"))
    assert data["order"] == 2 and data["idempotents"] == ["1", "z"]


def test_expand_then_inspect(capsys, files, tmp_path):
    out_path = str(tmp_path / "s.mon")
    code, _, _ = run(capsys, "expand", "--in", files["cyclic(2)"], "--kind", "S", "--materialize",
                     "--out", out_path)
    assert code == 0
    code, out, _ = run(capsys, "inspect", "--in", out_path, "--json")
    data = json.loads(out)
    assert data["classification"]["inverse"] and data["classification"]["proper_inverse"]
    # round trip: the written file re-parses to the same table and labels
    m = load(out_path)
    save(m, str(tmp_path / "again.mon"))
    assert load(str(tmp_path / "again.mon")) == m


def test_expand_capacity(capsys, tmp_path):
    p = str(tmp_path / "c10.mon")
    save(catalog.make_cyclic_group(10), p)
    code, _, err = run(capsys, "expand", "--in", p, "--kind", "S", "--materialize")
    assert code == 2 and "capacity" in err


def test_bad_input_exit_1(capsys, tmp_path):
    p = tmp_path / "bad.mon"
    p.write_text("n=2\n0 1\n0 1\n")
    code, out, err = run(capsys, "inspect", "--in", str(p))
    assert code == 1 and out == "" and "identity" in err
    p.write_text("n=2\n0 1\n1 2\n")
    assert run(capsys, "inspect", "--in", str(p))[0] == 1


def test_relations(capsys, files):
    code, out, _ = run(capsys, "relations", "--in", files["u2"], "--view", "S", "--relation", "~L",
                       "--E", "script", "--json")
    assert code == 0 and len(json.loads(out)["~L"]) == 4


def test_congruence(capsys, files):
    code, out, _ = run(capsys, "congruence", "--in", files["u2"], "--side", "right", "--pairs", "(0,1)",
                       "--witness", "1,0", "--min-gens", "--json")
    data = json.loads(out)
    jsonschema.validate(data, schema("congruence.json"))
    assert data["num_classes"] == 1 and data["witness"]["length"] == 1
    assert data["min_generators"]["upper"] == 1
    code, _, err = run(capsys, "congruence", "--in", files["u2"], "--pairs", "(0,7)")
    assert code == 1


def test_howson(capsys, files):
    code, out, _ = run(capsys, "howson", "--in", files["diamond"], "--side", "right", "--principal", "--json")
    data = json.loads(out)
    jsonschema.validate(data, schema("howson.json"))
    assert data["verdict"] is True
    code, out, _ = run(capsys, "howson", "--in", files["u2"], "--view", "S", "--side", "left",
                       "--profile", "--json")
    jsonschema.validate(json.loads(out), schema("howson.json"))


def test_coordinate(capsys, files):
    code, out, _ = run(capsys, "coordinate", "--in", files["chain(4)"], "--n", "2", "--json")
    data = json.loads(out)
    jsonschema.validate(data, schema("coordinate.json"))
    assert data["verdict"] is True and data["sampled"] is False
    code, out, _ = run(capsys, "coordinate", "--in", files["diamond"], "--a", "E", "--b", "F",
                       "--A", "0", "--B", "0", "--pairs", "(G,G)", "--json")
    assert json.loads(out)["verdict"] is True
    code, _, err = run(capsys, "coordinate", "--in", files["u2"], "--view", "S")
    assert code == 2


def test_catalog_and_enumerate(capsys, tmp_path):
    code, out, _ = run(capsys, "catalog", "--list", "--json")
    assert code == 0 and any(r["name"] == "fountain(2)" for r in json.loads(out))
    p = str(tmp_path / "f.mon")
    assert run(capsys, "catalog", "--get", "fountain(2)", "--out", p)[0] == 0
    assert load(p).order == 8
    d = str(tmp_path / "e3")
    code, out, _ = run(capsys, "enumerate", "--order", "3", "--out", d)
    assert code == 0 and len(os.listdir(d)) == 7


def test_search(capsys, tmp_path):
    p = str(tmp_path / "s.mon")
    code, out, _ = run(capsys, "search", "--predicate", "left-1-coordinated", "--orders", "1-3",
                       "--out", p, "--json")
    data = json.loads(out)
    jsonschema.validate(data, schema("search.json"))
    assert data["found"] and os.path.exists(p)


def test_verify_exit_codes(capsys, tmp_path):
    rpt = str(tmp_path / "r.json")
    code, _, err = run(capsys, "verify", "--checks", "SREG-1,INCL-1", "--order-max", "3", "--report", rpt)
    assert code == 0
    with open(rpt) as fh:
        jsonschema.validate(json.load(fh), schema("verify_report.json"))
    code, _, err = run(capsys, "verify", "--checks", "SREG-1", "--mutate", "--order-max", "3",
                       "--counterexamples", str(tmp_path / "cex"))
    assert code == 3 and "counterexample" in err
    assert run(capsys, "verify", "--checks", "BOGUS")[0] == 1


def test_version_embeds_manifest_hash(capsys):
    with pytest.raises(SystemExit):
        cli.main(["--version"])
    out, _ = capsys.readouterr()
    assert verifier.manifest_hash() in out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "semidirect", "catalog", "--list"], capture_output=True, text=True)
    assert r.returncode == 0 and "chain(4)" in r.stdout
