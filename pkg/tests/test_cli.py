import json
import subprocess
import sys

import jsonschema
import pytest

from realcert.cli import codec, run
from realcert.cli.fixtures import FIXTURES
from realcert.reality import AssumptionLedger, certify_real

from conftest import graph

LINE = "A6; 4:0 2:4 3:9:3 2:14:3"
NO_RDS = "A3; 2:0 1:3 3:3 2:6x2"
LEDGER = [{"kind": "kkop_le", "left": "A3; 1:3 2:6", "right": "A3; 2:0 3:3 2:6", "k": 1,
           "note": "computed by hand"}]


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def validate(path):
    doc = json.loads(path.read_text())
    jsonschema.validate(doc, codec.schema())
    return doc


def test_certify_line(capsys, tmp_path):
    out_file = tmp_path / "cert.json"
    code, out, _ = call(capsys, "certify", LINE, "--json", str(out_file))
    assert code == 0
    assert "status: StronglyReal" in out and "chain of length 4" in out
    doc = validate(out_file)
    assert doc["status"] == "StronglyReal" and doc["index"] == {"q_lower": 4, "r_upper": 0}
    assert call(capsys, "replay", str(out_file))[0] == 0


def test_certify_inconclusive(capsys):
    code, out, _ = call(capsys, "certify", NO_RDS)
    assert code == 2 and "Inconclusive" in out


def test_certify_with_ledger(capsys, tmp_path):
    led = tmp_path / "ledger.json"
    led.write_text(json.dumps(LEDGER))
    cert = tmp_path / "cert.json"
    code, out, _ = call(capsys, "certify", NO_RDS, "--ledger", str(led), "--json", str(cert))
    assert code == 0 and "Conditional" in out and "uses ledger facts" in out
    doc = validate(cert)
    assert doc["index"] == {"q_lower": 4, "r_upper": 1}
    assert doc["ledger"][0]["note"] == "computed by hand"
    assert call(capsys, "replay", str(cert))[0] == 0
    code, out, _ = call(capsys, "index", NO_RDS, "--ledger", str(led))
    assert code == 0 and "Q >= 4" in out and "R <= 1" in out


def _tamper(capsys, tmp_path, doc, edit):
    bad = json.loads(json.dumps(doc))
    edit(bad)
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, out, _ = call(capsys, "replay", str(path))
    return code, out


def test_replay_rejects_tampering(capsys, tmp_path):
    cert = tmp_path / "cert.json"
    call(capsys, "certify", LINE, "--json", str(cert))
    doc = json.loads(cert.read_text())

    def drop_step(d):
        d["chain"]["steps"].pop(0)

    def wrong_index(d):
        d["index"]["q_lower"] = 3

    def swap_vertex(d):
        d["chain"]["steps"][0]["part"] = [0]

    def wrong_rule(d):
        d["chain"]["steps"][0]["hlw"]["rule"] = "bottom"

    for edit in (drop_step, wrong_index, swap_vertex, wrong_rule):
        code, out = _tamper(capsys, tmp_path, doc, edit)
        assert code == 3 and "replay failed" in out, edit.__name__

    code, _ = _tamper(capsys, tmp_path, {"kind": "nothing"}, lambda d: None)
    assert code == 3


def test_replay_bad_files(capsys, tmp_path):
    assert call(capsys, "replay", str(tmp_path / "missing.json"))[0] == 3
    junk = tmp_path / "junk.json"
    junk.write_text("{not json")
    assert call(capsys, "replay", str(junk))[0] == 3
    arr = tmp_path / "arr.json"
    arr.write_text("[]")
    assert call(capsys, "replay", str(arr))[0] == 3


def test_redset(capsys):
    assert call(capsys, "redset", "--rank", "6", "4", "2", "1", "1")[1].strip() == "4,6"
    assert call(capsys, "redset", "--rank", "6", "2", "3", "3", "3")[1].strip() == "3,5,7,9"
    assert call(capsys, "redset", "--rank", "4", "--sub", "1", "3", "1", "2", "3", "2")[1].strip() == "4,6"
    code, _, err = call(capsys, "redset", "--rank", "2", "1", "3", "1", "1")
    assert code == 1 and "node 3" in err


def test_kkop(capsys, tmp_path):
    path = tmp_path / "k.json"
    code, out, _ = call(capsys, "kkop", "--left", NO_RDS, "--right", "A3; 2:-4 1:-7 3:-7 2:-10x2", "--json", str(path))
    assert code == 0 and "upper: 1" in out and "fundamental-pair" in out
    validate(path)
    assert call(capsys, "replay", str(path))[0] == 0
    code, out, _ = call(capsys, "kkop", "--left", "A6; 4:0 2:4 3:9:3", "--right", "A6; 2:14:3", "--budget", "1")
    assert code == 2 and "upper: inf" in out
    assert call(capsys, "kkop", "--left", "A3; 1:0", "--right", "A4; 1:0")[0] == 1
    assert call(capsys, "kkop", "--left", "A3;", "--right", "A3; 1:0")[0] == 1


def test_primality_commands(capsys, tmp_path):
    path = tmp_path / "p.json"
    code, out, _ = call(capsys, "prime3", "A3; 2:4 3:3 2:0", "--json", str(path))
    assert code == 3 and "not prime" in out
    validate(path)
    assert call(capsys, "replay", str(path))[0] == 0
    assert call(capsys, "prime3", "A3; 1:0 2:3 3:0")[0] == 0
    assert call(capsys, "prime3", LINE)[0] == 1
    assert call(capsys, "prime", LINE)[0] == 0
    assert call(capsys, "prime", NO_RDS)[0] == 2
    assert call(capsys, "prime", "A2; 1:0 1:1")[0] == 3


def test_graph_and_factorize(capsys, tmp_path):
    code, out, _ = call(capsys, "factorize", "A1; 1:0 1:2 1:4 1:10")
    assert out.strip() == "A1; 1:2:3 1:10"
    code, out, _ = call(capsys, "factorize", "A1; 1:0 1:2 1:4 1:10", "--normalize")
    assert out.strip() == "A1; 1:0 1:2:3"
    code, out, _ = call(capsys, "graph", NO_RDS)
    assert code == 0 and "6 arrows" in out and "not totally ordered" in out
    code, out, _ = call(capsys, "graph", "A6; 4:0 2:4 3:9:3", "--fundamental")
    assert "5 vertices" in out and "totally ordered" in out
    code, out, _ = call(capsys, "graph", "A1; 1:0 1:2", "--pseudo")
    assert "2 vertices" in out
    a, b = tmp_path / "a.dot", tmp_path / "b.dot"
    call(capsys, "graph", LINE, "--dot", str(a))
    call(capsys, "graph", LINE, "--dot", str(b))
    assert a.read_bytes() == b.read_bytes() and a.read_text().startswith("digraph G {")
    code, out, _ = call(capsys, "graph", LINE, "--dot", "-")
    assert out.startswith("digraph")


def test_normalize_per_component(capsys):
    code, out, _ = call(capsys, "graph", "A3; 1:5 1:100 2:103", "--normalize")
    lines = out.splitlines()
    assert [ln.split()[1] for ln in lines[:3]] == ["1_0", "1_0", "2_3"]
    assert "2 component(s)" in out


def test_survey(capsys):
    code, out, _ = call(capsys, "survey", "--rank", "1", "--centers", "0..4", "--max-degree", "2")
    assert code == 0 and "6 classes" in out
    code, _, err = call(capsys, "survey", "--rank", "3", "--centers", "0..30", "--max-degree", "6")
    assert code == 1 and "limit" in err
    assert call(capsys, "survey", "--rank", "1", "--centers", "0-4", "--max-degree", "2")[0] == 1


def test_usage_errors(capsys):
    assert call(capsys, "certify", LINE, "--bogus")[0] == 1
    assert call(capsys, "frobnicate")[0] == 1
    assert call(capsys)[0] == 1
    code, _, err = call(capsys, "certify", "A3; 2:0 1:?")
    assert code == 1 and "column" in err
    bad = call(capsys, "certify", "@nope")
    assert bad[0] == 1 and "unknown fixture" in bad[2]
    assert call(capsys, "--help")[0] == 0


def test_bad_ledger_file(capsys, tmp_path):
    led = tmp_path / "l.json"
    led.write_text(json.dumps([{"kind": "real"}]))
    assert call(capsys, "certify", NO_RDS, "--ledger", str(led))[0] == 1
    led.write_text(json.dumps({"kind": "real"}))
    assert call(capsys, "certify", NO_RDS, "--ledger", str(led))[0] == 1
    led.write_text(json.dumps([{"kind": "real", "left": "A3; 1:0", "extra": 1}]))
    assert call(capsys, "certify", NO_RDS, "--ledger", str(led))[0] == 1


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixtures_parse(capsys, name):
    assert call(capsys, "factorize", "@" + name)[0] == 0


def test_codec_round_trip():
    G = graph("no-rds5")
    led = codec.ledger_from_json(LEDGER)
    res = certify_real(G, led)
    doc = codec.reality_to_json(G, res, led)
    G2, res2 = codec.reality_from_json(json.loads(json.dumps(doc)))
    assert G2.factors == G.factors and res2 == res
    for name in ("line4", "triangle3-pair"):
        G = graph(name)
        res = certify_real(G, AssumptionLedger())
        assert codec.reality_from_json(codec.reality_to_json(G, res))[1] == res


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "realcert", "redset", "--rank", "6", "4", "2", "1", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "4,6"
