import json
import subprocess
import sys

from horokit import cli


def run_cli(args):
    proc = subprocess.run([sys.executable, "-m", "horokit.cli", *args],
                          capture_output=True, text=True)
    return proc


W3 = {"group": "A2 x 1 x C* x C*", "kind": "x1", "beta": "(0,a1)",
      "alphas": ["(1,triv)", "(2,triv)", "(3,triv)"], "a": [0, 2, 3]}


def test_cmd_check_w3(tmp_path):
    f = tmp_path / "w3.json"
    f.write_text(json.dumps(W3))
    out = tmp_path / "report.json"
    assert cli.main(["check", str(f), "--json", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["smooth"] and report["picard_rank"] == 2
    assert report["fano"] is False
    assert report["nef_basis"] is True


def test_cmd_check_case0(tmp_path):
    doc = {"group": "A3", "kind": "fan", "m_basis": [],
           "colors": ["(0,a1)", "(0,a2)"],
           "cones": [{"generators": [], "colors": []}]}
    f = tmp_path / "case0.json"
    f.write_text(json.dumps(doc))
    out = tmp_path / "r.json"
    assert cli.main(["check", str(f), "--json", str(out)]) == 0
    assert json.loads(out.read_text())["picard_rank"] == 2


def test_malformed_json_exits_2(tmp_path):
    f = tmp_path / "bad.json"
    f.write_text("{not json")
    assert cli.main(["check", str(f)]) == 2
    f2 = tmp_path / "extra.json"
    f2.write_text(json.dumps(W3 | {"surprise": 1}))
    assert cli.main(["check", str(f2)]) == 2


def test_cmd_mmp_trace_and_svg(tmp_path):
    f = tmp_path / "w3.json"
    f.write_text(json.dumps(W3))
    out = tmp_path / "trace.json"
    svg = tmp_path / "fig.svg"
    assert cli.main(["mmp", str(f), "--json", str(out), "--svg", str(svg)]) == 0
    doc = json.loads(out.read_text())
    assert [(b["epsilon"], b["kind"]) for b in doc["breakpoints"]] == \
        [("1", "Flip"), ("3", "DivisorialContraction"), ("4", "Fibration")]
    assert doc["rc"] == "c"
    assert all("/" in i["lo"] or i["lo"].lstrip("-").isdigit()
               for i in doc["intervals"])
    text = svg.read_text()
    assert text.startswith("<svg") and "polygon" in text
    # figure emission does not change the trace
    out2 = tmp_path / "trace2.json"
    assert cli.main(["mmp", str(f), "--json", str(out2)]) == 0
    assert json.loads(out2.read_text()) == doc
    # the first-program variant is a single fibration
    out3 = tmp_path / "trace3.json"
    assert cli.main(["mmp", str(f), "--delta", "d0", "--json", str(out3)]) == 0
    doc3 = json.loads(out3.read_text())
    assert [b["kind"] for b in doc3["breakpoints"]] == ["Fibration"]


def test_cmd_normalize_idempotent(tmp_path):
    raw = {"group": "SL2 x SL3 x Sp8 x Spin7", "kind": "x2",
           "alphas": ["(0,a1)", "(1,a1)", "(2,a1)", "(3,a1)", "(3,a3)"],
           "a": [0, 0, 1]}
    f = tmp_path / "w2.json"
    f.write_text(json.dumps(raw))
    out = tmp_path / "nf.json"
    assert cli.main(["normalize", str(f), "--json", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["rc"] == "b" and doc["group"] == ["A4", "A7", "B3"]
    # normalizing the output reproduces it byte for byte
    nf_file = tmp_path / "nf_input.json"
    nf_file.write_text(json.dumps({k: v for k, v in doc.items() if k != "rc"}))
    out2 = tmp_path / "nf2.json"
    assert cli.main(["normalize", str(nf_file), "--json", str(out2)]) == 0
    assert out.read_text() == out2.read_text()


def test_cmd_appendix():
    assert cli.main(["appendix", "--family", "G", "--max-rank", "2"]) == 0
    assert cli.main(["appendix", "--family", "F", "--max-rank", "4"]) == 0
    assert cli.main(["appendix", "--family", "B", "--max-rank", "5"]) == 0


def test_threads_env_validated(tmp_path, monkeypatch):
    f = tmp_path / "w3.json"
    f.write_text(json.dumps(W3))
    monkeypatch.setenv("HOROKIT_THREADS", "0")
    assert cli.main(["check", str(f)]) == 2
    monkeypatch.setenv("HOROKIT_THREADS", "4")
    assert cli.main(["check", str(f)]) == 0


def test_subprocess_entry_point(tmp_path):
    f = tmp_path / "w3.json"
    f.write_text(json.dumps(W3))
    proc = run_cli(["check", str(f)])
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["picard_rank"] == 2
