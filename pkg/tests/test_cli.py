import io
import json
import subprocess
import sys

import pytest

from holehat.cli import run
from holehat.formats import to_edge_list, to_graph6
from holehat.graph import build_graph
from holehat.harness import forcer_graph


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def files(tmp_path, house, c5):
    paths = {}
    for name, g in (("house", house), ("c5", c5), ("forcer", forcer_graph()), ("p4", build_graph(4, [(0, 1), (1, 2), (2, 3)]))):
        p = tmp_path / f"{name}.g6"
        p.write_text(to_graph6(g) + "\n")
        paths[name] = str(p)
    e = tmp_path / "house.txt"
    e.write_text(to_edge_list(house))
    paths["house_edges"] = str(e)
    w = tmp_path / "c5.w"
    w.write_text("n=5\n" + "".join(f"{i} 1/5\n" for i in range(5)))
    paths["c5_weights"] = str(w)
    return paths


def test_detect(files):
    code, out = call("detect", "--what", "hole-with-hat", "--in", files["house"])
    assert code == 1 and "hat 4" in out
    code, out = call("detect", "--what", "house", "--in", files["house_edges"])
    assert code == 1
    code, out = call("detect", "--what", "hole-with-hat", "--in", files["c5"])
    assert code == 0 and "none" in out
    code, out = call("detect", "--what", "forcer", "--in", files["forcer"])
    assert code == 1
    code, out = call("detect", "--what", "imperfect", "--in", files["c5"])
    assert code == 1 and "odd hole" in out


def test_certify(files):
    code, out = call("certify", "--alpha", "1", "--in", files["c5"])
    assert code == 1 and "max_value 5/4" in out
    code, out = call("certify", "--alpha", "1", "--in", files["p4"])
    assert code == 0 and "max_value 1 " in out
    code, out = call("certify", "--alpha", "1.160964047", "--in", files["c5"])
    assert code == 3 and "inconclusive" in out
    code, out = call("certify", "--threshold", "--in", files["c5"])
    assert code == 0 and "threshold 1.1609640" in out


def test_verify(tmp_path):
    code, out = call("verify", "--lemma", "wiggly1", "--n", "6", "--filter", "hwh-free")
    assert code == 0
    summary = json.loads(out.strip().splitlines()[-1])
    assert summary["violations"] == 0 and summary["verdict"] == "verified"
    report = tmp_path / "r.txt"
    summ = tmp_path / "s.json"
    code, out = call("verify", "--lemma", "wiggly1", "--n", "5", "--report", str(report), "--summary", str(summ))
    assert code == 1
    lines = report.read_text().splitlines()
    assert lines and all(ln.startswith("wiggly1 ") for ln in lines)
    assert json.loads(summ.read_text())["violations"] == len(lines)


def test_coherence(files):
    code, out = call("coherence", "--in", files["c5"], "--weights", files["c5_weights"], "--eps", "1/2")
    assert code == 0 and "coherent" in out
    code, out = call("coherence", "--in", files["c5"], "--weights", files["c5_weights"], "--eps", "1/5")
    assert code == 1 and "vertex-weight" in out


def test_decompose(files):
    code, out = call("decompose", "--what", "homogeneous", "--in", files["c5"])
    assert code == 0 and len(out.splitlines()) == 5
    code, out = call("decompose", "--what", "guarded", "--in", files["forcer"])
    assert code == 0
    code, out = call("decompose", "--what", "fracture", "--in", files["c5"], "--weights", files["c5_weights"], "--eps", "1/5")
    assert code == 0 and "no forcer" in out
    code, _ = call("decompose", "--what", "fracture", "--in", files["c5"])
    assert code == 2


def test_enumerate_stats_search(tmp_path):
    code, out = call("enumerate", "--n", "6", "--count")
    assert code == 0 and out.strip() == "156 graphs"
    code, out = call("enumerate", "--n", "6", "--count", "--seed", "9")
    assert out.strip() == "156 graphs"
    dest = tmp_path / "g.g6"
    code, _ = call("enumerate", "--n", "4", "--out", str(dest))
    assert len(dest.read_text().splitlines()) == 11
    code, out = call("stats", "--n", "5")
    assert json.loads(out)["minimum"] == 2
    code, out = call("search", "--attempts", "10", "--size", "10")
    assert code == 0 and "instances" in out


def test_input_errors(tmp_path, files):
    bad = tmp_path / "bad.g6"
    bad.write_text("Dx\n")
    code, _ = call("detect", "--what", "hole", "--in", str(bad))
    assert code == 2
    code, _ = call("detect", "--what", "hole", "--in", str(tmp_path / "missing.g6"))
    assert code == 2
    code, _ = call("certify", "--alpha", "x", "--in", files["c5"])
    assert code == 2
    code, _ = call("frobnicate")
    assert code == 2
    code, _ = call("verify", "--lemma", "wiggly1", "--n", "11")
    assert code == 2
    code, _ = call("--jobs", "0", "enumerate", "--n", "3")
    assert code == 2


def test_diagnostics_carry_line_and_column(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("3 1\n0 7\n")
    code = run(["detect", "--what", "hole", "--in", str(bad)], out=io.StringIO())
    assert code == 2
    assert "line 2" in capsys.readouterr().err


def test_console_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "holehat.cli", "detect", "--what", "house", "--in", files["house"]],
                          capture_output=True, text=True)
    assert proc.returncode == 1 and "hat" in proc.stdout
