import csv
import io
import json
import math
import subprocess
import sys

import pytest

from steklov_parallels.cli import fmt, main, parse_range
from steklov_parallels.errors import ParseError
from steklov_parallels.numerics import solve_t1

T1_0 = solve_t1(0.0)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_json(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


def test_fmt():
    assert fmt(4 * math.pi) == "12.5663706144"
    assert fmt(1.0) == "1"


def test_parse_range():
    assert list(parse_range("0:1:3")) == [0.0, 0.5, 1.0]
    assert list(parse_range("1,2.5")) == [1.0, 2.5]
    with pytest.raises(ParseError):
        parse_range("0:1")


class TestSpectrum:
    def test_single_circle(self, capsys, tmp_path):
        cfg = write_json(tmp_path / "c.json", {"spacings": [], "weights": [1]})
        code, out, _ = run(capsys, "spectrum", "--config", cfg)
        assert code == 0
        doc = json.loads(out)
        assert doc["result"]["tau1_bar"] == pytest.approx(4 * math.pi, rel=1e-11)
        assert doc["manifest"]["command"] == "spectrum"

    def test_drum_csv(self, capsys, tmp_path):
        cfg = write_json(tmp_path / "c.json", {"spacings": [2 * T1_0], "weights": [0.5, 0.5]})
        code, out, _ = run(capsys, "spectrum", "--config", cfg, "--format", "csv", "--kmax", "6")
        assert code == 0
        rows = list(csv.DictReader(l for l in io.StringIO(out) if not l.startswith("#")))
        first = [r for r in rows if float(r["tau"]) > 0][:2]
        assert float(first[0]["tau_bar"]) == pytest.approx(4 * math.pi / T1_0, rel=1e-10)
        assert {r["mode"] for r in first} == {"0", "1"}

    def test_malformed_json(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{nope")
        code, _, err = run(capsys, "spectrum", "--config", str(bad))
        assert code == 2 and "malformed" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "spectrum", "--config", str(tmp_path / "none.json"))
        assert code == 2

    def test_invalid_config(self, capsys, tmp_path):
        cfg = write_json(tmp_path / "c.json", {"spacings": [1.0], "weights": [0.5, 0.7]})
        assert run(capsys, "spectrum", "--config", cfg)[0] == 2

    def test_zero_weight(self, capsys, tmp_path):
        cfg = write_json(tmp_path / "c.json", {"spacings": [1.0], "weights": [1, 0]})
        assert run(capsys, "spectrum", "--config", cfg)[0] == 3

    def test_wrong_format(self, capsys, tmp_path):
        cfg = write_json(tmp_path / "c.json", {"spacings": [], "weights": [1]})
        assert run(capsys, "spectrum", "--config", cfg, "--format", "obj")[0] == 2


@pytest.mark.parametrize("N", [2, 3, 4, 5, 6])
def test_balanced_round_trip(capsys, tmp_path, N):
    out_path = tmp_path / "b.json"
    assert run(capsys, "balanced", "--n", str(N), "--out", str(out_path))[0] == 0
    doc = json.loads(out_path.read_text())["result"]
    code, out, _ = run(capsys, "spectrum", "--config", str(out_path))
    spec = json.loads(out)["result"]
    assert code == 0
    assert spec["multiplicity"] == 3
    assert spec["tau1_bar"] == pytest.approx(2 * doc["area"], rel=1e-6)


def test_balanced_two(capsys):
    code, out, _ = run(capsys, "balanced", "--n", "2")
    beta = json.loads(out)["result"]["latitudes"][0]
    assert beta == pytest.approx(math.atan(math.cosh(T1_0) / T1_0), abs=1e-10)
    assert run(capsys, "balanced", "--n", "0")[0] == 2


def test_drum_sweep(capsys):
    code, out, _ = run(capsys, "drum", "--range=-2:2:41")
    lines = [l for l in out.splitlines() if not l.startswith("#")]
    rows = list(csv.DictReader(lines))
    best = max(rows, key=lambda r: float(r["F"]))
    assert float(best["a"]) == pytest.approx(0.0, abs=1e-12)
    code, out, _ = run(capsys, "drum", "--sweep", "T", "--range", "0.5,1,2", "--alpha", "2")
    assert code == 0 and "tau1_minus" in out
    assert run(capsys, "drum", "--sweep", "T", "--range=-1,1")[0] == 2


def test_optimize(capsys, tmp_path):
    code, out, _ = run(capsys, "optimize", "--n", "2")
    doc = json.loads(out)
    assert doc["manifest"]["seed"] == 0
    assert doc["result"]["value"] == pytest.approx(4 * math.pi / T1_0, rel=1e-8)
    assert doc["result"]["multiplicity"] == 3
    cfg = write_json(tmp_path / "c.json", {"spacings": [2 * T1_0], "weights": [0.3, 0.7]})
    code, out, _ = run(capsys, "optimize", "--config", cfg, "--seed", "3")
    assert json.loads(out)["result"]["value"] == pytest.approx(4 * math.pi / T1_0, rel=1e-8)


def test_table(capsys):
    code, out, _ = run(capsys, "table", "--n", "3")
    assert code == 0
    assert out.splitlines()[0] == "# command=table"
    assert "# seed=0" in out.splitlines()
    rows = list(csv.DictReader(l for l in io.StringIO(out) if not l.startswith("#")))
    assert [int(r["N"]) for r in rows] == [1, 2, 3]
    assert float(rows[0]["T1"]) == pytest.approx(4 * math.pi, rel=1e-11)
    assert float(rows[0]["area"]) == pytest.approx(2 * math.pi, rel=1e-11)
    assert rows[1]["multiplicity"] == "3"
    T = [float(r["T1"]) for r in rows]
    assert T == sorted(T) and max(T) < 8 * math.pi
    assert all(abs(float(r["rel_diff"])) < 1e-4 for r in rows)


def test_mesh_obj(capsys, tmp_path):
    out_path = tmp_path / "m.obj"
    assert run(capsys, "mesh", "--n", "1", "--out", str(out_path))[0] == 0
    text = out_path.read_text()
    assert text.count("\nv ") + text.startswith("v ") == 2 * 65
    assert run(capsys, "mesh", "--n", "2", "--segments", "2")[0] == 2


def test_identical_runs_identical_bytes(tmp_path):
    outs = []
    for i in range(2):
        p = tmp_path / f"o{i}.json"
        main(["optimize", "--n", "3", "--no-geometry-seed", "--seed", "9", "--out", str(p)])
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "steklov_parallels", "drum", "--range", "0"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert "tau1_bar" in res.stdout
