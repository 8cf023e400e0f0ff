import csv
import io
import json
import os
import subprocess
import sys

import pytest

from multipole_noise import __version__
from multipole_noise.cli import run
from multipole_noise.vacuum import TruncationSpec, calibrate, radial_scan

SCAN = ["scan", "--kind", "outgoing", "--jmax", "10", "--xlo", "1", "--xhi", "50",
        "--n", "200", "--calibrate", "50", "--format", "csv"]


def call(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_scan_csv_matches_library(tmp_path):
    path = tmp_path / "scan.csv"
    code, _, err = call(SCAN + ["--output", str(path)])
    assert code == 0, err
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["kr", "c_e", "c_plane", "ratio"]
    assert len(rows) == 201
    scale = calibrate("outgoing", TruncationSpec(10), 50.0)
    lib = radial_scan(1.0, 50.0, 200, "outgoing", TruncationSpec(10), scale, 1.0)
    for row, s in zip(rows[1:], lib):
        assert [float(v) for v in row] == [s.x, s.c_e, s.c_plane, s.ratio]
    assert not [p for p in os.listdir(tmp_path) if p.startswith(".")]


def test_scan_deterministic_subprocess(tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"run{i}.csv"
        subprocess.run([sys.executable, "-m", "multipole_noise", *SCAN, "--n", "20",
                        "--output", str(path)], check=True)
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_invalid_range_exit_1_no_file(tmp_path):
    path = tmp_path / "bad.csv"
    code, out, err = call(["scan", "--xlo", "5", "--xhi", "1", "--output", str(path)])
    assert code == 1
    assert "usage error" in err
    assert not path.exists() and out == ""


@pytest.mark.parametrize("argv", [
    ["scan", "--n", "1"],
    ["scan", "--jmax", "0"],
    ["scan", "--kind", "sideways"],
    ["scan", "--seed", "3"],
    ["threshold", "--bracket", "3", "1"],
    ["hertz", "--alpha", "1", "--beta", "1"],
    ["hertz", "--d", "2", "--margin", "1.5"],
    ["scan", "--output", "/nonexistent/dir/x.csv"],
    ["bogus"],
    [],
])
def test_usage_errors(argv):
    assert call(argv)[0] == 1


def test_unbracketed_threshold_exit_2(tmp_path):
    path = tmp_path / "t.csv"
    code, _, err = call(["threshold", "--floor", "10", "--kind", "standing",
                         "--bracket", "0.1", "0.2", "--output", str(path)])
    assert code == 2
    assert "threshold" in err
    assert not path.exists()


def test_divergence_exit_2():
    code, _, err = call(["scan", "--kind", "outgoing", "--xlo", "0", "--xhi", "1", "--n", "3"])
    assert code == 2
    assert "physical divergence" in err


def test_json_metadata():
    code, out, _ = call(SCAN[:-1] + ["json", "--n", "3"])
    assert code == 0
    payload = json.loads(out)
    meta = payload["metadata"]
    assert meta["command"] == "scan"
    assert meta["kind"] == "outgoing"
    assert meta["j_max"] == 10
    assert meta["x_ref"] == 50.0
    assert meta["calibrated_scale"] == calibrate("outgoing", TruncationSpec(10), 50.0)
    assert meta["version"] == __version__
    assert len(payload["rows"]) == 3
    assert set(payload["rows"][0]) == {"kr", "c_e", "c_plane", "ratio"}


def test_raw_mode_metadata():
    code, out, _ = call(["scan", "--kind", "standing", "--xlo", "0", "--xhi", "1",
                         "--n", "2", "--format", "json"])
    meta = json.loads(out)["metadata"]
    assert meta["x_ref"] is None and meta["calibrated_scale"] is None


def test_config_file_and_precedence(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"kind": "standing", "jmax": 3, "n": 4, "xlo": 0.5, "xhi": 2.0}))
    code, out, _ = call(["scan", "--config", str(cfg), "--n", "5", "--format", "json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["metadata"]["kind"] == "standing"
    assert payload["metadata"]["j_max"] == 3
    assert payload["metadata"]["config"]["n"] == 5
    assert len(payload["rows"]) == 5


def test_map_isotropy_column():
    code, out, _ = call(["map", "--kind", "outgoing", "--xlo", "1", "--xhi", "3",
                         "--n", "3", "--ntheta", "5"])
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["kr", "theta", "c_e", "c_e_theta_avg"]
    assert len(rows) == 16
    for r in rows[1:]:
        assert float(r[2]) == pytest.approx(float(r[3]), rel=1e-10)


def test_threshold_command():
    code, out, _ = call(["threshold", "--floor", "1", "--calibrate", "50",
                         "--bracket", "40", "60"])
    assert code == 0
    header, row = list(csv.reader(io.StringIO(out)))
    assert header == ["floor", "kr", "r_over_lambda"]
    assert float(row[1]) == pytest.approx(50.0, abs=1e-8)


def test_converge_command():
    code, out, _ = call(["converge", "--kind", "outgoing", "--x", "5",
                         "--jmax-list", "5", "10", "15", "20"])
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["j_max", "c_e"]
    assert [r[0] for r in rows[1:]] == ["5", "10", "15", "20"]
    vals = [float(r[1]) for r in rows[1:]]
    assert vals == sorted(vals)


def test_hertz_command():
    code, out, _ = call(["hertz", "--d", "12.566370614359172", "--alpha", "0.31622776601683794",
                         "--beta", "0.9486832980505138", "--n", "5", "--margin", "0.5"])
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["z", "noise"]
    assert len(rows) == 6
    assert float(rows[-1][1]) > float(rows[1][1])


def test_selftest():
    code, out, _ = call(["selftest"])
    assert code == 0
    assert sum(line.startswith("PASS") for line in out.splitlines()) >= 4


def test_selftest_tampered_tolerance():
    code, out, _ = call(["selftest", "--tolerance-scale", "-1"])
    assert code == 2
    assert "FAIL" in out
