import csv
import json
import subprocess
import sys
from dataclasses import replace

import pytest

from parkequity.cli import main
from parkequity.datasets import tiny1, write_instance
from parkequity.instance import AccessConfig
from parkequity.milp import build_model
from parkequity.solve import solve_model_enumerate


@pytest.fixture
def tiny_dir(tmp_path):
    write_instance(tmp_path / "tiny", tiny1())
    return tmp_path / "tiny"


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def test_validate(tiny_dir, tmp_path, capsys):
    assert main(["validate", str(tiny_dir)]) == 0
    assert main(["validate", str(tiny_dir), "--config", str(tmp_path / "none.json")]) == 2
    with open(tiny_dir / "distances.csv", "a") as fh:
        fh.write("p1,l1,-4\n")
    capsys.readouterr()
    assert main(["validate", str(tiny_dir)]) == 1
    assert "distance" in capsys.readouterr().out


def test_validate_lists_every_violation(tiny_dir, capsys):
    rows = read_csv(tiny_dir / "parks.csv")
    rows[0]["cost"] = "10"
    rows[1]["heat_deficit"] = "0.2"
    with open(tiny_dir / "parks.csv", "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=list(rows[0]))
        w.writeheader()
        w.writerows(rows)
    assert main(["validate", str(tiny_dir)]) == 1
    out = capsys.readouterr().out.splitlines()
    assert "park p1: existing park must have zero cost" in out[0]


def test_solve_outputs(tiny_dir, tmp_path):
    out = tmp_path / "out"
    assert main(["solve", str(tiny_dir), "--out", str(out)]) == 0
    sol = json.loads((out / "solution.json").read_text())
    assert sol["objective"] == pytest.approx(440.0)
    assert sol["opened"] == ["p1", "p2"] and sol["purchased"] == ["p2"]
    assert sol["provenance"] == "DomainBruteForce"
    rows = read_csv(out / "report.csv")
    assert list(rows[0]) == ["quantity", "subject", "category", "value"]
    lookup = {(r["quantity"], r["subject"], r["category"]): float(r["value"]) for r in rows}
    assert lookup[("alpha", "B", "total")] == pytest.approx(440.0)
    assert lookup[("weighted_total", "all", "heat")] == pytest.approx(440.0)
    assert not (out / "selected_parks.geojson").exists()
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["command"] == "solve" and len(manifest["config_sha256"]) == 64


def test_solve_is_deterministic(tiny_dir, tmp_path):
    for name in ("a", "b"):
        assert main(["solve", str(tiny_dir), "--out", str(tmp_path / name)]) == 0
    for f in ("solution.json", "report.csv"):
        assert (tmp_path / "a" / f).read_bytes() == (tmp_path / "b" / f).read_bytes()


def test_solve_budget_zero_and_flags(tiny_dir, tmp_path):
    out = tmp_path / "z"
    assert main(["solve", str(tiny_dir), "--budget", "0", "--out", str(out)]) == 0
    assert json.loads((out / "solution.json").read_text())["opened"] == ["p1"]
    out = tmp_path / "u"
    assert main(["solve", str(tiny_dir), "--objective", "min_all", "--no-capacitated", "--out", str(out)]) == 0
    sol = json.loads((out / "solution.json").read_text())
    assert sol["objective"] == pytest.approx(440.0) and sol["capacitated"] is False


def test_solve_limit_exit_code(tiny_dir, tmp_path):
    assert main(["solve", str(tiny_dir), "--time-limit", "-1", "--out", str(tmp_path / "o")]) == 3
    assert not (tmp_path / "o" / "solution.json").exists()


def test_geojson(tmp_path):
    inst = tiny1()
    parks = tuple(replace(p, lon=-82.5 + k * 0.01, lat=35.6) for k, p in enumerate(inst.parks))
    write_instance(tmp_path / "geo", replace(inst, parks=parks))
    out = tmp_path / "out"
    assert main(["solve", str(tmp_path / "geo"), "--out", str(out)]) == 0
    gj = json.loads((out / "selected_parks.geojson").read_text())
    assert gj["type"] == "FeatureCollection" and len(gj["features"]) == 3
    props = {f["properties"]["id"]: f["properties"] for f in gj["features"]}
    assert props["p2"] == {"id": "p2", "existing": False, "selected": True, "assigned_population": 220.0}
    assert props["p3"]["selected"] is False
    assert gj["features"][0]["geometry"] == {"type": "Point", "coordinates": [-82.5, 35.6]}


def test_external_backend(tiny_dir, tmp_path):
    inst = tiny1()
    model = build_model(inst, AccessConfig())
    known = tmp_path / "known.sol"
    known.write_text("".join(f"{n} {v!r}\n" for n, v in solve_model_enumerate(model).point.items()))
    stub = tmp_path / "stub.py"
    stub.write_text("import shutil, sys\nshutil.copyfile(sys.argv[3], sys.argv[2])\n")
    out = tmp_path / "ext"
    backend = f"external:{sys.executable} {stub} {{mps}} {{sol}} {known}"
    assert main(["solve", str(tiny_dir), "--backend", backend, "--out", str(out)]) == 0
    sol = json.loads((out / "solution.json").read_text())
    assert sol["provenance"] == "External" and sol["objective"] == pytest.approx(440.0)
    failing = f"external:{sys.executable} -c 'import sys; sys.exit(5)' {{mps}} {{sol}}"
    assert main(["solve", str(tiny_dir), "--backend", failing, "--out", str(out)]) == 3


def test_sweep(tiny_dir, tmp_path):
    out = tmp_path / "sweep"
    assert main(["sweep", str(tiny_dir), "--budgets", "0", "60", "100", "150", "--out", str(out)]) == 0
    rows = read_csv(out / "series.csv")
    assert [float(r["budget"]) for r in rows] == [0, 60, 100, 150]
    objs = [float(r["objective"]) for r in rows]
    assert objs == sorted(objs, reverse=True)
    assert len(list((out / "runs").glob("*.json"))) == 4


def test_sweep_default_grid(tmp_path):
    inst = tiny1()
    parks = tuple(replace(p, cost=p.cost * 10_000) for p in inst.parks)
    write_instance(tmp_path / "case", replace(inst, parks=parks, budget=1_000_000.0))
    out = tmp_path / "out"
    assert main(["sweep", str(tmp_path / "case"), "--out", str(out)]) == 0
    rows = read_csv(out / "series.csv")
    assert [float(r["budget"]) for r in rows] == [250_000.0 * i for i in range(13)]


def test_sweep_partial_marker(tiny_dir, tmp_path):
    out = tmp_path / "p"
    assert main(["sweep", str(tiny_dir), "--budgets", "0", "100", "--time-limit", "-1", "--out", str(out)]) == 3
    assert (out / "PARTIAL").exists()
    assert json.loads((out / "manifest.json").read_text())["complete"] is False


def test_horizon(tiny_dir, tmp_path):
    out = tmp_path / "h"
    assert main(["horizon", str(tiny_dir), "--periods", "2", "--total-budget", "100", "--out", str(out)]) == 0
    purchases = read_csv(out / "purchases.csv")
    assert purchases == [
        {"mode": "LongTerm", "period": "1", "park_id": "p2"},
        {"mode": "Myopic", "period": "2", "park_id": "p2"},
    ]
    out1 = tmp_path / "h1"
    assert main(["horizon", str(tiny_dir), "--periods", "1", "--out", str(out1)]) == 0
    rows = read_csv(out1 / "series.csv")
    assert len(rows) == 2
    strip = [{k: v for k, v in r.items() if k != "mode"} for r in rows]
    assert strip[0] == strip[1]


def test_emphasize(tiny_dir, tmp_path, capsys):
    out = tmp_path / "e"
    assert main(["emphasize", str(tiny_dir), "--group", "B", "--out", str(out)]) == 0
    rows = read_csv(out / "series.csv")
    assert len(rows) == 12 and rows[0]["run"] == "baseline"
    assert [float(r["weight"]) for r in rows[1:]] == [5.0 * i for i in range(11)]
    assert json.loads((out / "manifest.json").read_text())["threshold"] is None
    assert main(["emphasize", str(tiny_dir), "--group", "Q", "--out", str(out)]) == 2


def test_thresholds(tiny_dir, tmp_path):
    out = tmp_path / "t"
    assert main(["thresholds", str(tiny_dir), "--out", str(out)]) == 0
    rows = read_csv(out / "series.csv")
    assert [float(r["max_distance"]) for r in rows] == [0.5, 1.0, 1.5]
    assert [r["overlap_with_previous"] for r in rows] == ["", "1", "1"]


def test_export_mps(tiny_dir, tmp_path, capsys):
    a, b = tmp_path / "a.mps", tmp_path / "b.mps"
    assert main(["export-mps", str(tiny_dir), "--out", str(a)]) == 0
    assert "14 integer columns, 19 continuous columns" in capsys.readouterr().out
    assert main(["export-mps", str(tiny_dir), "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert main(["export-mps", str(tiny_dir), "--out", str(tmp_path / "missing" / "dir" / "m.mps")]) == 2


def test_usage_errors(tiny_dir):
    assert main([]) == 2
    assert main(["solve", str(tiny_dir), "--backend", "cplex"]) == 2


def test_module_entry_point(tiny_dir):
    proc = subprocess.run([sys.executable, "-m", "parkequity", "validate", str(tiny_dir)], capture_output=True)
    assert proc.returncode == 0
