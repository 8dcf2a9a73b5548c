"""Export the model as MPS and solve it through an external command.

A small Python script stands in for a MIP solver: it ignores the MPS file and
copies a precomputed solution. Any solver that writes ``name value`` lines can
be plugged in the same way. Run with ``python3 demos/external_solver.py``.
"""
import sys
import tempfile
from pathlib import Path

from parkequity import AccessConfig, build_model, read_mps, solve_model_enumerate, solve_via_external, write_mps
from parkequity.datasets import tiny1

model = build_model(tiny1(), AccessConfig())
with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)
    mps = write_mps(model, tmp / "model.mps")
    assert read_mps(mps) == model
    print(f"wrote {mps.stat().st_size} bytes, round trip exact")

    known = tmp / "known.sol"
    known.write_text("".join(f"{n} {v!r}\n" for n, v in solve_model_enumerate(model).point.items()))
    stub = tmp / "stub.py"
    stub.write_text("import shutil, sys\nshutil.copyfile(sys.argv[3], sys.argv[2])\n")

    sol = solve_via_external(model, f"{sys.executable} {stub} {{mps}} {{sol}} {known}")
    print(f"external: status={sol.status.value} objective={sol.objective:.2f} opened={sol.opened}")
