"""Solve a three-park toy instance and inspect the deviation breakdown.

Run with ``python3 demos/quickstart.py``.
"""
from parkequity import AccessConfig, ObjectiveKind, build_model, solve_enumerate, solve_model_enumerate, summarize
from parkequity.datasets import tiny1

inst = tiny1()
print(f"{len(inst.parks)} parks, {len(inst.locations)} locations, budget {inst.budget:g}")

for kind in ObjectiveKind:
    for capacitated in (True, False):
        cfg = AccessConfig(objective_kind=kind, capacitated=capacitated)
        sol = solve_enumerate(inst, cfg)
        label = f"{kind.value:8s} {'cap' if capacitated else 'uncap':5s}"
        print(f"{label} objective={sol.objective:8.2f} opened={sol.opened} assignment={dict(sol.assignment)}")

# Cross-check the direct search against the linearized model.
cfg = AccessConfig()
direct = solve_enumerate(inst, cfg)
via_model = solve_model_enumerate(build_model(inst, cfg))
assert abs(direct.objective - via_model.objective) <= 1e-9 * max(1.0, direct.objective)
print(f"model oracle agrees: {via_model.objective:.2f}")

report = summarize(inst, cfg, direct)
print("per-group alpha:", {r: round(a, 2) for r, a in report.alpha.items()})
print("composition (%):", {c: round(v, 1) for c, v in report.composition().items()})
print("park load:", dict(report.park_load))
