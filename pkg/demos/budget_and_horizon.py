"""Budget sweep on a random instance, then long-term versus myopic acquisition plans.

Run with ``python3 demos/budget_and_horizon.py``.
"""
import numpy as np

from parkequity import AccessConfig, PlanMode, budget_sweep, plan_horizon
from parkequity.datasets import random_instance

rng = np.random.default_rng(7)
inst = random_instance(rng, n_existing=1, n_candidates=6, n_locations=4, n_races=2)
total_cost = sum(p.cost for p in inst.parks)
cfg = AccessConfig()

budgets = np.linspace(0.0, total_cost, 7).round(2)
series = budget_sweep(inst, cfg, budgets)
print("budget      objective  opened")
for point in series.points:
    print(f"{point.budget:9.2f}  {point.solution.objective:10.3f}  {point.solution.opened}")

total = 0.5 * total_cost
for mode in PlanMode:
    plan = plan_horizon(inst, cfg, total, periods=4, mode=mode)
    print(f"\n{mode.value}: final objective {plan.final.objective:.3f}, spent {plan.total_spent:.2f} of {total:.2f}")
    for rec in plan.periods:
        print(f"  period {rec.period}: budget {rec.budget:8.2f} bought {rec.purchased or '-'}"
              f" carryover {rec.carryover:8.2f}")
