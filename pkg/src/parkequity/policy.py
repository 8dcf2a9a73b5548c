"""Policy analyses built from repeated exact solves.

Each analysis takes a ``solver``: any callable ``(ParkInstance, AccessConfig)
-> Solution``. The default is :class:`~parkequity.solve.EnumerationSolver`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import Callable, Sequence

from .evaluate import DeviationReport, evaluate_assignment
from .instance import AccessConfig, ParkInstance
from .solve import EnumerationSolver, Solution

__all__ = [
    "SolverFn",
    "SweepPoint",
    "SweepSeries",
    "PlanMode",
    "PeriodRecord",
    "PlanTimeline",
    "CalibrationResult",
    "ThresholdPoint",
    "AnalysisError",
    "DEFAULT_BUDGETS",
    "DEFAULT_EMPHASIS_GRID",
    "DEFAULT_THRESHOLDS",
    "budget_sweep",
    "plan_horizon",
    "calibrate_emphasis",
    "threshold_sensitivity",
    "summarize",
]

SolverFn = Callable[[ParkInstance, AccessConfig], Solution]

DEFAULT_BUDGETS = tuple(float(b) for b in range(0, 3_000_001, 250_000))
DEFAULT_EMPHASIS_GRID = tuple(float(g) for g in range(0, 51, 5))
DEFAULT_THRESHOLDS = (0.5, 1.0, 1.5)


class AnalysisError(RuntimeError):
    """A solve inside an analysis did not reach optimality."""

    def __init__(self, message: str, solution: Solution | None = None, partial=None):
        super().__init__(message)
        self.solution = solution
        self.partial = partial


def _default_solver(solver: SolverFn | None) -> SolverFn:
    return solver if solver is not None else EnumerationSolver()


def summarize(inst: ParkInstance, cfg: AccessConfig, solution: Solution) -> DeviationReport:
    """Recompute the full deviation report of an optimal ``solution``.

    The report's ``composition()`` gives category percentages and
    ``group_shares()`` the per-group share of total weighted deviations.
    """
    if not solution.is_optimal:
        raise AnalysisError(f"cannot summarize a {solution.status.value} solution: {solution.message}", solution)
    return evaluate_assignment(inst, cfg, solution.opened, solution.assignment)


# --------------------------------------------------------------------------
# budget sweep


@dataclass(frozen=True)
class SweepPoint:
    budget: float
    solution: Solution
    report: DeviationReport


@dataclass(frozen=True)
class SweepSeries:
    """Solves over increasing budgets.

    ``complete`` is False when a solve failed; ``points`` then holds the
    budgets solved before the failure and ``failure`` the failed solve.
    """

    points: tuple[SweepPoint, ...]
    complete: bool = True
    failure: Solution | None = None

    @property
    def budgets(self) -> tuple[float, ...]:
        return tuple(p.budget for p in self.points)

    @property
    def objectives(self) -> tuple[float, ...]:
        return tuple(p.solution.objective for p in self.points)


def _strictly_increasing(values: Sequence[float], what: str) -> None:
    if len(values) == 0:
        raise ValueError(f"{what} must be nonempty")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ValueError(f"{what} must be strictly increasing")


def budget_sweep(
    inst: ParkInstance,
    cfg: AccessConfig,
    budgets: Sequence[float] = DEFAULT_BUDGETS,
    solver: SolverFn | None = None,
) -> SweepSeries:
    """Solve once per budget.

    Stops at the first solve that does not reach optimality and returns the
    truncated series.
    """
    budgets = [float(b) for b in budgets]
    _strictly_increasing(budgets, "budgets")
    solver = _default_solver(solver)
    points = []
    for b in budgets:
        sol = solver(inst.with_budget(b), cfg)
        if not sol.is_optimal:
            return SweepSeries(tuple(points), complete=False, failure=sol)
        points.append(SweepPoint(b, sol, summarize(inst, cfg, sol)))
    return SweepSeries(tuple(points))


# --------------------------------------------------------------------------
# planning horizon


class PlanMode(str, enum.Enum):
    LONG_TERM = "LongTerm"
    MYOPIC = "Myopic"


@dataclass(frozen=True)
class PeriodRecord:
    period: int
    budget: float
    purchased: tuple[str, ...]
    spent: float
    carryover: float
    opened: tuple[str, ...]
    report: DeviationReport
    solution: Solution


@dataclass(frozen=True)
class PlanTimeline:
    mode: PlanMode
    total_budget: float
    periods: tuple[PeriodRecord, ...]
    final: Solution

    @property
    def total_spent(self) -> float:
        return math.fsum(p.spent for p in self.periods)


def plan_horizon(
    inst: ParkInstance,
    cfg: AccessConfig,
    total_budget: float,
    periods: int,
    mode: PlanMode | str,
    solver: SolverFn | None = None,
) -> PlanTimeline:
    """Plan purchases over ``periods`` periods.

    Long-term planning solves once with the whole budget. Myopic planning
    gives each period an equal share plus whatever earlier periods left
    unspent; each period's purchases become existing parks for the next.
    The final solution is the last period's solve, evaluated on the
    original instance.

    Raises
    ------
    AnalysisError
        A period's solve did not reach optimality; ``partial`` holds the
        completed period records.
    """
    if periods < 1:
        raise ValueError("periods must be at least 1")
    mode = PlanMode(mode)
    solver = _default_solver(solver)
    cost = {p.id: p.cost for p in inst.parks}

    if mode is PlanMode.LONG_TERM or periods == 1:
        sol = solver(inst.with_budget(total_budget), cfg)
        if not sol.is_optimal:
            raise AnalysisError(f"solve failed: {sol.message}", sol, ())
        purchased = tuple(k for k in sol.opened if not inst.parks[inst.park_index(k)].existing)
        spent = math.fsum(cost[k] for k in purchased)
        record = PeriodRecord(1, float(total_budget), purchased, spent, float(total_budget) - spent,
                              sol.opened, summarize(inst, cfg, sol), sol)
        return PlanTimeline(mode, float(total_budget), (record,), sol)

    allocation = float(total_budget) / periods
    current = inst
    carryover = 0.0
    records: list[PeriodRecord] = []
    sol = None
    for t in range(1, periods + 1):
        budget = allocation + carryover
        sol = solver(current.with_budget(budget), cfg)
        if not sol.is_optimal:
            raise AnalysisError(f"period {t} solve failed: {sol.message}", sol, tuple(records))
        owned = {p.id for p in current.parks if p.existing}
        purchased = tuple(k for k in sol.opened if k not in owned)
        spent = math.fsum(cost[k] for k in purchased)
        carryover = budget - spent
        current = current.with_existing(purchased)
        records.append(
            PeriodRecord(t, budget, purchased, spent, carryover, sol.opened, summarize(inst, cfg, sol), sol)
        )
    return PlanTimeline(mode, float(total_budget), tuple(records), sol)


# --------------------------------------------------------------------------
# strategic emphasis


@dataclass(frozen=True)
class CalibrationResult:
    group: str
    grid: tuple[float, ...]
    baseline: Solution
    solutions: tuple[Solution, ...]
    threshold: float | None

    @property
    def opened_sets(self) -> tuple[tuple[str, ...], ...]:
        return tuple(s.opened for s in self.solutions)


def calibrate_emphasis(
    inst: ParkInstance,
    cfg: AccessConfig,
    group: str,
    grid: Sequence[float] = DEFAULT_EMPHASIS_GRID,
    solver: SolverFn | None = None,
) -> CalibrationResult:
    """Find the smallest emphasis on ``group`` that changes the opened set.

    The baseline solves with every emphasis 1. Each grid weight ``g`` solves
    with ``group`` at ``g`` and every other group at 1; ``g = 0`` removes the
    group from the objective. Only opened sets are compared.
    """
    if group not in inst.races:
        raise ValueError(f"unknown group {group!r}; groups are {list(inst.races)}")
    grid = tuple(float(g) for g in grid)
    _strictly_increasing(grid, "grid")
    if any(g < 0 for g in grid):
        raise ValueError("grid weights must be nonnegative")
    solver = _default_solver(solver)
    ones = {r: 1.0 for r in inst.races}

    baseline = solver(inst, replace(cfg, emphasis=ones, default_emphasis=1.0))
    if not baseline.is_optimal:
        raise AnalysisError(f"baseline solve failed: {baseline.message}", baseline)
    solutions = []
    threshold = None
    for g in grid:
        sol = solver(inst, replace(cfg, emphasis={**ones, group: g}, default_emphasis=1.0))
        if not sol.is_optimal:
            raise AnalysisError(f"solve at weight {g} failed: {sol.message}", sol, tuple(solutions))
        solutions.append(sol)
        if threshold is None and set(sol.opened) != set(baseline.opened):
            threshold = g
    return CalibrationResult(group, grid, baseline, tuple(solutions), threshold)


# --------------------------------------------------------------------------
# distance threshold sensitivity


@dataclass(frozen=True)
class ThresholdPoint:
    max_distance: float
    solution: Solution
    report: DeviationReport
    overlap_with_previous: int | None


def threshold_sensitivity(
    inst: ParkInstance,
    cfg: AccessConfig,
    m_values: Sequence[float] = DEFAULT_THRESHOLDS,
    solver: SolverFn | None = None,
) -> list[ThresholdPoint]:
    """Solve once per distance threshold.

    ``overlap_with_previous`` counts parks opened at both this threshold and
    the one before it (``None`` for the first).
    """
    m_values = [float(m) for m in m_values]
    if not m_values:
        raise ValueError("m_values must be nonempty")
    if any(not m > 0 for m in m_values):
        raise ValueError("distance thresholds must be positive")
    solver = _default_solver(solver)
    out: list[ThresholdPoint] = []
    for m in m_values:
        local = inst.with_max_distance(m)
        sol = solver(local, cfg)
        if not sol.is_optimal:
            raise AnalysisError(f"solve at threshold {m} failed: {sol.message}", sol, tuple(out))
        overlap = len(set(sol.opened) & set(out[-1].solution.opened)) if out else None
        out.append(ThresholdPoint(m, sol, summarize(local, cfg, sol), overlap))
    return out
