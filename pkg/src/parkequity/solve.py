"""Exact solution of park-equity models at desk scale, and external-solver bridging.

Two independent exact paths are provided:

* :func:`solve_enumerate` works on the problem data directly. It enumerates
  every affordable set of candidate parks; per set, the uncapacitated
  variant assigns each location greedily (its per-person cost does not
  depend on other locations) and the capacitated variant enumerates every
  assignment.
* :func:`solve_model_enumerate` works on any :class:`~parkequity.milp.MipModel`.
  It runs a depth-first search over the binary variables, propagating
  lower bounds of continuous variables through the rows, and evaluates each
  complete binary assignment at the least point satisfying the rows.

Real-scale instances are exported to MPS and handed to an external solver
through :func:`solve_via_external`.
"""

from __future__ import annotations

import enum
import math
import shlex
import subprocess
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .evaluate import evaluate_assignment
from .instance import AccessConfig, ObjectiveKind, ParkInstance
from .milp import (
    FEAS_TOL,
    MipModel,
    Sense,
    VarKind,
    Violation,
    build_model,
    check_solution_feasibility,
    decode_assignment,
    objective_value,
)
from .mps import write_mps

__all__ = [
    "Status",
    "Provenance",
    "Solution",
    "SolveLimits",
    "SolverError",
    "SolutionFileError",
    "InfeasibleSolutionError",
    "ExternalSolverError",
    "assign_uncapacitated",
    "solve_enumerate",
    "solve_model_enumerate",
    "read_solution_file",
    "solve_via_external",
    "EnumerationSolver",
    "ExternalSolver",
]


class Status(str, enum.Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    LIMIT_EXCEEDED = "LimitExceeded"


class Provenance(str, enum.Enum):
    DOMAIN_BRUTE_FORCE = "DomainBruteForce"
    IR_ENUMERATION = "IrEnumeration"
    EXTERNAL = "External"


@dataclass(frozen=True)
class Solution:
    """Outcome of one solve.

    For non-optimal statuses the selection fields are empty and the
    numeric fields are NaN. ``point`` holds the full model point when the
    solution came from the model (enumeration over the IR or an external
    solver).
    """

    opened: tuple[str, ...]
    assignment: Mapping[str, str]
    alpha: Mapping[str, float]
    alpha_max: float
    objective: float
    status: Status
    provenance: Provenance
    point: Mapping[str, float] | None = None
    message: str = ""

    @property
    def is_optimal(self) -> bool:
        return self.status is Status.OPTIMAL

    @classmethod
    def failed(cls, status: Status, provenance: Provenance, message: str = "") -> Solution:
        return cls((), {}, {}, math.nan, math.nan, status, provenance, None, message)


@dataclass(frozen=True)
class SolveLimits:
    """Size and time limits under which enumeration is attempted."""

    max_candidates: int = 20
    max_capacitated_candidates: int = 8
    max_locations: int = 6
    max_binaries: int = 64
    time_limit: float = 60.0


class SolverError(RuntimeError):
    pass


class SolutionFileError(SolverError):
    pass


class InfeasibleSolutionError(SolverError):
    def __init__(self, violations: Sequence[Violation]):
        self.violations = list(violations)
        shown = "; ".join(str(v) for v in self.violations[:10])
        more = f" (+{len(self.violations) - 10} more)" if len(self.violations) > 10 else ""
        super().__init__(f"solution is infeasible: {shown}{more}")


class ExternalSolverError(SolverError):
    def __init__(self, message: str, returncode: int | None = None):
        super().__init__(message)
        self.returncode = returncode


def _tol(value: float) -> float:
    return 1e-9 * max(1.0, abs(value))


def _better(obj_a: float, key_a, obj_b: float | None, key_b) -> bool:
    """Canonical order: lower objective first, then lexicographically smaller key."""
    if obj_b is None:
        return True
    tol = _tol(obj_b)
    if obj_a < obj_b - tol:
        return True
    if obj_a > obj_b + tol:
        return False
    return key_a < key_b


# --------------------------------------------------------------------------
# domain brute force


@dataclass(frozen=True)
class _DomainData:
    t: np.ndarray  # (L, R) persons
    pop: np.ndarray  # (L,)
    q: np.ndarray  # (R,)
    dist_cost: np.ndarray  # (K, L) weighted distance deviation per person
    env: np.ndarray  # (K,) weighted heat+tree deviation per person
    capacity: np.ndarray  # (K,)
    cap_coef: float
    cost: np.ndarray  # (K,)
    existing: tuple[int, ...]
    candidates: tuple[int, ...]
    budget: float
    capacitated: bool
    min_max: bool


def _domain_data(inst: ParkInstance, cfg: AccessConfig) -> _DomainData:
    ddev = np.maximum(0.0, inst.distance - inst.max_distance)
    t = inst.population_matrix()
    return _DomainData(
        t=t,
        pop=t.sum(axis=1),
        q=cfg.q_vector(inst.races),
        dist_cost=cfg.n_dist * cfg.w_dist_plus * ddev,
        env=np.array([cfg.env_cost(p) for p in inst.parks], dtype=float),
        capacity=np.array([p.capacity for p in inst.parks], dtype=float),
        cap_coef=cfg.n_cap * cfg.w_cap_plus,
        cost=np.array([p.cost for p in inst.parks], dtype=float),
        existing=inst.existing_indices,
        candidates=inst.candidate_indices,
        budget=inst.budget,
        capacitated=cfg.capacitated,
        min_max=cfg.objective_kind is ObjectiveKind.MIN_MAX,
    )


def _aggregate(data: _DomainData, alpha: np.ndarray) -> np.ndarray:
    if alpha.shape[-1] == 0:
        return np.zeros(alpha.shape[:-1])
    return alpha.max(axis=-1) if data.min_max else alpha.sum(axis=-1)


def assign_uncapacitated(inst: ParkInstance, cfg: AccessConfig, opened: Iterable[str]) -> dict[str, str]:
    """Send each location to its cheapest opened park, per person.

    The per-person cost combines the weighted distance deviation with the
    park's heat and tree deviations; capacity plays no role. Ties go to the
    park earliest in canonical order.
    """
    opened = set(opened)
    if not opened:
        raise ValueError("no opened park to assign to")
    unknown = opened - set(inst.park_ids)
    if unknown:
        raise KeyError(f"unknown park(s): {sorted(unknown)}")
    data = _domain_data(inst, cfg)
    idx = [i for i, p in enumerate(inst.parks) if p.id in opened]
    per_person = data.dist_cost[idx, :] + data.env[idx, None]
    choice = np.argmin(per_person, axis=0)
    return {loc.id: inst.parks[idx[c]].id for loc, c in zip(inst.locations, choice)}


def _subset_masks(data: _DomainData) -> list[int]:
    """Affordable candidate subsets as bitmasks over ``data.candidates``."""
    spend = np.zeros(1)
    for k in data.candidates:
        # Doubling keeps entry i equal to the spend of bitmask i.
        spend = np.concatenate([spend, spend + data.cost[k]])
    return np.flatnonzero(spend <= data.budget + FEAS_TOL).tolist()


def _opened_indices(data: _DomainData, mask: int) -> tuple[int, ...]:
    chosen = [c for i, c in enumerate(data.candidates) if mask >> i & 1]
    return tuple(sorted(set(data.existing) | set(chosen)))


def _open_matrix(data: _DomainData, masks: Sequence[int]) -> np.ndarray:
    K = data.capacity.shape[0]
    open_mat = np.zeros((len(masks), K), dtype=bool)
    open_mat[:, list(data.existing)] = True
    arr = np.asarray(masks, dtype=np.int64)
    for i, k in enumerate(data.candidates):
        open_mat[:, k] = (arr >> i) & 1 == 1
    return open_mat


def _best_uncap(data: _DomainData, masks: Sequence[int], deadline: float):
    if not masks:
        return None, False
    K, L = data.dist_cost.shape
    per_person = data.dist_cost + data.env[:, None]  # (K, L)
    tq = data.t * data.q[None, :]  # (L, R)
    chunk = max(1, 2_000_000 // max(1, K * L))
    best = None
    for start in range(0, len(masks), chunk):
        if time.monotonic() > deadline:
            return best, True
        block = masks[start:start + chunk]
        open_mat = _open_matrix(data, block)
        feasible = open_mat.any(axis=1) | (L == 0)
        if not feasible.any():
            continue
        masked = np.where(open_mat[:, :, None], per_person[None, :, :], np.inf)  # (S, K, L)
        choice = np.argmin(masked, axis=1)  # (S, L)
        cost = np.take_along_axis(masked, choice[:, None, :], axis=1)[:, 0, :]
        cost = np.where(np.isfinite(cost), cost, 0.0)
        obj = np.where(feasible, _aggregate(data, cost @ tq), np.inf)
        lo = float(obj.min())
        for s in np.flatnonzero(obj <= lo + _tol(lo)):
            key = (_opened_indices(data, block[s]), tuple(int(c) for c in choice[s]))
            if best is None or _better(float(obj[s]), key, best[0], best[1]):
                best = (float(obj[s]), key)
    return best, False


def _cap_objectives(data: _DomainData, assign: np.ndarray) -> np.ndarray:
    """Objective of each row of ``assign`` (park index per location)."""
    n, L = assign.shape
    K = data.capacity.shape[0]
    rows = np.arange(n)
    load = np.zeros((n, K))
    for l in range(L):
        np.add.at(load, (rows, assign[:, l]), data.pop[l])
    over = np.maximum(0.0, load - data.capacity[None, :]) if data.capacitated else np.zeros_like(load)
    cols = np.arange(L)[None, :]
    cost = data.dist_cost[assign, cols] + data.cap_coef * np.take_along_axis(over, assign, axis=1) + data.env[assign]
    alpha = (cost @ data.t) * data.q[None, :]
    return _aggregate(data, alpha)


def _best_cap(data: _DomainData, masks: Sequence[int], deadline: float):
    L = data.pop.shape[0]
    best = None
    chunk = 50_000
    for mask in masks:
        opened = _opened_indices(data, mask)
        if L and not opened:
            continue
        base = len(opened)
        total = base ** L
        opened_arr = np.array(opened, dtype=np.int64)
        for start in range(0, total, chunk):
            if time.monotonic() > deadline:
                return best, True
            numbers = np.arange(start, min(total, start + chunk), dtype=np.int64)
            digits = np.empty((numbers.size, L), dtype=np.int64)
            rest = numbers.copy()
            for l in range(L - 1, -1, -1):
                digits[:, l] = rest % base
                rest //= base
            assign = opened_arr[digits] if L else digits
            obj = _cap_objectives(data, assign)
            lo = float(obj.min())
            first = int(np.flatnonzero(obj <= lo + _tol(lo))[0])
            key = (opened, tuple(int(v) for v in assign[first]))
            if best is None or _better(float(obj[first]), key, best[0], best[1]):
                best = (float(obj[first]), key)
    return best, False


def _search_block(args):
    data, masks, deadline = args
    if data.capacitated:
        return _best_cap(data, masks, deadline)
    return _best_uncap(data, masks, deadline)


# Subsets per work unit. Capacitated subsets each carry a full assignment
# enumeration, so they are split finer.
_BLOCK_UNCAP = 256
_BLOCK_CAP = 16


def solve_enumerate(
    inst: ParkInstance,
    cfg: AccessConfig,
    limits: SolveLimits | None = None,
    jobs: int = 1,
) -> Solution:
    """Exact optimum by enumerating every affordable candidate set.

    Among optima of equal objective (within 1e-9 relative), the smallest
    opened set in lexicographic canonical order wins, then the smallest
    assignment. Subsets are split into fixed blocks; with ``jobs > 1`` the
    blocks are searched in worker processes and merged in block order, so the
    result never depends on ``jobs``.
    """
    limits = limits or SolveLimits()
    prov = Provenance.DOMAIN_BRUTE_FORCE
    n_cand = len(inst.candidate_indices)
    if cfg.capacitated:
        if n_cand > limits.max_capacitated_candidates or len(inst.locations) > limits.max_locations:
            return Solution.failed(
                Status.LIMIT_EXCEEDED, prov,
                f"capacitated enumeration limited to {limits.max_capacitated_candidates} candidates "
                f"and {limits.max_locations} locations (got {n_cand} and {len(inst.locations)})",
            )
    elif n_cand > limits.max_candidates:
        return Solution.failed(
            Status.LIMIT_EXCEEDED, prov, f"enumeration limited to {limits.max_candidates} candidates (got {n_cand})"
        )

    data = _domain_data(inst, cfg)
    deadline = time.monotonic() + limits.time_limit
    masks = _subset_masks(data)
    size = _BLOCK_CAP if cfg.capacitated else _BLOCK_UNCAP
    blocks = [(data, masks[i:i + size], deadline) for i in range(0, len(masks), size)]
    if jobs > 1 and len(blocks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_search_block, blocks))
    else:
        results = [_search_block(b) for b in blocks]

    best = None
    for found, timed_out in results:
        if timed_out:
            return Solution.failed(Status.LIMIT_EXCEEDED, prov, f"time limit of {limits.time_limit} s exceeded")
        if found is not None and (best is None or _better(found[0], found[1], best[0], best[1])):
            best = found
    if best is None:
        return Solution.failed(Status.INFEASIBLE, prov, "no affordable park set can serve every location")

    opened_idx, assign_idx = best[1]
    opened = tuple(inst.parks[i].id for i in opened_idx)
    assignment = {loc.id: inst.parks[k].id for loc, k in zip(inst.locations, assign_idx)}
    return _solution_from_domain(inst, cfg, opened, assignment, prov)


def _solution_from_domain(inst, cfg, opened, assignment, prov, point=None) -> Solution:
    report = evaluate_assignment(inst, cfg, opened, assignment)
    objective = report.alpha_max if cfg.objective_kind is ObjectiveKind.MIN_MAX else report.total
    return Solution(
        opened=tuple(opened),
        assignment=dict(assignment),
        alpha=dict(report.alpha),
        alpha_max=report.alpha_max,
        objective=objective,
        status=Status.OPTIMAL,
        provenance=prov,
        point=point,
    )


# --------------------------------------------------------------------------
# enumeration over the model


class _Propagator:
    """Lower-bound propagation over ``sum(a * v) >= rhs`` rows.

    Each model row becomes one (or, for equalities, two) rows in this form.
    Only lower bounds of variables are ever raised: binaries are fixed by
    the search or forced by a row, continuous variables get the smallest
    value every completion must reach. A row whose largest attainable
    activity is below its right-hand side is a conflict.
    """

    def __init__(self, model: MipModel, tol: float = FEAS_TOL):
        self.tol = tol
        self.names = model.variable_names()
        index = {n: i for i, n in enumerate(self.names)}
        self.is_bin = [v.kind is VarKind.BINARY for v in model.variables]
        self.lo = [v.lb for v in model.variables]
        self.hi = [v.ub for v in model.variables]
        rows: list[tuple[list[tuple[int, float]], float]] = []
        for c in model.constraints:
            terms = [(index[v], a) for v, a in c.coeffs]
            if c.sense in (Sense.GE, Sense.EQ):
                rows.append((terms, c.rhs))
            if c.sense in (Sense.LE, Sense.EQ):
                rows.append(([(j, -a) for j, a in terms], -c.rhs))
        self.rows = rows
        self.rows_of: list[list[int]] = [[] for _ in self.names]
        for r, (terms, _) in enumerate(rows):
            for j, _a in terms:
                self.rows_of[j].append(r)
        self.trail: list[tuple[int, float, float]] = []

    def set_bounds(self, j: int, lo: float, hi: float) -> None:
        self.trail.append((j, self.lo[j], self.hi[j]))
        self.lo[j], self.hi[j] = lo, hi

    def undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            j, lo, hi = self.trail.pop()
            self.lo[j], self.hi[j] = lo, hi

    def propagate(self, queue: Iterable[int]) -> bool:
        """Process rows until no bound changes; False on conflict."""
        lo, hi, is_bin, tol = self.lo, self.hi, self.is_bin, self.tol
        pending = list(dict.fromkeys(queue))
        queued = set(pending)
        budget = 50 * (len(self.rows) + 1)
        while pending:
            budget -= 1
            if budget < 0:
                break
            r = pending.pop()
            queued.discard(r)
            terms, rhs = self.rows[r]
            finite = 0.0
            n_inf = 0
            inf_var = -1
            for j, a in terms:
                bound = hi[j] if a > 0 else lo[j]
                if math.isinf(bound):
                    n_inf += 1
                    inf_var = j
                else:
                    finite += a * bound
            if n_inf == 0 and finite < rhs - tol:
                return False
            if n_inf > 1:
                continue
            changed = []
            for j, a in terms:
                if n_inf == 1 and j != inf_var:
                    continue
                if is_bin[j]:
                    if lo[j] == hi[j]:
                        continue
                    # Setting this binary to its "bad" value would make the row unattainable.
                    if a > 0 and finite - a < rhs - tol:
                        self.set_bounds(j, 1.0, 1.0)
                        changed.append(j)
                    elif a < 0 and finite + a < rhs - tol:
                        self.set_bounds(j, 0.0, 0.0)
                        changed.append(j)
                    continue
                if a <= 0:
                    continue
                rest = finite if n_inf == 1 else finite - a * hi[j]
                new_lo = (rhs - rest) / a
                if new_lo > lo[j] + 1e-9 * max(1.0, abs(lo[j])):
                    if new_lo > hi[j] + tol:
                        return False
                    self.set_bounds(j, new_lo, hi[j])
                    changed.append(j)
            for j in changed:
                for r2 in self.rows_of[j]:
                    if r2 not in queued:
                        queued.add(r2)
                        pending.append(r2)
        return True


def solve_model_enumerate(
    model: MipModel,
    limits: SolveLimits | None = None,
    on_point: Callable[[dict[str, float]], None] | None = None,
) -> Solution:
    """Exact optimum of ``model`` by search over its binary variables.

    Every assignment of the binaries is covered: branches are cut only when
    bound propagation proves a row unattainable. At each complete binary
    assignment the continuous variables take the least values the rows
    force on them; that point is checked against every row and, if
    feasible, scored. With nonnegative objective coefficients on continuous
    variables this point is optimal for its binary assignment. All models
    from :func:`~parkequity.milp.build_model` pin their continuous variables
    to such least values.

    ``on_point`` is called with every feasible point found.
    """
    limits = limits or SolveLimits()
    prov = Provenance.IR_ENUMERATION
    if model.n_binary > limits.max_binaries:
        return Solution.failed(
            Status.LIMIT_EXCEEDED, prov, f"{model.n_binary} binaries exceed the limit of {limits.max_binaries}"
        )
    for v, c in model.objective:
        if model.variable(v).kind is VarKind.CONTINUOUS and c < 0:
            raise ValueError(f"objective coefficient of continuous {v} is negative; least-point evaluation needs >= 0")

    prop = _Propagator(model)
    binaries = [j for j, b in enumerate(prop.is_bin) if b]
    deadline = time.monotonic() + limits.time_limit
    names = prop.names
    best: list = [None, None]  # objective, point
    timed_out = False

    def leaf() -> None:
        point = {names[j]: prop.lo[j] for j in range(len(names))}
        if any(math.isinf(v) for v in point.values()):
            return
        if check_solution_feasibility(model, point):
            return
        if on_point is not None:
            on_point(point)
        obj = objective_value(model, point)
        if best[0] is None or obj < best[0] - _tol(best[0]):
            best[0], best[1] = obj, point

    def dfs(pos: int) -> None:
        nonlocal timed_out
        if timed_out:
            return
        if time.monotonic() > deadline:
            timed_out = True
            return
        while pos < len(binaries) and prop.lo[binaries[pos]] == prop.hi[binaries[pos]]:
            pos += 1
        if pos == len(binaries):
            leaf()
            return
        j = binaries[pos]
        for value in (0.0, 1.0):
            if not prop.lo[j] <= value <= prop.hi[j]:
                continue
            mark = len(prop.trail)
            prop.set_bounds(j, value, value)
            if prop.propagate(prop.rows_of[j]):
                dfs(pos + 1)
            prop.undo(mark)

    if prop.propagate(range(len(prop.rows))):
        dfs(0)
    if timed_out:
        return Solution.failed(Status.LIMIT_EXCEEDED, prov, f"time limit of {limits.time_limit} s exceeded")
    if best[0] is None:
        return Solution.failed(Status.INFEASIBLE, prov, "no binary assignment admits a feasible point")
    return _solution_from_point(model, best[1], prov)


def _solution_from_point(model: MipModel, point: Mapping[str, float], prov: Provenance) -> Solution:
    opened, assignment = decode_assignment(model, point)
    alpha = {n[6:-1]: float(point[n]) for n in model.variable_names() if n.startswith("alpha(") and n.endswith(")")}
    return Solution(
        opened=opened,
        assignment=assignment,
        alpha=alpha,
        alpha_max=max(alpha.values()) if alpha else 0.0,
        objective=objective_value(model, point),
        status=Status.OPTIMAL,
        provenance=prov,
        point=dict(point),
    )


# --------------------------------------------------------------------------
# external solvers


def read_solution_file(model: MipModel, path: str | Path) -> Solution:
    """Load a ``name value`` solution file and verify it against ``model``.

    Unlisted variables are 0 and ``#`` starts a comment. The objective is
    recomputed from the model; any objective value in the file is ignored.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SolutionFileError(f"cannot read solution file {path}: {exc}") from None
    known = set(model.variable_names())
    point = {n: 0.0 for n in model.variable_names()}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise SolutionFileError(f"{path.name} line {lineno}: expected 'name value', got {raw!r}")
        name, value = tokens
        if name not in known:
            raise SolutionFileError(f"{path.name} line {lineno}: unknown variable {name!r}")
        try:
            point[name] = float(value)
        except ValueError:
            raise SolutionFileError(f"{path.name} line {lineno}: bad value {value!r}") from None
    violations = check_solution_feasibility(model, point)
    if violations:
        raise InfeasibleSolutionError(violations)
    return _solution_from_point(model, point, Provenance.EXTERNAL)


def solve_via_external(model: MipModel, command_template: str, workdir: str | Path | None = None) -> Solution:
    """Solve ``model`` with an external command.

    ``command_template`` must contain ``{mps}`` and ``{sol}``; they are
    replaced by the (shell-quoted) paths of the exported model and the
    solution file the command is expected to write.
    """
    if "{mps}" not in command_template or "{sol}" not in command_template:
        raise ValueError("command template needs both {mps} and {sol} placeholders")
    with tempfile.TemporaryDirectory() as tmp:
        root = Path(workdir) if workdir is not None else Path(tmp)
        root.mkdir(parents=True, exist_ok=True)
        mps_path = write_mps(model, root / "model.mps")
        sol_path = root / "model.sol"
        if sol_path.exists():
            sol_path.unlink()
        command = command_template.replace("{mps}", shlex.quote(str(mps_path))).replace(
            "{sol}", shlex.quote(str(sol_path))
        )
        try:
            proc = subprocess.run(shlex.split(command), capture_output=True, text=True)
        except OSError as exc:
            raise ExternalSolverError(f"cannot run external solver: {exc}") from None
        if proc.returncode != 0:
            raise ExternalSolverError(
                f"external solver exited with status {proc.returncode}: {proc.stderr.strip()[:500]}",
                proc.returncode,
            )
        if not sol_path.is_file():
            raise ExternalSolverError("external solver wrote no solution file")
        return read_solution_file(model, sol_path)


@dataclass
class EnumerationSolver:
    """Instance-level solver backed by :func:`solve_enumerate`."""

    limits: SolveLimits = field(default_factory=SolveLimits)
    jobs: int = 1

    def __call__(self, inst: ParkInstance, cfg: AccessConfig) -> Solution:
        return solve_enumerate(inst, cfg, self.limits, self.jobs)


@dataclass
class ExternalSolver:
    """Instance-level solver that exports MPS and runs ``command_template``."""

    command_template: str
    workdir: str | Path | None = None

    def __call__(self, inst: ParkInstance, cfg: AccessConfig) -> Solution:
        return solve_via_external(build_model(inst, cfg), self.command_template, self.workdir)
