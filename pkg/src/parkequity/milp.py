"""Solver-agnostic mixed-integer model of park selection and assignment.

The model selects parks ``y(k)``, assigns each resident location to one
opened park ``x(k,l)``, and measures per-group weighted deviations
``alpha(r)`` from good access. The distance slack ``dplus(l)`` and park
overcrowding ``aplus(k)`` are pinned to their true values by indicator
variables (``udist``, ``ucap``) and big-M product linearizations, and the
person-experienced overcrowding term uses ``pi_cap(k,l) = aplus(k) * x(k,l)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .instance import AccessConfig, ObjectiveKind, ParkInstance

__all__ = [
    "VarKind",
    "Sense",
    "Variable",
    "Constraint",
    "MipModel",
    "ModelBuilder",
    "BigM",
    "Violation",
    "FEAS_TOL",
    "compute_big_m",
    "build_model",
    "canonical_lift",
    "check_solution_feasibility",
    "objective_value",
    "decode_assignment",
]

FEAS_TOL = 1e-6


class VarKind(str, enum.Enum):
    BINARY = "binary"
    CONTINUOUS = "continuous"


class Sense(str, enum.Enum):
    LE = "<="
    EQ = "="
    GE = ">="


@dataclass(frozen=True)
class Variable:
    name: str
    kind: VarKind
    lb: float = 0.0
    ub: float = math.inf


@dataclass(frozen=True)
class Constraint:
    name: str
    coeffs: tuple[tuple[str, float], ...]
    sense: Sense
    rhs: float

    def activity(self, point: Mapping[str, float]) -> float:
        return math.fsum(c * point[v] for v, c in self.coeffs)

    def residual(self, point: Mapping[str, float]) -> float:
        """Amount by which the constraint is violated at ``point`` (0 if satisfied)."""
        lhs = self.activity(point)
        if self.sense is Sense.LE:
            return max(0.0, lhs - self.rhs)
        if self.sense is Sense.GE:
            return max(0.0, self.rhs - lhs)
        return abs(lhs - self.rhs)


@dataclass(frozen=True)
class MipModel:
    """Minimization model: ``objective_constant + sum(c * v for v, c in objective)``.

    Coefficient lists are stored in variable declaration order with zeros
    removed, which makes models comparable with ``==`` after an MPS round trip.
    """

    name: str
    variables: tuple[Variable, ...]
    constraints: tuple[Constraint, ...]
    objective: tuple[tuple[str, float], ...]
    objective_constant: float = 0.0

    def variable_names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    def variable(self, name: str) -> Variable:
        for v in self.variables:
            if v.name == name:
                return v
        raise KeyError(name)

    def constraint(self, name: str) -> Constraint:
        for c in self.constraints:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def n_binary(self) -> int:
        return sum(v.kind is VarKind.BINARY for v in self.variables)

    @property
    def n_continuous(self) -> int:
        return sum(v.kind is VarKind.CONTINUOUS for v in self.variables)


class ModelBuilder:
    """Accumulates variables and constraints, then freezes them into a ``MipModel``."""

    def __init__(self, name: str = "model"):
        self.name = name
        self._vars: list[Variable] = []
        self._index: dict[str, int] = {}
        self._rows: list[Constraint] = []
        self._row_names: set[str] = set()
        self._objective: dict[str, float] = {}
        self.objective_constant = 0.0

    def add_var(self, name: str, kind: VarKind | str, lb: float = 0.0, ub: float = math.inf) -> str:
        if name in self._index:
            raise ValueError(f"duplicate variable {name!r}")
        kind = VarKind(kind)
        if kind is VarKind.BINARY:
            lb, ub = max(0.0, lb), min(1.0, ub)
        self._index[name] = len(self._vars)
        self._vars.append(Variable(name, kind, float(lb), float(ub)))
        return name

    def _normalize(self, terms: Iterable[tuple[str, float]]) -> tuple[tuple[str, float], ...]:
        merged: dict[str, float] = {}
        for var, coef in terms:
            if var not in self._index:
                raise KeyError(f"unknown variable {var!r}")
            merged[var] = merged.get(var, 0.0) + float(coef)
        ordered = sorted(merged.items(), key=lambda item: self._index[item[0]])
        return tuple((v, c) for v, c in ordered if c != 0.0)

    def add_constraint(self, name: str, terms: Iterable[tuple[str, float]], sense: Sense | str, rhs: float) -> None:
        if name in self._row_names:
            raise ValueError(f"duplicate constraint {name!r}")
        self._row_names.add(name)
        rhs = float(rhs)
        self._rows.append(Constraint(name, self._normalize(terms), Sense(sense), rhs + 0.0))

    def set_objective(self, terms: Iterable[tuple[str, float]], constant: float = 0.0) -> None:
        self._objective = dict(self._normalize(terms))
        self.objective_constant = float(constant)

    def build(self) -> MipModel:
        objective = tuple((v.name, self._objective[v.name]) for v in self._vars if v.name in self._objective)
        return MipModel(self.name, tuple(self._vars), tuple(self._rows), objective, self.objective_constant + 0.0)


@dataclass(frozen=True)
class BigM:
    mu_cap_plus: float
    mu_maxdist: float
    mu_maxcap: float


def compute_big_m(inst: ParkInstance) -> BigM:
    """Tightest safe big-M values derivable from the instance.

    No distance exceeds the largest entry of the matrix, and no park can
    carry (or be overcrowded by) more than the whole population.
    """
    max_dist = float(inst.distance.max()) if inst.distance.size else 0.0
    total = float(inst.population_matrix().sum())
    return BigM(mu_cap_plus=total, mu_maxdist=max_dist, mu_maxcap=total)


def _y(k: str) -> str:
    return f"y({k})"


def _x(k: str, l: str) -> str:
    return f"x({k},{l})"


def build_model(inst: ParkInstance, cfg: AccessConfig, big_m: BigM | None = None) -> MipModel:
    """Emit the full linearized model for ``inst`` under ``cfg``.

    The distance term of each location enters ``alpha(r)`` once (the
    assignment row makes exactly one ``x(k,l)`` active per location), not
    once per park.
    """
    mu = big_m or compute_big_m(inst)
    parks, locs, races = inst.park_ids, inst.location_ids, inst.races
    t = inst.population_matrix()
    pop = t.sum(axis=1)
    d = inst.distance
    m = inst.max_distance
    cap = cfg.capacitated
    min_max = cfg.objective_kind is ObjectiveKind.MIN_MAX

    kind = "cap" if cap else "uncap"
    b = ModelBuilder(f"park_equity_{cfg.objective_kind.value}_{kind}")

    for k in parks:
        b.add_var(_y(k), VarKind.BINARY)
    for k in parks:
        for l in locs:
            b.add_var(_x(k, l), VarKind.BINARY)
    for l in locs:
        b.add_var(f"udist({l})", VarKind.BINARY)
    if cap:
        for k in parks:
            b.add_var(f"ucap({k})", VarKind.BINARY)
    for r in races:
        b.add_var(f"alpha({r})", VarKind.CONTINUOUS)
    if min_max:
        b.add_var("alpha_max", VarKind.CONTINUOUS)
    for l in locs:
        b.add_var(f"dplus({l})", VarKind.CONTINUOUS)
    if cap:
        for k in parks:
            b.add_var(f"aplus({k})", VarKind.CONTINUOUS)
        for k in parks:
            for l in locs:
                b.add_var(f"pi_cap({k},{l})", VarKind.CONTINUOUS)
    for l in locs:
        b.add_var(f"pi_dist({l})", VarKind.CONTINUOUS)
    if cap:
        for k in parks:
            b.add_var(f"pi_cap_act({k})", VarKind.CONTINUOUS)

    dist_coef = cfg.n_dist * cfg.w_dist_plus
    cap_coef = cfg.n_cap * cfg.w_cap_plus
    env = [cfg.env_cost(p) for p in inst.parks]

    # Weighted deviations per demographic group.
    for ri, r in enumerate(races):
        q = cfg.q(r)
        terms: list[tuple[str, float]] = [(f"alpha({r})", 1.0)]
        for li, l in enumerate(locs):
            weight = q * t[li, ri]
            terms.append((f"dplus({l})", -weight * dist_coef))
            for ki, k in enumerate(parks):
                if cap:
                    terms.append((f"pi_cap({k},{l})", -weight * cap_coef))
                terms.append((_x(k, l), -weight * env[ki]))
        b.add_constraint(f"alpha_def({r})", terms, Sense.EQ, 0.0)
    if min_max:
        for r in races:
            b.add_constraint(f"alpha_max_ge({r})", [("alpha_max", 1.0), (f"alpha({r})", -1.0)], Sense.GE, 0.0)

    for l in locs:
        b.add_constraint(f"assign({l})", [(_x(k, l), 1.0) for k in parks], Sense.EQ, 1.0)
    for k in parks:
        for l in locs:
            b.add_constraint(f"open({k},{l})", [(_x(k, l), 1.0), (_y(k), -1.0)], Sense.LE, 0.0)
    for p in inst.parks:
        if p.existing:
            b.add_constraint(f"existing({p.id})", [(_y(p.id), 1.0)], Sense.GE, 1.0)
    b.add_constraint("budget", [(_y(p.id), p.cost) for p in inst.parks], Sense.LE, inst.budget)

    # Distance slack and its exactness: pi_dist(l) = udist(l) * assigned distance.
    for li, l in enumerate(locs):
        assigned = [(_x(k, l), d[ki, li]) for ki, k in enumerate(parks)]
        neg_assigned = [(v, -c) for v, c in assigned]
        b.add_constraint(f"dist_slack({l})", assigned + [(f"dplus({l})", -1.0)], Sense.LE, m)
        b.add_constraint(
            f"dist_exact({l})",
            [(f"dplus({l})", 1.0), *neg_assigned, (f"pi_dist({l})", 1.0), (f"udist({l})", -m)],
            Sense.LE,
            -m,
        )
        b.add_constraint(f"pi_dist_ub_u({l})", [(f"pi_dist({l})", 1.0), (f"udist({l})", -mu.mu_maxdist)], Sense.LE, 0.0)
        b.add_constraint(f"pi_dist_ub_d({l})", [(f"pi_dist({l})", 1.0), *neg_assigned], Sense.LE, 0.0)
        b.add_constraint(
            f"pi_dist_lb({l})",
            [(f"pi_dist({l})", 1.0), *neg_assigned, (f"udist({l})", -mu.mu_maxdist)],
            Sense.GE,
            -mu.mu_maxdist,
        )

    if cap:
        for ki, p in enumerate(inst.parks):
            k = p.id
            load = [(_x(k, l), pop[li]) for li, l in enumerate(locs)]
            neg_load = [(v, -c) for v, c in load]
            b.add_constraint(f"cap_slack({k})", load + [(f"aplus({k})", -1.0)], Sense.LE, p.capacity)
            b.add_constraint(
                f"cap_exact({k})",
                [(f"aplus({k})", 1.0), *neg_load, (f"pi_cap_act({k})", 1.0), (f"ucap({k})", -p.capacity)],
                Sense.LE,
                -p.capacity,
            )
            b.add_constraint(f"pi_act_ub_u({k})", [(f"pi_cap_act({k})", 1.0), (f"ucap({k})", -mu.mu_maxcap)], Sense.LE, 0.0)
            b.add_constraint(f"pi_act_ub_load({k})", [(f"pi_cap_act({k})", 1.0), *neg_load], Sense.LE, 0.0)
            b.add_constraint(
                f"pi_act_lb({k})",
                [(f"pi_cap_act({k})", 1.0), *neg_load, (f"ucap({k})", -mu.mu_maxcap)],
                Sense.GE,
                -mu.mu_maxcap,
            )
        # pi_cap(k,l) = aplus(k) * x(k,l)
        for k in parks:
            for l in locs:
                pi = f"pi_cap({k},{l})"
                b.add_constraint(f"pi_cap_ub_x({k},{l})", [(pi, 1.0), (_x(k, l), -mu.mu_cap_plus)], Sense.LE, 0.0)
                b.add_constraint(f"pi_cap_ub_a({k},{l})", [(pi, 1.0), (f"aplus({k})", -1.0)], Sense.LE, 0.0)
                b.add_constraint(
                    f"pi_cap_lb({k},{l})",
                    [(pi, 1.0), (f"aplus({k})", -1.0), (_x(k, l), -mu.mu_cap_plus)],
                    Sense.GE,
                    -mu.mu_cap_plus,
                )

    if min_max:
        b.set_objective([("alpha_max", 1.0)])
    else:
        b.set_objective([(f"alpha({r})", 1.0) for r in races])
    return b.build()


def canonical_lift(
    inst: ParkInstance,
    cfg: AccessConfig,
    opened: Iterable[str],
    assignment: Mapping[str, str],
) -> dict[str, float]:
    """Extend a park selection and assignment to a full model point.

    Slacks take their closed-form values, indicators are 1 exactly when the
    location is within the distance threshold (or the park within capacity),
    and each product variable takes the value of the product it stands for.
    """
    opened = set(opened)
    parks, locs, races = inst.park_ids, inst.location_ids, inst.races
    t = inst.population_matrix()
    pop = t.sum(axis=1)
    m = inst.max_distance
    point: dict[str, float] = {}

    for k in parks:
        point[_y(k)] = 1.0 if k in opened else 0.0
    for k in parks:
        for l in locs:
            point[_x(k, l)] = 1.0 if assignment[l] == k else 0.0

    kidx = {k: i for i, k in enumerate(parks)}
    assigned_dist = np.array([inst.distance[kidx[assignment[l]], li] for li, l in enumerate(locs)])
    load = np.zeros(len(parks))
    for li, l in enumerate(locs):
        load[kidx[assignment[l]]] += pop[li]

    for li, l in enumerate(locs):
        within = assigned_dist[li] <= m
        point[f"udist({l})"] = 1.0 if within else 0.0
        point[f"dplus({l})"] = max(0.0, float(assigned_dist[li]) - m)
        point[f"pi_dist({l})"] = float(assigned_dist[li]) if within else 0.0

    dist_coef = cfg.n_dist * cfg.w_dist_plus
    cap_coef = cfg.n_cap * cfg.w_cap_plus
    per_person = np.empty(len(locs))
    over = np.zeros(len(parks))
    if cfg.capacitated:
        for ki, p in enumerate(inst.parks):
            ok = load[ki] <= p.capacity
            over[ki] = max(0.0, float(load[ki]) - p.capacity)
            point[f"ucap({p.id})"] = 1.0 if ok else 0.0
            point[f"aplus({p.id})"] = float(over[ki])
            point[f"pi_cap_act({p.id})"] = float(load[ki]) if ok else 0.0
        for k in parks:
            for l in locs:
                point[f"pi_cap({k},{l})"] = point[f"aplus({k})"] * point[_x(k, l)]
    for li, l in enumerate(locs):
        ki = kidx[assignment[l]]
        per_person[li] = dist_coef * point[f"dplus({l})"] + cap_coef * over[ki] + cfg.env_cost(inst.parks[ki])

    alphas = []
    for ri, r in enumerate(races):
        value = cfg.q(r) * math.fsum(t[li, ri] * per_person[li] for li in range(len(locs)))
        point[f"alpha({r})"] = value
        alphas.append(value)
    if cfg.objective_kind is ObjectiveKind.MIN_MAX:
        point["alpha_max"] = max(alphas) if alphas else 0.0
    return point


@dataclass(frozen=True)
class Violation:
    """A violated row (``kind='constraint'``) or variable domain (``'bound'``/``'integrality'``)."""

    kind: str
    name: str
    residual: float

    def __str__(self) -> str:
        return f"{self.kind} {self.name}: residual {self.residual:.6g}"


def check_solution_feasibility(model: MipModel, point: Mapping[str, float], tol: float = FEAS_TOL) -> list[Violation]:
    """List every constraint, bound and integrality requirement ``point`` violates."""
    missing = [v.name for v in model.variables if v.name not in point]
    if missing:
        raise KeyError(f"point has no value for variable(s): {missing[:5]}{'...' if len(missing) > 5 else ''}")
    violations: list[Violation] = []
    for var in model.variables:
        value = point[var.name]
        below, above = var.lb - value, value - var.ub
        if below > tol or above > tol:
            violations.append(Violation("bound", var.name, max(below, above)))
        if var.kind is VarKind.BINARY:
            gap = min(abs(value), abs(value - 1.0))
            if gap > tol:
                violations.append(Violation("integrality", var.name, gap))
    for row in model.constraints:
        res = row.residual(point)
        if res > tol:
            violations.append(Violation("constraint", row.name, res))
    return violations


def objective_value(model: MipModel, point: Mapping[str, float]) -> float:
    return model.objective_constant + math.fsum(c * point[v] for v, c in model.objective)


def decode_assignment(model_or_names: MipModel | Sequence[str], point: Mapping[str, float]) -> tuple[tuple[str, ...], dict[str, str]]:
    """Recover opened parks and the location-to-park assignment from ``y``/``x`` values."""
    names = model_or_names.variable_names() if isinstance(model_or_names, MipModel) else tuple(model_or_names)
    opened: list[str] = []
    assignment: dict[str, str] = {}
    loc_order = [n[6:-1] for n in names if n.startswith("dplus(") and n.endswith(")")]
    for name in names:
        if name.startswith("y(") and name.endswith(")"):
            if point.get(name, 0.0) > 0.5:
                opened.append(name[2:-1])
        elif name.startswith("x(") and name.endswith(")"):
            if point.get(name, 0.0) > 0.5:
                k, l = name[2:-1].split(",", 1)
                assignment[l] = k
    rank = {l: i for i, l in enumerate(loc_order)}
    ordered = dict(sorted(assignment.items(), key=lambda item: rank.get(item[0], len(rank))))
    return tuple(opened), ordered
