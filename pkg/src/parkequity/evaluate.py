"""Closed-form evaluation of a park selection and assignment."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from .instance import CATEGORIES, AccessConfig, ParkInstance

__all__ = ["AssignmentError", "DeviationReport", "evaluate_assignment"]


class AssignmentError(ValueError):
    """The selection/assignment pair violates a structural requirement."""


@dataclass(frozen=True)
class DeviationReport:
    """Weighted and unweighted deviations of one solution.

    ``by_group_category[r][c]`` is the part of ``alpha[r]`` due to category
    ``c`` (one of ``distance``, ``capacity``, ``heat``, ``tree``).
    ``overcrowding`` maps each location to the overcrowding of its assigned
    park; it is ``None`` (with ``None`` statistics) for uncapacitated runs,
    where overcrowding is not modeled.
    """

    alpha: Mapping[str, float]
    alpha_max: float
    total: float
    by_category: Mapping[str, float]
    by_group_category: Mapping[str, Mapping[str, float]]
    distance_deviation: Mapping[str, float]
    avg_distance_deviation: float
    max_distance_deviation: float
    park_load: Mapping[str, float]
    overcrowding: Mapping[str, float] | None
    avg_overcrowding: float | None
    max_overcrowding: float | None

    @property
    def zero_total(self) -> bool:
        return self.total == 0.0

    def composition(self) -> dict[str, float]:
        """Percentage of total weighted deviations per category (all 0 if the total is 0)."""
        if self.zero_total:
            return {c: 0.0 for c in CATEGORIES}
        return {c: 100.0 * self.by_category[c] / self.total for c in CATEGORIES}

    def group_shares(self) -> dict[str, float]:
        """Fraction of total weighted deviations borne by each group."""
        if self.zero_total:
            return {r: 0.0 for r in self.alpha}
        return {r: a / self.total for r, a in self.alpha.items()}


def evaluate_assignment(
    inst: ParkInstance,
    cfg: AccessConfig,
    opened: Iterable[str],
    assignment: Mapping[str, str],
) -> DeviationReport:
    """Compute every deviation quantity of ``(opened, assignment)`` directly.

    Distance deviation of a location is ``max(0, d - m)`` for its assigned
    park; overcrowding of a park is ``max(0, load - capacity)`` where the
    load counts every assigned resident. Each resident bears the per-person
    weighted deviation of its park, scaled by its group's emphasis.
    Averages and maxima of unweighted values run over resident locations.
    """
    opened = set(opened)
    park_ids = set(inst.park_ids)
    if not opened <= park_ids:
        raise AssignmentError(f"unknown opened park(s): {sorted(opened - park_ids)}")
    for k in inst.existing_indices:
        if inst.parks[k].id not in opened:
            raise AssignmentError(f"existing park {inst.parks[k].id} is not opened")
    for loc in inst.locations:
        if loc.id not in assignment:
            raise AssignmentError(f"location {loc.id} is unassigned")
        if assignment[loc.id] not in opened:
            raise AssignmentError(f"location {loc.id} assigned to unopened park {assignment[loc.id]}")
    extra = set(assignment) - set(inst.location_ids)
    if extra:
        raise AssignmentError(f"assignment names unknown location(s): {sorted(extra)}")

    kidx = {p.id: i for i, p in enumerate(inst.parks)}
    m = inst.max_distance

    load = {p.id: 0.0 for p in inst.parks}
    for loc in inst.locations:
        load[assignment[loc.id]] += loc.total_population
    if cfg.capacitated:
        over = {p.id: max(0.0, load[p.id] - p.capacity) for p in inst.parks}
    else:
        over = {p.id: 0.0 for p in inst.parks}

    dist_dev = {}
    per_person: dict[str, dict[str, float]] = {}
    for li, loc in enumerate(inst.locations):
        park = inst.parks[kidx[assignment[loc.id]]]
        dist_dev[loc.id] = max(0.0, float(inst.distance[kidx[park.id], li]) - m)
        per_person[loc.id] = {
            "distance": cfg.n_dist * cfg.w_dist_plus * dist_dev[loc.id],
            "capacity": cfg.n_cap * cfg.w_cap_plus * over[park.id],
            "heat": cfg.n_heat * (cfg.w_heat_plus * park.heat_excess + cfg.w_heat_minus * park.heat_deficit),
            "tree": cfg.n_tree * (cfg.w_tree_plus * park.tree_excess + cfg.w_tree_minus * park.tree_deficit),
        }

    by_group_category: dict[str, dict[str, float]] = {}
    alpha: dict[str, float] = {}
    for r in inst.races:
        q = cfg.q(r)
        cats = {
            c: q * math.fsum(loc.population[r] * per_person[loc.id][c] for loc in inst.locations)
            for c in CATEGORIES
        }
        by_group_category[r] = cats
        alpha[r] = math.fsum(cats.values())
    by_category = {c: math.fsum(by_group_category[r][c] for r in inst.races) for c in CATEGORIES}

    n = len(inst.locations)
    dvals = list(dist_dev.values())
    if cfg.capacitated:
        experienced = {loc.id: over[assignment[loc.id]] for loc in inst.locations}
        ovals = list(experienced.values())
        avg_over = math.fsum(ovals) / n if n else 0.0
        max_over = max(ovals) if ovals else 0.0
    else:
        experienced, avg_over, max_over = None, None, None

    return DeviationReport(
        alpha=alpha,
        alpha_max=max(alpha.values()) if alpha else 0.0,
        total=math.fsum(alpha.values()),
        by_category=by_category,
        by_group_category=by_group_category,
        distance_deviation=dist_dev,
        avg_distance_deviation=math.fsum(dvals) / n if n else 0.0,
        max_distance_deviation=max(dvals) if dvals else 0.0,
        park_load=load,
        overcrowding=experienced,
        avg_overcrowding=avg_over,
        max_overcrowding=max_over,
    )
