"""Built-in fixtures, random instance generation, and instance-directory writing."""

from __future__ import annotations

import csv
import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from .instance import AccessConfig, ParkInstance, ParkSite, ResidentLocation

__all__ = ["tiny1", "random_instance", "write_instance", "config_to_dict"]


def tiny1() -> ParkInstance:
    """Three parks, two locations, two groups; budget 100 and threshold 0.5 miles."""
    parks = (
        ParkSite("p1", existing=True, cost=0.0, capacity=150.0),
        ParkSite("p2", existing=False, cost=60.0, capacity=100.0, heat_excess=0.5),
        ParkSite("p3", existing=False, cost=80.0, capacity=400.0, tree_deficit=10.0),
    )
    locations = (
        ResidentLocation("l1", {"A": 100.0, "B": 50.0}),
        ResidentLocation("l2", {"A": 20.0, "B": 200.0}),
    )
    distance = np.array([[0.4, 1.5], [1.0, 0.3], [0.6, 0.6]])
    return ParkInstance(parks, locations, ("A", "B"), distance, budget=100.0, max_distance=0.5)


def random_instance(
    rng: np.random.Generator,
    n_existing: int = 1,
    n_candidates: int = 3,
    n_locations: int = 3,
    n_races: int = 2,
    budget: float | None = None,
) -> ParkInstance:
    """Small random instance.

    Populations are integers in [0, 200] (at least one person per location),
    distances lie in [0, 2] miles, and each park has at most one heat and one
    tree deviation. When ``budget`` is ``None`` it is drawn between zero and the
    cost of all candidates.
    """
    races = tuple("ABCDEFGH"[:n_races])
    parks = []
    for k in range(n_existing + n_candidates):
        existing = k < n_existing
        heat = float(rng.uniform(0, 1.5)) if rng.random() < 0.5 else 0.0
        tree = float(rng.uniform(0, 20)) if rng.random() < 0.5 else 0.0
        hot, leafy = rng.random() < 0.5, rng.random() < 0.5
        parks.append(
            ParkSite(
                id=f"p{k + 1}",
                existing=existing,
                cost=0.0 if existing else float(rng.integers(10, 100)),
                capacity=float(rng.integers(0, 400)),
                heat_excess=heat if hot else 0.0,
                heat_deficit=0.0 if hot else heat,
                tree_excess=tree if leafy else 0.0,
                tree_deficit=0.0 if leafy else tree,
            )
        )
    locations = []
    for j in range(n_locations):
        pop = {r: float(rng.integers(0, 201)) for r in races}
        if sum(pop.values()) < 1:
            pop[races[0]] = 1.0
        locations.append(ResidentLocation(f"l{j + 1}", pop))
    distance = np.round(rng.uniform(0.0, 2.0, size=(len(parks), n_locations)), 3)
    if budget is None:
        total = sum(p.cost for p in parks)
        budget = float(rng.integers(0, int(total) + 1))
    return ParkInstance(tuple(parks), tuple(locations), races, distance, budget=budget, max_distance=0.5)


def config_to_dict(cfg: AccessConfig, budget: float, max_distance: float) -> dict:
    """JSON configuration equivalent to ``cfg``; ``1/150`` is written as an exact rational."""
    def num(x: float):
        frac = Fraction(x).limit_denominator(1000)
        if float(frac) == x and frac.denominator != 1 and x != round(x, 6):
            return f"{frac.numerator}/{frac.denominator}"
        return x

    emphasis = dict(cfg.emphasis)
    emphasis["default"] = cfg.default_emphasis
    return {
        "budget": budget,
        "max_distance": max_distance,
        "weights": {
            "dist_plus": cfg.w_dist_plus, "cap_plus": cfg.w_cap_plus,
            "heat_plus": cfg.w_heat_plus, "heat_minus": cfg.w_heat_minus,
            "tree_plus": cfg.w_tree_plus, "tree_minus": cfg.w_tree_minus,
        },
        "normalizations": {"dist": num(cfg.n_dist), "cap": num(cfg.n_cap), "heat": num(cfg.n_heat), "tree": num(cfg.n_tree)},
        "heat_range": list(cfg.heat_range),
        "tree_range": list(cfg.tree_range),
        "emphasis": emphasis,
        "objective": cfg.objective_kind.value,
        "capacitated": cfg.capacitated,
    }


def _fmt(x: float | None) -> str:
    if x is None:
        return ""
    return repr(float(x))


def write_instance(directory: str | Path, inst: ParkInstance, cfg: AccessConfig | None = None) -> Path:
    """Write ``inst`` as an instance directory with ``config.json`` beside the CSVs.

    Returns the path of the config file.
    """
    root = Path(directory)
    root.mkdir(parents=True, exist_ok=True)
    cfg = cfg or AccessConfig()
    with open(root / "parks.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["id", "existing", "cost", "capacity", "heat_excess", "heat_deficit",
                    "tree_excess", "tree_deficit", "acres", "lon", "lat"])
        for p in inst.parks:
            w.writerow([p.id, int(p.existing), _fmt(p.cost), _fmt(p.capacity), _fmt(p.heat_excess),
                        _fmt(p.heat_deficit), _fmt(p.tree_excess), _fmt(p.tree_deficit),
                        _fmt(p.acres), _fmt(p.lon), _fmt(p.lat)])
    with open(root / "locations.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["id", "lon", "lat"])
        for loc in inst.locations:
            w.writerow([loc.id, _fmt(loc.lon), _fmt(loc.lat)])
    with open(root / "population.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["location_id", "race", "count"])
        for loc in inst.locations:
            for r in inst.races:
                w.writerow([loc.id, r, _fmt(loc.population.get(r, 0.0))])
    with open(root / "distances.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["park_id", "location_id", "miles"])
        for k, p in enumerate(inst.parks):
            for j, loc in enumerate(inst.locations):
                w.writerow([p.id, loc.id, _fmt(inst.distance[k, j])])
    config_path = root / "config.json"
    config_path.write_text(
        json.dumps(config_to_dict(cfg, inst.budget, inst.max_distance), indent=2) + "\n", encoding="utf-8"
    )
    return config_path
