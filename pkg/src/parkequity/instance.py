"""Problem data model and instance ingestion.

An instance directory holds four CSV files (``parks.csv``, ``locations.csv``,
``population.csv``, ``distances.csv``) plus a JSON configuration file. An
optional ``parcels.csv`` supplies cost-zone parcel records used to estimate
the cost of candidate parks that have no cost listed.
"""

from __future__ import annotations

import csv
import enum
import json
import math
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import access

__all__ = [
    "InstanceError",
    "ObjectiveKind",
    "ParkSite",
    "ResidentLocation",
    "ParkInstance",
    "AccessConfig",
    "load_instance",
    "load_config",
    "validate_instance",
    "reallocate_population",
    "clip_and_filter",
    "round_half_up",
    "instance_to_dict",
    "CATEGORIES",
]

CATEGORIES = ("distance", "capacity", "heat", "tree")

# Identifiers end up inside model variable names such as ``x(p1,l1)`` and in
# MPS records, which are whitespace-delimited.
_ID_PATTERN = re.compile(r"^[^\s(),]+$")


class InstanceError(ValueError):
    """Raised when instance or configuration data is malformed.

    ``problems`` lists every violation found (a single entry for errors
    detected while parsing).
    """

    def __init__(self, message: str, problems: Sequence[str] | None = None):
        super().__init__(message)
        self.problems = list(problems) if problems is not None else [message]


class ObjectiveKind(str, enum.Enum):
    MIN_MAX = "min_max"
    MIN_ALL = "min_all"


@dataclass(frozen=True)
class ParkSite:
    """A park location, either existing or a purchasable candidate."""

    id: str
    existing: bool
    cost: float
    capacity: float
    heat_excess: float = 0.0
    heat_deficit: float = 0.0
    tree_excess: float = 0.0
    tree_deficit: float = 0.0
    acres: float | None = None
    lon: float | None = None
    lat: float | None = None

    @property
    def has_coordinates(self) -> bool:
        return self.lon is not None and self.lat is not None


@dataclass(frozen=True)
class ResidentLocation:
    id: str
    population: Mapping[str, float]
    lon: float | None = None
    lat: float | None = None

    @property
    def total_population(self) -> float:
        return float(sum(self.population.values()))


@dataclass(frozen=True, eq=False)
class ParkInstance:
    """Immutable park-location problem data.

    ``distance`` is a read-only ``(n_parks, n_locations)`` array in miles,
    indexed in the canonical (file) order of ``parks`` and ``locations``.
    """

    parks: tuple[ParkSite, ...]
    locations: tuple[ResidentLocation, ...]
    races: tuple[str, ...]
    distance: np.ndarray
    budget: float
    max_distance: float

    def __post_init__(self) -> None:
        dist = np.array(self.distance, dtype=float)
        dist.setflags(write=False)
        object.__setattr__(self, "parks", tuple(self.parks))
        object.__setattr__(self, "locations", tuple(self.locations))
        object.__setattr__(self, "races", tuple(self.races))
        object.__setattr__(self, "distance", dist)

    @property
    def park_ids(self) -> tuple[str, ...]:
        return tuple(p.id for p in self.parks)

    @property
    def location_ids(self) -> tuple[str, ...]:
        return tuple(loc.id for loc in self.locations)

    @property
    def existing_indices(self) -> tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.parks) if p.existing)

    @property
    def candidate_indices(self) -> tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.parks) if not p.existing)

    def park_index(self, park_id: str) -> int:
        for i, p in enumerate(self.parks):
            if p.id == park_id:
                return i
        raise KeyError(park_id)

    def location_index(self, location_id: str) -> int:
        for i, loc in enumerate(self.locations):
            if loc.id == location_id:
                return i
        raise KeyError(location_id)

    def population_matrix(self) -> np.ndarray:
        """Return ``t[l, r]`` as an ``(n_locations, n_races)`` array."""
        return np.array(
            [[loc.population.get(r, 0.0) for r in self.races] for loc in self.locations],
            dtype=float,
        ).reshape(len(self.locations), len(self.races))

    def with_budget(self, budget: float) -> ParkInstance:
        return replace(self, budget=float(budget))

    def with_max_distance(self, max_distance: float) -> ParkInstance:
        return replace(self, max_distance=float(max_distance))

    def with_existing(self, park_ids: Iterable[str]) -> ParkInstance:
        """Mark the given parks as existing (already owned, zero cost)."""
        ids = set(park_ids)
        unknown = ids - set(self.park_ids)
        if unknown:
            raise KeyError(f"unknown park ids: {sorted(unknown)}")
        parks = tuple(
            replace(p, existing=True, cost=0.0) if p.id in ids else p for p in self.parks
        )
        return replace(self, parks=parks)


def _table2_default_ncap() -> float:
    return float(Fraction(1, 150))


@dataclass(frozen=True)
class AccessConfig:
    """Objective weights, normalizations and access thresholds.

    Defaults are the case-study values: distance weight 0.9 with
    normalization 5, capacity 0.25 with 1/150, heat 0.2/0.05 with 20 and
    range [1, 4], tree cover 0.25/0.2 with 1 and range [20, 70].
    """

    w_dist_plus: float = 0.9
    w_cap_plus: float = 0.25
    w_heat_plus: float = 0.2
    w_heat_minus: float = 0.05
    w_tree_plus: float = 0.25
    w_tree_minus: float = 0.2
    n_dist: float = 5.0
    n_cap: float = field(default_factory=_table2_default_ncap)
    n_heat: float = 20.0
    n_tree: float = 1.0
    heat_range: tuple[float, float] = (1.0, 4.0)
    tree_range: tuple[float, float] = (20.0, 70.0)
    emphasis: Mapping[str, float] = field(default_factory=dict)
    objective_kind: ObjectiveKind = ObjectiveKind.MIN_MAX
    capacitated: bool = True
    default_emphasis: float = 1.0

    def q(self, race: str) -> float:
        """Strategic emphasis of ``race``; unlisted groups get ``default_emphasis``."""
        return float(self.emphasis.get(race, self.default_emphasis))

    def q_vector(self, races: Sequence[str]) -> np.ndarray:
        return np.array([self.q(r) for r in races], dtype=float)

    def env_cost(self, park: ParkSite) -> float:
        """Weighted, normalized heat and tree deviation of one park, per person."""
        heat = self.n_heat * (self.w_heat_plus * park.heat_excess + self.w_heat_minus * park.heat_deficit)
        tree = self.n_tree * (self.w_tree_plus * park.tree_excess + self.w_tree_minus * park.tree_deficit)
        return heat + tree

    def with_emphasis(self, emphasis: Mapping[str, float]) -> AccessConfig:
        return replace(self, emphasis=dict(emphasis))


def round_half_up(value: float) -> int:
    # The 1e-9 guard absorbs representation error such as 0.705 * 100.
    return int(math.floor(value + 0.5 + 1e-9))


def reallocate_population(
    old_counts: Mapping[str, Mapping[str, float]],
    overlap: Mapping[tuple[str, str], float],
) -> dict[str, dict[str, float]]:
    """Move population counts from old areal units onto new ones.

    Each old unit's counts are split across new units in proportion to the
    overlap fraction ``overlap[(old, new)]``. Fractions of one old unit may
    sum to less than one; the remainder falls outside every new unit.
    Results stay fractional.
    """
    totals: dict[str, float] = {}
    for (old, new), frac in overlap.items():
        if not 0.0 <= frac <= 1.0:
            raise InstanceError(f"overlap fraction for ({old}, {new}) outside [0, 1]: {frac}")
        if old not in old_counts:
            raise InstanceError(f"overlap references unknown old group {old!r}")
        totals[old] = totals.get(old, 0.0) + frac
    for old, total in totals.items():
        if total > 1.0 + 1e-9:
            raise InstanceError(f"overlap fractions for old group {old!r} sum to {total} > 1")

    result: dict[str, dict[str, float]] = {}
    for (old, new), frac in overlap.items():
        dest = result.setdefault(new, {})
        for race, count in old_counts[old].items():
            dest[race] = dest.get(race, 0.0) + count * frac
    return result


def clip_and_filter(
    counts: Mapping[str, Mapping[str, float]],
    area_fraction: Mapping[str, float],
    min_pop: float = 25,
) -> dict[str, dict[str, float]]:
    """Scale each location by the fraction of its area kept, then drop small ones.

    Locations missing from ``area_fraction`` are kept whole. A location is
    removed when its scaled total population is below ``min_pop``.
    """
    if min_pop < 0:
        raise InstanceError("min_pop must be nonnegative")
    out: dict[str, dict[str, float]] = {}
    for loc, by_race in counts.items():
        frac = area_fraction.get(loc, 1.0)
        if not 0.0 < frac <= 1.0:
            raise InstanceError(f"area fraction for {loc!r} outside (0, 1]: {frac}")
        scaled = {race: value * frac for race, value in by_race.items()}
        if sum(scaled.values()) >= min_pop:
            out[loc] = scaled
    return out


def validate_instance(inst: ParkInstance, cfg: AccessConfig) -> list[str]:
    """Return a description of every invariant violation (empty when valid)."""
    problems: list[str] = []
    n_parks, n_locs = len(inst.parks), len(inst.locations)

    for kind, ids in (("park", inst.park_ids), ("location", inst.location_ids), ("race", inst.races)):
        seen: set[str] = set()
        for ident in ids:
            if ident in seen:
                problems.append(f"duplicate {kind} id {ident!r}")
            seen.add(ident)
            if not _ID_PATTERN.match(ident):
                problems.append(f"{kind} id {ident!r} contains whitespace, comma or parenthesis")

    if inst.distance.shape != (n_parks, n_locs):
        problems.append(
            f"incomplete distance matrix: shape {inst.distance.shape}, expected {(n_parks, n_locs)}"
        )
    elif inst.distance.size and not (np.all(np.isfinite(inst.distance)) and np.all(inst.distance >= 0)):
        problems.append("distance matrix entries must be finite and nonnegative")

    if not (math.isfinite(inst.budget) and inst.budget >= 0):
        problems.append(f"budget must be nonnegative, got {inst.budget}")
    if not (math.isfinite(inst.max_distance) and inst.max_distance > 0):
        problems.append(f"max_distance must be positive, got {inst.max_distance}")

    for p in inst.parks:
        if p.existing and p.cost != 0:
            problems.append(f"park {p.id}: existing park must have zero cost")
        for attr in ("cost", "capacity", "heat_excess", "heat_deficit", "tree_excess", "tree_deficit"):
            value = getattr(p, attr)
            if not (value >= 0 and math.isfinite(value)):
                problems.append(f"park {p.id}: {attr} must be nonnegative and finite, got {value}")
        if p.heat_excess > 0 and p.heat_deficit > 0:
            problems.append(f"park {p.id}: excess and deficit heat both positive")
        if p.tree_excess > 0 and p.tree_deficit > 0:
            problems.append(f"park {p.id}: excess and deficit tree cover both positive")

    race_set = set(inst.races)
    for loc in inst.locations:
        if set(loc.population) != race_set:
            problems.append(f"location {loc.id}: population races {sorted(loc.population)} do not match {sorted(race_set)}")
        for race, value in loc.population.items():
            if not (value >= 0 and math.isfinite(value)):
                problems.append(f"location {loc.id}: population of {race} must be nonnegative, got {value}")
        if loc.total_population < 1:
            problems.append(f"location {loc.id}: total population below 1")

    weights = {
        "w_dist_plus": cfg.w_dist_plus, "w_cap_plus": cfg.w_cap_plus,
        "w_heat_plus": cfg.w_heat_plus, "w_heat_minus": cfg.w_heat_minus,
        "w_tree_plus": cfg.w_tree_plus, "w_tree_minus": cfg.w_tree_minus,
        "n_dist": cfg.n_dist, "n_cap": cfg.n_cap, "n_heat": cfg.n_heat, "n_tree": cfg.n_tree,
    }
    for name, value in weights.items():
        if not (value >= 0 and math.isfinite(value)):
            problems.append(f"config {name} must be nonnegative, got {value}")
    for name, (lo, hi) in (("heat_range", cfg.heat_range), ("tree_range", cfg.tree_range)):
        if lo > hi:
            problems.append(f"config {name} has lo > hi: [{lo}, {hi}]")
    for race in inst.races:
        if not cfg.q(race) > 0:
            problems.append(f"emphasis must be positive (race {race}: {cfg.q(race)})")
    for race in cfg.emphasis:
        if race not in race_set:
            problems.append(f"emphasis given for unknown race {race!r}")
    return problems


# --------------------------------------------------------------------------
# file ingestion


def _read_csv(path: Path, required: Sequence[str]) -> list[dict[str, str]]:
    if not path.is_file():
        raise FileNotFoundError(f"missing file: {path}")
    with path.open(newline="", encoding="utf-8-sig") as fh:
        reader = csv.DictReader(fh)
        header = [h.strip() for h in (reader.fieldnames or [])]
        missing = [c for c in required if c not in header]
        if missing:
            raise InstanceError(f"{path.name}: missing column(s) {missing}")
        rows = []
        for raw in reader:
            rows.append({(k or "").strip(): (v or "").strip() for k, v in raw.items()})
    return rows


def _opt_float(row: Mapping[str, str], key: str, where: str) -> float | None:
    text = row.get(key, "")
    if text == "":
        return None
    try:
        return float(text)
    except ValueError:
        raise InstanceError(f"{where}: column {key!r} is not a number: {text!r}") from None


def _req_float(row: Mapping[str, str], key: str, where: str) -> float:
    value = _opt_float(row, key, where)
    if value is None:
        raise InstanceError(f"{where}: column {key!r} is required")
    return value


def _parse_number(value, key: str) -> float:
    if isinstance(value, bool):
        raise InstanceError(f"config {key} must be a number")
    if isinstance(value, str):
        try:
            return float(Fraction(value))
        except (ValueError, ZeroDivisionError):
            raise InstanceError(f"config {key} is not a number: {value!r}") from None
    if isinstance(value, (int, float)):
        return float(value)
    raise InstanceError(f"config {key} must be a number")


def load_config(path: str | Path) -> tuple[AccessConfig, float, float]:
    """Parse a configuration JSON file.

    Returns ``(config, budget, max_distance)``. Weight, normalization and
    range keys fall back to the case-study values when absent; numbers may be
    given as strings holding exact rationals such as ``"1/150"``.
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"missing file: {path}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{path.name}: invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise InstanceError(f"{path.name}: top level must be an object")
    return config_from_dict(data)


def config_from_dict(data: Mapping) -> tuple[AccessConfig, float, float]:
    if "budget" not in data:
        raise InstanceError("config: 'budget' is required")
    budget = _parse_number(data["budget"], "budget")
    max_distance = _parse_number(data.get("max_distance", 0.5), "max_distance")

    kwargs: dict = {}
    weights = data.get("weights", {})
    for key in ("dist_plus", "cap_plus", "heat_plus", "heat_minus", "tree_plus", "tree_minus"):
        if key in weights:
            kwargs[f"w_{key}"] = _parse_number(weights[key], f"weights.{key}")
    norms = data.get("normalizations", {})
    for key in ("dist", "cap", "heat", "tree"):
        if key in norms:
            kwargs[f"n_{key}"] = _parse_number(norms[key], f"normalizations.{key}")
    for key in ("heat_range", "tree_range"):
        if key in data:
            pair = data[key]
            if not isinstance(pair, (list, tuple)) or len(pair) != 2:
                raise InstanceError(f"config {key} must be a [lo, hi] pair")
            kwargs[key] = (_parse_number(pair[0], key), _parse_number(pair[1], key))

    emphasis_raw = dict(data.get("emphasis", {}))
    default_q = _parse_number(emphasis_raw.pop("default", 1.0), "emphasis.default")
    kwargs["emphasis"] = {race: _parse_number(v, f"emphasis.{race}") for race, v in emphasis_raw.items()}

    objective = data.get("objective", "min_max")
    try:
        kwargs["objective_kind"] = ObjectiveKind(objective)
    except ValueError:
        raise InstanceError(f"config objective must be 'min_max' or 'min_all', got {objective!r}") from None
    capacitated = data.get("capacitated", True)
    if not isinstance(capacitated, bool):
        raise InstanceError("config capacitated must be a boolean")
    kwargs["capacitated"] = capacitated
    kwargs["default_emphasis"] = default_q
    return AccessConfig(**kwargs), budget, max_distance


def _zone_rates(path: Path) -> dict[str, float]:
    if not path.is_file():
        return {}
    zones: dict[str, list[access.Parcel]] = {}
    for i, row in enumerate(_read_csv(path, ["zone", "acres"]), start=2):
        where = f"parcels.csv line {i}"
        zones.setdefault(row["zone"], []).append(
            access.Parcel(acres=_req_float(row, "acres", where), land_value=_opt_float(row, "land_value", where))
        )
    rates = {}
    for zone_id, parcels in zones.items():
        try:
            rates[zone_id] = access.zone_average_cost(access.CostZone(zone_id, tuple(parcels)))
        except ValueError:
            continue
    return rates


def _deviation_pair(row, avg_key, excess_key, deficit_key, rng, where) -> tuple[float, float]:
    avg = _opt_float(row, avg_key, where)
    excess = _opt_float(row, excess_key, where)
    deficit = _opt_float(row, deficit_key, where)
    if avg is not None:
        if excess is not None or deficit is not None:
            raise InstanceError(f"{where}: give either {avg_key} or {excess_key}/{deficit_key}, not both")
        dev = access.range_deviations(avg, *rng)
        return dev.excess, dev.deficit
    return excess or 0.0, deficit or 0.0


def _load_parks(path: Path, cfg: AccessConfig, zone_rates: Mapping[str, float]) -> list[ParkSite]:
    parks = []
    for i, row in enumerate(_read_csv(path, ["id", "existing"]), start=2):
        where = f"parks.csv line {i}"
        pid = row["id"]
        if row["existing"] not in ("0", "1"):
            raise InstanceError(f"{where}: existing must be 0 or 1, got {row['existing']!r}")
        existing = row["existing"] == "1"
        acres = _opt_float(row, "acres", where)

        capacity = _opt_float(row, "capacity", where)
        if capacity is None:
            if acres is None:
                raise InstanceError(f"{where}: park {pid} needs capacity or acres")
            capacity = float(access.capacity_from_acres(acres))

        cost = _opt_float(row, "cost", where)
        if cost is None:
            if existing:
                cost = 0.0
            else:
                zone = row.get("zone", "")
                listed = _opt_float(row, "land_value", where)
                rate = zone_rates.get(zone) if zone else None
                if listed is None and (rate is None or acres is None):
                    raise InstanceError(f"{where}: candidate park {pid} has no cost, land value or usable zone rate")
                cost = access.estimate_cost(listed, acres if acres is not None else 0.0, rate or 0.0, existing)
        elif existing and cost != 0:
            raise InstanceError(f"{where}: park {pid}: existing park must have zero cost")

        heat_ex, heat_def = _deviation_pair(row, "heat_avg", "heat_excess", "heat_deficit", cfg.heat_range, where)
        tree_ex, tree_def = _deviation_pair(row, "tree_avg", "tree_excess", "tree_deficit", cfg.tree_range, where)
        parks.append(
            ParkSite(
                id=pid, existing=existing, cost=cost, capacity=capacity,
                heat_excess=heat_ex, heat_deficit=heat_def,
                tree_excess=tree_ex, tree_deficit=tree_def,
                acres=acres, lon=_opt_float(row, "lon", where), lat=_opt_float(row, "lat", where),
            )
        )
    return parks


def _check_unique(ids: Sequence[str], what: str) -> None:
    seen: set[str] = set()
    for ident in ids:
        if ident in seen:
            raise InstanceError(f"duplicate {what} id {ident!r}")
        seen.add(ident)


def load_instance(instance_dir: str | Path, config: str | Path) -> tuple[ParkInstance, AccessConfig]:
    """Read and validate an instance directory and its configuration.

    Population counts are rounded half-up to whole persons, and locations left
    with zero total population are dropped. Parks, locations and races keep
    their order of first appearance in the files.

    Raises
    ------
    FileNotFoundError
        A required file is missing.
    InstanceError
        Any structural or invariant violation.
    """
    root = Path(instance_dir)
    cfg, budget, max_distance = load_config(config)
    if not root.is_dir():
        raise FileNotFoundError(f"missing instance directory: {root}")

    parks = _load_parks(root / "parks.csv", cfg, _zone_rates(root / "parcels.csv"))
    _check_unique([p.id for p in parks], "park")

    loc_rows = _read_csv(root / "locations.csv", ["id"])
    loc_ids = [r["id"] for r in loc_rows]
    _check_unique(loc_ids, "location")
    loc_coords = {}
    for i, r in enumerate(loc_rows, start=2):
        where = f"locations.csv line {i}"
        loc_coords[r["id"]] = (_opt_float(r, "lon", where), _opt_float(r, "lat", where))

    races: list[str] = []
    counts: dict[str, dict[str, float]] = {lid: {} for lid in loc_ids}
    for i, row in enumerate(_read_csv(root / "population.csv", ["location_id", "race", "count"]), start=2):
        where = f"population.csv line {i}"
        lid, race = row["location_id"], row["race"]
        if lid not in counts:
            raise InstanceError(f"{where}: unknown location id {lid!r}")
        if race == "":
            raise InstanceError(f"{where}: empty race label")
        value = _req_float(row, "count", where)
        if value < 0:
            raise InstanceError(f"{where}: negative population {value}")
        if race in counts[lid]:
            raise InstanceError(f"{where}: duplicate population row for ({lid}, {race})")
        if race not in races:
            races.append(race)
        counts[lid][race] = value

    park_pos = {p.id: i for i, p in enumerate(parks)}
    loc_pos = {lid: j for j, lid in enumerate(loc_ids)}
    dist = np.full((len(parks), len(loc_ids)), np.nan)
    for i, row in enumerate(_read_csv(root / "distances.csv", ["park_id", "location_id", "miles"]), start=2):
        where = f"distances.csv line {i}"
        pid, lid = row["park_id"], row["location_id"]
        if pid not in park_pos:
            raise InstanceError(f"{where}: unknown park id {pid!r}")
        if lid not in loc_pos:
            raise InstanceError(f"{where}: unknown location id {lid!r}")
        miles = _req_float(row, "miles", where)
        if miles < 0 or not math.isfinite(miles):
            raise InstanceError(f"{where}: distance must be nonnegative and finite, got {miles}")
        if not np.isnan(dist[park_pos[pid], loc_pos[lid]]):
            raise InstanceError(f"{where}: duplicate distance for ({pid}, {lid})")
        dist[park_pos[pid], loc_pos[lid]] = miles

    locations = []
    keep = []
    for j, lid in enumerate(loc_ids):
        pop = {race: float(round_half_up(counts[lid].get(race, 0.0))) for race in races}
        if sum(pop.values()) <= 0:
            continue
        if np.any(np.isnan(dist[:, j])):
            missing = [parks[k].id for k in np.flatnonzero(np.isnan(dist[:, j]))]
            raise InstanceError(f"incomplete distance matrix: no distance for location {lid} from {missing}")
        lon, lat = loc_coords[lid]
        locations.append(ResidentLocation(id=lid, population=pop, lon=lon, lat=lat))
        keep.append(j)

    inst = ParkInstance(
        parks=tuple(parks),
        locations=tuple(locations),
        races=tuple(races),
        distance=dist[:, keep] if keep else np.zeros((len(parks), 0)),
        budget=budget,
        max_distance=max_distance,
    )
    problems = validate_instance(inst, cfg)
    if problems:
        raise InstanceError("; ".join(problems), problems)
    return inst, cfg


def instance_to_dict(inst: ParkInstance) -> dict:
    """JSON-ready representation; used for deterministic serialization."""
    return {
        "races": list(inst.races),
        "budget": inst.budget,
        "max_distance": inst.max_distance,
        "parks": [
            {
                "id": p.id, "existing": p.existing, "cost": p.cost, "capacity": p.capacity,
                "heat_excess": p.heat_excess, "heat_deficit": p.heat_deficit,
                "tree_excess": p.tree_excess, "tree_deficit": p.tree_deficit,
                "acres": p.acres, "lon": p.lon, "lat": p.lat,
            }
            for p in inst.parks
        ],
        "locations": [
            {"id": loc.id, "population": {r: loc.population[r] for r in inst.races}, "lon": loc.lon, "lat": loc.lat}
            for loc in inst.locations
        ],
        "distance": inst.distance.tolist(),
    }
