"""Derivation of park parameters from raw attributes.

Capacity comes from acreage (100 residents per acre), candidate cost from a
listed land value or an acre-weighted cost-zone rate, and heat or tree-cover
deviations from a park's average compared with an allowable range.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_FLOOR, Decimal

__all__ = [
    "RESIDENTS_PER_ACRE",
    "RangeDeviation",
    "Parcel",
    "CostZone",
    "capacity_from_acres",
    "zone_average_cost",
    "estimate_cost",
    "range_deviations",
]

RESIDENTS_PER_ACRE = 100


@dataclass(frozen=True)
class RangeDeviation:
    excess: float
    deficit: float


@dataclass(frozen=True)
class Parcel:
    acres: float
    land_value: float | None = None


@dataclass(frozen=True)
class CostZone:
    zone_id: str
    parcels: tuple[Parcel, ...]


def capacity_from_acres(acres: float) -> int:
    """Number of residents a park of ``acres`` can serve, rounded down.

    The product is taken in decimal arithmetic so that e.g. 0.29 acres gives
    29 rather than the 28 a binary float product would floor to.
    """
    if not acres > 0:
        raise ValueError(f"acreage must be positive, got {acres}")
    product = Decimal(repr(float(acres))) * RESIDENTS_PER_ACRE
    return int(product.to_integral_value(rounding=ROUND_FLOOR))


def zone_average_cost(zone: CostZone) -> float:
    """Acre-weighted cost per acre over the zone's parcels with a listed value."""
    priced = [p for p in zone.parcels if p.land_value is not None]
    if not priced:
        raise ValueError(f"zone {zone.zone_id!r} has no parcel with a listed land value")
    acres = sum(p.acres for p in priced)
    if not acres > 0:
        raise ValueError(f"zone {zone.zone_id!r}: priced parcels have no positive acreage")
    return sum(p.land_value for p in priced) / acres


def estimate_cost(listed_value: float | None, acres: float, zone_rate: float, existing: bool) -> float:
    if existing:
        return 0.0
    if listed_value is not None:
        return float(listed_value)
    if not acres > 0:
        raise ValueError("candidate without a listed value needs positive acreage")
    if not zone_rate > 0:
        raise ValueError("candidate without a listed value needs a positive zone rate")
    return acres * zone_rate


def range_deviations(avg: float, lo: float, hi: float) -> RangeDeviation:
    """Amounts by which ``avg`` lies above ``hi`` and below ``lo``."""
    if lo > hi:
        raise ValueError(f"range lower bound {lo} exceeds upper bound {hi}")
    return RangeDeviation(excess=max(0.0, avg - hi), deficit=max(0.0, lo - avg))
