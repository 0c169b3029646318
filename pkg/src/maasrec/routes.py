"""Multimodal route model and the routes.json document format."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Any

from .catalog import format_number
from .errors import SchemaError, Violation

LEG_MODES = (
    "walk",
    "bike",
    "bike_sharing",
    "car",
    "car_sharing",
    "taxi",
    "ride_sharing",
    "public_transport",
)


@dataclass(frozen=True)
class Leg:
    mode: str
    distance_m: float
    duration_s: float
    cost: float = 0.0
    provider_id: str | None = None


@dataclass(frozen=True)
class Route:
    """An ordered sequence of legs; totals are recomputed from the legs."""

    id: str
    legs: tuple[Leg, ...]

    @cached_property
    def total_distance_m(self) -> float:
        return sum(leg.distance_m for leg in self.legs)

    @cached_property
    def total_duration_s(self) -> float:
        return sum(leg.duration_s for leg in self.legs)

    @cached_property
    def total_cost(self) -> float:
        return sum(leg.cost for leg in self.legs)

    @cached_property
    def walk_distance_m(self) -> float:
        return sum(leg.distance_m for leg in self.legs if leg.mode == "walk")

    @cached_property
    def bike_distance_m(self) -> float:
        return sum(leg.distance_m for leg in self.legs if leg.mode in ("bike", "bike_sharing"))

    @cached_property
    def main_mode(self) -> str:
        """Mode with the greatest summed distance; walking only counts when the
        route is walk-only. Ties go to the earlier first occurrence."""
        sums: dict[str, float] = {}
        first_seen: dict[str, int] = {}
        for position, leg in enumerate(self.legs):
            sums[leg.mode] = sums.get(leg.mode, 0.0) + leg.distance_m
            first_seen.setdefault(leg.mode, position)
        candidates = [mode for mode in sums if mode != "walk"] or ["walk"]
        return max(candidates, key=lambda mode: (sums[mode], -first_seen[mode]))

    def distance_on(self, mode: str) -> float:
        return sum(leg.distance_m for leg in self.legs if leg.mode == mode)

    def mode_distance(self) -> dict[str, float]:
        sums: dict[str, float] = {}
        for leg in self.legs:
            sums[leg.mode] = sums.get(leg.mode, 0.0) + leg.distance_m
        return sums


def leg_from_document(doc: Any, path: str) -> tuple[Leg | None, list[Violation]]:
    problems: list[Violation] = []
    if not isinstance(doc, dict):
        return None, [Violation(path, f"expected object, got {type(doc).__name__}")]
    mode = doc.get("mode")
    if not isinstance(mode, str) or mode not in LEG_MODES:
        problems.append(Violation(f"{path}.mode", f"unknown leg mode {mode!r}"))
        mode = "walk"
    numbers = {}
    for name, default in (("distance_m", None), ("duration_s", None), ("cost", 0.0)):
        value = doc.get(name, default)
        if value is None:
            problems.append(Violation(f"{path}.{name}", "missing required field"))
            value = 0.0
        elif not isinstance(value, (int, float)) or isinstance(value, bool) or value < 0:
            problems.append(Violation(f"{path}.{name}", "expected non-negative number"))
            value = 0.0
        numbers[name] = float(value)
    provider = doc.get("provider_id")
    if provider is not None and not isinstance(provider, str):
        problems.append(Violation(f"{path}.provider_id", "expected string or null"))
        provider = None
    if problems:
        return None, problems
    return Leg(mode=mode, provider_id=provider, **numbers), []


def route_from_document(doc: Any, path: str = "route") -> tuple[Route | None, list[Violation]]:
    problems: list[Violation] = []
    if not isinstance(doc, dict):
        return None, [Violation(path, f"expected object, got {type(doc).__name__}")]
    route_id = doc.get("id")
    if isinstance(route_id, (int, float)) and not isinstance(route_id, bool):
        route_id = format_number(route_id)
    if not isinstance(route_id, str) or not route_id:
        problems.append(Violation(f"{path}.id", "expected non-empty string"))
        route_id = ""
    else:
        route_id = str(route_id)
    raw_legs = doc.get("legs")
    legs: list[Leg] = []
    if not isinstance(raw_legs, list) or not raw_legs:
        problems.append(Violation(f"{path}.legs", "expected non-empty array"))
    else:
        for i, raw in enumerate(raw_legs):
            leg, leg_problems = leg_from_document(raw, f"{path}.legs[{i}]")
            problems.extend(leg_problems)
            if leg is not None:
                legs.append(leg)
    if problems:
        return None, problems
    return Route(id=route_id, legs=tuple(legs)), []


def routes_from_document(doc: Any, path: str = "routes") -> tuple[list[Route], list[Violation]]:
    """Accepts {"routes": [...]} or a bare array; route ids must be distinct."""
    if isinstance(doc, dict):
        doc = doc.get("routes", doc)
    if not isinstance(doc, list):
        return [], [Violation(path, "expected an array of routes")]
    problems: list[Violation] = []
    routes: list[Route] = []
    seen: set[str] = set()
    for i, raw in enumerate(doc):
        route, route_problems = route_from_document(raw, f"{path}[{i}]")
        problems.extend(route_problems)
        if route is None:
            continue
        if route.id in seen:
            problems.append(Violation(f"{path}[{i}].id", f"duplicate route id {route.id!r}"))
            continue
        seen.add(route.id)
        routes.append(route)
    return routes, problems


def ingest_routes(text: str) -> list[Route]:
    """Parse a routes.json document; raises SchemaError on any violation."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError([Violation("$", f"not valid JSON: {exc}")]) from exc
    routes, problems = routes_from_document(doc)
    if problems:
        raise SchemaError(problems)
    return routes


def leg_to_document(leg: Leg) -> dict:
    doc: dict[str, Any] = {
        "mode": leg.mode,
        "distance_m": format_number(leg.distance_m),
        "duration_s": format_number(leg.duration_s),
        "cost": format_number(leg.cost),
    }
    if leg.provider_id is not None:
        doc["provider_id"] = leg.provider_id
    return doc


def route_to_document(route: Route) -> dict:
    return {"id": route.id, "legs": [leg_to_document(leg) for leg in route.legs]}


def serialize_routes(routes) -> str:
    return json.dumps({"routes": [route_to_document(r) for r in routes]}, indent=2) + "\n"
