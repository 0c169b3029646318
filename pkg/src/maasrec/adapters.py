"""Boundaries to the external routing engine and weather source.

The recommenders never talk to the outside world directly; they take one of
these adapters. The file and static variants back every test; the HTTP
variants are thin clients for real deployments.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol, Sequence

import requests

from .errors import AdapterError, SchemaError, Violation
from .routes import LEG_MODES, Leg, Route, routes_from_document


class RoutePlanner(Protocol):
    def plan_trip(self, origin: str, destination: str, depart_time: str | None = None) -> list[Route]:
        ...


@dataclass
class StubRoutePlanner:
    """Returns the same canned routes for every query."""

    routes: Sequence[Route]

    def plan_trip(self, origin: str, destination: str, depart_time: str | None = None) -> list[Route]:
        return list(self.routes)


class FileRoutePlanner:
    """Serves routes from a routes.json document, re-read on each query so
    fixtures can be edited while a service is running."""

    def __init__(self, path: str | Path):
        self.path = Path(path)

    def plan_trip(self, origin: str, destination: str, depart_time: str | None = None) -> list[Route]:
        try:
            text = self.path.read_text(encoding="utf-8")
        except OSError as exc:
            raise AdapterError(f"cannot read routes file {self.path}: {exc}") from exc
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise AdapterError(f"routes file {self.path} is not valid JSON: {exc}") from exc
        routes, problems = routes_from_document(doc)
        if problems:
            raise AdapterError(f"routes file {self.path} invalid: {problems[0]}")
        return routes


# External planner responses use varying field names; accept the common ones.
_MODE_SYNONYMS = {
    "walking": "walk",
    "foot": "walk",
    "bicycle": "bike",
    "cycling": "bike",
    "bikesharing": "bike_sharing",
    "carsharing": "car_sharing",
    "ridesharing": "ride_sharing",
    "transit": "public_transport",
    "pt": "public_transport",
    "bus": "public_transport",
    "rail": "public_transport",
    "subway": "public_transport",
    "tram": "public_transport",
}


class HttpRoutePlanner:
    """Generic client for a multimodal planner over HTTP.

    Sends GET {base_url}/plan?origin=...&destination=...&depart_time=... and
    expects a JSON body with "routes" (or "itineraries"): a list of objects
    with "id" (optional; position used otherwise) and "legs", where each leg
    maps "mode" (synonyms like walking/transit are normalized), "distance_m"
    or "distance", "duration_s" or "duration", optional "cost" and
    "provider_id" or "provider".
    """

    def __init__(self, base_url: str, timeout_s: float = 10.0):
        self.base_url = base_url.rstrip("/")
        self.timeout_s = timeout_s

    def plan_trip(self, origin: str, destination: str, depart_time: str | None = None) -> list[Route]:
        params = {"origin": origin, "destination": destination}
        if depart_time:
            params["depart_time"] = depart_time
        try:
            response = requests.get(f"{self.base_url}/plan", params=params, timeout=self.timeout_s)
            response.raise_for_status()
            doc = response.json()
        except (requests.RequestException, ValueError) as exc:
            raise AdapterError(f"routing engine request failed: {exc}") from exc
        return self._map_response(doc)

    def _map_response(self, doc) -> list[Route]:
        if isinstance(doc, dict):
            raw_routes = doc.get("routes", doc.get("itineraries"))
        else:
            raw_routes = doc
        if not isinstance(raw_routes, list):
            raise AdapterError("routing engine response has no route list")
        routes = []
        for index, raw in enumerate(raw_routes):
            if not isinstance(raw, dict):
                raise AdapterError(f"route {index} is not an object")
            route_id = str(raw.get("id", index + 1))
            legs = []
            for leg_index, raw_leg in enumerate(raw.get("legs", [])):
                if not isinstance(raw_leg, dict):
                    raise AdapterError(f"route {route_id} leg {leg_index} is not an object")
                mode = str(raw_leg.get("mode", "")).lower()
                mode = _MODE_SYNONYMS.get(mode, mode)
                if mode not in LEG_MODES:
                    raise AdapterError(f"route {route_id} leg {leg_index}: unmapped mode {raw_leg.get('mode')!r}")
                provider = raw_leg.get("provider_id", raw_leg.get("provider"))
                legs.append(
                    Leg(
                        mode=mode,
                        distance_m=float(raw_leg.get("distance_m", raw_leg.get("distance", 0.0))),
                        duration_s=float(raw_leg.get("duration_s", raw_leg.get("duration", 0.0))),
                        cost=float(raw_leg.get("cost", 0.0)),
                        provider_id=str(provider) if provider is not None else None,
                    )
                )
            if not legs:
                raise AdapterError(f"route {route_id} has no legs")
            routes.append(Route(id=route_id, legs=tuple(legs)))
        return routes


@dataclass(frozen=True)
class WeatherReading:
    temperature_c: float
    precipitation_mm_h: float


class WeatherProvider(Protocol):
    def current_weather(self, location: str | None = None) -> WeatherReading:
        ...


@dataclass
class StaticWeatherProvider:
    reading: WeatherReading

    def current_weather(self, location: str | None = None) -> WeatherReading:
        return self.reading


class FileWeatherProvider:
    """Reads {"temperature_c": ..., "precipitation_mm_h": ...} from a file."""

    def __init__(self, path: str | Path):
        self.path = Path(path)

    def current_weather(self, location: str | None = None) -> WeatherReading:
        doc = json.loads(self.path.read_text(encoding="utf-8"))
        return weather_from_document(doc)


def weather_from_document(doc) -> WeatherReading:
    if not isinstance(doc, dict):
        raise SchemaError([Violation("weather", "expected object")])
    problems = []
    values = {}
    for name in ("temperature_c", "precipitation_mm_h"):
        value = doc.get(name)
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            problems.append(Violation(f"weather.{name}", "expected number"))
        else:
            values[name] = float(value)
    if problems:
        raise SchemaError(problems)
    return WeatherReading(**values)
