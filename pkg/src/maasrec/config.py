"""Service configuration: one JSON file wiring together the vectorization
rates, context thresholds, route-recommender options and external adapters.

Environment overrides: MAASREC_PORT and MAASREC_DATA_DIR.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from .adapters import (
    FileRoutePlanner,
    FileWeatherProvider,
    HttpRoutePlanner,
    RoutePlanner,
    StaticWeatherProvider,
    WeatherProvider,
    WeatherReading,
)
from .context import ContextConfig
from .errors import SchemaError, Violation
from .plans import ModeRates, VectorizationConfig
from .route_recommender import EmissionConfig, PersonalWeights, RouteRecommenderConfig


@dataclass(frozen=True)
class AdapterSpec:
    kind: str
    options: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "options", dict(self.options))


@dataclass(frozen=True)
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8000
    data_dir: Path = Path("data")
    vectorization: VectorizationConfig = field(default_factory=VectorizationConfig)
    route_recommender: RouteRecommenderConfig = field(default_factory=RouteRecommenderConfig)
    routing: AdapterSpec | None = None
    weather: AdapterSpec | None = None


def _vectorization_from_document(doc: Any, problems: list[Violation]) -> VectorizationConfig:
    if doc is None:
        return VectorizationConfig()
    if not isinstance(doc, dict) or not isinstance(doc.get("modes", {}), dict):
        problems.append(Violation("vectorization", "expected object with a 'modes' map"))
        return VectorizationConfig()
    base = dict(VectorizationConfig().rates)
    for mode, raw in doc.get("modes", {}).items():
        if not isinstance(raw, dict):
            problems.append(Violation(f"vectorization.modes.{mode}", "expected object"))
            continue
        current = base.get(mode, ModeRates())
        base[mode] = ModeRates(
            per_ride=raw.get("per_ride", current.per_ride),
            per_pass=raw.get("per_pass", current.per_pass),
            per_hour=raw.get("per_hour", current.per_hour),
            currency_unit_value=raw.get("currency_unit_value", current.currency_unit_value),
        )
    return VectorizationConfig(base)


def _context_from_document(doc: Any, problems: list[Violation]) -> ContextConfig:
    if doc is None:
        return ContextConfig()
    if not isinstance(doc, dict):
        problems.append(Violation("context", "expected object"))
        return ContextConfig()
    defaults = ContextConfig()
    promoted_modes = doc.get("promoted_modes", {})
    if not isinstance(promoted_modes, dict):
        problems.append(Violation("context.promoted_modes", "expected object of mode -> min distance m"))
        promoted_modes = {}
    providers = doc.get("promoted_providers", [])
    if not isinstance(providers, list):
        problems.append(Violation("context.promoted_providers", "expected array of provider ids"))
        providers = []
    return ContextConfig(
        theta_usage=doc.get("theta_usage", defaults.theta_usage),
        theta_time=doc.get("theta_time", defaults.theta_time),
        theta_temp_c=doc.get("theta_temp_c", defaults.theta_temp_c),
        theta_precip_mm_h=doc.get("theta_precip_mm_h", defaults.theta_precip_mm_h),
        promoted_modes={str(mode): float(dist) for mode, dist in promoted_modes.items()},
        promoted_providers=frozenset(str(p) for p in providers),
    )


def _route_recommender_from_document(doc: Any, context: ContextConfig, problems: list[Violation]) -> RouteRecommenderConfig:
    defaults = RouteRecommenderConfig()
    if doc is None:
        return RouteRecommenderConfig(context=context)
    if not isinstance(doc, dict):
        problems.append(Violation("route_recommender", "expected object"))
        return RouteRecommenderConfig(context=context)
    weights_doc = doc.get("personal_weights", {})
    if not isinstance(weights_doc, dict):
        problems.append(Violation("route_recommender.personal_weights", "expected object"))
        weights_doc = {}
    weights = PersonalWeights(
        duration=weights_doc.get("duration", defaults.personal_weights.duration),
        cost=weights_doc.get("cost", defaults.personal_weights.cost),
        mode_preference=weights_doc.get("mode_preference", defaults.personal_weights.mode_preference),
    )
    factors_doc = doc.get("emission_factors", {})
    if not isinstance(factors_doc, dict):
        problems.append(Violation("route_recommender.emission_factors", "expected object"))
        factors_doc = {}
    base_factors = dict(EmissionConfig().factors)
    base_factors.update({str(mode): float(value) for mode, value in factors_doc.items()})
    emissions = EmissionConfig(
        factors=base_factors,
        default_factor=doc.get("default_emission_factor", defaults.emissions.default_factor),
    )
    return RouteRecommenderConfig(
        enable_environmental=doc.get("enable_environmental", defaults.enable_environmental),
        enable_promotion=doc.get("enable_promotion", defaults.enable_promotion),
        personal_weights=weights,
        emissions=emissions,
        display_limit=doc.get("display_limit", defaults.display_limit),
        context=context,
    )


def _adapter_from_document(doc: Any, path: str, problems: list[Violation]) -> AdapterSpec | None:
    if doc is None:
        return None
    if not isinstance(doc, dict) or not isinstance(doc.get("kind"), str):
        problems.append(Violation(path, "expected object with a string 'kind'"))
        return None
    options = {key: value for key, value in doc.items() if key != "kind"}
    return AdapterSpec(kind=doc["kind"], options=options)


def service_config_from_document(doc: Any) -> ServiceConfig:
    if not isinstance(doc, dict):
        raise SchemaError([Violation("$", "expected a JSON object")])
    problems: list[Violation] = []
    listen = doc.get("listen", {})
    if not isinstance(listen, dict):
        problems.append(Violation("listen", "expected object"))
        listen = {}
    host = listen.get("host", "127.0.0.1")
    port = listen.get("port", 8000)
    if not isinstance(port, int) or isinstance(port, bool) or not 1 <= port <= 65535:
        problems.append(Violation("listen.port", "expected integer in 1..65535"))
        port = 8000
    data_dir = doc.get("data_dir", "data")
    if not isinstance(data_dir, str):
        problems.append(Violation("data_dir", "expected string path"))
        data_dir = "data"
    vectorization = _vectorization_from_document(doc.get("vectorization"), problems)
    context = _context_from_document(doc.get("context"), problems)
    route_config = _route_recommender_from_document(doc.get("route_recommender"), context, problems)
    routing = _adapter_from_document(doc.get("routing"), "routing", problems)
    weather = _adapter_from_document(doc.get("weather"), "weather", problems)
    if problems:
        raise SchemaError(problems)
    return ServiceConfig(
        host=host,
        port=port,
        data_dir=Path(data_dir),
        vectorization=vectorization,
        route_recommender=route_config,
        routing=routing,
        weather=weather,
    )


def load_service_config(path: str | Path | None = None, env: Mapping[str, str] | None = None) -> ServiceConfig:
    """Read the config file (defaults apply when absent) and apply overrides."""
    env = os.environ if env is None else env
    if path is None:
        config = ServiceConfig()
    else:
        text = Path(path).read_text(encoding="utf-8")
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError([Violation("$", f"not valid JSON: {exc}")]) from exc
        config = service_config_from_document(doc)
    port_override = env.get("MAASREC_PORT")
    data_override = env.get("MAASREC_DATA_DIR")
    updates: dict[str, Any] = {}
    if port_override:
        updates["port"] = int(port_override)
    if data_override:
        updates["data_dir"] = Path(data_override)
    if updates:
        from dataclasses import replace

        config = replace(config, **updates)
    return config


def build_route_planner(spec: AdapterSpec | None) -> RoutePlanner | None:
    if spec is None:
        return None
    if spec.kind == "file":
        return FileRoutePlanner(spec.options["path"])
    if spec.kind == "http":
        return HttpRoutePlanner(spec.options["base_url"], timeout_s=spec.options.get("timeout_s", 10.0))
    raise SchemaError([Violation("routing.kind", f"unknown routing adapter kind {spec.kind!r}")])


def build_weather_provider(spec: AdapterSpec | None) -> WeatherProvider | None:
    if spec is None:
        return None
    if spec.kind == "static":
        return StaticWeatherProvider(
            WeatherReading(
                temperature_c=float(spec.options.get("temperature_c", 15.0)),
                precipitation_mm_h=float(spec.options.get("precipitation_mm_h", 0.0)),
            )
        )
    if spec.kind == "file":
        return FileWeatherProvider(spec.options["path"])
    raise SchemaError([Violation("weather.kind", f"unknown weather adapter kind {spec.kind!r}")])
