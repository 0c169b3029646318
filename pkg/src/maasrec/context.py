"""Binary context flags driving route relevance: per-user usage trends and
weather, plus per-route distance acceptability, unfamiliarity and promotions.

Every flag is a pure function of its inputs; the weather provider is the one
external call and fails safe (flag false, reading marked stale).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime
from typing import Iterable, Mapping

from .adapters import WeatherProvider, WeatherReading
from .profiles import UserProfile
from .routes import Route
from .usage import Subscription, UsageLog, consumed_quota

# Modes whose overuse is tracked against the plan quota.
TREND_MODES = ("car_sharing", "bike_sharing", "taxi", "ride_sharing")

# Route signature distance bucket for the familiarity check.
SIGNATURE_BUCKET_M = 500.0


@dataclass(frozen=True)
class ContextConfig:
    theta_usage: float = 0.05
    theta_time: float = 0.25
    theta_temp_c: float = 15.0
    theta_precip_mm_h: float = 0.5
    promoted_modes: Mapping[str, float] = field(default_factory=dict)  # mode -> min distance m
    promoted_providers: frozenset[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "promoted_modes", dict(self.promoted_modes))
        object.__setattr__(self, "promoted_providers", frozenset(self.promoted_providers))


@dataclass(frozen=True)
class RouteContextFlags:
    acceptable_walk: bool
    acceptable_bike: bool
    unfamiliar: bool
    promoted_mode: bool
    promoted_msp: bool

    def active(self) -> tuple[str, ...]:
        names = ("acceptable_walk", "acceptable_bike", "unfamiliar", "promoted_mode", "promoted_msp")
        return tuple(name for name in names if getattr(self, name))


@dataclass(frozen=True)
class ContextState:
    usage_trends: Mapping[str, bool]  # keyed by TREND_MODES
    nice_weather: bool
    weather_stale: bool
    route_flags: Mapping[str, RouteContextFlags]  # keyed by route id

    def __post_init__(self):
        object.__setattr__(self, "usage_trends", dict(self.usage_trends))
        object.__setattr__(self, "route_flags", dict(self.route_flags))


def usage_trend(
    log: UsageLog,
    subscription: Subscription | None,
    mode: str,
    now: datetime,
    config: ContextConfig,
) -> bool:
    """True when consumption runs ahead of uniform use by more than
    theta_usage (as a fraction of the quota) while less than theta_time of
    the period remains. A plan without the mode never trends."""
    if subscription is None:
        return False
    quota = subscription.plan.quota_amount(mode)
    if quota <= 0:
        return False
    elapsed = subscription.elapsed_fraction(now)
    used = consumed_quota(log, subscription, mode, now)
    overuse = (used - elapsed * quota) / quota
    return overuse > config.theta_usage and (1.0 - elapsed) < config.theta_time


def acceptable_distance(route: Route, profile: UserProfile) -> tuple[bool, bool]:
    """Strictly-below-threshold checks for walking and cycling distance."""
    return route.walk_distance_m < profile.max_walk_m, route.bike_distance_m < profile.max_bike_m


def route_signature(route: Route) -> tuple:
    return tuple(leg.mode for leg in route.legs), int(route.total_distance_m // SIGNATURE_BUCKET_M)


def unfamiliar(route: Route, log: UsageLog, profile: UserProfile, user_id: str) -> bool:
    """True when the user has never used the route's main mode, or has never
    taken a route with the same signature (leg-mode sequence plus total
    distance bucketed to 500 m)."""
    records = log.records_for(user_id)
    main_mode_seen = any(leg.mode == route.main_mode for record in records for leg in record.route.legs)
    signature = route_signature(route)
    signature_seen = any(route_signature(record.route) == signature for record in records)
    return not main_mode_seen or not signature_seen


def nice_weather(reading: WeatherReading, config: ContextConfig) -> bool:
    return reading.temperature_c > config.theta_temp_c and reading.precipitation_mm_h < config.theta_precip_mm_h


def promoted_flags(route: Route, config: ContextConfig) -> tuple[bool, bool]:
    """(promoted_mode, promoted_msp) for the route's main mode."""
    main = route.main_mode
    promoted_mode = False
    if main in config.promoted_modes:
        promoted_mode = route.distance_on(main) > config.promoted_modes[main]
    main_providers = {leg.provider_id for leg in route.legs if leg.mode == main and leg.provider_id}
    promoted_msp = bool(main_providers & config.promoted_providers)
    return promoted_mode, promoted_msp


def infer_context(
    routes: Iterable[Route],
    profile: UserProfile,
    log: UsageLog,
    subscription: Subscription | None,
    weather: WeatherProvider | None,
    config: ContextConfig,
    now: datetime,
    user_id: str | None = None,
) -> ContextState:
    """Evaluate every flag for the given routes and moment.

    The user identity defaults to the subscription's; weather-provider
    failures leave nice_weather false and mark the reading stale.
    """
    if user_id is None:
        user_id = subscription.user_id if subscription is not None else ""

    trends = {mode: usage_trend(log, subscription, mode, now, config) for mode in TREND_MODES}

    weather_ok = False
    stale = False
    if weather is None:
        stale = True
    else:
        try:
            reading = weather.current_weather()
        except Exception:
            stale = True
        else:
            weather_ok = nice_weather(reading, config)

    flags: dict[str, RouteContextFlags] = {}
    for route in routes:
        walk_ok, bike_ok = acceptable_distance(route, profile)
        promoted_mode, promoted_msp = promoted_flags(route, config)
        flags[route.id] = RouteContextFlags(
            acceptable_walk=walk_ok,
            acceptable_bike=bike_ok,
            unfamiliar=unfamiliar(route, log, profile, user_id),
            promoted_mode=promoted_mode,
            promoted_msp=promoted_msp,
        )

    return ContextState(usage_trends=trends, nice_weather=weather_ok, weather_stale=stale, route_flags=flags)
