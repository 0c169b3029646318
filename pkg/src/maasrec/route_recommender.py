"""Route recommendation pipeline: profile-based filtering, several ranking
views (personal, plan usage, environmental, promotion), Borda-count fusion
and choice-architecture output (default option, badges, display limit)."""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime
from typing import Callable, Mapping, Sequence

from .adapters import WeatherProvider
from .context import ContextConfig, ContextState, infer_context
from .profiles import UserProfile
from .routes import Route
from .usage import Subscription, UsageLog, consumed_quota

NO_FEASIBLE_ROUTES = "no feasible routes"

# Leg modes are scored with the willingness answer of the closest plan mode;
# anything unmapped is neutral.
WILLINGNESS_PROXY = {
    "public_transport": "public_transport",
    "taxi": "taxi",
    "bike_sharing": "bike_sharing",
    "car_sharing": "car_sharing",
    "bike": "bike_sharing",
    "car": "car_sharing",
    "ride_sharing": "taxi",
}
NEUTRAL_PREFERENCE = 0.5

TREND_PENALTY = 0.5
PROMOTED_MODE_POINTS = 2
PROMOTED_MSP_POINTS = 1


@dataclass(frozen=True)
class RankedList:
    """One view's ordering of the candidate routes, best first."""

    source: str
    route_ids: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.route_ids)) != len(self.route_ids):
            raise ValueError(f"ranked list {self.source!r} repeats a route id")


@dataclass(frozen=True)
class RankMatrix:
    """k ranked lists over one shared set of n routes."""

    lists: tuple[RankedList, ...]

    def __post_init__(self):
        if not self.lists:
            raise ValueError("rank matrix needs at least one list")
        expected = set(self.lists[0].route_ids)
        for ranked in self.lists[1:]:
            if set(ranked.route_ids) != expected:
                raise ValueError(
                    f"list {ranked.source!r} ranks a different route set than {self.lists[0].source!r}"
                )


@dataclass(frozen=True)
class PersonalWeights:
    duration: float = 0.4
    cost: float = 0.3
    mode_preference: float = 0.3


@dataclass(frozen=True)
class EmissionConfig:
    """Grams CO2 per person-km by mode; deployment configuration."""

    factors: Mapping[str, float] = field(
        default_factory=lambda: {
            "walk": 0.0,
            "bike": 0.0,
            "bike_sharing": 5.0,
            "public_transport": 40.0,
            "ride_sharing": 90.0,
            "car_sharing": 130.0,
            "car": 180.0,
            "taxi": 180.0,
        }
    )
    default_factor: float = 100.0

    def __post_init__(self):
        object.__setattr__(self, "factors", dict(self.factors))

    def factor(self, mode: str) -> float:
        return self.factors.get(mode, self.default_factor)


# Extension slot: extra views plug in as (routes, profile, context) -> RankedList.
ExtraRanker = Callable[[Sequence[Route], UserProfile, ContextState], "RankedList | None"]


@dataclass(frozen=True)
class RouteRecommenderConfig:
    enable_environmental: bool = True
    enable_promotion: bool = True
    personal_weights: PersonalWeights = PersonalWeights()
    emissions: EmissionConfig = field(default_factory=EmissionConfig)
    display_limit: int = 5
    context: ContextConfig = field(default_factory=ContextConfig)
    # Stress/happiness view: disabled until a real model is plugged in.
    stress_happiness_ranker: ExtraRanker | None = None


def filter_routes(routes: Sequence[Route], profile: UserProfile) -> list[Route]:
    """Drop routes the traveler cannot or will not take: car legs without a
    driving license, any cycling without the ability, and rides whose bike or
    walk distance exceeds the profile thresholds. Order is preserved."""
    survivors = []
    for route in routes:
        if not profile.driving_license and any(leg.mode == "car" for leg in route.legs):
            continue
        if not profile.can_cycle and any(leg.mode in ("bike", "bike_sharing") for leg in route.legs):
            continue
        if route.bike_distance_m > profile.max_bike_m:
            continue
        if route.walk_distance_m > profile.max_walk_m:
            continue
        survivors.append(route)
    return survivors


def _minmax(values: Sequence[float]) -> list[float]:
    low, high = min(values), max(values)
    if high == low:
        return [0.0] * len(values)
    return [(value - low) / (high - low) for value in values]


def _order_ids(scored: Sequence[tuple[str, float]], descending: bool = True) -> tuple[str, ...]:
    sign = -1.0 if descending else 1.0
    return tuple(route_id for route_id, _ in sorted(scored, key=lambda e: (sign * e[1], e[0])))


def _leg_preference(mode: str, profile: UserProfile, acceptable_walk: bool) -> float:
    if mode == "walk":
        return 1.0 if acceptable_walk else 0.0
    key = WILLINGNESS_PROXY.get(mode)
    if key is None or key not in profile.willingness:
        return NEUTRAL_PREFERENCE
    return (5 - profile.willingness[key]) / 4


def mode_preference(route: Route, profile: UserProfile, context: ContextState) -> float:
    """Distance-weighted mean of per-leg willingness, in [0, 1]."""
    acceptable_walk = context.route_flags[route.id].acceptable_walk
    prefs = [_leg_preference(leg.mode, profile, acceptable_walk) for leg in route.legs]
    total = sum(leg.distance_m for leg in route.legs)
    if total == 0:
        return sum(prefs) / len(prefs)
    return sum(leg.distance_m * pref for leg, pref in zip(route.legs, prefs)) / total


def personal_rank(
    routes: Sequence[Route],
    profile: UserProfile,
    context: ContextState,
    weights: PersonalWeights = PersonalWeights(),
) -> RankedList:
    """Short, cheap and mode-agreeable first: utility combines normalized
    duration and cost (inverted) with the willingness mean."""
    durations = _minmax([route.total_duration_s for route in routes])
    costs = _minmax([route.total_cost for route in routes])
    scored = []
    for route, nd, nc in zip(routes, durations, costs):
        utility = (
            weights.duration * (1.0 - nd)
            + weights.cost * (1.0 - nc)
            + weights.mode_preference * mode_preference(route, profile, context)
        )
        scored.append((route.id, utility))
    return RankedList("personal", _order_ids(scored))


def plan_usage_score(
    route: Route,
    subscription: Subscription | None,
    log: UsageLog,
    context: ContextState,
    now: datetime,
) -> float:
    """Remaining-quota fraction for the route's main mode; walking is free
    (1.0), a mode outside the plan scores 0, and a mode already trending
    toward overuse is halved."""
    main = route.main_mode
    if main == "walk":
        score = 1.0
    elif subscription is None:
        score = 0.0
    else:
        quota = subscription.plan.quota_amount(main)
        if quota <= 0:
            score = 0.0
        else:
            used = consumed_quota(log, subscription, main, now)
            score = max(0.0, (quota - used) / quota)
    if context.usage_trends.get(main, False):
        score *= TREND_PENALTY
    return score


def plan_usage_rank(
    routes: Sequence[Route],
    subscription: Subscription | None,
    log: UsageLog,
    context: ContextState,
    now: datetime,
) -> RankedList:
    scored = [(route.id, plan_usage_score(route, subscription, log, context, now)) for route in routes]
    return RankedList("plan_usage", _order_ids(scored))


def route_emissions_g(route: Route, config: EmissionConfig) -> float:
    return sum((leg.distance_m / 1000.0) * config.factor(leg.mode) for leg in route.legs)


def environmental_rank(routes: Sequence[Route], config: EmissionConfig = EmissionConfig()) -> RankedList:
    scored = [(route.id, route_emissions_g(route, config)) for route in routes]
    return RankedList("environmental", _order_ids(scored, descending=False))


def promotion_rank(routes: Sequence[Route], context: ContextState) -> RankedList:
    scored = []
    for route in routes:
        flags = context.route_flags[route.id]
        points = (PROMOTED_MODE_POINTS if flags.promoted_mode else 0) + (
            PROMOTED_MSP_POINTS if flags.promoted_msp else 0
        )
        scored.append((route.id, float(points)))
    return RankedList("promotion", _order_ids(scored))


def borda_fuse(matrix: RankMatrix) -> list[tuple[str, int]]:
    """Sum positional points over the lists: position p of n earns n - 1 - p.

    Returns (route id, fused score) best first; ties break by ascending id.
    """
    n = len(matrix.lists[0].route_ids)
    scores = {route_id: 0 for route_id in matrix.lists[0].route_ids}
    for ranked in matrix.lists:
        for position, route_id in enumerate(ranked.route_ids):
            scores[route_id] += n - 1 - position
    return sorted(scores.items(), key=lambda entry: (-entry[1], entry[0]))


@dataclass(frozen=True)
class RouteEntry:
    route_id: str
    score: int
    badges: tuple[str, ...]
    is_default: bool


@dataclass(frozen=True)
class RouteRecommendation:
    entries: tuple[RouteEntry, ...]
    status: str  # "ok" or NO_FEASIBLE_ROUTES
    truncated_to: int | None  # None when the full list is shown


def recommend_routes(
    routes: Sequence[Route],
    profile: UserProfile,
    subscription: Subscription | None,
    log: UsageLog,
    weather: WeatherProvider | None,
    config: RouteRecommenderConfig,
    now: datetime,
    user_id: str | None = None,
    verbose: bool = False,
) -> RouteRecommendation:
    """Full pipeline: filter, infer context, rank under every enabled view,
    fuse with Borda count, mark the top entry as the default and attach the
    active context badges. The list is cut to the display limit unless
    verbose is set."""
    survivors = filter_routes(routes, profile)
    limit = None if verbose else config.display_limit
    if not survivors:
        return RouteRecommendation(entries=(), status=NO_FEASIBLE_ROUTES, truncated_to=limit)

    context = infer_context(
        survivors, profile, log, subscription, weather, config.context, now, user_id=user_id
    )
    lists = [
        personal_rank(survivors, profile, context, config.personal_weights),
        plan_usage_rank(survivors, subscription, log, context, now),
    ]
    if config.enable_environmental:
        lists.append(environmental_rank(survivors, config.emissions))
    if config.enable_promotion:
        lists.append(promotion_rank(survivors, context))
    if config.stress_happiness_ranker is not None:
        extra = config.stress_happiness_ranker(survivors, profile, context)
        if extra is not None:
            lists.append(extra)

    fused = borda_fuse(RankMatrix(tuple(lists)))
    if limit is not None:
        fused = fused[:limit]
    entries = tuple(
        RouteEntry(
            route_id=route_id,
            score=score,
            badges=context.route_flags[route_id].active(),
            is_default=(position == 0),
        )
        for position, (route_id, score) in enumerate(fused)
    )
    return RouteRecommendation(entries=entries, status="ok", truncated_to=limit)
