"""Plan recommendation: constraint filtering, monetary-equivalent feature
vectors, willingness-derived weights and weighted-similarity ranking.

All operations are pure; scores depend on the candidate set because vectors
are min-max normalized jointly over the user plus the candidates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .catalog import Catalog, MaasPlan
from .errors import EmptyCatalogError
from .profiles import FrequencyAnswer, UserProfile
from .rules import ConstraintRule, condition_holds, consequence_satisfied

# Frequency-to-monthly-rides conversion constants.
RIDES_PER_MONTH_DAILY = 30.0
WEEKS_PER_MONTH = 4.33
RIDES_PER_MONTH_FEW_PER_YEAR = 0.25


@dataclass(frozen=True)
class ModeRates:
    """Monetary equivalents used to put heterogeneous quotas on one scale.

    per_ride prices the user's usage frequency; per_pass and per_hour convert
    pass-count and driving-hour quotas; currency_unit_value scales quotas that
    are already a currency allowance (1.0 keeps them as-is).
    """

    per_ride: float | None = None
    per_pass: float | None = None
    per_hour: float | None = None
    currency_unit_value: float = 1.0

    def scaled(self, factor: float) -> "ModeRates":
        def scale(value: float | None) -> float | None:
            return None if value is None else value * factor

        return ModeRates(
            per_ride=scale(self.per_ride),
            per_pass=scale(self.per_pass),
            per_hour=scale(self.per_hour),
            currency_unit_value=self.currency_unit_value * factor,
        )


# Deployment defaults, roughly a HUF price level. Configuration, not ground truth.
DEFAULT_MODE_RATES: Mapping[str, ModeRates] = {
    "public_transport": ModeRates(per_ride=350.0, per_pass=9500.0, per_hour=None),
    "taxi": ModeRates(per_ride=1000.0, per_pass=None, per_hour=None),
    "bike_sharing": ModeRates(per_ride=300.0, per_pass=1500.0, per_hour=500.0),
    "car_sharing": ModeRates(per_ride=2500.0, per_pass=None, per_hour=2500.0),
}


@dataclass(frozen=True)
class VectorizationConfig:
    rates: Mapping[str, ModeRates] = field(default_factory=lambda: dict(DEFAULT_MODE_RATES))

    def mode_rates(self, mode: str) -> ModeRates:
        try:
            return self.rates[mode]
        except KeyError:
            raise ValueError(f"no monetary-equivalent rates configured for mode {mode!r}") from None

    def scaled(self, factor: float) -> "VectorizationConfig":
        return VectorizationConfig({mode: rates.scaled(factor) for mode, rates in self.rates.items()})


def csp_filter(catalog: Catalog, profile: UserProfile, rules: Iterable[ConstraintRule]) -> list[MaasPlan]:
    """Plans admissible under every rule whose condition the profile activates.

    A rule whose condition does not hold imposes nothing. Catalog order is
    preserved; an empty result is a valid outcome (the caller falls back).
    """
    active = [rule for rule in rules if condition_holds(rule, profile)]
    return [plan for plan in catalog.plans if all(consequence_satisfied(rule, plan) for rule in active)]


def _monthly_rides(answer: FrequencyAnswer) -> float:
    if answer.kind == "never":
        return 0.0
    if answer.kind == "once_per_day":
        return RIDES_PER_MONTH_DAILY
    if answer.kind == "times_per_month":
        return float(answer.n or 0)
    if answer.kind == "times_per_week":
        return WEEKS_PER_MONTH * float(answer.n or 0)
    return RIDES_PER_MONTH_FEW_PER_YEAR  # few_times_per_year


def user_vector(
    profile: UserProfile,
    config: VectorizationConfig,
    modes: Sequence[str],
) -> tuple[float, ...]:
    """Monetary-equivalent usage per mode: monthly rides times the per-ride rate."""
    values = []
    for mode in modes:
        answer = profile.usage.get(mode)
        if answer is None:
            raise ValueError(f"profile has no usage answer for declared mode {mode!r}")
        rides = _monthly_rides(answer)
        if rides == 0.0:
            values.append(0.0)
            continue
        rates = config.mode_rates(mode)
        if rates.per_ride is None:
            raise ValueError(f"missing per_ride rate for mode {mode!r}")
        values.append(rides * rates.per_ride)
    return tuple(values)


def plan_vector(
    plan: MaasPlan,
    config: VectorizationConfig,
    modes: Sequence[str],
) -> tuple[float, ...]:
    """Monetary-equivalent quota per mode; a mode absent from the plan is 0."""
    values = []
    for mode in modes:
        quota = next((q for q in plan.quotas if q.mode == mode), None)
        if quota is None or quota.amount == 0:
            values.append(0.0)
            continue
        rates = config.mode_rates(mode)
        if quota.unit == "monthly_pass_count":
            if rates.per_pass is None:
                raise ValueError(f"missing per_pass rate for mode {mode!r}")
            values.append(quota.amount * rates.per_pass)
        elif quota.unit == "driving_hours":
            if rates.per_hour is None:
                raise ValueError(f"missing per_hour rate for mode {mode!r}")
            values.append(quota.amount * rates.per_hour)
        else:  # currency_amount
            values.append(quota.amount * rates.currency_unit_value)
    return tuple(values)


def normalize(vectors: Sequence[Sequence[float]]) -> list[tuple[float, ...]]:
    """Per-feature min-max normalization over the given set.

    A constant feature column maps to 0 for every vector, so outputs always
    lie in [0, 1].
    """
    if not vectors:
        raise ValueError("nothing to normalize")
    length = len(vectors[0])
    if any(len(v) != length for v in vectors):
        raise ValueError("vectors must share one length")
    lows = [min(v[i] for v in vectors) for i in range(length)]
    highs = [max(v[i] for v in vectors) for i in range(length)]
    normalized = []
    for vector in vectors:
        row = []
        for i, value in enumerate(vector):
            span = highs[i] - lows[i]
            row.append(0.0 if span == 0 else (value - lows[i]) / span)
        normalized.append(tuple(row))
    return normalized


def weights_from_likert(values: Sequence[int]) -> tuple[float, ...]:
    """Turn 1..5 willingness answers (1 = most willing) into weights summing to 1."""
    if not values:
        raise ValueError("need at least one willingness answer")
    for value in values:
        if not isinstance(value, int) or isinstance(value, bool) or not 1 <= value <= 5:
            raise ValueError(f"willingness answers must be integers in 1..5, got {value!r}")
    raw = [6 - value for value in values]
    total = sum(raw)
    return tuple(r / total for r in raw)


def weighted_similarity(t: Sequence[float], s: Sequence[float], weights: Sequence[float]) -> float:
    """1 minus the weighted Euclidean distance between two normalized vectors.

    With both vectors in [0, 1] and non-negative weights summing to 1, the
    result is in [0, 1]; it is 1 exactly when the weighted distance is 0.
    """
    if not (len(t) == len(s) == len(weights)):
        raise ValueError(f"length mismatch: {len(t)}, {len(s)}, {len(weights)}")
    distance_sq = math.fsum(w * (a - b) ** 2 for w, a, b in zip(weights, t, s))
    return 1.0 - math.sqrt(distance_sq)


@dataclass(frozen=True)
class RankedPlans:
    """Plans in descending similarity order; ties broken by ascending id."""

    entries: tuple[tuple[str, float], ...]
    fallback_used: bool
    budget_applied: bool


def rank_by_similarity(
    candidates: Sequence[MaasPlan],
    profile: UserProfile,
    config: VectorizationConfig,
    modes: Sequence[str],
) -> list[tuple[str, float]]:
    vectors = [user_vector(profile, config, modes)]
    vectors.extend(plan_vector(plan, config, modes) for plan in candidates)
    normalized = normalize(vectors)
    user_norm, plan_norms = normalized[0], normalized[1:]
    try:
        likert = [profile.willingness[mode] for mode in modes]
    except KeyError as exc:
        raise ValueError(f"profile has no willingness answer for declared mode {exc.args[0]!r}") from None
    weights = weights_from_likert(likert)
    scored = [
        (plan.id, weighted_similarity(user_norm, plan_norm, weights))
        for plan, plan_norm in zip(candidates, plan_norms)
    ]
    scored.sort(key=lambda entry: (-entry[1], entry[0]))
    return scored


def recommend_plans(
    catalog: Catalog,
    profile: UserProfile,
    rules: Iterable[ConstraintRule],
    config: VectorizationConfig | None = None,
) -> RankedPlans:
    """Filter by constraints, then rank by similarity to the profile.

    When the constraints exclude everything, all plans within the profile's
    budget (all plans, if no budget is set) are ranked instead and the result
    is flagged fallback_used.
    """
    if not catalog.plans:
        raise EmptyCatalogError("catalog has no plans")
    config = config or VectorizationConfig()
    candidates = csp_filter(catalog, profile, rules)
    fallback_used = False
    budget_applied = False
    if not candidates:
        fallback_used = True
        if profile.budget is not None:
            budget_applied = True
            candidates = [plan for plan in catalog.plans if plan.price <= profile.budget]
        else:
            candidates = list(catalog.plans)
    if not candidates:
        return RankedPlans((), fallback_used=True, budget_applied=budget_applied)
    scored = rank_by_similarity(candidates, profile, config, catalog.modes)
    return RankedPlans(tuple(scored), fallback_used=fallback_used, budget_applied=budget_applied)
