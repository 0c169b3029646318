"""Shared fixtures: a small two-plan demo catalog, its three constraint
rules, and builders for profiles, routes and trips."""

from __future__ import annotations

import json
from datetime import datetime, timezone

import pytest

from maasrec.catalog import Catalog, parse_catalog
from maasrec.profiles import FrequencyAnswer, UserProfile
from maasrec.routes import Leg, Route
from maasrec.rules import load_rules
from maasrec.usage import TripRecord
from maasrec.catalog import ModeQuota

DEMO_CATALOG_DOC = {
    "currency": "HUF",
    "modes": ["public_transport", "taxi", "bike_sharing", "car_sharing"],
    "plans": [
        {
            "id": "1",
            "price": 20950,
            "period_days": 30,
            "quotas": [
                {"mode": "public_transport", "amount": 1, "unit": "monthly_pass_count"},
                {"mode": "taxi", "amount": 3000, "unit": "currency_amount"},
                {"mode": "bike_sharing", "amount": 1, "unit": "monthly_pass_count"},
                {"mode": "car_sharing", "amount": 3, "unit": "driving_hours"},
            ],
        },
        {
            "id": "2",
            "price": 17450,
            "period_days": 30,
            "quotas": [
                {"mode": "public_transport", "amount": 1, "unit": "monthly_pass_count"},
                {"mode": "bike_sharing", "amount": 1, "unit": "monthly_pass_count"},
                {"mode": "car_sharing", "amount": 3, "unit": "driving_hours"},
            ],
        },
    ],
}

DEMO_RULES_TEXT = """\
# demo constraint knowledge base
If user.driving_license='No' then product.car_sharing=0
If user.fare_reductions='Yes' then product.id in {50,51,52}
If user.carsharing_usage='every_day' then product.car_sharing!=0
"""


@pytest.fixture
def demo_catalog() -> Catalog:
    return parse_catalog(json.dumps(DEMO_CATALOG_DOC))


@pytest.fixture
def demo_rules():
    return load_rules(DEMO_RULES_TEXT)


def make_profile(**overrides) -> UserProfile:
    usage = {
        "public_transport": FrequencyAnswer("once_per_day"),
        "taxi": FrequencyAnswer("never"),
        "bike_sharing": FrequencyAnswer("times_per_week", 2),
        "car_sharing": FrequencyAnswer("few_times_per_year"),
    }
    usage.update(overrides.pop("usage", {}))
    willingness = {"public_transport": 1, "taxi": 3, "bike_sharing": 2, "car_sharing": 3}
    willingness.update(overrides.pop("willingness", {}))
    fields = dict(
        driving_license=True,
        can_cycle=True,
        fare_reductions=False,
        usage=usage,
        willingness=willingness,
    )
    fields.update(overrides)
    return UserProfile(**fields)


def make_leg(mode: str, distance_m: float, duration_s: float = 600.0, cost: float = 0.0, provider_id=None) -> Leg:
    return Leg(mode=mode, distance_m=distance_m, duration_s=duration_s, cost=cost, provider_id=provider_id)


def make_route(route_id: str, legs) -> Route:
    return Route(id=route_id, legs=tuple(legs))


def make_trip(user_id: str, timestamp: datetime, route: Route, consumed=()) -> TripRecord:
    return TripRecord(
        user_id=user_id,
        timestamp=timestamp,
        route=route,
        quota_consumed=tuple(ModeQuota(mode=m, amount=a, unit=u) for m, a, u in consumed),
    )


def utc(year, month, day, hour=0, minute=0, second=0) -> datetime:
    return datetime(year, month, day, hour, minute, second, tzinfo=timezone.utc)
