import json
import random

import pytest

from maasrec.catalog import (
    Catalog,
    MaasPlan,
    ModeQuota,
    parse_catalog,
    plan_from_document,
    remove_plan,
    serialize_catalog,
    upsert_plan,
)
from maasrec.errors import SchemaError

from conftest import DEMO_CATALOG_DOC


def test_parse_demo_catalog(demo_catalog):
    assert len(demo_catalog.plans) == 2
    plan = demo_catalog.plan("1")
    assert plan is not None
    assert len(plan.quotas) == 4
    assert plan.quota_amount("taxi") == 3000
    assert plan.quota_unit("car_sharing") == "driving_hours"
    assert demo_catalog.currency == "HUF"


def test_parse_plan_without_quotas_reads_all_modes_as_zero():
    doc = {"plans": [{"id": "p", "price": 1000, "period_days": 30, "quotas": []}]}
    catalog = parse_catalog(json.dumps(doc))
    plan = catalog.plans[0]
    for mode in catalog.modes:
        assert plan.quota_amount(mode) == 0


def test_parse_rejects_duplicate_ids():
    doc = {
        "plans": [
            {"id": "1", "price": 100, "period_days": 30},
            {"id": "1", "price": 200, "period_days": 30},
        ]
    }
    with pytest.raises(SchemaError) as excinfo:
        parse_catalog(json.dumps(doc))
    assert any("duplicate" in v.reason for v in excinfo.value.violations)


def test_parse_rejects_negative_quota():
    doc = {
        "plans": [
            {
                "id": "1",
                "price": 100,
                "period_days": 30,
                "quotas": [{"mode": "taxi", "amount": -5, "unit": "currency_amount"}],
            }
        ]
    }
    with pytest.raises(SchemaError) as excinfo:
        parse_catalog(json.dumps(doc))
    assert any("quotas[0].amount" in v.path for v in excinfo.value.violations)


def test_parse_rejects_unknown_mode():
    doc = {
        "plans": [
            {
                "id": "1",
                "price": 100,
                "period_days": 30,
                "quotas": [{"mode": "jetpack", "amount": 1, "unit": "monthly_pass_count"}],
            }
        ]
    }
    with pytest.raises(SchemaError) as excinfo:
        parse_catalog(json.dumps(doc))
    assert any("unknown mode" in v.reason for v in excinfo.value.violations)


def test_parse_rejects_malformed_document():
    with pytest.raises(SchemaError):
        parse_catalog("{not json")


def test_parse_rejects_inconsistent_units_per_mode():
    doc = {
        "plans": [
            {
                "id": "1",
                "price": 100,
                "period_days": 30,
                "quotas": [{"mode": "taxi", "amount": 3000, "unit": "currency_amount"}],
            },
            {
                "id": "2",
                "price": 100,
                "period_days": 30,
                "quotas": [{"mode": "taxi", "amount": 2, "unit": "driving_hours"}],
            },
        ]
    }
    with pytest.raises(SchemaError) as excinfo:
        parse_catalog(json.dumps(doc))
    assert any("unit" in v.path for v in excinfo.value.violations)


def test_serialize_parse_round_trip_is_fixed_point(demo_catalog):
    once = parse_catalog(serialize_catalog(demo_catalog))
    twice = parse_catalog(serialize_catalog(once))
    assert once == demo_catalog
    assert twice == once
    assert serialize_catalog(twice) == serialize_catalog(once)


def test_upsert_into_empty_catalog(demo_catalog):
    plan = demo_catalog.plan("2")
    empty = Catalog(plans=(), currency="HUF", modes=demo_catalog.modes)
    updated = upsert_plan(empty, plan)
    assert len(updated.plans) == 1
    assert updated.plans[0] == plan


def test_upsert_is_idempotent(demo_catalog):
    plan = demo_catalog.plan("1")
    once = upsert_plan(demo_catalog, plan)
    twice = upsert_plan(once, plan)
    assert len(twice.plans) == len(demo_catalog.plans)
    assert twice == once


def test_upsert_replaces_existing_plan(demo_catalog):
    plan, problems = plan_from_document(
        dict(DEMO_CATALOG_DOC["plans"][0], price=21000), default_currency="HUF"
    )
    assert not problems
    updated = upsert_plan(demo_catalog, plan)
    assert len(updated.plans) == 2
    assert updated.plan("1").price == 21000


def test_upsert_rejects_invalid_plan(demo_catalog):
    bad = MaasPlan(id="x", price=-1)
    with pytest.raises(SchemaError):
        upsert_plan(demo_catalog, bad)


def test_remove_plan(demo_catalog):
    updated, removed = remove_plan(demo_catalog, "1")
    assert removed
    assert [p.id for p in updated.plans] == ["2"]


def test_remove_missing_plan_is_flagged_noop(demo_catalog):
    updated, removed = remove_plan(demo_catalog, "999")
    assert not removed
    assert updated == demo_catalog


def test_remove_then_upsert_restores_catalog(demo_catalog):
    plan = demo_catalog.plan("2")
    without, removed = remove_plan(demo_catalog, "2")
    assert removed
    restored = upsert_plan(without, plan)
    assert restored == demo_catalog


def test_random_edit_sequences_match_map_oracle(demo_catalog):
    """Replay upserts/removes against a plain dict; ids stay unique throughout."""
    rng = random.Random(7)
    catalog = demo_catalog
    oracle = {p.id: p for p in demo_catalog.plans}
    for step in range(200):
        plan_id = str(rng.randint(1, 8))
        if rng.random() < 0.6:
            plan = MaasPlan(
                id=plan_id,
                price=float(rng.randint(1, 30000)),
                currency="HUF",
                period_days=rng.randint(1, 60),
                quotas=(ModeQuota("taxi", float(rng.randint(0, 5000)), "currency_amount"),),
            )
            catalog = upsert_plan(catalog, plan)
            oracle[plan_id] = plan
        else:
            catalog, removed = remove_plan(catalog, plan_id)
            assert removed == (plan_id in oracle)
            oracle.pop(plan_id, None)
        ids = [p.id for p in catalog.plans]
        assert len(ids) == len(set(ids))
        assert {p.id: p for p in catalog.plans} == oracle
