"""MaaS plan catalog: bundle types, the catalog.json format and operator edits.

A plan bundles per-mode quotas (monthly passes, a currency allowance, driving
hours) with a price and a validity period. Quota units are heterogeneous on
purpose; conversion to a common monetary scale happens at ranking time, not
here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Any

from .errors import SchemaError, Violation

PLAN_MODES = ("public_transport", "taxi", "bike_sharing", "car_sharing")
QUOTA_UNITS = ("monthly_pass_count", "currency_amount", "driving_hours")


@dataclass(frozen=True)
class ModeQuota:
    """Amount of one transport mode included in a plan, with its unit."""

    mode: str
    amount: float
    unit: str


@dataclass(frozen=True)
class MaasPlan:
    id: str
    price: float
    currency: str = "EUR"
    period_days: int = 30
    quotas: tuple[ModeQuota, ...] = ()
    tags: tuple[str, ...] = ()

    def quota_amount(self, mode: str) -> float:
        """Amount for ``mode``; a mode without a quota line counts as 0."""
        for quota in self.quotas:
            if quota.mode == mode:
                return quota.amount
        return 0.0

    def quota_unit(self, mode: str) -> str | None:
        for quota in self.quotas:
            if quota.mode == mode:
                return quota.unit
        return None


@dataclass(frozen=True)
class Catalog:
    plans: tuple[MaasPlan, ...] = ()
    currency: str = "EUR"
    modes: tuple[str, ...] = PLAN_MODES

    def plan(self, plan_id: str) -> MaasPlan | None:
        for plan in self.plans:
            if plan.id == plan_id:
                return plan
        return None


def plan_violations(plan: MaasPlan, declared_modes: tuple[str, ...], path: str = "plan") -> list[Violation]:
    """Check one plan against the type invariants. Empty list means valid."""
    problems: list[Violation] = []
    if not plan.id or not isinstance(plan.id, str):
        problems.append(Violation(f"{path}.id", "must be a non-empty string"))
    if not isinstance(plan.price, (int, float)) or isinstance(plan.price, bool) or plan.price <= 0:
        problems.append(Violation(f"{path}.price", "must be a positive number"))
    if not isinstance(plan.period_days, int) or isinstance(plan.period_days, bool) or plan.period_days < 1:
        problems.append(Violation(f"{path}.period_days", "must be an integer >= 1"))
    if not plan.currency or not isinstance(plan.currency, str):
        problems.append(Violation(f"{path}.currency", "must be a non-empty string"))
    seen_modes: set[str] = set()
    for i, quota in enumerate(plan.quotas):
        qpath = f"{path}.quotas[{i}]"
        if quota.mode not in PLAN_MODES:
            problems.append(Violation(f"{qpath}.mode", f"unknown mode {quota.mode!r}"))
        elif quota.mode not in declared_modes:
            problems.append(Violation(f"{qpath}.mode", f"mode {quota.mode!r} not declared by the catalog"))
        if quota.mode in seen_modes:
            problems.append(Violation(f"{qpath}.mode", f"duplicate quota for mode {quota.mode!r}"))
        seen_modes.add(quota.mode)
        if not isinstance(quota.amount, (int, float)) or isinstance(quota.amount, bool) or quota.amount < 0:
            problems.append(Violation(f"{qpath}.amount", "must be a non-negative number"))
        if quota.unit not in QUOTA_UNITS:
            problems.append(Violation(f"{qpath}.unit", f"unknown unit {quota.unit!r}"))
    return problems


def catalog_violations(catalog: Catalog) -> list[Violation]:
    problems: list[Violation] = []
    if not catalog.currency or not isinstance(catalog.currency, str):
        problems.append(Violation("currency", "must be a non-empty string"))
    for i, mode in enumerate(catalog.modes):
        if mode not in PLAN_MODES:
            problems.append(Violation(f"modes[{i}]", f"unknown mode {mode!r}"))
    if len(set(catalog.modes)) != len(catalog.modes):
        problems.append(Violation("modes", "declared modes must be distinct"))
    seen_ids: set[str] = set()
    for i, plan in enumerate(catalog.plans):
        path = f"plans[{i}]"
        if plan.id in seen_ids:
            problems.append(Violation(f"{path}.id", f"duplicate plan id {plan.id!r}"))
        seen_ids.add(plan.id)
        problems.extend(plan_violations(plan, catalog.modes, path))
    # Unit consistency: within one catalog a mode is always quoted in one unit.
    unit_by_mode: dict[str, tuple[str, str]] = {}
    for i, plan in enumerate(catalog.plans):
        for j, quota in enumerate(plan.quotas):
            known = unit_by_mode.get(quota.mode)
            if known is None:
                unit_by_mode[quota.mode] = (quota.unit, f"plans[{i}].quotas[{j}]")
            elif known[0] != quota.unit:
                problems.append(
                    Violation(
                        f"plans[{i}].quotas[{j}].unit",
                        f"mode {quota.mode!r} uses unit {quota.unit!r} here but {known[0]!r} at {known[1]}",
                    )
                )
    return problems


def _require(value: Any, kind: type, path: str, problems: list[Violation], default: Any = None) -> Any:
    if isinstance(value, bool) and kind is not bool:
        problems.append(Violation(path, f"expected {kind.__name__}, got bool"))
        return default
    if not isinstance(value, kind):
        problems.append(Violation(path, f"expected {kind.__name__}, got {type(value).__name__}"))
        return default
    return value


def plan_from_document(doc: Any, path: str = "plan", default_currency: str = "EUR") -> tuple[MaasPlan | None, list[Violation]]:
    """Build a MaasPlan from decoded JSON, collecting structural violations."""
    problems: list[Violation] = []
    if not isinstance(doc, dict):
        return None, [Violation(path, f"expected object, got {type(doc).__name__}")]
    plan_id = doc.get("id")
    if isinstance(plan_id, (int, float)) and not isinstance(plan_id, bool):
        plan_id = format_number(plan_id)
    plan_id = _require(plan_id, str, f"{path}.id", problems, default="")
    price = doc.get("price")
    if not isinstance(price, (int, float)) or isinstance(price, bool):
        problems.append(Violation(f"{path}.price", "expected number"))
        price = 0.0
    currency = doc.get("currency", default_currency)
    currency = _require(currency, str, f"{path}.currency", problems, default=default_currency)
    period_days = doc.get("period_days", 30)
    if not isinstance(period_days, int) or isinstance(period_days, bool):
        problems.append(Violation(f"{path}.period_days", "expected integer"))
        period_days = 30
    raw_quotas = doc.get("quotas", [])
    quotas: list[ModeQuota] = []
    if not isinstance(raw_quotas, list):
        problems.append(Violation(f"{path}.quotas", "expected array"))
        raw_quotas = []
    for i, raw in enumerate(raw_quotas):
        qpath = f"{path}.quotas[{i}]"
        if not isinstance(raw, dict):
            problems.append(Violation(qpath, "expected object"))
            continue
        mode = _require(raw.get("mode"), str, f"{qpath}.mode", problems, default="")
        amount = raw.get("amount")
        if not isinstance(amount, (int, float)) or isinstance(amount, bool):
            problems.append(Violation(f"{qpath}.amount", "expected number"))
            amount = 0.0
        unit = _require(raw.get("unit"), str, f"{qpath}.unit", problems, default="")
        quotas.append(ModeQuota(mode=mode, amount=float(amount), unit=unit))
    raw_tags = doc.get("tags", [])
    tags: list[str] = []
    if not isinstance(raw_tags, list):
        problems.append(Violation(f"{path}.tags", "expected array of strings"))
    else:
        for i, tag in enumerate(raw_tags):
            tags.append(_require(tag, str, f"{path}.tags[{i}]", problems, default=""))
    if problems:
        return None, problems
    return (
        MaasPlan(
            id=plan_id,
            price=float(price),
            currency=currency,
            period_days=period_days,
            quotas=tuple(quotas),
            tags=tuple(tags),
        ),
        [],
    )


def parse_catalog(text: str) -> Catalog:
    """Parse a catalog.json document. Raises SchemaError listing every problem."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError([Violation("$", f"not valid JSON: {exc}")]) from exc
    if not isinstance(doc, dict):
        raise SchemaError([Violation("$", "expected a JSON object")])
    problems: list[Violation] = []
    currency = doc.get("currency", "EUR")
    currency = _require(currency, str, "currency", problems, default="EUR")
    raw_modes = doc.get("modes", list(PLAN_MODES))
    modes: tuple[str, ...]
    if not isinstance(raw_modes, list) or not all(isinstance(m, str) for m in raw_modes):
        problems.append(Violation("modes", "expected array of strings"))
        modes = PLAN_MODES
    else:
        modes = tuple(raw_modes)
    raw_plans = doc.get("plans", [])
    plans: list[MaasPlan] = []
    if not isinstance(raw_plans, list):
        problems.append(Violation("plans", "expected array"))
        raw_plans = []
    for i, raw in enumerate(raw_plans):
        plan, plan_problems = plan_from_document(raw, f"plans[{i}]", default_currency=currency)
        problems.extend(plan_problems)
        if plan is not None:
            plans.append(plan)
    catalog = Catalog(plans=tuple(plans), currency=currency, modes=modes)
    problems.extend(catalog_violations(catalog))
    if problems:
        raise SchemaError(problems)
    return catalog


def format_number(value: float) -> Any:
    """Render integral floats as ints so files stay diff-friendly."""
    if isinstance(value, int):
        return value
    return int(value) if float(value).is_integer() else value


def plan_to_document(plan: MaasPlan) -> dict:
    return {
        "id": plan.id,
        "price": format_number(plan.price),
        "currency": plan.currency,
        "period_days": plan.period_days,
        "quotas": [
            {"mode": q.mode, "amount": format_number(q.amount), "unit": q.unit} for q in plan.quotas
        ],
        "tags": list(plan.tags),
    }


def catalog_to_document(catalog: Catalog) -> dict:
    return {
        "currency": catalog.currency,
        "modes": list(catalog.modes),
        "plans": [plan_to_document(p) for p in catalog.plans],
    }


def serialize_catalog(catalog: Catalog) -> str:
    return json.dumps(catalog_to_document(catalog), indent=2) + "\n"


def upsert_plan(catalog: Catalog, plan: MaasPlan) -> Catalog:
    """Insert or replace by plan id; the result must still validate."""
    replaced = False
    plans: list[MaasPlan] = []
    for existing in catalog.plans:
        if existing.id == plan.id:
            plans.append(plan)
            replaced = True
        else:
            plans.append(existing)
    if not replaced:
        plans.append(plan)
    result = replace(catalog, plans=tuple(plans))
    problems = catalog_violations(result)
    if problems:
        raise SchemaError(problems)
    return result


def remove_plan(catalog: Catalog, plan_id: str) -> tuple[Catalog, bool]:
    """Remove by id. Returns (catalog, removed); a missing id is a no-op."""
    plans = tuple(p for p in catalog.plans if p.id != plan_id)
    removed = len(plans) != len(catalog.plans)
    return (replace(catalog, plans=plans) if removed else catalog), removed
