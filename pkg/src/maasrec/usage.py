"""Trip log and subscriptions: append-only usage records per user, persisted
as one ndjson file per user, plus quota-consumption queries over a window."""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from pathlib import Path
from typing import Any

from .catalog import MaasPlan, ModeQuota, format_number, plan_from_document, plan_to_document
from .errors import SchemaError, Violation
from .routes import Route, route_from_document, route_to_document


def parse_timestamp(text: str) -> datetime:
    """ISO-8601 to aware UTC; naive inputs are taken as UTC."""
    # Python 3.10 fromisoformat rejects the 'Z' suffix JS clients produce.
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    moment = datetime.fromisoformat(text)
    if moment.tzinfo is None:
        return moment.replace(tzinfo=timezone.utc)
    return moment.astimezone(timezone.utc)


def timestamp_text(moment: datetime) -> str:
    if moment.tzinfo is None:
        moment = moment.replace(tzinfo=timezone.utc)
    return moment.astimezone(timezone.utc).isoformat()


@dataclass(frozen=True)
class TripRecord:
    user_id: str
    timestamp: datetime
    route: Route
    quota_consumed: tuple[ModeQuota, ...] = ()


@dataclass(frozen=True)
class Subscription:
    user_id: str
    plan: MaasPlan
    start: datetime
    end: datetime

    def __post_init__(self):
        if self.start >= self.end:
            raise ValueError("subscription start must precede end")

    @classmethod
    def from_plan(cls, user_id: str, plan: MaasPlan, start: datetime) -> "Subscription":
        return cls(user_id=user_id, plan=plan, start=start, end=start + timedelta(days=plan.period_days))

    def elapsed_fraction(self, now: datetime) -> float:
        return (now - self.start) / (self.end - self.start)


class UsageLog:
    """Append-only trip log keyed by user.

    With a directory set, every append is written to usage/<user_id>.ndjson
    and fsynced before returning; without one the log is in-memory only.
    Appends are serialized per user; reads return immutable snapshots.
    """

    def __init__(self, directory: str | Path | None = None):
        self._directory = Path(directory) if directory is not None else None
        self._records: dict[str, list[TripRecord]] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()
        if self._directory is not None:
            self._directory.mkdir(parents=True, exist_ok=True)
            self._load_existing()

    def _load_existing(self) -> None:
        assert self._directory is not None
        for path in sorted(self._directory.glob("*.ndjson")):
            records = self._records.setdefault(path.stem, [])
            with path.open("r", encoding="utf-8") as handle:
                for line in handle:
                    line = line.strip()
                    if line:
                        records.append(parse_trip(line))

    def _lock_for(self, user_id: str) -> threading.Lock:
        with self._registry_lock:
            return self._locks.setdefault(user_id, threading.Lock())

    def append(self, record: TripRecord) -> None:
        """Append one record; timestamps must be non-decreasing per user."""
        if not record.user_id:
            raise ValueError("trip record needs a user_id")
        with self._lock_for(record.user_id):
            records = self._records.setdefault(record.user_id, [])
            if records and record.timestamp < records[-1].timestamp:
                raise ValueError(
                    f"out-of-order timestamp for user {record.user_id!r}: "
                    f"{timestamp_text(record.timestamp)} < {timestamp_text(records[-1].timestamp)}"
                )
            if self._directory is not None:
                path = self._directory / f"{record.user_id}.ndjson"
                with path.open("a", encoding="utf-8") as handle:
                    handle.write(json.dumps(trip_to_document(record), sort_keys=True) + "\n")
                    handle.flush()
                    os.fsync(handle.fileno())
            records.append(record)

    def records_for(self, user_id: str) -> tuple[TripRecord, ...]:
        return tuple(self._records.get(user_id, ()))

    def user_ids(self) -> tuple[str, ...]:
        return tuple(sorted(self._records))

    def __len__(self) -> int:
        return sum(len(records) for records in self._records.values())


def record_trip(log: UsageLog, record: TripRecord) -> UsageLog:
    """Append and hand the log back; kept as the functional-style entry point."""
    log.append(record)
    return log


def consumed_quota(log: UsageLog, subscription: Subscription, mode: str, now: datetime) -> float:
    """Quota consumed for one mode between the subscription start and now,
    in the unit the plan quotes that mode in."""
    total = 0.0
    for record in log.records_for(subscription.user_id):
        if subscription.start <= record.timestamp <= now:
            for quota in record.quota_consumed:
                if quota.mode == mode:
                    total += quota.amount
    return total


# --- wire forms ---------------------------------------------------------------


def trip_from_document(doc: Any, path: str = "trip") -> tuple[TripRecord | None, list[Violation]]:
    problems: list[Violation] = []
    if not isinstance(doc, dict):
        return None, [Violation(path, f"expected object, got {type(doc).__name__}")]
    user_id = doc.get("user_id")
    if not isinstance(user_id, str) or not user_id:
        problems.append(Violation(f"{path}.user_id", "expected non-empty string"))
        user_id = ""
    raw_ts = doc.get("timestamp")
    timestamp = None
    if not isinstance(raw_ts, str):
        problems.append(Violation(f"{path}.timestamp", "expected ISO-8601 string"))
    else:
        try:
            timestamp = parse_timestamp(raw_ts)
        except ValueError as exc:
            problems.append(Violation(f"{path}.timestamp", str(exc)))
    route, route_problems = route_from_document(doc.get("route"), f"{path}.route")
    problems.extend(route_problems)
    consumed: list[ModeQuota] = []
    raw_consumed = doc.get("quota_consumed", [])
    if not isinstance(raw_consumed, list):
        problems.append(Violation(f"{path}.quota_consumed", "expected array"))
        raw_consumed = []
    for i, raw in enumerate(raw_consumed):
        qpath = f"{path}.quota_consumed[{i}]"
        if not isinstance(raw, dict):
            problems.append(Violation(qpath, "expected object"))
            continue
        mode = raw.get("mode")
        amount = raw.get("amount")
        unit = raw.get("unit")
        if not isinstance(mode, str):
            problems.append(Violation(f"{qpath}.mode", "expected string"))
            continue
        if not isinstance(amount, (int, float)) or isinstance(amount, bool) or amount < 0:
            problems.append(Violation(f"{qpath}.amount", "expected non-negative number"))
            continue
        if not isinstance(unit, str):
            problems.append(Violation(f"{qpath}.unit", "expected string"))
            continue
        consumed.append(ModeQuota(mode=mode, amount=float(amount), unit=unit))
    if problems:
        return None, problems
    assert timestamp is not None and route is not None
    return TripRecord(user_id=user_id, timestamp=timestamp, route=route, quota_consumed=tuple(consumed)), []


def parse_trip(text: str) -> TripRecord:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError([Violation("$", f"not valid JSON: {exc}")]) from exc
    record, problems = trip_from_document(doc)
    if problems:
        raise SchemaError(problems)
    assert record is not None
    return record


def trip_to_document(record: TripRecord) -> dict:
    return {
        "user_id": record.user_id,
        "timestamp": timestamp_text(record.timestamp),
        "route": route_to_document(record.route),
        "quota_consumed": [
            {"mode": q.mode, "amount": format_number(q.amount), "unit": q.unit}
            for q in record.quota_consumed
        ],
    }


def subscription_from_document(doc: Any, path: str = "subscription") -> tuple[Subscription | None, list[Violation]]:
    problems: list[Violation] = []
    if not isinstance(doc, dict):
        return None, [Violation(path, f"expected object, got {type(doc).__name__}")]
    user_id = doc.get("user_id")
    if not isinstance(user_id, str) or not user_id:
        problems.append(Violation(f"{path}.user_id", "expected non-empty string"))
        user_id = ""
    plan, plan_problems = plan_from_document(doc.get("plan"), f"{path}.plan")
    problems.extend(plan_problems)
    start = end = None
    raw_start = doc.get("start")
    if not isinstance(raw_start, str):
        problems.append(Violation(f"{path}.start", "expected ISO-8601 string"))
    else:
        try:
            start = parse_timestamp(raw_start)
        except ValueError as exc:
            problems.append(Violation(f"{path}.start", str(exc)))
    raw_end = doc.get("end")
    if raw_end is not None:
        if not isinstance(raw_end, str):
            problems.append(Violation(f"{path}.end", "expected ISO-8601 string"))
        else:
            try:
                end = parse_timestamp(raw_end)
            except ValueError as exc:
                problems.append(Violation(f"{path}.end", str(exc)))
    if problems:
        return None, problems
    assert plan is not None and start is not None
    if end is None:
        return Subscription.from_plan(user_id, plan, start), []
    if start >= end:
        return None, [Violation(f"{path}.end", "must be after start")]
    return Subscription(user_id=user_id, plan=plan, start=start, end=end), []


def parse_subscription(text: str) -> Subscription:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError([Violation("$", f"not valid JSON: {exc}")]) from exc
    subscription, problems = subscription_from_document(doc)
    if problems:
        raise SchemaError(problems)
    assert subscription is not None
    return subscription


def subscription_to_document(subscription: Subscription) -> dict:
    return {
        "user_id": subscription.user_id,
        "plan": plan_to_document(subscription.plan),
        "start": timestamp_text(subscription.start),
        "end": timestamp_text(subscription.end),
    }


def serialize_subscription(subscription: Subscription) -> str:
    return json.dumps(subscription_to_document(subscription), indent=2) + "\n"
