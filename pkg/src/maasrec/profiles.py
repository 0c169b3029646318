"""Traveler profile: questionnaire answers, route thresholds and profile.json."""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Any, Mapping

from .catalog import PLAN_MODES, format_number
from .errors import SchemaError, Violation

# Kinds that carry a count n.
_COUNTED_KINDS = ("times_per_month", "times_per_week")
FREQUENCY_KINDS = ("never", "few_times_per_year") + _COUNTED_KINDS + ("once_per_day",)

DEFAULT_MAX_WALK_M = 1500.0
DEFAULT_MAX_BIKE_M = 5000.0


@dataclass(frozen=True)
class FrequencyAnswer:
    """How often a mode is used: never, a few times a year, n times per
    month/week, or once per day. Serialized as a compact token such as
    ``"never"`` or ``"times_per_week:2"``."""

    kind: str
    n: int | None = None

    def __post_init__(self):
        if self.kind not in FREQUENCY_KINDS:
            raise ValueError(f"unknown frequency kind {self.kind!r}")
        if self.kind in _COUNTED_KINDS:
            if not isinstance(self.n, int) or self.n < 1:
                raise ValueError(f"{self.kind} needs a count n >= 1")
        elif self.n is not None:
            raise ValueError(f"{self.kind} takes no count")

    @property
    def token(self) -> str:
        if self.kind in _COUNTED_KINDS:
            return f"{self.kind}:{self.n}"
        return self.kind

    @classmethod
    def parse(cls, text: str) -> "FrequencyAnswer":
        """Parse a token. 'every_day' is accepted as an alias of once_per_day."""
        if not isinstance(text, str):
            raise ValueError(f"expected frequency token, got {type(text).__name__}")
        token = text.strip().lower()
        if token == "every_day":
            token = "once_per_day"
        if ":" in token:
            kind, _, raw_n = token.partition(":")
            if kind not in _COUNTED_KINDS:
                raise ValueError(f"unknown frequency kind {kind!r}")
            try:
                n = int(raw_n)
            except ValueError:
                raise ValueError(f"invalid count {raw_n!r} in frequency {text!r}") from None
            return cls(kind, n)
        if token in _COUNTED_KINDS:
            raise ValueError(f"{token} needs a count, e.g. {token}:2")
        return cls(token)

    def __str__(self) -> str:
        return self.token


NEVER = FrequencyAnswer("never")


@dataclass(frozen=True)
class UserProfile:
    """Elicited answers plus route-planning thresholds.

    usage and willingness are keyed by the plan modes; willingness is a 1..5
    scale where 1 means most willing and 5 means not willing at all.
    """

    driving_license: bool
    can_cycle: bool
    fare_reductions: bool
    usage: Mapping[str, FrequencyAnswer]
    willingness: Mapping[str, int]
    max_walk_m: float = DEFAULT_MAX_WALK_M
    max_bike_m: float = DEFAULT_MAX_BIKE_M
    budget: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "usage", dict(self.usage))
        object.__setattr__(self, "willingness", dict(self.willingness))
        for mode, answer in self.usage.items():
            if mode not in PLAN_MODES:
                raise ValueError(f"usage mode {mode!r} is not a plan mode")
            if not isinstance(answer, FrequencyAnswer):
                raise ValueError(f"usage[{mode!r}] must be a FrequencyAnswer")
        for mode, value in self.willingness.items():
            if mode not in PLAN_MODES:
                raise ValueError(f"willingness mode {mode!r} is not a plan mode")
            if not isinstance(value, int) or isinstance(value, bool) or not 1 <= value <= 5:
                raise ValueError(f"willingness[{mode!r}] must be an integer in 1..5")
        if self.max_walk_m < 0 or self.max_bike_m < 0:
            raise ValueError("distance thresholds must be non-negative")
        if self.budget is not None and self.budget <= 0:
            raise ValueError("budget must be positive when set")

    def with_budget(self, budget: float | None) -> "UserProfile":
        return replace(self, budget=budget)


def _parse_flag(value: Any, path: str, problems: list[Violation]) -> bool:
    if isinstance(value, bool):
        return value
    if isinstance(value, str) and value.strip().lower() in ("yes", "no"):
        return value.strip().lower() == "yes"
    problems.append(Violation(path, "expected true/false or 'yes'/'no'"))
    return False


def profile_from_document(doc: Any, path: str = "profile") -> tuple[UserProfile | None, list[Violation]]:
    problems: list[Violation] = []
    if not isinstance(doc, dict):
        return None, [Violation(path, f"expected object, got {type(doc).__name__}")]

    flags = {}
    for name in ("driving_license", "can_cycle", "fare_reductions"):
        if name not in doc:
            problems.append(Violation(f"{path}.{name}", "missing required field"))
            flags[name] = False
        else:
            flags[name] = _parse_flag(doc[name], f"{path}.{name}", problems)

    usage: dict[str, FrequencyAnswer] = {}
    raw_usage = doc.get("usage")
    if not isinstance(raw_usage, dict):
        problems.append(Violation(f"{path}.usage", "expected object keyed by mode"))
        raw_usage = {}
    for mode in PLAN_MODES:
        if mode not in raw_usage:
            problems.append(Violation(f"{path}.usage.{mode}", "missing required field"))
            continue
        try:
            usage[mode] = FrequencyAnswer.parse(raw_usage[mode])
        except ValueError as exc:
            problems.append(Violation(f"{path}.usage.{mode}", str(exc)))
    for mode in raw_usage:
        if mode not in PLAN_MODES:
            problems.append(Violation(f"{path}.usage.{mode}", f"unknown mode {mode!r}"))

    willingness: dict[str, int] = {}
    raw_will = doc.get("willingness")
    if not isinstance(raw_will, dict):
        problems.append(Violation(f"{path}.willingness", "expected object keyed by mode"))
        raw_will = {}
    for mode in PLAN_MODES:
        if mode not in raw_will:
            problems.append(Violation(f"{path}.willingness.{mode}", "missing required field"))
            continue
        value = raw_will[mode]
        if not isinstance(value, int) or isinstance(value, bool) or not 1 <= value <= 5:
            problems.append(Violation(f"{path}.willingness.{mode}", "expected integer in 1..5"))
        else:
            willingness[mode] = value
    for mode in raw_will:
        if mode not in PLAN_MODES:
            problems.append(Violation(f"{path}.willingness.{mode}", f"unknown mode {mode!r}"))

    def _threshold(name: str, default: float) -> float:
        value = doc.get(name, default)
        if not isinstance(value, (int, float)) or isinstance(value, bool) or value < 0:
            problems.append(Violation(f"{path}.{name}", "expected non-negative number"))
            return default
        return float(value)

    max_walk_m = _threshold("max_walk_m", DEFAULT_MAX_WALK_M)
    max_bike_m = _threshold("max_bike_m", DEFAULT_MAX_BIKE_M)

    budget = doc.get("budget")
    if budget is not None and (not isinstance(budget, (int, float)) or isinstance(budget, bool) or budget <= 0):
        problems.append(Violation(f"{path}.budget", "expected positive number or null"))
        budget = None

    if problems:
        return None, problems
    return (
        UserProfile(
            driving_license=flags["driving_license"],
            can_cycle=flags["can_cycle"],
            fare_reductions=flags["fare_reductions"],
            usage=usage,
            willingness=willingness,
            max_walk_m=max_walk_m,
            max_bike_m=max_bike_m,
            budget=float(budget) if budget is not None else None,
        ),
        [],
    )


def parse_profile(text: str) -> UserProfile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError([Violation("$", f"not valid JSON: {exc}")]) from exc
    profile, problems = profile_from_document(doc, path="profile")
    if problems:
        raise SchemaError(problems)
    assert profile is not None
    return profile


def profile_to_document(profile: UserProfile) -> dict:
    doc: dict[str, Any] = {
        "driving_license": profile.driving_license,
        "can_cycle": profile.can_cycle,
        "fare_reductions": profile.fare_reductions,
        "usage": {mode: answer.token for mode, answer in sorted(profile.usage.items())},
        "willingness": {mode: value for mode, value in sorted(profile.willingness.items())},
        "max_walk_m": format_number(profile.max_walk_m),
        "max_bike_m": format_number(profile.max_bike_m),
    }
    if profile.budget is not None:
        doc["budget"] = format_number(profile.budget)
    return doc


def serialize_profile(profile: UserProfile) -> str:
    return json.dumps(profile_to_document(profile), indent=2) + "\n"
