"""HTTP/JSON facade over both recommenders with file-backed persistence.

State lives entirely in the data directory (catalog.json, constraints.kbr,
profiles/, subscriptions/, usage/); request handling is stateless, so a
restart over the same directory serves identical responses. Catalog and rule
updates swap immutable snapshots after an atomic file replace; usage appends
are serialized per user and fsynced before the response.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware

from . import catalog as catalog_mod
from .config import ServiceConfig, build_route_planner, build_weather_provider
from .errors import AdapterError, EmptyCatalogError, RuleSyntaxError, SchemaError, Violation
from .plans import recommend_plans
from .profiles import UserProfile, parse_profile, profile_from_document, profile_to_document
from .route_recommender import recommend_routes
from .routes import routes_from_document
from .rules import ConstraintRule, load_rules, serialize_rules
from .usage import (
    Subscription,
    UsageLog,
    parse_timestamp,
    subscription_from_document,
    subscription_to_document,
    trip_from_document,
)
from .wire import canonical_json, ranked_plans_payload, route_recommendation_payload, violations_payload

API_PREFIX = "/v1"


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
            handle.flush()
            os.fsync(handle.fileno())
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise


class DataStore:
    """Snapshot-swapping wrapper around the data directory."""

    def __init__(self, config: ServiceConfig):
        self.config = config
        self.data_dir = Path(config.data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._lock = threading.RLock()
        self._catalog: catalog_mod.Catalog | None = None
        self._rules: tuple[ConstraintRule, ...] = ()
        self.usage = UsageLog(self.data_dir / "usage")
        self.route_planner = build_route_planner(config.routing)
        self.weather = build_weather_provider(config.weather)
        self._load_snapshots()

    # paths
    @property
    def catalog_path(self) -> Path:
        return self.data_dir / "catalog.json"

    @property
    def rules_path(self) -> Path:
        return self.data_dir / "constraints.kbr"

    def _profile_path(self, user_id: str) -> Path:
        return self.data_dir / "profiles" / f"{user_id}.json"

    def _subscription_path(self, user_id: str) -> Path:
        return self.data_dir / "subscriptions" / f"{user_id}.json"

    def _load_snapshots(self) -> None:
        if self.catalog_path.exists():
            self._catalog = catalog_mod.parse_catalog(self.catalog_path.read_text(encoding="utf-8"))
        if self.rules_path.exists():
            self._rules = tuple(load_rules(self.rules_path.read_text(encoding="utf-8")))

    @property
    def catalog(self) -> catalog_mod.Catalog | None:
        with self._lock:
            return self._catalog

    @property
    def rules(self) -> tuple[ConstraintRule, ...]:
        with self._lock:
            return self._rules

    def set_catalog(self, catalog: catalog_mod.Catalog) -> None:
        with self._lock:
            _atomic_write(self.catalog_path, catalog_mod.serialize_catalog(catalog))
            self._catalog = catalog

    def set_rules(self, rules: list[ConstraintRule]) -> None:
        with self._lock:
            _atomic_write(self.rules_path, serialize_rules(rules))
            self._rules = tuple(rules)

    def load_profile(self, user_id: str) -> UserProfile | None:
        path = self._profile_path(user_id)
        if not path.exists():
            return None
        return parse_profile(path.read_text(encoding="utf-8"))

    def save_profile(self, user_id: str, profile: UserProfile) -> None:
        _atomic_write(self._profile_path(user_id), json.dumps(profile_to_document(profile), indent=2) + "\n")

    def load_subscription(self, user_id: str) -> Subscription | None:
        path = self._subscription_path(user_id)
        if not path.exists():
            return None
        doc = json.loads(path.read_text(encoding="utf-8"))
        subscription, problems = subscription_from_document(doc)
        if problems:
            raise SchemaError(problems)
        assert subscription is not None
        return subscription

    def save_subscription(self, subscription: Subscription) -> None:
        _atomic_write(
            self._subscription_path(subscription.user_id),
            json.dumps(subscription_to_document(subscription), indent=2) + "\n",
        )


def _json_response(payload: Any, status_code: int = 200) -> Response:
    return Response(content=canonical_json(payload), status_code=status_code, media_type="application/json")


def _error_response(status_code: int, message: str, violations: list[Violation] | None = None) -> Response:
    if violations:
        return _json_response(violations_payload(message, violations), status_code)
    return _json_response({"error": message}, status_code)


async def _read_json_body(request: Request) -> Any:
    raw = await request.body()
    try:
        return json.loads(raw or b"null")
    except json.JSONDecodeError as exc:
        raise SchemaError([Violation("$", f"not valid JSON: {exc}")]) from exc


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    config = config or ServiceConfig()
    store = DataStore(config)
    app = FastAPI(title="maasrec", version="0.1.0", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    app.state.store = store

    @app.get(f"{API_PREFIX}/health")
    async def health() -> Response:
        return _json_response({"status": "ok"})

    # --- plan recommendation -------------------------------------------------

    @app.post(f"{API_PREFIX}/recommend/plans")
    async def recommend_plans_endpoint(request: Request) -> Response:
        try:
            body = await _read_json_body(request)
        except SchemaError as exc:
            return _error_response(400, "invalid request body", exc.violations)
        if not isinstance(body, dict):
            return _error_response(400, "invalid request body", [Violation("$", "expected object")])
        profile, problems = profile_from_document(body.get("profile"), path="profile")
        budget = body.get("budget")
        if budget is not None and (not isinstance(budget, (int, float)) or isinstance(budget, bool) or budget <= 0):
            problems = problems + [Violation("budget", "expected positive number or null")]
        if problems:
            return _error_response(400, "invalid request body", problems)
        assert profile is not None
        if budget is not None:
            profile = profile.with_budget(float(budget))
        catalog = store.catalog
        if catalog is None or not catalog.plans:
            return _error_response(409, "catalog is empty")
        try:
            result = recommend_plans(catalog, profile, store.rules, config.vectorization)
        except EmptyCatalogError:
            return _error_response(409, "catalog is empty")
        except ValueError as exc:
            return _error_response(400, str(exc))
        return _json_response(ranked_plans_payload(result))

    # --- route recommendation ------------------------------------------------

    @app.post(f"{API_PREFIX}/recommend/routes")
    async def recommend_routes_endpoint(request: Request) -> Response:
        try:
            body = await _read_json_body(request)
        except SchemaError as exc:
            return _error_response(400, "invalid request body", exc.violations)
        if not isinstance(body, dict):
            return _error_response(400, "invalid request body", [Violation("$", "expected object")])
        user_id = body.get("user_id")
        if not isinstance(user_id, str) or not user_id:
            return _error_response(400, "invalid request body", [Violation("user_id", "expected non-empty string")])
        profile = store.load_profile(user_id)
        if profile is None:
            return _error_response(404, f"unknown user {user_id!r}")

        if "routes" in body:
            routes, problems = routes_from_document(body["routes"], path="routes")
            if problems:
                return _error_response(400, "invalid request body", problems)
        else:
            origin = body.get("origin")
            destination = body.get("destination")
            if not isinstance(origin, str) or not isinstance(destination, str):
                return _error_response(
                    400,
                    "invalid request body",
                    [Violation("routes", "provide inline routes or origin and destination strings")],
                )
            if store.route_planner is None:
                return _error_response(502, "routing adapter not configured")
            try:
                routes = store.route_planner.plan_trip(origin, destination, body.get("depart_time"))
            except AdapterError as exc:
                return _error_response(502, str(exc))

        now_raw = body.get("now")
        if now_raw is not None:
            if not isinstance(now_raw, str):
                return _error_response(400, "invalid request body", [Violation("now", "expected ISO-8601 string")])
            try:
                now = parse_timestamp(now_raw)
            except ValueError as exc:
                return _error_response(400, "invalid request body", [Violation("now", str(exc))])
        else:
            now = datetime.now(timezone.utc)
        verbose = bool(body.get("verbose", False))

        subscription = store.load_subscription(user_id)
        recommendation = recommend_routes(
            routes,
            profile,
            subscription,
            store.usage,
            store.weather,
            config.route_recommender,
            now,
            user_id=user_id,
            verbose=verbose,
        )
        return _json_response(route_recommendation_payload(recommendation))

    # --- profiles and subscriptions -------------------------------------------

    @app.get(API_PREFIX + "/users/{user_id}/profile")
    async def get_profile(user_id: str) -> Response:
        profile = store.load_profile(user_id)
        if profile is None:
            return _error_response(404, f"unknown user {user_id!r}")
        return _json_response(profile_to_document(profile))

    @app.put(API_PREFIX + "/users/{user_id}/profile")
    async def put_profile(user_id: str, request: Request) -> Response:
        try:
            body = await _read_json_body(request)
        except SchemaError as exc:
            return _error_response(400, "invalid profile", exc.violations)
        profile, problems = profile_from_document(body, path="profile")
        if problems:
            return _error_response(400, "invalid profile", problems)
        assert profile is not None
        store.save_profile(user_id, profile)
        return _json_response({"status": "ok"})

    @app.get(API_PREFIX + "/users/{user_id}/subscription")
    async def get_subscription(user_id: str) -> Response:
        subscription = store.load_subscription(user_id)
        if subscription is None:
            return _error_response(404, f"no subscription for user {user_id!r}")
        return _json_response(subscription_to_document(subscription))

    @app.put(API_PREFIX + "/users/{user_id}/subscription")
    async def put_subscription(user_id: str, request: Request) -> Response:
        try:
            body = await _read_json_body(request)
        except SchemaError as exc:
            return _error_response(400, "invalid subscription", exc.violations)
        if isinstance(body, dict) and "user_id" not in body:
            body = dict(body, user_id=user_id)
        subscription, problems = subscription_from_document(body)
        if problems:
            return _error_response(400, "invalid subscription", problems)
        assert subscription is not None
        if subscription.user_id != user_id:
            return _error_response(
                400, "invalid subscription", [Violation("subscription.user_id", "does not match the URL")]
            )
        store.save_subscription(subscription)
        return _json_response({"status": "ok"})

    # --- usage -----------------------------------------------------------------

    @app.post(f"{API_PREFIX}/usage/trips")
    async def post_trip(request: Request) -> Response:
        try:
            body = await _read_json_body(request)
        except SchemaError as exc:
            return _error_response(400, "invalid trip record", exc.violations)
        record, problems = trip_from_document(body, path="trip")
        if problems:
            return _error_response(400, "invalid trip record", problems)
        assert record is not None
        try:
            store.usage.append(record)
        except ValueError as exc:
            return _error_response(400, str(exc))
        return _json_response({"status": "ok"})

    # --- catalog and rules -------------------------------------------------------

    @app.get(f"{API_PREFIX}/catalog")
    async def get_catalog() -> Response:
        catalog = store.catalog
        if catalog is None:
            return _error_response(404, "no catalog loaded")
        return _json_response(catalog_mod.catalog_to_document(catalog))

    @app.put(f"{API_PREFIX}/catalog")
    async def put_catalog(request: Request) -> Response:
        raw = await request.body()
        try:
            catalog = catalog_mod.parse_catalog(raw.decode("utf-8"))
        except SchemaError as exc:
            return _error_response(400, "invalid catalog", exc.violations)
        store.set_catalog(catalog)
        return _json_response({"status": "ok", "plans": len(catalog.plans)})

    @app.put(f"{API_PREFIX}/rules")
    async def put_rules(request: Request) -> Response:
        raw = await request.body()
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError:
            return _error_response(400, "rules body must be UTF-8 text")
        try:
            rules = load_rules(text)
        except RuleSyntaxError as exc:
            return _json_response(
                {"error": str(exc), "line": exc.line, "column": exc.column}, status_code=400
            )
        store.set_rules(rules)
        return _json_response({"status": "ok", "count": len(rules)})

    return app


def run(config: ServiceConfig) -> None:
    import uvicorn

    uvicorn.run(create_app(config), host=config.host, port=config.port, log_level="info")
