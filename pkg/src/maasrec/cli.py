"""Command-line front end over the core library for offline runs and fixtures.

Exit codes: 0 success, 1 validation error (bad files, schema or rule syntax),
2 runtime error. --json emits exactly the bytes the HTTP service would send.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import catalog as catalog_mod
from .adapters import FileWeatherProvider
from .config import load_service_config
from .errors import AdapterError, EmptyCatalogError, RuleSyntaxError, SchemaError
from .plans import recommend_plans
from .profiles import parse_profile
from .route_recommender import recommend_routes
from .routes import ingest_routes
from .rules import load_rules
from .usage import UsageLog, parse_subscription, parse_timestamp, parse_trip
from .wire import canonical_json, ranked_plans_payload, route_recommendation_payload


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileNotFoundError(f"cannot read {path}: {exc}") from exc


def _emit(text: str) -> None:
    sys.stdout.write(text)


def _cmd_catalog_validate(args) -> int:
    catalog = catalog_mod.parse_catalog(_read(args.file))
    print(f"OK: {len(catalog.plans)} plans, modes: {', '.join(catalog.modes)}")
    return 0


def _write_or_print(catalog, output: str | None) -> None:
    text = catalog_mod.serialize_catalog(catalog)
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        _emit(text)


def _cmd_catalog_upsert(args) -> int:
    catalog = catalog_mod.parse_catalog(_read(args.file))
    plan_doc = json.loads(_read(args.plan))
    plan, problems = catalog_mod.plan_from_document(plan_doc, default_currency=catalog.currency)
    if problems:
        raise SchemaError(problems)
    assert plan is not None
    updated = catalog_mod.upsert_plan(catalog, plan)
    _write_or_print(updated, args.output)
    return 0


def _cmd_catalog_remove(args) -> int:
    catalog = catalog_mod.parse_catalog(_read(args.file))
    updated, removed = catalog_mod.remove_plan(catalog, args.id)
    if not removed:
        print(f"note: no plan with id {args.id!r}; catalog unchanged", file=sys.stderr)
    _write_or_print(updated, args.output)
    return 0


def _cmd_rules_check(args) -> int:
    rules = load_rules(_read(args.file))
    print(f"{len(rules)} rules OK")
    return 0


def _cmd_recommend_plans(args) -> int:
    config = load_service_config(args.config) if args.config else load_service_config()
    catalog = catalog_mod.parse_catalog(_read(args.catalog))
    rules = load_rules(_read(args.rules)) if args.rules else []
    profile = parse_profile(_read(args.profile))
    if args.budget is not None:
        profile = profile.with_budget(args.budget)
    result = recommend_plans(catalog, profile, rules, config.vectorization)
    if args.json:
        _emit(canonical_json(ranked_plans_payload(result)))
        return 0
    if result.fallback_used:
        note = "within budget" if result.budget_applied else "all plans"
        print(f"note: no plan satisfies every constraint; ranking {note} by similarity instead")
    if not result.entries:
        print("no plans to recommend")
        return 0
    print(f"{'rank':>4}  {'plan':<12} {'score':>8}")
    for position, (plan_id, score) in enumerate(result.entries, start=1):
        print(f"{position:>4}  {plan_id:<12} {score:>8.4f}")
    return 0


def _cmd_recommend_routes(args) -> int:
    config = load_service_config(args.config) if args.config else load_service_config()
    routes = ingest_routes(_read(args.routes))
    profile = parse_profile(_read(args.profile))
    subscription = parse_subscription(_read(args.subscription)) if args.subscription else None
    log = UsageLog()
    if args.usage:
        for line in _read(args.usage).splitlines():
            if line.strip():
                log.append(parse_trip(line))
    weather = FileWeatherProvider(args.weather) if args.weather else None
    now = parse_timestamp(args.now) if args.now else datetime.now(timezone.utc)
    user_id = args.user or (subscription.user_id if subscription else "")
    recommendation = recommend_routes(
        routes,
        profile,
        subscription,
        log,
        weather,
        config.route_recommender,
        now,
        user_id=user_id,
        verbose=args.verbose,
    )
    if args.json:
        _emit(canonical_json(route_recommendation_payload(recommendation)))
        return 0
    if not recommendation.entries:
        print(recommendation.status)
        return 0
    print(f"{'rank':>4}  {'route':<12} {'score':>6}  badges")
    for position, entry in enumerate(recommendation.entries, start=1):
        marker = " *default" if entry.is_default else ""
        badges = ", ".join(entry.badges) if entry.badges else "-"
        print(f"{position:>4}  {entry.route_id:<12} {entry.score:>6}  {badges}{marker}")
    return 0


def _cmd_serve(args) -> int:
    from .service import run

    config = load_service_config(args.config) if args.config else load_service_config()
    run(config)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="maasrec", description="MaaS plan and route recommenders")
    sub = parser.add_subparsers(dest="command", required=True)

    catalog_cmd = sub.add_parser("catalog", help="validate or edit a catalog file")
    catalog_sub = catalog_cmd.add_subparsers(dest="subcommand", required=True)
    validate = catalog_sub.add_parser("validate", help="check a catalog.json document")
    validate.add_argument("file")
    validate.set_defaults(handler=_cmd_catalog_validate)
    upsert = catalog_sub.add_parser("upsert", help="insert or replace one plan")
    upsert.add_argument("file")
    upsert.add_argument("--plan", required=True, help="JSON file with the plan document")
    upsert.add_argument("--output", "-o", help="write result here instead of stdout")
    upsert.set_defaults(handler=_cmd_catalog_upsert)
    remove = catalog_sub.add_parser("remove", help="remove one plan by id")
    remove.add_argument("file")
    remove.add_argument("--id", required=True)
    remove.add_argument("--output", "-o", help="write result here instead of stdout")
    remove.set_defaults(handler=_cmd_catalog_remove)

    rules_cmd = sub.add_parser("rules", help="work with constraint rule files")
    rules_sub = rules_cmd.add_subparsers(dest="subcommand", required=True)
    check = rules_sub.add_parser("check", help="parse a rule file and report the count")
    check.add_argument("file")
    check.set_defaults(handler=_cmd_rules_check)

    recommend_cmd = sub.add_parser("recommend", help="run a recommender offline")
    recommend_sub = recommend_cmd.add_subparsers(dest="subcommand", required=True)
    plans = recommend_sub.add_parser("plans", help="rank plans for a profile")
    plans.add_argument("--catalog", required=True)
    plans.add_argument("--rules")
    plans.add_argument("--profile", required=True)
    plans.add_argument("--budget", type=float)
    plans.add_argument("--config", help="service config file for vectorization rates")
    plans.add_argument("--json", action="store_true", help="emit the service JSON body")
    plans.set_defaults(handler=_cmd_recommend_plans)
    routes = recommend_sub.add_parser("routes", help="rank route alternatives")
    routes.add_argument("--routes", required=True)
    routes.add_argument("--profile", required=True)
    routes.add_argument("--subscription")
    routes.add_argument("--usage", help="ndjson trip log")
    routes.add_argument("--weather", help="weather reading JSON file")
    routes.add_argument("--config", help="service config file")
    routes.add_argument("--now", help="ISO-8601 evaluation time (defaults to current time)")
    routes.add_argument("--user", help="user id for familiarity checks (defaults to subscription's)")
    routes.add_argument("--verbose", action="store_true", help="show the full fused list")
    routes.add_argument("--json", action="store_true", help="emit the service JSON body")
    routes.set_defaults(handler=_cmd_recommend_routes)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--config", help="service config file")
    serve.set_defaults(handler=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except RuleSyntaxError as exc:
        print(f"rule syntax error: {exc}", file=sys.stderr)
        return 1
    except SchemaError as exc:
        print("validation failed:", file=sys.stderr)
        for violation in exc.violations:
            print(f"  {violation}", file=sys.stderr)
        return 1
    except (FileNotFoundError, EmptyCatalogError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (AdapterError, OSError) as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
