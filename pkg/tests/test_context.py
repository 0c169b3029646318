

from maasrec.adapters import StaticWeatherProvider, WeatherReading
from maasrec.catalog import MaasPlan, ModeQuota
from maasrec.context import (
    ContextConfig,
    acceptable_distance,
    infer_context,
    nice_weather,
    promoted_flags,
    unfamiliar,
    usage_trend,
)
from maasrec.usage import Subscription, UsageLog

from conftest import make_leg, make_profile, make_route, make_trip, utc

CONFIG = ContextConfig()

PLAN = MaasPlan(
    id="p",
    price=10000.0,
    period_days=30,
    quotas=(ModeQuota("car_sharing", 10.0, "driving_hours"),),
)


def _subscription():
    return Subscription.from_plan("u1", PLAN, utc(2026, 3, 1))


def _log_with_consumption(hours: float, day: int = 5) -> UsageLog:
    log = UsageLog()
    route = make_route("r", [make_leg("car_sharing", 9000)])
    log.append(make_trip("u1", utc(2026, 3, day), route, consumed=[("car_sharing", hours, "driving_hours")]))
    return log


class TestUsageTrend:
    def test_overuse_near_period_end_activates(self):
        # day 24 of 30: elapsed 0.8, remaining 0.2 < 0.25; (9 - 8)/10 = 0.1 > 0.05
        log = _log_with_consumption(9.0)
        assert usage_trend(log, _subscription(), "car_sharing", utc(2026, 3, 25), CONFIG) is True

    def test_exactly_uniform_consumption_never_activates(self):
        log = _log_with_consumption(8.0)
        assert usage_trend(log, _subscription(), "car_sharing", utc(2026, 3, 25), CONFIG) is False

    def test_early_period_overuse_does_not_activate(self):
        # day 10 of 30: remaining 2/3 fails the time condition despite overuse
        log = _log_with_consumption(9.0)
        assert usage_trend(log, _subscription(), "car_sharing", utc(2026, 3, 11), CONFIG) is False

    def test_mode_absent_from_plan_is_false(self):
        log = _log_with_consumption(9.0)
        assert usage_trend(log, _subscription(), "taxi", utc(2026, 3, 25), CONFIG) is False

    def test_no_subscription_is_false(self):
        assert usage_trend(UsageLog(), None, "car_sharing", utc(2026, 3, 25), CONFIG) is False


class TestAcceptableDistance:
    def test_below_threshold_is_acceptable(self):
        route = make_route("r", [make_leg("walk", 600), make_leg("public_transport", 4000)])
        walk_ok, bike_ok = acceptable_distance(route, make_profile())
        assert walk_ok is True
        assert bike_ok is True

    def test_boundary_is_not_acceptable(self):
        route = make_route("r", [make_leg("walk", 1500)])
        walk_ok, _ = acceptable_distance(route, make_profile())
        assert walk_ok is False

    def test_zero_bike_distance_is_acceptable(self):
        route = make_route("r", [make_leg("walk", 100)])
        _, bike_ok = acceptable_distance(route, make_profile())
        assert bike_ok is True


class TestUnfamiliar:
    def test_empty_log_means_unfamiliar(self):
        route = make_route("r", [make_leg("taxi", 3000)])
        assert unfamiliar(route, UsageLog(), make_profile(), "u1") is True

    def test_identical_signature_means_familiar(self):
        legs = [make_leg("walk", 300), make_leg("taxi", 3100)]
        log = UsageLog()
        log.append(make_trip("u1", utc(2026, 3, 2), make_route("past", legs)))
        candidate = make_route("new", legs)
        assert unfamiliar(candidate, log, make_profile(), "u1") is False

    def test_unseen_main_mode_means_unfamiliar(self):
        log = UsageLog()
        log.append(make_trip("u1", utc(2026, 3, 2), make_route("past", [make_leg("car_sharing", 9000)])))
        candidate = make_route("new", [make_leg("bike_sharing", 2000)])
        assert unfamiliar(candidate, log, make_profile(), "u1") is True

    def test_same_modes_different_distance_bucket_is_unfamiliar(self):
        log = UsageLog()
        log.append(make_trip("u1", utc(2026, 3, 2), make_route("past", [make_leg("taxi", 3000)])))
        candidate = make_route("new", [make_leg("taxi", 9000)])
        assert unfamiliar(candidate, log, make_profile(), "u1") is True


class TestNiceWeather:
    def test_warm_and_dry(self):
        assert nice_weather(WeatherReading(22.0, 0.0), CONFIG) is True

    def test_too_cold(self):
        assert nice_weather(WeatherReading(10.0, 0.0), CONFIG) is False

    def test_too_wet(self):
        assert nice_weather(WeatherReading(20.0, 5.0), CONFIG) is False


class TestPromotedFlags:
    def test_promoted_mode_above_distance_threshold(self):
        config = ContextConfig(promoted_modes={"bike_sharing": 1000.0})
        route = make_route("r", [make_leg("bike_sharing", 2000)])
        assert promoted_flags(route, config) == (True, False)

    def test_promoted_mode_below_threshold(self):
        config = ContextConfig(promoted_modes={"bike_sharing": 1000.0})
        route = make_route("r", [make_leg("bike_sharing", 800)])
        assert promoted_flags(route, config) == (False, False)

    def test_promoted_provider_mismatch(self):
        config = ContextConfig(promoted_providers=frozenset({"msp-42"}))
        route = make_route("r", [make_leg("taxi", 2000, provider_id="msp-7")])
        assert promoted_flags(route, config) == (False, False)

    def test_promoted_provider_on_main_mode_leg(self):
        config = ContextConfig(promoted_providers=frozenset({"msp-42"}))
        route = make_route(
            "r", [make_leg("taxi", 5000, provider_id="msp-42"), make_leg("walk", 100, provider_id="msp-7")]
        )
        assert promoted_flags(route, config) == (False, True)


class TestInferContext:
    def test_no_routes_still_computes_user_flags(self):
        state = infer_context(
            [],
            make_profile(),
            UsageLog(),
            _subscription(),
            StaticWeatherProvider(WeatherReading(22.0, 0.0)),
            CONFIG,
            utc(2026, 3, 10),
        )
        assert state.route_flags == {}
        assert state.nice_weather is True
        assert set(state.usage_trends) == {"car_sharing", "bike_sharing", "taxi", "ride_sharing"}

    def test_single_route_composition(self):
        route = make_route("r", [make_leg("walk", 300), make_leg("public_transport", 4000)])
        state = infer_context(
            [route],
            make_profile(),
            UsageLog(),
            _subscription(),
            StaticWeatherProvider(WeatherReading(22.0, 0.0)),
            CONFIG,
            utc(2026, 3, 10),
        )
        flags = state.route_flags["r"]
        assert flags.unfamiliar is True
        assert state.nice_weather is True
        assert state.weather_stale is False

    def test_per_route_maps_cover_every_route(self):
        routes = [make_route("a", [make_leg("walk", 100)]), make_route("b", [make_leg("taxi", 100)])]
        state = infer_context(
            routes, make_profile(), UsageLog(), _subscription(), None, CONFIG, utc(2026, 3, 10)
        )
        assert set(state.route_flags) == {"a", "b"}

    def test_weather_failure_fails_safe(self):
        class BrokenProvider:
            def current_weather(self, location=None):
                raise RuntimeError("down")

        state = infer_context(
            [], make_profile(), UsageLog(), _subscription(), BrokenProvider(), CONFIG, utc(2026, 3, 10)
        )
        assert state.nice_weather is False
        assert state.weather_stale is True

    def test_repeated_evaluation_is_identical(self):
        routes = [make_route("a", [make_leg("bike_sharing", 2500), make_leg("walk", 200)])]
        log = _log_with_consumption(9.0)
        args = (
            routes,
            make_profile(),
            log,
            _subscription(),
            StaticWeatherProvider(WeatherReading(22.0, 0.0)),
            ContextConfig(promoted_modes={"bike_sharing": 1000.0}),
            utc(2026, 3, 25),
        )
        assert infer_context(*args) == infer_context(*args)
