import json

import pytest

from maasrec.adapters import (
    FileRoutePlanner,
    FileWeatherProvider,
    HttpRoutePlanner,
    StaticWeatherProvider,
    StubRoutePlanner,
    WeatherReading,
)
from maasrec.errors import AdapterError

from conftest import make_leg, make_route


def test_stub_planner_returns_canned_routes():
    routes = [make_route("a", [make_leg("walk", 100)])]
    planner = StubRoutePlanner(routes)
    assert planner.plan_trip("X", "Y") == routes
    assert planner.plan_trip("P", "Q") == routes


def test_file_planner_reads_and_validates(tmp_path):
    path = tmp_path / "routes.json"
    path.write_text(json.dumps({"routes": [{"id": "r", "legs": [{"mode": "walk", "distance_m": 10, "duration_s": 9}]}]}))
    planner = FileRoutePlanner(path)
    routes = planner.plan_trip("A", "B")
    assert [route.id for route in routes] == ["r"]


def test_file_planner_surfaces_bad_documents_as_adapter_errors(tmp_path):
    path = tmp_path / "routes.json"
    path.write_text("{broken")
    with pytest.raises(AdapterError):
        FileRoutePlanner(path).plan_trip("A", "B")
    with pytest.raises(AdapterError):
        FileRoutePlanner(tmp_path / "missing.json").plan_trip("A", "B")


class TestHttpResponseMapping:
    def _map(self, doc):
        return HttpRoutePlanner("http://planner.example")._map_response(doc)

    def test_maps_common_field_and_mode_synonyms(self):
        doc = {
            "itineraries": [
                {
                    "legs": [
                        {"mode": "WALKING", "distance": 300, "duration": 240},
                        {"mode": "TRANSIT", "distance_m": 5200, "duration_s": 700, "cost": 350, "provider": "bkk"},
                    ]
                }
            ]
        }
        routes = self._map(doc)
        assert len(routes) == 1
        route = routes[0]
        assert route.id == "1"  # positional id when the engine sends none
        assert [leg.mode for leg in route.legs] == ["walk", "public_transport"]
        assert route.legs[0].distance_m == 300
        assert route.legs[1].provider_id == "bkk"

    def test_unmapped_mode_is_an_adapter_error(self):
        doc = {"routes": [{"id": "r", "legs": [{"mode": "hovercraft", "distance_m": 1, "duration_s": 1}]}]}
        with pytest.raises(AdapterError):
            self._map(doc)

    def test_route_without_legs_is_an_adapter_error(self):
        with pytest.raises(AdapterError):
            self._map({"routes": [{"id": "r", "legs": []}]})

    def test_missing_route_list_is_an_adapter_error(self):
        with pytest.raises(AdapterError):
            self._map({"status": "ok"})


def test_static_weather_provider():
    reading = WeatherReading(21.0, 0.2)
    assert StaticWeatherProvider(reading).current_weather() == reading


def test_file_weather_provider(tmp_path):
    path = tmp_path / "weather.json"
    path.write_text(json.dumps({"temperature_c": 17.5, "precipitation_mm_h": 0.0}))
    assert FileWeatherProvider(path).current_weather() == WeatherReading(17.5, 0.0)
