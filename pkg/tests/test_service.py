"""Tests for the JSON estimate service."""

import pytest
from fastapi.testclient import TestClient

from fivenum.estimators import FiveNumberSummary, estimate
from fivenum.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


S3_PAYLOAD = {"n": 5, "min": 0, "q1": 1, "median": 2, "q3": 3, "max": 4}


class TestEstimateEndpoint:
    def test_s3_estimate(self, client):
        r = client.post("/api/estimate", json=S3_PAYLOAD)
        assert r.status_code == 200
        body = r.json()
        assert body["scenario"] == "S3"
        assert abs(body["sd"] - 1.744335) < 1e-6
        assert body["sd_method"] == "shi_optimal/sd/S3"
        assert body["warnings"] == []
        labels = {w["label"] for w in body["weights"]}
        assert {"w_opt", "theta1", "theta2"} <= labels

    def test_parity_with_library(self, client):
        res = estimate(FiveNumberSummary(n=21, minimum=1.5, q1=2.5,
                                         median=3.25, q3=4.5, maximum=9.0))
        body = client.post("/api/estimate", json={
            "n": 21, "min": 1.5, "q1": 2.5, "median": 3.25, "q3": 4.5,
            "max": 9.0}).json()
        assert body["mean"] == res.mean
        assert body["sd"] == res.sd

    def test_s1_and_s2(self, client):
        r = client.post("/api/estimate",
                        json={"n": 9, "min": 0, "median": 2, "max": 4})
        assert r.json()["scenario"] == "S1"
        r = client.post("/api/estimate",
                        json={"n": 8, "q1": 1, "median": 2, "q3": 3})
        assert r.json()["scenario"] == "S2"

    def test_responses_pure_function_of_request(self, client):
        a = client.post("/api/estimate", json=S3_PAYLOAD).json()
        b = client.post("/api/estimate", json=S3_PAYLOAD).json()
        assert a == b

    @pytest.mark.parametrize("payload,code", [
        ({"n": 0, "min": 0, "median": 2, "max": 4}, "N_INVALID"),
        ({"n": 2, "min": 0, "median": 2, "max": 4}, "N_TOO_SMALL"),
        ({"n": 5, "min": 3, "median": 2, "max": 4}, "ORDER_VIOLATION"),
        ({"n": 5, "min": 0, "median": 2}, "INSUFFICIENT_SUMMARY"),
        ({"n": 5, "min": 0, "max": 4}, "MISSING_MEDIAN"),
        ({"min": 0, "median": 2, "max": 4, "n": None}, "MISSING_N"),
        ({"n": 5, "min": "zebra", "median": 2, "max": 4}, "NOT_A_NUMBER"),
        ({"n": 5.5, "min": 0, "median": 2, "max": 4}, "N_INVALID"),
    ])
    def test_validation_codes(self, client, payload, code):
        r = client.post("/api/estimate", json=payload)
        assert r.status_code == 422
        assert r.json()["error"]["code"] == code

    def test_non_object_payload(self, client):
        r = client.post("/api/estimate", json=[1, 2, 3])
        assert r.status_code == 422

    def test_invalid_json_body(self, client):
        r = client.post("/api/estimate", content=b"{nope",
                        headers={"content-type": "application/json"})
        assert r.status_code == 400


class TestStaticAndTable:
    def test_root_serves_page(self, client):
        r = client.get("/")
        assert r.status_code == 200
        assert "<html" in r.text.lower()

    def test_table_csv(self, client):
        r = client.get("/api/table.csv", params={"qmax": 3})
        assert r.status_code == 200
        lines = r.text.strip().split("\n")
        assert lines[0] == "Q,n,theta1,theta2,w_exact,w_approx"
        assert len(lines) == 4
        assert lines[1].startswith("1,5,2.793,6.403")

    def test_health(self, client):
        assert client.get("/api/health").json() == {"status": "ok"}

    def test_asset_traversal_blocked(self, client):
        r = client.get("/assets/../__init__.py")
        assert r.status_code in (404, 422)
