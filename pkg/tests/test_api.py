import pytest

from api_gateway import limiter
from helpers import load_fixture


def test_root_and_health(client):
    assert client.get("/").json()["health"] == "/health"
    health = client.get("/health").json()
    assert health["status"] == "healthy"
    assert health["oracle_caps"] == {"linear": 9, "matrix": 8}


def test_public_config(client):
    config = client.get("/app/config").json()
    assert "matrix2" in config["kinds"]
    assert config["enumerate_limit"] == 1000


def test_solve_intro(client):
    res = client.post("/solver/solve", json=load_fixture("intro.json"))
    assert res.status_code == 200
    body = res.json()
    assert body["permutation"] == [1, 2, 3]
    assert body["value"] == "-11/2"
    assert body["composite"] == {"a": "-3/2", "b": "-11/2"}
    assert "gap" not in body


@pytest.mark.filterwarnings("error::pydantic.warnings.PydanticDeprecatedSince20")
def test_request_only_fields_are_stripped_without_deprecated_api(client):
    res = client.post("/solver/solve", json={**load_fixture("intro.json"), "oracle": True, "cap": 5})
    assert res.status_code == 200
    assert res.json()["value"] == "-11/2"


def test_solve_with_oracle_flag(client):
    res = client.post("/solver/solve", json={**load_fixture("example2.json"), "oracle": True})
    assert res.status_code == 200
    assert res.json()["optima_count"] == 2


def test_solve_flowshop(client):
    body = client.post("/solver/solve", json=load_fixture("flowshop.json")).json()
    assert body["johnson"] == [2, 1]
    assert body["value"] == "7"


def test_unsupported_instance_is_422(client):
    payload = {"kind": "matrixN", "matrices": [[[1, 0, 0], [0, 1, 0], [0, 0, 1]]], "w": [1, 0, 0], "y": [0, 0, 1]}
    res = client.post("/solver/solve", json=payload)
    assert res.status_code == 422
    assert res.json()["detail"]["code"] == "oracle-required"


def test_cap_exceeded_is_413(client):
    res = client.post("/solver/solve", json={**load_fixture("example1.json"), "oracle": True, "cap": 3})
    assert res.status_code == 413
    assert res.json()["detail"]["code"] == "cap-exceeded"


def test_bad_literal_is_400(client):
    res = client.post("/solver/solve", json={"kind": "linear", "functions": [{"a": "x", "b": 1}]})
    assert res.status_code == 400
    assert res.json()["detail"]["code"] == "parse-error"


def test_schema_violation_is_rejected_by_validation(client):
    res = client.post("/solver/solve", json={"kind": "linear", "jobs": []})
    assert res.status_code == 422


def test_verify(client):
    res = client.post("/solver/verify", json={**load_fixture("example2.json"), "sigma": [2, 1, 3, 4]})
    assert res.status_code == 200
    body = res.json()
    assert body["ok"] is True
    assert body["certificate"] is True
    assert body["evaluated_count"] == 24


def test_count_and_enumerate(client):
    assert client.post("/solver/count", json=load_fixture("colinear.json")).json() == {"count": 6}
    body = client.post("/solver/enumerate", json={**load_fixture("colinear.json"), "limit": 2}).json()
    assert len(body["permutations"]) == 2
    assert body["truncated"] is True


def test_rate_limit(client, monkeypatch):
    monkeypatch.setattr(limiter, "requests_limit", 2)
    payload = load_fixture("colinear.json")
    assert client.post("/solver/count", json=payload).status_code == 200
    assert client.post("/solver/count", json=payload).status_code == 200
    blocked = client.post("/solver/count", json=payload)
    assert blocked.status_code == 429
    assert blocked.json()["detail"]["code"] == "rate-limited"
    assert "retry-after" in blocked.headers
    assert client.get("/health").status_code == 200
