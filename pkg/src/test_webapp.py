#!/usr/bin/env python3
"""Tests for the JSON web API"""

from fastapi.testclient import TestClient

from app import app
from config_env import Config

client = TestClient(app)


def test_health():
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "healthy"


def test_normalize():
    body = client.post("/normalize", json={"expr": "[b,a]"}).json()
    assert body["text"] == "[a,b]"
    assert body["value"] == [{"coeff": "1/1", "tree": ["a", "b"], "length": 2, "degree": -2}]


def test_parse_error_is_reported_as_400():
    response = client.post("/normalize", json={"expr": "[a,"})
    assert response.status_code == 400
    body = response.json()
    assert body["type"] == "error" and "position" in body


def test_diff_with_truncation_and_perturbation():
    body = client.post("/diff", json={"expr": "e", "max_length": 2}).json()
    assert body["text"] == "-a + b - 1/2*[a,e] - 1/2*[b,e]"
    exact = client.post("/diff", json={"expr": "e", "max_length": 3}).json()
    wrong = client.post("/diff", json={"expr": "e", "max_length": 3, "perturb_bernoulli": {"2": "1/10"}}).json()
    assert exact["text"] != wrong["text"]
    bad = client.post("/diff", json={"expr": "e", "perturb_bernoulli": {"2": "1/0"}})
    assert bad.status_code == 400


def test_flow():
    body = client.post("/flow", json={"t": "1", "max_length": 4}).json()
    assert [r["tree"] for r in body["u"]] == ["b"]
    assert body["residual"] == [] and body["curvature"] == []
    assert client.post("/flow", json={"v": "a"}).status_code == 400


def test_basis_and_bernoulli():
    body = client.get("/basis", params={"length": 2, "degree": -2, "max_length": 2}).json()
    assert [r["tree"] for r in body["basis"]] == [["a", "a"], ["a", "b"], ["b", "b"]]
    assert client.get("/basis", params={"length": 3, "degree": -1, "max_length": 2}).status_code == 400
    assert client.get("/bernoulli", params={"n": 2}).json()["values"] == ["1/1", "-1/2", "1/6"]
    assert client.get("/bernoulli", params={"n": -1}).status_code == 400


def test_verify_and_export():
    report = client.get("/verify", params={"max_length": 2}).json()
    assert report["passed"] is True
    export = client.get("/export", params={"max_length": 2}).json()
    assert export["max_length"] == 2
    rows = {(row["left"], row["right"]): row["value"] for row in export["brackets"] if isinstance(row["left"], str)}
    assert rows[("a", "b")][0]["tree"] == ["a", "b"]
    assert rows[("e", "e")] == []


def test_verify_detects_perturbed_bernoulli():
    params = {"max_length": 4, "perturb_bernoulli": ["2=1/10"]}
    report = client.get("/verify", params=params).json()
    assert report["passed"] is False
    checks = {c["name"]: c for c in report["checks"]}
    assert not checks["square_zero[e]"]["passed"]
    bad = client.get("/verify", params={"max_length": 2, "perturb_bernoulli": ["2:1/10"]})
    assert bad.status_code == 400


def test_max_length_is_capped():
    too_long = Config.APP_MAX_LENGTH + 1
    response = client.post("/normalize", json={"expr": "a", "max_length": too_long})
    assert response.status_code == 400
    assert str(Config.APP_MAX_LENGTH) in response.json()["error"]
    assert client.get("/export", params={"max_length": too_long}).status_code == 400
    assert client.get("/verify", params={"max_length": too_long}).status_code == 400
