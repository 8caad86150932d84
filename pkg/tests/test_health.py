from fastapi.testclient import TestClient

from app import __version__
from app.main import app


def test_health_ok():
    client = TestClient(app)
    resp = client.get("/health/")
    assert resp.status_code == 200
    assert resp.json() == {"status": "ok"}


def test_health_details_reports_limits():
    client = TestClient(app)
    resp = client.get("/health/details")
    assert resp.status_code == 200
    body = resp.json()
    assert body["version"] == __version__
    assert body["limits"]["bruteforce_cap"] == 20
    assert "X-Process-Time" in resp.headers


def test_root_lists_route_groups():
    client = TestClient(app)
    resp = client.get("/")
    assert resp.json()["routes"] == ["/health", "/moments", "/planning"]
