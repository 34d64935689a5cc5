import pytest
from fastapi.testclient import TestClient

from bcmas.app.main import app

TABLE_UNION = """
sort pos = {onfloor, leftup, rightup, lifted}.
fluent table(pos) : regular.
action lift_l agent l.
action lift_r agent r.

-table(P) if table(P1) where P != P1.
impossible all P in pos : -table(P).
table(leftup) after lift_l, table(onfloor).
table(rightup) after lift_r, table(onfloor).
inertial table(P).
"""


class TestService:
    """HTTP front end over the description engine"""

    @pytest.fixture
    def client(self):
        return TestClient(app)

    def test_health(self, client):
        response = client.get("/health")
        assert response.status_code == 200
        assert response.json() == {"status": "healthy", "service": "bcmas"}

    def test_root(self, client):
        response = client.get("/")
        assert response.status_code == 200
        assert "/resolve" in response.json()["endpoints"]

    def test_transitions(self, client, corpus):
        source = (corpus / "sumo_agent.bc").read_text()
        response = client.post("/transitions", json={"source": source})
        assert response.status_code == 200
        payload = response.json()
        assert len(payload["states"]) == 3
        assert len(payload["transitions"]) == 7

    def test_sort_override(self, client, corpus):
        source = (corpus / "sumo_agent.bc").read_text()
        response = client.post("/transitions", json={"source": source, "sorts": {"slot": "1..3"}})
        assert response.status_code == 200
        assert len(response.json()["states"]) == 4

    def test_conflicts(self, client):
        response = client.post("/conflicts", json={"source": TABLE_UNION})
        assert response.status_code == 200
        payload = response.json()
        assert payload["size_bound"] is None
        onfloor = next(e for e in payload["states"] if "table(onfloor)" in e["state"])
        assert ["lift_l", "lift_r"] in onfloor["conflicts"]

    def test_conflicts_size_bound(self, client):
        response = client.post("/conflicts", json={"source": TABLE_UNION, "max_size": 1})
        assert response.status_code == 200
        for entry in response.json()["states"]:
            assert all(len(c) <= 1 for c in entry["conflicts"])

    def test_resolve(self, client):
        response = client.post("/resolve", json={
            "source": TABLE_UNION,
            "actions": ["lift_l", "lift_r"],
            "state": ["table(onfloor)"],
            "target": ["table(lifted)"],
        })
        assert response.status_code == 200
        payload = response.json()
        assert "table(lifted)" in payload["target"]
        assert any(law.startswith("table(lifted) after") for law in payload["laws"])

    def test_parse_error_is_unprocessable(self, client):
        response = client.post("/transitions", json={"source": "fluent f : regular"})
        assert response.status_code == 422

    def test_resolving_an_executable_action(self, client):
        response = client.post("/resolve", json={
            "source": TABLE_UNION,
            "actions": ["lift_l"],
            "state": ["table(onfloor)"],
            "target": ["table(leftup)"],
        })
        assert response.status_code == 422
        assert "is executable" in response.json()["detail"]

    def test_missing_source(self, client):
        response = client.post("/conflicts", json={"max_size": 1})
        assert response.status_code == 422
