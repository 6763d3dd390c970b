import time

import pytest
from fastapi.testclient import TestClient

from iconparse.chart import ChartParser, ParserConfig
from iconparse.report import interpretation_payload
from iconparse.service import create_app


@pytest.fixture()
def client(demo):
    app = create_app(demo)
    with TestClient(app) as c:
        yield c


def new_session(client, config=None):
    body = {"config": config} if config else None
    response = client.post("/sessions", json=body)
    assert response.status_code == 201
    return response.json()["session_id"]


def test_health(client):
    assert client.get("/health").json() == {"status": "ok"}


def test_lexicon_palette(client, demo):
    doc = client.get("/lexicon").json()
    assert len(doc["icons"]) == len(demo.entries)
    by_id = {icon["id"]: icon for icon in doc["icons"]}
    assert by_id["drink"]["predicative"] is True
    assert by_id["drink"]["valency"] == 2
    assert by_id["drink"]["cases"][0] == {"case": "agent", "select": {"animate": {"v": 1.0, "kind": "int"}}}
    assert by_id["cat"]["predicative"] is False
    assert by_id["cat"]["gloss"] == "cat"


def test_session_flow_matches_direct_parse(client, demo):
    sid = new_session(client)
    view = client.post(f"/sessions/{sid}/icons", json={"ids": ["cat", "drink", "milk"]}).json()
    assert [item["lexicon_id"] for item in view["sequence"]] == ["cat", "drink", "milk"]
    assert view["sequence"][1]["predicative"] is True

    parser = ChartParser(demo)
    parser.parse_from_scratch(["cat", "drink", "milk"])
    expected = interpretation_payload(
        demo, parser.sequence, parser.interpretations_table, parser.config.fading
    )
    assert view["interpretations"] == expected
    assert view["interpretations"][0]["score"] == pytest.approx(1.0)

    again = client.get(f"/sessions/{sid}").json()
    assert again["interpretations"] == view["interpretations"]


def test_session_delete_matches_scratch(client, demo):
    sid = new_session(client)
    client.post(f"/sessions/{sid}/icons", json={"ids": ["cat", "drink", "milk"]})
    view = client.request("DELETE", f"/sessions/{sid}/icons", json={"positions": [3]}).json()
    parser = ChartParser(demo)
    parser.parse_from_scratch(["cat", "drink"])
    expected = interpretation_payload(
        demo, parser.sequence, parser.interpretations_table, parser.config.fading
    )
    assert view["interpretations"] == expected
    assert [item["lexicon_id"] for item in view["sequence"]] == ["cat", "drink"]


def test_sessions_are_isolated(client):
    a = new_session(client)
    b = new_session(client)
    client.post(f"/sessions/{a}/icons", json={"ids": ["cat", "drink", "milk"]})
    view_b = client.get(f"/sessions/{b}").json()
    assert view_b["sequence"] == []
    assert len(view_b["interpretations"]) == 1
    assert view_b["interpretations"][0]["score"] == 0.0


def test_session_config_override(client):
    sid = new_session(client, {"gamma": 0.9, "top_m": 2, "strict_fill": True})
    view = client.post(f"/sessions/{sid}/icons", json={"ids": ["cat", "drink", "milk"]}).json()
    assert view["config"]["gamma"] == 0.9
    assert view["config"]["strict_fill"] is True
    assert len(view["interpretations"]) <= 2
    assert view["interpretations"][0]["score"] == pytest.approx(2 * 0.9)


def test_invalid_config_rejected(client):
    response = client.post("/sessions", json={"config": {"gamma": 2.0}})
    assert response.status_code == 400
    body = response.json()["error"]
    assert body["code"] == "invalid_config"
    assert body["field"] == "config"


def test_unknown_icon_error_shape(client):
    sid = new_session(client)
    response = client.post(f"/sessions/{sid}/icons", json={"ids": ["nope"]})
    assert response.status_code == 400
    body = response.json()["error"]
    assert body["code"] == "unknown_icon"
    assert body["field"] == "ids"
    assert "nope" in body["message"]


def test_unknown_position_error_shape(client):
    sid = new_session(client)
    client.post(f"/sessions/{sid}/icons", json={"ids": ["cat"]})
    response = client.request("DELETE", f"/sessions/{sid}/icons", json={"positions": [9]})
    assert response.status_code == 400
    body = response.json()["error"]
    assert body["code"] == "unknown_position"
    assert body["field"] == "positions"


def test_sequence_cap_error_shape(client):
    sid = new_session(client)
    response = client.post(f"/sessions/{sid}/icons", json={"ids": ["cat"] * 21})
    assert response.status_code == 400
    assert response.json()["error"]["code"] == "sequence_too_long"


def test_missing_session(client):
    response = client.get("/sessions/doesnotexist")
    assert response.status_code == 404
    assert response.json()["error"]["code"] == "session_not_found"


def test_session_expiry(demo):
    app = create_app(demo, session_ttl=0.0)
    with TestClient(app) as client:
        sid = new_session(client)
        time.sleep(0.01)
        response = client.get(f"/sessions/{sid}")
        assert response.status_code == 404
        assert response.json()["error"]["code"] == "session_not_found"
