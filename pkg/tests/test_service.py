import json

import pytest
from fastapi.testclient import TestClient

from lctkit.config import RunConfig
from lctkit.service.app import create_app


@pytest.fixture()
def client(tmp_path):
    cfg = RunConfig(cache_dir=str(tmp_path / "cache"))
    return TestClient(create_app(cfg))


def test_health_and_config(client):
    assert client.get("/health").json()["status"] == "ok"
    doc = client.get("/config").json()
    assert doc["oracle_max_m"] == 12 and doc["workers"] == 1


def test_member_endpoint(client):
    doc = client.post("/t2/member", json={"c": "5/6"}).json()
    assert doc == {"c": "5/6", "verdict": "in_t2",
                   "witness": [{"m": 1, "k": 1}, {"m": 2, "k": 0}, {"m": 3, "k": 0}]}
    doc = client.post("/t2/member", json={"c": "1/3"}).json()
    assert doc == {"c": "1/3", "verdict": "in_t1", "n": 3}
    doc = client.post("/t2/member", json={"c": "5/7"}).json()
    assert doc["verdict"] == "not_in_t2" and doc["bounds"]["r_max"] == 4


def test_member_domain_error_maps_to_422(client):
    resp = client.post("/t2/member", json={"c": "7/6"})
    assert resp.status_code == 422
    assert resp.json()["kind"] == "domain"
    resp = client.post("/t2/member", json={"c": "zebra"})
    assert resp.status_code == 422
    assert resp.json()["kind"] == "usage"


def test_witnesses_endpoint_uses_config_caps(client):
    doc = client.post("/t2/witnesses", json={"c": "1/2"}).json()
    assert doc["caps"] == {"max_m": 12, "max_k": 12, "max_r": 6}
    assert [{"m": 1, "k": 2}, {"m": 2, "k": 0}, {"m": 2, "k": 0}] in doc["witnesses"]


def test_enumerate_endpoint_with_cache(client):
    payload = {"lo": "1/2", "hi": "1", "max_den": 10}
    first = client.post("/t2/enumerate", json=payload).json()
    assert first["cache_hit"] is False
    assert first["members"] == ["1/2", "5/9", "4/7", "3/5", "5/8", "2/3",
                                "7/10", "3/4", "5/6", "1"]
    assert first["family_n_ge_2"][-1] == "1"
    assert "1" not in first["family_n_ge_3"]
    assert "endpoint_note" in first
    second = client.post("/t2/enumerate", json=payload).json()
    assert second["cache_hit"] is True
    first.pop("cache_hit")
    second.pop("cache_hit")
    assert json.dumps(first, sort_keys=True) == json.dumps(second, sort_keys=True)


def test_enumerate_usage_error(client):
    resp = client.post("/t2/enumerate", json={"lo": "1/2", "hi": "1", "max_den": 1})
    assert resp.status_code == 422 and resp.json()["kind"] == "usage"


def test_accumulation_endpoint(client):
    doc = client.post("/t2/accumulation", json={
        "lo": "0.45", "hi": "0.6", "max_den": 60,
        "targets": ["1/2"], "delta": "1/50",
    }).json()
    [rec] = doc["report"]
    assert rec["target"] == "1/2" and rec["count"] >= 1


def test_germ_endpoints(client):
    assert client.post("/germ/hj", json={"m": 5, "q": 2}).json()["expansion"] == [3, 2]
    doc = client.post("/germ/mld", json={"m": 3, "q": 2}).json()
    assert doc["mld"] == "0" and doc["argmin"] == ["1/3", "2/3"]
    doc = client.post("/germ/discrepancy",
                      json={"m": 3, "q": 1, "v1": "1/3", "v2": "1/3"}).json()
    assert doc["value"] == "-1/3"
    resp = client.post("/germ/discrepancy",
                       json={"m": 3, "q": 1, "v1": "1/2", "v2": "1/2"})
    assert resp.status_code == 422 and resp.json()["kind"] == "domain"


def test_lct_endpoint(client):
    cusp = {
        "curves": [{"id": 1, "self_int": -3, "f_mult": 2},
                   {"id": 2, "self_int": -2, "f_mult": 3},
                   {"id": 3, "self_int": -1, "f_mult": 6}],
        "edges": [[1, 3], [2, 3]],
        "ends": [],
        "components": [1],
    }
    doc = client.post("/lct", json={"graph": cusp, "components": None}).json()
    assert doc["lct"] == "5/6"
    assert doc["binding"] == {"kind": "curve", "id": 3}
    assert doc["membership"]["verdict"] == "in_t2"
    bad = {"curves": [{"id": 1, "self_int": -1, "f_mult": 0},
                      {"id": 2, "self_int": -1, "f_mult": 0}],
           "edges": [[1, 2]], "ends": []}
    resp = client.post("/lct", json={"graph": bad, "components": None})
    assert resp.status_code == 422 and resp.json()["kind"] == "structural"


def test_verify_endpoints_small(client):
    doc = client.post("/verify/lemma-p1", json={"n": 6, "max_m": 20, "max_den": 20}).json()
    assert doc["counterexamples"] == []
    doc = client.post("/verify/pair-discr", json={"samples": 50, "seed": 3}).json()
    assert doc["counterexamples"] == [] and doc["params"]["seed"] == 3
    doc = client.post("/verify/lct2", json={"n": 6, "max_m": 6, "max_den": 6}).json()
    assert doc["counterexamples"] == []
    doc = client.post("/verify/eq-s", json={"count": 40, "seed": 5}).json()
    assert doc["counterexamples"] == [] and doc["instances_checked"] == 40


def test_verify_seed_echo_and_reproducibility(client):
    first = client.post("/verify/pair-discr", json={"samples": 25}).json()
    seed = first["params"]["seed"]
    again = client.post("/verify/pair-discr", json={"samples": 25, "seed": seed}).json()
    assert first == again


def test_ledger_endpoint_modes(client):
    base = {"pa": 0, "gamma_sq": "2", "terms": [[2, 0], [2, 0], [1, 1]]}
    doc = client.post("/ledger/eq-s", json=base | {"gamma": "1", "c": "1",
                                                   "mode": "check"}).json()
    assert doc["holds"] is True
    doc = client.post("/ledger/eq-s", json=base | {"gamma": "1", "mode": "solve-c"}).json()
    assert doc["solution"] == {"status": "unique", "value": "1"}
    doc = client.post("/ledger/eq-s", json={
        "pa": 0, "gamma_sq": "1", "terms": [[2, 0], [2, 0]],
        "c": "1/2", "mode": "solve-gamma"}).json()
    assert doc["solution"] == {"status": "unique", "value": "2"}
    resp = client.post("/ledger/eq-s", json=base | {"mode": "check"})
    assert resp.status_code == 422
