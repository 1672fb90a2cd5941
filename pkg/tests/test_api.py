import pytest


def test_root_redirects_to_docs(client):
    response = client.get("/", follow_redirects=False)
    assert response.status_code == 307
    assert response.headers["location"] == "/docs"


def test_model_info(client):
    response = client.get("/lab/models/seq-deps", params={"n": 3})
    assert response.status_code == 200
    body = response.json()
    assert body["num_states"] == 4
    assert body["num_vars"] == 3
    assert body["params"] == {"M": 300.0}
    assert body["exact_conditionals"] is True


def test_model_info_unknown_model(client):
    assert client.get("/lab/models/ising", params={"n": 3}).status_code == 422


def test_model_info_state_limit(client):
    assert client.get("/lab/models/two-islands", params={"n": 7}).json()["num_states"] == 255

    response = client.get("/lab/models/two-islands", params={"n": 8})
    assert response.status_code == 400
    detail = response.json()["detail"]
    assert detail["loc"] == ["query", "n"]
    assert detail["size"] == 511
    assert detail["limit"] == 256


def test_mixing_time(client):
    response = client.get("/lab/mixing-time", params={"model": "seq-deps", "n": 5, "perm": "worst"})
    assert response.status_code == 200
    body = response.json()
    assert body["scan"] == "systematic(5,4,3,2,1)"
    assert body["space"] == "states"
    assert body["result"]["t_mix"] == 21
    assert body["result"]["capped"] is False
    assert len(body["result"]["tv_trace"]) == 22


def test_mixing_time_lazy_random(client):
    response = client.get("/lab/mixing-time", params={"model": "pyramid", "n": 3, "lazy": True})
    assert response.status_code == 200
    assert response.json()["scan"] == "lazy random"


def test_mixing_time_augmented_state_limit(client):
    params = {"model": "pyramid", "n": 20, "perm": "identity", "lazy": True}
    response = client.get("/lab/mixing-time", params=params)
    assert response.status_code == 400
    assert response.json()["detail"]["size"] == 21 * 20


def test_mixing_time_bad_permutation(client):
    response = client.get("/lab/mixing-time", params={"model": "seq-deps", "n": 3, "perm": "1,2,2"})
    assert response.status_code == 400
    assert "is not a permutation" in response.json()["detail"]["msg"]


@pytest.mark.parametrize("params", [
    {"model": "seq-deps", "n": 3, "epsilon": 2},
    {"model": "seq-deps", "n": 0},
    {"model": "seq-deps", "n": 3, "max_steps": 10**5},
])
def test_mixing_time_query_validation(client, params):
    assert client.get("/lab/mixing-time", params=params).status_code == 422


def test_bridge_efficiency(client):
    params = {"n": 3, "perm": "alternating", "mode": "normal"}
    response = client.get("/lab/bridge-efficiency", params=params)
    assert response.status_code == 200
    body = response.json()
    assert body["scan"] == "1,4,2,5,3,6"
    assert body["method"] == "analytic"
    assert body["efficiency"] == pytest.approx(2 / 3)

    assert client.get("/lab/bridge-efficiency", params={"n": 3}).json()["efficiency"] == 0.5


def test_bridge_efficiency_measured(client):
    params = {"n": 2, "perm": "alternating", "bridge_mass": 1.0}
    body = client.get("/lab/bridge-efficiency", params=params).json()
    assert body["method"] == "measured"
    assert body["efficiency"] == pytest.approx(2 / 3, abs=1e-12)


def test_sweep_success(client):
    response = client.get("/lab/sweep-success", params={"n": 5, "M": 5})
    assert response.status_code == 200
    body = response.json()
    assert body["M"] == 5.0
    assert body["probability"] == pytest.approx((5 / 6) ** 5)


def test_metrics(client):
    client.get("/lab/sweep-success", params={"n": 2})
    response = client.get("/metrics")
    assert response.status_code == 200
    assert "http_request" in response.text


def test_openapi_query_examples(client):
    operation = client.get("/openapi.json").json()["paths"]["/lab/mixing-time"]["get"]
    parameters = {parameter["name"]: parameter for parameter in operation["parameters"]}
    assert parameters["perm"]["schema"]["examples"] == ["1,2,3"]
    assert parameters["n"]["schema"]["examples"] == [5]
