"""HTTP layer: routes, payload validation, and error code mapping."""

from __future__ import annotations

import pytest
from fastapi.testclient import TestClient

from clusterlab.service import create_app


A2 = [[0, 1], [-1, 0]]
A3 = [[0, 1, 0], [-1, 0, 1], [0, -1, 0]]
NOT_TOTALLY = [[0, 1, -1], [-1, 0, 1], [2, -1, 0]]
A3_ALT_QUIVER = {
    "n": 3,
    "matrix": [[0, 1, 0], [-1, 0, -1], [0, 1, 0]],
    "frozen": [],
    "action_generators": [[3, 2, 1]],
}


@pytest.fixture(scope="module")
def client():
    with TestClient(create_app()) as c:
        yield c


def test_health(client):
    body = client.get("/health").json()
    assert body["status"] == "ok"
    assert body["version"]


def test_matrix_check(client):
    body = client.post("/matrix/check", json={"matrix": {"rows": A2}}).json()
    assert body["n"] == 2
    assert body["sign_skew_symmetric"] and body["skew_symmetric"]
    assert body["symmetrizer"] == [1, 1]
    assert body["acyclic"] is True
    nonsym = [[0, 1, 1], [-2, 0, 1], [-1, -1, 0]]
    body = client.post("/matrix/check", json={"matrix": {"rows": nonsym}}).json()
    assert body["sign_skew_symmetric"] and not body["skew_symmetrizable"]
    assert body["symmetrizer"] is None


def test_matrix_mutate_along_path(client):
    body = client.post(
        "/matrix/mutate", json={"matrix": {"rows": A2}, "path": [1, 2]}
    ).json()
    assert body["rows"] == [[0, 1], [-1, 0]] or body["rows"] == [[0, -1], [1, 0]]
    single = client.post(
        "/matrix/mutate", json={"matrix": {"rows": A2}, "path": [1]}
    ).json()
    assert single["rows"] == [[0, -1], [1, 0]]


def test_matrix_verify_total(client):
    ok = client.post(
        "/matrix/verify-total", json={"matrix": {"rows": A2}, "depth": 6}
    ).json()
    assert ok["failure_path"] is None
    bad = client.post(
        "/matrix/verify-total", json={"matrix": {"rows": NOT_TOTALLY}, "depth": 6}
    ).json()
    assert bad["failure_path"] == [1]
    assert bad["failing_matrix"] is not None


def test_seed_routes(client):
    seed = client.post(
        "/seed/mutate", json={"matrix": {"rows": A2}, "path": [1]}
    ).json()
    assert len(seed["cluster"]) == 2
    fpoly = client.post(
        "/seed/fpoly", json={"matrix": {"rows": A2}, "path": [1]}
    ).json()
    assert fpoly["f_polynomials"][0]["terms"] == [
        {"exp": [0, 0], "coef": 1},
        {"exp": [1, 0], "coef": 1},
    ]
    gvec = client.post(
        "/seed/gvec", json={"matrix": {"rows": A2}, "path": [1]}
    ).json()
    assert gvec["g_vectors"] == [[-1, 1], [0, 1]]
    assert gvec["c_matrix"]["rows"] == [[-1, 1], [0, 1]]


def test_verify_routes(client):
    dual = client.post(
        "/verify/dualities",
        json={"matrix": {"rows": A3}, "depth": 4, "assumption": True,
              "dual_mutation": 2},
    ).json()
    assert dual["verified_depth"] == 4
    assert dual["failure"] is None
    assert set(dual["checks"]) == {
        "first_duality", "determinants", "sign_coherence", "assumption",
        "dual_mutation",
    }
    assert set(dual["checks"].values()) == {"pass"}

    assumption = client.post(
        "/verify/assumption", json={"matrix": {"rows": A2}, "depth": 4}
    ).json()
    assert assumption["status"] == "pass"

    yhat = client.post(
        "/verify/yhat", json={"matrix": {"rows": A2}, "depth": 3}
    ).json()
    assert yhat["status"] == "pass"


def test_fan_route(client):
    body = client.post(
        "/fan",
        json={"matrix": {"rows": A2}, "check": True, "samples": 200,
              "rng_seed": 3},
    ).json()
    assert body["cone_count"] == 5
    assert not body["truncated"]
    assert body["report"]["ok"] is True
    assert {tuple(g) for c in body["cones"] for g in c["generators"]} == {
        (1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1)
    }
    # every cone records the path of a pattern vertex realizing it
    assert any(c["path"] == [] for c in body["cones"])


def test_fold_routes(client):
    check = client.post("/fold/check", json={"quiver": A3_ALT_QUIVER}).json()
    assert check["admissible"] is True
    folded = client.post("/fold/fold-matrix", json={"quiver": A3_ALT_QUIVER}).json()
    assert folded["rows"] == [[0, 2], [-1, 0]]
    mutated = client.post(
        "/fold/mutate", json={"quiver": A3_ALT_QUIVER, "vertex": 1}
    ).json()
    assert mutated["matrix"] == [[0, -1, 0], [1, 0, 1], [0, -1, 0]]
    framed = client.post("/fold/frame", json={"quiver": A3_ALT_QUIVER}).json()
    assert framed["n"] == 6
    assert framed["frozen"] == [4, 5, 6]
    verdict = client.post(
        "/fold/verify", json={"quiver": framed, "depth": 4}
    ).json()
    assert verdict["status"] == "pass"

    bad = dict(A3_ALT_QUIVER)
    bad["matrix"] = [[0, 1, 0], [-1, 0, 1], [0, -1, 0]]
    check = client.post("/fold/check", json={"quiver": bad}).json()
    assert check["admissible"] is False
    assert check["violated_condition"] == "ii"


def test_graph_routes(client):
    body = client.post("/graph/explore", json={"matrix": {"rows": A3}}).json()
    assert body["stats"]["nodes"] == 14
    assert body["stats"]["edges"] == 21
    assert body["stats"]["truncated"] is False

    dot = client.post("/graph/export-dot", json={"graph": body["graph"]}).json()
    assert dot["dot"].startswith("graph exchange {")

    verify = client.post(
        "/graph/verify",
        json={"graph": body["graph"], "checks": ["cluster", "adjacency"]},
    ).json()
    assert verify["status"] == "pass"
    assert set(verify["reports"]) == {"cluster", "adjacency"}

    full = client.post("/graph/verify", json={"graph": body["graph"]}).json()
    assert set(full["reports"]) == {"cluster", "adjacency", "cmatrix", "oddrank"}
    assert full["status"] == "pass"


def test_error_mapping(client):
    # ragged rows: rejected by the core parser, reported as a 422
    resp = client.post("/matrix/check", json={"matrix": {"rows": [[0, 1], [0]]}})
    assert resp.status_code == 422
    assert resp.json()["error"] == "ParseError"

    # structurally bad payload: pydantic validation, also 422
    resp = client.post("/matrix/check", json={"matrix": {"rows": "zz"}})
    assert resp.status_code == 422

    # valid rows for the schema but not sign-skew-symmetric: domain error, 400
    resp = client.post(
        "/matrix/mutate", json={"matrix": {"rows": [[0, 1], [1, 0]]}, "path": [1]}
    )
    assert resp.status_code == 400
    assert resp.json()["error"] == "SignSkewSymmetryError"

    # mutation direction out of range maps to 400
    resp = client.post(
        "/matrix/mutate", json={"matrix": {"rows": A2}, "path": [7]}
    )
    assert resp.status_code == 400

    # unknown graph check name is a parse error
    graph = client.post("/graph/explore", json={"matrix": {"rows": A2}}).json()
    resp = client.post(
        "/graph/verify", json={"graph": graph["graph"], "checks": ["nope"]}
    )
    assert resp.status_code == 422

    # non-admissible quiver mutation surfaces as a 400 with the error name
    bad = dict(A3_ALT_QUIVER)
    bad["matrix"] = [[0, 1, 0], [-1, 0, 1], [0, -1, 0]]
    resp = client.post("/fold/mutate", json={"quiver": bad, "vertex": 1})
    assert resp.status_code == 400
    assert resp.json()["error"] == "AdmissibilityError"
