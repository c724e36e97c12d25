"""HTTP service exposing every verification suite of the core package.

All endpoints are POST with JSON bodies; responses are JSON built from the
core to_json serializers. Domain errors map to 400, malformed input to 422,
so a client can distinguish "this input is invalid" from "a check failed"
(which is a 200 whose report says fail).
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import ClusterLabError, ParseError
from ..exchange_graph import (
    explore,
    export_dot,
    graph_from_json,
    graph_to_json,
    verify_adjacency_common_variables,
    verify_cluster_determines_seed,
    verify_cmatrix_determines_seed,
    verify_odd_rank_theorem,
)
from ..folding import (
    check_admissible,
    fold_matrix,
    frame,
    orbit_mutate,
    quiver_from_json,
    verify_globally_foldable,
)
from ..gfan import check_fan, cone_of, enumerate_gfan
from ..matrices import (
    ExchangeMatrix,
    is_acyclic,
    is_sign_skew_symmetric,
    is_skew_symmetric,
    matrix_from_json,
    matrix_to_json,
    mutate_along,
    skew_symmetrizer,
    verify_totally_sss,
)
from ..pattern import check_assumption, dualities_report
from ..seeds import (
    c_matrix_of,
    f_polynomial,
    g_matrix_of,
    mutate_seed_along,
    principal_seed,
    verify_yhat_to_depth,
)
from .schemas import (
    AdmissibilityOut,
    AssumptionRequest,
    CheckReportOut,
    DualitiesOut,
    DualitiesRequest,
    ExploreRequest,
    FanRequest,
    FoldVerifyRequest,
    GraphRequest,
    GraphVerifyRequest,
    HealthOut,
    MatrixCheckOut,
    MatrixDepthRequest,
    MatrixOut,
    MatrixPathRequest,
    MatrixRequest,
    OrbitMutateRequest,
    QuiverOut,
    QuiverRequest,
    SSSReportOut,
)

GRAPH_CHECKS = {
    "cluster": verify_cluster_determines_seed,
    "adjacency": verify_adjacency_common_variables,
    "cmatrix": verify_cmatrix_determines_seed,
    "oddrank": verify_odd_rank_theorem,
}


def _exchange_matrix(payload) -> ExchangeMatrix:
    return ExchangeMatrix(matrix_from_json(payload.to_core_json()))


def create_app() -> FastAPI:
    app = FastAPI(title="clusterlab", version=__version__)

    @app.exception_handler(ClusterLabError)
    async def domain_error(request: Request, exc: ClusterLabError):
        code = 422 if isinstance(exc, ParseError) else 400
        return JSONResponse(
            status_code=code,
            content={"error": type(exc).__name__, "detail": str(exc)},
        )

    @app.exception_handler(IndexError)
    async def index_error(request: Request, exc: IndexError):
        return JSONResponse(
            status_code=400,
            content={"error": "IndexError", "detail": str(exc)},
        )

    @app.get("/health", response_model=HealthOut)
    def health():
        return HealthOut(status="ok", version=__version__)

    @app.post("/matrix/check", response_model=MatrixCheckOut)
    def matrix_check(req: MatrixRequest):
        m = matrix_from_json(req.matrix.to_core_json())
        sss = is_sign_skew_symmetric(m)
        d = skew_symmetrizer(m)
        return MatrixCheckOut(
            n=m.nrows,
            sign_skew_symmetric=sss,
            skew_symmetric=is_skew_symmetric(m),
            skew_symmetrizable=d is not None,
            symmetrizer=list(d) if d is not None else None,
            acyclic=is_acyclic(m) if sss else None,
        )

    @app.post("/matrix/mutate", response_model=MatrixOut)
    def matrix_mutate(req: MatrixPathRequest):
        b = _exchange_matrix(req.matrix)
        return MatrixOut(**matrix_to_json(mutate_along(b, req.path)))

    @app.post("/matrix/verify-total", response_model=SSSReportOut)
    def matrix_verify_total(req: MatrixDepthRequest):
        b = _exchange_matrix(req.matrix)
        report = verify_totally_sss(b, req.depth)
        return SSSReportOut(ok=report.ok, **report.to_json())

    @app.post("/seed/mutate")
    def seed_mutate(req: MatrixPathRequest):
        b = _exchange_matrix(req.matrix)
        seed = mutate_seed_along(principal_seed(b), req.path)
        return seed.to_json()

    @app.post("/seed/fpoly")
    def seed_fpoly(req: MatrixPathRequest):
        b = _exchange_matrix(req.matrix)
        seed = mutate_seed_along(principal_seed(b), req.path)
        return {
            "path": list(req.path),
            "f_polynomials": [
                f_polynomial(seed, i).to_json() for i in range(1, b.n + 1)
            ],
        }

    @app.post("/seed/gvec")
    def seed_gvec(req: MatrixPathRequest):
        b = _exchange_matrix(req.matrix)
        seed = mutate_seed_along(principal_seed(b), req.path)
        gm = g_matrix_of(seed)
        return {
            "path": list(req.path),
            "g_vectors": [list(gm.column(i)) for i in range(1, b.n + 1)],
            "g_matrix": matrix_to_json(gm),
            "c_matrix": matrix_to_json(c_matrix_of(seed)),
        }

    @app.post("/verify/dualities", response_model=DualitiesOut)
    def verify_dualities(req: DualitiesRequest):
        b = _exchange_matrix(req.matrix)
        return DualitiesOut(
            **dualities_report(b, req.depth, req.assumption, req.dual_mutation)
        )

    @app.post("/verify/assumption", response_model=CheckReportOut)
    def verify_assumption(req: AssumptionRequest):
        b = _exchange_matrix(req.matrix)
        return CheckReportOut(**check_assumption(b, req.depth, req.reroot).to_json())

    @app.post("/verify/yhat", response_model=CheckReportOut)
    def verify_yhat(req: MatrixDepthRequest):
        b = _exchange_matrix(req.matrix)
        return CheckReportOut(**verify_yhat_to_depth(b, req.depth).to_json())

    @app.post("/fan")
    def fan(req: FanRequest):
        b = _exchange_matrix(req.matrix)
        cone_objs, nodes, truncated = enumerate_gfan(b, req.depth, req.max_cones)
        paths = {}
        for node in nodes:
            key = cone_of(node.G).ray_set()
            if key not in paths:
                paths[key] = list(node.path)
        cones = [
            {
                "generators": [list(g) for g in cone.generators],
                "path": paths.get(cone.ray_set(), []),
            }
            for cone in cone_objs
        ]
        out = {
            "n": b.n,
            "cone_count": len(cones),
            "cones": cones,
            "nodes": len(nodes),
            "truncated": truncated,
            "report": None,
        }
        if req.check:
            report = check_fan(
                cone_objs, samples=req.samples, rng_seed=req.rng_seed
            )
            out["report"] = report.to_json()
        return out

    @app.post("/fold/check", response_model=AdmissibilityOut)
    def fold_check(req: QuiverRequest):
        q = quiver_from_json(req.quiver.to_core_json())
        return AdmissibilityOut(**check_admissible(q).to_json())

    @app.post("/fold/mutate", response_model=QuiverOut)
    def fold_mutate(req: OrbitMutateRequest):
        q = quiver_from_json(req.quiver.to_core_json())
        return QuiverOut(**orbit_mutate(q, req.vertex).to_json())

    @app.post("/fold/fold-matrix", response_model=MatrixOut)
    def fold_fold_matrix(req: QuiverRequest):
        q = quiver_from_json(req.quiver.to_core_json())
        return MatrixOut(**matrix_to_json(fold_matrix(q)))

    @app.post("/fold/frame", response_model=QuiverOut)
    def fold_frame(req: QuiverRequest):
        q = quiver_from_json(req.quiver.to_core_json())
        return QuiverOut(**frame(q).to_json())

    @app.post("/fold/verify", response_model=CheckReportOut)
    def fold_verify(req: FoldVerifyRequest):
        q = quiver_from_json(req.quiver.to_core_json())
        return CheckReportOut(**verify_globally_foldable(q, req.depth).to_json())

    @app.post("/graph/explore")
    def graph_explore(req: ExploreRequest):
        b = _exchange_matrix(req.matrix)
        graph = explore(b, req.max_nodes, req.max_depth)
        return {
            "stats": {
                "nodes": graph.node_count,
                "edges": graph.edge_count,
                "collisions": len(graph.collisions),
                "truncated": graph.truncated,
            },
            "graph": graph_to_json(graph),
        }

    @app.post("/graph/export-dot")
    def graph_export_dot(req: GraphRequest):
        graph = graph_from_json(req.graph)
        return {"dot": export_dot(graph)}

    @app.post("/graph/verify")
    def graph_verify(req: GraphVerifyRequest):
        graph = graph_from_json(req.graph)
        reports = {}
        for name in req.checks:
            fn = GRAPH_CHECKS.get(name)
            if fn is None:
                raise ParseError(
                    f"unknown check {name!r}; choose from "
                    + ",".join(sorted(GRAPH_CHECKS))
                )
            reports[name] = fn(graph).to_json()
        statuses = {rep["status"] for rep in reports.values()}
        overall = (
            "fail" if "fail" in statuses
            else "partial" if "partial" in statuses
            else "pass"
        )
        return {"status": overall, "reports": reports}

    return app


app = create_app()
