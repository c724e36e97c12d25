"""Request and response models for the verification service.

Matrices travel as {"n": ..., "rows": [[...]]} and quivers as
{"n", "matrix", "frozen", "action_generators"}, matching the file formats
the CLI accepts. Composite payloads (seeds, Laurent polynomials, graphs)
are passed through as plain JSON objects produced by the core to_json
methods; their shapes are owned by the core package, not re-modeled here.
"""

from __future__ import annotations

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class MatrixPayload(BaseModel):
    n: Optional[int] = None
    rows: List[List[int]]

    def to_core_json(self) -> dict:
        data: Dict[str, Any] = {"rows": self.rows}
        if self.n is not None:
            data["n"] = self.n
        return data


class MatrixRequest(BaseModel):
    matrix: MatrixPayload


class MatrixPathRequest(MatrixRequest):
    path: List[int] = Field(default_factory=list)


class MatrixDepthRequest(MatrixRequest):
    depth: int = Field(default=6, ge=0)


class DualitiesRequest(MatrixDepthRequest):
    assumption: bool = False
    dual_mutation: Optional[int] = None


class AssumptionRequest(MatrixDepthRequest):
    reroot: bool = True


class FanRequest(MatrixRequest):
    # depth None means: walk until the fan closes or max_cones is hit
    depth: Optional[int] = Field(default=None, ge=0)
    check: bool = False
    samples: int = Field(default=0, ge=0)
    rng_seed: int = 0
    max_cones: int = Field(default=100000, gt=0)


class QuiverPayload(BaseModel):
    n: Optional[int] = None
    matrix: List[List[int]]
    frozen: List[int] = Field(default_factory=list)
    action_generators: List[List[int]] = Field(default_factory=list)

    def to_core_json(self) -> dict:
        data: Dict[str, Any] = {
            "matrix": self.matrix,
            "frozen": self.frozen,
            "action_generators": self.action_generators,
        }
        if self.n is not None:
            data["n"] = self.n
        return data


class QuiverRequest(BaseModel):
    quiver: QuiverPayload


class OrbitMutateRequest(QuiverRequest):
    vertex: int


class FoldVerifyRequest(QuiverRequest):
    depth: int = Field(default=6, ge=0)


class ExploreRequest(MatrixRequest):
    max_nodes: int = Field(default=100000, gt=0)
    max_depth: int = Field(default=12, ge=0)


class GraphRequest(BaseModel):
    graph: Dict[str, Any]


class GraphVerifyRequest(GraphRequest):
    checks: List[str] = Field(
        default_factory=lambda: ["cluster", "adjacency", "cmatrix", "oddrank"]
    )


class MatrixOut(BaseModel):
    n: int
    rows: List[List[int]]


class MatrixCheckOut(BaseModel):
    n: int
    sign_skew_symmetric: bool
    skew_symmetric: bool
    skew_symmetrizable: bool
    symmetrizer: Optional[List[int]] = None
    acyclic: Optional[bool] = None


class SSSReportOut(BaseModel):
    ok: bool
    verified_depth: int
    failure_path: Optional[List[int]] = None
    failing_matrix: Optional[MatrixOut] = None
    explored: int


class CheckReportOut(BaseModel):
    name: str
    status: str
    verified_depth: int
    explored: int
    failure: Optional[Dict[str, Any]] = None
    details: Dict[str, Any] = Field(default_factory=dict)


class AdmissibilityOut(BaseModel):
    admissible: bool
    violated_condition: Optional[str] = None
    witness: Optional[Dict[str, Any]] = None


class QuiverOut(BaseModel):
    n: int
    matrix: List[List[int]]
    frozen: List[int]
    action_generators: List[List[int]]


class DualitiesOut(BaseModel):
    verified_depth: int
    checks: Dict[str, str]
    failure: Optional[List[int]] = None
    details: Dict[str, Any] = Field(default_factory=dict)


class HealthOut(BaseModel):
    status: str
    version: str
