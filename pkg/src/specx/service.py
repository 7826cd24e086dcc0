"""FastAPI service over the package: analyze, construct, verify, sweep.

The handler functions here are the single implementation; the HTTP
endpoints and the command-line client are both thin wrappers around them.
"""

from __future__ import annotations

from typing import Literal

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import connectivity, families, formats, spectral, verifier
from .errors import (
    DisconnectedGraphError,
    FamilyParameterError,
    GraphFormatError,
    NotStronglyConnectedError,
    PreconditionError,
    SpecxError,
)
from .graphs import Digraph, Graph

__all__ = [
    "AnalyzeRequest",
    "AnalyzeResponse",
    "ConstructRequest",
    "ConstructResponse",
    "VerifyRequest",
    "ReportModel",
    "SweepRequest",
    "analyze_content",
    "construct_family",
    "run_verify",
    "run_sweep",
    "create_app",
    "app",
]


class AnalyzeRequest(BaseModel):
    content: str
    format: Literal["auto", "graph6", "digraph6", "edgelist"] = "auto"
    directed: bool = False  # edge lists only
    tol: float = Field(default=1e-10, gt=0)


class AnalyzeResponse(BaseModel):
    kind: Literal["graph", "digraph"]
    n: int
    edges: int
    connected: bool | None = None
    min_degree: int | None = None
    max_degree: int | None = None
    connectivity: int | None = None
    edge_connectivity: int | None = None
    essential_connectivity: int | None = None
    essential_cut: str | None = None
    algebraic_connectivity: float | None = None
    spectral_radius: float | None = None
    strongly_connected: bool | None = None
    note: str | None = None


class ConstructRequest(BaseModel):
    family: str  # g(n,kappa,delta) or dg(n,k,m)


class ConstructResponse(BaseModel):
    family: str
    kind: Literal["graph", "digraph"]
    n: int
    encoding: str
    spectral_radius: float
    provenance: str


class VerifyRequest(BaseModel):
    theorem: Literal["t1", "t2"]
    n: int
    delta: int | None = None
    kappa: int | None = None
    k: int | None = None
    tol: float = Field(default=1e-8, gt=0)
    mode: Literal["exhaustive", "sampled"] = "exhaustive"
    seed: int = 0
    trials: int = Field(default=10000, ge=1)
    workers: int = Field(default=1, ge=1)


class ReportModel(BaseModel):
    kind: str
    params: dict[str, int]
    mode: str
    tol: float
    seed: int | None
    trials: int | None
    space_size: int
    feasible_count: int
    max_rho: float | None
    maximizers: list[str]
    construction_rho: float | None
    verdict: str
    counterexample: str | None
    text: str
    kv: str

    @classmethod
    def from_report(cls, rep: verifier.VerificationReport) -> "ReportModel":
        return cls(
            kind=rep.kind,
            params=rep.params,
            mode=rep.mode,
            tol=rep.tol,
            seed=rep.seed,
            trials=rep.trials,
            space_size=rep.space_size,
            feasible_count=rep.feasible_count,
            max_rho=rep.max_rho,
            maximizers=list(rep.maximizers),
            construction_rho=rep.construction_rho,
            verdict=rep.verdict,
            counterexample=rep.counterexample,
            text=rep.to_text(),
            kv=rep.to_kv(),
        )


class SweepRequest(BaseModel):
    theorem: Literal["t1", "t2"]
    n_range: tuple[int, int]
    delta_range: tuple[int, int] | None = None
    kappa_range: tuple[int, int] | None = None
    k_range: tuple[int, int] | None = None
    tol: float = Field(default=1e-8, gt=0)
    mode: Literal["exhaustive", "sampled"] = "exhaustive"
    seed: int = 0
    trials: int = Field(default=10000, ge=1)
    workers: int = Field(default=1, ge=1)


def _sniff_format(content: str) -> str:
    first = next(
        (line.strip() for line in content.splitlines() if line.strip() and not line.strip().startswith("#")),
        None,
    )
    if first is None:
        raise GraphFormatError("empty input")
    if first.startswith("&"):
        return "digraph6"
    if any(ch.isspace() for ch in first) or first.startswith("n="):
        return "edgelist"
    return "graph6"


def parse_content(content: str, fmt: str = "auto", directed: bool = False) -> Graph | Digraph:
    fmt = _sniff_format(content) if fmt == "auto" else fmt
    payload = next(
        (line for line in content.splitlines() if line.strip() and not line.strip().startswith("#")),
        "",
    )
    if fmt == "graph6":
        return formats.parse_graph6(payload)
    if fmt == "digraph6":
        return formats.parse_digraph6(payload)
    return formats.parse_edge_list(content, directed=directed)


def analyze_content(req: AnalyzeRequest) -> AnalyzeResponse:
    g = parse_content(req.content, req.format, req.directed)
    if isinstance(g, Digraph):
        strong = connectivity.is_strongly_connected(g)
        resp = AnalyzeResponse(
            kind="digraph", n=g.n, edges=g.arc_count(), strongly_connected=strong
        )
        if strong and g.n >= 1:
            ess = connectivity.essential_connectivity_digraph(g)
            if ess is not None:
                resp.essential_connectivity = ess[0]
                resp.essential_cut = ess[1].to_text()
            resp.spectral_radius = spectral.spectral_radius_digraph(g, req.tol).radius
        else:
            resp.note = "not strongly connected; spectral quantities need an irreducible matrix"
        return resp
    connected = connectivity.is_connected(g) and g.n > 0
    resp = AnalyzeResponse(
        kind="graph",
        n=g.n,
        edges=g.edge_count(),
        connected=connected,
        min_degree=min(g.degrees()) if g.n else None,
        max_degree=max(g.degrees()) if g.n else None,
    )
    if g.n >= 2:
        resp.algebraic_connectivity = spectral.algebraic_connectivity(g)
    if connected:
        kappa, _ = connectivity.vertex_connectivity(g)
        resp.connectivity = kappa
        resp.edge_connectivity = connectivity.edge_connectivity(g)
        ess = connectivity.essential_connectivity(g)
        if ess is not None:
            resp.essential_connectivity = ess[0]
            resp.essential_cut = ess[1].to_text()
        resp.spectral_radius = spectral.spectral_radius(g, req.tol).radius
    elif g.n > 0:
        resp.note = "graph is disconnected; connectivity and radius are per-component notions"
    return resp


def construct_family(req: ConstructRequest) -> ConstructResponse:
    params = families.parse_family_spec(req.family)
    if isinstance(params, families.UndirectedFamilyParams):
        g = families.build_undirected_extremal(params)
        rho = families.undirected_extremal_radius(params)
        encoding = formats.write_graph6(g)
        kind = "graph"
        desc = f"g({params.n},{params.kappa_e},{params.delta})"
    else:
        d = families.build_digraph_extremal(params)
        rho = families.digraph_extremal_radius(params)
        encoding = formats.write_digraph6(d)
        kind = "digraph"
        desc = f"dg({params.n},{params.k},{params.m})"
    provenance = f"# family {desc} rho={rho:.10g}"
    return ConstructResponse(
        family=desc,
        kind=kind,
        n=params.n,
        encoding=encoding,
        spectral_radius=rho,
        provenance=provenance,
    )


def run_verify(req: VerifyRequest) -> ReportModel:
    if req.theorem == "t1":
        if req.delta is None or req.kappa is None:
            raise PreconditionError("t1 needs delta= and kappa=")
        rep = verifier.verify_undirected(
            req.n, req.delta, req.kappa, tol=req.tol, workers=req.workers
        )
    else:
        if req.k is None:
            raise PreconditionError("t2 needs k=")
        rep = verifier.verify_digraph(
            req.n,
            req.k,
            tol=req.tol,
            mode=req.mode,
            seed=req.seed,
            trials=req.trials,
            workers=req.workers,
        )
    return ReportModel.from_report(rep)


def run_sweep(req: SweepRequest) -> list[ReportModel]:
    lo, hi = req.n_range
    if lo > hi or lo < 1:
        raise PreconditionError(f"bad n range {req.n_range}")
    out: list[ReportModel] = []
    for n in range(lo, hi + 1):
        if req.theorem == "t1":
            pairs = verifier.feasible_parameter_classes(n, req.workers)
            for delta, kappa in pairs:
                if req.delta_range and not req.delta_range[0] <= delta <= req.delta_range[1]:
                    continue
                if req.kappa_range and not req.kappa_range[0] <= kappa <= req.kappa_range[1]:
                    continue
                if n < kappa + 4:
                    continue
                out.append(
                    ReportModel.from_report(
                        verifier.verify_undirected(
                            n, delta, kappa, tol=req.tol, workers=req.workers
                        )
                    )
                )
        else:
            k_lo, k_hi = req.k_range if req.k_range else (1, max(1, n - 4))
            for k in range(k_lo, k_hi + 1):
                if n < k + 4:
                    continue
                out.append(
                    ReportModel.from_report(
                        verifier.verify_digraph(
                            n,
                            k,
                            tol=req.tol,
                            mode=req.mode,
                            seed=req.seed,
                            trials=req.trials,
                            workers=req.workers,
                        )
                    )
                )
    return out


def create_app() -> FastAPI:
    app = FastAPI(
        title="specx",
        description="Spectral-radius extremal certification for graphs and digraphs "
        "with given essential connectivity",
        version="0.1.0",
    )

    def wrap(fn, *args):
        try:
            return fn(*args)
        except GraphFormatError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        except (
            FamilyParameterError,
            PreconditionError,
            DisconnectedGraphError,
            NotStronglyConnectedError,
        ) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        except SpecxError as exc:  # pragma: no cover - defensive
            raise HTTPException(status_code=500, detail=str(exc)) from exc

    @app.get("/health")
    def health() -> dict[str, str]:
        return {"status": "ok"}

    @app.post("/analyze", response_model=AnalyzeResponse)
    def analyze(req: AnalyzeRequest) -> AnalyzeResponse:
        return wrap(analyze_content, req)

    @app.post("/construct", response_model=ConstructResponse)
    def construct(req: ConstructRequest) -> ConstructResponse:
        return wrap(construct_family, req)

    @app.post("/verify", response_model=ReportModel)
    def verify(req: VerifyRequest) -> ReportModel:
        return wrap(run_verify, req)

    @app.post("/sweep", response_model=list[ReportModel])
    def sweep(req: SweepRequest) -> list[ReportModel]:
        return wrap(run_sweep, req)

    return app


app = create_app()
