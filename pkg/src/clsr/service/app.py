"""FastAPI application exposing dataset generation, roadmap builds, planning,
suggestion, benchmarking, and DOT export over HTTP.

Built roadmaps live in an in-memory registry keyed by a content hash; clients
address them by id for subsequent planning calls.
"""

from __future__ import annotations

import logging
import os

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..domains import domain_names
from ..errors import ClsrError, PathExistsError
from ..roadmap import Roadmap
from . import ops
from .schemas import (
    BenchRequest,
    BenchResponse,
    BuildRequest,
    BuildResponse,
    GenerateRequest,
    GenerateResponse,
    PlanRequest,
    PlanResponse,
    RebuildRequest,
    SuggestResponse,
)

log = logging.getLogger(__name__)


def create_app() -> FastAPI:
    logging.basicConfig(level=os.environ.get("CLSR_LOG", "WARNING").upper())
    app = FastAPI(title="clsr planning service", version=__version__)
    registry: dict[str, Roadmap] = {}

    def _get(roadmap_id: str) -> Roadmap:
        roadmap = registry.get(roadmap_id)
        if roadmap is None:
            raise HTTPException(status_code=404, detail=f"unknown roadmap {roadmap_id!r}")
        return roadmap

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.get("/domains")
    def domains():
        return {"domains": domain_names()}

    @app.post("/datasets/generate", response_model=GenerateResponse)
    def generate(req: GenerateRequest):
        try:
            return ops.generate_dataset(req)
        except (ClsrError, KeyError, ValueError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))

    @app.post("/roadmaps", response_model=BuildResponse)
    def build(req: BuildRequest):
        try:
            roadmap, resp = ops.build_roadmap(req)
        except (ClsrError, KeyError, ValueError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        registry[resp.roadmap_id] = roadmap
        return resp

    @app.get("/roadmaps")
    def list_roadmaps():
        return {"roadmaps": sorted(registry)}

    @app.get("/roadmaps/{roadmap_id}")
    def get_roadmap(roadmap_id: str):
        return _get(roadmap_id).to_json()

    @app.post("/roadmaps/{roadmap_id}/clsr", response_model=BuildResponse)
    def rebuild(roadmap_id: str, req: RebuildRequest):
        try:
            roadmap, resp = ops.rebuild_capability_layer(_get(roadmap_id), req)
        except (ClsrError, ValueError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        registry[resp.roadmap_id] = roadmap
        return resp

    @app.post("/roadmaps/{roadmap_id}/plan", response_model=PlanResponse)
    def plan(roadmap_id: str, req: PlanRequest):
        try:
            return ops.plan_on_roadmap(_get(roadmap_id), req)
        except ClsrError as exc:
            raise HTTPException(status_code=400, detail=str(exc))

    @app.post("/roadmaps/{roadmap_id}/suggest", response_model=SuggestResponse)
    def suggest(roadmap_id: str, req: PlanRequest):
        try:
            return ops.suggest_on_roadmap(_get(roadmap_id), req)
        except PathExistsError as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        except ClsrError as exc:
            raise HTTPException(status_code=400, detail=str(exc))

    @app.post("/roadmaps/{roadmap_id}/bench", response_model=BenchResponse)
    def bench(roadmap_id: str, req: BenchRequest):
        try:
            return ops.bench_on_roadmap(_get(roadmap_id), req)
        except (ClsrError, ValueError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))

    @app.get("/roadmaps/{roadmap_id}/dot")
    def dot(roadmap_id: str, layer: str = "lsr"):
        try:
            return {"layer": layer, "dot": ops.export_dot(_get(roadmap_id), layer)}
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))

    return app


app = create_app()
