"""Request/response models for the planning service."""

from __future__ import annotations

from typing import Any

from pydantic import BaseModel, Field


class WeightsModel(BaseModel):
    alpha: float = Field(1.0, ge=0)
    beta: float = Field(1.0, ge=0)
    gamma: float = Field(1.0, ge=0)
    mu: float = Field(1.0, ge=0)


class AgentModel(BaseModel):
    id: str
    skills: list[str]
    base: list[float]
    max_reach: float = Field(gt=0)
    workloads: dict[str, float] = Field(default_factory=dict)
    default_workload: float = Field(1.0, ge=0, le=1)


class ObservationModel(BaseModel):
    state: Any
    nuisance: dict[str, Any] = Field(default_factory=dict)


class GenerateRequest(BaseModel):
    domain: str
    n_tuples: int = Field(gt=0)
    action_fraction: float = Field(ge=0, le=1)
    seed: int = 0


class GenerateResponse(BaseModel):
    jsonl: str
    n_tuples: int
    n_action: int
    n_no_action: int
    provenance: str


class BuildRequest(BaseModel):
    domain: str
    dataset_jsonl: str
    agents: list[AgentModel] | None = None  # None: use the domain's default team
    weights: WeightsModel = Field(default_factory=WeightsModel)
    tau: float = Field(0.05, ge=0)
    path_cap: int = Field(10_000, gt=0)
    tolerance: float = Field(0.0, ge=0)


class BuildReport(BaseModel):
    nodes: int
    lsr_edges: int
    plsr_edges: int
    clsr_edges: int
    dropped_edges: int
    contrastive_violations: int
    weakly_connected_components: int
    path_cap_hits: int
    n_action: int
    n_no_action: int
    plsr_cache_hit: bool = False


class BuildResponse(BaseModel):
    roadmap_id: str
    report: BuildReport
    roadmap: dict


class RebuildRequest(BaseModel):
    agents: list[AgentModel]
    weights: WeightsModel = Field(default_factory=WeightsModel)


class PlanRequest(BaseModel):
    start: ObservationModel
    goal: ObservationModel


class PlanResponse(BaseModel):
    found: bool
    plan: dict | None = None
    suggestion: dict | None = None
    suggestion_text: str | None = None


class SuggestResponse(BaseModel):
    report: dict
    text: str


class BenchRequest(BaseModel):
    n_pairs: int = Field(ge=0)
    seed: int = 0
    agent_sets: list[list[AgentModel]] | None = None  # None: domain default team only
    set_names: list[str] | None = None


class BenchSetSummary(BaseModel):
    name: str
    n_pairs: int
    paths_found: int
    no_path: int
    mean_length: float | None
    max_length: int | None
    mean_cost: float | None
    mean_workload: dict[str, float]


class BenchResponse(BaseModel):
    csv: str
    summary_csv: str
    summary: list[BenchSetSummary]
