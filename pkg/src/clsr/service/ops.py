"""Service operations: the single implementation behind the HTTP routes and
the CLI subcommands. Inputs and outputs are the pydantic schema models;
artifact file handling stays with the callers."""

from __future__ import annotations

import csv
import hashlib
import io
import random
import statistics

from .. import dataset as dataset_io
from ..abstraction import ExactAbstraction, VectorAbstraction, cluster
from ..capability import build_clsr
from ..domains import DomainModel, get_domain
from ..model import AgentSpec, CostWeights, Observation, load_agents
from ..parallel import build_plsr
from ..planner import plan
from ..roadmap import Roadmap, build_lsr, to_dot, weakly_connected_components
from ..suggestion import suggest
from .schemas import (
    AgentModel,
    BenchRequest,
    BenchResponse,
    BenchSetSummary,
    BuildReport,
    BuildRequest,
    BuildResponse,
    GenerateRequest,
    GenerateResponse,
    PlanRequest,
    PlanResponse,
    RebuildRequest,
    SuggestResponse,
    WeightsModel,
)


def _agents_from_models(models: list[AgentModel]) -> list[AgentSpec]:
    return load_agents([m.model_dump() for m in models])


def _weights(model: WeightsModel) -> CostWeights:
    return CostWeights(alpha=model.alpha, beta=model.beta, gamma=model.gamma, mu=model.mu)


def _abstraction_for(domain: DomainModel, roadmap: Roadmap | None = None):
    if roadmap is not None and not roadmap.exact:
        return VectorAbstraction(lambda state: state, eps=roadmap.meta.get("eps", 1.0))
    return ExactAbstraction(domain.state_key)


def roadmap_id(roadmap: Roadmap) -> str:
    return hashlib.sha256(roadmap.dumps().encode()).hexdigest()[:12]


def generate_dataset(req: GenerateRequest) -> GenerateResponse:
    domain = get_domain(req.domain)
    ds = dataset_io.generate(domain, req.n_tuples, req.action_fraction, req.seed)
    return GenerateResponse(
        jsonl=dataset_io.dumps(ds),
        n_tuples=len(ds),
        n_action=ds.n_action,
        n_no_action=ds.n_no_action,
        provenance=ds.provenance,
    )


def build_roadmap(req: BuildRequest, cached: Roadmap | None = None) -> tuple[Roadmap, BuildResponse]:
    """Full offline build: cluster, base layer, parallel layer, capability layer.

    When ``cached`` is a roadmap built from the same dataset (by hash) with
    the same tau and path cap, its node set and base/parallel layers are
    reused and only the capability layer is recomputed for the new team.
    """
    domain = get_domain(req.domain)
    agents = _agents_from_models(req.agents) if req.agents is not None else domain.default_agents()
    weights = _weights(req.weights)
    dataset_hash = hashlib.sha256(req.dataset_jsonl.encode()).hexdigest()

    cache_hit = (
        cached is not None
        and cached.meta.get("dataset_hash") == dataset_hash
        and cached.meta.get("tau") == req.tau
        and cached.meta.get("path_cap") == req.path_cap
        and cached.meta.get("domain") == req.domain
    )
    if cache_hit:
        roadmap = cached
    else:
        ds = dataset_io.loads(req.dataset_jsonl, provenance="request")
        cmap = cluster(ds, _abstraction_for(domain), tolerance=req.tolerance)
        roadmap = build_lsr(cmap, ds, tau=req.tau)
        roadmap = build_plsr(roadmap, tau=req.tau, path_cap=req.path_cap)
        roadmap.meta.update({
            "domain": req.domain,
            "dataset_hash": dataset_hash,
            "path_cap": req.path_cap,
            "contrastive_violations": len(cmap.violations),
            "n_action": ds.n_action,
            "n_no_action": ds.n_no_action,
        })
    roadmap = build_clsr(roadmap, agents, weights)
    roadmap.meta["components"] = weakly_connected_components(roadmap)

    report = BuildReport(
        nodes=len(roadmap.representatives),
        lsr_edges=len(roadmap.lsr_edges),
        plsr_edges=len(roadmap.plsr_edges),
        clsr_edges=len(roadmap.clsr_edges),
        dropped_edges=roadmap.meta.get("dropped_edges", 0),
        contrastive_violations=roadmap.meta.get("contrastive_violations", 0),
        weakly_connected_components=roadmap.meta["components"],
        path_cap_hits=roadmap.meta.get("path_cap_hits", 0),
        n_action=roadmap.meta.get("n_action", 0),
        n_no_action=roadmap.meta.get("n_no_action", 0),
        plsr_cache_hit=cache_hit,
    )
    return roadmap, BuildResponse(roadmap_id=roadmap_id(roadmap), report=report,
                                  roadmap=roadmap.to_json())


def rebuild_capability_layer(roadmap: Roadmap, req: RebuildRequest) -> tuple[Roadmap, BuildResponse]:
    """Team change: recompute only the capability layer on an existing roadmap."""
    agents = _agents_from_models(req.agents)
    rebuilt = build_clsr(roadmap, agents, _weights(req.weights))
    report = BuildReport(
        nodes=len(rebuilt.representatives),
        lsr_edges=len(rebuilt.lsr_edges),
        plsr_edges=len(rebuilt.plsr_edges),
        clsr_edges=len(rebuilt.clsr_edges),
        dropped_edges=rebuilt.meta.get("dropped_edges", 0),
        contrastive_violations=rebuilt.meta.get("contrastive_violations", 0),
        weakly_connected_components=rebuilt.meta.get("components", weakly_connected_components(rebuilt)),
        path_cap_hits=rebuilt.meta.get("path_cap_hits", 0),
        n_action=rebuilt.meta.get("n_action", 0),
        n_no_action=rebuilt.meta.get("n_no_action", 0),
        plsr_cache_hit=True,
    )
    return rebuilt, BuildResponse(roadmap_id=roadmap_id(rebuilt), report=report,
                                  roadmap=rebuilt.to_json())


def plan_on_roadmap(roadmap: Roadmap, req: PlanRequest) -> PlanResponse:
    """Plan between two observations, falling back to capability suggestion."""
    domain = get_domain(roadmap.meta["domain"])
    abstraction = _abstraction_for(domain, roadmap)
    start = Observation(state=req.start.state, nuisance=req.start.nuisance)
    goal = Observation(state=req.goal.state, nuisance=req.goal.nuisance)
    vap = plan(start, goal, roadmap, abstraction, domain)
    if vap is not None:
        return PlanResponse(found=True, plan=vap.to_json())
    agents = load_agents(roadmap.meta.get("agents", []))
    weights = CostWeights.from_json(roadmap.meta.get("weights", {}))
    report = suggest(start, goal, roadmap, agents, abstraction, domain, weights)
    return PlanResponse(found=False, suggestion=report.to_json(), suggestion_text=report.summary())


def suggest_on_roadmap(roadmap: Roadmap, req: PlanRequest) -> SuggestResponse:
    domain = get_domain(roadmap.meta["domain"])
    abstraction = _abstraction_for(domain, roadmap)
    start = Observation(state=req.start.state, nuisance=req.start.nuisance)
    goal = Observation(state=req.goal.state, nuisance=req.goal.nuisance)
    agents = load_agents(roadmap.meta.get("agents", []))
    weights = CostWeights.from_json(roadmap.meta.get("weights", {}))
    report = suggest(start, goal, roadmap, agents, abstraction, domain, weights)
    return SuggestResponse(report=report.to_json(), text=report.summary())


def _sample_pairs(roadmap: Roadmap, n_pairs: int, seed: int) -> list[tuple[int, int]]:
    """Benchmark pairs: a start node plus a goal reached by a forward walk on
    the base layer, so goals are generally reachable capability-free."""
    rng = random.Random(seed)
    out: dict[int, list[int]] = {}
    for e in roadmap.lsr_edges:
        out.setdefault(e.src, []).append(e.dst)
    nodes = roadmap.nodes
    pairs = []
    for _ in range(n_pairs):
        start = rng.choice(nodes)
        goal = start
        for _ in range(3):  # retry walks that immediately dead-end on start
            node = start
            for _step in range(rng.randint(1, 12)):
                nxt = out.get(node)
                if not nxt:
                    break
                node = rng.choice(nxt)
            goal = node
            if goal != start:
                break
        pairs.append((start, goal))
    return pairs


def bench_on_roadmap(roadmap: Roadmap, req: BenchRequest) -> BenchResponse:
    """Plan over sampled start/goal pairs for each agent set; reports path
    lengths per pair and per-set summaries (no-path counts, workloads)."""
    domain = get_domain(roadmap.meta["domain"])
    abstraction = _abstraction_for(domain, roadmap)
    if req.agent_sets is None:
        agent_sets = [domain.default_agents()]
    else:
        agent_sets = [_agents_from_models(models) for models in req.agent_sets]
    names = req.set_names or ["+".join(a.id for a in agents) or "empty" for agents in agent_sets]
    if len(names) != len(agent_sets):
        raise ValueError("set_names must match agent_sets in length")
    weights = CostWeights.from_json(roadmap.meta.get("weights", {}))

    pairs = _sample_pairs(roadmap, req.n_pairs, req.seed)
    lengths: dict[str, list[int | None]] = {name: [] for name in names}
    costs: dict[str, list[float]] = {name: [] for name in names}
    workloads: dict[str, list[dict[str, float]]] = {name: [] for name in names}

    for name, agents in zip(names, agent_sets):
        variant = build_clsr(roadmap, agents, weights)
        for start_node, goal_node in pairs:
            start = variant.representatives[start_node]
            goal = variant.representatives[goal_node]
            vap = plan(start, goal, variant, abstraction, domain)
            if vap is None:
                lengths[name].append(None)
            else:
                lengths[name].append(vap.n_observations)
                costs[name].append(vap.total_cost)
                workloads[name].append(vap.per_agent_workload)

    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["pair", "start", "goal"] + [f"N_{name}" for name in names])
    for i, (s, g) in enumerate(pairs):
        row = [i, s, g] + ["" if lengths[name][i] is None else lengths[name][i] for name in names]
        writer.writerow(row)

    summaries = []
    all_agent_ids = sorted({a.id for agents in agent_sets for a in agents})
    sbuf = io.StringIO()
    swriter = csv.writer(sbuf)
    swriter.writerow(["agent_set", "n_pairs", "paths_found", "no_path", "mean_length",
                      "max_length", "mean_cost"] + [f"workload_{aid}" for aid in all_agent_ids])
    for name, agents in zip(names, agent_sets):
        found = [n for n in lengths[name] if n is not None]
        mean_w = {}
        for aid in (a.id for a in agents):
            per_plan = [w.get(aid, 0.0) for w in workloads[name]]
            mean_w[aid] = statistics.fmean(per_plan) if per_plan else 0.0
        summary = BenchSetSummary(
            name=name,
            n_pairs=len(pairs),
            paths_found=len(found),
            no_path=len(pairs) - len(found),
            mean_length=statistics.fmean(found) if found else None,
            max_length=max(found) if found else None,
            mean_cost=statistics.fmean(costs[name]) if costs[name] else None,
            mean_workload=mean_w,
        )
        summaries.append(summary)
        swriter.writerow([
            name, summary.n_pairs, summary.paths_found, summary.no_path,
            f"{summary.mean_length:.4f}" if summary.mean_length is not None else "",
            summary.max_length if summary.max_length is not None else "",
            f"{summary.mean_cost:.4f}" if summary.mean_cost is not None else "",
        ] + [f"{mean_w.get(aid, 0.0):.4f}" if aid in mean_w else "" for aid in all_agent_ids])

    return BenchResponse(csv=buf.getvalue(), summary_csv=sbuf.getvalue(), summary=summaries)


def export_dot(roadmap: Roadmap, layer: str) -> str:
    return to_dot(roadmap, layer)
