"""Online planning: locate observations on the roadmap, find the cheapest
capability-layer path, and assemble the parallel visual action plan."""

from __future__ import annotations

import math
from dataclasses import dataclass
from heapq import heappop, heappush

from .abstraction import Depiction, render
from .errors import UnknownStateError
from .model import ActionSpec, Observation, load_agents
from .roadmap import CapabilityEdge, Roadmap


def locate(obs: Observation, roadmap: Roadmap, abstraction) -> int:
    """Map an observation to its roadmap node.

    Exact mode requires a key match and raises UnknownStateError otherwise;
    vector mode falls back to the nearest representative by feature distance.
    """
    if roadmap.exact:
        key = abstraction.encode(obs)
        node = roadmap.key_to_node.get(key)
        if node is None:
            raise UnknownStateError(f"no roadmap node for state key {key}")
        return node
    vec = abstraction.features(obs)
    best = min(sorted(roadmap.features), key=lambda nid: math.dist(vec, roadmap.features[nid]))
    return best


@dataclass(frozen=True)
class ParallelVAP:
    """A parallel visual action plan: N depictions and N-1 assignment steps."""

    node_path: tuple[int, ...]
    visual_plan: tuple[Depiction, ...]
    steps: tuple[CapabilityEdge, ...]
    total_cost: float
    per_agent_workload: dict[str, float]

    @property
    def n_observations(self) -> int:
        return len(self.visual_plan)

    @property
    def action_plan(self) -> tuple[tuple[tuple[str, ActionSpec], ...], ...]:
        """Per step, the set of assignment couples (agent id, action)."""
        return tuple(
            tuple((agent, edge.actions[j]) for agent, j in edge.couples) for edge in self.steps
        )

    def to_json(self) -> dict:
        return {
            "nodes": list(self.node_path),
            "n_observations": self.n_observations,
            "total_cost": self.total_cost,
            "per_agent_workload": dict(sorted(self.per_agent_workload.items())),
            "steps": [
                {
                    "from": edge.src,
                    "to": edge.dst,
                    "cost": edge.cost,
                    "couples": [
                        {"agent": agent, "action": edge.actions[j].to_json()}
                        for agent, j in edge.couples
                    ],
                }
                for edge in self.steps
            ],
            "visual_plan": [d.to_json() for d in self.visual_plan],
        }


# Path costs accumulate in integer quanta so that genuinely equal-cost paths
# compare equal regardless of float summation order and the documented
# tie-break (fewer hops, then lexicographic node path) can engage.
_COST_QUANTUM = 1e-9


def _dijkstra(roadmap: Roadmap, start: int, goal: int) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Minimum-cost path over capability edges.

    Ties break on fewer hops, then lexicographic node path, then edge index,
    so results are reproducible across runs and platforms.
    """
    out: dict[int, list[tuple[int, CapabilityEdge]]] = {}
    for idx, e in enumerate(roadmap.clsr_edges):
        out.setdefault(e.src, []).append((idx, e))
    settled: set[int] = set()
    heap: list[tuple[int, int, tuple[int, ...], tuple[int, ...]]] = [(0, 0, (start,), ())]
    while heap:
        cost, hops, path, edge_idxs = heappop(heap)
        node = path[-1]
        if node in settled:
            continue
        settled.add(node)
        if node == goal:
            return path, edge_idxs
        for idx, e in out.get(node, []):
            if e.dst not in settled:
                step = round(e.cost / _COST_QUANTUM)
                heappush(heap, (cost + step, hops + 1, path + (e.dst,), edge_idxs + (idx,)))
    return None


def plan(start: Observation, goal: Observation, roadmap: Roadmap, abstraction,
         domain) -> ParallelVAP | None:
    """Plan from a start to a goal observation; None when no path exists.

    The returned plan renders every node on the path and collects each edge's
    assignment couples; workloads are summed per agent over assigned actions.
    """
    start_node = locate(start, roadmap, abstraction)
    goal_node = locate(goal, roadmap, abstraction)
    found = _dijkstra(roadmap, start_node, goal_node)
    if found is None:
        return None
    node_path, edge_idxs = found
    edges = tuple(roadmap.clsr_edges[i] for i in edge_idxs)

    agents = {a.id: a for a in load_agents(roadmap.meta.get("agents", []))}
    workload: dict[str, float] = {}
    for edge in edges:
        for agent_id, j in edge.couples:
            agent = agents.get(agent_id)
            w = agent.workload_for(edge.actions[j]) if agent else 0.0
            workload[agent_id] = workload.get(agent_id, 0.0) + w

    visual = tuple(render(nid, roadmap.representatives, domain) for nid in node_path)
    return ParallelVAP(
        node_path=node_path,
        visual_plan=visual,
        steps=edges,
        total_cost=sum(e.cost for e in edges),
        per_agent_workload=workload,
    )
