"""Missing-capability diagnosis when no capability-layer path exists.

The strategy falls back to the base layer, where agent capabilities play no
role: if even that layer has no path the roadmap itself is disconnected;
otherwise every action along a shortest base-layer path is scored against the
team, and actions no agent can perform are reported with per-agent missing
skills, unreachable poses, and the depictions of the edge endpoints.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from .abstraction import Depiction, render
from .capability import compute_cost
from .errors import PathExistsError, UnknownStateError
from .model import ActionSpec, AgentSpec, CostWeights, Observation, Pose, ReachabilityFn, reachability
from .planner import _dijkstra, locate
from .roadmap import LsrEdge, Roadmap

MISSING_CAPABILITY = "missing-capability"
ROADMAP_DISCONNECTED = "roadmap-disconnected"


@dataclass(frozen=True)
class AgentDiagnosis:
    missing_skills: tuple[str, ...]
    unreachable_poses: tuple[Pose, ...]

    def to_json(self) -> dict:
        return {
            "missing_skills": list(self.missing_skills),
            "unreachable_poses": [p.to_json() for p in self.unreachable_poses],
        }


@dataclass(frozen=True)
class BlockingAction:
    action: ActionSpec
    src: int
    dst: int
    from_depiction: Depiction
    to_depiction: Depiction
    per_agent: dict[str, AgentDiagnosis]

    def to_json(self) -> dict:
        return {
            "action": self.action.to_json(),
            "from": self.src,
            "to": self.dst,
            "from_depiction": self.from_depiction.to_json(),
            "to_depiction": self.to_depiction.to_json(),
            "agents": {aid: d.to_json() for aid, d in sorted(self.per_agent.items())},
        }


@dataclass(frozen=True)
class CapabilityReport:
    outcome: str
    lsr_path: tuple[int, ...] | None
    blocking_actions: tuple[BlockingAction, ...]
    alternatives_exist: bool = False

    def to_json(self) -> dict:
        return {
            "outcome": self.outcome,
            "lsr_path": list(self.lsr_path) if self.lsr_path is not None else None,
            "blocking_actions": [b.to_json() for b in self.blocking_actions],
            "alternatives_exist": self.alternatives_exist,
        }

    def summary(self) -> str:
        if self.outcome == ROADMAP_DISCONNECTED:
            return ("No path exists even ignoring agent capabilities: "
                    "the goal state is not reachable on the roadmap.")
        lines = ["The team cannot reach the goal; capabilities are missing for "
                 f"{len(self.blocking_actions)} action(s) on the capability-free path:"]
        for b in self.blocking_actions:
            lines.append(f"- action '{b.action.label}' (nodes {b.src} -> {b.dst}):")
            for aid, diag in sorted(b.per_agent.items()):
                bits = []
                if diag.missing_skills:
                    bits.append("missing skills: " + ", ".join(diag.missing_skills))
                if diag.unreachable_poses:
                    poses = ", ".join(f"{p.role}@{p.position}" for p in diag.unreachable_poses)
                    bits.append("unreachable poses: " + poses)
                lines.append(f"    {aid}: " + ("; ".join(bits) if bits else "capable in isolation"))
        if self.alternatives_exist:
            lines.append("Note: other equally short paths exist; only one was analyzed.")
        return "\n".join(lines)


def _lsr_shortest_edge_path(roadmap: Roadmap, start: int, goal: int) -> tuple[list[LsrEdge], bool] | None:
    """Deterministic unit-weight shortest path on the base layer.

    Returns the edge sequence and whether alternative shortest paths exist;
    None when the goal is unreachable.
    """
    out: dict[int, list[tuple[int, LsrEdge]]] = {}
    reverse: dict[int, list[int]] = {}
    for idx, e in enumerate(roadmap.lsr_edges):
        out.setdefault(e.src, []).append((idx, e))
        reverse.setdefault(e.dst, []).append(e.src)
    dist_back = {goal: 0}
    queue = deque([goal])
    while queue:
        u = queue.popleft()
        for v in reverse.get(u, []):
            if v not in dist_back:
                dist_back[v] = dist_back[u] + 1
                queue.append(v)
    if start not in dist_back:
        return None

    # greedy forward walk picking the smallest qualifying (next node, edge idx)
    path: list[LsrEdge] = []
    node = start
    while node != goal:
        options = [(e.dst, idx) for idx, e in out.get(node, [])
                   if dist_back.get(e.dst, math.inf) == dist_back[node] - 1]
        nxt, idx = min(options)
        path.append(roadmap.lsr_edges[idx])
        node = nxt

    # count shortest edge paths over the shortest-path DAG to flag alternatives
    total = dist_back[start]
    n_paths = {start: 1}
    for u in sorted(dist_back, key=lambda n: -dist_back[n]):
        if u not in n_paths:
            continue
        for _idx, e in out.get(u, []):
            if dist_back.get(e.dst, math.inf) == dist_back[u] - 1:
                n_paths[e.dst] = min(n_paths.get(e.dst, 0) + n_paths[u], 1_000_000)
    return path, n_paths.get(goal, 1) > 1


def suggest(start: Observation, goal: Observation, roadmap: Roadmap, agents: list[AgentSpec],
            abstraction, domain, weights: CostWeights = CostWeights(),
            reach_fn: ReachabilityFn = reachability) -> CapabilityReport:
    """Diagnose why no capability-layer plan exists between two observations.

    Precondition: planning already failed; if a capability-layer path exists
    this raises PathExistsError. Observations that cannot be located on the
    shared node set yield the roadmap-disconnected outcome.
    """
    try:
        start_node = locate(start, roadmap, abstraction)
        goal_node = locate(goal, roadmap, abstraction)
    except UnknownStateError:
        return CapabilityReport(outcome=ROADMAP_DISCONNECTED, lsr_path=None, blocking_actions=())

    if _dijkstra(roadmap, start_node, goal_node) is not None:
        raise PathExistsError(
            f"a capability-layer path exists between nodes {start_node} and {goal_node}")

    found = _lsr_shortest_edge_path(roadmap, start_node, goal_node)
    if found is None:
        return CapabilityReport(outcome=ROADMAP_DISCONNECTED, lsr_path=None, blocking_actions=())
    edge_path, alternatives = found

    blocking: list[BlockingAction] = []
    for edge in edge_path:
        costs = {a.id: compute_cost(a, edge.action, weights, reach_fn) for a in agents}
        # vacuously blocking for an empty team: nobody can take the action
        if not all(math.isinf(c) for c in costs.values()):
            continue
        per_agent = {}
        for agent in agents:
            missing = tuple(sorted(edge.action.skills - agent.skills))
            unreachable = tuple(p for p in edge.action.poses if reach_fn(agent, p) == 0.0)
            per_agent[agent.id] = AgentDiagnosis(missing_skills=missing,
                                                 unreachable_poses=unreachable)
        blocking.append(BlockingAction(
            action=edge.action, src=edge.src, dst=edge.dst,
            from_depiction=render(edge.src, roadmap.representatives, domain),
            to_depiction=render(edge.dst, roadmap.representatives, domain),
            per_agent=per_agent,
        ))

    node_path = (start_node,) + tuple(e.dst for e in edge_path)
    return CapabilityReport(outcome=MISSING_CAPABILITY, lsr_path=node_path,
                            blocking_actions=tuple(blocking), alternatives_exist=alternatives)
