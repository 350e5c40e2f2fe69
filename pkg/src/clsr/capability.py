"""Capability layer: agent-action costs, optimal assignment, and edge costs.

An agent-action cost blends reachability discomfort and workload; it is
infinite exactly when the agent lacks a required skill or cannot reach a
relevant pose. Per edge, actions are assigned to agents by an exact solve of
the assignment program (every action covered once, every agent used at most
once, minimum total cost). Problem sizes are bounded by the team size, so
exhaustive enumeration with pruning is exact and fast; an independent
Hungarian implementation is provided for cross-checking.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace

from .model import ActionSpec, AgentSpec, CostWeights, ReachabilityFn, is_capable, reachability
from .roadmap import CapabilityEdge, Roadmap

log = logging.getLogger(__name__)

INFEASIBLE = math.inf


def compute_cost(agent: AgentSpec, action: ActionSpec, weights: CostWeights = CostWeights(),
                 reach_fn: ReachabilityFn = reachability) -> float:
    """Cost for one agent to perform one action; infinity when not capable.

    The reachability term averages (1 - r) over the action's relevant poses
    and is taken as 0 for pose-free actions, whose capability needs no reach.
    """
    if not is_capable(agent, action, reach_fn):
        return INFEASIBLE
    if action.poses:
        reach_term = sum(1.0 - reach_fn(agent, pose) for pose in action.poses) / len(action.poses)
    else:
        reach_term = 0.0
    return weights.alpha * reach_term + weights.beta * agent.workload_for(action)


@dataclass(frozen=True)
class CostMatrix:
    """Rows are agents (sorted by id), columns the actions of one edge."""

    agents: tuple[str, ...]
    entries: tuple[tuple[float, ...], ...]


def cost_matrix(agents: list[AgentSpec], actions: tuple[ActionSpec, ...] | list[ActionSpec],
                weights: CostWeights = CostWeights(),
                reach_fn: ReachabilityFn = reachability) -> CostMatrix:
    ordered = sorted(agents, key=lambda a: a.id)
    entries = tuple(
        tuple(compute_cost(agent, action, weights, reach_fn) for action in actions)
        for agent in ordered
    )
    return CostMatrix(agents=tuple(a.id for a in ordered), entries=entries)


@dataclass(frozen=True)
class AssignmentSolution:
    """Optimal assignment couples (agent id, action index) and their total cost."""

    couples: tuple[tuple[str, int], ...]
    total_cost: float


def solve_assignment(matrix: CostMatrix) -> AssignmentSolution | None:
    """Exact minimum-cost assignment of every action to a distinct agent.

    Returns None when infeasible (more actions than agents, or no injective
    map with finite total cost). Ties resolve to the lexicographically
    smallest agent row vector in action order, which is deterministic because
    matrix rows are sorted by agent id.
    """
    n_agents = len(matrix.agents)
    n_actions = len(matrix.entries[0]) if matrix.entries else 0
    if n_actions == 0 or n_actions > n_agents:
        return None

    best_cost = INFEASIBLE
    best: list[int] | None = None
    chosen: list[int] = []
    used = [False] * n_agents

    def search(action: int, partial: float):
        nonlocal best_cost, best
        if partial >= best_cost:
            return
        if action == n_actions:
            best_cost = partial
            best = list(chosen)
            return
        for row in range(n_agents):
            if used[row]:
                continue
            cost = matrix.entries[row][action]
            if math.isinf(cost):
                continue
            used[row] = True
            chosen.append(row)
            search(action + 1, partial + cost)
            chosen.pop()
            used[row] = False

    search(0, 0.0)
    if best is None:
        return None
    couples = tuple((matrix.agents[row], j) for j, row in enumerate(best))
    return AssignmentSolution(couples=couples, total_cost=best_cost)


def hungarian_assignment(matrix: CostMatrix) -> AssignmentSolution | None:
    """Hungarian method (potentials form) with big-M handling of infinities.

    Independent of the enumeration path; used to cross-check optimal totals.
    """
    n_agents = len(matrix.agents)
    n_actions = len(matrix.entries[0]) if matrix.entries else 0
    if n_actions == 0 or n_actions > n_agents:
        return None
    finite = [c for row in matrix.entries for c in row if not math.isinf(c)]
    big = sum(finite) + 1.0
    # rows = actions (all must be assigned), columns = agents
    cost = [[big if math.isinf(matrix.entries[row][j]) else matrix.entries[row][j]
             for row in range(n_agents)] for j in range(n_actions)]

    u = [0.0] * (n_actions + 1)
    v = [0.0] * (n_agents + 1)
    match_col = [0] * (n_agents + 1)  # column -> row (1-based, 0 = free)
    way = [0] * (n_agents + 1)
    for i in range(1, n_actions + 1):
        match_col[0] = i
        j0 = 0
        minv = [math.inf] * (n_agents + 1)
        used = [False] * (n_agents + 1)
        while True:
            used[j0] = True
            i0, delta, j1 = match_col[j0], math.inf, 0
            for j in range(1, n_agents + 1):
                if used[j]:
                    continue
                cur = cost[i0 - 1][j - 1] - u[i0] - v[j]
                if cur < minv[j]:
                    minv[j] = cur
                    way[j] = j0
                if minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            for j in range(n_agents + 1):
                if used[j]:
                    u[match_col[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if match_col[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            match_col[j0] = match_col[j1]
            j0 = j1

    assignment = {}  # action index -> agent row
    for j in range(1, n_agents + 1):
        if match_col[j]:
            assignment[match_col[j] - 1] = j - 1
    total = 0.0
    for action_idx, row in assignment.items():
        original = matrix.entries[row][action_idx]
        if math.isinf(original):
            return None
        total += original
    couples = tuple(sorted(((matrix.agents[row], j) for j, row in assignment.items()),
                           key=lambda c: c[1]))
    return AssignmentSolution(couples=couples, total_cost=total)


def edge_cost(solution: AssignmentSolution, n_actions: int, weights: CostWeights = CostWeights()) -> float:
    """Edge cost: assignment total scaled by gamma plus mu / |actions|, so
    wider parallel steps cost less per step."""
    return weights.gamma * solution.total_cost + weights.mu / n_actions


def build_clsr(roadmap: Roadmap, agents: list[AgentSpec], weights: CostWeights = CostWeights(),
               reach_fn: ReachabilityFn = reachability) -> Roadmap:
    """Add the capability layer: keep every parallel-layer edge whose actions
    the team can execute concurrently, with optimal couples and edge cost.

    Nodes and the other layers are shared unchanged, so a team change only
    requires re-running this builder.
    """
    if not agents:
        log.warning("empty agent set: capability layer will be empty")
    edges: list[CapabilityEdge] = []
    dropped = 0
    for edge_id, src, dst, actions in roadmap.parallel_layer():
        matrix = cost_matrix(agents, actions, weights, reach_fn) if agents else None
        solution = solve_assignment(matrix) if matrix else None
        if solution is None:
            dropped += 1
            continue
        edges.append(CapabilityEdge(
            src=src, dst=dst, actions=tuple(actions), couples=solution.couples,
            cost=edge_cost(solution, len(actions), weights), source=edge_id,
        ))
    meta = dict(roadmap.meta)
    meta["agents"] = [a.to_json() for a in sorted(agents, key=lambda a: a.id)]
    meta["weights"] = weights.to_json()
    meta["dropped_edges"] = dropped
    return replace(roadmap, clsr_edges=edges, meta=meta)
