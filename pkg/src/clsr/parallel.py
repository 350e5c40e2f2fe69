"""Inference of parallel-executable action sets from the base roadmap layer.

For every ordered node pair whose shortest base-layer path has length >= 2,
every shortest path is examined: when the path's action multiset can be
injectively matched (under action equivalence) into the actions available at
the start node, all of those actions can be launched together and a
multi-action edge is added. The builder is agent-agnostic; feasibility for a
concrete team is decided later by the capability layer.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import replace

from .model import ActionSpec
from .roadmap import LsrEdge, ParallelEdge, Roadmap, action_equivalence

log = logging.getLogger(__name__)

DEFAULT_PATH_CAP = 10_000


def actions_at_node(roadmap: Roadmap, node: int) -> list[ActionSpec]:
    """Multiset of actions on base-layer edges leaving ``node``."""
    return [e.action for e in roadmap.lsr_out(node)]


def parallel_intersection(path_actions: list[ActionSpec], available: list[ActionSpec],
                          tau: float) -> list[ActionSpec]:
    """Largest sub-multiset of ``path_actions`` injectively matchable into
    ``available`` under action equivalence (maximum bipartite matching, so
    duplicate equivalent actions are counted correctly)."""
    match_of: dict[int, int] = {}  # available index -> path index

    def augment(i: int, seen: set[int]) -> bool:
        for j, candidate in enumerate(available):
            if j in seen or not action_equivalence(path_actions[i], candidate, tau):
                continue
            seen.add(j)
            if j not in match_of or augment(match_of[j], seen):
                match_of[j] = i
                return True
        return False

    matched: list[int] = []
    for i in range(len(path_actions)):
        if augment(i, set()):
            matched.append(i)
    matched_set = {match_of[j] for j in match_of}
    return [path_actions[i] for i in sorted(matched_set)]


def _bfs_dist(adjacency: dict[int, list[int]], start: int) -> dict[int, int]:
    dist = {start: 0}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in adjacency.get(u, []):
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def _shortest_edge_paths(out_edges: dict[int, list[LsrEdge]], dist_fwd: dict[int, int],
                         dist_back: dict[int, int], src: int, dst: int,
                         cap: int) -> tuple[list[list[LsrEdge]], bool]:
    """All shortest paths src -> dst as edge sequences, capped at ``cap``.

    An edge (u, v) can lie on a shortest path iff fwd(u) + 1 + back(v) equals
    the total distance; DFS restricted to such edges yields exactly the
    shortest paths. Parallel edges count as distinct paths.
    """
    total = dist_fwd[dst]
    paths: list[list[LsrEdge]] = []
    capped = False
    stack: list[LsrEdge] = []

    def walk(u: int) -> bool:
        if len(paths) >= cap:
            return False
        if u == dst and len(stack) == total:
            paths.append(list(stack))
            return True
        for e in out_edges.get(u, []):
            if dist_fwd[u] + 1 + dist_back.get(e.dst, -10**9) == total:
                stack.append(e)
                walk(e.dst)
                stack.pop()
                if len(paths) >= cap:
                    return False
        return True

    walk(src)
    if len(paths) >= cap:
        capped = True
    return paths, capped


def _equivalent_multisets(a: tuple[ActionSpec, ...], b: tuple[ActionSpec, ...], tau: float) -> bool:
    if len(a) != len(b):
        return False
    return len(parallel_intersection(list(a), list(b), tau)) == len(a)


def build_plsr(roadmap: Roadmap, tau: float | None = None,
               path_cap: int = DEFAULT_PATH_CAP) -> Roadmap:
    """Add the parallel layer to a roadmap with a built base layer.

    Single pass over the original base layer: inferred edges never feed back
    into path queries. Node pairs whose shortest path is longer than the
    number of actions available at the start node are skipped outright, since
    the injective-match size test can never succeed for them.
    """
    if tau is None:
        tau = roadmap.meta.get("tau", 0.05)
    out_edges: dict[int, list[LsrEdge]] = {}
    adjacency: dict[int, list[int]] = {}
    reverse: dict[int, list[int]] = {}
    for e in roadmap.lsr_edges:
        out_edges.setdefault(e.src, []).append(e)
        adjacency.setdefault(e.src, []).append(e.dst)
        reverse.setdefault(e.dst, []).append(e.src)

    parallel_edges: list[ParallelEdge] = []
    cap_hits = 0
    for n in roadmap.nodes:
        dist_fwd = _bfs_dist(adjacency, n)
        available = [e.action for e in out_edges.get(n, [])]
        for t in roadmap.nodes:
            if t == n:
                continue
            dist = dist_fwd.get(t)
            if dist is None or dist < 2 or dist > len(available):
                continue
            dist_back = _bfs_dist(reverse, t)
            paths, capped = _shortest_edge_paths(out_edges, dist_fwd, dist_back, n, t, path_cap)
            if capped:
                cap_hits += 1
                log.warning("path cap %d reached for node pair (%d, %d); "
                            "considering only the enumerated paths", path_cap, n, t)
            for path in paths:
                path_actions = [e.action for e in path]
                matched = parallel_intersection(path_actions, available, tau)
                if len(matched) != len(path_actions):
                    continue
                node_path = (n,) + tuple(e.dst for e in path)
                candidate = ParallelEdge(src=n, dst=t, actions=tuple(matched),
                                         provenance=(node_path,))
                for k, existing in enumerate(parallel_edges):
                    if (existing.src, existing.dst) == (n, t) and \
                            _equivalent_multisets(existing.actions, candidate.actions, tau):
                        merged = existing.provenance + (node_path,)
                        if node_path not in existing.provenance:
                            parallel_edges[k] = replace(existing, provenance=merged)
                        break
                else:
                    parallel_edges.append(candidate)

    meta = dict(roadmap.meta)
    meta["path_cap_hits"] = cap_hits
    return replace(roadmap, plsr_edges=parallel_edges, meta=meta)
