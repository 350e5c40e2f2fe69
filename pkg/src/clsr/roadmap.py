"""Layered roadmap: shared nodes with base, parallel, and capability edge layers.

The base layer carries one action per directed edge, aggregated from all
dataset tuples whose action is equivalent; distinct actions between the same
node pair stay distinct edges (directed multigraph). Later builders add the
parallel layer (multi-action edges) and the capability layer (assignment
couples with costs) without touching the node set.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from statistics import fmean

from .abstraction import ClusterMap
from .dataset import Dataset
from .errors import UnknownNodeError
from .model import ActionSpec, Observation, Pose, euclidean

DEFAULT_TAU = 0.05


def action_equivalence(u: ActionSpec, v: ActionSpec, tau: float = DEFAULT_TAU,
                       require_label: bool = False) -> bool:
    """Whether two actions can be treated as the same action.

    Required skill sets must be equal and role-matched poses must pairwise lie
    within ``tau`` meters; pose lists must agree in length and role sequence.
    Labels are ignored unless ``require_label`` (strict mode for domains with
    skill/pose-ambiguous actions).
    """
    if tau < 0:
        raise ValueError("tau must be nonnegative")
    if require_label and u.label != v.label:
        return False
    if u.skills != v.skills:
        return False
    if u.roles != v.roles:
        return False
    return all(euclidean(a.position, b.position) <= tau for a, b in zip(u.poses, v.poses))


@dataclass(frozen=True)
class LsrEdge:
    src: int
    dst: int
    action: ActionSpec
    support: int = 1
    max_pose_deviation: float = 0.0

    def to_json(self) -> dict:
        return {"from": self.src, "to": self.dst, "action": self.action.to_json(),
                "support": self.support, "max_pose_deviation": self.max_pose_deviation}

    @classmethod
    def from_json(cls, data: dict) -> LsrEdge:
        return cls(src=data["from"], dst=data["to"], action=ActionSpec.from_json(data["action"]),
                   support=data.get("support", 1),
                   max_pose_deviation=data.get("max_pose_deviation", 0.0))


@dataclass(frozen=True)
class ParallelEdge:
    src: int
    dst: int
    actions: tuple[ActionSpec, ...]
    provenance: tuple[tuple[int, ...], ...] = ()

    def to_json(self) -> dict:
        return {"from": self.src, "to": self.dst,
                "actions": [a.to_json() for a in self.actions],
                "provenance": [list(p) for p in self.provenance]}

    @classmethod
    def from_json(cls, data: dict) -> ParallelEdge:
        return cls(src=data["from"], dst=data["to"],
                   actions=tuple(ActionSpec.from_json(a) for a in data["actions"]),
                   provenance=tuple(tuple(p) for p in data.get("provenance", [])))


@dataclass(frozen=True)
class CapabilityEdge:
    src: int
    dst: int
    actions: tuple[ActionSpec, ...]
    couples: tuple[tuple[str, int], ...]  # (agent id, index into actions)
    cost: float
    source: str = ""  # id of the originating edge, e.g. "lsr:4" or "plsr:0"

    def to_json(self) -> dict:
        return {"from": self.src, "to": self.dst,
                "actions": [a.to_json() for a in self.actions],
                "couples": [{"agent": a, "action_index": j} for a, j in self.couples],
                "cost": self.cost, "source": self.source}

    @classmethod
    def from_json(cls, data: dict) -> CapabilityEdge:
        return cls(src=data["from"], dst=data["to"],
                   actions=tuple(ActionSpec.from_json(a) for a in data["actions"]),
                   couples=tuple((c["agent"], c["action_index"]) for c in data["couples"]),
                   cost=data["cost"], source=data.get("source", ""))


@dataclass
class Roadmap:
    key_to_node: dict[str, int]
    representatives: dict[int, Observation]
    lsr_edges: list[LsrEdge] = field(default_factory=list)
    plsr_edges: list[ParallelEdge] = field(default_factory=list)
    clsr_edges: list[CapabilityEdge] = field(default_factory=list)
    exact: bool = True
    features: dict[int, tuple[float, ...]] = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    @property
    def nodes(self) -> list[int]:
        return sorted(self.representatives)

    def lsr_out(self, node: int) -> list[LsrEdge]:
        if node not in self.representatives:
            raise UnknownNodeError(f"node {node} not in roadmap")
        return [e for e in self.lsr_edges if e.src == node]

    def parallel_layer(self) -> list[tuple[str, int, int, tuple[ActionSpec, ...]]]:
        """The effective parallel layer: every base edge as a singleton action
        set plus every inferred multi-action edge, each with its edge id."""
        layer = [(f"lsr:{i}", e.src, e.dst, (e.action,)) for i, e in enumerate(self.lsr_edges)]
        layer += [(f"plsr:{i}", e.src, e.dst, e.actions) for i, e in enumerate(self.plsr_edges)]
        return layer

    def to_json(self) -> dict:
        doc = {
            "version": 1,
            "meta": self.meta,
            "exact": self.exact,
            "nodes": [
                {"id": nid, "key": key, "representative": self.representatives[nid].to_json()}
                for key, nid in sorted(self.key_to_node.items(), key=lambda kv: kv[1])
            ],
            "lsr_edges": [e.to_json() for e in self.lsr_edges],
            "plsr_edges": [e.to_json() for e in self.plsr_edges],
            "clsr_edges": [e.to_json() for e in self.clsr_edges],
        }
        if self.features:
            doc["features"] = {str(nid): list(vec) for nid, vec in self.features.items()}
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> Roadmap:
        key_to_node = {n["key"]: n["id"] for n in doc["nodes"]}
        representatives = {n["id"]: Observation.from_json(n["representative"]) for n in doc["nodes"]}
        return cls(
            key_to_node=key_to_node,
            representatives=representatives,
            lsr_edges=[LsrEdge.from_json(e) for e in doc.get("lsr_edges", [])],
            plsr_edges=[ParallelEdge.from_json(e) for e in doc.get("plsr_edges", [])],
            clsr_edges=[CapabilityEdge.from_json(e) for e in doc.get("clsr_edges", [])],
            exact=doc.get("exact", True),
            features={int(k): tuple(v) for k, v in doc.get("features", {}).items()},
            meta=doc.get("meta", {}),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def loads(cls, text: str) -> Roadmap:
        return cls.from_json(json.loads(text))


class _EdgeAccumulator:
    """Aggregates equivalent supporting actions into one edge with centroid poses."""

    def __init__(self, action: ActionSpec):
        self.template = action
        self.supports: list[ActionSpec] = [action]

    def centroid_action(self) -> ActionSpec:
        poses = []
        for k, pose in enumerate(self.template.poses):
            centroid = tuple(
                fmean(s.poses[k].position[axis] for s in self.supports) for axis in range(3)
            )
            poses.append(Pose(role=pose.role, position=centroid))
        return ActionSpec(label=self.template.label, skills=self.template.skills,
                          poses=tuple(poses), workload_class=self.template.workload_class)

    def max_deviation(self) -> float:
        centroid = self.centroid_action()
        dev = 0.0
        for s in self.supports:
            for k, pose in enumerate(centroid.poses):
                dev = max(dev, euclidean(s.poses[k].position, pose.position))
        return dev


def build_lsr(cluster_map: ClusterMap, dataset: Dataset, tau: float = DEFAULT_TAU,
              strict_labels: bool = False) -> Roadmap:
    """Build the base roadmap layer from the cluster map and action tuples.

    Every action tuple is covered by exactly one edge; tuples with the same
    endpoints whose actions are equivalent within ``tau`` merge into one edge
    with centroid poses, while non-equivalent actions spawn parallel edges.
    """
    buckets: dict[tuple[int, int], list[_EdgeAccumulator]] = {}
    for idx, t in enumerate(dataset.tuples):
        if t.b == 0:
            continue
        src, dst = cluster_map.assignments[idx]
        bucket = buckets.setdefault((src, dst), [])
        for acc in bucket:
            if action_equivalence(acc.centroid_action(), t.action, tau, require_label=strict_labels):
                acc.supports.append(t.action)
                break
        else:
            bucket.append(_EdgeAccumulator(t.action))

    edges = []
    for (src, dst) in sorted(buckets):
        for acc in buckets[(src, dst)]:
            edges.append(LsrEdge(src=src, dst=dst, action=acc.centroid_action(),
                                 support=len(acc.supports),
                                 max_pose_deviation=acc.max_deviation()))
    return Roadmap(
        key_to_node=dict(cluster_map.clusters),
        representatives=dict(cluster_map.representatives),
        lsr_edges=edges,
        exact=cluster_map.exact,
        features=dict(cluster_map.features),
        meta={"tau": tau},
    )


def weakly_connected_components(roadmap: Roadmap) -> int:
    """Component count of the base layer viewed as an undirected graph."""
    parent = {n: n for n in roadmap.representatives}

    def find(n):
        while parent[n] != n:
            parent[n] = parent[parent[n]]
            n = parent[n]
        return n

    for e in roadmap.lsr_edges:
        ra, rb = find(e.src), find(e.dst)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    return len({find(n) for n in parent})


def to_dot(roadmap: Roadmap, layer: str) -> str:
    """GraphViz DOT export of one edge layer."""
    lines = [f'digraph "{layer}" {{', "  rankdir=LR;"]
    for nid in roadmap.nodes:
        lines.append(f'  n{nid} [label="{nid}"];')
    if layer == "lsr":
        for e in roadmap.lsr_edges:
            lines.append(f'  n{e.src} -> n{e.dst} [label="{e.action.label}"];')
    elif layer == "plsr":
        palette = {1: "black", 2: "#1f77b4", 3: "#d62728", 4: "#9467bd"}
        for e in roadmap.lsr_edges:
            lines.append(f'  n{e.src} -> n{e.dst} [label="{e.action.label}" color="black"];')
        for e in roadmap.plsr_edges:
            color = palette.get(len(e.actions), "#8c564b")
            label = "+".join(a.label for a in e.actions)
            lines.append(f'  n{e.src} -> n{e.dst} [label="{label}" color="{color}" penwidth=2];')
    elif layer == "clsr":
        for e in roadmap.clsr_edges:
            couples = ", ".join(f"{agent}:{e.actions[j].label}" for agent, j in e.couples)
            lines.append(f'  n{e.src} -> n{e.dst} [label="{e.cost:.3f} ({couples})"];')
    else:
        raise ValueError(f"unknown layer {layer!r}; expected lsr, plsr, or clsr")
    lines.append("}")
    return "\n".join(lines) + "\n"
