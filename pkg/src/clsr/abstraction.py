"""Mapping observations to cluster identities and back to depictions.

Two abstractions are bundled. The exact abstraction digests the task-relevant
state payload through the domain's canonical key and is the reference: on
generated data it produces zero contrastive violations. The epsilon-ball
abstraction mimics a learned latent clustering for domains that emit numeric
feature vectors instead of exact keys: observations within ``eps`` of each
other (single linkage) share a node.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping

from .dataset import Dataset
from .errors import ClsrError, ClusteringError, UnknownNodeError
from .model import Observation

log = logging.getLogger(__name__)

StateKey = str


class ExactAbstraction:
    """Encode observations via a domain-supplied canonical state key."""

    exact = True

    def __init__(self, state_key_fn: Callable[[Any], StateKey]):
        self._key_fn = state_key_fn

    def encode(self, obs: Observation) -> StateKey:
        try:
            return self._key_fn(obs.state)
        except (KeyError, TypeError, AttributeError) as exc:
            raise ClsrError(f"observation payload not understood by extractor: {exc}") from exc


class VectorAbstraction:
    """Feature-vector abstraction clustered by single-link epsilon balls."""

    exact = False

    def __init__(self, feature_fn: Callable[[Any], list[float]], eps: float = 1.0):
        if eps < 0:
            raise ValueError("eps must be nonnegative")
        self._feature_fn = feature_fn
        self.eps = eps

    def features(self, obs: Observation) -> tuple[float, ...]:
        try:
            return tuple(float(v) for v in self._feature_fn(obs.state))
        except (KeyError, TypeError, AttributeError) as exc:
            raise ClsrError(f"observation payload not understood by extractor: {exc}") from exc


@dataclass(frozen=True)
class Depiction:
    """A rendered cluster representative: structured data plus optional SVG."""

    data: dict
    svg: str | None = None

    def to_json(self) -> dict:
        return {"data": self.data, "svg": self.svg}


@dataclass
class ClusterMap:
    """Maps state keys to node ids and node ids to their representatives.

    ``violations`` records contrastive-property failures seen while
    clustering: no-action tuples whose observations landed in different nodes
    and action tuples whose observations collapsed into one.
    """

    clusters: dict[StateKey, int]
    representatives: dict[int, Observation]
    exact: bool = True
    features: dict[int, tuple[float, ...]] = field(default_factory=dict)
    violations: list[dict] = field(default_factory=list)
    # node pair (obs_a, obs_b) per dataset tuple, aligned with tuple order
    assignments: list[tuple[int, int]] = field(default_factory=list)

    @property
    def n_nodes(self) -> int:
        return len(self.representatives)


def _check_contrastive(dataset: Dataset, node_of: list[tuple[int, int]]) -> list[dict]:
    violations = []
    for idx, (t, (na, nb)) in enumerate(zip(dataset.tuples, node_of)):
        if t.b == 0 and na != nb:
            violations.append({"tuple": idx, "kind": "no-action-split", "nodes": [na, nb]})
        elif t.b == 1 and na == nb:
            violations.append({"tuple": idx, "kind": "action-merged", "nodes": [na, nb]})
    return violations


def cluster(dataset: Dataset, abstraction, tolerance: float = 0.0) -> ClusterMap:
    """Group every dataset observation into a node.

    Nodes are the distinct keys (exact mode) or single-link components
    (vector mode); representatives are the first observation seen per node.
    Raises ClusteringError when the fraction of contrastive violations
    exceeds ``tolerance`` (default 0: any violation fails the build).
    """
    if len(dataset) == 0:
        raise ClusteringError("cannot cluster an empty dataset")
    observations: list[Observation] = []
    for t in dataset.tuples:
        observations.append(t.obs_a)
        observations.append(t.obs_b)

    if abstraction.exact:
        keys = [abstraction.encode(obs) for obs in observations]
        node_ids = {key: nid for nid, key in enumerate(sorted(set(keys)))}
        representatives: dict[int, Observation] = {}
        for obs, key in zip(observations, keys):
            representatives.setdefault(node_ids[key], obs)
        obs_nodes = [node_ids[key] for key in keys]
        cmap = ClusterMap(clusters=node_ids, representatives=representatives)
    else:
        vectors = [abstraction.features(obs) for obs in observations]
        component = _single_link_components(vectors, abstraction.eps)
        # relabel components in first-seen order
        relabel: dict[int, int] = {}
        for comp in component:
            relabel.setdefault(comp, len(relabel))
        obs_nodes = [relabel[c] for c in component]
        representatives = {}
        features = {}
        for obs, vec, nid in zip(observations, vectors, obs_nodes):
            if nid not in representatives:
                representatives[nid] = obs
                features[nid] = vec
        clusters = {f"v{nid}": nid for nid in representatives}
        cmap = ClusterMap(clusters=clusters, representatives=representatives,
                          exact=False, features=features)

    pairs = [(obs_nodes[2 * i], obs_nodes[2 * i + 1]) for i in range(len(dataset))]
    cmap.assignments = pairs
    cmap.violations = _check_contrastive(dataset, pairs)
    fraction = len(cmap.violations) / len(dataset)
    if fraction > tolerance:
        raise ClusteringError(
            f"{len(cmap.violations)} contrastive violations over {len(dataset)} tuples "
            f"(fraction {fraction:.4f} > tolerance {tolerance})",
            violations=cmap.violations,
        )
    if cmap.violations:
        log.warning("tolerated %d contrastive violations", len(cmap.violations))
    return cmap


def _single_link_components(vectors: list[tuple[float, ...]], eps: float) -> list[int]:
    # Union-find over the <=eps proximity graph; quadratic, intended for the
    # modest datasets vector-mode domains produce.
    parent = list(range(len(vectors)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(vectors)):
        for j in range(i + 1, len(vectors)):
            if math.dist(vectors[i], vectors[j]) <= eps:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    return [find(i) for i in range(len(vectors))]


def render(node_id: int, representatives: Mapping[int, Observation], domain) -> Depiction:
    """Render a node's representative state through the domain."""
    if node_id not in representatives:
        raise UnknownNodeError(f"node {node_id} not in cluster map")
    state = representatives[node_id].state
    return Depiction(data=domain.describe(state), svg=domain.draw_svg(state))
