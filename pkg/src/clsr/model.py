"""Core domain types: poses, actions, agents, observations, tuples, cost weights.

All types are immutable after construction and safe to share across threads.
Each type round-trips through ``to_json`` / ``from_json`` (plain dicts ready
for ``json.dumps``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable

Vec3 = tuple[float, float, float]


def _as_vec3(value: Any) -> Vec3:
    vec = tuple(float(v) for v in value)
    if len(vec) != 3:
        raise ValueError(f"expected a 3-vector, got {value!r}")
    if not all(math.isfinite(v) for v in vec):
        raise ValueError(f"coordinates must be finite, got {value!r}")
    return vec  # type: ignore[return-value]


def euclidean(a: Vec3, b: Vec3) -> float:
    return math.dist(a, b)


@dataclass(frozen=True)
class Pose:
    """A pose relevant to an action, named by its function (e.g. "pick", "place")."""

    role: str
    position: Vec3

    def __post_init__(self):
        if not self.role:
            raise ValueError("pose role must be non-empty")
        object.__setattr__(self, "position", _as_vec3(self.position))

    def to_json(self) -> dict:
        return {"role": self.role, "position": list(self.position)}

    @classmethod
    def from_json(cls, data: dict) -> Pose:
        return cls(role=data["role"], position=_as_vec3(data["position"]))


@dataclass(frozen=True)
class ActionSpec:
    """An atomic action: required skills, relevant poses, and a workload class."""

    label: str
    skills: frozenset[str]
    poses: tuple[Pose, ...] = ()
    workload_class: str = "default"

    def __post_init__(self):
        if not self.label:
            raise ValueError("action label must be non-empty")
        object.__setattr__(self, "skills", frozenset(self.skills))
        object.__setattr__(self, "poses", tuple(self.poses))

    @property
    def roles(self) -> tuple[str, ...]:
        return tuple(p.role for p in self.poses)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "skills": sorted(self.skills),
            "poses": [p.to_json() for p in self.poses],
            "workload_class": self.workload_class,
        }

    @classmethod
    def from_json(cls, data: dict) -> ActionSpec:
        return cls(
            label=data["label"],
            skills=frozenset(data["skills"]),
            poses=tuple(Pose.from_json(p) for p in data.get("poses", [])),
            workload_class=data.get("workload_class", "default"),
        )


@dataclass(frozen=True)
class AgentSpec:
    """An agent: skill set, base pose, maximum reach, and normalized workloads.

    Workloads are keyed by an action's workload class; ``default_workload``
    applies to classes absent from the table. All workloads live in [0, 1].
    """

    id: str
    skills: frozenset[str]
    base: Vec3
    max_reach: float
    workloads: dict[str, float] = field(default_factory=dict)
    default_workload: float = 1.0

    def __post_init__(self):
        if not self.id:
            raise ValueError("agent id must be non-empty")
        if self.max_reach <= 0:
            raise ValueError("max_reach must be positive")
        object.__setattr__(self, "skills", frozenset(self.skills))
        object.__setattr__(self, "base", _as_vec3(self.base))
        for cls_name, w in list(self.workloads.items()) + [("default", self.default_workload)]:
            if not 0.0 <= w <= 1.0:
                raise ValueError(f"workload for {cls_name!r} must be in [0, 1], got {w}")

    def workload_for(self, action: ActionSpec) -> float:
        return self.workloads.get(action.workload_class, self.default_workload)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "skills": sorted(self.skills),
            "base": list(self.base),
            "max_reach": self.max_reach,
            "workloads": dict(self.workloads),
            "default_workload": self.default_workload,
        }

    @classmethod
    def from_json(cls, data: dict) -> AgentSpec:
        return cls(
            id=data["id"],
            skills=frozenset(data["skills"]),
            base=_as_vec3(data["base"]),
            max_reach=float(data["max_reach"]),
            workloads={k: float(v) for k, v in data.get("workloads", {}).items()},
            default_workload=float(data.get("default_workload", 1.0)),
        )


def load_agents(data: list[dict]) -> list[AgentSpec]:
    """Parse a JSON array of agents, enforcing unique ids."""
    agents = [AgentSpec.from_json(item) for item in data]
    seen: set[str] = set()
    for agent in agents:
        if agent.id in seen:
            raise ValueError(f"duplicate agent id {agent.id!r}")
        seen.add(agent.id)
    return agents


@dataclass(frozen=True)
class Observation:
    """A recorded observation: a domain state payload plus task-irrelevant fields."""

    state: Any
    nuisance: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"state": self.state, "nuisance": self.nuisance}

    @classmethod
    def from_json(cls, data: dict) -> Observation:
        return cls(state=data["state"], nuisance=data.get("nuisance", {}))


@dataclass(frozen=True)
class TransitionTuple:
    """One dataset tuple: two observations and the action information between them.

    ``b`` flags whether an action occurred; the action spec is present exactly
    when ``b == 1``.
    """

    obs_a: Observation
    obs_b: Observation
    b: int
    action: ActionSpec | None = None

    def __post_init__(self):
        if self.b not in (0, 1):
            raise ValueError(f"b must be 0 or 1, got {self.b}")
        if self.b == 1 and self.action is None:
            raise ValueError("action tuple (b=1) requires an action")
        if self.b == 0 and self.action is not None:
            raise ValueError("no-action tuple (b=0) must not carry an action")

    def to_json(self) -> dict:
        return {
            "obs_a": self.obs_a.to_json(),
            "obs_b": self.obs_b.to_json(),
            "b": self.b,
            "action": self.action.to_json() if self.action else None,
        }

    @classmethod
    def from_json(cls, data: dict) -> TransitionTuple:
        action = data.get("action")
        return cls(
            obs_a=Observation.from_json(data["obs_a"]),
            obs_b=Observation.from_json(data["obs_b"]),
            b=int(data["b"]),
            action=ActionSpec.from_json(action) if action is not None else None,
        )


@dataclass(frozen=True)
class CostWeights:
    """Weights for the agent-action cost and the edge cost."""

    alpha: float = 1.0
    beta: float = 1.0
    gamma: float = 1.0
    mu: float = 1.0

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "mu"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")

    def to_json(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "gamma": self.gamma, "mu": self.mu}

    @classmethod
    def from_json(cls, data: dict) -> CostWeights:
        return cls(**{k: float(data[k]) for k in ("alpha", "beta", "gamma", "mu") if k in data})


def reachability(agent: AgentSpec, pose: Pose) -> float:
    """Proportional reachability index in [0, 1].

    1 at the agent base, falling linearly to 0 at ``max_reach``; 0 means the
    agent cannot operate at the pose. This is the bundled reference rule; any
    function with the same signature can be substituted where a
    ``ReachabilityFn`` is accepted.
    """
    distance = euclidean(pose.position, agent.base)
    return max(0.0, 1.0 - distance / agent.max_reach)


ReachabilityFn = Callable[[AgentSpec, Pose], float]


def is_capable(agent: AgentSpec, action: ActionSpec, reach_fn: ReachabilityFn = reachability) -> bool:
    """True iff the agent has every required skill and strictly positive
    reachability at every relevant pose."""
    if not action.skills <= agent.skills:
        return False
    return all(reach_fn(agent, pose) > 0.0 for pose in action.poses)
