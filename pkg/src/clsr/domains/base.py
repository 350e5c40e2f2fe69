"""Declarative task domains: states, guarded rewrite rules, and rendering.

A domain supplies everything the pipeline needs from a task: a transition
oracle, a feasible-action enumerator, initial states, a canonical state key,
a nuisance sampler, and a renderer. Domains can be defined entirely as data
(objects with attributes, actions as guarded rewrite rules), so new tasks
need no code; the bundled tasks add custom SVG drawers on top.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Any, Callable

from ..model import ActionSpec, AgentSpec, Observation, Pose, load_agents

# Nested mapping object -> attribute -> value. Attribute values are JSON
# scalars; object/attribute order follows the domain catalog.
State = dict[str, dict[str, Any]]


@dataclass(frozen=True)
class ActionRule:
    """A guarded rewrite rule: applicable when every precondition attribute
    matches, producing a state with the postcondition attributes set."""

    action: ActionSpec
    pre: dict[tuple[str, str], Any]
    post: dict[tuple[str, str], Any]


def _split_ref(ref: str) -> tuple[str, str]:
    obj, _, attr = ref.partition(".")
    if not obj or not attr:
        raise ValueError(f"attribute reference must look like 'object.attr', got {ref!r}")
    return obj, attr


def _parse_rule(data: dict) -> ActionRule:
    action = ActionSpec(
        label=data["label"],
        skills=frozenset(data.get("skills", [])),
        poses=tuple(Pose.from_json(p) for p in data.get("poses", [])),
        workload_class=data.get("workload_class", "default"),
    )
    pre = {_split_ref(k): v for k, v in data.get("pre", {}).items()}
    post = {_split_ref(k): v for k, v in data["post"].items()}
    return ActionRule(action=action, pre=pre, post=post)


class DomainModel:
    """A task domain driven by a declarative definition.

    The transition function is deterministic and total in the sense that
    infeasible applications return ``None`` rather than raising.
    """

    def __init__(
        self,
        name: str,
        objects: dict[str, dict[str, Any]],
        rules: list[ActionRule],
        initial: list[State] | None = None,
        nuisance: dict[str, list] | None = None,
        agents: list[AgentSpec] | None = None,
        drawer: Callable[[State], str] | None = None,
    ):
        self.name = name
        self.catalog = {obj: list(attrs) for obj, attrs in objects.items()}
        self.rules = list(rules)
        self._by_label = {rule.action.label: rule for rule in rules}
        if len(self._by_label) != len(rules):
            raise ValueError("action labels must be unique within a domain")
        self._initial = initial or [{obj: dict(attrs) for obj, attrs in objects.items()}]
        self.nuisance_spec = nuisance or {}
        self._agents = agents or []
        self._drawer = drawer

    @classmethod
    def from_definition(cls, definition: dict, drawer: Callable[[State], str] | None = None) -> DomainModel:
        agents = load_agents(definition.get("agents", []))
        return cls(
            name=definition["name"],
            objects=definition["objects"],
            rules=[_parse_rule(r) for r in definition["actions"]],
            initial=definition.get("initial"),
            nuisance=definition.get("nuisance"),
            agents=agents,
            drawer=drawer,
        )

    @classmethod
    def from_json_file(cls, path) -> DomainModel:
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_definition(json.load(fh))

    # -- transition system ------------------------------------------------

    def initial_states(self) -> list[State]:
        return [self._copy(s) for s in self._initial]

    def actions(self) -> list[ActionSpec]:
        return [rule.action for rule in self.rules]

    def feasible_actions(self, state: State) -> list[ActionSpec]:
        return [rule.action for rule in self.rules if self._applicable(rule, state)]

    def step(self, state: State, action: ActionSpec | str) -> State | None:
        """Apply an action; returns the successor state or None when infeasible."""
        label = action if isinstance(action, str) else action.label
        rule = self._by_label.get(label)
        if rule is None or not self._applicable(rule, state):
            return None
        successor = self._copy(state)
        for (obj, attr), value in rule.post.items():
            successor[obj][attr] = value
        return successor

    def _applicable(self, rule: ActionRule, state: State) -> bool:
        return all(state[obj][attr] == value for (obj, attr), value in rule.pre.items())

    def _copy(self, state: State) -> State:
        return {obj: dict(attrs) for obj, attrs in state.items()}

    # -- abstraction hooks -------------------------------------------------

    def state_key(self, state: State) -> str:
        """Canonical digest of a state: JSON in catalog order.

        Catalog order (not alphabetical) keeps keys comparable in a fixed,
        domain-chosen sequence, so node ids derived from sorted keys are
        stable across datasets.
        """
        ordered = {obj: {attr: state[obj][attr] for attr in attrs} for obj, attrs in self.catalog.items()}
        return json.dumps(ordered, separators=(",", ":"))

    def sample_nuisance(self, rng: random.Random) -> dict[str, Any]:
        sample: dict[str, Any] = {}
        for name, spec in self.nuisance_spec.items():
            kind = spec[0]
            if kind == "uniform":
                sample[name] = rng.uniform(spec[1], spec[2])
            elif kind == "normal":
                sigma, dim = spec[1], int(spec[2]) if len(spec) > 2 else 1
                values = [rng.gauss(0.0, sigma) for _ in range(dim)]
                sample[name] = values if dim > 1 else values[0]
            else:
                raise ValueError(f"unknown nuisance sampler {kind!r}")
        return sample

    def observe(self, state: State, rng: random.Random) -> Observation:
        """Render a state to an observation with freshly sampled nuisance fields."""
        return Observation(state=self._copy(state), nuisance=self.sample_nuisance(rng))

    def describe(self, state: State) -> dict:
        """Structured depiction of a state."""
        return {"domain": self.name, "objects": self._copy(state)}

    def draw_svg(self, state: State) -> str | None:
        return self._drawer(state) if self._drawer else None

    # -- team --------------------------------------------------------------

    def default_agents(self) -> list[AgentSpec]:
        return list(self._agents)
