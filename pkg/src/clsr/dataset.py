"""Tuple dataset ingestion, validation, persistence, and generation.

Datasets are UTF-8 JSONL: one transition tuple per line with fields
``obs_a``, ``obs_b``, ``b``, ``action`` (null when ``b`` is 0).
"""

from __future__ import annotations

import json
import logging
import random
from dataclasses import dataclass
from pathlib import Path

from .domains.base import DomainModel
from .errors import DatasetError, GenerationError
from .model import TransitionTuple

log = logging.getLogger(__name__)

WALK_DEPTH = 20
MAX_RETRIES = 100


@dataclass(frozen=True)
class Dataset:
    tuples: tuple[TransitionTuple, ...]
    provenance: str = ""

    @property
    def n_action(self) -> int:
        return sum(t.b for t in self.tuples)

    @property
    def n_no_action(self) -> int:
        return len(self.tuples) - self.n_action

    def __len__(self) -> int:
        return len(self.tuples)


def load(path: str | Path) -> Dataset:
    """Read and validate a JSONL dataset; raises DatasetError with the line
    number on malformed lines or tuples violating the schema."""
    tuples: list[TransitionTuple] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DatasetError(f"malformed JSON ({exc.msg})", line=lineno) from exc
            try:
                tuples.append(TransitionTuple.from_json(record))
            except (KeyError, TypeError, ValueError) as exc:
                raise DatasetError(str(exc), line=lineno) from exc
    dataset = Dataset(tuples=tuple(tuples), provenance=str(path))
    log.info("loaded %d tuples (%d action, %d no-action) from %s",
             len(dataset), dataset.n_action, dataset.n_no_action, path)
    return dataset


def save(dataset: Dataset, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for t in dataset.tuples:
            fh.write(json.dumps(t.to_json(), separators=(",", ":")) + "\n")


def dumps(dataset: Dataset) -> str:
    return "".join(json.dumps(t.to_json(), separators=(",", ":")) + "\n" for t in dataset.tuples)


def loads(text: str, provenance: str = "inline") -> Dataset:
    tuples = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            tuples.append(TransitionTuple.from_json(json.loads(line)))
        except json.JSONDecodeError as exc:
            raise DatasetError(f"malformed JSON ({exc.msg})", line=lineno) from exc
        except (KeyError, TypeError, ValueError) as exc:
            raise DatasetError(str(exc), line=lineno) from exc
    return Dataset(tuples=tuple(tuples), provenance=provenance)


def _sample_state(domain: DomainModel, rng: random.Random) -> dict:
    """Random-walk sampling: start from a random initial state and take up to
    WALK_DEPTH random feasible actions, so coverage follows reachability."""
    state = rng.choice(domain.initial_states())
    depth = rng.randrange(0, WALK_DEPTH + 1)
    for _ in range(depth):
        actions = domain.feasible_actions(state)
        if not actions:
            break
        state = domain.step(state, rng.choice(actions))
    return state


def generate(domain: DomainModel, n_tuples: int, action_fraction: float, seed: int) -> Dataset:
    """Generate a dataset from a domain's transition oracle.

    Action tuples pair observations of a sampled state and its successor
    under a random feasible action; no-action tuples pair two renderings of
    one state under fresh nuisance. Deterministic given the seed.
    """
    if n_tuples <= 0:
        raise ValueError("n_tuples must be positive")
    if not 0.0 <= action_fraction <= 1.0:
        raise ValueError("action_fraction must be in [0, 1]")
    rng = random.Random(seed)
    n_action = round(n_tuples * action_fraction)
    flags = [True] * n_action + [False] * (n_tuples - n_action)
    rng.shuffle(flags)

    tuples: list[TransitionTuple] = []
    for wants_action in flags:
        if wants_action:
            state, action = None, None
            for _ in range(MAX_RETRIES):
                state = _sample_state(domain, rng)
                feasible = domain.feasible_actions(state)
                if feasible:
                    action = rng.choice(feasible)
                    break
            if action is None:
                raise GenerationError(
                    f"no feasible action found after {MAX_RETRIES} sampled states")
            successor = domain.step(state, action)
            tuples.append(TransitionTuple(
                obs_a=domain.observe(state, rng),
                obs_b=domain.observe(successor, rng),
                b=1,
                action=action,
            ))
        else:
            state = _sample_state(domain, rng)
            tuples.append(TransitionTuple(
                obs_a=domain.observe(state, rng),
                obs_b=domain.observe(state, rng),
                b=0,
            ))
    return Dataset(tuples=tuple(tuples), provenance=f"generated:{domain.name}:seed={seed}")
