"""Layered roadmap planning for heterogeneous multi-agent teams.

Pipeline: a tuple dataset is clustered into states, a base roadmap (one
action per edge) is built, parallel-executable action sets are inferred on
top of it, and a capability layer assigns actions to a concrete team with
costs. Planning runs over the capability layer; when no path exists, the
suggestion strategy diagnoses missing capabilities.
"""

from .abstraction import ClusterMap, Depiction, ExactAbstraction, VectorAbstraction, cluster, render
from .capability import (
    AssignmentSolution,
    CostMatrix,
    build_clsr,
    compute_cost,
    cost_matrix,
    edge_cost,
    hungarian_assignment,
    solve_assignment,
)
from .dataset import Dataset, generate, load, save
from .errors import (
    ClsrError,
    ClusteringError,
    DatasetError,
    GenerationError,
    PathExistsError,
    UnknownNodeError,
    UnknownStateError,
)
from .model import (
    ActionSpec,
    AgentSpec,
    CostWeights,
    Observation,
    Pose,
    TransitionTuple,
    is_capable,
    load_agents,
    reachability,
)
from .parallel import actions_at_node, build_plsr, parallel_intersection
from .planner import ParallelVAP, locate, plan
from .roadmap import (
    CapabilityEdge,
    LsrEdge,
    ParallelEdge,
    Roadmap,
    action_equivalence,
    build_lsr,
    to_dot,
    weakly_connected_components,
)
from .suggestion import CapabilityReport, suggest

__version__ = "0.1.0"

__all__ = [
    "ActionSpec", "AgentSpec", "AssignmentSolution", "CapabilityEdge", "CapabilityReport",
    "ClsrError", "ClusterMap", "ClusteringError", "CostMatrix", "CostWeights", "Dataset",
    "DatasetError", "Depiction", "ExactAbstraction", "GenerationError", "LsrEdge",
    "Observation", "ParallelEdge", "ParallelVAP", "PathExistsError", "Pose", "Roadmap",
    "TransitionTuple", "UnknownNodeError", "UnknownStateError", "VectorAbstraction",
    "action_equivalence", "actions_at_node", "build_clsr", "build_lsr", "build_plsr",
    "cluster", "compute_cost", "cost_matrix", "edge_cost", "generate",
    "hungarian_assignment", "is_capable", "load", "load_agents", "locate",
    "parallel_intersection", "plan", "reachability", "render", "save",
    "solve_assignment", "suggest", "to_dot", "weakly_connected_components",
]
