import random

import pytest

from clsr import (
    ActionSpec,
    Observation,
    UnknownStateError,
    VectorAbstraction,
    build_clsr,
    locate,
    plan,
)
from clsr.planner import _dijkstra
from clsr.roadmap import CapabilityEdge, Roadmap

from .oracles import cheapest_path_cost, replay_all_orders


def capability_roadmap(n_nodes, edges):
    """Synthetic roadmap with only a capability layer, for path testing."""
    return Roadmap(
        key_to_node={str(i): i for i in range(n_nodes)},
        representatives={i: Observation(state={"id": i}) for i in range(n_nodes)},
        clsr_edges=[
            CapabilityEdge(src=s, dst=d, actions=(ActionSpec(label=f"e{s}_{d}", skills=set()),),
                           couples=(("a", 0),), cost=c, source=f"lsr:{k}")
            for k, (s, d, c) in enumerate(edges)
        ],
    )


class TestLocate:
    def test_representative_maps_to_its_node(self, box_roadmap, box_abstraction):
        for nid, rep in box_roadmap.representatives.items():
            assert locate(rep, box_roadmap, box_abstraction) == nid

    def test_nuisance_resample_same_node(self, box_roadmap, box_abstraction, box_domain):
        rng = random.Random(5)
        rep = box_roadmap.representatives[0]
        jittered = box_domain.observe(rep.state, rng)
        assert locate(jittered, box_roadmap, box_abstraction) == 0

    def test_unknown_state_raises(self, box_roadmap, box_abstraction, box_domain):
        impossible = dict(box_domain.initial_states()[0])
        impossible["cover"] = {"at": "on"}  # cover closed with items outside is unreachable
        with pytest.raises(UnknownStateError):
            locate(Observation(state=impossible), box_roadmap, box_abstraction)

    def test_vector_mode_nearest(self):
        roadmap = Roadmap(
            key_to_node={"v0": 0, "v1": 1},
            representatives={0: Observation(state=[0.0, 0.0]), 1: Observation(state=[2.0, 0.0])},
            exact=False,
            features={0: (0.0, 0.0), 1: (2.0, 0.0)},
        )
        abstraction = VectorAbstraction(lambda s: s, eps=0.5)
        assert locate(Observation(state=[0.4, 0.1]), roadmap, abstraction) == 0
        assert locate(Observation(state=[1.8, 0.0]), roadmap, abstraction) == 1


class TestDijkstraOptimality:
    def test_matches_exhaustive_on_random_toy_roadmaps(self):
        rng = random.Random(77)
        for trial in range(40):
            n = rng.randint(2, 12)
            edges = []
            for _ in range(rng.randint(1, 3 * n)):
                s, d = rng.randrange(n), rng.randrange(n)
                if s != d:
                    edges.append((s, d, round(rng.uniform(0.1, 5.0), 3)))
            roadmap = capability_roadmap(n, edges)
            start, goal = rng.randrange(n), rng.randrange(n)
            got = _dijkstra(roadmap, start, goal)
            expected = cheapest_path_cost(roadmap, start, goal)
            if expected is None:
                assert got is None or start == goal
                continue
            assert got is not None, f"trial {trial}: path {start}->{goal} missed"
            cost = sum(roadmap.clsr_edges[i].cost for i in got[1])
            assert cost == pytest.approx(expected, abs=1e-9)

    def test_prefers_fewer_hops_then_lexicographic(self):
        roadmap = capability_roadmap(4, [(0, 1, 1.0), (1, 3, 1.0), (0, 2, 1.0), (2, 3, 1.0),
                                         (0, 3, 2.0)])
        path, _ = _dijkstra(roadmap, 0, 3)
        assert path == (0, 3)  # equal cost, fewer hops wins
        roadmap2 = capability_roadmap(4, [(0, 2, 1.0), (2, 3, 1.0), (0, 1, 1.0), (1, 3, 1.0)])
        path2, _ = _dijkstra(roadmap2, 0, 3)
        assert path2 == (0, 1, 3)  # equal cost and hops: smaller node path

    def test_unreachable_returns_none(self):
        roadmap = capability_roadmap(3, [(0, 1, 1.0)])
        assert _dijkstra(roadmap, 0, 2) is None


class TestPlan:
    def test_start_equals_goal(self, box_roadmap, box_domain, box_abstraction, box_agents):
        team = build_clsr(box_roadmap, list(box_agents.values()))
        rng = random.Random(0)
        obs = box_domain.observe(box_domain.initial_states()[0], rng)
        vap = plan(obs, obs, team, box_abstraction, box_domain)
        assert vap.n_observations == 1
        assert vap.steps == ()
        assert vap.total_cost == 0.0
        assert vap.per_agent_workload == {}

    def test_visual_plan_length_invariant(self, box_roadmap, box_domain, box_abstraction,
                                          box_agents, packed_box_goal):
        team = build_clsr(box_roadmap, list(box_agents.values()))
        rng = random.Random(0)
        start = box_domain.observe(box_domain.initial_states()[0], rng)
        goal = box_domain.observe(packed_box_goal, rng)
        vap = plan(start, goal, team, box_abstraction, box_domain)
        assert vap is not None
        assert len(vap.visual_plan) == len(vap.action_plan) + 1
        assert vap.node_path[0] == locate(start, team, box_abstraction)
        assert vap.node_path[-1] == locate(goal, team, box_abstraction)
        for i, edge in enumerate(vap.steps):
            assert (edge.src, edge.dst) == (vap.node_path[i], vap.node_path[i + 1])

    def test_no_path_returns_none(self, burger_roadmap, burger_agents, burger_abstraction,
                                  burger_domain, full_burger_goal):
        robots = build_clsr(burger_roadmap, [burger_agents["r1"], burger_agents["r2"]])
        rng = random.Random(1)
        start = burger_domain.observe(burger_domain.initial_states()[0], rng)
        goal = burger_domain.observe(full_burger_goal, rng)
        assert plan(start, goal, robots, burger_abstraction, burger_domain) is None

    def test_plan_replay_through_oracle(self, burger_roadmap, burger_agents, burger_domain,
                                        burger_abstraction):
        # every step's action set must commute and land on the next node's state
        team = build_clsr(burger_roadmap, list(burger_agents.values()))
        rng = random.Random(3)
        from clsr.service.ops import _sample_pairs
        for start_node, goal_node in _sample_pairs(team, 40, seed=8):
            start = team.representatives[start_node]
            goal = team.representatives[goal_node]
            vap = plan(start, goal, team, burger_abstraction, burger_domain)
            if vap is None:
                continue
            for edge in vap.steps:
                state = team.representatives[edge.src].state
                labels = [a.label for a in edge.actions]
                finals = replay_all_orders(burger_domain, state, labels)
                assert finals == {burger_domain.state_key(team.representatives[edge.dst].state)}

    def test_hop_count_monotone_in_agents(self, burger_roadmap, burger_agents, burger_domain,
                                          burger_abstraction):
        from clsr.service.ops import _sample_pairs
        nested = (["r1"], ["r1", "h1"], ["r1", "r2", "h1"], ["r1", "r2", "h1", "h2"])
        variants = [build_clsr(burger_roadmap, [burger_agents[i] for i in ids]) for ids in nested]
        for start_node, goal_node in _sample_pairs(variants[0], 60, seed=13):
            start = variants[0].representatives[start_node]
            goal = variants[0].representatives[goal_node]
            previous = None
            for variant in variants:
                vap = plan(start, goal, variant, burger_abstraction, burger_domain)
                if previous is not None and previous[0]:
                    assert vap is not None, "a path vanished when agents were added"
                    assert vap.n_observations <= previous[1]
                previous = (vap is not None, vap.n_observations if vap else None)

    def test_workload_sums_assigned_actions(self, box_roadmap, box_domain, box_abstraction,
                                            box_agents, packed_box_goal):
        team = build_clsr(box_roadmap, list(box_agents.values()))
        rng = random.Random(0)
        start = box_domain.observe(box_domain.initial_states()[0], rng)
        goal = box_domain.observe(packed_box_goal, rng)
        vap = plan(start, goal, team, box_abstraction, box_domain)
        expected = {}
        for step in vap.action_plan:
            for agent_id, act in step:
                expected[agent_id] = expected.get(agent_id, 0.0) + box_agents[agent_id].workload_for(act)
        assert vap.per_agent_workload == expected

    def test_plan_json_shape(self, box_roadmap, box_domain, box_abstraction, box_agents,
                             packed_box_goal):
        team = build_clsr(box_roadmap, list(box_agents.values()))
        rng = random.Random(0)
        start = box_domain.observe(box_domain.initial_states()[0], rng)
        goal = box_domain.observe(packed_box_goal, rng)
        doc = plan(start, goal, team, box_abstraction, box_domain).to_json()
        assert doc["n_observations"] == len(doc["visual_plan"])
        assert len(doc["steps"]) == doc["n_observations"] - 1
        assert {"nodes", "total_cost", "per_agent_workload"} <= set(doc)
        for step in doc["steps"]:
            for couple in step["couples"]:
                assert {"agent", "action"} <= set(couple)
