import random

import pytest
from fastapi.testclient import TestClient

from clsr.dataset import dumps, generate
from clsr.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


@pytest.fixture(scope="module")
def box_jsonl(box_domain):
    return dumps(generate(box_domain, 900, 0.54, seed=11))


@pytest.fixture(scope="module")
def built_box(client, box_jsonl):
    resp = client.post("/roadmaps", json={"domain": "box-packing", "dataset_jsonl": box_jsonl})
    assert resp.status_code == 200
    return resp.json()


def observation_payload(domain, state, seed=0):
    obs = domain.observe(state, random.Random(seed))
    return {"state": obs.state, "nuisance": obs.nuisance}


class TestBasics:
    def test_health(self, client):
        doc = client.get("/health").json()
        assert doc["status"] == "ok"

    def test_domains_listed(self, client):
        assert client.get("/domains").json()["domains"] == ["box-packing", "burger"]

    def test_generate(self, client):
        resp = client.post("/datasets/generate", json={
            "domain": "box-packing", "n_tuples": 50, "action_fraction": 0.5, "seed": 1})
        doc = resp.json()
        assert resp.status_code == 200
        assert doc["n_tuples"] == 50 and doc["n_action"] == 25
        assert len(doc["jsonl"].splitlines()) == 50

    def test_generate_validation_error(self, client):
        resp = client.post("/datasets/generate", json={
            "domain": "box-packing", "n_tuples": 0, "action_fraction": 0.5})
        assert resp.status_code == 422  # n_tuples must be positive

    def test_generate_unknown_domain(self, client):
        resp = client.post("/datasets/generate", json={
            "domain": "nope", "n_tuples": 5, "action_fraction": 0.5})
        assert resp.status_code == 400


class TestBuildAndPlan:
    def test_build_report(self, built_box):
        report = built_box["report"]
        assert report["nodes"] == 17
        assert report["lsr_edges"] == 33
        assert report["contrastive_violations"] == 0
        assert report["weakly_connected_components"] == 1
        assert not report["plsr_cache_hit"]

    def test_roadmap_registered(self, client, built_box):
        listing = client.get("/roadmaps").json()["roadmaps"]
        assert built_box["roadmap_id"] in listing
        doc = client.get(f"/roadmaps/{built_box['roadmap_id']}").json()
        assert len(doc["nodes"]) == 17

    def test_plan_found(self, client, built_box, box_domain, packed_box_goal):
        start = observation_payload(box_domain, box_domain.initial_states()[0])
        goal = observation_payload(box_domain, packed_box_goal)
        resp = client.post(f"/roadmaps/{built_box['roadmap_id']}/plan",
                           json={"start": start, "goal": goal})
        doc = resp.json()
        assert resp.status_code == 200
        assert doc["found"] is True
        assert doc["plan"]["n_observations"] == 4

    def test_plan_falls_back_to_suggestion(self, client, box_jsonl, box_domain, packed_box_goal):
        arms_only = [
            {"id": "b1", "skills": ["grip"], "base": [0.0, 0.35, 0.95], "max_reach": 0.85,
             "default_workload": 0.5},
        ]
        build = client.post("/roadmaps", json={
            "domain": "box-packing", "dataset_jsonl": box_jsonl, "agents": arms_only}).json()
        start = observation_payload(box_domain, box_domain.initial_states()[0])
        goal = observation_payload(box_domain, packed_box_goal)
        doc = client.post(f"/roadmaps/{build['roadmap_id']}/plan",
                          json={"start": start, "goal": goal}).json()
        assert doc["found"] is False
        assert doc["suggestion"]["outcome"] == "missing-capability"
        assert doc["suggestion_text"]

    def test_suggest_conflict_when_path_exists(self, client, built_box, box_domain):
        s0 = box_domain.initial_states()[0]
        s1 = box_domain.step(s0, "pack_chocolate")
        resp = client.post(f"/roadmaps/{built_box['roadmap_id']}/suggest", json={
            "start": observation_payload(box_domain, s0),
            "goal": observation_payload(box_domain, s1)})
        assert resp.status_code == 409

    def test_unknown_roadmap_404(self, client, box_domain):
        obs = observation_payload(box_domain, box_domain.initial_states()[0])
        resp = client.post("/roadmaps/deadbeef/plan", json={"start": obs, "goal": obs})
        assert resp.status_code == 404

    def test_rebuild_capability_layer(self, client, built_box):
        omni = [{"id": "omni", "skills": ["grip", "dexterous-manipulation"],
                 "base": [0.6, 0.0, 0.9], "max_reach": 5.0, "default_workload": 1.0}]
        resp = client.post(f"/roadmaps/{built_box['roadmap_id']}/clsr", json={"agents": omni})
        doc = resp.json()
        assert resp.status_code == 200
        assert doc["report"]["plsr_cache_hit"] is True
        assert doc["roadmap_id"] != built_box["roadmap_id"]
        # singleton edges only: the omnipotent agent works alone
        assert doc["report"]["clsr_edges"] == doc["report"]["lsr_edges"]

    def test_dot_export(self, client, built_box):
        resp = client.get(f"/roadmaps/{built_box['roadmap_id']}/dot", params={"layer": "plsr"})
        assert resp.status_code == 200
        assert resp.json()["dot"].startswith('digraph "plsr"')

    def test_dot_unknown_layer(self, client, built_box):
        resp = client.get(f"/roadmaps/{built_box['roadmap_id']}/dot", params={"layer": "x"})
        assert resp.status_code == 400

    def test_bench_endpoint(self, client, built_box):
        resp = client.post(f"/roadmaps/{built_box['roadmap_id']}/bench",
                           json={"n_pairs": 10, "seed": 4})
        doc = resp.json()
        assert resp.status_code == 200
        assert len(doc["summary"]) == 1
        assert doc["summary"][0]["n_pairs"] == 10
        assert doc["csv"].splitlines()[0].startswith("pair,start,goal")

    def test_bench_zero_pairs(self, client, built_box):
        doc = client.post(f"/roadmaps/{built_box['roadmap_id']}/bench",
                          json={"n_pairs": 0, "seed": 4}).json()
        assert doc["summary"][0]["n_pairs"] == 0
        assert len(doc["csv"].splitlines()) == 1  # header only

    def test_build_rejects_contrastive_violations(self, client, box_domain):
        import json as jsonlib
        s0 = box_domain.initial_states()[0]
        obs = observation_payload(box_domain, s0)
        bad_tuple = {"obs_a": obs, "obs_b": obs, "b": 1,
                     "action": {"label": "pack_chocolate", "skills": ["grip"], "poses": []}}
        resp = client.post("/roadmaps", json={
            "domain": "box-packing", "dataset_jsonl": jsonlib.dumps(bad_tuple)})
        assert resp.status_code == 400
        assert "contrastive" in resp.json()["detail"]
