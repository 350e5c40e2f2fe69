import json

import pytest

from clsr import DatasetError, GenerationError, cluster, generate
from clsr.abstraction import ExactAbstraction
from clsr.dataset import Dataset, dumps, load, loads, save
from clsr.domains import DomainModel

VALID_ACTION_TUPLE = {
    "obs_a": {"state": {"x": 0}, "nuisance": {}},
    "obs_b": {"state": {"x": 1}, "nuisance": {}},
    "b": 1,
    "action": {"label": "inc", "skills": ["grip"], "poses": [], "workload_class": "default"},
}


def write_lines(tmp_path, lines):
    path = tmp_path / "data.jsonl"
    path.write_text("\n".join(json.dumps(l) if not isinstance(l, str) else l for l in lines))
    return path


class TestLoad:
    def test_single_valid_tuple(self, tmp_path):
        path = write_lines(tmp_path, [VALID_ACTION_TUPLE])
        ds = load(path)
        assert len(ds) == 1
        assert ds.n_action == 1
        assert ds.provenance == str(path)

    def test_b0_with_action_rejected_with_line(self, tmp_path):
        bad = dict(VALID_ACTION_TUPLE, b=0)
        path = write_lines(tmp_path, [VALID_ACTION_TUPLE, bad])
        with pytest.raises(DatasetError) as err:
            load(path)
        assert err.value.line == 2

    def test_malformed_json_reports_line(self, tmp_path):
        path = write_lines(tmp_path, [VALID_ACTION_TUPLE, "{not json"])
        with pytest.raises(DatasetError) as err:
            load(path)
        assert err.value.line == 2

    def test_empty_file_fails_at_build(self, tmp_path):
        path = write_lines(tmp_path, [])
        ds = load(path)
        assert len(ds) == 0
        with pytest.raises(Exception):
            cluster(ds, ExactAbstraction(lambda s: json.dumps(s)))

    def test_blank_lines_skipped(self, tmp_path):
        path = tmp_path / "data.jsonl"
        path.write_text(json.dumps(VALID_ACTION_TUPLE) + "\n\n" + json.dumps(VALID_ACTION_TUPLE) + "\n")
        assert len(load(path)) == 2


class TestSaveLoadRoundTrip:
    def test_round_trip(self, tmp_path, box_domain):
        ds = generate(box_domain, 40, 0.5, seed=3)
        path = tmp_path / "box.jsonl"
        save(ds, path)
        loaded = load(path)
        assert loaded.tuples == ds.tuples

    def test_dumps_loads_round_trip(self, burger_domain):
        ds = generate(burger_domain, 25, 0.4, seed=5)
        assert loads(dumps(ds)).tuples == ds.tuples


class TestGenerate:
    def test_exact_split(self, burger_domain):
        ds = generate(burger_domain, 100, 0.58, seed=1)
        assert len(ds) == 100
        assert ds.n_action == 58
        assert ds.n_no_action == 42

    def test_fraction_zero(self, burger_domain):
        ds = generate(burger_domain, 20, 0.0, seed=1)
        assert ds.n_action == 0
        assert all(t.b == 0 for t in ds.tuples)

    def test_deterministic_bytes(self, box_domain):
        a = dumps(generate(box_domain, 60, 0.5, seed=21))
        b = dumps(generate(box_domain, 60, 0.5, seed=21))
        assert a == b

    def test_different_seed_differs(self, box_domain):
        a = dumps(generate(box_domain, 60, 0.5, seed=21))
        b = dumps(generate(box_domain, 60, 0.5, seed=22))
        assert a != b

    def test_rejects_bad_args(self, box_domain):
        with pytest.raises(ValueError):
            generate(box_domain, 0, 0.5, seed=1)
        with pytest.raises(ValueError):
            generate(box_domain, 10, 1.5, seed=1)

    def test_action_tuples_consistent_with_oracle(self, burger_domain, burger_dataset):
        # every generated action tuple must replay through the transition oracle
        for t in burger_dataset.tuples:
            if t.b == 0:
                continue
            successor = burger_domain.step(t.obs_a.state, t.action.label)
            assert successor is not None
            assert burger_domain.state_key(successor) == burger_domain.state_key(t.obs_b.state)

    def test_no_action_tuples_share_state(self, box_domain, box_dataset):
        for t in box_dataset.tuples:
            if t.b == 0:
                assert box_domain.state_key(t.obs_a.state) == box_domain.state_key(t.obs_b.state)

    def test_dead_end_domain_errors_after_retries(self):
        dead = DomainModel(name="dead", objects={"o": {"v": 0}}, rules=[])
        with pytest.raises(GenerationError):
            generate(dead, 4, 1.0, seed=0)

    def test_no_action_only_generation_survives_dead_end(self):
        dead = DomainModel(name="dead", objects={"o": {"v": 0}}, rules=[])
        ds = generate(dead, 4, 0.0, seed=0)
        assert len(ds) == 4


def test_counts_properties():
    ds = Dataset(tuples=(), provenance="empty")
    assert ds.n_action == 0 and ds.n_no_action == 0
