import pytest
from hypothesis import settings

from clsr import ExactAbstraction, build_lsr, build_plsr, cluster, generate
from clsr.domains import get_domain

settings.register_profile("ci", derandomize=True)
settings.load_profile("ci")

BURGER_SEED = 7
BOX_SEED = 11


@pytest.fixture(scope="session")
def burger_domain():
    return get_domain("burger")


@pytest.fixture(scope="session")
def box_domain():
    return get_domain("box-packing")


@pytest.fixture(scope="session")
def burger_dataset(burger_domain):
    return generate(burger_domain, 5000, 0.58, seed=BURGER_SEED)


@pytest.fixture(scope="session")
def box_dataset(box_domain):
    return generate(box_domain, 900, 0.54, seed=BOX_SEED)


@pytest.fixture(scope="session")
def burger_abstraction(burger_domain):
    return ExactAbstraction(burger_domain.state_key)


@pytest.fixture(scope="session")
def box_abstraction(box_domain):
    return ExactAbstraction(box_domain.state_key)


@pytest.fixture(scope="session")
def burger_roadmap(burger_dataset, burger_abstraction):
    """Burger roadmap with base and parallel layers built."""
    cmap = cluster(burger_dataset, burger_abstraction)
    roadmap = build_plsr(build_lsr(cmap, burger_dataset))
    roadmap.meta["domain"] = "burger"
    return roadmap


@pytest.fixture(scope="session")
def box_roadmap(box_dataset, box_abstraction):
    cmap = cluster(box_dataset, box_abstraction)
    roadmap = build_plsr(build_lsr(cmap, box_dataset))
    roadmap.meta["domain"] = "box-packing"
    return roadmap


@pytest.fixture(scope="session")
def burger_agents(burger_domain):
    return {a.id: a for a in burger_domain.default_agents()}


@pytest.fixture(scope="session")
def box_agents(box_domain):
    return {a.id: a for a in box_domain.default_agents()}


FULL_BURGER_SEQUENCE = [
    "place_bun_bottom", "slice_cheese", "slice_lettuce", "move_patty_to_pan",
    "grill_patty", "move_patty_to_plate", "move_cheese_to_plate",
    "move_lettuce_to_plate", "place_bun_top",
]


@pytest.fixture(scope="session")
def full_burger_goal(burger_domain):
    state = burger_domain.initial_states()[0]
    for label in FULL_BURGER_SEQUENCE:
        state = burger_domain.step(state, label)
        assert state is not None
    return state


FULL_BOX_SEQUENCE = [
    "pack_chocolate", "pack_mandarin", "pack_juice", "pack_granola", "close_cover",
]


@pytest.fixture(scope="session")
def packed_box_goal(box_domain):
    state = box_domain.initial_states()[0]
    for label in FULL_BOX_SEQUENCE:
        state = box_domain.step(state, label)
        assert state is not None
    return state
