"""Burger cooking task: five ingredients assembled on a center plate.

Geometry (meters): the work table is 1.4 x 0.8 with its surface at z = 0.9;
the pan hangs at z = 1.2. Station coordinates are a reconstruction calibrated
so that both robots (reach 1.5, bases at the long-side midpoints) can operate
at every station while humans (reach 5.0) reach everything with ease.

Assembly ordering: the bottom bun opens the plate, fillings (grilled patty,
sliced cheese, sliced lettuce) go on in any order, and the top bun closes the
burger once all three fillings are placed. The closing rule is what keeps
every co-feasible action set order-independent: actions on distinct
ingredients never invalidate each other's guards.
"""

from __future__ import annotations

from .base import DomainModel, State

PLATE = [0.70, 0.40, 0.90]
PATTY_COUNTER = [0.20, 0.20, 0.90]
PAN = [1.10, 0.40, 1.20]
CHEESE_BOARD = [0.35, 0.60, 0.90]
LETTUCE_BOARD = [1.05, 0.60, 0.90]
BUN_BOTTOM_SLOT = [0.30, 0.40, 0.90]
BUN_TOP_SLOT = [1.15, 0.15, 0.90]

DEFINITION = {
    "name": "burger",
    "objects": {
        "patty": {"at": "counter", "cooked": False},
        "cheese": {"at": "counter", "sliced": False},
        "lettuce": {"at": "counter", "sliced": False},
        "bun_bottom": {"at": "counter"},
        "bun_top": {"at": "counter"},
    },
    "actions": [
        {
            "label": "move_patty_to_pan",
            "skills": ["grip"],
            "workload_class": "pick_place",
            "poses": [
                {"role": "pick", "position": PATTY_COUNTER},
                {"role": "place", "position": PAN},
            ],
            "pre": {"patty.at": "counter"},
            "post": {"patty.at": "pan"},
        },
        {
            "label": "grill_patty",
            "skills": ["grill"],
            "workload_class": "grill",
            "poses": [{"role": "tool", "position": PAN}],
            "pre": {"patty.at": "pan", "patty.cooked": False},
            "post": {"patty.cooked": True},
        },
        {
            "label": "move_patty_to_plate",
            "skills": ["grip"],
            "workload_class": "pick_place",
            "poses": [
                {"role": "pick", "position": PAN},
                {"role": "place", "position": PLATE},
            ],
            "pre": {
                "patty.at": "pan",
                "patty.cooked": True,
                "bun_bottom.at": "plate",
                "bun_top.at": "counter",
            },
            "post": {"patty.at": "plate"},
        },
        {
            "label": "slice_cheese",
            "skills": ["cut"],
            "workload_class": "slice",
            "poses": [{"role": "tool", "position": CHEESE_BOARD}],
            "pre": {"cheese.at": "counter", "cheese.sliced": False},
            "post": {"cheese.sliced": True},
        },
        {
            "label": "move_cheese_to_plate",
            "skills": ["grip"],
            "workload_class": "pick_place",
            "poses": [
                {"role": "pick", "position": CHEESE_BOARD},
                {"role": "place", "position": PLATE},
            ],
            "pre": {
                "cheese.at": "counter",
                "cheese.sliced": True,
                "bun_bottom.at": "plate",
                "bun_top.at": "counter",
            },
            "post": {"cheese.at": "plate"},
        },
        {
            "label": "slice_lettuce",
            "skills": ["cut"],
            "workload_class": "slice",
            "poses": [{"role": "tool", "position": LETTUCE_BOARD}],
            "pre": {"lettuce.at": "counter", "lettuce.sliced": False},
            "post": {"lettuce.sliced": True},
        },
        {
            "label": "move_lettuce_to_plate",
            "skills": ["grip"],
            "workload_class": "pick_place",
            "poses": [
                {"role": "pick", "position": LETTUCE_BOARD},
                {"role": "place", "position": PLATE},
            ],
            "pre": {
                "lettuce.at": "counter",
                "lettuce.sliced": True,
                "bun_bottom.at": "plate",
                "bun_top.at": "counter",
            },
            "post": {"lettuce.at": "plate"},
        },
        {
            "label": "place_bun_bottom",
            "skills": ["grip"],
            "workload_class": "pick_place",
            "poses": [
                {"role": "pick", "position": BUN_BOTTOM_SLOT},
                {"role": "place", "position": PLATE},
            ],
            "pre": {"bun_bottom.at": "counter"},
            "post": {"bun_bottom.at": "plate"},
        },
        {
            "label": "place_bun_top",
            "skills": ["grip"],
            "workload_class": "pick_place",
            "poses": [
                {"role": "pick", "position": BUN_TOP_SLOT},
                {"role": "place", "position": PLATE},
            ],
            "pre": {
                "bun_top.at": "counter",
                "bun_bottom.at": "plate",
                "patty.at": "plate",
                "cheese.at": "plate",
                "lettuce.at": "plate",
            },
            "post": {"bun_top.at": "plate"},
        },
    ],
    "nuisance": {
        "lighting": ["uniform", 0.6, 1.4],
        "scale": ["uniform", 0.9, 1.1],
        "jitter": ["normal", 0.01, 3],
    },
    # Two robots at the long-side midpoints, two humans standing off-table.
    # Robots grip and cut but cannot grill; humans do everything at a higher
    # workload (1.0 vs 0.5 for r1 and 0.3 for r2, uniform across actions).
    "agents": [
        {"id": "r1", "skills": ["grip", "cut"], "base": [0.70, 0.00, 0.90],
         "max_reach": 1.5, "workloads": {}, "default_workload": 0.5},
        {"id": "r2", "skills": ["grip", "cut"], "base": [0.70, 0.80, 0.90],
         "max_reach": 1.5, "workloads": {}, "default_workload": 0.3},
        {"id": "h1", "skills": ["grip", "cut", "grill"], "base": [0.20, -0.50, 0.90],
         "max_reach": 5.0, "workloads": {}, "default_workload": 1.0},
        {"id": "h2", "skills": ["grip", "cut", "grill"], "base": [1.20, 1.30, 0.90],
         "max_reach": 5.0, "workloads": {}, "default_workload": 1.0},
    ],
}

_LAYER_COLORS = {
    "bun_bottom": "#e0a75e",
    "lettuce": "#7bbf5e",
    "patty_raw": "#c97b7b",
    "patty_cooked": "#7a4a2b",
    "cheese": "#f2c744",
    "bun_top": "#e8b96a",
}


def draw(state: State) -> str:
    """Side-view sketch of the plate stack and the side stations."""
    parts = ['<svg xmlns="http://www.w3.org/2000/svg" width="280" height="200" viewBox="0 0 280 200">']
    parts.append('<rect x="0" y="150" width="280" height="8" fill="#9a8f80"/>')  # table
    parts.append('<ellipse cx="140" cy="150" rx="52" ry="7" fill="#f5f5f5" stroke="#bbb"/>')
    y = 144
    stack = []
    if state["bun_bottom"]["at"] == "plate":
        stack.append("bun_bottom")
    for name in ("lettuce", "patty", "cheese"):
        if state[name]["at"] == "plate":
            stack.append("patty_cooked" if name == "patty" else name)
    if state["bun_top"]["at"] == "plate":
        stack.append("bun_top")
    for layer in stack:
        y -= 12
        parts.append(f'<rect x="104" y="{y}" width="72" height="11" rx="5" fill="{_LAYER_COLORS[layer]}"/>')
    # side items not yet on the plate
    x = 10
    for name in ("patty", "cheese", "lettuce", "bun_bottom", "bun_top"):
        if state[name]["at"] == "plate":
            continue
        color = _LAYER_COLORS["patty_cooked" if name == "patty" and state["patty"]["cooked"]
                              else "patty_raw" if name == "patty" else name]
        label = name
        if name == "patty":
            label += ":pan" if state["patty"]["at"] == "pan" else ""
        elif name in ("cheese", "lettuce") and state[name]["sliced"]:
            label += ":sliced"
        parts.append(f'<rect x="{x}" y="168" width="16" height="10" fill="{color}"/>')
        parts.append(f'<text x="{x}" y="192" font-size="8">{label}</text>')
        x += 54
    parts.append("</svg>")
    return "".join(parts)


def make_domain() -> DomainModel:
    return DomainModel.from_definition(DEFINITION, drawer=draw)
