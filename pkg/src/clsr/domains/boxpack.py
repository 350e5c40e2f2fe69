"""Box packing task: four food items go into a box, then a cover closes it.

Geometry (meters): the box sits at (0.60, 0.00) on a table at z = 0.75. The
two arms are based at (0.0, +-0.35, 0.95) with reach 0.85, placed so each arm
reaches exactly its two closest items plus the box: the left arm (b1) reaches
the mandarin and the granola bar, the right arm (b2) the chocolate and the
juice. The cover can only be handled by the human, who stands past the far
table edge with effectively unlimited reach.

The catalog lists objects in the order chocolate, mandarin, juice, granola,
cover; canonical state keys follow this order, which makes node ids (ranks of
sorted keys) favor chocolate/mandarin progress under lexicographic
tie-breaking.
"""

from __future__ import annotations

from .base import DomainModel, State

BOX = [0.60, 0.00, 0.75]
CHOCOLATE = [0.45, -0.40, 0.75]
MANDARIN = [0.45, 0.40, 0.75]
JUICE = [0.75, -0.35, 0.75]
GRANOLA = [0.75, 0.35, 0.75]
COVER_SLOT = [1.00, 0.00, 0.75]

_ITEM_POSITIONS = {"chocolate": CHOCOLATE, "mandarin": MANDARIN, "juice": JUICE, "granola": GRANOLA}


def _pack_rule(item: str) -> dict:
    return {
        "label": f"pack_{item}",
        "skills": ["grip"],
        "workload_class": "pack",
        "poses": [
            {"role": "pick", "position": _ITEM_POSITIONS[item]},
            {"role": "place", "position": BOX},
        ],
        "pre": {f"{item}.at": "table", "cover.at": "table"},
        "post": {f"{item}.at": "box"},
    }


DEFINITION = {
    "name": "box-packing",
    "objects": {
        "chocolate": {"at": "table"},
        "mandarin": {"at": "table"},
        "juice": {"at": "table"},
        "granola": {"at": "table"},
        "cover": {"at": "table"},
    },
    "actions": [
        _pack_rule("chocolate"),
        _pack_rule("mandarin"),
        _pack_rule("juice"),
        _pack_rule("granola"),
        {
            "label": "close_cover",
            "skills": ["dexterous-manipulation"],
            "workload_class": "cover",
            "poses": [
                {"role": "pick", "position": COVER_SLOT},
                {"role": "place", "position": BOX},
            ],
            "pre": {
                "cover.at": "table",
                "chocolate.at": "box",
                "mandarin.at": "box",
                "juice.at": "box",
                "granola.at": "box",
            },
            "post": {"cover.at": "on"},
        },
    ],
    "nuisance": {
        "lighting": ["uniform", 0.7, 1.3],
        "jitter": ["normal", 0.008, 3],
    },
    # Baxter-style arms with gripping skills only; the human contributes the
    # dexterous manipulation needed for the cover. Workloads 0.5 / 0.5 / 1.0.
    "agents": [
        {"id": "b1", "skills": ["grip"], "base": [0.0, 0.35, 0.95],
         "max_reach": 0.85, "workloads": {}, "default_workload": 0.5},
        {"id": "b2", "skills": ["grip"], "base": [0.0, -0.35, 0.95],
         "max_reach": 0.85, "workloads": {}, "default_workload": 0.5},
        {"id": "h1", "skills": ["dexterous-manipulation"], "base": [1.30, 0.00, 0.90],
         "max_reach": 5.0, "workloads": {}, "default_workload": 1.0},
    ],
}

_COLORS = {"chocolate": "#6b4226", "mandarin": "#e8842c", "juice": "#b33939", "granola": "#b59b53"}


def draw(state: State) -> str:
    """Top-view sketch: the box, packed contents, and items still on the table."""
    parts = ['<svg xmlns="http://www.w3.org/2000/svg" width="240" height="160" viewBox="0 0 240 160">']
    parts.append('<rect x="0" y="0" width="240" height="160" fill="#d8cdbb"/>')  # table
    parts.append('<rect x="80" y="40" width="80" height="80" fill="#a9824f" stroke="#6e5430" stroke-width="3"/>')
    slots = {"chocolate": (86, 46), "mandarin": (124, 46), "juice": (86, 84), "granola": (124, 84)}
    table_spots = {"chocolate": (20, 120), "mandarin": (20, 20), "juice": (200, 120), "granola": (200, 20)}
    for item, color in _COLORS.items():
        x, y = slots[item] if state[item]["at"] == "box" else table_spots[item]
        parts.append(f'<rect x="{x}" y="{y}" width="30" height="30" fill="{color}"/>')
        parts.append(f'<text x="{x}" y="{y - 3}" font-size="8">{item}</text>')
    if state["cover"]["at"] == "on":
        parts.append('<rect x="76" y="36" width="88" height="88" fill="#8a6b3f" opacity="0.95"/>')
        parts.append('<text x="96" y="84" font-size="10" fill="#fff">closed</text>')
    else:
        parts.append('<rect x="190" y="60" width="40" height="40" fill="#8a6b3f"/>')
        parts.append('<text x="190" y="57" font-size="8">cover</text>')
    parts.append("</svg>")
    return "".join(parts)


def make_domain() -> DomainModel:
    return DomainModel.from_definition(DEFINITION, drawer=draw)
