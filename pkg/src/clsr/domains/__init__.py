"""Bundled task domains and the registry used by the CLI and service."""

from __future__ import annotations

from . import boxpack, burger
from .base import ActionRule, DomainModel, State

_FACTORIES = {
    "burger": burger.make_domain,
    "box-packing": boxpack.make_domain,
}


def domain_names() -> list[str]:
    return sorted(_FACTORIES)


def get_domain(name: str) -> DomainModel:
    """Instantiate a bundled domain by name, or load a JSON definition file
    when ``name`` points at an existing path."""
    factory = _FACTORIES.get(name)
    if factory is not None:
        return factory()
    import os

    if os.path.exists(name):
        return DomainModel.from_json_file(name)
    raise KeyError(f"unknown domain {name!r}; available: {', '.join(domain_names())}")


__all__ = ["ActionRule", "DomainModel", "State", "domain_names", "get_domain"]
