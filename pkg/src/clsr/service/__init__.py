"""HTTP service wrapping the planning pipeline; the CLI shares its ops layer."""

from .app import create_app

__all__ = ["create_app"]
