"""HTTP API: FastAPI app over the codec library."""

from .app import app, create_app

__all__ = ["app", "create_app"]
