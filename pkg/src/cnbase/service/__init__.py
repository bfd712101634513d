"""FastAPI service wrapping the core library.

``models`` defines the pydantic request/response schemas, ``handlers`` maps
requests to core calls (used both by the HTTP endpoints and by the CLI
in-process), and ``app`` exposes the endpoints.
"""

from .app import create_app  # noqa: F401
