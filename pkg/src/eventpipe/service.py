"""Stateless HTTP annotation service.

Endpoints: POST /annotate, GET /domains, GET /examples.  Every response
carries a version field.  Requests are independent; backends are shared
read-only, so concurrent handling is safe with the deterministic defaults.
"""

from __future__ import annotations

import os
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from . import __version__
from .pipeline import AnnotateOptions, PipelineError, annotate
from .registry import BackendRegistry, UnknownDomainError, default_registry
from .serialize import result_to_dict

DEFAULT_MAX_TEXT_CHARS = 20_000


class AnnotateRequest(BaseModel, extra="forbid"):
    text: str
    domain: str = "news"
    trigger_threshold: float = Field(default=0.5, gt=0.0, lt=1.0)
    max_sentence_gap: Optional[int] = Field(default=None, ge=0)
    decoder: str = "greedy"


def create_app(
    registry: Optional[BackendRegistry] = None,
    max_text_chars: int = DEFAULT_MAX_TEXT_CHARS,
) -> FastAPI:
    registry = registry or default_registry()
    app = FastAPI(title="eventpipe annotation service", version=__version__)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.post("/annotate")
    def handle_annotate(request: AnnotateRequest):
        if len(request.text) > max_text_chars:
            raise HTTPException(
                status_code=413,
                detail=f"text has {len(request.text)} characters; limit is {max_text_chars}",
            )
        options = AnnotateOptions(
            trigger_threshold=request.trigger_threshold,
            max_sentence_gap=request.max_sentence_gap,
            decoder=request.decoder,
        )
        try:
            result = annotate(request.text, request.domain, registry, options)
        except UnknownDomainError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        except PipelineError as exc:
            raise HTTPException(status_code=500, detail=str(exc)) from exc
        return {
            "version": __version__,
            "domain": request.domain,
            "result": result_to_dict(result),
        }

    @app.get("/domains")
    def handle_domains():
        return {"version": __version__, "domains": list(registry.domains())}

    @app.get("/examples")
    def handle_examples(domain: str = "news"):
        try:
            backends = registry.get(domain)
        except UnknownDomainError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return {
            "version": __version__,
            "domain": domain,
            "examples": list(backends.examples),
        }

    return app


def serve(
    registry: Optional[BackendRegistry] = None,
    host: str = "127.0.0.1",
    port: Optional[int] = None,
    max_text_chars: int = DEFAULT_MAX_TEXT_CHARS,
):
    """Run the service with uvicorn; EVENTPIPE_PORT overrides the port."""
    import uvicorn

    if port is None:
        port = int(os.environ.get("EVENTPIPE_PORT", "8000"))
    uvicorn.run(create_app(registry, max_text_chars), host=host, port=port)
