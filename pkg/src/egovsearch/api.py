"""HTTP gateway: a thin JSON layer over the engine.

Every endpoint lives under /api/v1. Errors use a uniform {code, message}
body: 400 for malformed input, 404 for unknown ids, 409 for id conflicts.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse

from .catalog import record_from_obj, record_to_obj
from .engine import Engine
from .errors import EmptyQuery, EngineError, OversizedQuery, SchemaError, UnknownServiceId
from .reformulate import MAX_QUERY_CHARS


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"code": code, "message": message})


def create_app(engine: Engine) -> FastAPI:
    app = FastAPI(title="egovsearch", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(request: Request, exc: RequestValidationError):
        return _error(400, "bad-request", str(exc.errors()[0].get("msg", "invalid request")))

    @app.exception_handler(EngineError)
    async def on_engine_error(request: Request, exc: EngineError):
        if isinstance(exc, UnknownServiceId):
            return _error(404, "unknown-service", str(exc))
        if isinstance(exc, (EmptyQuery, OversizedQuery, SchemaError)):
            return _error(400, "bad-request", str(exc))
        return _error(400, "bad-request", str(exc))

    @app.get("/api/v1/healthz")
    @app.get("/healthz")
    async def healthz():
        return PlainTextResponse("ok")

    @app.get("/api/v1/search")
    async def search(q: str = "", lang: str | None = None, user: str | None = None, k: int | None = None):
        if not q.strip():
            return _error(400, "empty-query", "query parameter q must be non-empty")
        if len(q.strip()) > MAX_QUERY_CHARS:
            return _error(400, "oversized-query", f"query exceeds {MAX_QUERY_CHARS} characters")
        return engine.search(q, lang=lang, user=user, k=k)

    @app.post("/api/v1/feedback", status_code=204)
    async def feedback(body: dict):
        user = body.get("user")
        service_id = body.get("service_id")
        if not isinstance(user, str) or not user or not isinstance(service_id, str) or not service_id:
            return _error(400, "bad-request", "body must carry non-empty 'user' and 'service_id'")
        query = body.get("query")
        if query is not None and not isinstance(query, str):
            return _error(400, "bad-request", "'query' must be a string when present")
        engine.feedback(user, service_id, query=query)
        return PlainTextResponse(status_code=204, content="")

    @app.get("/api/v1/recommendations")
    async def recommendations(user: str = "", k: int | None = None):
        if not user:
            return _error(400, "bad-request", "query parameter user must be non-empty")
        return engine.recommendations(user, k=k)

    @app.get("/api/v1/services/{service_id}")
    async def get_service(service_id: str):
        return record_to_obj(engine.get_service(service_id))

    @app.put("/api/v1/services/{service_id}")
    async def put_service(service_id: str, body: dict):
        record = record_from_obj(body, where="request body")
        if record.id != service_id:
            return _error(409, "id-conflict", f"body id {record.id!r} does not match path id {service_id!r}")
        created = engine.put_service(record)
        return JSONResponse(status_code=201 if created else 200, content=record_to_obj(record))

    @app.delete("/api/v1/services/{service_id}", status_code=204)
    async def delete_service(service_id: str):
        engine.delete_service(service_id)
        return PlainTextResponse(status_code=204, content="")

    @app.get("/api/v1/ontology/expand")
    async def expand(term: str = "", lang: str = ""):
        if not term or not lang:
            return _error(400, "bad-request", "query parameters term and lang are required")
        return engine.expand_surface(term, lang)

    return app
