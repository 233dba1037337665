"""HTTP/JSON API over the engine, serving the annotation frontend.

Every mutation maps to exactly one trace-store operation; GETs are
side-effect free. Errors are returned as ``{"code": ..., "message": ...}``
with status 400/404/409/422.
"""

from __future__ import annotations

from dataclasses import asdict

from fastapi import FastAPI, Query, Request
from fastapi.responses import JSONResponse, Response
from pydantic import BaseModel, Field

from .engine import Engine
from .errors import (
    ConflictError,
    InvalidArgumentError,
    NotFoundError,
    TaxoTraceError,
)
from .recommender import RecommenderSettings, Suggestion
from .taxonomy import Concept, ancestors, search_concepts

_STATUS = {
    "invalid-argument": 400,
    "not-found": 404,
    "conflict": 409,
}


class DecisionBody(BaseModel):
    unit_id: str
    concept_id: str
    decision: str = Field(pattern="^(accept|reject)$")
    confidence: float = 0.0


class LinkBody(BaseModel):
    unit_id: str
    concept_id: str


class SettingsBody(BaseModel):
    threshold: float
    max_rejects: int
    top_k: int


def _concept_json(engine: Engine, concept: Concept) -> dict:
    return {
        "id": concept.id,
        "code": concept.code,
        "pref_label": concept.pref_label,
        "alt_labels": sorted(concept.alt_labels),
        "definition": concept.definition,
        "parent": concept.parent,
        "ancestors": [
            {"id": a.id, "pref_label": a.pref_label, "code": a.code}
            for a in ancestors(engine.taxonomy, concept.id)
        ],
    }


def _suggestion_json(engine: Engine, s: Suggestion) -> dict:
    concept = engine.taxonomy.concepts[s.concept_id]
    return {
        "unit_id": s.unit_id,
        "concept_id": s.concept_id,
        "confidence": s.confidence,
        "scores": s.scores,
        "evidence": [asdict(e) for e in s.evidence],
        "concept": _concept_json(engine, concept),
    }


def create_app(engine: Engine) -> FastAPI:
    app = FastAPI(title="taxotrace", docs_url=None, redoc_url=None)

    @app.exception_handler(TaxoTraceError)
    async def handle_error(_req: Request, exc: TaxoTraceError):
        status = _STATUS.get(exc.code, 500)
        return JSONResponse(
            status_code=status, content={"code": exc.code, "message": exc.message}
        )

    @app.get("/api/taxonomy/search")
    def taxonomy_search(q: str = Query(""), limit: int = Query(10)):
        matches = search_concepts(engine.taxonomy, q, limit)
        return [
            {"concept": _concept_json(engine, concept), "match_kind": kind}
            for concept, kind in matches
        ]

    @app.get("/api/taxonomy/concepts/{concept_id:path}")
    def taxonomy_concept(concept_id: str):
        return _concept_json(engine, engine.taxonomy.get(concept_id))

    @app.get("/api/units")
    def list_units():
        return [
            {"unit_id": u.unit_id, "doc_id": u.doc_id, "seq": u.seq, "text": u.text}
            for u in sorted(engine.units.values(), key=lambda u: (u.doc_id, u.seq))
        ]

    @app.get("/api/units/{unit_id:path}/suggestions")
    def unit_suggestions(
        unit_id: str,
        threshold: float | None = Query(None),
        top_k: int | None = Query(None),
    ):
        if threshold is not None and not 0.0 <= threshold <= 1.0:
            raise InvalidArgumentError("threshold must be in [0,1]")
        suggestions = engine.suggestions_for(unit_id, threshold=threshold, top_k=top_k)
        return [_suggestion_json(engine, s) for s in suggestions]

    @app.get("/api/units/{unit_id:path}")
    def get_unit(unit_id: str):
        unit = engine.units.get(unit_id)
        if unit is None:
            raise NotFoundError(f"unknown unit: {unit_id}")
        return {"unit_id": unit.unit_id, "doc_id": unit.doc_id, "seq": unit.seq, "text": unit.text}

    @app.post("/api/decisions")
    def post_decision(body: DecisionBody):
        engine.store.record_decision(
            body.unit_id, body.concept_id, body.decision, body.confidence
        )
        return {
            "unit_id": body.unit_id,
            "concept_id": body.concept_id,
            "decision": body.decision,
            "reject_count": engine.store.reject_count(body.unit_id, body.concept_id),
        }

    @app.post("/api/links", status_code=201)
    def post_link(body: LinkBody):
        link = engine.store.create_manual_link(body.unit_id, body.concept_id)
        return asdict(link)

    @app.delete("/api/links/{unit_id}/{concept_id:path}")
    def delete_link(unit_id: str, concept_id: str):
        engine.store.unlink(unit_id, concept_id)
        return {"unit_id": unit_id, "concept_id": concept_id, "deleted": True}

    @app.get("/api/links")
    def get_links(format: str = Query("jsonl")):
        payload = engine.store.export_links(format, engine.taxonomy)
        media = "text/csv" if format == "csv" else "application/x-ndjson"
        return Response(content=payload, media_type=media)

    @app.get("/api/settings")
    def get_settings():
        s = engine.settings
        return {"threshold": s.threshold, "max_rejects": s.max_rejects, "top_k": s.top_k}

    @app.put("/api/settings")
    def put_settings(body: SettingsBody):
        try:
            settings = RecommenderSettings(
                threshold=body.threshold, max_rejects=body.max_rejects, top_k=body.top_k
            )
        except InvalidArgumentError as exc:
            return JSONResponse(status_code=422, content={"code": exc.code, "message": exc.message})
        engine.update_settings(settings)
        return {"threshold": settings.threshold, "max_rejects": settings.max_rejects, "top_k": settings.top_k}

    return app


def serve(engine: Engine, listen: str) -> None:
    """Run the API with uvicorn; blocks until interrupted."""
    import uvicorn

    host, _, port = listen.rpartition(":")
    uvicorn.run(create_app(engine), host=host or "127.0.0.1", port=int(port))
