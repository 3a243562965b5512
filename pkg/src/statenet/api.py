"""HTTP API: gossip pull surface, client reads, operator publishing, UI assets.

The node is itself a publishing domain, so it serves its own statements under
/.well-known/ exactly like any organization website would.
"""

from __future__ import annotations

from datetime import datetime, timezone
from pathlib import Path

from fastapi import Body, FastAPI, Header, HTTPException, Query, Response
from fastapi.responses import JSONResponse, PlainTextResponse, RedirectResponse
from fastapi.staticfiles import StaticFiles

from . import content as typed
from .errors import NotAPoll, ProtocolError
from .format import format_timestamp, hash_statement, parse_timestamp
from .node import Node
from .views import SCHEMA_VERSION, assessment_json, feed_entry, tally_json

TEXT_PLAIN_UTF8 = "text/plain; charset=utf-8"


def create_app(
    node: Node,
    *,
    operator_token: str = "",
    ui_dir: str | Path | None = None,
) -> FastAPI:
    app = FastAPI(title="statenet node", docs_url=None, redoc_url=None)

    def require_operator(authorization: str | None) -> None:
        if not operator_token:
            raise HTTPException(403, "publishing is disabled: no operator token configured")
        if authorization != f"Bearer {operator_token}":
            raise HTTPException(401, "missing or invalid operator token")

    @app.get("/api/info")
    def info() -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "domain": node.own_domain,
            "statements": node.store.count(),
            "max_id": node.store.max_id(),
            "peers": len(node.store.list_peers()),
        }

    @app.get("/api/statements")
    def statements(min_id: int = Query(0, ge=0), limit: int = Query(500, ge=1)) -> dict:
        batch = node.serve_pull(min_id, limit)
        return {
            "schema_version": SCHEMA_VERSION,
            "statements": [{"id": i, "text": t} for i, t in batch],
            "max_id": node.store.max_id(),
        }

    @app.get("/api/statements/{statement_hash}")
    def statement_by_hash(statement_hash: str) -> Response:
        record = node.store.get_by_hash(statement_hash)
        if record is None:
            raise HTTPException(404, "unknown statement hash")
        return PlainTextResponse(record.text, media_type=TEXT_PLAIN_UTF8)

    @app.get("/api/feed")
    def feed(
        type: str | None = None,
        domain: str | None = None,
        tag: str | None = None,
        limit: int = Query(200, ge=1, le=1000),
    ) -> dict:
        records = node.feed(kind=type, domain=domain, tag=tag, limit=limit)
        return {
            "schema_version": SCHEMA_VERSION,
            "statements": [feed_entry(r) for r in records],
        }

    @app.get("/api/trust/{domain}")
    def trust_assessment(domain: str) -> dict:
        return assessment_json(node.trust_assessment(domain))

    @app.get("/api/polls")
    def poll_index() -> dict:
        polls = []
        for record in node.effective_records():
            if record.content_kind != typed.Poll.TYPE_LABEL:
                continue
            poll = typed.parse_content(record.parsed.content)
            polls.append(
                {
                    "hash": record.hash,
                    "publishing_domain": record.publishing_domain,
                    "question": poll.question,
                    "options": list(poll.options),
                    "voting_deadline": format_timestamp(poll.voting_deadline),
                }
            )
        return {"schema_version": SCHEMA_VERSION, "polls": polls}

    @app.get("/api/polls/{poll_hash}/tally")
    def poll_tally(poll_hash: str) -> dict:
        try:
            tally = node.poll_tally(poll_hash)
        except KeyError:
            raise HTTPException(404, "unknown poll hash") from None
        except NotAPoll as exc:
            raise HTTPException(400, str(exc)) from None
        return tally_json(tally)

    @app.post("/api/preview")
    def preview(payload: dict = Body(...)) -> dict:
        kind = payload.get("kind") or payload.get("type")
        envelope = payload.get("envelope") or {}
        fields = payload.get("fields") or {}
        if not isinstance(kind, str) or not isinstance(envelope, dict) or not isinstance(fields, dict):
            raise HTTPException(422, "expected {kind, envelope, fields}")
        try:
            moment = (
                parse_timestamp(envelope["time"])
                if envelope.get("time")
                else datetime.now(timezone.utc).replace(microsecond=0)
            )
            tags = envelope.get("tags") or ()
            if isinstance(tags, str):
                tags = tuple(t.strip() for t in tags.split(",") if t.strip())
            text = typed.build_statement(
                domain=envelope.get("domain") or node.own_domain,
                author=envelope.get("author") or "",
                content=typed.content_from_fields(kind, fields),
                time=moment,
                tags=tuple(tags),
                representative=envelope.get("representative") or None,
                superseded=envelope.get("superseded") or None,
            )
        except ProtocolError as exc:
            raise HTTPException(422, str(exc)) from None
        return {
            "schema_version": SCHEMA_VERSION,
            "text": text,
            "hash": hash_statement(text),
        }

    @app.post("/api/publish")
    def publish(
        payload: dict = Body(...),
        authorization: str | None = Header(default=None),
    ) -> JSONResponse:
        require_operator(authorization)
        text = payload.get("text")
        if not isinstance(text, str):
            raise HTTPException(422, "expected {text: <canonical statement text>}")
        result = node.publish_local(text)
        if result.outcome == "rejected":
            raise HTTPException(422, result.reason or "rejected")
        return JSONResponse(
            {
                "schema_version": SCHEMA_VERSION,
                "outcome": result.outcome,
                "hash": result.hash,
                "id": result.local_id,
            },
            status_code=201 if result.outcome == "stored" else 200,
        )

    @app.get("/.well-known/statements.txt")
    def own_statements() -> Response:
        text = node.own_statements_text()
        body = text + "\n" if text else ""
        return PlainTextResponse(body, media_type=TEXT_PLAIN_UTF8)

    @app.get("/.well-known/statements/{statement_hash}.txt")
    def own_statement_by_hash(statement_hash: str) -> Response:
        if statement_hash not in node.store.own_hashes():
            raise HTTPException(404, "not published by this node")
        record = node.store.get_by_hash(statement_hash)
        if record is None:
            raise HTTPException(404, "not published by this node")
        return PlainTextResponse(record.text, media_type=TEXT_PLAIN_UTF8)

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/ui", StaticFiles(directory=str(ui_dir), html=True), name="ui")

        @app.get("/")
        def root() -> RedirectResponse:
            return RedirectResponse("/ui/")

    return app
