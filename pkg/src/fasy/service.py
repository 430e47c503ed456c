"""HTTP face of the workflow: a versioned /v1 JSON API plus image endpoints.

Canonical image bytes are PGM; `?format=png` (or an Accept header preferring
image/png) returns a losslessly re-encoded PNG for browsers.  Errors use one
envelope: {code, message, detail} with detail naming the slot or attribute.
"""
from __future__ import annotations

import json
import struct
import zlib
from typing import Any, Mapping

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse

from .assembly import Layout, LayoutOverride, Slot
from .blending import PlacementMode
from .catalog import Catalog, ComponentRecord, open_catalog
from .errors import (
    FasyError,
    IncompleteSelection,
    InvalidRequest,
    MalformedImage,
    MissingImage,
    NegativePosition,
    NotACandidate,
    OutOfCanvas,
    SchemaViolation,
    SessionFinalized,
    UnknownRecord,
    UnknownSession,
)
from .imaging import GrayImage, write_pgm
from .schema import ComponentKind, parse_kind, schema_as_dict, validate_face_query
from .session import Preview, Session, SessionState, Workflow

PGM_MEDIA_TYPE = "image/x-portable-graymap"

_NOT_FOUND = (UnknownSession, UnknownRecord, MissingImage)
_CONFLICT = (NotACandidate, IncompleteSelection, SessionFinalized,
             NegativePosition, OutOfCanvas)
_UNPROCESSABLE = (SchemaViolation, MalformedImage, InvalidRequest)


def _status_for(exc: FasyError) -> int:
    if isinstance(exc, _NOT_FOUND):
        return 404
    if isinstance(exc, _CONFLICT):
        return 409
    if isinstance(exc, _UNPROCESSABLE):
        return 422
    return 500


def encode_png(img: GrayImage) -> bytes:
    """Lossless 8-bit grayscale PNG (filter 0 on every scanline)."""

    def chunk(tag: bytes, data: bytes) -> bytes:
        return (struct.pack(">I", len(data)) + tag + data
                + struct.pack(">I", zlib.crc32(tag + data)))

    header = struct.pack(">IIBBBBB", img.cols, img.rows, 8, 0, 0, 0, 0)
    raw = b"".join(b"\x00" + img.row(r) for r in range(img.rows))
    return (b"\x89PNG\r\n\x1a\n"
            + chunk(b"IHDR", header)
            + chunk(b"IDAT", zlib.compress(raw, 9))
            + chunk(b"IEND", b""))


def _image_response(img_bytes: bytes, img: GrayImage, request: Request) -> Response:
    fmt = request.query_params.get("format", "").lower()
    accept = request.headers.get("accept", "")
    if fmt == "png" or (not fmt and "image/png" in accept):
        return Response(content=encode_png(img), media_type="image/png")
    if fmt not in ("", "pgm"):
        raise InvalidRequest(f"unsupported image format {fmt!r}")
    return Response(content=img_bytes, media_type=PGM_MEDIA_TYPE)


def _require_mapping(obj: Any, what: str) -> Mapping:
    if not isinstance(obj, Mapping):
        raise InvalidRequest(f"{what} must be a JSON object")
    return obj


def _parse_query_body(body: Any) -> dict[ComponentKind, dict[str, str]]:
    query: dict[ComponentKind, dict[str, str]] = {}
    for kind_name, attrs in _require_mapping(body, "query body").items():
        kind = parse_kind(str(kind_name))
        attrs = _require_mapping(attrs, f"attributes for {kind.value}")
        query[kind] = {str(k): str(v) for k, v in attrs.items()}
    validate_face_query(query)
    return query


def _parse_override_body(body: Any) -> LayoutOverride:
    deltas: dict[Slot, tuple[int, int]] = {}
    for slot_name, delta in _require_mapping(body, "adjust body").items():
        try:
            slot = Slot(str(slot_name))
        except ValueError:
            raise InvalidRequest(f"unknown slot {slot_name!r}", slot=str(slot_name))
        delta = _require_mapping(delta, f"delta for {slot.value}")
        unknown = set(delta) - {"drow", "dcol"}
        if unknown:
            raise InvalidRequest(
                f"unknown delta fields for {slot.value}: {sorted(unknown)}",
                slot=slot.value)
        try:
            drow = int(delta.get("drow", 0))
            dcol = int(delta.get("dcol", 0))
        except (TypeError, ValueError):
            raise InvalidRequest(f"delta for {slot.value} must be integers",
                                 slot=slot.value)
        deltas[slot] = (drow, dcol)
    return LayoutOverride.of(deltas)


def _parse_mode(value: Any) -> PlacementMode:
    if value is None:
        return PlacementMode.TUNED
    try:
        return PlacementMode(str(value).lower())
    except ValueError:
        raise InvalidRequest(f"unknown placement mode {value!r}")


def _candidate_view(record: ComponentRecord) -> dict:
    return {
        "id": record.id,
        "kind": record.kind.value,
        "attributes": dict(record.attributes),
        "image_url": f"/v1/components/{record.id}/image",
    }


def _layout_view(layout: Layout) -> dict:
    view = {"anchor": {"row": layout.anchor.row, "col": layout.anchor.col}}
    for slot, pos in layout.positions().items():
        view[slot.value] = {"row": pos.row, "col": pos.col}
    return view


def _preview_view(session: Session, preview: Preview) -> dict:
    return {
        "session_id": session.id,
        "state": session.state.value,
        "mode": preview.mode.value,
        "layout": _layout_view(preview.layout),
        "image_url": f"/v1/sessions/{session.id}/preview/image",
    }


def _session_view(session: Session) -> dict:
    with session.lock:
        selections = {kind.value: session.selections.get(kind)
                      for kind in ComponentKind}
        overrides = {
            slot.value: {"drow": d[0], "dcol": d[1]}
            for slot in Slot
            if (d := session.overrides.delta(slot)) != (0, 0)
        }
        view = {
            "session_id": session.id,
            "state": session.state.value,
            "query": ({kind.value: dict(attrs)
                       for kind, attrs in session.query.items()}
                      if session.query is not None else None),
            "candidates": {kind.value: list(ids)
                           for kind, ids in session.candidates.items()},
            "selections": selections,
            "overrides": overrides,
            "preview": (_preview_view(session, session.last_preview)
                        if session.last_preview is not None else None),
            "face_id": session.face_id,
        }
    return view


def create_app(catalog: Catalog | str, *, workflow: Workflow | None = None) -> FastAPI:
    """Build the API app over a catalog root path or an open catalog."""
    if workflow is None:
        if isinstance(catalog, str):
            catalog = open_catalog(catalog)
        workflow = Workflow(catalog)

    app = FastAPI(title="fasy", docs_url=None, redoc_url=None, openapi_url=None)
    app.state.workflow = workflow

    @app.exception_handler(FasyError)
    async def fasy_error(_request: Request, exc: FasyError) -> JSONResponse:
        return JSONResponse(
            status_code=_status_for(exc),
            content={"code": exc.code, "message": str(exc), "detail": exc.detail()},
        )

    @app.post("/v1/sessions")
    def create_session() -> dict:
        session = workflow.create_session()
        return {"session_id": session.id, "state": session.state.value}

    @app.get("/v1/sessions/{session_id}")
    def get_session(session_id: str) -> dict:
        return _session_view(workflow.session(session_id))

    @app.get("/v1/schema")
    def get_schema() -> dict:
        return schema_as_dict()

    @app.post("/v1/sessions/{session_id}/query")
    async def submit_query(session_id: str, request: Request) -> dict:
        body = await _json_body(request)
        query = _parse_query_body(body)
        results = workflow.submit_query(session_id, query)
        session = workflow.session(session_id)
        return {
            "session_id": session_id,
            "state": session.state.value,
            "candidates": {
                kind.value: [_candidate_view(rec) for rec in recs]
                for kind, recs in results.items()
            },
        }

    @app.post("/v1/sessions/{session_id}/select")
    async def select_component(session_id: str, request: Request) -> dict:
        body = _require_mapping(await _json_body(request), "select body")
        if "kind" not in body or "record_id" not in body:
            raise InvalidRequest("select body needs kind and record_id")
        kind = parse_kind(str(body["kind"]))
        try:
            record_id = int(body["record_id"])
        except (TypeError, ValueError):
            raise InvalidRequest("record_id must be an integer")
        selections = workflow.select_component(session_id, kind, record_id)
        session = workflow.session(session_id)
        return {
            "session_id": session_id,
            "state": session.state.value,
            "selections": {kind.value: selections.get(kind)
                           for kind in ComponentKind},
        }

    @app.post("/v1/sessions/{session_id}/preview")
    async def generate_preview(session_id: str, request: Request) -> dict:
        body = _require_mapping(await _json_body(request, default={}), "preview body")
        mode = _parse_mode(body.get("mode"))
        preview = workflow.generate_preview(session_id, mode)
        return _preview_view(workflow.session(session_id), preview)

    @app.post("/v1/sessions/{session_id}/adjust")
    async def adjust_placement(session_id: str, request: Request) -> dict:
        delta = _parse_override_body(await _json_body(request))
        preview = workflow.adjust_placement(session_id, delta)
        return _preview_view(workflow.session(session_id), preview)

    @app.post("/v1/sessions/{session_id}/finalize")
    def finalize(session_id: str) -> dict:
        face_id = workflow.finalize(session_id)
        return {
            "session_id": session_id,
            "state": SessionState.FINALIZED.value,
            "face_id": face_id,
            "image_url": f"/v1/faces/{face_id}/image",
        }

    @app.get("/v1/components/{record_id}/image")
    def component_image(record_id: int, request: Request) -> Response:
        img_bytes = workflow.catalog.image_bytes(record_id)
        img = workflow.catalog.image(record_id)
        return _image_response(img_bytes, img, request)

    @app.get("/v1/sessions/{session_id}/preview/image")
    def preview_image(session_id: str, request: Request) -> Response:
        session = workflow.session(session_id)
        with session.lock:
            preview = session.last_preview
        if preview is None:
            raise InvalidRequest(f"session {session_id} has no preview")
        return _image_response(write_pgm(preview.image), preview.image, request)

    @app.get("/v1/faces/{face_id}/image")
    def face_image(face_id: int, request: Request) -> Response:
        workflow.catalog.face(face_id)  # 404 unless the id is a generated face
        img = workflow.catalog.image(face_id)
        return _image_response(write_pgm(img), img, request)

    return app


async def _json_body(request: Request, default: Any = None) -> Any:
    raw = await request.body()
    if not raw:
        if default is not None:
            return default
        raise InvalidRequest("request body required")
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InvalidRequest(f"body is not valid JSON: {exc}")
