"""Session workflow: query, browse, select, preview, nudge, finalize.

A session walks Querying -> Selecting -> Previewing -> Finalized; re-querying
drops back to Selecting, and changing a selection while Previewing does too
(the stale preview is discarded).  Requests within one session are serialized
by a per-session lock; distinct sessions never share mutable state.
"""
from __future__ import annotations

import enum
import threading
import uuid
from dataclasses import dataclass, field

from .assembly import Layout, LayoutOverride, Slot, ZERO_OVERRIDE
from .blending import PlacementMode
from .catalog import Catalog, ComponentRecord
from .compose import SLOT_KINDS, compose_face
from .errors import (
    IncompleteSelection,
    InvalidRequest,
    NotACandidate,
    SessionFinalized,
    UnknownRecord,
    UnknownSession,
)
from .imaging import GrayImage
from .schema import WILDCARD, ComponentKind, FaceQuery, validate_face_query


class SessionState(str, enum.Enum):
    QUERYING = "Querying"
    SELECTING = "Selecting"
    PREVIEWING = "Previewing"
    FINALIZED = "Finalized"

    def __str__(self) -> str:
        return self.value


@dataclass
class Preview:
    image: GrayImage
    layout: Layout
    mode: PlacementMode


@dataclass
class Session:
    id: str
    state: SessionState = SessionState.QUERYING
    query: dict[ComponentKind, dict[str, str]] | None = None
    candidates: dict[ComponentKind, tuple[int, ...]] = field(default_factory=dict)
    selections: dict[ComponentKind, int] = field(default_factory=dict)
    overrides: LayoutOverride = ZERO_OVERRIDE
    last_preview: Preview | None = None
    face_id: int | None = None
    lock: threading.RLock = field(default_factory=threading.RLock, repr=False)


class Workflow:
    """The engine behind the HTTP API; one instance per catalog."""

    def __init__(self, catalog: Catalog):
        self.catalog = catalog
        self._sessions: dict[str, Session] = {}
        self._registry_lock = threading.Lock()

    # session registry

    def create_session(self) -> Session:
        session = Session(id=uuid.uuid4().hex)
        with self._registry_lock:
            self._sessions[session.id] = session
        return session

    def session(self, session_id: str) -> Session:
        with self._registry_lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise UnknownSession(f"no session {session_id!r}")
        return session

    # workflow operations

    def submit_query(self, session_id: str,
                     query: FaceQuery) -> dict[ComponentKind, list[ComponentRecord]]:
        session = self.session(session_id)
        validate_face_query(query)
        with session.lock:
            self._reject_finalized(session)
            stored = {kind: dict(attrs) for kind, attrs in query.items()}
            results = {
                kind: self.catalog.match_components(kind, stored.get(kind, {}))
                for kind in ComponentKind
            }
            session.query = stored
            session.candidates = {
                kind: tuple(rec.id for rec in recs) for kind, recs in results.items()
            }
            # keep selections that survived the narrower query, drop the rest
            session.selections = {
                kind: rid for kind, rid in session.selections.items()
                if rid in session.candidates[kind]
            }
            session.last_preview = None
            session.state = SessionState.SELECTING
            return results

    def select_component(self, session_id: str, kind: ComponentKind,
                         record_id: int) -> dict[ComponentKind, int]:
        session = self.session(session_id)
        with session.lock:
            self._reject_finalized(session)
            record = self.catalog.component(record_id)  # UnknownRecord if absent
            if record.kind != kind:
                raise NotACandidate(
                    f"record {record_id} is a {record.kind.value}, not {kind.value}")
            if record_id not in session.candidates.get(kind, ()):
                raise NotACandidate(
                    f"record {record_id} was not in the candidate list for {kind.value}")
            session.selections[kind] = record_id
            if session.state == SessionState.PREVIEWING:
                session.last_preview = None
                session.state = SessionState.SELECTING
            return dict(session.selections)

    def generate_preview(self, session_id: str,
                         mode: PlacementMode = PlacementMode.TUNED) -> Preview:
        session = self.session(session_id)
        with session.lock:
            self._reject_finalized(session)
            self._require_complete(session)
            preview = self._compose(session, mode, session.overrides)
            session.last_preview = preview
            session.state = SessionState.PREVIEWING
            return preview

    def adjust_placement(self, session_id: str, delta: LayoutOverride) -> Preview:
        session = self.session(session_id)
        with session.lock:
            self._reject_finalized(session)
            if session.state != SessionState.PREVIEWING or session.last_preview is None:
                raise InvalidRequest("adjust requires an existing preview")
            combined = session.overrides.combined(delta)
            # compose first; only commit overrides and preview on success
            preview = self._compose(session, session.last_preview.mode, combined)
            session.overrides = combined
            session.last_preview = preview
            return preview

    def finalize(self, session_id: str) -> int:
        session = self.session(session_id)
        with session.lock:
            self._reject_finalized(session)
            if session.state != SessionState.PREVIEWING or session.last_preview is None:
                raise IncompleteSelection("finalize requires a generated preview")
            face_id = self.catalog.save_generated_face(
                session.last_preview.image,
                self._full_description(session),
                dict(session.selections),
                session.last_preview.layout,
                session.last_preview.mode.value,
            )
            session.face_id = face_id
            session.state = SessionState.FINALIZED
            return face_id

    # helpers

    def _reject_finalized(self, session: Session) -> None:
        if session.state == SessionState.FINALIZED:
            raise SessionFinalized(f"session {session.id} is finalized")

    def _require_complete(self, session: Session) -> None:
        for kind in ComponentKind:
            if kind not in session.selections:
                raise IncompleteSelection(
                    f"no {kind.value} selected", attribute=kind.value)

    def _compose(self, session: Session, mode: PlacementMode,
                 overrides: LayoutOverride) -> Preview:
        cutting = self.catalog.image(session.selections[ComponentKind.FACE_CUTTING])
        components: dict[Slot, GrayImage] = {
            slot: self.catalog.image(session.selections[kind])
            for slot, kind in SLOT_KINDS.items()
        }
        image, layout = compose_face(cutting, components, mode, overrides)
        return Preview(image=image, layout=layout, mode=mode)

    def _full_description(self, session: Session) -> dict[ComponentKind, dict[str, str]]:
        """The saved description: selected records' attributes, query values on top.

        Queries may leave attributes unspecified, but stored descriptions are
        complete, so gaps are filled from the chosen records themselves.  The
        result still matches the original query, keeping the face retrievable.
        """
        query = session.query or {}
        description: dict[ComponentKind, dict[str, str]] = {}
        for kind in ComponentKind:
            record = self.catalog.component(session.selections[kind])
            attrs = dict(record.attributes)
            for name, value in query.get(kind, {}).items():
                if value != WILDCARD:
                    attrs[name] = value
            description[kind] = attrs
        return description
