"""Exception hierarchy shared by every fasy module.

Each error carries a stable ``code`` string (used verbatim by the CLI and
the HTTP error envelope) and optional ``slot`` / ``attribute`` fields naming
the offending piece of input.
"""
from __future__ import annotations


class FasyError(Exception):
    """Base class; ``code`` is the stable machine-readable identifier."""

    code = "Error"

    def __init__(self, message: str, *, slot: str | None = None,
                 attribute: str | None = None):
        super().__init__(message)
        self.message = message
        self.slot = slot
        self.attribute = attribute

    def detail(self) -> dict:
        d: dict = {}
        if self.slot is not None:
            d["slot"] = self.slot
        if self.attribute is not None:
            d["attribute"] = self.attribute
        return d


# imaging

class MalformedHeader(FasyError):
    code = "MalformedHeader"


class TruncatedPixelData(FasyError):
    code = "TruncatedPixelData"


class UnsupportedMaxval(FasyError):
    code = "UnsupportedMaxval"


class DegenerateHistogram(FasyError):
    code = "DegenerateHistogram"


class EmptyMask(FasyError):
    code = "EmptyMask"


class OutOfBounds(FasyError):
    code = "OutOfBounds"


# assembly

class NoForeground(FasyError):
    code = "NoForeground"


class NegativePosition(FasyError):
    code = "NegativePosition"


# blending

class DimensionMismatch(FasyError):
    code = "DimensionMismatch"


class OutOfCanvas(FasyError):
    code = "OutOfCanvas"


class ZeroComponentNeighborhood(FasyError):
    code = "ZeroComponentNeighborhood"


# catalog

class CorruptManifest(FasyError):
    code = "CorruptManifest"


class SchemaViolation(FasyError):
    code = "SchemaViolation"


class MissingImage(FasyError):
    code = "MissingImage"


class MalformedImage(FasyError):
    code = "MalformedImage"


class DuplicateId(FasyError):
    code = "DuplicateId"


class UnknownRecord(FasyError):
    code = "UnknownRecord"


# service

class UnknownSession(FasyError):
    code = "UnknownSession"


class NotACandidate(FasyError):
    code = "NotACandidate"


class IncompleteSelection(FasyError):
    code = "IncompleteSelection"


class SessionFinalized(FasyError):
    code = "SessionFinalized"


class InvalidRequest(FasyError):
    code = "InvalidRequest"
