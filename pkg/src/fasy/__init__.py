"""Catalog-driven face sketch composition from facial components.

The package turns an attribute description of a face into a composite
grayscale image: components are retrieved from a catalog by attribute
matching, placed on a blank face cutting relative to its ear anchor, and
blended by local intensity ratios.  See the README for the workflow.
"""
from .assembly import (
    Anchor,
    ComponentDims,
    DEFAULT_CONSTANTS,
    Layout,
    LayoutConstants,
    LayoutOverride,
    PLACEMENT_ORDER,
    Position,
    Slot,
    ZERO_OVERRIDE,
    apply_overrides,
    compute_layout,
    find_ear_anchor,
)
from .blending import (
    BlendTrace,
    PlacementMode,
    blend_pixel,
    intensity_factor,
    place_component,
)
from .catalog import (
    Catalog,
    ComponentRecord,
    GeneratedFaceRecord,
    match_records,
    open_catalog,
)
from .compose import SLOT_KINDS, compose_face
from .errors import FasyError
from .imaging import (
    ForegroundMask,
    GrayImage,
    binarize,
    component_mask,
    face_mask,
    neighborhood_sum,
    otsu_threshold,
    read_pgm,
    write_pgm,
)
from .schema import (
    ComponentKind,
    FaceQuery,
    SCHEMA,
    WILDCARD,
    attribute_matches,
    parse_kind,
    validate_face_query,
)
from .session import Session, SessionState, Workflow

__version__ = "1.0.0"

__all__ = [
    "Anchor",
    "BlendTrace",
    "Catalog",
    "ComponentDims",
    "ComponentKind",
    "ComponentRecord",
    "DEFAULT_CONSTANTS",
    "FaceQuery",
    "FasyError",
    "ForegroundMask",
    "GeneratedFaceRecord",
    "GrayImage",
    "Layout",
    "LayoutConstants",
    "LayoutOverride",
    "PLACEMENT_ORDER",
    "PlacementMode",
    "Position",
    "SCHEMA",
    "SLOT_KINDS",
    "Session",
    "SessionState",
    "Slot",
    "WILDCARD",
    "Workflow",
    "ZERO_OVERRIDE",
    "apply_overrides",
    "attribute_matches",
    "binarize",
    "blend_pixel",
    "component_mask",
    "compose_face",
    "compute_layout",
    "face_mask",
    "find_ear_anchor",
    "intensity_factor",
    "match_records",
    "neighborhood_sum",
    "open_catalog",
    "otsu_threshold",
    "parse_kind",
    "place_component",
    "read_pgm",
    "validate_face_query",
    "write_pgm",
]
