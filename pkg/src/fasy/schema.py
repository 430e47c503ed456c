"""The closed attribute schema for the seven component kinds.

Records must assign every attribute of their kind one of the listed values.
Queries may assign any subset; a missing attribute or the explicit wildcard
``"Cant Say"`` matches everything.  A stored ``"Cant Say"`` likewise matches
any query value: a record annotated that way asserts ignorance, not a
distinct category, so excluding it would hide valid candidates.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping

from .errors import SchemaViolation

WILDCARD = "Cant Say"

SCHEMA_VERSION = 1


class ComponentKind(str, enum.Enum):
    FACE_CUTTING = "FaceCutting"
    RIGHT_EYEBROW = "RightEyebrow"
    RIGHT_EYE = "RightEye"
    LEFT_EYEBROW = "LeftEyebrow"
    LEFT_EYE = "LeftEye"
    NOSE = "Nose"
    LIP = "Lip"

    def __str__(self) -> str:
        return self.value


def parse_kind(name: str) -> ComponentKind:
    try:
        return ComponentKind(name)
    except ValueError:
        raise SchemaViolation(f"unknown component kind {name!r}", attribute=name)


@dataclass(frozen=True)
class AttributeSpec:
    name: str
    values: tuple[str, ...]


_SIZES = ("Small", "Large", "Normal", WILDCARD)
_DENSITIES = ("Highly Dense", "Low Dense", "Normal", WILDCARD)

_EYEBROW = (
    AttributeSpec("Length", _SIZES),
    AttributeSpec("Width", _SIZES),
    AttributeSpec("Shape", ("Flat", "Round", "Wavy", "Artistic", WILDCARD)),
    AttributeSpec("Hair", _DENSITIES),
)

_EYE = (
    AttributeSpec("Length", _SIZES),
    AttributeSpec("Width", _SIZES),
    AttributeSpec("Shape", ("Round", "Elliptic", WILDCARD)),
    AttributeSpec("EyeBollColor", ("Black", "Brown", "Green", "Blue", WILDCARD)),
)

SCHEMA: Mapping[ComponentKind, tuple[AttributeSpec, ...]] = {
    ComponentKind.FACE_CUTTING: (
        AttributeSpec("Sex", ("Male", "Female")),
        AttributeSpec("Age", ("11-20", "21-30", "31-40", "41-50", "51-60", "61-70", "Above 70")),
        AttributeSpec("Shape", ("Oval", "Round", WILDCARD)),
        AttributeSpec("Jaw", ("Wide", "Narrow", "Normal", WILDCARD)),
        AttributeSpec("HairDensity", _DENSITIES),
        AttributeSpec("HairColor", ("Black", "Brown", WILDCARD)),
    ),
    ComponentKind.RIGHT_EYEBROW: _EYEBROW,
    ComponentKind.LEFT_EYEBROW: _EYEBROW,
    ComponentKind.RIGHT_EYE: _EYE,
    ComponentKind.LEFT_EYE: _EYE,
    ComponentKind.NOSE: (
        AttributeSpec("Sharpness", ("Sharp", "Blunt", "Normal", WILDCARD)),
        AttributeSpec("Nostrils", _SIZES),
        AttributeSpec("Length", _SIZES),
        AttributeSpec("Width", _SIZES),
    ),
    ComponentKind.LIP: (
        AttributeSpec("Length", ("Wide", "Small", "Normal", WILDCARD)),
        AttributeSpec("Width", ("Thick", "Thin", "Normal", WILDCARD)),
        AttributeSpec("Surface", ("Smooth", "Wrinkled", WILDCARD)),
        AttributeSpec("Mouth", ("Open", "Closed", WILDCARD)),
        AttributeSpec("Shape", ("Linear", "Wavy", WILDCARD)),
    ),
}


def attribute_names(kind: ComponentKind) -> tuple[str, ...]:
    return tuple(spec.name for spec in SCHEMA[kind])


def allowed_values(kind: ComponentKind, attribute: str) -> tuple[str, ...]:
    for spec in SCHEMA[kind]:
        if spec.name == attribute:
            return spec.values
    raise SchemaViolation(
        f"kind {kind.value} has no attribute {attribute!r}", attribute=attribute
    )


def validate_record_attributes(kind: ComponentKind, attributes: Mapping[str, str]) -> None:
    """Stored records need a complete, schema-valid assignment."""
    for spec in SCHEMA[kind]:
        if spec.name not in attributes:
            raise SchemaViolation(
                f"{kind.value} record missing attribute {spec.name}", attribute=spec.name
            )
        value = attributes[spec.name]
        if value not in spec.values:
            raise SchemaViolation(
                f"{kind.value}.{spec.name} does not allow {value!r}", attribute=spec.name
            )
    extras = set(attributes) - set(attribute_names(kind))
    if extras:
        name = sorted(extras)[0]
        raise SchemaViolation(
            f"kind {kind.value} has no attribute {name!r}", attribute=name
        )


def validate_query_attributes(kind: ComponentKind, attributes: Mapping[str, str]) -> None:
    """Queries are partial; the wildcard is accepted for every attribute."""
    for name, value in attributes.items():
        values = allowed_values(kind, name)
        if value != WILDCARD and value not in values:
            raise SchemaViolation(
                f"{kind.value}.{name} does not allow {value!r}", attribute=name
            )


# FaceQuery: per-kind partial attribute assignment.
FaceQuery = Mapping[ComponentKind, Mapping[str, str]]


def validate_face_query(query: FaceQuery) -> None:
    for kind, attributes in query.items():
        if not isinstance(kind, ComponentKind):
            raise SchemaViolation(f"unknown component kind {kind!r}", attribute=str(kind))
        validate_query_attributes(kind, attributes)


def attribute_matches(query_value: str | None, stored_value: str) -> bool:
    """One-attribute match rule: equality, or a wildcard on either side."""
    if query_value is None or query_value == WILDCARD:
        return True
    if stored_value == WILDCARD:
        return True
    return query_value == stored_value


def matches(kind: ComponentKind, query_attributes: Mapping[str, str],
            stored_attributes: Mapping[str, str]) -> bool:
    """True when every schema attribute of the kind matches."""
    return all(
        attribute_matches(query_attributes.get(spec.name), stored_attributes[spec.name])
        for spec in SCHEMA[kind]
    )


def parse_face_query_text(text: str) -> dict[ComponentKind, dict[str, str]]:
    """Parse a query file: one ``query <Kind>`` block per kind, ``attr`` fields.

    Kinds may repeat no more than once; omitted kinds stay fully wildcard.
    """
    from . import textfmt  # local import keeps schema free of file concerns

    query: dict[ComponentKind, dict[str, str]] = {}
    for block in textfmt.parse_blocks(text):
        if textfmt.block_type(block) != "query":
            raise SchemaViolation(
                f"query file allows only 'query' blocks, got {textfmt.block_type(block)!r}"
            )
        kind = parse_kind(block[0][1])
        if kind in query:
            raise SchemaViolation(f"kind {kind.value} queried twice", attribute=kind.value)
        attributes: dict[str, str] = {}
        for key, value in block[1:]:
            if key != "attr":
                raise SchemaViolation(f"unexpected field {key!r} in query block")
            name, _, attr_value = value.partition(" ")
            attributes[name] = attr_value.strip()
        validate_query_attributes(kind, attributes)
        query[kind] = attributes
    return query


def format_face_query_text(query: FaceQuery) -> str:
    from . import textfmt

    blocks = []
    for kind in ComponentKind:
        if kind not in query:
            continue
        block = [("query", kind.value)]
        block += [("attr", f"{name} {value}") for name, value in query[kind].items()]
        blocks.append(block)
    if not blocks:
        return "# all wildcard\n"
    return textfmt.format_blocks(blocks)


def schema_as_dict() -> dict:
    """JSON-ready description served to clients; drives UI form rendering."""
    return {
        "version": SCHEMA_VERSION,
        "wildcard": WILDCARD,
        "kinds": {
            kind.value: [
                {"name": spec.name, "values": list(spec.values)}
                for spec in SCHEMA[kind]
            ]
            for kind in ComponentKind
        },
    }
