"""Ear-anchored layout: locate the ear corner, derive component positions.

The anchor is the top-left corner of the subject's right ear (the leftmost
foreground column of the face mask, topmost row within it).  All six
component positions follow from it by fixed integer offsets tuned for
92x112 face cuttings; the offsets live in ``LayoutConstants`` so other
canvas sizes can retune them.

With ``ty = anchor.col + anchor_col_shift`` and ``tx = anchor.row``:

    right_eyebrow = (tx + eyebrow_row_offset, ty)
    right_eye     = (tx, ty + brow_width - eye_width)
    nose          = (tx + nose_row_offset, ty + brow_width)
    left_eyebrow  = (tx + eyebrow_row_offset,
                     nose.col + nose_width + left_eyebrow_col_offset)
    left_eye      = (tx, left_eyebrow.col)
    lip           = (nose.row + nose_height + lip_row_gap,
                     nose.col + nose_width//2 - lip_width//2)

Coordinates are integers; the lone division floors.  Positions that land
at a negative coordinate raise NegativePosition naming the slot; nothing
is silently clamped (the adjustment loop exists to fix placement).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, fields as dataclass_fields
from typing import Mapping, NamedTuple

from . import textfmt
from .errors import InvalidRequest, NegativePosition, NoForeground
from .imaging import ForegroundMask, GrayImage


class Slot(str, enum.Enum):
    """The six placeable component slots (the face cutting is the canvas)."""

    RIGHT_EYEBROW = "right_eyebrow"
    RIGHT_EYE = "right_eye"
    LEFT_EYEBROW = "left_eyebrow"
    LEFT_EYE = "left_eye"
    NOSE = "nose"
    LIP = "lip"

    def __str__(self) -> str:  # textual forms use the value, not Slot.X
        return self.value


#: Placement order for composites; tuned blending is order-sensitive, so
#: this order is part of the output contract.
PLACEMENT_ORDER = (
    Slot.RIGHT_EYEBROW,
    Slot.RIGHT_EYE,
    Slot.NOSE,
    Slot.LEFT_EYEBROW,
    Slot.LEFT_EYE,
    Slot.LIP,
)


class Position(NamedTuple):
    row: int
    col: int


@dataclass(frozen=True)
class Anchor:
    """Top-left corner of the right ear on the face mask."""

    row: int
    col: int

    def __post_init__(self):
        if self.row < 0 or self.col < 0:
            raise ValueError(f"anchor ({self.row}, {self.col}) has negative coordinates")


@dataclass(frozen=True)
class ComponentDims:
    """Row extent (height) and column extent (width) of a component image."""

    height: int
    width: int

    def __post_init__(self):
        if self.height < 1 or self.width < 1:
            raise ValueError(f"dims must be >= 1, got {self.height}x{self.width}")

    @classmethod
    def of(cls, img: GrayImage) -> "ComponentDims":
        return cls(height=img.rows, width=img.cols)


@dataclass(frozen=True)
class LayoutConstants:
    """The placement offsets, as the signed values added in the equations.

    Defaults are the experimentally tuned values for 92x112 cuttings.
    """

    anchor_col_shift: int = 10
    eyebrow_row_offset: int = -5
    nose_row_offset: int = -2
    lip_row_gap: int = 5
    left_eyebrow_col_offset: int = -5

    def to_text(self) -> str:
        block = [("constants", "")]
        for f in dataclass_fields(self):
            block.append((f.name.replace("_", "-"), str(getattr(self, f.name))))
        return textfmt.format_blocks([block])

    @classmethod
    def from_text(cls, text: str) -> "LayoutConstants":
        blocks = textfmt.parse_blocks(text)
        if len(blocks) != 1 or textfmt.block_type(blocks[0]) != "constants":
            raise InvalidRequest("constants file must hold exactly one 'constants' block")
        known = {f.name.replace("_", "-"): f.name for f in dataclass_fields(cls)}
        kwargs = {}
        for key, value in blocks[0][1:]:
            if key not in known:
                raise InvalidRequest(f"unknown layout constant {key!r}")
            try:
                kwargs[known[key]] = int(value)
            except ValueError:
                raise InvalidRequest(f"layout constant {key} needs an integer, got {value!r}")
        return cls(**kwargs)


DEFAULT_CONSTANTS = LayoutConstants()


@dataclass(frozen=True)
class Layout:
    """Top-left positions for all six slots plus the shifted anchor."""

    anchor: Position
    right_eyebrow: Position
    right_eye: Position
    left_eyebrow: Position
    left_eye: Position
    nose: Position
    lip: Position

    def position(self, slot: Slot) -> Position:
        return getattr(self, slot.value)

    def positions(self) -> dict[Slot, Position]:
        return {slot: self.position(slot) for slot in Slot}


@dataclass(frozen=True)
class LayoutOverride:
    """Optional (drow, dcol) nudge per slot; overrides compose additively."""

    right_eyebrow: tuple[int, int] | None = None
    right_eye: tuple[int, int] | None = None
    left_eyebrow: tuple[int, int] | None = None
    left_eye: tuple[int, int] | None = None
    nose: tuple[int, int] | None = None
    lip: tuple[int, int] | None = None

    def delta(self, slot: Slot) -> tuple[int, int]:
        return getattr(self, slot.value) or (0, 0)

    def is_zero(self) -> bool:
        return all(self.delta(slot) == (0, 0) for slot in Slot)

    def combined(self, other: "LayoutOverride") -> "LayoutOverride":
        merged = {}
        for slot in Slot:
            dr = self.delta(slot)[0] + other.delta(slot)[0]
            dc = self.delta(slot)[1] + other.delta(slot)[1]
            if (dr, dc) != (0, 0):
                merged[slot.value] = (dr, dc)
        return LayoutOverride(**merged)

    @classmethod
    def of(cls, deltas: Mapping[Slot, tuple[int, int]]) -> "LayoutOverride":
        return cls(**{slot.value: tuple(d) for slot, d in deltas.items()})

    def to_text(self) -> str:
        blocks = []
        for slot in Slot:
            dr, dc = self.delta(slot)
            if (dr, dc) != (0, 0):
                blocks.append([("override", slot.value), ("drow", str(dr)), ("dcol", str(dc))])
        if not blocks:
            return "# no overrides\n"
        return textfmt.format_blocks(blocks)

    @classmethod
    def from_text(cls, text: str) -> "LayoutOverride":
        deltas: dict[Slot, tuple[int, int]] = {}
        for block in textfmt.parse_blocks(text):
            if textfmt.block_type(block) != "override":
                raise InvalidRequest(
                    f"override file allows only 'override' blocks, got {textfmt.block_type(block)!r}"
                )
            slot = _parse_slot(block[0][1])
            if slot in deltas:
                raise InvalidRequest(f"slot {slot.value} overridden twice", slot=slot.value)
            try:
                dr = int(textfmt.single(block, "drow", missing="0"))
                dc = int(textfmt.single(block, "dcol", missing="0"))
            except ValueError:
                raise InvalidRequest(f"non-integer nudge for slot {slot.value}", slot=slot.value)
            deltas[slot] = (dr, dc)
        return cls.of(deltas)


def _parse_slot(name: str) -> Slot:
    try:
        return Slot(name)
    except ValueError:
        raise InvalidRequest(f"unknown slot {name!r}", slot=name)


ZERO_OVERRIDE = LayoutOverride()


def find_ear_anchor(mask: ForegroundMask) -> Anchor:
    """First foreground bit scanning columns left to right, rows top to bottom.

    Equivalently: the topmost foreground pixel of the leftmost
    foreground-containing column.  Raises NoForeground on an all-false mask.
    """
    for col in range(mask.cols):
        row = mask.bits[col::mask.cols].find(1)
        if row != -1:
            return Anchor(row=row, col=col)
    raise NoForeground("mask has no foreground bit to anchor on")


def _checked(slot_name: str, row: int, col: int) -> Position:
    if row < 0 or col < 0:
        raise NegativePosition(
            f"{slot_name} would land at ({row}, {col})", slot=slot_name
        )
    return Position(row, col)


def compute_layout(
    anchor: Anchor,
    dims: Mapping[Slot, ComponentDims],
    constants: LayoutConstants = DEFAULT_CONSTANTS,
) -> Layout:
    """Evaluate the placement equations for all six slots.

    ``dims`` must cover every slot.  Pure function: equal inputs yield equal
    layouts.  Raises NegativePosition (naming the slot) when the anchor sits
    too close to the border for some component.
    """
    missing = [slot.value for slot in Slot if slot not in dims]
    if missing:
        raise ValueError(f"dims missing for slots: {', '.join(missing)}")

    tx = anchor.row
    ty = anchor.col + constants.anchor_col_shift
    shifted = _checked("anchor", tx, ty)

    brow_w = dims[Slot.RIGHT_EYEBROW].width
    eye_w = dims[Slot.RIGHT_EYE].width
    nose_w = dims[Slot.NOSE].width
    nose_h = dims[Slot.NOSE].height
    lip_w = dims[Slot.LIP].width

    right_eyebrow = _checked("right_eyebrow", tx + constants.eyebrow_row_offset, ty)
    right_eye = _checked("right_eye", tx, ty + brow_w - eye_w)
    nose = _checked("nose", tx + constants.nose_row_offset, ty + brow_w)
    left_eyebrow = _checked(
        "left_eyebrow",
        tx + constants.eyebrow_row_offset,
        nose.col + nose_w + constants.left_eyebrow_col_offset,
    )
    left_eye = _checked("left_eye", tx, left_eyebrow.col)
    lip = _checked(
        "lip",
        nose.row + nose_h + constants.lip_row_gap,
        nose.col + nose_w // 2 - lip_w // 2,
    )
    return Layout(
        anchor=shifted,
        right_eyebrow=right_eyebrow,
        right_eye=right_eye,
        left_eyebrow=left_eyebrow,
        left_eye=left_eye,
        nose=nose,
        lip=lip,
    )


def apply_overrides(layout: Layout, overrides: LayoutOverride) -> Layout:
    """Shift per-slot positions by the override deltas; untouched slots keep."""
    moved = {}
    for slot in Slot:
        dr, dc = overrides.delta(slot)
        pos = layout.position(slot)
        moved[slot.value] = _checked(slot.value, pos.row + dr, pos.col + dc)
    return Layout(anchor=layout.anchor, **moved)
