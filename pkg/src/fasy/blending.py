"""Component placement: blind copy, mask-gated copy, and intensity tuning.

Tuned placement hides the stitching line between a component and the face
cutting.  For each foreground pixel, the face and component 3x3
neighborhood sums give an intensity factor ``r = face_sum / comp_sum`` and
the face pixel becomes

    new = (old + 2*r*comp_value) / (1 + 2*r)

a convex combination of the old face value (weight 1) and the component
value (weight 2*r), rounded to the nearest integer.  The pass is a single
in-place row-major sweep: later face neighborhood sums see earlier blended
pixels, so the operation is sequential by definition and must not be
parallelized across pixels.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import (
    DimensionMismatch,
    OutOfCanvas,
    ZeroComponentNeighborhood,
)
from .imaging import ForegroundMask, GrayImage, _raw_neighborhood_sum


class PlacementMode(str, enum.Enum):
    BLIND = "blind"
    MASKED = "masked"
    TUNED = "tuned"

    def __str__(self) -> str:
        return self.value


def intensity_factor(face_sum: int, comp_sum: int) -> float:
    """Ratio of face to component 3x3 neighborhood sums.

    Raises ZeroComponentNeighborhood when the component neighborhood sums
    to zero (locally pure black, no ratio is definable); callers placing
    pixels fall back to a plain masked copy there.
    """
    if face_sum < 0 or comp_sum < 0:
        raise ValueError("neighborhood sums are non-negative")
    if comp_sum == 0:
        raise ZeroComponentNeighborhood("component 3x3 neighborhood sums to zero")
    return face_sum / comp_sum


def blend_pixel(face_value: int, comp_value: int, factor: float) -> int:
    """New face intensity, rounded half-up and clamped to 0..255.

    With factor 0 the component contributes nothing; as the factor grows
    the result approaches the component value.  Equal inputs are a fixed
    point for any factor.
    """
    if not (0 <= face_value <= 255 and 0 <= comp_value <= 255):
        raise ValueError("pixel intensities must be 0..255")
    if not (math.isfinite(factor) and factor >= 0):
        raise ValueError(f"intensity factor must be finite and >= 0, got {factor!r}")
    value = (face_value + 2.0 * factor * comp_value) / (1.0 + 2.0 * factor)
    rounded = math.floor(value + 0.5)
    return min(255, max(0, rounded))


@dataclass
class BlendTrace:
    """Optional per-pixel audit log of a tuned placement; never alters results.

    Each record is (row, col, face_sum, comp_sum, factor, old, new) in face
    coordinates; ``factor`` is None where the masked-copy fallback fired.
    """

    records: list[tuple] = field(default_factory=list)

    def add(self, row, col, face_sum, comp_sum, factor, old, new) -> None:
        self.records.append((row, col, face_sum, comp_sum, factor, old, new))

    def as_table(self) -> str:
        lines = ["row\tcol\tface_sum\tcomp_sum\tfactor\told\tnew"]
        for row, col, fs, cs, factor, old, new in self.records:
            shown = "-" if factor is None else f"{factor:.6g}"
            lines.append(f"{row}\t{col}\t{fs}\t{cs}\t{shown}\t{old}\t{new}")
        return "\n".join(lines) + "\n"


def _require_mask(comp: GrayImage, mask: ForegroundMask | None) -> ForegroundMask:
    if mask is None:
        raise DimensionMismatch("masked and tuned placement require a component mask")
    if (mask.rows, mask.cols) != (comp.rows, comp.cols):
        raise DimensionMismatch(
            f"mask {mask.rows}x{mask.cols} does not match component {comp.rows}x{comp.cols}"
        )
    return mask


def place_component(
    face: GrayImage,
    comp: GrayImage,
    mask: ForegroundMask | None,
    pos: tuple[int, int],
    mode: PlacementMode,
    *,
    snapshot: bool = False,
    trace: BlendTrace | None = None,
) -> GrayImage:
    """Place ``comp`` on ``face`` with its top-left corner at ``pos``.

    Blind mode copies the whole rectangle (must lie fully inside the face);
    masked and tuned modes touch only foreground pixels (each of which must
    lie inside the face; the rectangle itself may overhang).  Tuned mode
    additionally blends each copied pixel with the current face, sweeping
    in row-major order; ``snapshot=True`` is a non-default experimental
    variant that reads face neighborhoods from the pre-placement face
    instead of the partially updated one.

    Returns a new image; the input face is never modified.
    """
    r0, c0 = pos
    out = bytearray(face.pixels)

    if mode == PlacementMode.BLIND:
        if (mask is not None) and (mask.rows, mask.cols) != (comp.rows, comp.cols):
            raise DimensionMismatch(
                f"mask {mask.rows}x{mask.cols} does not match component {comp.rows}x{comp.cols}"
            )
        if r0 < 0 or c0 < 0 or r0 + comp.rows > face.rows or c0 + comp.cols > face.cols:
            raise OutOfCanvas(
                f"rectangle {comp.rows}x{comp.cols} at ({r0}, {c0}) exceeds "
                f"{face.rows}x{face.cols} face"
            )
        for i in range(comp.rows):
            start = (r0 + i) * face.cols + c0
            out[start:start + comp.cols] = comp.row(i)
        return GrayImage(face.rows, face.cols, bytes(out))

    mask = _require_mask(comp, mask)
    box = mask.bounding_box()
    if box is not None:
        top, left, bottom, right = box
        if (r0 + top < 0 or c0 + left < 0
                or r0 + bottom >= face.rows or c0 + right >= face.cols):
            raise OutOfCanvas(
                f"foreground rows {top}..{bottom} cols {left}..{right} at ({r0}, {c0}) "
                f"exceed {face.rows}x{face.cols} face"
            )

    if mode == PlacementMode.MASKED:
        for i in range(comp.rows):
            row_bits = mask.row_bits(i)
            comp_row = comp.row(i)
            base = (r0 + i) * face.cols + c0
            for j in range(comp.cols):
                if row_bits[j]:
                    out[base + j] = comp_row[j]
        return GrayImage(face.rows, face.cols, bytes(out))

    if mode != PlacementMode.TUNED:
        raise ValueError(f"unknown placement mode {mode!r}")

    # Tuned: the face neighborhood source is the buffer being updated unless
    # the snapshot variant was requested.
    face_src = face.pixels if snapshot else out
    bits = mask.bits
    comp_px = comp.pixels
    for i in range(comp.rows):
        row_base = i * comp.cols
        for j in range(comp.cols):
            if not bits[row_base + j]:
                continue
            x = r0 + i
            y = c0 + j
            comp_value = comp_px[row_base + j]
            comp_sum = _raw_neighborhood_sum(comp_px, comp.rows, comp.cols, i, j)
            face_sum = _raw_neighborhood_sum(face_src, face.rows, face.cols, x, y)
            old = out[x * face.cols + y]
            if comp_sum == 0:
                factor = None
                new = comp_value
            else:
                factor = face_sum / comp_sum
                new = blend_pixel(old, comp_value, factor)
            out[x * face.cols + y] = new
            if trace is not None:
                trace.add(x, y, face_sum, comp_sum, factor, old, new)
    return GrayImage(face.rows, face.cols, bytes(out))
