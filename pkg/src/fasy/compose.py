"""Full-face composition: mask, anchor, layout, then place every component.

The pipeline is deterministic: face_mask -> find_ear_anchor -> compute_layout
-> apply_overrides -> place_component per slot in PLACEMENT_ORDER.  Geometry
errors raised mid-pipeline are re-raised naming the offending slot.
"""
from __future__ import annotations

from typing import Mapping

from .assembly import (
    ComponentDims,
    DEFAULT_CONSTANTS,
    Layout,
    LayoutConstants,
    LayoutOverride,
    PLACEMENT_ORDER,
    Slot,
    ZERO_OVERRIDE,
    apply_overrides,
    compute_layout,
    find_ear_anchor,
)
from .blending import PlacementMode, place_component
from .errors import FasyError
from .imaging import GrayImage, component_mask, face_mask
from .schema import ComponentKind

#: Which catalog kind fills each layout slot.
SLOT_KINDS: Mapping[Slot, ComponentKind] = {
    Slot.RIGHT_EYEBROW: ComponentKind.RIGHT_EYEBROW,
    Slot.RIGHT_EYE: ComponentKind.RIGHT_EYE,
    Slot.LEFT_EYEBROW: ComponentKind.LEFT_EYEBROW,
    Slot.LEFT_EYE: ComponentKind.LEFT_EYE,
    Slot.NOSE: ComponentKind.NOSE,
    Slot.LIP: ComponentKind.LIP,
}


def compose_face(
    cutting: GrayImage,
    components: Mapping[Slot, GrayImage],
    mode: PlacementMode = PlacementMode.TUNED,
    overrides: LayoutOverride = ZERO_OVERRIDE,
    constants: LayoutConstants = DEFAULT_CONSTANTS,
) -> tuple[GrayImage, Layout]:
    """Compose all six components onto the cutting; returns (image, layout)."""
    missing = [slot.value for slot in Slot if slot not in components]
    if missing:
        raise ValueError(f"components missing for slots: {', '.join(missing)}")

    anchor = find_ear_anchor(face_mask(cutting))
    dims = {slot: ComponentDims.of(components[slot]) for slot in Slot}
    layout = apply_overrides(compute_layout(anchor, dims, constants), overrides)

    face = cutting
    for slot in PLACEMENT_ORDER:
        comp = components[slot]
        try:
            mask = None if mode == PlacementMode.BLIND else component_mask(comp)
            face = place_component(face, comp, mask, layout.position(slot), mode)
        except FasyError as exc:
            if exc.slot is None:
                exc.slot = slot.value
            raise
    return face, layout
