#!/usr/bin/env python3
"""Print the per-mode seam contrast table on the disc-on-card family.

Each row is one fixture: face value, disc value, then the max intensity step
across the placed region's boundary after blind, masked, and tuned placement.
Tuned <= Masked <= Blind on every row is the mode-ordering sanity check.
"""
from __future__ import annotations

import sys

from fasy.blending import PlacementMode, place_component
from fasy.fixtures import seam_fixture_family
from fasy.imaging import component_mask
from fasy.metrics import placed_region, seam_contrast


def run() -> int:
    print("face\tdisc\tblind\tmasked\ttuned")
    ordered = True
    for face, comp, (top, left) in seam_fixture_family():
        mask = component_mask(comp)
        steps = {}
        for mode in (PlacementMode.BLIND, PlacementMode.MASKED, PlacementMode.TUNED):
            placed = place_component(face, comp, mask, (top, left), mode)
            region = placed_region(comp, mask, mode)
            steps[mode] = seam_contrast(placed, region, top, left)
        face_value = face.at(0, 0)
        disc_value = comp.at(comp.rows // 2, comp.cols // 2)
        print(f"{face_value}\t{disc_value}\t{steps[PlacementMode.BLIND]}"
              f"\t{steps[PlacementMode.MASKED]}\t{steps[PlacementMode.TUNED]}")
        if not (steps[PlacementMode.TUNED] <= steps[PlacementMode.MASKED]
                <= steps[PlacementMode.BLIND]):
            ordered = False
    if not ordered:
        print("mode ordering violated", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(run())
