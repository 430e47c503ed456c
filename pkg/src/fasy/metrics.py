"""Seam contrast: the desk-scale stand-in for "the composite looks natural".

The metric is the maximum absolute intensity step across the boundary of the
placed region: pixel pairs (p, q) that are 4-adjacent where p was written by
the placement and q was not.  For blind placement the region is the whole
component rectangle; for masked and tuned placement it is the component's
foreground.
"""
from __future__ import annotations

from .blending import PlacementMode
from .imaging import ForegroundMask, GrayImage


def placed_region(comp: GrayImage, mask: ForegroundMask | None,
                  mode: PlacementMode) -> ForegroundMask:
    """The set of component pixels a placement in `mode` writes."""
    if mode == PlacementMode.BLIND:
        return ForegroundMask(comp.rows, comp.cols, b"\x01" * (comp.rows * comp.cols),
                              polarity_note="full rectangle")
    if mask is None:
        raise ValueError("masked and tuned regions need the component mask")
    return mask


def seam_contrast(img: GrayImage, region: ForegroundMask, top: int, left: int) -> int:
    """Max |img[p] - img[q]| over 4-adjacent pairs crossing the region edge.

    `region` lives in component coordinates and is anchored at (top, left) on
    `img`.  Pairs with q outside the image are skipped (the canvas border is
    not a seam).  Returns 0 when the region has no boundary inside the image.
    """
    in_region = set()
    for r in range(region.rows):
        for c in range(region.cols):
            if region.bit(r, c):
                in_region.add((top + r, left + c))
    worst = 0
    for (pr, pc) in in_region:
        if not (0 <= pr < img.rows and 0 <= pc < img.cols):
            continue
        inside = img.at(pr, pc)
        for qr, qc in ((pr - 1, pc), (pr + 1, pc), (pr, pc - 1), (pr, pc + 1)):
            if (qr, qc) in in_region:
                continue
            if not (0 <= qr < img.rows and 0 <= qc < img.cols):
                continue
            step = abs(inside - img.at(qr, qc))
            if step > worst:
                worst = step
    return worst
