"""Deterministic synthetic components: the shipped stand-in for real faces.

Everything here is parameterized simple geometry drawn on small grayscale
canvases: oval face cuttings (92x112) with a protruding left-side ear notch,
dark-on-bright eyebrows, eyes, noses and lips on component cards, and the
disc-on-card family used by the blending tests.  Cuttings are bright on a
dark background; components are dark ink on a bright card, matching the two
mask polarities.

All drawing is integer/float arithmetic off a caller-provided
``random.Random``, so a fixed seed reproduces every byte.
"""
from __future__ import annotations

import math
import random
from pathlib import Path
from typing import Mapping

from .catalog import Catalog
from .imaging import GrayImage, write_pgm
from .schema import WILDCARD, ComponentKind

CUTTING_COLS = 92
CUTTING_ROWS = 112
EAR_COL = 12


class _Canvas:
    def __init__(self, rows: int, cols: int, value: int):
        self.rows = rows
        self.cols = cols
        self.buf = bytearray([value]) * (rows * cols)

    def set(self, r: int, c: int, value: int) -> None:
        if 0 <= r < self.rows and 0 <= c < self.cols:
            self.buf[r * self.cols + c] = value

    def fill_rect(self, r0: int, c0: int, r1: int, c1: int, value: int) -> None:
        for r in range(max(0, r0), min(self.rows, r1 + 1)):
            for c in range(max(0, c0), min(self.cols, c1 + 1)):
                self.buf[r * self.cols + c] = value

    def fill_ellipse(self, cr: float, cc: float, rr: float, rc: float, value: int,
                     *, inner: float = 0.0) -> None:
        """Pixels with inner <= ((r-cr)/rr)^2 + ((c-cc)/rc)^2 <= 1."""
        for r in range(self.rows):
            for c in range(self.cols):
                d = ((r - cr) / rr) ** 2 + ((c - cc) / rc) ** 2
                if inner <= d <= 1.0:
                    self.buf[r * self.cols + c] = value

    def image(self) -> GrayImage:
        return GrayImage(self.rows, self.cols, bytes(self.buf))


def disc_on_card(rows: int, cols: int, card_value: int, disc_value: int,
                 radius: int | None = None) -> GrayImage:
    """A centered dark disc on a bright card; the synthetic blending fixture."""
    canvas = _Canvas(rows, cols, card_value)
    if radius is None:
        radius = min(rows, cols) // 2 - 2
    canvas.fill_ellipse(rows / 2 - 0.5, cols / 2 - 0.5, radius, radius, disc_value)
    return canvas.image()


def seam_fixture_family(count: int = 20) -> list[tuple[GrayImage, GrayImage, tuple[int, int]]]:
    """(face, component, position) triples with widening face/disc contrast.

    Faces are uniform cards; components are dark discs on bright cards.  The
    disc sits 40 + 2i below the face value, so every instance has a >= 40
    intensity gap, and the card is far brighter than any face, keeping the
    blind-placement seam the worst of the three modes.
    """
    family = []
    for i in range(count):
        face_value = 70 + 3 * i
        face = GrayImage.filled(40, 40, face_value)
        comp = disc_on_card(15, 15, 235, face_value - (40 + 2 * i), radius=5)
        family.append((face, comp, (10, 12)))
    return family


def synthetic_cutting(*, ear_row: int = 42, face_value: int = 200,
                      bg_value: int = 18, hair_value: int = 160,
                      oval: bool = True, hair_rows: int = 18) -> GrayImage:
    """A 92x112 blank face: bright head with ears on a dark background.

    The left ear notch protrudes past the head oval, so the mask's leftmost
    foreground column starts at the ear and the anchor lands on its top-left
    corner (ear_row, EAR_COL).
    """
    canvas = _Canvas(CUTTING_ROWS, CUTTING_COLS, bg_value)
    center_r, center_c = CUTTING_ROWS // 2, CUTTING_COLS // 2
    if oval:
        rr, rc = 44.0, 30.0
    else:
        rr, rc = 40.0, 33.0
    canvas.fill_ellipse(center_r, center_c, rr, rc, face_value)
    # hair cap inside the oval; bright enough to stay foreground
    top = center_r - rr
    for r in range(int(top), int(top) + hair_rows):
        for c in range(CUTTING_COLS):
            d = ((r - center_r) / rr) ** 2 + ((c - center_c) / rc) ** 2
            if d <= 1.0:
                canvas.buf[r * CUTTING_COLS + c] = hair_value
    # ears: 15-row notches; the left one owns the smallest foreground columns
    canvas.fill_rect(ear_row, EAR_COL, ear_row + 14, EAR_COL + 6, face_value)
    right_col = CUTTING_COLS - 1 - EAR_COL
    canvas.fill_rect(ear_row, right_col - 6, ear_row + 14, right_col, face_value)
    return canvas.image()


def synthetic_eyebrow(*, length: int = 20, thickness: int = 7, style: str = "flat",
                      ink: int = 50, card: int = 232) -> GrayImage:
    """Dark eyebrow stroke on a bright card; image is the stroke plus margins."""
    rows, cols = thickness + 6, length + 4
    canvas = _Canvas(rows, cols, card)
    for j in range(length):
        x = j / max(1, length - 1)
        if style == "round":
            lift = round(2 * (1 - (2 * x - 1) ** 2))
        elif style == "wavy":
            lift = round(1.5 * math.sin(3 * math.pi * x))
        else:
            lift = 0
        thick = thickness
        if style == "artistic":
            thick = max(2, round(thickness * (1 - 0.6 * x)))
        top = rows // 2 - thick // 2 - lift
        for t in range(thick):
            canvas.set(top + t, 2 + j, ink)
    return canvas.image()


def synthetic_eye(*, length: int = 17, height: int = 10, round_shape: bool = False,
                  iris_value: int = 35, outline: int = 70, card: int = 228) -> GrayImage:
    """Almond outline with an iris disc; sclera stays card-bright."""
    rows, cols = height + 4, length + 4
    canvas = _Canvas(rows, cols, card)
    cr, cc = (rows - 1) / 2, (cols - 1) / 2
    rr, rc = height / 2, length / 2
    canvas.fill_ellipse(cr, cc, rr, rc, outline, inner=0.55)
    iris_r = max(2.0, height / (2.6 if round_shape else 3.0))
    canvas.fill_ellipse(cr, cc, iris_r, iris_r, iris_value)
    return canvas.image()


def synthetic_nose(*, width: int = 15, height: int = 26, sharp: bool = False,
                   nostril: int = 2, ink: int = 60, card: int = 235) -> GrayImage:
    """Two strokes converging toward the bridge, nostril dots at the base."""
    rows, cols = height + 4, width + 4
    canvas = _Canvas(rows, cols, card)
    center_c = (cols - 1) / 2
    top_half = 1.0 if sharp else 2.5
    for i in range(height):
        y = i / max(1, height - 1)
        spread = top_half + (width / 2 - top_half) * y
        left = round(center_c - spread)
        right = round(center_c + spread)
        canvas.set(2 + i, left, ink)
        canvas.set(2 + i, right, ink)
    base = 2 + height - 2
    for side in (-1, 1):
        col = round(center_c + side * width / 4)
        canvas.fill_rect(base - nostril, col - nostril // 2,
                         base, col + nostril // 2, ink - 15)
    return canvas.image()


def synthetic_lip(*, width: int = 23, height: int = 10, open_mouth: bool = False,
                  wrinkled: bool = False, ink: int = 75, card: int = 230) -> GrayImage:
    """Filled lens with a darker mouth line, optionally parted or wrinkled."""
    rows, cols = height + 4, width + 4
    canvas = _Canvas(rows, cols, card)
    cr, cc = (rows - 1) / 2, (cols - 1) / 2
    canvas.fill_ellipse(cr, cc, height / 2, width / 2, ink)
    mid = rows // 2
    line_value = 140 if open_mouth else max(20, ink - 40)
    for c in range(2, cols - 2):
        if ((c - 1 - cc) / (width / 2)) ** 2 <= 0.92:
            canvas.set(mid, c, line_value)
    if wrinkled:
        for c in range(3, cols - 3, 4):
            canvas.set(mid - 1, c, max(20, ink - 25))
            canvas.set(mid + 1, c, max(20, ink - 25))
    return canvas.image()


# demo catalog seeding

#: Attribute sets for the first seeded record of each kind; DEMO_QUERY_A below
#: retrieves them, so a fresh demo catalog always answers that description.
DEMO_SEED_ATTRIBUTES: Mapping[ComponentKind, dict[str, str]] = {
    ComponentKind.FACE_CUTTING: {
        "Sex": "Male", "Age": "21-30", "Shape": "Oval", "Jaw": "Normal",
        "HairDensity": "Normal", "HairColor": "Black",
    },
    ComponentKind.RIGHT_EYEBROW: {
        "Length": "Large", "Width": "Normal", "Shape": "Round", "Hair": "Highly Dense",
    },
    ComponentKind.RIGHT_EYE: {
        "Length": "Normal", "Width": "Normal", "Shape": "Elliptic", "EyeBollColor": "Black",
    },
    ComponentKind.LEFT_EYEBROW: {
        "Length": "Large", "Width": "Normal", "Shape": "Round", "Hair": "Highly Dense",
    },
    ComponentKind.LEFT_EYE: {
        "Length": "Normal", "Width": "Normal", "Shape": "Elliptic", "EyeBollColor": "Black",
    },
    ComponentKind.NOSE: {
        "Sharpness": "Normal", "Nostrils": "Normal", "Length": "Normal", "Width": "Normal",
    },
    ComponentKind.LIP: {
        "Length": "Normal", "Width": "Normal", "Surface": "Smooth",
        "Mouth": "Closed", "Shape": "Linear",
    },
}

#: An operator-style description with wildcards; matches the seed records.
DEMO_QUERY_A: Mapping[ComponentKind, dict[str, str]] = {
    ComponentKind.FACE_CUTTING: {
        "Sex": "Male", "Age": "21-30", "Shape": "Oval", "Jaw": "Normal",
        "HairDensity": "Normal", "HairColor": "Black",
    },
    ComponentKind.RIGHT_EYEBROW: {
        "Length": "Large", "Width": "Normal", "Shape": WILDCARD, "Hair": "Highly Dense",
    },
    ComponentKind.RIGHT_EYE: {
        "Length": "Normal", "Width": "Normal", "Shape": "Elliptic", "EyeBollColor": "Black",
    },
    ComponentKind.LEFT_EYEBROW: {
        "Length": "Large", "Width": "Normal", "Shape": WILDCARD, "Hair": "Highly Dense",
    },
    ComponentKind.LEFT_EYE: {
        "Length": "Normal", "Width": "Normal", "Shape": "Elliptic", "EyeBollColor": "Black",
    },
    ComponentKind.NOSE: {
        "Sharpness": "Normal", "Nostrils": "Normal", "Length": "Normal", "Width": "Normal",
    },
    ComponentKind.LIP: {
        "Length": "Normal", "Width": "Normal", "Surface": "Smooth",
        "Mouth": WILDCARD, "Shape": WILDCARD,
    },
}

#: A second, stricter description: small flat eyebrows, closed wavy lips.
DEMO_QUERY_B: Mapping[ComponentKind, dict[str, str]] = {
    ComponentKind.FACE_CUTTING: {
        "Sex": "Male", "Age": "31-40", "Shape": "Oval", "Jaw": "Normal",
        "HairDensity": "Highly Dense", "HairColor": "Black",
    },
    ComponentKind.RIGHT_EYEBROW: {
        "Length": "Small", "Width": "Small", "Shape": "Flat", "Hair": "Low Dense",
    },
    ComponentKind.RIGHT_EYE: {
        "Length": "Normal", "Width": "Small", "Shape": "Elliptic", "EyeBollColor": "Black",
    },
    ComponentKind.LEFT_EYEBROW: {
        "Length": "Small", "Width": "Small", "Shape": "Flat", "Hair": "Low Dense",
    },
    ComponentKind.LEFT_EYE: {
        "Length": "Normal", "Width": "Normal", "Shape": "Elliptic", "EyeBollColor": "Black",
    },
    ComponentKind.NOSE: {
        "Sharpness": "Normal", "Nostrils": "Normal", "Length": "Normal", "Width": "Normal",
    },
    ComponentKind.LIP: {
        "Length": "Normal", "Width": "Normal", "Surface": "Smooth",
        "Mouth": "Closed", "Shape": "Wavy",
    },
}

_EYEBROW_LENGTHS = {"Small": 16, "Normal": 19, "Large": 23}
_EYEBROW_THICKNESS = {"Small": 5, "Normal": 7, "Large": 9}
_EYE_LENGTHS = {"Small": 14, "Normal": 17, "Large": 20}
_EYE_HEIGHTS = {"Small": 8, "Normal": 10, "Large": 12}
_NOSE_HEIGHTS = {"Small": 22, "Normal": 26, "Large": 30}
_NOSE_WIDTHS = {"Small": 12, "Normal": 15, "Large": 18}
_LIP_WIDTHS = {"Wide": 26, "Normal": 23, "Small": 20}
_LIP_HEIGHTS = {"Thick": 12, "Normal": 10, "Thin": 8}
_INK_BY_DENSITY = {"Highly Dense": 38, "Normal": 55, "Low Dense": 72}
_IRIS_BY_COLOR = {"Black": 30, "Brown": 52, "Green": 68, "Blue": 60}


def _pick(table: Mapping[str, int], key: str, rng: random.Random) -> int:
    if key in table:
        return table[key]
    return rng.choice(sorted(table.values()))


def draw_component(kind: ComponentKind, attributes: Mapping[str, str],
                   rng: random.Random) -> GrayImage:
    """Render a component image consistent with its attribute assignment."""
    if kind == ComponentKind.FACE_CUTTING:
        return synthetic_cutting(
            ear_row=rng.randint(40, 46),
            face_value=rng.randint(192, 208),
            bg_value=rng.randint(12, 26),
            hair_value=rng.randint(150, 172),
            oval=attributes.get("Shape") != "Round",
            hair_rows={"Highly Dense": 24, "Normal": 18, "Low Dense": 10}.get(
                attributes.get("HairDensity", ""), 16),
        )
    if kind in (ComponentKind.RIGHT_EYEBROW, ComponentKind.LEFT_EYEBROW):
        style = attributes.get("Shape", WILDCARD).lower()
        if style not in ("flat", "round", "wavy", "artistic"):
            style = rng.choice(["flat", "round", "wavy", "artistic"])
        return synthetic_eyebrow(
            length=_pick(_EYEBROW_LENGTHS, attributes.get("Length", ""), rng),
            thickness=_pick(_EYEBROW_THICKNESS, attributes.get("Width", ""), rng),
            style=style,
            ink=_INK_BY_DENSITY.get(attributes.get("Hair", ""), rng.randint(40, 70)),
            card=rng.randint(226, 238),
        )
    if kind in (ComponentKind.RIGHT_EYE, ComponentKind.LEFT_EYE):
        return synthetic_eye(
            length=_pick(_EYE_LENGTHS, attributes.get("Length", ""), rng),
            height=_pick(_EYE_HEIGHTS, attributes.get("Width", ""), rng),
            round_shape=attributes.get("Shape") == "Round",
            iris_value=_IRIS_BY_COLOR.get(attributes.get("EyeBollColor", ""),
                                          rng.randint(30, 60)),
            card=rng.randint(224, 236),
        )
    if kind == ComponentKind.NOSE:
        return synthetic_nose(
            width=_pick(_NOSE_WIDTHS, attributes.get("Width", ""), rng),
            height=_pick(_NOSE_HEIGHTS, attributes.get("Length", ""), rng),
            sharp=attributes.get("Sharpness") == "Sharp",
            nostril={"Small": 1, "Normal": 2, "Large": 3}.get(
                attributes.get("Nostrils", ""), 2),
            card=rng.randint(228, 240),
        )
    if kind == ComponentKind.LIP:
        return synthetic_lip(
            width=_pick(_LIP_WIDTHS, attributes.get("Length", ""), rng),
            height=_pick(_LIP_HEIGHTS, attributes.get("Width", ""), rng),
            open_mouth=attributes.get("Mouth") == "Open",
            wrinkled=attributes.get("Surface") == "Wrinkled",
            card=rng.randint(224, 236),
        )
    raise ValueError(f"no drawing rule for {kind!r}")


def random_attributes(kind: ComponentKind, rng: random.Random) -> dict[str, str]:
    from .schema import SCHEMA

    return {spec.name: rng.choice(spec.values) for spec in SCHEMA[kind]}


def generate_catalog(root: str | Path, seed: int, per_kind: int = 3) -> Catalog:
    """Build a demo catalog: per kind, one DEMO_SEED record plus random extras.

    Deterministic: a fixed seed reproduces every image byte and the manifest.
    """
    rng = random.Random(seed)
    catalog = Catalog.open(root)
    for kind in ComponentKind:
        seeds = [dict(DEMO_SEED_ATTRIBUTES[kind])]
        seeds += [random_attributes(kind, rng) for _ in range(per_kind - 1)]
        for attributes in seeds:
            image = draw_component(kind, attributes, rng)
            catalog.ingest(write_pgm(image), kind, attributes)
    return catalog
