"""Grayscale rasters, PGM serialization, binarization and mask extraction.

Conventions used throughout the package:

- Images are 8-bit single-channel, row-major, ``(row, col)`` zero-based;
  row 0 is the top of the image.  0 is black, 255 is white.
- The canonical PGM writer form is ``b"P5\\n<cols> <rows>\\n255\\n"``
  followed by the raw pixel bytes.  The reader is more lenient: it accepts
  ``#`` comments and arbitrary whitespace in the header, per the PGM format.
- A ``ForegroundMask`` always stores ``True`` (byte 1) for pixels belonging
  to the object, regardless of whether the object was the bright region
  (face cuttings) or the dark region (components).  The two constructors
  ``face_mask`` and ``component_mask`` encode that inversion once.
- 3x3 neighborhood sums clamp out-of-range coordinates to the nearest
  valid pixel (replicate border), so the nine-term sum is defined at edges.

All types are immutable after construction and every function is pure.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import (
    DegenerateHistogram,
    EmptyMask,
    MalformedHeader,
    OutOfBounds,
    TruncatedPixelData,
    UnsupportedMaxval,
)

MAX_INTENSITY = 255


@dataclass(frozen=True)
class GrayImage:
    """8-bit single-channel raster; ``pixels`` is row-major of length rows*cols."""

    rows: int
    cols: int
    pixels: bytes

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"image dimensions must be >= 1, got {self.rows}x{self.cols}")
        if not isinstance(self.pixels, bytes):
            object.__setattr__(self, "pixels", bytes(self.pixels))
        if len(self.pixels) != self.rows * self.cols:
            raise ValueError(
                f"pixel buffer length {len(self.pixels)} != rows*cols = {self.rows * self.cols}"
            )

    @classmethod
    def filled(cls, rows: int, cols: int, value: int) -> "GrayImage":
        return cls(rows, cols, bytes([value]) * (rows * cols))

    @classmethod
    def from_rows(cls, rows_of_values: Iterable[Iterable[int]]) -> "GrayImage":
        grid = [list(r) for r in rows_of_values]
        cols = len(grid[0])
        flat = bytearray()
        for r in grid:
            if len(r) != cols:
                raise ValueError("ragged rows")
            flat.extend(r)
        return cls(len(grid), cols, bytes(flat))

    def at(self, r: int, c: int) -> int:
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise OutOfBounds(f"pixel ({r}, {c}) outside {self.rows}x{self.cols} image")
        return self.pixels[r * self.cols + c]

    def row(self, r: int) -> bytes:
        return self.pixels[r * self.cols:(r + 1) * self.cols]


@dataclass(frozen=True)
class ForegroundMask:
    """Boolean raster; byte 1 marks pixels belonging to the object.

    ``polarity_note`` records which binarization rule produced the mask
    (e.g. ``"intensity>97"``); it is descriptive only.
    """

    rows: int
    cols: int
    bits: bytes
    polarity_note: str = "manual"

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"mask dimensions must be >= 1, got {self.rows}x{self.cols}")
        if not isinstance(self.bits, bytes):
            object.__setattr__(self, "bits", bytes(self.bits))
        if len(self.bits) != self.rows * self.cols:
            raise ValueError(
                f"bit buffer length {len(self.bits)} != rows*cols = {self.rows * self.cols}"
            )
        if set(self.bits) - {0, 1}:
            raise ValueError("mask bytes must be 0 or 1")

    def bit(self, r: int, c: int) -> bool:
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise OutOfBounds(f"bit ({r}, {c}) outside {self.rows}x{self.cols} mask")
        return bool(self.bits[r * self.cols + c])

    def foreground_count(self) -> int:
        return self.bits.count(1)

    def bounding_box(self) -> tuple[int, int, int, int] | None:
        """Inclusive (top, left, bottom, right) of the foreground, or None."""
        rows_with = [r for r in range(self.rows) if 1 in self.row_bits(r)]
        if not rows_with:
            return None
        cols_with = [c for c in range(self.cols) if self.bits[c::self.cols].find(1) != -1]
        return rows_with[0], cols_with[0], rows_with[-1], cols_with[-1]

    def row_bits(self, r: int) -> bytes:
        return self.bits[r * self.cols:(r + 1) * self.cols]


# PGM (P5) serialization

_WHITESPACE = b" \t\n\r\x0b\x0c"


def _next_token(data: bytes, pos: int) -> tuple[bytes, int]:
    """Skip whitespace and # comments, return (token, position after it)."""
    n = len(data)
    while pos < n:
        b = data[pos:pos + 1]
        if b == b"#":
            nl = data.find(b"\n", pos)
            if nl == -1:
                raise MalformedHeader("unterminated comment in PGM header")
            pos = nl + 1
        elif b in _WHITESPACE:
            pos += 1
        else:
            break
    if pos >= n:
        raise MalformedHeader("PGM header ended prematurely")
    start = pos
    while pos < n and data[pos:pos + 1] not in _WHITESPACE and data[pos:pos + 1] != b"#":
        pos += 1
    return data[start:pos], pos


def read_pgm(data: bytes) -> GrayImage:
    """Parse binary PGM (P5, maxval <= 255) into a GrayImage.

    Raises MalformedHeader, UnsupportedMaxval, or TruncatedPixelData.
    Trailing bytes after the raster are ignored.
    """
    if not isinstance(data, (bytes, bytearray)):
        raise MalformedHeader("PGM input must be a byte sequence")
    data = bytes(data)
    magic, pos = _next_token(data, 0)
    if magic != b"P5":
        raise MalformedHeader(f"not a binary PGM (magic {magic!r}, expected b'P5')")
    fields = []
    for name in ("width", "height", "maxval"):
        token, pos = _next_token(data, pos)
        if not token.isdigit():
            raise MalformedHeader(f"non-numeric {name} field {token!r}")
        fields.append(int(token))
    cols, rows, maxval = fields
    if maxval > MAX_INTENSITY:
        raise UnsupportedMaxval(f"maxval {maxval} exceeds {MAX_INTENSITY}")
    if maxval < 1:
        raise MalformedHeader("maxval must be >= 1")
    if rows < 1 or cols < 1:
        raise MalformedHeader(f"invalid dimensions {cols}x{rows}")
    # exactly one whitespace byte separates the header from the raster
    if pos >= len(data) or data[pos:pos + 1] not in _WHITESPACE:
        raise MalformedHeader("missing whitespace between header and raster")
    pos += 1
    expected = rows * cols
    raster = data[pos:pos + expected]
    if len(raster) < expected:
        raise TruncatedPixelData(
            f"raster holds {len(raster)} bytes, {expected} expected for {cols}x{rows}"
        )
    return GrayImage(rows, cols, raster)


def write_pgm(img: GrayImage) -> bytes:
    """Serialize to canonical P5 bytes; deterministic and bit-exact."""
    return b"P5\n%d %d\n255\n" % (img.cols, img.rows) + img.pixels


# binarization

def otsu_threshold(img: GrayImage) -> int:
    """Between-class-variance-maximizing threshold over the 256-bin histogram.

    Pixels <= t form the low class, pixels > t the high class.  Evaluated in
    exact integer arithmetic; ties resolve to the smallest threshold, so the
    result is fully deterministic.  Raises DegenerateHistogram when every
    pixel is equal (no split exists).
    """
    hist = [img.pixels.count(v) for v in range(256)]
    total = img.rows * img.cols
    if max(hist) == total:
        raise DegenerateHistogram(
            "all pixels equal; automatic thresholding cannot split the histogram"
        )
    weighted_total = sum(v * n for v, n in enumerate(hist))
    best_t = 0
    best_num2 = -1  # squared numerator of the between-class variance
    best_den = 1
    low_weight = 0
    low_sum = 0
    for t in range(256):
        low_weight += hist[t]
        low_sum += t * hist[t]
        if low_weight == 0:
            continue
        high_weight = total - low_weight
        if high_weight == 0:
            break
        # variance(t) = num^2 / (low_weight * high_weight), compared exactly
        num = low_sum * high_weight - (weighted_total - low_sum) * low_weight
        num2 = num * num
        den = low_weight * high_weight
        if num2 * best_den > best_num2 * den:
            best_num2, best_den, best_t = num2, den, t
    return best_t


def binarize(img: GrayImage, threshold: int | None = None) -> tuple[int, bytes]:
    """Return (threshold used, raw bit raster) with bit = intensity > threshold.

    ``threshold=None`` selects the Otsu threshold automatically.
    """
    if threshold is None:
        threshold = otsu_threshold(img)
    elif not (0 <= threshold <= MAX_INTENSITY):
        raise ValueError(f"explicit threshold {threshold} outside 0..{MAX_INTENSITY}")
    table = bytes(1 if v > threshold else 0 for v in range(256))
    return threshold, img.pixels.translate(table)


def _auto_bits(img: GrayImage, threshold: int | None) -> tuple[int, bytes]:
    """binarize, but a uniform image in automatic mode means "no object"."""
    if threshold is None and img.pixels.count(img.pixels[0]) == len(img.pixels):
        raise EmptyMask("uniform image has no object/background separation")
    return binarize(img, threshold)


def face_mask(img: GrayImage, threshold: int | None = None) -> ForegroundMask:
    """Foreground = pixels brighter than the threshold (face region is white).

    Raises EmptyMask when nothing exceeds the threshold, including uniform
    images in automatic mode (no split exists, hence no bright region).
    """
    t, bits = _auto_bits(img, threshold)
    if bits.find(1) == -1:
        raise EmptyMask(f"no pixel brighter than threshold {t}")
    return ForegroundMask(img.rows, img.cols, bits, polarity_note=f"intensity>{t}")


def component_mask(img: GrayImage, threshold: int | None = None) -> ForegroundMask:
    """Foreground = pixels at or below the threshold (component is the dark region).

    Polarity is inverted relative to ``face_mask``.  Raises EmptyMask when no
    pixel is dark enough; uniform images behave as in ``face_mask``.
    """
    t, bits = _auto_bits(img, threshold)
    inverted = bits.translate(bytes([1, 0]) + bytes(254))
    if inverted.find(1) == -1:
        raise EmptyMask(f"no pixel at or below threshold {t}")
    return ForegroundMask(img.rows, img.cols, inverted, polarity_note=f"intensity<={t}")


# neighborhood sums

def _raw_neighborhood_sum(pixels, rows: int, cols: int, r: int, c: int) -> int:
    """Unchecked 3x3 replicate-border sum over a row-major buffer."""
    total = 0
    for dr in (-1, 0, 1):
        rr = r + dr
        if rr < 0:
            rr = 0
        elif rr >= rows:
            rr = rows - 1
        base = rr * cols
        for dc in (-1, 0, 1):
            cc = c + dc
            if cc < 0:
                cc = 0
            elif cc >= cols:
                cc = cols - 1
            total += pixels[base + cc]
    return total


def neighborhood_sum(img: GrayImage, r: int, c: int) -> int:
    """Sum of the 3x3 window centered at (r, c), replicate border.

    Raises OutOfBounds when the center itself is outside the image.
    """
    if not (0 <= r < img.rows and 0 <= c < img.cols):
        raise OutOfBounds(f"center ({r}, {c}) outside {img.rows}x{img.cols} image")
    return _raw_neighborhood_sum(img.pixels, img.rows, img.cols, r, c)
