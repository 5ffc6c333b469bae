"""Image containers and the integer <-> continuous pixel codec.

``RawImage`` holds integer pixels in [0, maxval] as they appear on disk;
``GrayImage`` holds continuous gray levels strictly inside (-1, 1).  The
codec between them is the affine map

    decode: v = (2*g - M) / (M + 1)
    encode: g = round((v*(M + 1) + M) / 2), half away from zero, clamped

which is exactly invertible on integer codes and keeps every decoded
value strictly inside the open interval (|v| <= M/(M+1) < 1), so the log
map never sees the boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def _storage_dtype(maxval: int):
    if maxval <= 0xFF:
        return np.uint8
    if maxval <= 0xFFFF:
        return np.uint16
    return np.uint32


@dataclass(frozen=True, eq=False)
class RawImage:
    """Integer image with pixels in [0, maxval], row-major (height, width)."""

    pixels: np.ndarray
    maxval: int

    def __post_init__(self):
        px = np.asarray(self.pixels)
        if px.ndim != 2:
            raise ValueError(f"pixels must be 2-D (height, width), got shape {px.shape}")
        if px.size == 0:
            raise ValueError("image must contain at least one pixel")
        if not np.issubdtype(px.dtype, np.integer):
            raise ValueError(f"pixels must have an integer dtype, got {px.dtype}")
        if self.maxval < 1:
            raise ValueError(f"maxval must be a positive integer, got {self.maxval}")
        if px.min() < 0 or px.max() > self.maxval:
            raise ValueError(f"pixel values must lie in [0, {self.maxval}]")
        px = px.astype(_storage_dtype(self.maxval), copy=True)
        px.setflags(write=False)
        object.__setattr__(self, "pixels", px)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RawImage)
            and self.maxval == other.maxval
            and self.pixels.shape == other.pixels.shape
            and bool(np.array_equal(self.pixels, other.pixels))
        )


@dataclass(frozen=True, eq=False)
class GrayImage:
    """Continuous image with gray levels strictly inside (-1, 1)."""

    pixels: np.ndarray

    def __post_init__(self):
        px = np.asarray(self.pixels, dtype=np.float64)
        if px.ndim != 2:
            raise ValueError(f"pixels must be 2-D (height, width), got shape {px.shape}")
        if px.size == 0:
            raise ValueError("image must contain at least one pixel")
        if not np.isfinite(px).all():
            raise ValueError("gray levels must all be finite")
        if (np.abs(px) >= 1.0).any():
            raise ValueError("gray levels must lie strictly inside (-1, 1)")
        px = px.copy()
        px.setflags(write=False)
        object.__setattr__(self, "pixels", px)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def count(self) -> int:
        """Number of pixels in the spatial domain."""
        return self.pixels.size

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GrayImage)
            and self.pixels.shape == other.pixels.shape
            and bool(np.array_equal(self.pixels, other.pixels))
        )


def decode_pixel(g: int, maxval: int) -> float:
    """Map an integer code in [0, maxval] to a gray level.

    Strictly increasing in g; the result never reaches the interval
    endpoints.  Out-of-range codes raise ValueError.
    """
    if maxval < 1:
        raise ValueError(f"maxval must be a positive integer, got {maxval}")
    if not 0 <= g <= maxval:
        raise ValueError(f"pixel code {g} outside [0, {maxval}]")
    return (2.0 * g - maxval) / (maxval + 1.0)


def _round_half_away(x: np.ndarray) -> np.ndarray:
    return np.where(x >= 0.0, np.floor(x + 0.5), np.ceil(x - 0.5))


def encode_pixel(v: float, maxval: int) -> int:
    """Map a gray level back to an integer code in [0, maxval].

    Rounds half away from zero, then clamps.  Exact inverse of
    ``decode_pixel`` on every integer code.
    """
    if maxval < 1:
        raise ValueError(f"maxval must be a positive integer, got {maxval}")
    x = (v * (maxval + 1.0) + maxval) / 2.0
    g = math.floor(x + 0.5) if x >= 0.0 else math.ceil(x - 0.5)
    return int(min(max(g, 0), maxval))


def decode_image(img: RawImage) -> GrayImage:
    """Decode every pixel of a RawImage; dimensions are preserved."""
    m = float(img.maxval)
    values = (2.0 * img.pixels.astype(np.float64) - m) / (m + 1.0)
    return GrayImage(values)


def encode_image(img: GrayImage, maxval: int) -> RawImage:
    """Encode every pixel of a GrayImage into integer codes in [0, maxval]."""
    if maxval < 1:
        raise ValueError(f"maxval must be a positive integer, got {maxval}")
    x = (img.pixels * (maxval + 1.0) + maxval) / 2.0
    codes = np.clip(_round_half_away(x), 0, maxval)
    return RawImage(codes.astype(np.int64), maxval)
