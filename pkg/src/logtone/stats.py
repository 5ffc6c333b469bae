"""Log-domain image statistics.

The mean of a gray image is the bounded-arithmetic average of its
pixels; the variance is the spread of the pixels around that mean,
measured with the gray-level norm.  Both reduce to ordinary mean and
variance of the log coordinates, so the implementation maps every pixel
through ``to_log`` once and does plain real arithmetic there.

Sums use ``math.fsum`` (exactly rounded compensated summation) over the
pixels in row-major order, so results are deterministic and independent
of pixel ordering.

``log_mean_fold`` keeps the literal definition - a bounded-addition fold
over per-pixel scalar multiples - as a slow cross-check path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .algebra import from_log, gray_add, gray_mul, to_log, to_log_array
from .image import GrayImage


@dataclass(frozen=True)
class ImageStats:
    """Log-domain statistics of a gray image.

    ``mean`` is a gray level; ``variance`` is measured in squared log
    coordinates; ``count`` is the number of pixels.
    """

    mean: float
    variance: float
    count: int

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be positive")
        if self.variance < 0.0:
            raise ValueError("variance must be nonnegative")
        if not abs(self.mean) < 1.0:
            raise ValueError("mean must lie strictly inside (-1, 1)")


@dataclass(frozen=True)
class TargetStats:
    """Statistics the enhancement should produce.

    Defaults describe a uniformly distributed gray level on the open
    interval: mean 0 and variance 1/3.
    """

    mean: float = 0.0
    variance: float = 1.0 / 3.0

    def __post_init__(self):
        if not abs(self.mean) < 1.0:
            raise ValueError("target mean must lie strictly inside (-1, 1)")
        if not self.variance > 0.0:
            raise ValueError("target variance must be positive")


UNIFORM_TARGET = TargetStats()


def log_mean(img: GrayImage) -> float:
    """Bounded-arithmetic mean of the image, returned as a gray level."""
    x = to_log_array(img.pixels).ravel()
    return from_log(math.fsum(x) / x.size)


def log_variance(img: GrayImage, mean: float) -> float:
    """Mean squared norm of the deviations from ``mean``.

    Population normalization (divide by the pixel count).  ``mean``
    should be the value returned by ``log_mean``.
    """
    x = to_log_array(img.pixels).ravel()
    d = x - to_log(mean)
    return math.fsum(d * d) / x.size


def compute_stats(img: GrayImage) -> ImageStats:
    """Mean, variance, and pixel count in a single pass over the log values."""
    x = to_log_array(img.pixels).ravel()
    n = x.size
    mean = from_log(math.fsum(x) / n)
    d = x - to_log(mean)
    variance = math.fsum(d * d) / n
    return ImageStats(mean=mean, variance=variance, count=n)


def log_mean_fold(img: GrayImage) -> float:
    """Literal fold form of the mean: gray_add over per-pixel scalar multiples.

    Folds in row-major order.  Algebraically identical to ``log_mean``
    but numerically independent of it, which makes it a useful oracle;
    far slower (one bounded add and scalar multiply per pixel), so not
    the production path.
    """
    flat = img.pixels.ravel()
    inv = 1.0 / flat.size
    acc = 0.0
    for v in flat:
        acc = gray_add(acc, gray_mul(inv, float(v)))
    return acc
