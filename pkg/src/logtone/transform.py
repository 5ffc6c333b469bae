"""Affine tonal transforms and automatic parameter estimation.

A transform is a pair (alpha, beta) acting on a gray level v as

    alpha  (x)  (v  (+)  beta)

using the bounded operations: add the offset beta, then scale by alpha.
In the log domain this is the straight line x -> alpha * (x + b) with
b = to_log(beta); in gray-level space it is an S-shaped curve that can
never leave the open interval, so no output ever needs clipping.

``estimate_transform`` picks (alpha, beta) so the transformed image
acquires prescribed target statistics; with the default target (mean 0,
variance 1/3, i.e. a uniform gray level) this is

    alpha = sqrt(target variance) / sqrt(image variance)
    beta  = gray_neg(image mean)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .algebra import (
    from_log,
    from_log_array,
    gray_sub,
    saturation_count,
    to_log,
    to_log_array,
)
from .image import GrayImage
from .stats import ImageStats, TargetStats, UNIFORM_TARGET, compute_stats

# Images whose log-domain variance falls below this are treated as
# constant: no finite gain can normalize them.
VARIANCE_FLOOR = 1e-18


class ConstantImageError(ValueError):
    """Raised when enhancement is asked to normalize a constant image."""


@dataclass(frozen=True)
class AffineTransform:
    """Log-domain gain ``alpha`` and gray-level offset ``beta``."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not math.isfinite(self.alpha):
            raise ValueError("alpha must be finite")
        if not (math.isfinite(self.beta) and abs(self.beta) < 1.0):
            raise ValueError("beta must lie strictly inside (-1, 1)")


IDENTITY = AffineTransform(1.0, 0.0)


def estimate_transform(stats: ImageStats, target: TargetStats = UNIFORM_TARGET) -> AffineTransform:
    """Choose (alpha, beta) so the transformed image hits ``target``.

    alpha matches the variances; beta shifts the mean so the output's
    log-domain mean lands exactly on the target mean.  Refuses constant
    images (variance at or below VARIANCE_FLOOR) rather than emitting an
    unbounded gain.
    """
    if stats.variance <= VARIANCE_FLOOR:
        raise ConstantImageError(
            f"image variance {stats.variance:g} is below {VARIANCE_FLOOR:g}; "
            "a constant image cannot be normalized"
        )
    sigma_image = math.sqrt(stats.variance)
    sigma_target = math.sqrt(target.variance)
    alpha = sigma_target / sigma_image
    # General form: pre-gain target mean, expressed in gray levels, minus
    # the image mean.  For target mean 0 this reduces to gray_neg(mean).
    pre_mean = from_log(to_log(target.mean) * sigma_image / sigma_target)
    beta = gray_sub(pre_mean, stats.mean)
    return AffineTransform(alpha=alpha, beta=beta)


def apply_point(t: AffineTransform, v: float) -> float:
    """Transform a single gray level."""
    if t.alpha == 1.0 and t.beta == 0.0:
        return v
    return from_log(t.alpha * (to_log(v) + to_log(t.beta)))


def apply_image(t: AffineTransform, img: GrayImage) -> GrayImage:
    """Transform every pixel; dimensions are preserved.

    For positive alpha the map is strictly increasing, so the ordering
    of pixel values is preserved.  The exact identity transform returns
    the input unchanged.
    """
    if t.alpha == 1.0 and t.beta == 0.0:
        return img
    y = t.alpha * (to_log_array(img.pixels) + to_log(t.beta))
    return GrayImage(from_log_array(y))


def clamp_count(t: AffineTransform, img: GrayImage) -> int:
    """Number of pixels whose transformed value required boundary clamping.

    Zero for every transform on every image except when outputs
    saturate past double-precision resolution; the naive raw-domain
    stretch has no such guarantee, which is the point of comparison.
    """
    if t.alpha == 1.0 and t.beta == 0.0:
        return 0
    y = t.alpha * (to_log_array(img.pixels) + to_log(t.beta))
    return saturation_count(y)


class EnhanceResult(NamedTuple):
    image: GrayImage
    transform: AffineTransform
    stats: ImageStats


def enhance(img: GrayImage, target: TargetStats = UNIFORM_TARGET) -> EnhanceResult:
    """Automatically normalize an image to the target statistics.

    Returns the enhanced image, the estimated transform, and the input
    statistics.  Raises ConstantImageError for constant images.
    """
    stats = compute_stats(img)
    t = estimate_transform(stats, target)
    return EnhanceResult(image=apply_image(t, img), transform=t, stats=stats)


def compose(t2: AffineTransform, t1: AffineTransform) -> AffineTransform:
    """Transform equivalent to applying ``t1`` first, then ``t2``.

    In the log domain both are straight lines x -> a*(x + b), so the
    composition has gain a2*a1 and offset b1 + b2/a1.
    """
    if t1.alpha == 0.0:
        raise ValueError("cannot compose after a zero-gain transform")
    alpha = t2.alpha * t1.alpha
    beta = from_log(to_log(t1.beta) + to_log(t2.beta) / t1.alpha)
    return AffineTransform(alpha=alpha, beta=beta)


def invert(t: AffineTransform) -> AffineTransform:
    """Transform that undoes ``t``: invert(t) after t is the identity."""
    if t.alpha == 0.0:
        raise ValueError("zero-gain transform is not invertible")
    beta = from_log(-t.alpha * to_log(t.beta))
    return AffineTransform(alpha=1.0 / t.alpha, beta=beta)


# Curve samples stop this far from the interval endpoints, where the log
# coordinate diverges (finer than 8-bit code resolution).
CURVE_MARGIN = 1.0 / 1024.0


def sample_curve(t: AffineTransform, n: int) -> list[tuple[float, float]]:
    """Sample the transfer curve at ``n`` evenly spaced input levels.

    Inputs cover [-1 + CURVE_MARGIN, 1 - CURVE_MARGIN].  For positive
    alpha both coordinates are strictly increasing.
    """
    if n < 2:
        raise ValueError(f"need at least 2 samples, got {n}")
    v = np.linspace(-1.0 + CURVE_MARGIN, 1.0 - CURVE_MARGIN, n)
    if t.alpha == 1.0 and t.beta == 0.0:
        out = v
    else:
        out = from_log_array(t.alpha * (to_log_array(v) + to_log(t.beta)))
    return list(zip(v.tolist(), out.tolist()))
