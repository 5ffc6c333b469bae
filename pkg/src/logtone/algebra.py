"""Scalar algebra of the bounded gray-level space (-1, 1).

Gray levels are real numbers strictly inside the open interval (-1, 1).
The interval carries a full vector-space structure: a bounded addition

    gray_add(a, b) = (a + b) / (1 + a*b)

a matching subtraction, and multiplication by an ordinary real scalar.
The map ``to_log`` (half the log of the odds ratio, i.e. atanh) carries
this structure onto the real line, where the operations become plain
addition and scalar multiplication; ``from_log`` is its inverse.  A dot
product and norm defined through ``to_log`` make the space Euclidean.

All functions are pure and operate on plain floats (array helpers for
bulk pixel work are suffixed ``_array``).  Results of the bounded
operations never leave the open interval: outputs that would round onto
the boundary are pulled just inside it.
"""

from __future__ import annotations

import math

import numpy as np

# Half-width of the exclusion zone around the interval endpoints.  The
# boundary itself is never a legal gray level (the log map diverges
# there), so constructed values are kept at least GRAY_EPS away from it.
GRAY_EPS = 1e-12
GRAY_LIMIT = 1.0 - GRAY_EPS


def clamp_gray(x: float) -> tuple[float, bool]:
    """Force an arbitrary real into the open interval.

    Returns ``(value, clamped)`` where ``clamped`` records whether the
    input had to be moved.  Values land in [-GRAY_LIMIT, GRAY_LIMIT].
    """
    x = float(x)
    if math.isnan(x):
        raise ValueError("gray level must be a finite real, got nan")
    if x > GRAY_LIMIT:
        return GRAY_LIMIT, True
    if x < -GRAY_LIMIT:
        return -GRAY_LIMIT, True
    return x, False


def as_gray(x: float) -> float:
    """Clamp into the open interval, discarding the report flag."""
    return clamp_gray(x)[0]


def gray_add(a: float, b: float) -> float:
    """Bounded sum of two gray levels: (a + b) / (1 + a*b).

    Commutative, associative (up to rounding), with neutral element 0
    and inverse ``gray_neg``.  Closed on the open interval.
    """
    v = (a + b) / (1.0 + a * b)
    # Rounding can touch the boundary when both inputs sit at the clamp
    # limit; pull the result back inside.
    if v >= 1.0:
        return GRAY_LIMIT
    if v <= -1.0:
        return -GRAY_LIMIT
    return v


def gray_sub(a: float, b: float) -> float:
    """Bounded difference of two gray levels: (a - b) / (1 - a*b)."""
    v = (a - b) / (1.0 - a * b)
    if v >= 1.0:
        return GRAY_LIMIT
    if v <= -1.0:
        return -GRAY_LIMIT
    return v


def gray_neg(v: float) -> float:
    """Additive inverse: gray_add(v, gray_neg(v)) == 0."""
    return -v


def gray_mul(lam: float, v: float) -> float:
    """Multiply a gray level by a real scalar.

    Computed through the log domain as from_log(lam * to_log(v)), which
    is algebraically identical to the closed form
    ((1+v)**lam - (1-v)**lam) / ((1+v)**lam + (1-v)**lam) but does not
    overflow for large ``lam`` or ``v`` near the endpoints.
    """
    if lam == 1.0:
        return v
    if lam == -1.0:
        return -v
    if lam == 0.0:
        return 0.0
    return from_log(lam * to_log(v))


def to_log(v: float) -> float:
    """Map a gray level to its unbounded log coordinate.

    Equals 0.5 * ln((1+v) / (1-v)), i.e. atanh.  Strictly increasing,
    odd, and zero at zero.  Inputs on or beyond the clamp limit are
    pulled inside first so the logarithm stays finite.
    """
    if v > GRAY_LIMIT:
        v = GRAY_LIMIT
    elif v < -GRAY_LIMIT:
        v = -GRAY_LIMIT
    return math.atanh(v)


def from_log(x: float) -> float:
    """Inverse of ``to_log``: map a log coordinate to a gray level.

    Equals tanh(x) = (e**(2x) - 1) / (e**(2x) + 1).  tanh saturates to
    exactly +/-1.0 in double precision once |x| exceeds about 18.7;
    those results are clamped just inside the interval so closure holds
    for every finite x.
    """
    v = math.tanh(x)
    if v >= 1.0:
        return GRAY_LIMIT
    if v <= -1.0:
        return -GRAY_LIMIT
    return v


def gray_dot(a: float, b: float) -> float:
    """Dot product of two gray levels: to_log(a) * to_log(b).

    Plain real number, symmetric, bilinear with respect to gray_add and
    gray_mul.
    """
    return to_log(a) * to_log(b)


def gray_norm(v: float) -> float:
    """Norm induced by the dot product: |to_log(v)|.  Zero iff v == 0."""
    return abs(to_log(v))


def to_log_array(values: np.ndarray) -> np.ndarray:
    """Vectorized ``to_log`` with the same boundary guard."""
    return np.arctanh(np.clip(values, -GRAY_LIMIT, GRAY_LIMIT))


def from_log_array(x: np.ndarray) -> np.ndarray:
    """Vectorized ``from_log``: tanh with saturated entries pulled inside."""
    v = np.tanh(x)
    saturated = np.abs(v) >= 1.0
    if saturated.any():
        v = np.where(saturated, np.copysign(GRAY_LIMIT, v), v)
    return v


def saturation_count(x: np.ndarray) -> int:
    """Number of log coordinates whose gray value would need clamping.

    A nonzero count means tanh rounded onto the interval boundary for
    some entries, i.e. information was lost to clamping.
    """
    return int(np.count_nonzero(np.abs(np.tanh(x)) >= 1.0))
