"""Log-log power-law exponent fitting.

This is the only module that touches floating point; everything
upstream is exact.  The fit is ordinary least squares of log y against
log x (natural logs), which turns a power law y = C * x^a into slope a
and intercept log C.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import ValidationError

#: A fitted slope matches a target exponent when within this distance.
DEFAULT_MATCH_TOLERANCE = 0.05


@dataclass(frozen=True)
class ExponentFit:
    slope: float
    intercept: float
    residual: float
    points_used: int

    def __post_init__(self):
        if self.points_used < 2:
            raise ValidationError("a fit needs at least 2 points")
        if self.residual < 0:
            raise ValidationError("residual cannot be negative")


def fit_exponent(pairs: Sequence[tuple[int, int]]) -> ExponentFit:
    """Least-squares slope of log y against log x.

    All inputs must be positive; the residual is the sum of squared
    log-scale errors, zero (up to rounding) on a pure power law.
    """
    if len(pairs) < 2:
        raise ValidationError(f"need at least 2 points, got {len(pairs)}")
    for x, y in pairs:
        if x <= 0 or y <= 0:
            raise ValidationError(f"points must be positive, got ({x}, {y})")
    lx = [math.log(x) for x, _ in pairs]
    ly = [math.log(y) for _, y in pairs]
    n = len(pairs)
    mx = sum(lx) / n
    my = sum(ly) / n
    sxx = sum((a - mx) ** 2 for a in lx)
    if sxx == 0:
        raise ValidationError("all x values coincide; the slope is undefined")
    sxy = sum((a - mx) * (b - my) for a, b in zip(lx, ly))
    slope = sxy / sxx
    intercept = my - slope * mx
    residual = sum((b - intercept - slope * a) ** 2 for a, b in zip(lx, ly))
    return ExponentFit(slope=slope, intercept=intercept, residual=max(residual, 0.0),
                       points_used=n)


def match_verdict(slope: float, target: float, tolerance: float) -> str:
    """MATCH when the slope is within `tolerance` of the target."""
    if tolerance <= 0:
        raise ValidationError("tolerance must be positive")
    return "MATCH" if abs(slope - target) <= tolerance else "MISMATCH"
