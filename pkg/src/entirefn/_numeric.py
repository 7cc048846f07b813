"""Shared numeric helpers: exact summation and log-log slope fits.

All reductions in this package that feed user-visible values go through
``fsum``-based helpers.  ``math.fsum`` returns the correctly rounded sum of
its inputs, so results do not depend on accumulation order and repeated runs
are bit-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def real_sum(values) -> float:
    """Exactly rounded sum of real values."""
    return math.fsum(values)


def complex_sum(values: np.ndarray) -> complex:
    """Exactly rounded sum of a complex array (component-wise fsum)."""
    arr = np.asarray(values)
    if arr.size == 0:
        return 0j
    return complex(math.fsum(arr.real), math.fsum(arr.imag))


@dataclass(frozen=True)
class SlopeFit:
    """Least-squares line through (log x, log y) points."""

    slope: float
    intercept: float
    rms_residual: float
    n_points: int


def loglog_fit(x, y) -> SlopeFit:
    """Fit log y = slope * log x + intercept by least squares.

    Inputs must be positive; callers filter zeros/negatives first.
    """
    lx = np.log(np.asarray(x, dtype=float))
    ly = np.log(np.asarray(y, dtype=float))
    if lx.size < 2:
        raise ValueError("log-log fit needs at least 2 points")
    design = np.column_stack([lx, np.ones_like(lx)])
    coef, *_ = np.linalg.lstsq(design, ly, rcond=None)
    slope, intercept = float(coef[0]), float(coef[1])
    resid = ly - (slope * lx + intercept)
    rms = float(np.sqrt(np.mean(resid * resid)))
    return SlopeFit(slope=slope, intercept=intercept, rms_residual=rms, n_points=int(lx.size))
