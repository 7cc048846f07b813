"""Elementary product factors with numerically stable logarithms.

The genus-p factor is

    E(s, 0) = 1 - s
    E(s, p) = (1 - s) * exp(s + s^2/2 + ... + s^p/p)      (p >= 1)

so that log E(s, p) = -sum_{m > p} s^m / m for |s| < 1.  Two evaluation
paths are used: inside |s| <= 1/2 the tail series gives both the log and the
value with full relative accuracy (the direct form suffers cancellation in
the log near s = 0); outside, the direct form with a principal-branch
log(1 - s) is exact and the series may not converge fast (or at all).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

__all__ = ["PrimaryFactorValue", "primary_factor", "log_primary_factor_tail"]

# Path-switch radius: series tail used for |s| <= 1/2, direct form beyond.
SERIES_RADIUS = 0.5
# Relative truncation target for the log-tail series.
SERIES_RELATIVE_TOL = 1e-15


@dataclass(frozen=True)
class PrimaryFactorValue:
    """Factor value with its logarithm (absent exactly when the value is 0).

    ``log_value`` is the tail series on the series path; on the direct path
    it is the principal log(1 - s) plus the exact polynomial
    s + s^2/2 + ... + s^p/p, so exp(log_value) reproduces ``value`` but its
    imaginary part is reduced to (-pi, pi] only when the polynomial vanishes
    (p = 0).
    """

    value: complex
    log_value: complex | None
    genus_used: int

    def __post_init__(self) -> None:
        if (self.value == 0) != (self.log_value is None):
            raise ValueError("log_value must be absent exactly when value == 0")


def _tail_series(s: complex, p: int) -> complex:
    """-sum_{m>p} s^m/m, truncated at relative tolerance SERIES_RELATIVE_TOL.

    Requires |s| < 1.  The remainder after the term s^M/M is bounded by
    |s|^(M+1) / ((M+1)(1-|s|)), which drives the stopping rule.
    """
    if s == 0:
        return 0j
    r = abs(s)
    term = s ** (p + 1)
    total = term / (p + 1)
    m = p + 2
    while True:
        term *= s
        contribution = term / m
        total += contribution
        # Geometric remainder bound relative to the accumulated sum.
        bound = abs(term) * r / ((m + 1) * (1.0 - r))
        if bound <= SERIES_RELATIVE_TOL * abs(total):
            break
        m += 1
    return -total


def _poly(s: complex, p: int) -> complex:
    """s + s^2/2 + ... + s^p/p (0 for p = 0)."""
    total = 0j
    power = 1.0 + 0j
    for m in range(1, p + 1):
        power *= s
        total += power / m
    return total


def _exp_saturating(z: complex) -> complex:
    """exp(z), overflowing to a phase-correct complex infinity instead of raising."""
    try:
        return cmath.exp(z)
    except OverflowError:
        return cmath.rect(math.inf, z.imag)


def primary_factor(s: complex, p: int) -> PrimaryFactorValue:
    """Evaluate the genus-p elementary factor at s.

    Raises ValueError for negative p.  The value is exactly 0 iff s == 1
    (then no logarithm is reported).
    """
    if p < 0:
        raise ValueError(f"factor genus must be >= 0, got {p}")
    s = complex(s)
    if s == 1:
        return PrimaryFactorValue(value=0j, log_value=None, genus_used=p)
    if abs(s) <= SERIES_RADIUS:
        log_value = _tail_series(s, p)
        return PrimaryFactorValue(value=cmath.exp(log_value), log_value=log_value, genus_used=p)
    poly = _poly(s, p)
    one_minus = 1.0 - s
    # the log stays finite far beyond where the linear-domain value overflows
    return PrimaryFactorValue(
        value=one_minus * _exp_saturating(poly),
        log_value=cmath.log(one_minus) + poly,
        genus_used=p,
    )


def log_primary_factor_tail(s: complex, p: int, terms: int) -> complex:
    """Partial tail sum -sum_{m=p+1}^{p+terms} s^m / m.

    Defined for |s| < 1 only (the series diverges on and outside the unit
    circle); ``terms`` must be positive.
    """
    if p < 0:
        raise ValueError(f"factor genus must be >= 0, got {p}")
    if terms < 1:
        raise ValueError(f"terms must be >= 1, got {terms}")
    s = complex(s)
    if abs(s) >= 1.0:
        raise ValueError("tail series requires |s| < 1")
    if s == 0:
        return 0j
    power = s ** (p + 1)
    total = power / (p + 1)
    for m in range(p + 2, p + terms + 1):
        power *= s
        total += power / m
    return -total
