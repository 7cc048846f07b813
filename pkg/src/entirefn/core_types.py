"""Zero-sequence data types, function-class specs, and membership validation.

An entire function of order one is described here by the data that pins it
down: a multiset of nonzero complex zeros, the value at the origin, an
optional exponential-rate constant (genus 1 only), and for the symmetric
classes the vertical line Re s = xi that carries every zero.

Class tags
----------
``Y``        genus 0, zeros anywhere in C \\ {0}
``L``        genus 1, zeros anywhere in C \\ {0}
``Y_tilde``  genus 0, zeros xi + i*tau_k on the line Re s = xi (xi real != 0)
``L_bar``    genus 1, zeros xi + i*tau_k on the line Re s = xi

Finite zero lists stand in for infinite sequences everywhere; validation
verdicts about asymptotic behaviour are therefore three-valued
(pass / fail / indeterminate).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Sequence

import numpy as np

from ._numeric import SlopeFit, complex_sum, loglog_fit, real_sum

__all__ = [
    "ClassTag",
    "Ordering",
    "Pairing",
    "Verdict",
    "ZeroSequence",
    "ValidationCheck",
    "ValidationReport",
    "EntireFunctionSpec",
    "validate_zero_sequence",
    "make_symmetric_spec",
]

# Number of accumulation groups below which asymptotic checks are treated as
# trivially satisfied: a short list is taken as a complete (finite) zero set.
MIN_FIT_GROUPS = 8

# Three-valued slope thresholds: a series sum_j t_j with t_j ~ j**slope
# converges iff slope < -1; verdicts use a +/-0.1 dead band around -1.
SLOPE_DEAD_BAND = 0.1


class ClassTag(str, Enum):
    Y = "Y"
    L = "L"
    Y_TILDE = "Y_tilde"
    L_BAR = "L_bar"

    @property
    def genus(self) -> int:
        return 1 if self in (ClassTag.L, ClassTag.L_BAR) else 0

    @property
    def symmetric(self) -> bool:
        """True for the classes whose zeros sit on a vertical line."""
        return self in (ClassTag.Y_TILDE, ClassTag.L_BAR)


class Ordering(str, Enum):
    BY_MODULUS = "by_modulus"
    AS_GIVEN = "as_given"


class Pairing(str, Enum):
    NONE = "none"
    CONJUGATE_PAIRS = "conjugate_pairs"
    SYMMETRIC_ABOUT_CENTER = "symmetric_about_center"


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    INDETERMINATE = "indeterminate"


def modulus_sort_indices(zeros: np.ndarray) -> np.ndarray:
    """Indices sorting zeros by (|z|, -Im z, Re z).

    The modulus ordering is non-strict; the deterministic tie-break keeps
    conjugate partners adjacent (the +i member first).
    """
    return np.lexsort((zeros.real, -zeros.imag, np.abs(zeros)))


@dataclass(frozen=True)
class TailProfile:
    """Per-group convergence data for one genus (internal).

    ``terms`` holds one nonnegative series term per accumulation group:
    |z|**-(genus+1) for ungrouped zeros, the grouped first-plus-second order
    magnitude |sum 1/z| + sum |z|**-2 for paired genus-0 data, and
    sum |z|**-2 for paired genus-1 data.  ``suffix[j]`` is the exact tail
    sum(terms[j:]).  ``extrapolated_tail`` estimates the contribution beyond
    the available data from the fitted decay slope; it is None whenever the
    fit does not support convergence, and 0.0 for short (treated-as-complete)
    lists.
    """

    genus: int
    terms: np.ndarray
    group_starts: np.ndarray
    suffix: np.ndarray
    verdict: Verdict
    fit: SlopeFit | None
    extrapolated_tail: float | None
    plain_partial_sum: float

    def tail_beyond(self, n_factors: int) -> float | None:
        """Estimated series tail over factors with index >= n_factors.

        Returns None when the data does not support a convergent
        extrapolation (indeterminate or divergent fit).
        """
        if self.extrapolated_tail is None:
            return None
        g0 = int(np.searchsorted(self.group_starts, n_factors, side="left"))
        return float(self.suffix[g0]) + self.extrapolated_tail


def _fit_tail_terms(terms: np.ndarray) -> tuple[Verdict, SlopeFit | None, float | None]:
    """Classify series convergence from per-group term decay.

    Fits log(term) against log(group index) over the last half of the data.
    Slope <= -1.1 reads convergent, >= -0.9 divergent, otherwise
    indeterminate.  Short lists are treated as complete finite zero sets and
    pass trivially with no extrapolated tail.
    """
    n = terms.size
    if n < MIN_FIT_GROUPS:
        return Verdict.PASS, None, 0.0
    idx = np.arange(1, n + 1, dtype=float)
    lo = n // 2
    t = terms[lo:]
    j = idx[lo:]
    keep = t > 0.0
    if int(keep.sum()) < 4:
        if not np.any(t > 0.0):
            # Underflowed tail: decay faster than anything we can fit.
            return Verdict.PASS, None, 0.0
        return Verdict.INDETERMINATE, None, None
    fit = loglog_fit(j[keep], t[keep])
    if fit.slope <= -1.0 - SLOPE_DEAD_BAND:
        # Integral-test extrapolation of c * j**slope beyond the last group.
        c = math.exp(fit.intercept)
        extrap = c * float(n) ** (fit.slope + 1.0) / (-fit.slope - 1.0)
        return Verdict.PASS, fit, extrap
    if fit.slope >= -1.0 + SLOPE_DEAD_BAND:
        return Verdict.FAIL, fit, None
    return Verdict.INDETERMINATE, fit, None


@dataclass(frozen=True, eq=False)
class ZeroSequence:
    """Ordered multiset of complex zeros with accumulation metadata.

    ``ordering`` declares how the list is to be read (sorted by modulus with
    the deterministic tie-break, or exactly as given).  ``pairing`` declares
    which consecutive entries form cancellation groups when products, power
    sums, and tail estimates are accumulated; both pair modes group a zero
    with an immediately following exact conjugate.  ``source`` is free-form
    provenance.

    Instances are immutable; derived arrays are cached on first use.
    """

    zeros: np.ndarray
    ordering: Ordering = Ordering.BY_MODULUS
    pairing: Pairing = Pairing.NONE
    source: str = "constructed"

    def __post_init__(self) -> None:
        arr = np.array(self.zeros, dtype=np.complex128).reshape(-1)
        arr.setflags(write=False)
        object.__setattr__(self, "zeros", arr)
        object.__setattr__(self, "ordering", Ordering(self.ordering))
        object.__setattr__(self, "pairing", Pairing(self.pairing))
        object.__setattr__(self, "_tail_cache", {})

    def __len__(self) -> int:
        return int(self.zeros.size)

    @cached_property
    def moduli(self) -> np.ndarray:
        m = np.abs(self.zeros)
        m.setflags(write=False)
        return m

    def sorted_by_modulus(self) -> "ZeroSequence":
        """Copy with ordering normalized to (|z|, -Im z, Re z)."""
        order = modulus_sort_indices(self.zeros)
        return ZeroSequence(
            zeros=self.zeros[order],
            ordering=Ordering.BY_MODULUS,
            pairing=self.pairing,
            source=self.source,
        )

    @cached_property
    def group_starts(self) -> np.ndarray:
        """Start index of every accumulation group under the declared pairing."""
        z = self.zeros
        n = z.size
        if self.pairing is Pairing.NONE or n == 0:
            return np.arange(n, dtype=np.int64)
        pairable = np.zeros(n, dtype=bool)
        if n > 1:
            pairable[:-1] = (z[1:] == np.conj(z[:-1])) & (z[:-1].imag != 0.0)
        # Fast path: fully paired data (the common constructed layout).
        if n % 2 == 0 and bool(np.all(pairable[0::2])):
            return np.arange(0, n, 2, dtype=np.int64)
        starts = []
        i = 0
        while i < n:
            starts.append(i)
            i += 2 if pairable[i] else 1
        return np.asarray(starts, dtype=np.int64)

    def tail_profile(self, genus: int) -> TailProfile:
        """Convergence profile of the genus-dependent factor-size series."""
        if genus not in (0, 1):
            raise ValueError(f"genus must be 0 or 1, got {genus}")
        cache = self._tail_cache  # type: ignore[attr-defined]
        if genus in cache:
            return cache[genus]
        profile = _build_tail_profile(self, genus)
        cache[genus] = profile
        return profile


def _build_tail_profile(seq: ZeroSequence, genus: int) -> TailProfile:
    z = seq.zeros
    n = z.size
    starts = seq.group_starts
    if n == 0:
        empty = np.zeros(0)
        return TailProfile(
            genus=genus,
            terms=empty,
            group_starts=starts,
            suffix=np.zeros(1),
            verdict=Verdict.PASS,
            fit=None,
            extrapolated_tail=0.0,
            plain_partial_sum=0.0,
        )
    if np.any(z == 0):
        raise ValueError("tail profile undefined for a sequence containing 0")
    recip = 1.0 / z
    inv_sq = recip.real * recip.real + recip.imag * recip.imag
    plain = real_sum(np.abs(recip) if genus == 0 else inv_sq)
    grouped = seq.pairing is not Pairing.NONE
    if genus == 1:
        terms = np.add.reduceat(inv_sq, starts) if grouped else inv_sq.copy()
    elif grouped:
        group_recip = np.add.reduceat(recip, starts)
        terms = np.abs(group_recip) + np.add.reduceat(inv_sq, starts)
    else:
        terms = np.abs(recip)
    verdict, fit, extrap = _fit_tail_terms(terms)
    suffix = np.zeros(terms.size + 1)
    suffix[:-1] = np.cumsum(terms[::-1])[::-1]
    for a in (terms, suffix):
        a.setflags(write=False)
    return TailProfile(
        genus=genus,
        terms=terms,
        group_starts=starts,
        suffix=suffix,
        verdict=verdict,
        fit=fit,
        extrapolated_tail=extrap,
        plain_partial_sum=plain,
    )


@dataclass(frozen=True)
class ValidationCheck:
    name: str
    verdict: Verdict
    measured: float


@dataclass(frozen=True)
class ValidationReport:
    """Three-valued class-membership report for a zero sequence.

    Checks (in order):

    * ``nonzero``            every zero is nonzero; measured = min |z|.
    * ``modulus_ordering``   the declared by-modulus ordering holds;
                             measured = largest ordering violation.
    * ``series_convergence`` the genus-dependent factor-size series
                             converges; measured = plain partial sum
                             of |z|**-(genus+1) over the data.
    * ``modulus_divergence`` |z_k| grows without bound; measured = fitted
                             slope of log |z_k| against log k.

    Indeterminate verdicts occur only for the two asymptotic checks, which
    cannot always be decided from finite data.
    """

    genus: int
    n_zeros: int
    checks: tuple[ValidationCheck, ...]
    overall: Verdict


def _combine(verdicts: Sequence[Verdict]) -> Verdict:
    if any(v is Verdict.FAIL for v in verdicts):
        return Verdict.FAIL
    if any(v is Verdict.INDETERMINATE for v in verdicts):
        return Verdict.INDETERMINATE
    return Verdict.PASS


def validate_zero_sequence(seq: ZeroSequence, genus: int) -> ValidationReport:
    """Check a zero sequence against the structural class requirements.

    Raises ValueError for an empty sequence or a genus outside {0, 1}.
    """
    if genus not in (0, 1):
        raise ValueError(f"genus must be 0 or 1, got {genus}")
    if len(seq) == 0:
        raise ValueError("empty zero sequence")
    z = seq.zeros
    moduli = seq.moduli

    min_mod = float(moduli.min())
    nonzero = ValidationCheck(
        name="nonzero",
        verdict=Verdict.PASS if min_mod > 0.0 else Verdict.FAIL,
        measured=min_mod,
    )

    if seq.ordering is Ordering.BY_MODULUS and len(seq) > 1:
        violation = float(np.max(moduli[:-1] - moduli[1:], initial=0.0))
    else:
        violation = 0.0
    ordering = ValidationCheck(
        name="modulus_ordering",
        verdict=Verdict.PASS if violation <= 0.0 else Verdict.FAIL,
        measured=max(violation, 0.0),
    )

    # Asymptotic checks run on the nonzero entries so a stray 0 (already a
    # hard failure above) cannot poison them.
    if min_mod > 0.0:
        work = seq
    else:
        work = ZeroSequence(
            zeros=z[z != 0],
            ordering=seq.ordering,
            pairing=seq.pairing,
            source=seq.source,
        )
    if len(work) > 0:
        profile = work.tail_profile(genus)
        series = ValidationCheck(
            name="series_convergence",
            verdict=profile.verdict,
            measured=profile.plain_partial_sum,
        )
        growth_verdict, growth_slope = _modulus_growth(work.moduli)
        growth = ValidationCheck(
            name="modulus_divergence", verdict=growth_verdict, measured=growth_slope
        )
    else:
        series = ValidationCheck("series_convergence", Verdict.FAIL, math.inf)
        growth = ValidationCheck("modulus_divergence", Verdict.FAIL, 0.0)

    checks = (nonzero, ordering, series, growth)
    return ValidationReport(
        genus=genus,
        n_zeros=len(seq),
        checks=checks,
        overall=_combine([c.verdict for c in checks]),
    )


def _modulus_growth(moduli: np.ndarray) -> tuple[Verdict, float]:
    """Trend verdict for |z_k| -> infinity from the last half of the data."""
    n = moduli.size
    if n < MIN_FIT_GROUPS:
        return Verdict.PASS, 0.0
    k = np.arange(1, n + 1, dtype=float)
    lo = n // 2
    fit = loglog_fit(k[lo:], moduli[lo:])
    if fit.slope > SLOPE_DEAD_BAND:
        return Verdict.PASS, fit.slope
    if fit.slope < -SLOPE_DEAD_BAND:
        return Verdict.FAIL, fit.slope
    return Verdict.INDETERMINATE, fit.slope


@dataclass(frozen=True, eq=False)
class EntireFunctionSpec:
    """Complete evaluation data for one order-one entire function.

    ``value_at_zero`` is the (nonzero) function value at s = 0.
    ``q_constant`` is the exponential rate in the genus-1 representation and
    must be 0 for the genus-0 classes.  ``center_xi`` is required exactly for
    the symmetric classes and must match the real part of every zero.
    """

    class_tag: ClassTag
    value_at_zero: complex
    zero_sequence: ZeroSequence
    q_constant: complex = 0j
    center_xi: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "class_tag", ClassTag(self.class_tag))
        object.__setattr__(self, "value_at_zero", complex(self.value_at_zero))
        object.__setattr__(self, "q_constant", complex(self.q_constant))
        if self.center_xi is not None:
            object.__setattr__(self, "center_xi", float(self.center_xi))
        if self.value_at_zero == 0:
            raise ValueError("value_at_zero must be nonzero")
        if self.genus == 0 and self.q_constant != 0:
            raise ValueError("genus-0 classes require q_constant = 0")
        z = self.zero_sequence.zeros
        if z.size and not np.all(np.isfinite(z)):
            raise ValueError("zero sequence contains a non-finite entry")
        if z.size and np.any(z == 0):
            raise ValueError("zero sequence contains 0")
        if self.class_tag.symmetric:
            if self.center_xi is None:
                raise ValueError(f"class {self.class_tag.value} requires center_xi")
            if self.center_xi == 0.0:
                raise ValueError("center_xi must be nonzero")
            if z.size and not np.all(z.real == self.center_xi):
                raise ValueError("every zero of a symmetric-class spec must have Re z = center_xi")
            if z.size and np.any(z.imag == 0.0):
                raise ValueError("symmetric-class zeros must have nonzero imaginary part")
        elif self.center_xi is not None:
            raise ValueError(f"center_xi is meaningful only for symmetric classes, not {self.class_tag.value}")

    @property
    def genus(self) -> int:
        return self.class_tag.genus

    @property
    def n_zeros(self) -> int:
        return len(self.zero_sequence)


def make_symmetric_spec(
    xi: float,
    taus: Sequence[float],
    value_at_center: complex,
    class_tag: ClassTag | str = ClassTag.Y_TILDE,
    q_constant: complex = 0j,
) -> EntireFunctionSpec:
    """Build a symmetric-class spec from line offsets tau_k.

    The zeros are xi + i*tau_k, normalized to modulus order with symmetric
    pairing.  The stored origin value is obtained by inverting the finite
    product for the value at the center: with P = product over retained
    zeros of (1 - xi/z) (times exp(q*xi) * prod exp(xi/z) at genus 1),
    value_at_zero = value_at_center / P, so evaluating at s = xi at the same
    truncation recovers ``value_at_center``.
    """
    tag = ClassTag(class_tag)
    if not tag.symmetric:
        raise ValueError(f"make_symmetric_spec requires class Y_tilde or L_bar, got {tag.value}")
    xi = float(xi)
    if xi == 0.0 or not math.isfinite(xi):
        raise ValueError("xi must be a nonzero finite real")
    tau_arr = np.asarray(taus, dtype=float).reshape(-1)
    if tau_arr.size == 0:
        raise ValueError("taus must be nonempty")
    if not np.all(np.isfinite(tau_arr)) or np.any(tau_arr == 0.0):
        raise ValueError("every tau must be finite and nonzero")
    value_at_center = complex(value_at_center)
    if value_at_center == 0:
        raise ValueError("value_at_center must be nonzero")
    q_constant = complex(q_constant)

    zeros = xi + 1j * tau_arr
    seq = ZeroSequence(
        zeros=zeros,
        ordering=Ordering.AS_GIVEN,
        pairing=Pairing.SYMMETRIC_ABOUT_CENTER,
        source=f"constructed:symmetric xi={xi!r} n={tau_arr.size} center_value_inverted_at={tau_arr.size}",
    ).sorted_by_modulus()

    # Invert the same truncated product eval_product uses, via a unit-value
    # probe spec, so the center value round-trips to rounding error.
    from .product_engine import eval_product

    probe = EntireFunctionSpec(
        class_tag=tag,
        value_at_zero=1.0 + 0j,
        zero_sequence=seq,
        q_constant=q_constant,
        center_xi=xi,
    )
    center_product = eval_product(probe, complex(xi), len(seq)).value
    if center_product == 0:
        raise ValueError("degenerate data: truncated product vanishes at the center")
    return EntireFunctionSpec(
        class_tag=tag,
        value_at_zero=value_at_center / center_product,
        zero_sequence=seq,
        q_constant=q_constant,
        center_xi=xi,
    )
