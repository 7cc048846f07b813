from __future__ import annotations

import numpy as np
import pytest
from hypothesis import settings

from entirefn import (
    ClassTag,
    EntireFunctionSpec,
    Ordering,
    Pairing,
    ZeroSequence,
    make_symmetric_spec,
)

settings.register_profile("suite", max_examples=60, deadline=None)
settings.load_profile("suite")


def interleaved_taus(k_max: int) -> np.ndarray:
    """Offsets +1, -1, +2, -2, ..., +k_max, -k_max."""
    taus = np.empty(2 * k_max)
    k = np.arange(1, k_max + 1, dtype=float)
    taus[0::2] = k
    taus[1::2] = -k
    return taus


@pytest.fixture(scope="session")
def sinh_line_spec() -> EntireFunctionSpec:
    """Genus-0 line fixture: zeros 1 +- ik, k <= 5000 (10^4 zeros).

    With a unit center value the truncated product at s = 1 + u equals
    prod_{k<=5000} (1 + u^2/k^2), which converges to sinh(pi*u)/(pi*u).
    """
    return make_symmetric_spec(
        xi=1.0, taus=interleaved_taus(5000), value_at_center=1.0 + 0j
    )


@pytest.fixture(scope="session")
def sinh_genus1_spec() -> EntireFunctionSpec:
    """Genus-1 fixture: zeros +-ik, k <= 2000, unit origin value, q = 0.

    The truncated product equals prod_{k<=2000} (1 + s^2/k^2) exactly (the
    per-pair exponential terms cancel), approximating sinh(pi*s)/(pi*s).
    """
    k = np.arange(1, 2001, dtype=float)
    zeros = np.empty(4000, dtype=np.complex128)
    zeros[0::2] = 1j * k
    zeros[1::2] = -1j * k
    seq = ZeroSequence(
        zeros=zeros,
        ordering=Ordering.AS_GIVEN,
        pairing=Pairing.CONJUGATE_PAIRS,
        source="fixture:genus1",
    ).sorted_by_modulus()
    return EntireFunctionSpec(
        class_tag=ClassTag.L, value_at_zero=1.0 + 0j, zero_sequence=seq
    )


@pytest.fixture(scope="session")
def lbar_spec() -> EntireFunctionSpec:
    """Genus-1 line fixture with a nonzero rate constant."""
    return make_symmetric_spec(
        xi=1.0,
        taus=interleaved_taus(200),
        value_at_center=1.0 + 0j,
        class_tag=ClassTag.L_BAR,
        q_constant=0.3 + 0j,
    )


@pytest.fixture(scope="session")
def poly_spec() -> EntireFunctionSpec:
    """Single-zero polynomial fixture: S(s) = 1 - s/2."""
    seq = ZeroSequence(zeros=np.array([2.0 + 0j]), pairing=Pairing.NONE)
    return EntireFunctionSpec(
        class_tag=ClassTag.Y, value_at_zero=1.0 + 0j, zero_sequence=seq
    )


@pytest.fixture(scope="session")
def duplicated_zero_spec() -> EntireFunctionSpec:
    """Line fixture with the zero 1+1j listed twice (a double zero)."""
    return make_symmetric_spec(
        xi=1.0, taus=np.array([1.0, 1.0, -1.0, -1.0]), value_at_center=1.0 + 0j
    )
