import cmath
import math

import numpy as np
import pytest

from cohtrap.coherence import (
    initial_coherence,
    l1_coherence,
    rel_entropy_coherence,
    stationary_coherence,
)
from cohtrap.dephasing import BathSpec, CorrelationSpec, ModelParams, QubitSpec, QubitState
from cohtrap.errors import DomainError
from cohtrap.mathcore import binary_entropy


def make(alpha=0.2, mu=1.46, lam=0.0, upsilon=1.5, omega0=0.0):
    return ModelParams(
        bath=BathSpec(alpha=alpha, mu=mu),
        corr=CorrelationSpec(lam=lam, upsilon=upsilon),
        qubit=QubitSpec(omega0=omega0),
    )


def equal_state(off):
    return QubitState(rho_ee=0.5, rho_gg=0.5, rho_eg=off)


class TestRelEntropyCoherence:
    def test_diagonal_state(self):
        assert rel_entropy_coherence(equal_state(0.0)) == 0.0
        assert rel_entropy_coherence(QubitState(0.3, 0.7, 0.0)) == 0.0

    def test_plus_projector(self):
        assert rel_entropy_coherence(equal_state(0.5)) == pytest.approx(1.0, abs=1e-12)

    def test_stationary_offdiagonal_anchor(self):
        # |rho_eg| = |surviving factor| / 2 at the coupling/Ohmicity anchor;
        # equals 1 - H2((1 + 0.4923904)/2) by direct entropy evaluation.
        c = rel_entropy_coherence(equal_state(0.5 * 0.4923903567022504))
        assert c == pytest.approx(0.1827468836460163, abs=1e-12)
        assert c == pytest.approx(0.1827, abs=5e-4)

    def test_positivity_rejected(self):
        with pytest.raises(DomainError):
            rel_entropy_coherence(equal_state(0.51))
        with pytest.raises(DomainError):
            rel_entropy_coherence(QubitState(0.9, 0.1, 0.31))


class TestL1Coherence:
    def test_anchors(self):
        assert l1_coherence(equal_state(0.0)) == 0.0
        assert l1_coherence(equal_state(0.5)) == pytest.approx(1.0, abs=1e-15)
        assert l1_coherence(equal_state(0.224664)) == pytest.approx(0.449328, abs=1e-12)

    def test_equals_factor_magnitude_at_equal_weights(self):
        assert l1_coherence(equal_state(0.5 * 0.449329)) == pytest.approx(0.449329, abs=1e-12)


class TestMeasureProperties:
    def test_monotone_in_offdiagonal(self):
        offs = np.linspace(0.0, 0.5, 101)
        rel = [rel_entropy_coherence(equal_state(float(o))) for o in offs]
        l1 = [l1_coherence(equal_state(float(o))) for o in offs]
        assert all(b > a for a, b in zip(rel, rel[1:]))
        assert all(b > a for a, b in zip(l1, l1[1:]))

    def test_phase_invariance(self):
        rng = np.random.default_rng(21)
        for _ in range(100):
            mag = float(rng.uniform(0.0, 0.5))
            phase = cmath.exp(1j * float(rng.uniform(0.0, 2.0 * math.pi)))
            base = equal_state(mag)
            rotated = equal_state(mag * phase)
            assert rel_entropy_coherence(rotated) == pytest.approx(
                rel_entropy_coherence(base), abs=1e-12
            )
            assert l1_coherence(rotated) == pytest.approx(l1_coherence(base), abs=1e-12)

    def test_vanish_iff_diagonal(self):
        assert rel_entropy_coherence(equal_state(0.0)) == 0.0
        assert l1_coherence(equal_state(0.0)) == 0.0
        for off in (1e-6, 0.1, 0.4999):
            assert rel_entropy_coherence(equal_state(off)) > 0.0
            assert l1_coherence(equal_state(off)) > 0.0


class TestStationaryCoherence:
    def test_uncorrelated_anchor(self):
        cv = stationary_coherence(make(lam=0.0))
        assert cv.rel_entropy == pytest.approx(0.1827, abs=5e-4)
        assert cv.rel_entropy == pytest.approx(0.1827468836460163, abs=1e-12)
        assert cv.l1 == pytest.approx(0.4923903567022504, abs=1e-12)

    def test_fully_correlated_anchor(self):
        cv = stationary_coherence(make(lam=1.0))
        assert cv.rel_entropy == pytest.approx(0.3878, abs=1e-3)
        assert cv.rel_entropy == pytest.approx(0.3878153875756699, abs=1e-12)

    def test_sub_ohmic_vanishes(self):
        cv = stationary_coherence(make(mu=-0.5))
        assert cv.rel_entropy == 0.0
        assert cv.l1 == 0.0

    def test_independent_of_omega0(self):
        a = stationary_coherence(make(lam=0.6, omega0=0.0))
        b = stationary_coherence(make(lam=0.6, omega0=4.0))
        assert a.rel_entropy == pytest.approx(b.rel_entropy, abs=1e-12)
        assert a.l1 == pytest.approx(b.l1, abs=1e-12)


class TestInitialCoherence:
    def test_uncorrelated_is_maximal(self):
        assert initial_coherence(make(lam=0.0)) == pytest.approx(1.0, abs=1e-12)

    def test_fully_correlated_value(self):
        # Independent oracle: 1 - H2((1 + factor0)/2) with
        # factor0 = exp(-G(1.5)/2) = 0.6420344 gives 0.3221532 (mpmath).
        val = initial_coherence(make(lam=1.0, mu=2.0, upsilon=1.5))
        assert val == pytest.approx(1.0 - binary_entropy((1.0 + 0.6420343559864719) / 2.0), abs=1e-12)
        assert val == pytest.approx(0.3221532242973963, abs=1e-9)

    def test_correlation_strictly_lowers_initial_coherence(self):
        base = initial_coherence(make(lam=0.0))
        prev = base
        for lam in (0.1, 0.5, 1.0):
            val = initial_coherence(make(lam=lam, mu=2.0))
            assert val < base
            assert val < prev  # also monotone along this slice
            prev = val
