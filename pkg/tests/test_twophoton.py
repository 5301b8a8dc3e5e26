import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mismatch_cnot.detection import mismatch_densities
from scipy.stats import unitary_group

from mismatch_cnot.network import IDENTITY, ModeUnitary, coincidence_cnot_network, in_x_basis, logical_rails
from mismatch_cnot.twophoton import (LogicalState, TwoPhotonRailAmplitude, joint_density, output_probabilities,
                                     propagate_basis_pair, propagate_logical)
from mismatch_cnot.wavepacket import GaussianWavepacket


def test_identity_basis_pair():
    A = propagate_basis_pair(IDENTITY, "c0", "t0")
    assert A.coefficients("c0", "t0") == (1, 0)
    assert np.count_nonzero(A.u) == 1 and np.count_nonzero(A.v) == 0


def test_rejects_non_coincidence_inputs():
    with pytest.raises(ValueError):
        propagate_basis_pair(IDENTITY, "t0", "c0")


def test_logical_state_normalisation():
    with pytest.raises(ValueError):
        LogicalState(1.0, 1.0)
    LogicalState(0.6, 0.8j)


def test_flip_amplitude(cnot):
    A = propagate_basis_pair(cnot, "c1", "t0")
    u, v = A.coefficients("c1", "t1")
    assert abs(u + v) == pytest.approx(1 / 3, abs=1e-14)


def test_logical_basis_state_equals_basis_pair(cnot):
    A = propagate_logical(cnot, LogicalState.basis("10"))
    B = propagate_basis_pair(cnot, "c1", "t0")
    np.testing.assert_allclose(A.u, B.u)
    np.testing.assert_allclose(A.v, B.v)


def test_superposition_through_identity():
    A = propagate_logical(IDENTITY, LogicalState.plus_plus())
    np.testing.assert_allclose(A.u, np.full((2, 2), 0.5))
    np.testing.assert_allclose(A.v, 0)


def test_plus_plus_through_cnot_matches_x_basis_table(cnot):
    # brute force: |++> amplitudes at every output rail pair with rails measured
    # in the diagonal basis equal the |++> row of the X-basis CNOT table
    A = propagate_logical(in_x_basis(cnot), LogicalState.basis("00"))
    probs = np.abs(A.u + A.v).ravel() ** 2
    np.testing.assert_allclose(probs, [1 / 9, 0, 0, 0], atol=1e-15)
    # and |+-> goes to |-->
    state = LogicalState(0.5, -0.5, 0.5, -0.5)
    B = propagate_logical(cnot, state)
    # undo the rail-basis output: amplitude on |--> in diagonal measurement
    h = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    out = h @ (B.u + B.v) @ h.T
    np.testing.assert_allclose(np.abs(out) ** 2, [[0, 0], [0, 1 / 9]], atol=1e-15)


def test_joint_density_peak():
    A = TwoPhotonRailAmplitude(np.array([[1, 0], [0, 0]]), np.zeros((2, 2)))
    assert joint_density(A, "c0", "t0", 0.0, 0.0) == pytest.approx(2 / math.pi)


@pytest.mark.parametrize("t", [-1.0, 0.0, 0.7])
def test_hom_cancellation_at_equal_times(t):
    A = TwoPhotonRailAmplitude(np.array([[1, 0], [0, 0]]), np.array([[-1, 0], [0, 0]]))
    assert joint_density(A, "c0", "t0", t, t) == pytest.approx(0.0, abs=1e-30)


def test_cnot_interference_entry_matches_closed_form(cnot):
    tau, omega, t1, t2 = 0.4, 2.3, -0.2, 0.9
    A = propagate_basis_pair(cnot, "c1", "t0", GaussianWavepacket(), GaussianWavepacket(tau, omega))
    beta = mismatch_densities(tau, omega, t1, t2)[1]
    assert joint_density(A, "c1", "t0", t1, t2) == pytest.approx(beta, rel=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.floats(-2, 2), st.floats(-8, 8), st.floats(-2, 2), st.floats(-2, 2),
       st.complex_numbers(max_magnitude=2), st.complex_numbers(max_magnitude=2))
def test_exchange_symmetry(tau, omega, t1, t2, u, v):
    c, t = GaussianWavepacket(), GaussianWavepacket(tau, omega)
    A = TwoPhotonRailAmplitude(np.array([[u, 0], [0, 0]]), np.array([[v, 0], [0, 0]]), c, t)
    B = TwoPhotonRailAmplitude(np.array([[v, 0], [0, 0]]), np.array([[u, 0], [0, 0]]), c, t)
    assert joint_density(A, "c0", "t0", t1, t2) == pytest.approx(joint_density(B, "c0", "t0", t2, t1), rel=1e-12, abs=1e-300)


@settings(max_examples=30, deadline=None)
@given(st.floats(-2, 2), st.floats(-2, 2), st.complex_numbers(max_magnitude=2), st.complex_numbers(max_magnitude=2))
def test_identical_photons_depend_on_sum_only(t1, t2, u, v):
    wp = GaussianWavepacket(0.3, 1.1)
    A = TwoPhotonRailAmplitude(np.array([[u, 0], [0, 0]]), np.array([[v, 0], [0, 0]]), wp, wp)
    expected = abs(u + v) ** 2 * abs(wp(t1) * wp(t2)) ** 2
    assert joint_density(A, "c0", "t0", t1, t2) == pytest.approx(expected, rel=1e-12, abs=1e-300)


@settings(max_examples=50, deadline=None)
@given(st.floats(-2, 2), st.floats(-8, 8), st.floats(-2, 2), st.floats(-2, 2), st.sampled_from([1.0, 10.0, 100.0]))
def test_common_frequency_shift_invariance(tau, omega, t1, t2, shift):
    U = coincidence_cnot_network()
    for c_in, t_in in logical_rails():
        A = propagate_basis_pair(U, c_in, t_in, GaussianWavepacket(), GaussianWavepacket(tau, omega))
        B = propagate_basis_pair(U, c_in, t_in, GaussianWavepacket(0, shift), GaussianWavepacket(tau, omega + shift))
        for i, j in logical_rails():
            assert joint_density(B, i, j, t1, t2) == pytest.approx(joint_density(A, i, j, t1, t2), abs=1e-10)


def test_unitarity_over_all_outputs():
    rng = np.random.default_rng(3)
    U = ModeUnitary(unitary_group.rvs(6, random_state=rng))
    for c_in, t_in in itertools.product(("c0", "c1"), ("t0", "t1")):
        assert sum(output_probabilities(U, c_in, t_in).values()) == pytest.approx(1.0, abs=1e-12)
