"""Two-photon propagation in direct/exchange coefficient form.

A control photon (wavepacket psi_c) and a target photon (psi_t) enter on one
control rail and one target rail.  At output rails (i, j) the joint temporal
amplitude is

    A_ij(t1, t2) = u_ij psi_c(t1) psi_t(t2) + v_ij psi_c(t2) psi_t(t1)

with ``t1`` the click time on rail ``i`` and ``t2`` on rail ``j``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .network import CONTROL_RAILS, TARGET_RAILS, MODES, ModeUnitary, logical_rails, mode_index
from .wavepacket import GaussianWavepacket, amplitude


@dataclass(frozen=True)
class LogicalState:
    l00: complex = 0.0
    l01: complex = 0.0
    l10: complex = 0.0
    l11: complex = 0.0

    def __post_init__(self):
        norm = sum(abs(c) ** 2 for c in self.coefficients)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"logical state is not normalised (sum |lambda|^2 = {norm})")

    @property
    def coefficients(self):
        return (self.l00, self.l01, self.l10, self.l11)

    @classmethod
    def basis(cls, label: str) -> "LogicalState":
        coeffs = dict.fromkeys(("l00", "l01", "l10", "l11"), 0.0)
        coeffs["l" + label] = 1.0
        return cls(**coeffs)

    @classmethod
    def plus_plus(cls) -> "LogicalState":
        return cls(0.5, 0.5, 0.5, 0.5)


@dataclass(frozen=True)
class TwoPhotonRailAmplitude:
    """Direct (``u``) and exchange (``v``) coefficients on the 2x2 coincidence
    rail block, indexed ``[control rail, target rail]`` in (c0, c1) x (t0, t1)."""

    u: np.ndarray
    v: np.ndarray
    control: GaussianWavepacket = field(default_factory=GaussianWavepacket)
    target: GaussianWavepacket = field(default_factory=GaussianWavepacket)

    def coefficients(self, i: str, j: str):
        a, b = CONTROL_RAILS.index(i), TARGET_RAILS.index(j)
        return self.u[a, b], self.v[a, b]

    def __add__(self, other):
        return TwoPhotonRailAmplitude(self.u + other.u, self.v + other.v, self.control, self.target)

    def scaled(self, c: complex) -> "TwoPhotonRailAmplitude":
        return TwoPhotonRailAmplitude(c * self.u, c * self.v, self.control, self.target)


def propagate_basis_pair(U: ModeUnitary, c_in: str, t_in: str,
                         control: GaussianWavepacket = GaussianWavepacket(),
                         target: GaussianWavepacket = GaussianWavepacket()) -> TwoPhotonRailAmplitude:
    if c_in not in CONTROL_RAILS or t_in not in TARGET_RAILS:
        raise ValueError(f"inputs must be a control rail and a target rail, got ({c_in}, {t_in})")
    u = np.empty((2, 2), dtype=complex)
    v = np.empty((2, 2), dtype=complex)
    for a, i in enumerate(CONTROL_RAILS):
        for b, j in enumerate(TARGET_RAILS):
            u[a, b] = U[i, c_in] * U[j, t_in]
            v[a, b] = U[j, c_in] * U[i, t_in]
    return TwoPhotonRailAmplitude(u, v, control, target)


def propagate_logical(U: ModeUnitary, state: LogicalState,
                      control: GaussianWavepacket = GaussianWavepacket(),
                      target: GaussianWavepacket = GaussianWavepacket()) -> TwoPhotonRailAmplitude:
    # Linear in the input because both control rails carry psi_c and both target rails psi_t.
    total = None
    for coeff, (c, t) in zip(state.coefficients, logical_rails()):
        term = propagate_basis_pair(U, c, t, control, target).scaled(coeff)
        total = term if total is None else total + term
    return total


def joint_density(A: TwoPhotonRailAmplitude, i: str, j: str, t1, t2):
    """|A_ij(t1, t2)|^2, a density per unit time squared; broadcasts over t1, t2."""
    u, v = A.coefficients(i, j)
    amp = (u * amplitude(A.control, t1) * amplitude(A.target, t2)
           + v * amplitude(A.control, t2) * amplitude(A.target, t1))
    return np.abs(amp) ** 2


def output_probabilities(U: ModeUnitary, c_in: str, t_in: str) -> dict:
    """Probability of every output mode occupation, for identical photons.

    Keys are sorted mode pairs; bunched pairs (m, m) include the factor 2
    from the two-photon normalisation.  Only the aggregate matters downstream.
    """
    c, t = mode_index(c_in), mode_index(t_in)
    m = U.matrix
    probs = {}
    for a in range(len(MODES)):
        for b in range(a, len(MODES)):
            amp = m[a, c] * m[b, t] + m[b, c] * m[a, t]
            probs[(MODES[a], MODES[b])] = abs(amp) ** 2 / (2.0 if a == b else 1.0)
    return probs


def coincidence_probability(U: ModeUnitary, c_in: str, t_in: str) -> float:
    probs = output_probabilities(U, c_in, t_in)
    return math.fsum(probs[(i, j)] for i in CONTROL_RAILS for j in TARGET_RAILS)
