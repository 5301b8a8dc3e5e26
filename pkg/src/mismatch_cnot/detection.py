"""Truth tables under time-resolved and gated detection."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .network import ModeUnitary, in_x_basis, logical_rails
from .twophoton import joint_density, propagate_basis_pair
from .wavepacket import FULL, GaussianWavepacket, product_integral

_PREFACTOR = 2.0 / (9.0 * math.pi)


class DetectorModel(str, enum.Enum):
    TIME_RESOLVED = "time-resolved"
    GATED = "gated"


class Basis(str, enum.Enum):
    Z = "Z"
    X = "X"


@dataclass(frozen=True)
class DetectionConfig:
    """Detector model, click-window starts and shared window length.

    ``t_w = FULL`` integrates both detectors over the whole real line.
    """

    model: DetectorModel = DetectorModel.TIME_RESOLVED
    t_c: float = 0.0
    t_t: Optional[float] = None
    t_w: float = FULL

    def __post_init__(self):
        object.__setattr__(self, "model", DetectorModel(self.model))
        if self.t_t is None:
            object.__setattr__(self, "t_t", self.t_c)
        if self.model is DetectorModel.GATED and self.t_t != self.t_c:
            raise ValueError("gated detection opens both detectors at the same time (t_t must equal t_c)")
        if not (self.t_w > 0):
            raise ValueError(f"integration window must be positive, got t_w={self.t_w}")
        for name in ("t_c", "t_t"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    @classmethod
    def gated(cls, t: float = 0.0, t_w: float = FULL) -> "DetectionConfig":
        return cls(DetectorModel.GATED, t, t, t_w)

    @property
    def full(self) -> bool:
        return math.isinf(self.t_w)

    def windows(self):
        """((lo, hi) for the control detector, (lo, hi) for the target detector)."""
        if self.full:
            return (-FULL, FULL), (-FULL, FULL)
        return (self.t_c, self.t_c + self.t_w), (self.t_t, self.t_t + self.t_w)


@dataclass(frozen=True)
class TruthTable:
    """Coincidence table, rows = logical input, columns = logical output.

    ``density`` marks pointwise tables (per unit time squared) as opposed
    to window-integrated probabilities.
    """

    values: np.ndarray
    density: bool = False
    basis: Basis = Basis.Z

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (4, 4):
            raise ValueError(f"truth table must be 4x4, got {v.shape}")
        if np.any(v < 0):
            raise ValueError("truth table entries must be nonnegative")
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "basis", Basis(self.basis))

    def __array__(self, dtype=None, copy=None):
        return self.values if dtype is None else self.values.astype(dtype)


def wavepackets(tau: float, omega: float):
    """Control photon at the origin, target displaced by ``tau`` and ``omega``."""
    return GaussianWavepacket(), GaussianWavepacket(tau, omega)


def _network(U: ModeUnitary, basis) -> ModeUnitary:
    return in_x_basis(U) if Basis(basis) is Basis.X else U


def _rail_amplitudes(U, basis, control, target):
    net = _network(U, basis)
    return [propagate_basis_pair(net, c, t, control, target) for c, t in logical_rails()]


def pointwise_truth_table(U: ModeUnitary, tau: float, omega: float, t_c: float, t_t: float,
                          basis=Basis.Z, frequency_offset: float = 0.0) -> TruthTable:
    """Coincidence densities for ideal clicks at ``t_c`` (control) and ``t_t`` (target).

    ``frequency_offset`` shifts both photons' carriers together.
    """
    control, target = wavepackets(tau, omega)
    control = control.shifted(d_frequency=frequency_offset)
    target = target.shifted(d_frequency=frequency_offset)
    table = np.empty((4, 4))
    for k, amp in enumerate(_rail_amplitudes(U, basis, control, target)):
        for l, (i, j) in enumerate(logical_rails()):
            table[k, l] = joint_density(amp, i, j, t_c, t_t)
    return TruthTable(table, density=True, basis=basis)


def windowed_truth_table(U: ModeUnitary, tau: float, omega: float, cfg: DetectionConfig,
                         basis=Basis.Z) -> TruthTable:
    """Coincidence probabilities with each detector integrating over its window.

    Densities (not amplitudes) are integrated, so every entry separates into
    products of one-dimensional Gaussian window integrals.
    """
    control, target = wavepackets(tau, omega)
    wc, wt = cfg.windows()
    cc_in_c = product_integral(control, control, *wc).real
    tt_in_t = product_integral(target, target, *wt).real
    cc_in_t = product_integral(control, control, *wt).real
    tt_in_c = product_integral(target, target, *wc).real
    cross = product_integral(target, control, *wc) * product_integral(control, target, *wt)

    table = np.empty((4, 4))
    for k, amp in enumerate(_rail_amplitudes(U, basis, control, target)):
        u = amp.u.ravel()
        v = amp.v.ravel()
        row = (np.abs(u) ** 2 * cc_in_c * tt_in_t
               + np.abs(v) ** 2 * tt_in_c * cc_in_t
               + 2.0 * np.real(u * np.conj(v) * cross))
        table[k] = row
    # Cancellation in the interference entries can leave tiny negative residues.
    if np.any(table < -1e-14):
        raise ArithmeticError("negative coincidence probability")
    return TruthTable(np.clip(table, 0.0, None), density=False, basis=basis)


def success_probabilities(T: TruthTable) -> np.ndarray:
    """Post-selection success probability for each logical input (row sums)."""
    if T.density:
        raise ValueError("success probabilities need a window-integrated table, not densities")
    return T.values.sum(axis=1)


def mismatch_densities(tau, omega, t_c, t_t):
    """Closed-form pointwise entries of the coincidence CNOT in the Z basis.

    Returns ``(alpha, beta, gamma)`` laid out as
    ``[[a,0,0,0],[0,a,0,0],[0,0,b,g],[0,0,g,b]]``: ``alpha`` keeps each photon
    on its own qubit, ``gamma`` is the flip where they swap rails, ``beta``
    the entry where both paths interfere.
    """
    tau, omega, t_c, t_t = np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (tau, omega, t_c, t_t)))
    alpha = _PREFACTOR * np.exp(-2.0 * (t_c ** 2 + (tau - t_t) ** 2))
    gamma = _PREFACTOR * np.exp(-2.0 * ((tau - t_c) ** 2 + t_t ** 2))
    beta = _PREFACTOR * np.abs(
        np.exp(-t_c ** 2 - (tau - t_t) ** 2 - 1j * omega * t_t)
        - np.exp(-(tau - t_c) ** 2 - 1j * omega * t_c - t_t ** 2)
    ) ** 2
    return alpha[()], beta[()], gamma[()]


def cnot_pattern(alpha, beta, gamma) -> np.ndarray:
    return np.array([
        [alpha, 0, 0, 0],
        [0, alpha, 0, 0],
        [0, 0, beta, gamma],
        [0, 0, gamma, beta],
    ], dtype=float)
