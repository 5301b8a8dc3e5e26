"""Brute-force time-bin simulation used to cross-check the closed forms.

Time is cut into midpoint bins, each photon becomes a vector of bin
amplitudes, the mode unitary routes rails, and coincidence probabilities
are summed bin pair by bin pair from the symmetrised two-photon amplitude.  Nothing here touches the error-function path.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .detection import Basis, DetectionConfig, TruthTable, wavepackets
from .network import CONTROL_RAILS, MODES, TARGET_RAILS, ModeUnitary, in_x_basis, logical_rails, mode_index
from .wavepacket import GaussianWavepacket

COVERAGE_WIDTHS = 8.0


@dataclass(frozen=True)
class TimeGrid:
    t_min: float
    t_max: float
    n_bins: int = 600

    def __post_init__(self):
        if self.n_bins < 1:
            raise ValueError("n_bins must be positive")
        if not self.t_max > self.t_min:
            raise ValueError("t_max must exceed t_min")

    @property
    def width(self) -> float:
        return (self.t_max - self.t_min) / self.n_bins

    @property
    def centers(self) -> np.ndarray:
        return self.t_min + (np.arange(self.n_bins) + 0.5) * self.width

    @classmethod
    def covering(cls, tau: float, n_bins: int = 600) -> "TimeGrid":
        return cls(min(0.0, tau) - COVERAGE_WIDTHS, max(0.0, tau) + COVERAGE_WIDTHS, n_bins)


def _sample(wp: GaussianWavepacket, g: TimeGrid) -> np.ndarray:
    t = g.centers
    return (2.0 / math.pi) ** 0.25 * np.exp(-1j * wp.center_frequency * t - (t - wp.center_time) ** 2) * math.sqrt(g.width)


def discretize(wp: GaussianWavepacket, g: TimeGrid) -> np.ndarray:
    """Bin amplitudes psi(t_k) sqrt(dt); refuses grids that lose probability."""
    v = _sample(wp, g)
    norm = float(np.vdot(v, v).real)
    if norm < 0.999:
        raise ValueError(f"grid [{g.t_min}, {g.t_max}] misses the wavepacket (captured norm {norm:.6f})")
    return v


def _coincidence_probabilities(U: np.ndarray, c_in: str, t_in: str, control: GaussianWavepacket,
                                target: GaussianWavepacket, gc: TimeGrid, gt: TimeGrid) -> np.ndarray:
    """Binned coincidence probabilities, shape (2, 2) over (control rail, target rail).

    The photon found at the control detector (bins of ``gc``) is either the
    control photon or the target photon; both assignment paths are added
    before squaring, bin pair by bin pair.
    """
    c, t = mode_index(c_in), mode_index(t_in)
    # rows: bin at the control detector, columns: bin at the target detector
    stay = np.outer(_sample(control, gc), _sample(target, gt))
    swap = np.outer(_sample(target, gc), _sample(control, gt))
    out = np.empty((2, 2))
    for a, rail_i in enumerate(CONTROL_RAILS):
        i = mode_index(rail_i)
        for b, rail_j in enumerate(TARGET_RAILS):
            j = mode_index(rail_j)
            amp = U[i, c] * U[j, t] * stay + U[j, c] * U[i, t] * swap
            out[a, b] = np.sum(amp.real ** 2 + amp.imag ** 2)
    return out


def brute_force_table(U: ModeUnitary, tau: float, omega: float, cfg: DetectionConfig,
                      g: TimeGrid | None = None, basis=Basis.Z) -> TruthTable:
    g = g or TimeGrid.covering(tau)
    control, target = wavepackets(tau, omega)
    discretize(control, g)
    discretize(target, g)
    net = (in_x_basis(U) if Basis(basis) is Basis.X else U).matrix

    if cfg.full:
        gc = gt = g
    else:
        (lc, hc), (lt, ht) = cfg.windows()
        # each window gets the grid's resolution, with bin edges on the window edges
        gc, gt = TimeGrid(lc, hc, g.n_bins), TimeGrid(lt, ht, g.n_bins)

    table = np.empty((4, 4))
    for k, (c_in, t_in) in enumerate(logical_rails()):
        table[k] = _coincidence_probabilities(net, c_in, t_in, control, target, gc, gt).ravel()
    return TruthTable(table, density=False, basis=basis)


def brute_force_density(U: ModeUnitary, tau: float, omega: float, t_c: float, t_t: float,
                        width: float = 1e-3, basis=Basis.Z) -> np.ndarray:
    """Pointwise densities from a single-bin window centred on each click time."""
    cfg = DetectionConfig(t_c=t_c - width / 2, t_t=t_t - width / 2, t_w=width)
    g = TimeGrid.covering(tau, n_bins=100)
    return brute_force_table(U, tau, omega, cfg, g, basis).values / width ** 2


def total_probability(U: ModeUnitary, tau: float, omega: float, c_in: str, t_in: str,
                      g: TimeGrid | None = None) -> float:
    """Probability summed over every output (rail, bin) pair, bunched ones included."""
    g = g or TimeGrid.covering(tau)
    control, target = wavepackets(tau, omega)
    vc, vt = discretize(control, g), discretize(target, g)
    m = U.matrix
    c, t = mode_index(c_in), mode_index(t_in)
    outer = np.outer(vc, vt)
    total = 0.0
    for a in range(len(MODES)):
        for b in range(len(MODES)):
            # ordered (a, b) counts each distinct pair twice; the 1/2 restores it
            amp = m[a, c] * m[b, t] * outer + (m[b, c] * m[a, t] * outer).T
            total += 0.5 * float(np.sum(np.abs(amp) ** 2))
    return total
