"""Truth-table similarity and success-probability bounds."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .detection import Basis, DetectionConfig, TruthTable, success_probabilities, windowed_truth_table
from .network import ModeUnitary

IDEAL_CNOT_Z = np.array([
    [1, 0, 0, 0],
    [0, 1, 0, 0],
    [0, 0, 0, 1],
    [0, 0, 1, 0],
], dtype=float)

# |++> -> |++>, |+-> -> |-->, |-+> -> |-+>, |--> -> |+->
IDEAL_CNOT_X = np.array([
    [1, 0, 0, 0],
    [0, 0, 0, 1],
    [0, 0, 1, 0],
    [0, 1, 0, 0],
], dtype=float)

_TINY = 1e-300


def ideal_truth_table(basis=Basis.Z) -> TruthTable:
    values = IDEAL_CNOT_X if Basis(basis) is Basis.X else IDEAL_CNOT_Z
    return TruthTable(values, basis=basis)


@dataclass(frozen=True)
class SimilarityResult:
    value: float
    sum_first: float
    sum_second: float


def _values(M):
    return np.asarray(M.values if isinstance(M, TruthTable) else M, dtype=float)


def compare(M, M2) -> SimilarityResult:
    a, b = _values(M), _values(M2)
    if a.shape != b.shape:
        raise ValueError(f"table shapes differ: {a.shape} vs {b.shape}")
    if np.any(a < 0) or np.any(b < 0):
        raise ValueError("similarity is defined for nonnegative tables only")
    sa, sb = a.sum(), b.sum()
    if sa <= 0 or sb <= 0:
        raise ValueError("similarity of an all-zero table is undefined")
    prod = a * b
    overlap = np.sqrt(np.where(prod < _TINY, 0.0, prod)).sum()
    value = min(1.0, overlap ** 2 / (sa * sb))
    return SimilarityResult(float(value), float(sa), float(sb))


def similarity(M, M2) -> float:
    """Classical fidelity between two tables; both are renormalised first."""
    return compare(M, M2).value


def closed_form_similarity(tau, omega, t_c, t_t):
    """Similarity of the pointwise CNOT table to the ideal one, in closed form.

    Written with the larger of 2*tau*t_c, 2*tau*t_t factored out so large
    arguments do not overflow.  Broadcasts over array inputs.
    """
    tau, omega, t_c, t_t = (np.asarray(x, dtype=float) for x in (tau, omega, t_c, t_t))
    a = 2.0 * tau * t_c
    b = 2.0 * tau * t_t
    m = np.maximum(a, b)
    ea, eb = np.exp(a - m), np.exp(b - m)
    num = (ea + eb) ** 2
    den = 4.0 * (ea * ea + eb * eb - ea * eb * np.cos(omega * (t_c - t_t)))
    out = num / den
    return out[()] if out.ndim == 0 else out


def p_min(U: ModeUnitary, tau: float, omega: float, cfg: DetectionConfig) -> float:
    """Worst-case post-selection success probability over the Z-basis inputs."""
    T = windowed_truth_table(U, tau, omega, cfg, Basis.Z)
    return float(success_probabilities(T).min())


def similarity_to_ideal(T: TruthTable) -> float:
    return similarity(T, ideal_truth_table(T.basis))
