"""Six-mode linear-optics networks and the coincidence CNOT."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

MODES = ("a_c", "c0", "c1", "t0", "t1", "a_t")
CONTROL_RAILS = ("c0", "c1")
TARGET_RAILS = ("t0", "t1")
LOGICAL_LABELS = ("00", "01", "10", "11")


def mode_index(label: str) -> int:
    try:
        return MODES.index(label)
    except ValueError:
        raise ValueError(f"unknown mode {label!r}; expected one of {MODES}") from None


@dataclass(frozen=True)
class ModeUnitary:
    matrix: np.ndarray
    mode_labels: tuple = MODES

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (len(self.mode_labels),) * 2:
            raise ValueError(f"expected a {len(self.mode_labels)}x{len(self.mode_labels)} matrix, got {m.shape}")
        object.__setattr__(self, "matrix", m)

    def __getitem__(self, key):
        out_mode, in_mode = key
        return self.matrix[mode_index(out_mode), mode_index(in_mode)]

    @property
    def dagger(self) -> "ModeUnitary":
        return ModeUnitary(self.matrix.conj().T, self.mode_labels)

    def is_unitary(self, atol: float = 1e-12) -> bool:
        n = self.matrix.shape[0]
        return np.linalg.norm(self.matrix.conj().T @ self.matrix - np.eye(n)) <= atol


IDENTITY = ModeUnitary(np.eye(len(MODES)))


@dataclass(frozen=True)
class BeamsplitterSpec:
    """Two-mode splitter coupling ``mode_a`` and ``mode_b``.

    ``reflectivity`` is the probability of crossing to the other mode, so
    0 is the identity.  The photon that stays on ``dotted_side`` picks up
    the pi phase.
    """

    mode_a: str
    mode_b: str
    reflectivity: float
    dotted_side: str = field(default=None)

    def __post_init__(self):
        if self.mode_a == self.mode_b:
            raise ValueError("beamsplitter needs two distinct modes")
        if not 0.0 <= self.reflectivity <= 1.0:
            raise ValueError(f"reflectivity must lie in [0, 1], got {self.reflectivity}")
        if self.dotted_side is None:
            object.__setattr__(self, "dotted_side", self.mode_b)
        if self.dotted_side not in (self.mode_a, self.mode_b):
            raise ValueError("dotted_side must be one of the two coupled modes")
        for label in (self.mode_a, self.mode_b):
            mode_index(label)


def beamsplitter_unitary(spec: BeamsplitterSpec) -> ModeUnitary:
    a, b = mode_index(spec.mode_a), mode_index(spec.mode_b)
    t = np.sqrt(1.0 - spec.reflectivity)
    r = np.sqrt(spec.reflectivity)
    m = np.eye(len(MODES), dtype=complex)
    m[a, a], m[a, b], m[b, a], m[b, b] = t, r, r, t
    dotted = a if spec.dotted_side == spec.mode_a else b
    m[dotted, dotted] = -t
    return ModeUnitary(m)


def compose(stages) -> ModeUnitary:
    """Chain stages in the order light meets them (first stage acts first)."""
    stages = list(stages)
    if not stages:
        return IDENTITY
    m = np.eye(stages[0].matrix.shape[0], dtype=complex)
    for stage in stages:
        m = stage.matrix @ m
    return ModeUnitary(m, stages[0].mode_labels)


def coincidence_cnot_stages():
    # The "1/3" splitters send 1/3 of the intensity back along the same rail,
    # hence a crossing probability of 2/3 here.
    return [
        BeamsplitterSpec("t0", "t1", 0.5, dotted_side="t1"),
        BeamsplitterSpec("a_c", "c0", 2.0 / 3.0, dotted_side="a_c"),
        BeamsplitterSpec("c1", "t0", 2.0 / 3.0, dotted_side="c1"),
        BeamsplitterSpec("t1", "a_t", 2.0 / 3.0, dotted_side="a_t"),
        BeamsplitterSpec("t0", "t1", 0.5, dotted_side="t1"),
    ]


def coincidence_cnot_network() -> ModeUnitary:
    return compose(beamsplitter_unitary(s) for s in coincidence_cnot_stages())


def hadamard_layer() -> ModeUnitary:
    """Balanced splitters on (c0, c1) and (t0, t1): rail basis <-> diagonal basis."""
    return compose([
        beamsplitter_unitary(BeamsplitterSpec("c0", "c1", 0.5, dotted_side="c1")),
        beamsplitter_unitary(BeamsplitterSpec("t0", "t1", 0.5, dotted_side="t1")),
    ])


def in_x_basis(U: ModeUnitary) -> ModeUnitary:
    """Sandwich ``U`` between Hadamard layers so rail inputs/outputs mean |+>, |->."""
    h = hadamard_layer()
    return compose([h, U, h])


def logical_rails():
    """(control rail, target rail) for |00>, |01>, |10>, |11>."""
    return list(itertools.product(CONTROL_RAILS, TARGET_RAILS))


def ideal_logical_action(U: ModeUnitary) -> np.ndarray:
    """Coincidence amplitudes for indistinguishable photons, rows = input."""
    out = np.zeros((4, 4), dtype=complex)
    for k, (c, t) in enumerate(logical_rails()):
        for l, (i, j) in enumerate(logical_rails()):
            out[k, l] = U[i, c] * U[j, t] + U[j, c] * U[i, t]
    return out
