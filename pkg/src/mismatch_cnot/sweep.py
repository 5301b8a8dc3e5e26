"""Parameter sweeps over mismatch, click times and window length."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .detection import Basis, DetectionConfig, DetectorModel, success_probabilities, windowed_truth_table
from .metrics import similarity_to_ideal
from .network import LOGICAL_LABELS, ModeUnitary, coincidence_cnot_network
from .wavepacket import FULL

PARAMETERS = ("tau", "omega", "t_c", "t_t", "t_w")
OUTPUTS = ("similarity", "truth_table", "p_min", "success_probs")
WINDOW_LINES = (0.01, 0.5, 1.0, 2.0)


@dataclass(frozen=True)
class Axis:
    parameter: str
    values: tuple

    def __post_init__(self):
        if self.parameter not in PARAMETERS:
            raise ValueError(f"unknown sweep parameter {self.parameter!r}; choose from {PARAMETERS}")
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if len(self.values) < 2:
            raise ValueError("a sweep axis needs at least two points")

    @classmethod
    def linspace(cls, parameter: str, start: float, stop: float, n_points: int) -> "Axis":
        if n_points < 2:
            raise ValueError("a sweep axis needs at least two points")
        return cls(parameter, tuple(np.linspace(start, stop, n_points)))


@dataclass(frozen=True)
class SweepSpec:
    axes: tuple
    fixed: dict = field(default_factory=dict)
    model: DetectorModel = DetectorModel.TIME_RESOLVED
    basis: Basis = Basis.Z
    outputs: tuple = ("similarity",)

    def __post_init__(self):
        object.__setattr__(self, "axes", tuple(self.axes))
        object.__setattr__(self, "model", DetectorModel(self.model))
        object.__setattr__(self, "basis", Basis(self.basis))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        if not 1 <= len(self.axes) <= 2:
            raise ValueError("a sweep has one or two axes")
        names = [a.parameter for a in self.axes]
        if len(set(names)) != len(names):
            raise ValueError(f"sweep axes must be distinct, got {names}")
        if self.model is DetectorModel.GATED and "t_t" in names:
            raise ValueError("gated sweeps tie t_t to t_c; sweep t_c instead")
        bad = set(self.outputs) - set(OUTPUTS)
        if bad or not self.outputs:
            raise ValueError(f"unknown outputs {sorted(bad)}; choose from {OUTPUTS}")
        unknown = set(self.fixed) - set(PARAMETERS)
        if unknown:
            raise ValueError(f"unknown fixed parameters {sorted(unknown)}")

    def with_overrides(self, **fixed) -> "SweepSpec":
        merged = {**self.fixed, **{k: v for k, v in fixed.items() if v is not None}}
        swept = {a.parameter for a in self.axes}
        merged = {k: v for k, v in merged.items() if k not in swept}
        return SweepSpec(self.axes, merged, self.model, self.basis, self.outputs)

    def points(self):
        base = {"tau": 0.0, "omega": 0.0, "t_c": 0.0, "t_t": None, "t_w": FULL, **self.fixed}
        for combo in itertools.product(*(a.values for a in self.axes)):
            p = dict(base)
            p.update(zip((a.parameter for a in self.axes), combo))
            if p["t_t"] is None or self.model is DetectorModel.GATED:
                p["t_t"] = p["t_c"]
            yield p


def output_columns(outputs) -> list:
    cols = []
    for name in outputs:
        if name == "truth_table":
            cols += [f"T_{i}_{j}" for i in LOGICAL_LABELS for j in LOGICAL_LABELS]
        elif name == "success_probs":
            cols += [f"P_{i}" for i in LOGICAL_LABELS]
        else:
            cols.append(name)
    return cols


def columns(spec: SweepSpec) -> list:
    return list(PARAMETERS) + ["model", "basis"] + output_columns(spec.outputs) + ["status"]


def evaluate_point(U: ModeUnitary, params: dict, model, basis, outputs) -> dict:
    """Requested outputs at one parameter point (no error handling)."""
    cfg = DetectionConfig(model, params["t_c"], params["t_t"], params["t_w"])
    table = windowed_truth_table(U, params["tau"], params["omega"], cfg, basis)
    out = {}
    for name in outputs:
        if name == "similarity":
            out["similarity"] = similarity_to_ideal(table)
        elif name == "truth_table":
            out.update(zip(output_columns(["truth_table"]), table.values.ravel().tolist()))
        elif name == "success_probs":
            out.update(zip(output_columns(["success_probs"]), success_probabilities(table).tolist()))
        elif name == "p_min":
            if Basis(basis) is Basis.Z:
                out["p_min"] = float(success_probabilities(table).min())
            else:
                z = windowed_truth_table(U, params["tau"], params["omega"], cfg, Basis.Z)
                out["p_min"] = float(success_probabilities(z).min())
    return out


def run_sweep(spec: SweepSpec, U: ModeUnitary | None = None) -> list:
    """One dict per grid point, row-major over ``spec.axes`` (first axis slowest).

    A point that cannot be evaluated keeps its parameters, gets NaN outputs
    and a ``status`` describing the failure; the sweep carries on.
    """
    U = U or coincidence_cnot_network()
    out_cols = output_columns(spec.outputs)
    rows = []
    for p in spec.points():
        row = {**p, "model": spec.model.value, "basis": spec.basis.value}
        try:
            row.update(evaluate_point(U, p, spec.model, spec.basis, spec.outputs))
            row["status"] = "ok"
        except (ValueError, ArithmeticError) as exc:
            row.update(dict.fromkeys(out_cols, math.nan))
            row["status"] = f"error: {exc}"
        rows.append(row)
    return rows


def _omega_axis():
    return Axis.linspace("omega", 0.0, 10.0, 201)


def _tau_axis():
    return Axis.linspace("tau", 0.0, 3.0, 61)


def _window_axis():
    return Axis("t_w", WINDOW_LINES)


PRESETS = {
    # similarity vs frequency shift, no time shift
    "fig2a": [SweepSpec((_window_axis(), _omega_axis()), {"tau": 0.0, "t_c": 0.0, "t_t": 1.0})],
    "fig2b": [SweepSpec((_window_axis(), _omega_axis()), {"tau": 0.0, "t_c": 0.0}, DetectorModel.GATED)],
    # similarity vs time shift, no frequency shift
    "fig3a": [SweepSpec((_window_axis(), _tau_axis()), {"omega": 0.0, "t_c": 0.0, "t_t": 1.0})],
    "fig3b": [SweepSpec((_window_axis(), _tau_axis()), {"omega": 0.0, "t_c": 0.0}, DetectorModel.GATED)],
    # surface over (tau, omega) at a narrow window, plus the gated companion
    "fig4": [
        SweepSpec((Axis.linspace("tau", 0.0, 2.0, 9), Axis.linspace("omega", 0.0, 10.0, 41)),
                  {"t_c": 0.0, "t_t": 1.0, "t_w": 0.01}),
        SweepSpec((Axis.linspace("tau", 0.0, 2.0, 9), Axis.linspace("omega", 0.0, 10.0, 41)),
                  {"t_c": 0.0, "t_w": 0.01}, DetectorModel.GATED),
    ],
    # surface over (target click time, omega)
    "fig5": [SweepSpec((Axis.linspace("t_t", 0.0, 3.0, 31), Axis.linspace("omega", 0.0, 10.0, 41)),
                       {"tau": 0.0, "t_c": 0.0, "t_w": 0.01})],
}


def preset(name: str) -> list:
    try:
        return list(PRESETS[name])
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None


def run_preset(name: str, basis=None, outputs=None, **fixed) -> tuple:
    """Run every sweep of a preset; returns (columns, rows)."""
    specs = []
    for s in preset(name):
        s = s.with_overrides(**fixed)
        if basis is not None or outputs is not None:
            s = SweepSpec(s.axes, s.fixed, s.model, basis or s.basis, outputs or s.outputs)
        specs.append(s)
    rows = []
    for s in specs:
        rows.extend(run_sweep(s))
    return columns(specs[0]), rows
