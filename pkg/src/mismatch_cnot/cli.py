"""Command-line interface: truth tables, similarities, sweeps, oracle checks."""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from .detection import (Basis, DetectionConfig, DetectorModel, cnot_pattern, mismatch_densities,
                        pointwise_truth_table, success_probabilities, windowed_truth_table)
from .metrics import closed_form_similarity, ideal_truth_table, similarity, similarity_to_ideal
from .network import LOGICAL_LABELS, coincidence_cnot_network
from .oracle import TimeGrid, brute_force_density, brute_force_table
from .sweep import OUTPUTS, PARAMETERS, Axis, SweepSpec, columns, output_columns, preset, run_sweep

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_VERIFY_FAILED = 3

# option dest -> config-file key
CONFIG_KEYS = {
    "tau": "tau", "omega": "omega", "tc": "tc", "tt": "tt", "tw": "tw", "window": "window",
    "model": "model", "basis": "basis", "preset": "preset", "output": "output", "format": "format",
    "bins": "bins", "points": "points", "seed": "seed", "tolerance": "tolerance",
}
DEFAULTS = {"tau": 0.0, "omega": 0.0, "tc": 0.0, "model": "time-resolved", "basis": "Z", "format": "csv",
            "bins": 600, "points": 20, "seed": 0, "tolerance": 1e-3}


class UsageError(Exception):
    pass


def fmt(x) -> str:
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        return format(x, ".17g")
    return str(x)


def read_config(path: str) -> dict:
    """``key = value`` lines; ``#`` starts a comment."""
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}") from exc
    for n, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{n}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_").replace("t_c", "tc").replace("t_t", "tt").replace("t_w", "tw")
        if key not in CONFIG_KEYS.values():
            raise UsageError(f"{path}:{n}: unknown key {key!r}")
        out[key] = value
    return out


def _real(name, value, positive=False):
    try:
        x = float(value)
    except (TypeError, ValueError):
        raise UsageError(f"{name} must be a number, got {value!r}") from None
    if not math.isfinite(x):
        raise UsageError(f"{name} must be finite")
    if positive and x <= 0:
        raise UsageError(f"{name} must be positive, got {x}")
    return x


def resolve(args, preset_defaults=None) -> dict:
    """Flags override the config file, which overrides preset and built-in defaults."""
    config = read_config(args.config) if getattr(args, "config", None) else {}
    merged = {**DEFAULTS, **(preset_defaults or {})}
    for dest, key in CONFIG_KEYS.items():
        if key in config:
            merged[dest] = config[key]
        flag = getattr(args, dest, None)
        if flag is not None:
            merged[dest] = flag
    cfg = dict(merged)
    cfg["tau"] = _real("tau", merged["tau"])
    cfg["omega"] = _real("omega", merged["omega"])
    cfg["tc"] = _real("tc", merged["tc"])
    cfg["tt"] = _real("tt", merged["tt"]) if merged.get("tt") is not None else None
    try:
        cfg["model"] = DetectorModel(merged["model"])
        cfg["basis"] = Basis(str(merged["basis"]).upper())
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    window = merged.get("window")
    tw = merged.get("tw")
    if window is not None and tw is not None:
        raise UsageError("give either --window or --tw, not both")
    if window is not None:
        tw = "full" if str(window).lower() == "full" else window
    if tw is None or str(tw).lower() == "full":
        cfg["tw"] = None if tw is None else math.inf
    else:
        cfg["tw"] = _real("tw", tw, positive=True)
    if cfg["format"] not in ("csv", "json"):
        raise UsageError(f"format must be csv or json, got {cfg['format']!r}")
    if cfg["model"] is DetectorModel.GATED:
        if cfg["tt"] is not None and cfg["tt"] != cfg["tc"]:
            raise UsageError("gated detection needs --tt equal to --tc")
        cfg["tt"] = cfg["tc"]
    elif cfg["tt"] is None:
        cfg["tt"] = cfg["tc"]
    for key in ("bins", "points", "seed"):
        try:
            cfg[key] = int(merged[key])
        except (TypeError, ValueError):
            raise UsageError(f"{key} must be an integer") from None
    if cfg["bins"] < 2 or cfg["points"] < 1:
        raise UsageError("bins must be >= 2 and points >= 1")
    cfg["tolerance"] = _real("tolerance", merged["tolerance"], positive=True)
    return cfg


def write_rows(cols, rows, fmt_name, path):
    if fmt_name == "json":
        clean = [{k: (None if isinstance(r.get(k), float) and math.isnan(r[k]) else r.get(k)) for k in cols}
                 for r in rows]
        text = json.dumps({"columns": cols, "rows": clean}, indent=2) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([fmt(r.get(c)) for c in cols])
        text = buf.getvalue()
    emit(text, path)


def emit(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _params_row(cfg, tw):
    return {"tau": cfg["tau"], "omega": cfg["omega"], "t_c": cfg["tc"], "t_t": cfg["tt"],
            "t_w": tw, "model": cfg["model"].value, "basis": cfg["basis"].value}


def cmd_truth_table(args) -> int:
    cfg = resolve(args)
    U = coincidence_cnot_network()
    tw = math.inf if cfg["tw"] is None else cfg["tw"]
    det = DetectionConfig(cfg["model"], cfg["tc"], cfg["tt"], tw)
    T = windowed_truth_table(U, cfg["tau"], cfg["omega"], det, cfg["basis"])
    probs = success_probabilities(T)
    S = similarity_to_ideal(T)
    # ideal clicks exactly at the window starts
    S_click = similarity_to_ideal(pointwise_truth_table(U, cfg["tau"], cfg["omega"], cfg["tc"], cfg["tt"], cfg["basis"]))
    row = _params_row(cfg, tw)
    row.update(zip(output_columns(["truth_table"]), T.values.ravel().tolist()))
    row.update(zip(output_columns(["success_probs"]), probs.tolist()))
    row["similarity"] = S
    row["similarity_pointwise"] = S_click
    row["status"] = "ok"
    if args.output is None and cfg["format"] == "csv":
        lines = ["in\\out " + " ".join(f"{lab:>23}" for lab in LOGICAL_LABELS) + f" {'P_success':>23}"]
        for lab, vals, p in zip(LOGICAL_LABELS, T.values, probs):
            lines.append(f"{lab:>7} " + " ".join(f"{fmt(float(v)):>23}" for v in vals) + f" {fmt(float(p)):>23}")
        lines.append(f"similarity to ideal CNOT ({cfg['basis'].value} basis): {fmt(S)}")
        lines.append(f"similarity for clicks exactly at (t_c, t_t) = ({cfg['tc']:g}, {cfg['tt']:g}): {fmt(S_click)}")
        emit("\n".join(lines) + "\n", None)
        return EXIT_OK
    cols = list(PARAMETERS) + ["model", "basis"] + output_columns(["truth_table", "success_probs", "similarity"]) + [
        "similarity_pointwise", "status"]
    write_rows(cols, [row], cfg["format"], args.output)
    return EXIT_OK


def cmd_similarity(args) -> int:
    cfg = resolve(args)
    U = coincidence_cnot_network()
    T = pointwise_truth_table(U, cfg["tau"], cfg["omega"], cfg["tc"], cfg["tt"], cfg["basis"])
    from_table = similarity_to_ideal(T)
    closed = float(closed_form_similarity(cfg["tau"], cfg["omega"], cfg["tc"], cfg["tt"]))
    row = _params_row(cfg, 0.0 if cfg["tw"] is None else cfg["tw"])
    row.update({"similarity_table": from_table, "similarity_closed_form": closed,
                "difference": abs(from_table - closed)})
    cols = list(PARAMETERS) + ["model", "basis", "similarity_table", "similarity_closed_form", "difference"]
    if cfg["tw"] is not None:
        det = DetectionConfig(cfg["model"], cfg["tc"], cfg["tt"], cfg["tw"])
        row["similarity_windowed"] = similarity_to_ideal(
            windowed_truth_table(U, cfg["tau"], cfg["omega"], det, cfg["basis"]))
        cols.append("similarity_windowed")
    row["status"] = "ok"
    write_rows(cols + ["status"], [row], cfg["format"], args.output)
    return EXIT_OK


def _parse_axis(text) -> Axis:
    parts = text.split(":")
    if len(parts) != 4:
        raise UsageError(f"axis must look like name:start:stop:n, got {text!r}")
    try:
        return Axis.linspace(parts[0], float(parts[1]), float(parts[2]), int(parts[3]))
    except ValueError as exc:
        raise UsageError(f"bad axis {text!r}: {exc}") from None


def cmd_sweep(args) -> int:
    config = read_config(args.config) if args.config else {}
    preset_name = args.preset or config.get("preset")
    cfg = resolve(args)
    outputs = tuple(args.outputs.split(",")) if args.outputs else ("similarity",)
    explicit = {}
    for dest, key in (("tau", "tau"), ("omega", "omega"), ("tc", "t_c"), ("tt", "t_t"), ("tw", "t_w")):
        if getattr(args, dest) is not None or dest in config or (dest == "tw" and args.window):
            explicit[key] = cfg[dest] if dest != "tw" else (math.inf if cfg["tw"] is None else cfg["tw"])
    try:
        if preset_name:
            if args.axis:
                raise UsageError("give either --preset or --axis")
            specs = []
            for s in preset(preset_name):
                s = s.with_overrides(**explicit)
                basis = cfg["basis"] if (args.basis or "basis" in config) else s.basis
                specs.append(SweepSpec(s.axes, s.fixed, s.model, basis, outputs))
        else:
            if not args.axis:
                raise UsageError("sweep needs --preset or at least one --axis")
            axes = tuple(_parse_axis(a) for a in args.axis)
            fixed = {"tau": cfg["tau"], "omega": cfg["omega"], "t_c": cfg["tc"],
                     "t_w": math.inf if cfg["tw"] is None else cfg["tw"]}
            if args.tt is not None or "tt" in config:
                fixed["t_t"] = cfg["tt"]
            specs = [SweepSpec(axes, fixed, cfg["model"], cfg["basis"], outputs)]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = []
    for s in specs:
        rows.extend(run_sweep(s))
    write_rows(columns(specs[0]), rows, cfg["format"], args.output)
    return EXIT_OK


def relative_discrepancy(approx, exact, floor=1e-12) -> float:
    """Entrywise relative error; entries below ``floor * max|exact|`` (structural
    zeros) are measured against the table maximum instead."""
    approx, exact = np.asarray(approx, dtype=float), np.asarray(exact, dtype=float)
    scale = np.abs(exact).max()
    diff = np.abs(approx - exact)
    mask = np.abs(exact) > floor * scale
    rel = (diff[mask] / np.abs(exact[mask])).max(initial=0.0)
    return float(max(rel, diff[~mask].max(initial=0.0) / scale))


def verification_report(bins=600, points=20, seed=0, tolerance=1e-3):
    """Oracle comparisons; yields (name, discrepancy, tolerance)."""
    U = coincidence_cnot_network()
    rng = np.random.default_rng(seed)
    full = DetectionConfig()
    ideal = ideal_truth_table(Basis.Z).values / 9.0
    for basis in (Basis.Z, Basis.X):
        B = brute_force_table(U, 0.0, 0.0, full, TimeGrid.covering(0.0, bins), basis)
        yield f"full-window ideal table ({basis.value})", float(np.abs(B.values - ideal_truth_table(basis).values / 9.0).max()), 1e-4
    worst_point = 0.0
    worst_window = 0.0
    worst_s = 0.0
    for _ in range(points):
        tau, omega = rng.uniform(-1.5, 1.5), rng.uniform(-6.0, 6.0)
        t_c, t_t = rng.uniform(-1.5, 1.5, size=2)
        t_w = rng.uniform(0.05, 1.5)
        exact = cnot_pattern(*mismatch_densities(tau, omega, t_c, t_t))
        approx = brute_force_density(U, tau, omega, t_c, t_t)
        worst_point = max(worst_point, relative_discrepancy(approx, exact))
        cfg = DetectionConfig(t_c=t_c, t_t=t_t, t_w=t_w)
        W = windowed_truth_table(U, tau, omega, cfg).values
        B = brute_force_table(U, tau, omega, cfg, TimeGrid.covering(tau, bins)).values
        worst_window = max(worst_window, relative_discrepancy(B, W))
        T = pointwise_truth_table(U, tau, omega, t_c, t_t)
        worst_s = max(worst_s, abs(similarity(T, ideal) - float(closed_form_similarity(tau, omega, t_c, t_t))))
    yield "pointwise densities vs oracle (relative)", worst_point, tolerance
    yield f"windowed tables vs oracle at {bins} bins (relative)", worst_window, tolerance
    yield "table similarity vs closed form", worst_s, 1e-10


def cmd_verify(args) -> int:
    cfg = resolve(args)
    failed = False
    lines = []
    for name, value, tol in verification_report(cfg["bins"], cfg["points"], cfg["seed"], cfg["tolerance"]):
        ok = value <= tol
        failed |= not ok
        lines.append(f"{'PASS' if ok else 'FAIL'}  {name}: max discrepancy {value:.3e} (tolerance {tol:.1e})")
    emit("\n".join(lines) + "\n", args.output)
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mismatch-cnot",
                                     description="Coincidence CNOT with temporally and spectrally mismatched photons.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tau", help="time shift of the target photon")
    common.add_argument("--omega", help="frequency shift of the target photon")
    common.add_argument("--tc", help="control detector click time (window start)")
    common.add_argument("--tt", help="target detector click time (window start)")
    common.add_argument("--tw", help="detector integration window length")
    common.add_argument("--window", help="'full' to integrate over all times, or a window length")
    common.add_argument("--model", choices=[m.value for m in DetectorModel])
    common.add_argument("--basis", choices=["Z", "X", "z", "x"])
    common.add_argument("--config", help="key = value file; flags take precedence")
    common.add_argument("-o", "--output", help="output file (default stdout)")
    common.add_argument("--format", choices=["csv", "json"])

    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("truth-table", parents=[common], help="4x4 coincidence truth table")
    p.set_defaults(func=cmd_truth_table)
    p = sub.add_parser("similarity", parents=[common], help="similarity to the ideal CNOT")
    p.set_defaults(func=cmd_similarity)
    p = sub.add_parser("sweep", parents=[common], help="parameter sweep or figure preset")
    p.add_argument("--preset", help="fig2a, fig2b, fig3a, fig3b, fig4 or fig5")
    p.add_argument("--axis", action="append", help="name:start:stop:n with name in " + ", ".join(PARAMETERS))
    p.add_argument("--outputs", help="comma-separated subset of " + ", ".join(OUTPUTS))
    p.set_defaults(func=cmd_sweep)
    p = sub.add_parser("verify", parents=[common], help="cross-check closed forms against the time-bin oracle")
    p.add_argument("--bins", help="oracle bins per window (default 600)")
    p.add_argument("--points", help="random parameter sets (default 20)")
    p.add_argument("--seed", help="random seed (default 0)")
    p.add_argument("--tolerance", help="relative tolerance (default 1e-3)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
