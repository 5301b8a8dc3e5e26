import math

import numpy as np
import pytest

from mismatch_cnot.detection import DetectorModel
from mismatch_cnot.sweep import PRESETS, Axis, SweepSpec, columns, preset, run_preset, run_sweep


def test_axis_validation():
    with pytest.raises(ValueError):
        Axis("bogus", (0, 1))
    with pytest.raises(ValueError):
        Axis.linspace("tau", 0, 1, 1)


def test_spec_validation():
    a = Axis.linspace("tau", 0, 1, 3)
    with pytest.raises(ValueError):
        SweepSpec(())
    with pytest.raises(ValueError):
        SweepSpec((a, a))
    with pytest.raises(ValueError):
        SweepSpec((a, Axis.linspace("omega", 0, 1, 2), Axis.linspace("t_c", 0, 1, 2)))
    with pytest.raises(ValueError):
        SweepSpec((a,), outputs=("nope",))
    with pytest.raises(ValueError):
        SweepSpec((Axis.linspace("t_t", 0, 1, 2),), model=DetectorModel.GATED)


def test_row_count_and_order():
    spec = SweepSpec((Axis.linspace("tau", 0, 1, 3), Axis.linspace("omega", 0, 2, 4)),
                     {"t_c": 0.0, "t_t": 1.0, "t_w": 0.5}, outputs=("similarity", "p_min"))
    rows = run_sweep(spec)
    assert len(rows) == 12
    assert [r["tau"] for r in rows[:4]] == [0.0] * 4
    assert [r["omega"] for r in rows[:4]] == pytest.approx([0, 2 / 3, 4 / 3, 2])
    assert all(r["status"] == "ok" for r in rows)
    assert columns(spec)[:7] == ["tau", "omega", "t_c", "t_t", "t_w", "model", "basis"]


def test_rerun_is_identical():
    spec = PRESETS["fig3a"][0]
    assert run_sweep(spec) == run_sweep(spec)


def test_failed_points_are_flagged_not_fatal():
    spec = SweepSpec((Axis("t_w", (-1.0, 0.5)),), {"t_c": 0.0, "t_t": 1.0},
                     outputs=("similarity", "truth_table"))
    rows = run_sweep(spec)
    assert rows[0]["status"].startswith("error")
    assert math.isnan(rows[0]["similarity"]) and math.isnan(rows[0]["T_00_00"])
    assert rows[1]["status"] == "ok"


def test_outputs_columns():
    spec = SweepSpec((Axis.linspace("tau", 0, 1, 2),), outputs=("truth_table", "success_probs", "p_min"))
    row = run_sweep(spec)[0]
    assert row["T_00_00"] == pytest.approx(1 / 9)
    assert row["P_11"] == pytest.approx(1 / 9)
    assert row["p_min"] == pytest.approx(1 / 9)
    assert len(columns(spec)) == 7 + 16 + 4 + 1 + 1


def _series(rows, key="omega"):
    out = {}
    for r in rows:
        out.setdefault(r["t_w"], []).append((r[key], r["similarity"]))
    return {k: np.array(v) for k, v in out.items()}


def test_fig2a_oscillates():
    _, rows = run_preset("fig2a")
    lines = _series(rows)
    assert set(lines) == {0.01, 0.5, 1.0, 2.0}
    w, s = lines[0.01].T
    assert s[0] == pytest.approx(1.0, abs=1e-12)
    # a peak sits at 2*pi; with a 0.01 window the peak is pulled down by the
    # spread of click-time differences, roughly (omega t_w)^2 / 12
    k = np.argmin(np.abs(w - 2 * math.pi))
    local = s[k - 3:k + 4]
    assert local.max() >= 1 - 1e-3
    assert s[np.argmin(np.abs(w - math.pi))] < 0.34


def test_fig2b_gated():
    _, rows = run_preset("fig2b")
    lines = _series(rows)
    assert lines[0.01][:, 1].min() >= 0.999
    w, s = lines[2.0].T
    sel = w <= 4.0
    assert np.all(np.diff(s[sel]) < 0)


def test_fig3_monotone():
    for name in ("fig3a", "fig3b"):
        _, rows = run_preset(name)
        for t_w, line in _series(rows, "tau").items():
            assert np.all(np.diff(line[:, 1]) <= 0), (name, t_w)


def test_fig4_gated_companion():
    _, rows = run_preset("fig4")
    gated = [r for r in rows if r["t_c"] == r["t_t"]]
    assert len(gated) == 9 * 41
    assert min(r["similarity"] for r in gated) >= 0.999


def test_fig5_edges():
    _, rows = run_preset("fig5")
    assert all(r["similarity"] == pytest.approx(1.0, abs=1e-12) for r in rows if r["omega"] == 0)
    # clicks share one 0.01 window at t_t = 0: ideal up to the window spread
    assert all(r["similarity"] >= 0.999 for r in rows if r["t_t"] == 0)
    inner = [r["similarity"] for r in rows if r["t_t"] == 1.0 and abs(r["omega"] - math.pi) < 0.2]
    assert min(inner) < 0.5


def test_unknown_preset():
    with pytest.raises(ValueError):
        preset("fig9")


def test_preset_overrides():
    _, rows = run_preset("fig3a", omega=2.0)
    assert {r["omega"] for r in rows} == {2.0}
