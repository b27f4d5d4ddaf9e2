import json
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from groverdep.cli import main
from groverdep.curves import Curve
from groverdep.grover import GroverInstance
from groverdep.sweep import (
    ConfigError,
    SweepConfig,
    WidthGrid,
    atomic_write,
    curve_csv,
    figure_curves,
    read_curve_csv,
    reproduce_figure,
    run_sweep,
)
from groverdep.tdch import argmax_k


def curves_by_letter(fig_id):
    return {name.split("_")[1]: c for name, c in figure_curves(fig_id)}


class TestWidthGrid:
    def test_default_has_endpoints(self):
        grid = WidthGrid.default().resolve()
        assert grid[0] == 0.0 and grid[-1] == 1.0 and len(grid) == 51
        assert np.all(np.diff(grid) > 0)

    @pytest.mark.parametrize(
        "spec,expected",
        [("0,0.01,0.1", [0, 0.01, 0.1]), ("lin:0:1:3", [0, 0.5, 1]), ("log:0.01:1:3", [0, 0.01, 0.1, 1])],
    )
    def test_parse(self, spec, expected):
        assert np.allclose(WidthGrid.parse(spec).resolve(), expected)

    @pytest.mark.parametrize("spec", ["", "0,1.5", "lin:0:1", "log:0:1:4", "lin:a:b:c", "x,y", "lin:0:1:0"])
    def test_rejects(self, spec):
        with pytest.raises(ConfigError):
            WidthGrid.parse(spec).resolve()


class TestSweepConfig:
    def test_round_trip(self):
        cfg = SweepConfig(model="ldch", qubits=[3, 4], widths=WidthGrid(values=[0.1]), stop="k=2")
        again = SweepConfig.from_dict(json.loads(json.dumps(cfg.to_dict())))
        assert again == cfg

    @pytest.mark.parametrize(
        "data,field",
        [
            ({"model": "xdch", "qubits": [3]}, "model"),
            ({"model": "tdch", "qubits": []}, "qubits"),
            ({"model": "tdch", "qubits": [3], "stop": "later"}, "stop"),
            ({"model": "tdch", "qubits": [3], "formats": ["png"]}, "formats"),
            ({"model": "tdch", "qubits": [2], "t": 4}, "t"),
            ({"model": "tdch", "qubits": [2], "colour": "red"}, "colour"),
            ({"qubits": [2]}, "model"),
        ],
    )
    def test_validation_names_field(self, data, field):
        with pytest.raises(ConfigError) as info:
            SweepConfig.from_dict(data).validate()
        assert info.value.field == field

    def test_default_simulate_modes(self):
        assert SweepConfig(model="ldch", qubits=[3]).simulate_mode() == "always"
        assert SweepConfig(model="tdch", qubits=[3]).simulate_mode() == "auto"


class TestCsv:
    def test_header_and_precision(self):
        curve = Curve(np.arange(3), np.array([0.1, 1 / 3, 1.0]), "analytic")
        text = curve_csv(curve)
        assert text.splitlines()[0] == "k,probability,source"
        assert text.splitlines()[2] == "1,0.33333333333333331,analytic"

    @given(st.lists(st.floats(0, 1), min_size=1, max_size=20))
    def test_round_trip_is_lossless(self, ys):
        curve = Curve(np.arange(len(ys)), np.array(ys), "simulated")
        path = os.path.join(os.environ.get("TMPDIR", "/tmp"), f"rt-{os.getpid()}.csv")
        atomic_write(path, curve_csv(curve))
        _, _, rows = read_curve_csv(path)
        assert [r[1] for r in rows] == ys
        os.unlink(path)

    def test_atomic_write_leaves_no_temp(self, tmp_path):
        atomic_write(str(tmp_path / "a" / "x.csv"), "k\n")
        assert os.listdir(tmp_path / "a") == ["x.csv"]


class TestCurve:
    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            Curve([0, 0], [0.1, 0.2], "analytic")
        with pytest.raises(ValueError):
            Curve([0, 1], [0.1, 1.2], "analytic")
        with pytest.raises(ValueError):
            Curve([0, 1], [0.1, 0.2], "guessed")


class TestFigures:
    def test_fig1(self):
        curves = curves_by_letter("fig1")
        a = curves["A"]
        assert int(np.argmax(a.probability)) == 25 and a.probability[25] >= 0.999
        assert np.allclose(curves["E"].probability, 1 / 1024)

    def test_fig2_sizes(self):
        curves = curves_by_letter("fig2")
        assert [c.meta["n"] for c in curves.values()] == [10, 12, 14, 16]
        assert all(c.source == "analytic" for c in curves.values())

    def test_fig3_ratio_bounded(self):
        for _, c in figure_curves("fig3"):
            assert np.all((c.y > 0) & (c.y <= 1 + 1 / 10))
            assert np.all(np.diff(c.y) <= 0)

    def test_fig4_exact_tracks_argmax(self):
        curves = curves_by_letter("fig4")
        assert np.max(np.abs(curves["A"].y - curves["B"].y)) <= 1

    def test_fig6_upper_chain(self):
        c = curves_by_letter("fig6")
        tol = 1e-12
        assert np.all(c["D"].y <= c["E"].y + 1e-8)
        assert np.all(c["A"].y <= c["D"].y + tol)
        assert np.all(c["B"].y <= c["A"].y + tol)
        assert np.all(c["C"].y <= c["A"].y + tol)

    def test_unknown_id(self):
        with pytest.raises(ConfigError):
            figure_curves("fig5")

    def test_manifest_tags_every_column(self, tmp_path):
        path = reproduce_figure("fig4", str(tmp_path), ["csv", "svg"])
        manifest = json.loads(open(path).read())
        assert len(manifest["files"]) == 4
        for entry in manifest["files"]:
            assert all(v for v in entry["columns"].values())
            assert (tmp_path / entry["path"]).exists()
        assert list(tmp_path.glob("*.svg"))


class TestSweep:
    def test_tdch_sweep_writes_analytic_and_simulated(self, tmp_path):
        cfg = SweepConfig(model="tdch", qubits=[4], widths=WidthGrid(values=[0.0, 0.2]), out=str(tmp_path), formats=["csv", "json"])
        manifest = json.loads(open(run_sweep(cfg)).read())
        names = sorted(e["path"] for e in manifest["files"])
        assert names == [
            "tdch_n04_w000_analytic.csv",
            "tdch_n04_w000_simulated.csv",
            "tdch_n04_w001_analytic.csv",
            "tdch_n04_w001_simulated.csv",
        ]
        _, _, a = read_curve_csv(tmp_path / names[2])
        _, _, s = read_curve_csv(tmp_path / names[3])
        assert max(abs(x[1] - y[1]) for x, y in zip(a, s)) < 1e-10
        assert len(json.loads((tmp_path / "reports.json").read_text())["reports"]) == 2
        assert (tmp_path / "curves.json").exists()

    def test_tdch_beyond_capacity_is_analytic_only(self, tmp_path):
        cfg = SweepConfig(model="tdch", qubits=[6], widths=WidthGrid(values=[0.1]), out=str(tmp_path), max_qubits=4)
        manifest = json.loads(open(run_sweep(cfg)).read())
        assert [e["columns"]["source"] for e in manifest["files"]] == ["analytic"]

    def test_ldch_sweep_kmax(self, tmp_path):
        cfg = SweepConfig(model="ldch", qubits=[3], widths=WidthGrid(values=[0.05]), stop="kmax", out=str(tmp_path))
        manifest = json.loads(open(run_sweep(cfg)).read())
        sources = sorted(e["columns"]["source"] for e in manifest["files"])
        assert sources == ["bound-lower", "bound-upper", "first-order", "simulated"]
        report = json.loads((tmp_path / "reports.json").read_text())["reports"][0]
        assert report["stop_rule"] == "at_k_max"


def run_cli(*args, env=None):
    return subprocess.run(
        [sys.executable, "-m", "groverdep", *args],
        capture_output=True,
        text=True,
        env={**os.environ, **(env or {})},
    )


class TestCli:
    def test_sweep_ok(self, tmp_path):
        assert main(["sweep", "--model", "tdch", "--qubits", "3-4", "--width", "lin:0:1:3", "--out", str(tmp_path)]) == 0
        assert (tmp_path / "manifest.json").exists()

    def test_config_file_overrides_flags(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"model": "tdch", "qubits": [3], "widths": [0.5], "out": str(tmp_path / "o")}))
        assert main(["sweep", "--config", str(cfg), "--model", "ldch", "--qubits", "5"]) == 0
        manifest = json.loads((tmp_path / "o" / "manifest.json").read_text())
        assert manifest["config"]["model"] == "tdch" and manifest["config"]["qubits"] == [3]

    def test_config_errors_exit_2(self, tmp_path, capsys):
        assert main(["sweep", "--model", "tdch", "--qubits", "3", "--width", "0,2", "--out", str(tmp_path)]) == 2
        assert "widths" in capsys.readouterr().err
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert main(["sweep", "--config", str(bad)]) == 2
        assert run_cli("figure", "--id", "fig9", "--out", str(tmp_path)).returncode == 2

    def test_capacity_exit_3(self, tmp_path):
        result = run_cli(
            "sweep", "--model", "ldch", "--qubits", "5", "--width", "0.1", "--out", str(tmp_path),
            env={"GROVER_SIM_MAX_QUBITS": "4"},
        )
        assert result.returncode == 3
        assert "GROVER_SIM_MAX_QUBITS" in result.stderr

    def test_cost_json(self, capsys):
        assert main(["cost", "--model", "tdch", "--qubits", "10", "--width", "0,0.1", "--stop", "kmax"]) == 0
        reports = json.loads(capsys.readouterr().out)["reports"]
        inst = GroverInstance(10)
        assert [r["k_used"] for r in reports] == [argmax_k(inst, 0.0), argmax_k(inst, 0.1)]
        assert main(["cost", "--model", "ldch", "--qubits", "4", "--width", "1"]) == 2

    def test_figure_csv_only(self, tmp_path):
        assert main(["figure", "--id", "fig1", "--out", str(tmp_path)]) == 0
        assert len(list(tmp_path.glob("fig1_*.csv"))) == 5
        assert not list(tmp_path.glob("*.svg"))
