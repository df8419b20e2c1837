"""CLI surface: flags, outputs, and exit codes."""

import csv
import json
import math

from click.testing import CliRunner

from dynlab.cli import main

TWO_PI = 2 * math.pi


def run(*args):
    return CliRunner().invoke(main, list(args), catch_exceptions=False)


class TestRender:
    def test_counts_to_stdout(self):
        r = run("render", "--fn", "z + 1", "--window", "-2,2,-2,2",
                "--res", "16x16")
        assert r.exit_code == 0
        assert "EscapeInfinity" in r.output

    def test_png_and_json_outputs(self, tmp_path):
        png = tmp_path / "out.png"
        js = tmp_path / "out.json"
        r = run("render", "--fn", "z - 1 + exp(-z)",
                "--window", "-3,3,-7,14", "--res", "32x32",
                "--max-iter", "200", "--out", str(png), "--json", str(js))
        assert r.exit_code == 0
        assert png.stat().st_size > 100
        doc = json.loads(js.read_text())
        assert doc["config"]["fn"] == "z - 1 + exp(-z)"
        assert len(doc["cells"]) == 32 * 32

    def test_config_file(self, tmp_path):
        cfg = {"version": "dynlab-raster/1", "fn": "z + 1",
               "window": [-2.0, 2.0, -2.0, 2.0], "resolution": [16, 16],
               "orbit": {"max_iter": 100, "escape_radius": 1e8,
                         "eps_sing": 1e-3, "eps_cycle": 1e-9,
                         "p_max": 6, "confirm_steps": 5},
               "period": None, "palette": "classic"}
        p = tmp_path / "cfg.json"
        p.write_text(json.dumps(cfg))
        r = run("render", "--config", str(p))
        assert r.exit_code == 0

    def test_bad_expression_fails(self):
        r = run("render", "--fn", "z ** 2", "--window", "-2,2,-2,2")
        assert r.exit_code != 0


class TestOrbit:
    def test_csv_and_json(self, tmp_path):
        out = tmp_path / "orbit.csv"
        js = tmp_path / "orbit.json"
        r = run("orbit", "--fn", "z + exp(1/sin(z))", "--seed", "-0.4",
                "--window", "-8,8,-8,8", "--out", str(out),
                "--json", str(js))
        assert r.exit_code == 0
        with out.open() as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["n", "re", "im",
                           "chordal_to_nearest_singularity"]
        assert rows[1][0] == "0"
        assert float(rows[1][1]) == -0.4
        doc = json.loads(js.read_text())
        assert doc["kind"] == "BakerFinite"
        assert doc["final_chordal_residual"] == 5.854057756236058e-05

    def test_band_trace_with_period(self, tmp_path):
        js = tmp_path / "o.json"
        r = run("orbit", "--fn", "z + exp(1/sin(z)) + 2*pi",
                "--seed", "-6.75,-0.09876543209876587",
                "--window", "-8,8,-8,8", "--period", "6.283185307179586",
                "--json", str(js))
        assert r.exit_code == 0
        doc = json.loads(js.read_text())
        assert doc["kind"] == "Wandering"
        trace = doc["band_trace"]
        assert trace == sorted(trace)


class TestPeriodic:
    def test_lattice(self, tmp_path):
        js = tmp_path / "p.json"
        r = run("periodic", "--fn", "z - 1 + exp(-z)",
                "--window", "-1,1,-7,7", "--period", "1",
                "--json", str(js))
        assert r.exit_code == 0
        doc = json.loads(js.read_text())
        assert len(doc["points"]) == 3
        kinds = {p["kind"] for p in doc["points"]}
        assert kinds == {"Attracting"}


class TestSingularities:
    def test_lattice_points(self, tmp_path):
        js = tmp_path / "s.json"
        r = run("singularities", "--fn", "z + exp(1/sin(z))",
                "--window", "-8,8,-8,8", "--json", str(js))
        assert r.exit_code == 0
        doc = json.loads(js.read_text())
        assert len(doc["points"]) == 5
        assert doc["includes_infinity"] is True

    def test_depth_two_grows(self, tmp_path):
        js = tmp_path / "s2.json"
        r = run("singularities", "--fn", "z + exp(1/sin(z))",
                "--window", "-8,8,-8,8", "--depth", "2", "--json", str(js))
        assert r.exit_code == 0
        assert len(json.loads(js.read_text())["points"]) > 5


class TestVerify:
    def test_commute_pass(self):
        r = run("verify", "commute", "--fn", "z + exp(1/sin(z))",
                "--shift", "6.283185307179586", "--window", "-8,8,-8,8")
        assert r.exit_code == 0

    def test_commute_fail(self):
        r = run("verify", "commute", "--fn", "z + exp(-z)",
                "--shift", "1", "--window", "-2,4,-3,3")
        assert r.exit_code == 1

    def test_julia_eq_small(self, tmp_path):
        js = tmp_path / "j.json"
        r = run("verify", "julia-eq", "--fn", "z + exp(1/sin(z))",
                "--shift", "6.283185307179586",
                "--window", "-12.566370614359172,12.566370614359172,-8,8",
                "--res", "64x64", "--max-iter", "200",
                "--min-agreement", "0.9", "--json", str(js))
        assert r.exit_code == 0, r.output
        doc = json.loads(js.read_text())
        assert doc["passed"] is True
        assert doc["agreement_fraction"] >= 0.9

    def test_translate_small(self):
        r = run("verify", "translate", "--fn", "z + exp(1/sin(z))",
                "--period", "6.283185307179586",
                "--window", "-12.566370614359172,12.566370614359172,-8,8",
                "--res", "64x64", "--max-iter", "200",
                "--min-agreement", "0.9")
        assert r.exit_code == 0, r.output

    def test_translate_bad_shift(self):
        # 1.0 is not a whole number of pixels on this window/resolution
        r = run("verify", "translate", "--fn", "z + exp(1/sin(z))",
                "--period", "1.0", "--window", "-8,8,-8,8",
                "--res", "64x64", "--max-iter", "100")
        assert r.exit_code != 0

    def test_sectors_pass_and_fail(self):
        ok = run("verify", "sectors", "--fn", "z + exp(1/z^2)",
                 "--order", "2", "--samples", "1000")
        assert ok.exit_code == 0
        bad = run("verify", "sectors", "--fn", "z + exp(1/z^2)",
                  "--order", "3", "--samples", "1000")
        assert bad.exit_code == 1


def test_version():
    r = run("--version")
    assert r.exit_code == 0
    assert "0.1.0" in r.output
