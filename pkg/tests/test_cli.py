"""End-to-end command-line runs: artifacts, determinism, exit codes."""

import json
import math

import numpy as np
import pytest

from relmech.cli import main

KEPLER_CONFIG = """\
[run]
label = orbit

[constants]
c = 10.0
m = 1.0

[potential]
name = kepler
gm = 1.0

[dynamics]
form = relativistic_coord_time
dim = 2

[initial]
x = 1.0 0.0
v = 0.0 1.1

[integrator]
method = rkf45
rtol = 1e-9
atol = 1e-11

[output]
span = 20.0
samples = 101
"""


@pytest.fixture
def kepler_config(tmp_path):
    path = tmp_path / "kepler.ini"
    path.write_text(KEPLER_CONFIG)
    return path


class TestSimulate:
    def test_end_to_end(self, tmp_path, kepler_config):
        out = tmp_path / "out"
        code = main(["simulate", "--config", str(kepler_config),
                     "--outdir", str(out), "--no-plot"])
        assert code == 0
        assert (out / "orbit.csv").exists()
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["termination"] == "completed"
        assert manifest["drift"]["energy"] < 1e-7
        header = (out / "orbit.csv").read_text().splitlines()[0]
        assert "t (time)" in header and "K2 (dimensionless)" in header

    def test_figures_rendered_by_default(self, tmp_path, kepler_config):
        out = tmp_path / "out"
        code = main(["simulate", "--config", str(kepler_config), "--outdir", str(out)])
        assert code == 0
        assert (out / "orbit.png").exists()

    def test_deterministic_csv(self, tmp_path, kepler_config):
        out1, out2 = tmp_path / "a", tmp_path / "b"
        assert main(["simulate", "--config", str(kepler_config),
                     "--outdir", str(out1), "--no-plot"]) == 0
        assert main(["simulate", "--config", str(kepler_config),
                     "--outdir", str(out2), "--no-plot"]) == 0
        assert (out1 / "orbit.csv").read_bytes() == (out2 / "orbit.csv").read_bytes()

    def test_flag_overrides_config(self, tmp_path, kepler_config):
        out = tmp_path / "out"
        code = main(["simulate", "--config", str(kepler_config), "--outdir", str(out),
                     "--no-plot", "--set", "output.samples=11"])
        assert code == 0
        assert len((out / "orbit.csv").read_text().splitlines()) == 12

    def test_unknown_key_rejected(self, tmp_path, kepler_config):
        out = tmp_path / "out"
        code = main(["simulate", "--config", str(kepler_config), "--outdir", str(out),
                     "--no-plot", "--set", "output.cadence=5"])
        assert code == 2

    def test_superluminal_initial_speed_rejected(self, tmp_path, kepler_config, capsys):
        out = tmp_path / "out"
        code = main(["simulate", "--config", str(kepler_config), "--outdir", str(out),
                     "--no-plot", "--set", "initial.v=0.0 12.0"])
        assert code == 2
        err = capsys.readouterr().err
        assert "speed limit" in err
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["termination"] == "validation-error"

    def test_guard_tripped_exit_code(self, tmp_path):
        # inward Hooke run just below the local limit: moving toward the
        # origin shrinks g00 - beta^2 below the configured guard margin
        config = tmp_path / "hooke.ini"
        v0 = -math.sqrt(17.0 - 5e-3)  # g00(2) = 1 + 2*U = 17 for k = 4, c = m = 1
        config.write_text(f"""\
[constants]
c = 1.0
m = 1.0

[potential]
name = hooke
k = 4.0

[dynamics]
form = relativistic_coord_time
dim = 1

[initial]
x = 2.0
v = {v0}

[integrator]
rtol = 1e-10
atol = 1e-12
guard_margin = 1e-3

[output]
span = 10.0
samples = 101
""")
        out = tmp_path / "out"
        code = main(["simulate", "--config", str(config), "--outdir", str(out),
                     "--no-plot"])
        assert code == 3
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["termination"] == "guard-tripped"

    def test_missing_config(self, tmp_path):
        code = main(["simulate", "--config", str(tmp_path / "nope.ini"),
                     "--outdir", str(tmp_path / "out"), "--no-plot"])
        assert code == 2


class TestBoost:
    def test_matches_hand_example(self, capsys):
        assert main(["boost", "--g00", "0.5", "--beta", "0.5"]) == 0
        payload = json.loads(capsys.readouterr().out)
        root2 = math.sqrt(2.0)
        np.testing.assert_allclose(
            payload["matrix"], [[root2, -root2], [-root2 / 2, root2]], rtol=1e-12)
        assert abs(payload["det"] - 1.0) < 1e-12
        assert payload["invariance_residual"] < 1e-12

    def test_superluminal_frame_exit(self, capsys):
        assert main(["boost", "--g00", "0.5", "--beta", "0.9"]) == 2
        assert "speed limit" in capsys.readouterr().err


class TestRedshift:
    def test_values_and_ratio(self, capsys):
        assert main(["redshift", "--r", "4.0", "--r0", "1.0", "--r2", "8.0"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["nu"] == pytest.approx(math.sqrt(0.5), rel=1e-12)
        assert payload["ratio_nu_r_over_nu_r2"] == pytest.approx(
            math.sqrt(0.5 / 0.75), rel=1e-12)

    def test_horizon_exit(self, capsys):
        assert main(["redshift", "--r", "1.5", "--r0", "1.0"]) == 2


class TestDuality:
    def test_end_to_end(self, tmp_path):
        config = tmp_path / "duality.ini"
        config.write_text(f"""\
[constants]
c = 10.0
m = 1.0

[oscillator]
k = 1.0
z0 = 1.0 0.0
w0 = 0.0 0.5
span = {4 * math.pi}
samples = 4096

[integrator]
rtol = 1e-11
atol = 1e-13
""")
        out = tmp_path / "out"
        code = main(["duality", "--config", str(config), "--outdir", str(out),
                     "--no-plot"])
        assert code == 0
        report = json.loads((out / "duality.json").read_text())
        assert report["kappa"] == pytest.approx(2.5, rel=1e-10)
        assert report["max_kepler_residual"] < 1e-4
        assert (out / "duality_oscillator.csv").exists()
        assert (out / "duality_kepler.csv").exists()


class TestLienard:
    def test_kappa_system(self, tmp_path):
        config = tmp_path / "lienard.ini"
        config.write_text("""\
[constants]
c = 1000000.0
m = 1.0

[system]
kappa = 2.0

[initial]
x = 1.0
v = 0.0

[output]
span = 50.0
samples = 2001

[integrator]
rtol = 1e-12
atol = 1e-30
""")
        out = tmp_path / "out"
        code = main(["lienard", "--config", str(config), "--outdir", str(out),
                     "--no-plot"])
        assert code == 0
        metric = json.loads((out / "lienard_metric.json").read_text())
        assert metric["alpha"] == pytest.approx(-0.5)
        assert metric["chiellini_consistent"] is True
        assert metric["first_integral_drift_rel"] < 1e-6
        header = (out / "lienard.csv").read_text().splitlines()[0]
        assert "I (" in header

    def test_expression_system(self, tmp_path):
        config = tmp_path / "expr.ini"
        config.write_text("""\
[constants]
c = 100.0

[system]
f_expr = 2.0 + 0*x
g_expr = x
alpha = -0.5

[initial]
x = 0.5

[output]
span = 5.0
samples = 101

[integrator]
rtol = 1e-10
atol = 1e-14
""")
        out = tmp_path / "out"
        code = main(["lienard", "--config", str(config), "--outdir", str(out),
                     "--no-plot"])
        assert code == 0
        metric = json.loads((out / "lienard_metric.json").read_text())
        assert metric["chiellini_consistent"] is True

    def test_unsafe_expression_rejected(self, tmp_path):
        config = tmp_path / "evil.ini"
        config.write_text("""\
[constants]
c = 100.0

[system]
f_expr = __import__("os").system("true")
g_expr = x
alpha = -0.5

[initial]
x = 0.5

[output]
span = 1.0
""")
        code = main(["lienard", "--config", str(config),
                     "--outdir", str(tmp_path / "out"), "--no-plot"])
        assert code == 2


class TestDeriveMetric:
    def test_hooke_reconstruction(self, tmp_path):
        config = tmp_path / "dm.ini"
        config.write_text("""\
[constants]
c = 3.0
m = 1.5

[accel]
kind = hooke
k = 2.0

[probe]
lo = -2.0
hi = 2.0
samples = 21
""")
        out = tmp_path / "out"
        code = main(["derive-metric", "--config", str(config), "--outdir", str(out),
                     "--no-plot"])
        assert code == 0
        data = np.loadtxt(out / "metric.csv", delimiter=",", skiprows=1)
        x, g00 = data[:, 0], data[:, 2]
        np.testing.assert_allclose(g00, 1.0 + 2.0 * (x**2) / (1.5 * 9.0), atol=1e-9)

    def test_kepler_reconstruction(self, tmp_path):
        config = tmp_path / "dm.ini"
        config.write_text("""\
[constants]
c = 1.0
m = 1.0

[accel]
kind = kepler
gm = 1.0

[probe]
lo = 3.0
hi = 9.0
samples = 13
""")
        out = tmp_path / "out"
        code = main(["derive-metric", "--config", str(config), "--outdir", str(out),
                     "--no-plot"])
        assert code == 0
        data = np.loadtxt(out / "metric.csv", delimiter=",", skiprows=1)
        r, g00 = data[:, 0], data[:, 2]
        np.testing.assert_allclose(g00, 1.0 - 2.0 / r, atol=1e-9)

    def test_expression_acceleration(self, tmp_path):
        config = tmp_path / "dm.ini"
        config.write_text("""\
[constants]
c = 1.0
m = 1.0

[accel]
kind = expression
expr = -sin(x)
reference = 0.0

[probe]
lo = -1.0
hi = 1.0
samples = 11
""")
        out = tmp_path / "out"
        code = main(["derive-metric", "--config", str(config), "--outdir", str(out),
                     "--no-plot"])
        assert code == 0
        data = np.loadtxt(out / "metric.csv", delimiter=",", skiprows=1)
        x, u = data[:, 0], data[:, 1]
        np.testing.assert_allclose(u, 1.0 - np.cos(x), atol=1e-9)
