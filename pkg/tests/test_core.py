"""Metric, potential, and state-record tests."""

import numpy as np
import pytest

from relmech import (
    Constants,
    ParticleState,
    SingularPointError,
    StaticMetric,
    TrajectoryRecord,
    check_gradient,
    flat_metric,
    free_potential,
    from_callable,
    hooke_potential,
    kepler_potential,
    make_potential,
)


def test_constants_validation():
    with pytest.raises(ValueError):
        Constants(c=0.0)
    with pytest.raises(ValueError):
        Constants(m=-1.0)
    assert Constants(c=2.0, m=3.0).mc2 == 12.0


class TestMetricG00:
    def test_free_is_flat(self):
        metric = flat_metric(Constants(), dim=3)
        assert metric.g00([0.3, -1.0, 2.0]) == 1.0

    def test_hooke_value(self):
        # 1 + 2*(0.5*1*1^2)/(1*10^2) = 1.01
        metric = StaticMetric(hooke_potential(1.0), Constants(c=10.0, m=1.0), dim=1)
        assert metric.g00([1.0]) == pytest.approx(1.01, abs=1e-15)

    def test_kepler_value(self):
        # 1 - 2*(1/4) = 0.5
        metric = StaticMetric(kepler_potential(1.0, 1.0), Constants(), dim=1)
        assert metric.g00([4.0]) == pytest.approx(0.5, abs=1e-15)

    def test_kepler_singular_origin(self):
        metric = StaticMetric(kepler_potential(1.0, 1.0), Constants(), dim=2)
        with pytest.raises(SingularPointError):
            metric.g00([0.0, 0.0])

    def test_asymptotic_flatness(self):
        # Kepler far from the source and Hooke at its origin recover g00 = 1
        con = Constants(c=2.0)
        kepler = StaticMetric(kepler_potential(1.0, con.m), con, dim=1)
        assert kepler.g00([1e12]) == pytest.approx(1.0, abs=1e-11)
        hooke = StaticMetric(hooke_potential(3.0), con, dim=2)
        assert hooke.g00([0.0, 0.0]) == 1.0

    def test_matches_potential_definition(self):
        # g00 must equal 1 + 2 U/(m c^2) to machine precision for random points
        rng = np.random.default_rng(7)
        con = Constants(c=3.0, m=2.0)
        for pot in (free_potential(), hooke_potential(0.7), kepler_potential(2.0, con.m)):
            metric = StaticMetric(pot, con, dim=3)
            for _ in range(100):
                x = rng.uniform(0.5, 3.0, size=3)
                expected = 1.0 + 2.0 * pot.eval(x) / con.mc2
                assert metric.g00(x) == pytest.approx(expected, rel=1e-15)


class TestLineElement:
    def test_flat_rest_interval(self):
        metric = flat_metric(Constants(), dim=1)
        assert metric.line_element(1.0, [0.0], [0.0]) == 1.0

    def test_null_interval(self):
        metric = flat_metric(Constants(), dim=1)
        assert metric.line_element(1.0, [1.0], [0.0]) == 0.0

    def test_kepler_interval(self):
        # 0.5 * 1 * 4 - 1 = 1
        metric = StaticMetric(kepler_potential(1.0, 1.0), Constants(), dim=1)
        assert metric.line_element(2.0, [1.0], [4.0]) == pytest.approx(1.0, abs=1e-15)

    def test_flat_equals_minkowski(self):
        rng = np.random.default_rng(11)
        metric = flat_metric(Constants(c=2.0), dim=3)
        for _ in range(50):
            dt = rng.normal()
            dx = rng.normal(size=3)
            x = rng.normal(size=3)
            minkowski = (2.0 * dt) ** 2 - float(dx @ dx)
            assert metric.line_element(dt, dx, x) == pytest.approx(minkowski, abs=1e-14)


class TestGradients:
    def test_builtin_gradients_match_finite_differences(self):
        rng = np.random.default_rng(3)
        pots = [hooke_potential(1.3), kepler_potential(0.8, 1.0)]
        for pot in pots:
            points = rng.uniform(0.5, 4.0, size=(100, 3))
            assert check_gradient(pot, points, rtol=1e-6) < 1e-6

    def test_fd_fallback_flagged(self):
        pot = from_callable(lambda x: float(np.sum(x**2)), label="user")
        assert not pot.grad_is_analytic
        np.testing.assert_allclose(pot.gradient([1.0, 2.0]), [2.0, 4.0], rtol=1e-8)

    def test_check_gradient_detects_mismatch(self):
        from relmech import ScalarPotential

        bad = ScalarPotential(eval=lambda x: float(x[0] ** 2),
                              grad=lambda x: np.array([3.0 * x[0]]), label="bad")
        with pytest.raises(ValueError):
            check_gradient(bad, [np.array([1.0])])


def test_make_potential_from_config():
    con = Constants(c=1.0, m=2.0, G=5.0)
    assert make_potential("free", {}, con).eval(np.array([1.0])) == 0.0
    hooke = make_potential("hooke", {"k": 2.0}, con)
    assert hooke.eval(np.array([2.0])) == pytest.approx(4.0)
    kepler = make_potential("kepler", {"gm": 3.0}, con)
    assert kepler.eval(np.array([3.0])) == pytest.approx(-2.0 * 3.0 / 3.0)
    with pytest.raises(ValueError):
        make_potential("yukawa", {}, con)


def test_particle_state_shapes():
    state = ParticleState(0.0, [1.0, 2.0], [0.1, 0.2])
    assert state.dim == 2
    assert state.speed() == pytest.approx(np.hypot(0.1, 0.2))
    with pytest.raises(ValueError):
        ParticleState(0.0, [1.0, 2.0], [0.1])


class TestTrajectoryRecord:
    def _record(self):
        t = np.linspace(0.0, 1.0, 5)
        return TrajectoryRecord(
            t=t, ttilde=0.9 * t, x=np.linspace(0, 1, 10).reshape(5, 2),
            v=np.ones((5, 2)), gamma_big=np.full(5, 1.1),
            energy=np.full(5, 2.0), k2=np.full(5, 1.2),
            p_phi=np.full(5, 0.5),
        )

    def test_validate_passes(self):
        self._record().validate()

    def test_validate_rejects_nonmonotonic_time(self):
        rec = self._record()
        rec.t[3] = rec.t[1]
        with pytest.raises(ValueError):
            rec.validate()

    def test_csv_roundtrip(self, tmp_path):
        rec = self._record()
        path = tmp_path / "traj.csv"
        rec.to_csv(path)
        lines = path.read_text().splitlines()
        header = lines[0].split(",")
        assert header[0].startswith("t (") and "(" in header[-1]
        data = np.loadtxt(str(path), delimiter=",", skiprows=1)
        np.testing.assert_allclose(data[:, 0], rec.t, rtol=0, atol=0)
        np.testing.assert_allclose(data[:, 2], rec.x[:, 0], rtol=0, atol=0)
