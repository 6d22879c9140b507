"""Physical constants, scalar potentials, static metrics, and particle states.

Everything here is immutable after construction and evaluation is pure, so
instances can be shared freely across threads and parameter sweeps.

Conventions:
    * metric signature (+, -, -, -); the spatial part is always flat
    * g00(x) = 1 + 2 U(x) / (m c^2)
    * positions and velocities are numpy arrays of shape (dim,), dim in {1,2,3}
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

# Radii below KEPLER_SINGULAR_R * (length scale) count as the singular point
# of the 1/r potential.
KEPLER_SINGULAR_R = 1e-12

# States with 0 < g00 - beta^2 < ADMISSIBILITY_MARGIN are rejected as
# numerically singular (the reparameterization factor would overflow).
ADMISSIBILITY_MARGIN = 1e-14


class RelmechError(Exception):
    """Base class for all library errors."""


class SingularPointError(RelmechError):
    """Potential evaluated at a singular point of its domain (e.g. r = 0)."""


class SpeedLimitError(RelmechError):
    """State violates the local speed limit |v| < c * sqrt(g00)."""


class HorizonError(RelmechError):
    """g00 <= 0: the point lies on or inside the horizon of the metric."""


@dataclass(frozen=True)
class Constants:
    """Runtime physical constants.

    c and m default to 1 so natural-unit tests read cleanly; both are
    explicit parameters because the classical limit requires varying c.
    G is only consumed by the Kepler potential builder.
    """

    c: float = 1.0
    m: float = 1.0
    G: float = 1.0

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError(f"speed of light must be positive, got c={self.c}")
        if not self.m > 0:
            raise ValueError(f"particle mass must be positive, got m={self.m}")

    @property
    def mc2(self) -> float:
        return self.m * self.c**2


def _as_position(x) -> np.ndarray:
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.ndim != 1 or x.size not in (1, 2, 3):
        raise ValueError(f"position must be a 1/2/3-vector, got shape {x.shape}")
    return x


@dataclass(frozen=True)
class ScalarPotential:
    """Scalar potential U(x) with its gradient; the source of all curvature.

    ``grad`` must return dU/dx as an array matching x's shape. For the
    built-in potentials the gradient is analytic; :func:`from_callable`
    builds a finite-difference fallback and flags it (``grad_is_analytic``)
    so run manifests can record the warning.
    """

    eval: Callable[[np.ndarray], float]
    grad: Callable[[np.ndarray], np.ndarray]
    label: str
    grad_is_analytic: bool = True

    def __call__(self, x) -> float:
        return self.eval(_as_position(x))

    def gradient(self, x) -> np.ndarray:
        return np.asarray(self.grad(_as_position(x)), dtype=float)


def free_potential() -> ScalarPotential:
    """U = 0 everywhere (special relativity / flat space)."""
    return ScalarPotential(
        eval=lambda x: 0.0,
        grad=lambda x: np.zeros_like(x),
        label="free",
    )


def hooke_potential(k: float) -> ScalarPotential:
    """Isotropic oscillator potential U = k r^2 / 2, k > 0."""
    if not k > 0:
        raise ValueError(f"Hooke stiffness must be positive, got k={k}")

    def _eval(x):
        return 0.5 * k * float(np.dot(x, x))

    def _grad(x):
        return k * x

    return ScalarPotential(eval=_eval, grad=_grad, label=f"hooke(k={k:g})")


def kepler_potential(gm: float, mass: float) -> ScalarPotential:
    """Attractive 1/r potential U = -G M m / r.

    ``gm`` is the product G*M of the source; ``mass`` is the test particle
    mass (so that a = -grad U / m is independent of it). r = 0 is singular.
    """
    if not gm > 0:
        raise ValueError(f"GM must be positive, got {gm}")

    def _r(x):
        r = float(np.linalg.norm(x))
        if r < KEPLER_SINGULAR_R:
            raise SingularPointError(f"Kepler potential singular at r={r:g}")
        return r

    def _eval(x):
        return -gm * mass / _r(x)

    def _grad(x):
        r = _r(x)
        return gm * mass * x / r**3

    return ScalarPotential(eval=_eval, grad=_grad, label=f"kepler(GM={gm:g})")


def from_callable(f: Callable[[np.ndarray], float], label: str,
                  fd_step: float = 1e-6) -> ScalarPotential:
    """Wrap a user energy function, deriving the gradient by central differences.

    The result carries ``grad_is_analytic=False``; downstream manifests
    surface that flag as a warning.
    """

    def _grad(x):
        g = np.empty_like(x)
        for i in range(x.size):
            h = fd_step * max(1.0, abs(x[i]))
            xp, xm = x.copy(), x.copy()
            xp[i] += h
            xm[i] -= h
            g[i] = (f(xp) - f(xm)) / (2 * h)
        return g

    return ScalarPotential(eval=f, grad=_grad, label=label, grad_is_analytic=False)


BUILTIN_POTENTIALS = ("free", "hooke", "kepler")


def make_potential(name: str, params: dict, constants: Constants) -> ScalarPotential:
    """Build a potential from its config name and parameter map."""
    if name == "free":
        return free_potential()
    if name == "hooke":
        return hooke_potential(k=float(params.get("k", 1.0)))
    if name == "kepler":
        gm = float(params.get("gm", params.get("GM", constants.G)))
        return kepler_potential(gm=gm, mass=constants.m)
    raise ValueError(f"unknown potential {name!r}; choose from {BUILTIN_POTENTIALS}")


@dataclass(frozen=True)
class StaticMetric:
    """Static diagonal metric ds^2 = g00(x) c^2 dt^2 - |dx|^2.

    g00(x) = 1 + 2 U(x) / (m c^2); the spatial part is minus the identity.
    Cross terms g_0i and curved spatial parts are out of scope.
    """

    potential: ScalarPotential
    constants: Constants
    dim: int = 1

    def __post_init__(self):
        if self.dim not in (1, 2, 3):
            raise ValueError(f"spatial dimension must be 1, 2 or 3, got {self.dim}")

    def g00(self, x) -> float:
        x = _as_position(x)
        return 1.0 + 2.0 * self.potential.eval(x) / self.constants.mc2

    def grad_g00(self, x) -> np.ndarray:
        # avoids double finite differencing: grad g00 = (2/mc^2) grad U
        x = _as_position(x)
        return (2.0 / self.constants.mc2) * self.potential.gradient(x)

    def line_element(self, dt: float, dx, x) -> float:
        """Squared interval g00(x) c^2 dt^2 - |dx|^2 for a small displacement."""
        dx = np.atleast_1d(np.asarray(dx, dtype=float))
        return self.g00(x) * (self.constants.c * dt) ** 2 - float(np.dot(dx, dx))

    def admissibility(self, x, v) -> float:
        """g00(x) - |v|^2/c^2; positive for states below the local speed limit."""
        v = np.atleast_1d(np.asarray(v, dtype=float))
        beta2 = float(np.dot(v, v)) / self.constants.c**2
        return self.g00(x) - beta2

    def is_admissible(self, x, v) -> bool:
        return self.admissibility(x, v) > ADMISSIBILITY_MARGIN


def flat_metric(constants: Constants = Constants(), dim: int = 1) -> StaticMetric:
    return StaticMetric(potential=free_potential(), constants=constants, dim=dim)


@dataclass(frozen=True)
class ParticleState:
    """Coordinate-time phase point (t, x, v) with v = dx/dt."""

    t: float
    x: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "x", _as_position(self.x))
        object.__setattr__(self, "v", _as_position(self.v))
        if self.x.shape != self.v.shape:
            raise ValueError("position and velocity must have the same dimension")

    @property
    def dim(self) -> int:
        return self.x.size

    def speed(self) -> float:
        return float(np.linalg.norm(self.v))


# column -> unit strings used in CSV headers
_TRAJECTORY_UNITS = {
    "t": "time",
    "ttilde": "time",
    "x": "length",
    "v": "length/time",
    "Gamma": "dimensionless",
    "energy": "energy",
    "p_phi": "mass*length^2/time",
    "K2": "dimensionless",
    "I": "length^2/time^2",
}


@dataclass
class TrajectoryRecord:
    """Sampled trajectory plus the derived quantities tracked along it.

    ``x`` and ``v`` have shape (n_samples, dim). ``p_phi`` is None for 1D
    runs and ``first_integral`` is only populated by damped-system runs.
    """

    t: np.ndarray
    ttilde: np.ndarray
    x: np.ndarray
    v: np.ndarray
    gamma_big: np.ndarray
    energy: np.ndarray
    k2: np.ndarray
    p_phi: Optional[np.ndarray] = None
    first_integral: Optional[np.ndarray] = None
    axis_names: tuple = ("x", "y", "z")

    def __len__(self) -> int:
        return len(self.t)

    @property
    def dim(self) -> int:
        return self.x.shape[1]

    def validate(self):
        """Raise if the record violates its structural invariants."""
        if not np.all(np.diff(self.t) > 0):
            raise ValueError("coordinate time must be strictly increasing")
        if not np.all(np.diff(self.ttilde) > 0):
            raise ValueError("proper time must be strictly increasing")

    def columns(self) -> list:
        """(header, values) pairs in CSV order, headers carrying units."""
        cols = [
            (f"t ({_TRAJECTORY_UNITS['t']})", self.t),
            (f"ttilde ({_TRAJECTORY_UNITS['ttilde']})", self.ttilde),
        ]
        for j in range(self.dim):
            cols.append((f"{self.axis_names[j]} ({_TRAJECTORY_UNITS['x']})", self.x[:, j]))
        for j in range(self.dim):
            cols.append((f"v{self.axis_names[j]} ({_TRAJECTORY_UNITS['v']})", self.v[:, j]))
        cols.append((f"Gamma ({_TRAJECTORY_UNITS['Gamma']})", self.gamma_big))
        cols.append((f"energy ({_TRAJECTORY_UNITS['energy']})", self.energy))
        if self.p_phi is not None:
            cols.append((f"p_phi ({_TRAJECTORY_UNITS['p_phi']})", self.p_phi))
        cols.append((f"K2 ({_TRAJECTORY_UNITS['K2']})", self.k2))
        if self.first_integral is not None:
            cols.append((f"I ({_TRAJECTORY_UNITS['I']})", self.first_integral))
        return cols

    def to_csv(self, path):
        """Write the record with a units header at round-trip-safe precision."""
        cols = self.columns()
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow([name for name, _ in cols])
            arrays = [vals for _, vals in cols]
            for i in range(len(self)):
                writer.writerow([f"{a[i]:.17g}" for a in arrays])


def check_gradient(pot: ScalarPotential, points, rtol: float = 1e-6) -> float:
    """Max relative mismatch between pot.grad and centered differences of pot.eval.

    Raises ValueError when the mismatch exceeds rtol; returns the worst
    relative error otherwise.
    """
    worst = 0.0
    for x in points:
        x = _as_position(x)
        g = pot.gradient(x)
        fd = np.empty_like(g)
        for i in range(x.size):
            h = 1e-6 * max(1.0, abs(x[i]))
            xp, xm = x.copy(), x.copy()
            xp[i] += h
            xm[i] -= h
            fd[i] = (pot.eval(xp) - pot.eval(xm)) / (2 * h)
        scale = max(float(np.max(np.abs(g))), float(np.max(np.abs(fd))), 1e-300)
        worst = max(worst, float(np.max(np.abs(g - fd))) / scale)
    if worst > rtol:
        raise ValueError(
            f"gradient of {pot.label} disagrees with finite differences: "
            f"relative error {worst:g} > {rtol:g}"
        )
    return worst
