"""Relativistic Lienard oscillator: gamma^3 xddot + gamma f(x) xdot + g(x) = 0.

For damping/force pairs satisfying the classical Chiellini condition
d/dx(g/f) = -alpha(1+alpha) f the system has a first integral

    I = e^Omega [ (gamma xdot)^2 - (g/f)(gamma xdot + g/f) / (alpha(1+alpha)) ],
    Omega = integral of gamma f dtau over proper time,

and a reconstructed spacetime description: an undamped potential
U = -m (g/f)^2 / (2 alpha (1+alpha)) and a damped line element
e^Omega [c^2 g00 dt^2 - dx^2].

The relativistic variant of the Chiellini condition mixes a position-only
left side with a velocity-dependent gamma; alpha is therefore calibrated in
the classical limit and the relativistic drift of I is measured and
reported rather than asserted.

Integration runs in proper time with the auxiliary velocity x' = gamma
xdot, for which gamma = sqrt(1 + (x'/c)^2) is smooth and the flow is simply
x'' = -gamma (f x' + g).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .core import Constants, RelmechError, ScalarPotential, SpeedLimitError, StaticMetric
from .integrate import IntegratorSpec, integrate


class NoRealAlphaError(RelmechError):
    """The Chiellini quadratic alpha(1+alpha) = -1/kappa^2 has no real root."""


class DegenerateParameterError(RelmechError):
    """alpha(1+alpha) = 0: the first integral and metric are undefined."""


class IntegratingFactorError(RelmechError):
    """f(x) vanishes along the trajectory, breaking Omega = int gamma f dtau."""


@dataclass(frozen=True)
class LienardSystem:
    """Damped 1D system (f, g, alpha, c, m) with Chiellini bookkeeping.

    ``dgf`` is d/dx(g/f); when omitted it falls back to central differences
    (only the Chiellini consistency check uses it).
    """

    f: Callable[[float], float]
    g: Callable[[float], float]
    alpha: float
    c: float
    m: float = 1.0
    dgf: Optional[Callable[[float], float]] = None
    label: str = "lienard"

    @property
    def alpha_product(self) -> float:
        return self.alpha * (1.0 + self.alpha)

    def gf(self, x: float) -> float:
        fx = self.f(x)
        if fx == 0.0:
            raise IntegratingFactorError(f"f({x:g}) = 0")
        return self.g(x) / fx

    def dgf_dx(self, x: float) -> float:
        if self.dgf is not None:
            return self.dgf(x)
        h = 1e-6 * max(1.0, abs(x))
        return (self.gf(x + h) - self.gf(x - h)) / (2 * h)

    def gamma_of_xdot(self, xdot: float) -> float:
        beta2 = (xdot / self.c) ** 2
        if beta2 >= 1.0:
            raise SpeedLimitError(f"|xdot| = {abs(xdot):g} >= c = {self.c:g}")
        return 1.0 / math.sqrt(1.0 - beta2)

    def check_chiellini(self, domain, n: int = 64, tol: float = 1e-9) -> float:
        """Verify d/dx(g/f) = -alpha(1+alpha) f on the probe interval.

        Returns the worst relative mismatch; raises when it exceeds tol.
        """
        xs = np.linspace(domain[0], domain[1], n)
        worst = 0.0
        for x in xs:
            lhs = self.dgf_dx(float(x))
            rhs = -self.alpha_product * self.f(float(x))
            scale = max(abs(lhs), abs(rhs), 1.0)
            worst = max(worst, abs(lhs - rhs) / scale)
        if worst > tol:
            raise ValueError(
                f"{self.label} violates the classical Chiellini condition: "
                f"relative mismatch {worst:g} > {tol:g}"
            )
        return worst


def damped_oscillator(kappa: float, c: float, m: float = 1.0,
                      alpha: Optional[float] = None) -> LienardSystem:
    """The constant-damping linear system f = kappa, g(x) = x.

    alpha defaults to the first real Chiellini root for this kappa.
    """
    if alpha is None:
        alpha = chiellini_alpha(kappa)[0]
    return LienardSystem(
        f=lambda x: kappa,
        g=lambda x: x,
        alpha=alpha,
        c=c,
        m=m,
        dgf=lambda x: 1.0 / kappa,
        label=f"damped-oscillator(kappa={kappa:g})",
    )


def lienard_rhs(system: LienardSystem, x: float, xdot: float) -> float:
    """Coordinate-time acceleration xddot = -(gamma f xdot + g) / gamma^3."""
    g = system.gamma_of_xdot(xdot)
    return -(g * system.f(x) * xdot + system.g(x)) / g**3


def chiellini_alpha(kappa: float):
    """Real solutions of alpha(1+alpha) = -1/kappa^2 for f = kappa, g = x.

    Returns a tuple of one (double root at kappa^2 = 4) or two roots,
    larger root first; kappa^2 < 4 has none and raises.
    """
    if kappa == 0:
        raise ValueError("kappa must be nonzero")
    disc = 1.0 - 4.0 / kappa**2
    if disc < 0:
        raise NoRealAlphaError(
            f"kappa = {kappa:g} gives discriminant {disc:g} < 0: no real alpha"
        )
    if disc == 0.0:
        return (-0.5,)
    root = math.sqrt(disc)
    return ((-1.0 + root) / 2.0, (-1.0 - root) / 2.0)


def first_integral(system: LienardSystem, ttilde, x, xdot):
    """I(ttilde) and Omega(ttilde) along sampled trajectory points.

    Omega accumulates by trapezoidal quadrature of gamma f(x) over proper
    time with Omega(0) = 0; I follows the conserved-quantity expression.
    """
    ttilde = np.asarray(ttilde, dtype=float)
    x = np.asarray(x, dtype=float)
    xdot = np.asarray(xdot, dtype=float)
    aa = system.alpha_product
    if aa == 0.0:
        raise DegenerateParameterError("alpha(1+alpha) = 0")

    f_vals = np.array([system.f(float(xi)) for xi in x])
    if np.any(f_vals == 0.0) or np.any(np.sign(f_vals) != np.sign(f_vals[0])):
        raise IntegratingFactorError("f(x) crosses zero along the trajectory")

    gammas = np.array([system.gamma_of_xdot(float(v)) for v in xdot])
    integrand = gammas * f_vals
    omega = np.concatenate((
        [0.0],
        np.cumsum(0.5 * (integrand[1:] + integrand[:-1]) * np.diff(ttilde)),
    ))

    gf_vals = np.array([system.gf(float(xi)) for xi in x])
    proper_v = gammas * xdot
    bracket = proper_v**2 - (gf_vals / aa) * (proper_v + gf_vals)
    return np.exp(omega) * bracket, omega


@dataclass(frozen=True)
class DampedMetric:
    """Spacetime description reconstructed from a Chiellini-integrable system.

    The undamped potential and g00 come from the 5-step reduction; the
    damped line element carries the accumulated drag factor e^Omega.
    """

    system: LienardSystem

    def potential(self, x: float) -> float:
        aa = self.system.alpha_product
        return -self.system.m / (2.0 * aa) * self.system.gf(x) ** 2

    def g00(self, x: float) -> float:
        aa = self.system.alpha_product
        return 1.0 - self.system.gf(x) ** 2 / (self.system.c**2 * aa)

    def line_element(self, dt: float, dx: float, x: float, omega: float) -> float:
        """ds_d^2 = e^Omega (c^2 g00(x) dt^2 - dx^2)."""
        return math.exp(omega) * ((self.system.c**2) * self.g00(x) * dt**2 - dx**2)

    def damped_effective_lagrangian(self, x: float, xdot: float, omega: float) -> float:
        """L_ed = (m/2) e^Omega (xdot^2 - c^2 g00(x))."""
        return 0.5 * self.system.m * math.exp(omega) * (
            xdot**2 - self.system.c**2 * self.g00(x))

    def ds_dt_squared(self, x: float, xdot: float, omega: float) -> float:
        """(ds_d/dt)^2, equal to -(2/m) L_ed."""
        return math.exp(omega) * (self.system.c**2 * self.g00(x) - xdot**2)

    def einstein_residual(self, x, omega) -> np.ndarray:
        """|e^(-2 Omega) - g00(x)| along a trajectory.

        Zero would mean the reconstructed damped metric also solves the
        Einstein-equation consistency relation; for generic systems it does
        not, so the mismatch is reported rather than asserted.
        """
        x = np.atleast_1d(np.asarray(x, dtype=float))
        omega = np.atleast_1d(np.asarray(omega, dtype=float))
        g = np.array([self.g00(float(xi)) for xi in x])
        return np.abs(np.exp(-2.0 * omega) - g)

    def as_static_metric(self) -> StaticMetric:
        """Undamped part as a StaticMetric (g00 = 1 + 2U/(m c^2) consistently)."""
        sys = self.system
        aa = sys.alpha_product

        def _eval(x):
            return -sys.m / (2.0 * aa) * sys.gf(float(x[0])) ** 2

        def _grad(x):
            x0 = float(x[0])
            return np.array([-sys.m / aa * sys.gf(x0) * sys.dgf_dx(x0)])

        pot = ScalarPotential(eval=_eval, grad=_grad, label=f"undamped({sys.label})")
        return StaticMetric(potential=pot, constants=Constants(c=sys.c, m=sys.m), dim=1)


def damped_metric(system: LienardSystem, check_domain=None) -> DampedMetric:
    """Reconstructed metric for a Chiellini-integrable damped system."""
    if system.alpha_product == 0.0:
        raise DegenerateParameterError(
            f"alpha = {system.alpha:g} makes alpha(1+alpha) = 0")
    if check_domain is not None:
        system.check_chiellini(check_domain)
    return DampedMetric(system=system)


@dataclass
class LienardTrajectory:
    """Proper-time samples of a damped run, with drag factor and first integral."""

    ttilde: np.ndarray
    t: np.ndarray
    x: np.ndarray
    xdot: np.ndarray        # coordinate velocity dx/dt
    xprime: np.ndarray      # proper velocity gamma xdot
    gamma: np.ndarray
    omega: np.ndarray
    first_integral: np.ndarray

    def __len__(self):
        return len(self.ttilde)


def run_lienard(system: LienardSystem, x0: float, v0: float, ttilde_span: float,
                spec: IntegratorSpec, n_samples: int = 2001) -> LienardTrajectory:
    """Integrate the damped system over proper time from (x0, xdot0).

    State layout [t, x, x'] with x' = gamma xdot; the flow is
    x'' = -gamma (f x' + g), dt/dttilde = gamma = sqrt(1 + (x'/c)^2).
    """
    c2 = system.c**2
    f, g = system.f, system.g

    def rhs(tt, y):
        xp = y[2]
        gam = math.sqrt(1.0 + xp * xp / c2)
        return np.array([gam, xp, -gam * (f(y[1]) * xp + g(y[1]))])

    gamma0 = system.gamma_of_xdot(v0)
    y0 = np.array([0.0, x0, gamma0 * v0])
    report = integrate(rhs, y0, (0.0, ttilde_span), spec,
                       t_eval=np.linspace(0.0, ttilde_span, n_samples))
    if not report.completed:
        raise RelmechError(f"Lienard run terminated early: {report.termination}")

    xprime = report.y[:, 2]
    gammas = np.sqrt(1.0 + xprime**2 / c2)
    xdot = xprime / gammas
    x = report.y[:, 1]
    i_vals, omega = first_integral(system, report.t, x, xdot)
    return LienardTrajectory(
        ttilde=report.t, t=report.y[:, 0], x=x, xdot=xdot, xprime=xprime,
        gamma=gammas, omega=omega, first_integral=i_vals,
    )
