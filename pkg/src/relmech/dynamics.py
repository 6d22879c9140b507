"""Equations of motion in every regime, conserved quantities, and the
metric-reconstruction algorithm.

Every flow is exposed as an explicit first-order system:

======================  =====  ==========================  ==================
form                    indep  state layout                acceleration
======================  =====  ==========================  ==================
relativistic coord.     t      [ttilde, x, v]              solved from
                                                           d/dt(m Gamma v) = -Gamma grad U
relativistic proper     tt     [t, x, vt]  (vt = dx/dtt)   -Gamma^2 grad U / m
covariant               tt     [t, x, vt]                  (K^2 c^2/2) grad(1/g00)
semi-relativistic       t      [ttilde, x, v]              solved from
                                                           d/dt(m gamma v) = -gamma grad U
semi-rel. low velocity  tt     [t, x, vt]                  -grad U / m
classical               t      [ttilde, x, v]              -grad U / m
Hamiltonian (exact)     t      [ttilde, x, p]              canonical flow of
                                                           sqrt(g00) sqrt(p^2 c^2 + m^2 c^4)
Hamiltonian (weak)      t      [ttilde, x, p]              canonical flow of
                                                           sqrt(p^2 c^2 + m^2 c^4) + U
======================  =====  ==========================  ==================

Proper-time forms integrate in the particle's own time and recover
coordinate time through dt/dttilde; coordinate-time forms carry proper time
alongside, so every run yields both clocks.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np
from scipy.integrate import quad

from .core import (
    ADMISSIBILITY_MARGIN,
    Constants,
    HorizonError,
    ParticleState,
    RelmechError,
    ScalarPotential,
    SpeedLimitError,
    StaticMetric,
    TrajectoryRecord,
)
from .integrate import IntegrationReport, IntegratorSpec, integrate
from .kinematics import big_gamma, gamma


class NotAPotentialError(RelmechError):
    """The supplied acceleration field is not conservative on the probe domain."""


class EomForm(str, enum.Enum):
    """Equation-of-motion variants, selectable by name in run configs."""

    RELATIVISTIC_COORD_TIME = "relativistic_coord_time"
    RELATIVISTIC_PROPER_TIME = "relativistic_proper_time"
    COVARIANT = "covariant"
    SEMI_RELATIVISTIC = "semi_relativistic"
    SEMI_RELATIVISTIC_LOW_V = "semi_relativistic_low_v"
    CLASSICAL = "classical"
    HAMILTONIAN_EXACT = "hamiltonian_exact"
    HAMILTONIAN_WEAK = "hamiltonian_weak"


_PROPER_TIME_FORMS = frozenset({
    EomForm.RELATIVISTIC_PROPER_TIME,
    EomForm.COVARIANT,
    EomForm.SEMI_RELATIVISTIC_LOW_V,
})
_HAMILTONIAN_FORMS = frozenset({EomForm.HAMILTONIAN_EXACT, EomForm.HAMILTONIAN_WEAK})

# Integration guards trip one decade before point evaluations start raising,
# so a decaying trajectory terminates cleanly instead of stalling against
# rejected stages.
GUARD_MARGIN = 10.0 * ADMISSIBILITY_MARGIN


# ---------------------------------------------------------------------------
# accelerations on raw arrays (shared by the point API and the flows)
# ---------------------------------------------------------------------------

def _g00_and_gradU(x, metric: StaticMetric):
    con = metric.constants
    u = metric.potential.eval(x)
    grad_u = metric.potential.gradient(x)
    return 1.0 + 2.0 * u / con.mc2, grad_u


def _admissibility(x, v, metric: StaticMetric):
    con = metric.constants
    g00, grad_u = _g00_and_gradU(x, metric)
    q = g00 - float(np.dot(v, v)) / con.c**2
    if q <= ADMISSIBILITY_MARGIN:
        raise SpeedLimitError(
            f"state x={x}, v={v} exceeds the local speed limit "
            f"(g00 - beta^2 = {q:g})"
        )
    return g00, grad_u, q


def _accel_relativistic_coord(x, v, metric: StaticMetric):
    """dv/dt solved from d/dt(m Gamma v) = -Gamma grad U.

    Expanding Gamma-dot and inverting (I + Gamma^2 v v^T / c^2) via
    Sherman-Morrison gives a = b - (v.b) v / (c^2 g00) with
    b = -grad U/m + Gamma^2 (grad U . v) v / (m c^2).
    """
    con = metric.constants
    g00, grad_u, q = _admissibility(x, v, metric)
    c2 = con.c**2
    gamma2 = 1.0 / q
    gu_v = float(np.dot(grad_u, v))
    b = -grad_u / con.m + (gamma2 * gu_v / (con.m * c2)) * v
    return b - (float(np.dot(v, b)) / (c2 * g00)) * v


def _accel_relativistic_proper(x, v, metric: StaticMetric):
    """d^2x/dttilde^2 = -Gamma^2 grad U / m."""
    con = metric.constants
    _, grad_u, q = _admissibility(x, v, metric)
    return -(1.0 / q) * grad_u / con.m


def _accel_covariant(x, v, metric: StaticMetric):
    """(K^2 c^2 / 2) grad(1/g00) with K = Gamma g00 from the current state.

    Analytically identical to the proper-time form; kept as a separate
    algebraic route so their agreement can be verified.
    """
    con = metric.constants
    g00, grad_u, q = _admissibility(x, v, metric)
    k2 = g00**2 / q
    grad_g00 = (2.0 / con.mc2) * grad_u
    return -(k2 * con.c**2 / 2.0) * grad_g00 / g00**2


def _accel_semi_relativistic(x, v, metric: StaticMetric):
    """dv/dt solved from d/dt(m gamma v) = -gamma grad U."""
    con = metric.constants
    c2 = con.c**2
    if float(np.dot(v, v)) >= c2:
        raise SpeedLimitError(f"|v| >= c at x={x}")
    grad_u = metric.potential.gradient(x)
    b = -grad_u / con.m
    return b - (float(np.dot(v, b)) / c2) * v


def _accel_classical(x, v, metric: StaticMetric):
    return -metric.potential.gradient(x) / metric.constants.m


def eom_rhs(form: EomForm, state: ParticleState, metric: StaticMetric):
    """(dx, dv) of the chosen form at a coordinate-time phase point.

    Proper-time forms differentiate with respect to ttilde (so dx is the
    proper velocity Gamma v); coordinate-time forms with respect to t. For
    the Hamiltonian forms use :func:`hamiltonian_rhs`, which works in
    (x, p) variables.
    """
    form = EomForm(form)
    x, v = state.x, state.v
    if form is EomForm.RELATIVISTIC_COORD_TIME:
        return v.copy(), _accel_relativistic_coord(x, v, metric)
    if form is EomForm.RELATIVISTIC_PROPER_TIME:
        G = big_gamma(state, metric)
        return G * v, _accel_relativistic_proper(x, v, metric)
    if form is EomForm.COVARIANT:
        G = big_gamma(state, metric)
        return G * v, _accel_covariant(x, v, metric)
    if form is EomForm.SEMI_RELATIVISTIC:
        return v.copy(), _accel_semi_relativistic(x, v, metric)
    if form is EomForm.SEMI_RELATIVISTIC_LOW_V:
        g = gamma(v, metric.constants.c)
        return g * v, _accel_classical(x, v, metric)
    if form is EomForm.CLASSICAL:
        return v.copy(), _accel_classical(x, v, metric)
    raise ValueError(f"{form.value} is momentum-based; use hamiltonian_rhs")


def hamiltonian_rhs(form: EomForm, x, p, metric: StaticMetric):
    """Canonical (dx/dt, dp/dt) for the exact or weak-potential Hamiltonian."""
    form = EomForm(form)
    con = metric.constants
    x = np.atleast_1d(np.asarray(x, dtype=float))
    p = np.atleast_1d(np.asarray(p, dtype=float))
    p2 = float(np.dot(p, p))
    if form is EomForm.HAMILTONIAN_EXACT:
        g00, grad_u = _g00_and_gradU(x, metric)
        if g00 <= 0:
            raise HorizonError(f"g00({x}) = {g00:g} <= 0")
        root = math.sqrt(g00)
        dx = root * con.c * p / math.sqrt(p2 + (con.m * con.c) ** 2)
        dp = -(grad_u / root) * math.sqrt(p2 / (con.m * con.c) ** 2 + 1.0)
        return dx, dp
    if form is EomForm.HAMILTONIAN_WEAK:
        dx = con.c * p / math.sqrt(p2 + (con.m * con.c) ** 2)
        dp = -metric.potential.gradient(x)
        return dx, dp
    raise ValueError(f"{form.value} is velocity-based; use eom_rhs")


# ---------------------------------------------------------------------------
# conserved quantities and the deformed Euler-Lagrange residual
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConservedSet:
    """Quantities that are constant along their respective exact flows.

    ``h_semi`` uses the gamma-based proper velocity (it belongs to the
    semi-relativistic low-velocity flow); the others belong to the full
    relativistic flows. States faster than c (allowed in curved space where
    the local limit is c sqrt(g00)) have no semi-relativistic H, so it is
    None there.
    """

    energy: float           # m c^2 g00 Gamma
    k2: float               # (Gamma g00)^2
    p_phi: Optional[float]  # m Gamma r^2 phidot, planar; None in 1D
    h_semi: Optional[float]  # m |gamma v|^2 / 2 + U


def angular_momentum(x, v, factor: float, m: float) -> float:
    """m * factor * (r^2 phidot) in Cartesian components (planar z-component)."""
    if x.size == 2:
        cross = x[0] * v[1] - x[1] * v[0]
    else:
        cross = float(np.linalg.norm(np.cross(x, v)))
    return m * factor * cross


def conserved(state: ParticleState, metric: StaticMetric) -> ConservedSet:
    con = metric.constants
    G = big_gamma(state, metric)
    g00 = metric.g00(state.x)
    u = metric.potential.eval(state.x)
    speed = state.speed()
    h_semi = None
    if speed < con.c:
        g = gamma(state.v, con.c)
        h_semi = 0.5 * con.m * (g * speed) ** 2 + u
    p_phi = None
    if state.dim >= 2:
        p_phi = angular_momentum(state.x, state.v, G, con.m)
    return ConservedSet(
        energy=con.mc2 * g00 * G,
        k2=(G * g00) ** 2,
        p_phi=p_phi,
        h_semi=h_semi,
    )


def deformed_el_residual(state: ParticleState, accel, metric: StaticMetric):
    """Residual of the relativistically deformed Euler-Lagrange equation.

    For the classical Lagrangian L the deformed equation reads

        d/dt(dL/dv) - dL/dx = (Gamma^2 / L0) (dL/dv) (dL/dt),   L0 = -m c^2,

    and the residual (LHS minus RHS, one component per axis) vanishes
    exactly on trajectories of the relativistic flow. ``accel`` is the
    candidate dv/dt at the state.
    """
    con = metric.constants
    accel = np.atleast_1d(np.asarray(accel, dtype=float))
    x, v = state.x, state.v
    _, grad_u, q = _admissibility(x, v, metric)
    gamma2 = 1.0 / q
    dl_dt = con.m * float(np.dot(v, accel)) - float(np.dot(grad_u, v))
    return con.m * accel + grad_u + (gamma2 / con.c**2) * dl_dt * v


# ---------------------------------------------------------------------------
# flows: first-order systems ready for the integrator
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Flow:
    """A form bound to a metric: RHS, state packing, and admissibility guard."""

    form: EomForm
    metric: StaticMetric
    rhs: Callable[[float, np.ndarray], np.ndarray]
    guard: Callable[[float, np.ndarray], bool]
    independent: str                 # "t" or "ttilde"

    def pack(self, state: ParticleState) -> tuple[float, np.ndarray]:
        """Initial (independent variable, state vector), with ttilde = 0."""
        con = self.metric.constants
        x, v = state.x, state.v
        if self.form in _HAMILTONIAN_FORMS:
            factor = (big_gamma(state, self.metric)
                      if self.form is EomForm.HAMILTONIAN_EXACT
                      else gamma(v, con.c))
            return state.t, np.concatenate(([0.0], x, con.m * factor * v))
        if self.form in _PROPER_TIME_FORMS:
            factor = (gamma(v, con.c)
                      if self.form is EomForm.SEMI_RELATIVISTIC_LOW_V
                      else big_gamma(state, self.metric))
            return 0.0, np.concatenate(([state.t], x, factor * v))
        return state.t, np.concatenate(([0.0], x, v))

    def unpack(self, s: float, y: np.ndarray):
        """(ParticleState, ttilde) from an integrated sample."""
        con = self.metric.constants
        dim = (y.size - 1) // 2
        x = y[1:1 + dim]
        tail = y[1 + dim:]
        if self.form in _HAMILTONIAN_FORMS:
            p2 = float(np.dot(tail, tail))
            root = math.sqrt(p2 + (con.m * con.c) ** 2)
            v = con.c * tail / root
            if self.form is EomForm.HAMILTONIAN_EXACT:
                v = v * math.sqrt(self.metric.g00(x))
            return ParticleState(t=s, x=x, v=v), y[0]
        if self.form in _PROPER_TIME_FORMS:
            vt2 = float(np.dot(tail, tail)) / con.c**2
            if self.form is EomForm.SEMI_RELATIVISTIC_LOW_V:
                factor = math.sqrt(1.0 + vt2)
            else:
                g00 = self.metric.g00(x)
                if g00 <= 0:
                    raise HorizonError(f"g00({x}) = {g00:g} <= 0")
                factor = math.sqrt((1.0 + vt2) / g00)
            return ParticleState(t=y[0], x=x, v=tail / factor), s
        return ParticleState(t=s, x=x, v=tail), y[0]


def _coord_flow_rhs(accel_fn, metric, proper_rate):
    dim = metric.dim

    def rhs(t, y):
        x, v = y[1:1 + dim], y[1 + dim:]
        out = np.empty_like(y)
        out[0] = proper_rate(x, v)
        out[1:1 + dim] = v
        out[1 + dim:] = accel_fn(x, v, metric)
        return out

    return rhs


def build_flow(form: EomForm, metric: StaticMetric,
               guard_margin: float = GUARD_MARGIN) -> Flow:
    """Bind a form to a metric as an integrable first-order system.

    ``guard_margin`` is the admissibility floor of the flow's guard; the
    default sits at the numerical-singularity scale, and a larger value
    terminates runs earlier on their approach to the local speed limit.
    """
    form = EomForm(form)
    con = metric.constants
    dim = metric.dim
    c2 = con.c**2

    def coord_guard(t, y):
        x, v = y[1:1 + dim], y[1 + dim:]
        return metric.admissibility(x, v) > guard_margin

    def subluminal_guard(t, y):
        v = y[1 + dim:]
        return float(np.dot(v, v)) < c2

    def g00_guard(t, y):
        x = y[1:1 + dim]
        return metric.g00(x) > guard_margin

    def no_guard(t, y):
        return True

    if form is EomForm.RELATIVISTIC_COORD_TIME:
        def proper_rate(x, v):
            _, _, q = _admissibility(x, v, metric)
            return math.sqrt(q)
        return Flow(form, metric, _coord_flow_rhs(_accel_relativistic_coord, metric, proper_rate),
                    coord_guard, "t")

    if form is EomForm.SEMI_RELATIVISTIC:
        def proper_rate(x, v):
            return 1.0 / gamma(v, con.c)
        return Flow(form, metric, _coord_flow_rhs(_accel_semi_relativistic, metric, proper_rate),
                    subluminal_guard, "t")

    if form is EomForm.CLASSICAL:
        def proper_rate(x, v):
            return 1.0
        return Flow(form, metric, _coord_flow_rhs(_accel_classical, metric, proper_rate),
                    no_guard, "t")

    if form in (EomForm.RELATIVISTIC_PROPER_TIME, EomForm.COVARIANT):
        def rhs(tt, y):
            x, vt = y[1:1 + dim], y[1 + dim:]
            g00, grad_u = _g00_and_gradU(x, metric)
            if g00 <= ADMISSIBILITY_MARGIN:
                raise HorizonError(f"g00({x}) = {g00:g} at the horizon")
            gamma2 = (1.0 + float(np.dot(vt, vt)) / c2) / g00
            out = np.empty_like(y)
            out[0] = math.sqrt(gamma2)          # dt/dttilde
            out[1:1 + dim] = vt
            if form is EomForm.COVARIANT:
                k2 = gamma2 * g00**2
                out[1 + dim:] = -(k2 * c2 / 2.0) * ((2.0 / con.mc2) * grad_u) / g00**2
            else:
                out[1 + dim:] = -gamma2 * grad_u / con.m
            return out
        return Flow(form, metric, rhs, g00_guard, "ttilde")

    if form is EomForm.SEMI_RELATIVISTIC_LOW_V:
        def rhs(tt, y):
            x, vt = y[1:1 + dim], y[1 + dim:]
            out = np.empty_like(y)
            out[0] = math.sqrt(1.0 + float(np.dot(vt, vt)) / c2)  # dt/dttilde
            out[1:1 + dim] = vt
            out[1 + dim:] = -metric.potential.gradient(x) / con.m
            return out
        return Flow(form, metric, rhs, no_guard, "ttilde")

    if form in _HAMILTONIAN_FORMS:
        def rhs(t, y):
            x, p = y[1:1 + dim], y[1 + dim:]
            dx, dp = hamiltonian_rhs(form, x, p, metric)
            out = np.empty_like(y)
            p2 = float(np.dot(p, p))
            factor = math.sqrt(p2 / (con.m * con.c) ** 2 + 1.0)
            if form is EomForm.HAMILTONIAN_EXACT:
                factor = factor / math.sqrt(metric.g00(x))
            out[0] = 1.0 / factor               # dttilde/dt
            out[1:1 + dim] = dx
            out[1 + dim:] = dp
            return out
        guard = g00_guard if form is EomForm.HAMILTONIAN_EXACT else no_guard
        return Flow(form, metric, rhs, guard, "t")

    raise ValueError(f"unhandled form {form!r}")


def propagate(metric: StaticMetric, form: EomForm, state0: ParticleState,
              span: float, spec: IntegratorSpec, n_samples: int = 201,
              t_eval=None, with_monitors: bool = True,
              guard_margin: float = GUARD_MARGIN):
    """Integrate a form from an initial coordinate-time state.

    ``span`` is the length of the integration interval in the form's own
    independent variable (coordinate or proper time). Returns the
    trajectory record and the integration report (drift of energy, K^2 and,
    in 2D+, angular momentum when monitoring is on).
    """
    flow = build_flow(form, metric, guard_margin=guard_margin)
    s0, y0 = flow.pack(state0)
    if t_eval is None:
        t_eval = np.linspace(s0, s0 + span, n_samples)

    monitors = None
    if with_monitors:
        def _monitor(extract):
            def fn(s, y):
                try:
                    st, _ = flow.unpack(s, y)
                    return extract(conserved(st, metric))
                except RelmechError:
                    return None
            return fn
        monitors = {
            "energy": _monitor(lambda cs: cs.energy),
            "K2": _monitor(lambda cs: cs.k2),
        }
        if metric.dim >= 2:
            monitors["p_phi"] = _monitor(lambda cs: cs.p_phi)

    run_spec = spec if spec.guard is not None else replace(spec, guard=flow.guard)
    report = integrate(flow.rhs, y0, (s0, s0 + span), run_spec,
                       t_eval=t_eval, monitors=monitors)
    return trajectory_from_report(flow, report), report


def trajectory_from_report(flow: Flow, report: IntegrationReport) -> TrajectoryRecord:
    """Unpack integrator output into a trajectory record with derived columns."""
    metric = flow.metric
    n = len(report.t)
    dim = metric.dim
    t = np.empty(n)
    ttilde = np.empty(n)
    xs = np.empty((n, dim))
    vs = np.empty((n, dim))
    gammas = np.empty(n)
    energies = np.empty(n)
    k2s = np.empty(n)
    p_phis = np.empty(n) if dim >= 2 else None
    for i in range(n):
        state, tt = flow.unpack(report.t[i], report.y[i])
        t[i] = state.t
        ttilde[i] = tt
        xs[i] = state.x
        vs[i] = state.v
        try:
            cs = conserved(state, metric)
            gammas[i] = big_gamma(state, metric)
            energies[i] = cs.energy
            k2s[i] = cs.k2
            if p_phis is not None:
                p_phis[i] = cs.p_phi
        except RelmechError:
            # semi-relativistic flows may visit states where the full
            # relativistic factors are undefined; keep the kinematic columns
            gammas[i] = energies[i] = k2s[i] = math.nan
            if p_phis is not None:
                p_phis[i] = math.nan
    return TrajectoryRecord(t=t, ttilde=ttilde, x=xs, v=vs, gamma_big=gammas,
                            energy=energies, k2=k2s, p_phi=p_phis)


# ---------------------------------------------------------------------------
# metric reconstruction from an equation of motion
# ---------------------------------------------------------------------------

_QUAD_RTOL = 1e-10
_PATH_TOL = 1e-8


def _line_integral(accel, start, end, rtol):
    """Integral of a . dl along the straight segment start -> end."""
    start = np.asarray(start, dtype=float)
    end = np.asarray(end, dtype=float)
    delta = end - start

    def integrand(s):
        return float(np.dot(accel(start + s * delta), delta))

    value, _ = quad(integrand, 0.0, 1.0, epsabs=1e-14, epsrel=rtol, limit=200)
    return value


def _dogleg_integral(accel, start, end, rtol):
    """Same integral along the axis-aligned staircase path."""
    start = np.asarray(start, dtype=float)
    end = np.asarray(end, dtype=float)
    total = 0.0
    current = start.copy()
    for axis in range(start.size):
        nxt = current.copy()
        nxt[axis] = end[axis]
        if nxt[axis] != current[axis]:
            lo, hi = current[axis], nxt[axis]
            frozen = current.copy()

            def integrand(s, axis=axis, frozen=frozen):
                point = frozen.copy()
                point[axis] = s
                return float(accel(point)[axis])

            value, _ = quad(integrand, lo, hi, epsabs=1e-14, epsrel=rtol, limit=200)
            total += value
        current = nxt
    return total


def derive_metric_from_eom(accel, constants: Constants, reference=0.0,
                           dim: int = 1, domain=None,
                           quad_rtol: float = _QUAD_RTOL,
                           path_tol: float = _PATH_TOL) -> StaticMetric:
    """Reconstruct the static metric whose classical dynamics match ``accel``.

    Three steps: treat ``accel`` as the non-relativistic acceleration field,
    recover U(x) = -m * integral of a . dl from the reference point (where U
    is pinned to zero, matching asymptotic flatness when the reference is at
    infinity), and wrap g00 = 1 + 2U/(m c^2) into a metric.

    For dim 1 ``accel`` maps a scalar coordinate to a scalar acceleration
    and the reference may be +/-inf (improper quadrature handles the Kepler
    tail). For dim >= 2 ``accel`` maps a position vector to an acceleration
    vector; conservativeness is verified on ``domain`` (a (lo, hi) box) by
    comparing straight-segment and axis-staircase line integrals.
    """
    m = constants.m

    if dim == 1:
        ref = float(reference)

        def potential_value(x):
            x0 = float(x[0]) if np.ndim(x) else float(x)
            value, _ = quad(accel, ref, x0, epsabs=1e-14, epsrel=quad_rtol, limit=200)
            return -m * value

        pot = ScalarPotential(
            eval=lambda x: potential_value(x),
            grad=lambda x: -m * np.atleast_1d(accel(float(x[0]))),
            label="reconstructed-1d",
        )
        return StaticMetric(potential=pot, constants=constants, dim=1)

    reference = np.asarray(reference, dtype=float)
    if not np.all(np.isfinite(reference)):
        raise ValueError("only 1D reconstructions support a reference at infinity")
    if domain is None:
        raise ValueError("dim >= 2 reconstruction needs a probe domain (lo, hi)")

    lo, hi = float(domain[0]), float(domain[1])
    grid = np.linspace(lo, hi, 3)
    probes = [np.full(dim, g) for g in grid]
    probes += [np.array([grid[0], grid[-1]] + [grid[1]] * (dim - 2))]
    for point in probes:
        straight = _line_integral(accel, reference, point, quad_rtol)
        dogleg = _dogleg_integral(accel, reference, point, quad_rtol)
        scale = max(abs(straight), abs(dogleg), 1.0)
        if abs(straight - dogleg) > path_tol * scale:
            raise NotAPotentialError(
                f"path-dependent work at {point}: straight {straight:.3e} "
                f"vs staircase {dogleg:.3e}"
            )

    def potential_value(x):
        return -m * _line_integral(accel, reference, np.atleast_1d(x), quad_rtol)

    pot = ScalarPotential(
        eval=potential_value,
        grad=lambda x: -m * np.asarray(accel(np.atleast_1d(x)), dtype=float),
        label="reconstructed",
    )
    return StaticMetric(potential=pot, constants=constants, dim=dim)
