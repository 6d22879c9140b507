"""Scalar factors, Lagrangians in every regime, momenta/energy, speed limit.

The central object is the curved-space reparameterization factor

    Gamma = dt/dttilde = 1 / sqrt(g00(x) - |v|^2/c^2)

which reduces to the special-relativistic gamma when U = 0. It is computed
from g00 - beta^2 directly (not through the classical Lagrangian) to avoid
cancellation when the kinetic and potential terms nearly cancel.
"""

from __future__ import annotations

import enum
import math

import numpy as np

from .core import (
    ADMISSIBILITY_MARGIN,
    ParticleState,
    ScalarPotential,
    SpeedLimitError,
    HorizonError,
    StaticMetric,
)


class LagrangianRegime(str, enum.Enum):
    """Dynamical regimes, selectable by name in run configs."""

    RELATIVISTIC = "relativistic"              # -mc^2 sqrt(g00 - beta^2)
    EFFECTIVE = "effective"                    # m/2 (|v|^2 - c^2 g00)
    SEMI_RELATIVISTIC = "semi_relativistic"    # -mc^2/gamma - U
    SEMI_RELATIVISTIC_FULL = "semi_relativistic_full"  # -mc^2/gamma - U*gamma
    CLASSICAL = "classical"                    # m|v|^2/2 - U


def gamma(v, c: float) -> float:
    """Special-relativistic factor 1/sqrt(1 - |v|^2/c^2).

    ``v`` may be a velocity vector or a scalar speed.
    """
    speed2 = float(np.dot(v, v)) if np.ndim(v) else float(v) ** 2
    beta2 = speed2 / c**2
    if beta2 >= 1.0:
        raise SpeedLimitError(f"|v| = {math.sqrt(speed2):g} >= c = {c:g}")
    return 1.0 / math.sqrt(1.0 - beta2)


def classical_lagrangian(state: ParticleState, pot: ScalarPotential, m: float) -> float:
    """L = m|v|^2/2 - U(x)."""
    return 0.5 * m * float(np.dot(state.v, state.v)) - pot.eval(state.x)


def admissibility_or_raise(state: ParticleState, metric: StaticMetric) -> float:
    """g00 - beta^2, raising SpeedLimitError for inadmissible states."""
    q = metric.admissibility(state.x, state.v)
    if q <= ADMISSIBILITY_MARGIN:
        raise SpeedLimitError(
            f"state x={state.x}, v={state.v} exceeds the local speed limit: "
            f"g00 - |v|^2/c^2 = {q:g} <= {ADMISSIBILITY_MARGIN:g}"
        )
    return q


def big_gamma(state: ParticleState, metric: StaticMetric) -> float:
    """Reparameterization factor dt/dttilde = 1/sqrt(g00 - beta^2).

    Equals 1/sqrt(1 - 2L/(mc^2)) analytically and reduces to gamma when
    U = 0; raises SpeedLimitError for inadmissible states.
    """
    return 1.0 / math.sqrt(admissibility_or_raise(state, metric))


def relativistic_lagrangian(state: ParticleState, metric: StaticMetric,
                            regime: LagrangianRegime = LagrangianRegime.RELATIVISTIC) -> float:
    """Evaluate the Lagrangian of the requested regime at a phase point."""
    regime = LagrangianRegime(regime)
    con = metric.constants
    m, c = con.m, con.c
    if regime is LagrangianRegime.RELATIVISTIC:
        # L0 sqrt(1 + 2L/L0) with L0 = -mc^2, computed through g00 - beta^2
        q = admissibility_or_raise(state, metric)
        return -con.mc2 * math.sqrt(q)
    if regime is LagrangianRegime.EFFECTIVE:
        v2 = float(np.dot(state.v, state.v))
        return 0.5 * m * (v2 - c**2 * metric.g00(state.x))
    if regime is LagrangianRegime.SEMI_RELATIVISTIC:
        g = gamma(state.v, c)
        return -con.mc2 / g - metric.potential.eval(state.x)
    if regime is LagrangianRegime.SEMI_RELATIVISTIC_FULL:
        g = gamma(state.v, c)
        return -con.mc2 / g - metric.potential.eval(state.x) * g
    if regime is LagrangianRegime.CLASSICAL:
        return classical_lagrangian(state, metric.potential, m)
    raise ValueError(f"unhandled regime {regime!r}")


def momenta_energy(state: ParticleState, metric: StaticMetric):
    """Relativistic momenta and energy: p = m Gamma v, E = m c^2 g00 Gamma.

    The pair satisfies E^2 = g00 (|p|^2 c^2 + m^2 c^4) identically.
    """
    con = metric.constants
    G = big_gamma(state, metric)
    p = con.m * G * state.v
    energy = con.mc2 * metric.g00(state.x) * G
    return p, energy


def speed_limit(metric: StaticMetric, x) -> float:
    """Local upper speed c sqrt(g00(x)); raises HorizonError when g00 < 0."""
    g00 = metric.g00(x)
    if g00 < 0:
        raise HorizonError(f"g00({x}) = {g00:g} < 0: inside the horizon")
    return metric.constants.c * math.sqrt(g00)
