"""Modified local Lorentz boosts, time dilation, length contraction, redshift.

In the presence of a potential the metric is invariant only under a boost
constructed *at* a point; the matrix therefore carries its anchor and any
attempt to use it elsewhere is rejected. The boost along the first spatial
axis with frame speed ratio beta is

    [ Gamma sqrt(g00)          -beta Gamma / sqrt(g00) ]
    [ -beta Gamma sqrt(g00)     Gamma sqrt(g00)        ]

with Gamma = 1/sqrt(g00 - beta^2); a 4x4 version pads with the identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import HorizonError, SpeedLimitError, StaticMetric


class SuperluminalFrameError(SpeedLimitError):
    """Frame speed ratio beta violates beta^2 < g00 at the anchor point."""


@dataclass(frozen=True)
class BoostMatrix:
    """Point-anchored boost satisfying Lambda^T G Lambda = G locally."""

    matrix: np.ndarray
    anchor: np.ndarray
    beta: float
    g00: float

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def metric_tensor(self) -> np.ndarray:
        return np.diag([self.g00] + [-1.0] * (self.dim - 1))

    def det(self) -> float:
        return float(np.linalg.det(self.matrix))

    def invariance_residual(self) -> float:
        """Max-norm of Lambda^T G Lambda - G at the anchor."""
        G = self.metric_tensor()
        return float(np.max(np.abs(self.matrix.T @ G @ self.matrix - G)))

    def apply_to_interval(self, c_dt: float, dx: np.ndarray) -> np.ndarray:
        """Transform a local interval (c dt, dx...) at the anchor point."""
        vec = np.concatenate(([c_dt], np.atleast_1d(dx)))
        if vec.size != self.dim:
            raise ValueError(f"interval has {vec.size} components, boost is {self.dim}x{self.dim}")
        return self.matrix @ vec


def boost_from_g00(g00: float, beta: float, dim: int = 2,
                   anchor=np.zeros(1)) -> BoostMatrix:
    """Construct the boost directly from a g00 value (used by the CLI)."""
    if dim not in (2, 4):
        raise ValueError(f"boost dimension must be 2 (1+1D) or 4 (3+1D), got {dim}")
    if g00 <= 0:
        raise HorizonError(f"g00 = {g00:g} <= 0: no boost inside the horizon")
    if beta**2 >= g00:
        raise SuperluminalFrameError(
            f"beta^2 = {beta**2:g} >= g00 = {g00:g}: frame exceeds the local speed limit"
        )
    big_gamma = 1.0 / math.sqrt(g00 - beta**2)
    root = math.sqrt(g00)
    lam = np.eye(dim)
    lam[0, 0] = lam[1, 1] = big_gamma * root
    lam[0, 1] = -beta * big_gamma / root
    lam[1, 0] = -beta * big_gamma * root
    return BoostMatrix(matrix=lam, anchor=np.atleast_1d(np.asarray(anchor, dtype=float)),
                       beta=float(beta), g00=float(g00))


def build_boost(metric: StaticMetric, x, beta: float, dim: int = 2) -> BoostMatrix:
    """Modified local Lorentz boost anchored at x with frame speed ratio beta."""
    return boost_from_g00(metric.g00(x), beta, dim=dim, anchor=x)


def verify_invariance(boost: BoostMatrix, metric: StaticMetric, x) -> float:
    """Max-norm of Lambda^T G Lambda - G with G evaluated at the anchor x.

    The transformation preserves the metric only at its own anchor, so a
    mismatched x is an error rather than a large residual.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.shape != boost.anchor.shape or not np.array_equal(x, boost.anchor):
        raise ValueError(
            f"boost is anchored at {boost.anchor}, cannot verify at {x}: "
            "local boosts do not transport"
        )
    g00 = metric.g00(x)
    G = np.diag([g00] + [-1.0] * (boost.dim - 1))
    return float(np.max(np.abs(boost.matrix.T @ G @ boost.matrix - G)))


def time_dilation(metric: StaticMetric, x, beta: float) -> float:
    """Dilation factor Gamma sqrt(g00) = sqrt(g00 / (g00 - beta^2))."""
    g00 = metric.g00(x)
    if beta**2 >= g00:
        raise SuperluminalFrameError(f"beta^2 = {beta**2:g} >= g00 = {g00:g}")
    return math.sqrt(g00 / (g00 - beta**2))


def length_contraction(metric: StaticMetric, x, beta: float, length: float) -> float:
    """Contracted length L / (sqrt(g00) Gamma) = L sqrt(g00 - beta^2) / sqrt(g00)."""
    if length <= 0:
        raise ValueError(f"length must be positive, got {length}")
    g00 = metric.g00(x)
    if beta**2 >= g00:
        raise SuperluminalFrameError(f"beta^2 = {beta**2:g} >= g00 = {g00:g}")
    return length * math.sqrt((g00 - beta**2) / g00)


def redshift(r: float, r0: float, nu_inf: float):
    """Gravitational redshift nu = nu_inf sqrt(1 - 2 r0/r), r0 = GM/c^2.

    Returns (nu, delta_nu) with delta_nu = nu - nu_inf <= 0. Radii at or
    inside 2 r0 are behind the horizon factor and rejected.
    """
    if nu_inf <= 0:
        raise ValueError(f"reference frequency must be positive, got {nu_inf}")
    if r <= 2 * r0:
        raise HorizonError(f"r = {r:g} <= 2 r0 = {2 * r0:g}: inside the horizon")
    nu = nu_inf * math.sqrt(1.0 - 2.0 * r0 / r)
    return nu, nu - nu_inf


def redshift_weak_limit(r: float, r0: float, nu_inf: float):
    """First-order approximation nu ~ nu_inf (1 - r0/r) for r >> r0."""
    nu = nu_inf * (1.0 - r0 / r)
    return nu, nu - nu_inf


def redshift_ratio(r1: float, r2: float, r0: float) -> float:
    """Frequency ratio nu(r1)/nu(r2) = sqrt((1 - 2 r0/r1)/(1 - 2 r0/r2))."""
    if r1 <= 2 * r0 or r2 <= 2 * r0:
        raise HorizonError(f"both radii must exceed 2 r0 = {2 * r0:g}, got {r1:g}, {r2:g}")
    return math.sqrt((1.0 - 2.0 * r0 / r1) / (1.0 - 2.0 * r0 / r2))
