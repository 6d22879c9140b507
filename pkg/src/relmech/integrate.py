"""Explicit Runge-Kutta engine with step control, guards, and drift monitoring.

Two methods are provided: the classical fixed-step RK4 and the adaptive
Fehlberg 4(5) embedded pair (4th-order solution propagated, 5th-order used
for the local error estimate). Samples are produced exactly at the
requested times by clamping step endpoints, so runs are deterministic and
need no interpolation.

Admissibility guards serve two roles: the right-hand side may raise a
RelmechError at a trial stage (the step is rejected and retried smaller),
and the guard predicate is evaluated after every accepted step so a run
that leaves the admissible region terminates with a partial trajectory
instead of NaNs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .core import RelmechError


class StiffnessError(RelmechError):
    """Adaptive step size underflowed; the problem is stiff for this method."""


# Fehlberg 4(5) extended Butcher tableau.
_FEHLBERG_C = np.array([0.0, 1 / 4, 3 / 8, 12 / 13, 1.0, 1 / 2])
_FEHLBERG_A = [
    np.array([]),
    np.array([1 / 4]),
    np.array([3 / 32, 9 / 32]),
    np.array([1932 / 2197, -7200 / 2197, 7296 / 2197]),
    np.array([439 / 216, -8.0, 3680 / 513, -845 / 4104]),
    np.array([-8 / 27, 2.0, -3544 / 2565, 1859 / 4104, -11 / 40]),
]
_FEHLBERG_B4 = np.array([25 / 216, 0.0, 1408 / 2565, 2197 / 4104, -1 / 5, 0.0])
_FEHLBERG_B5 = np.array([16 / 135, 0.0, 6656 / 12825, 28561 / 56430, -9 / 50, 2 / 55])

# Step controller: conventional safety factor and growth clamp, no PI terms,
# so reruns of the same config are bitwise reproducible.
_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 5.0


@dataclass(frozen=True)
class IntegratorSpec:
    """Method selection and error control for a single integration."""

    method: str = "rkf45"          # "rk4" | "rkf45"
    step: Optional[float] = None   # rk4 step size
    rtol: float = 1e-8
    atol: float = 1e-10
    max_steps: int = 2_000_000
    guard: Optional[Callable[[float, np.ndarray], bool]] = None

    def __post_init__(self):
        if self.method not in ("rk4", "rkf45"):
            raise ValueError(f"unknown method {self.method!r}; use 'rk4' or 'rkf45'")
        if self.method == "rk4" and (self.step is None or self.step <= 0):
            raise ValueError("rk4 requires a positive fixed step")
        if self.rtol <= 0 or self.atol <= 0:
            raise ValueError("rtol and atol must be positive")
        if self.max_steps <= 0:
            raise ValueError("max_steps must be positive")


@dataclass
class IntegrationReport:
    """Samples plus bookkeeping for one integration run."""

    t: np.ndarray
    y: np.ndarray                 # shape (n_samples, n_state)
    steps: int
    rejected: int
    drift: dict = field(default_factory=dict)   # monitor name -> max relative drift
    termination: str = "completed"              # completed | guard-tripped | max-steps
    guard_state: Optional[tuple] = None         # (t, y) that tripped the guard

    @property
    def completed(self) -> bool:
        return self.termination == "completed"


def _rk4_step(rhs, t, y, h):
    k1 = rhs(t, y)
    k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1)
    k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2)
    k4 = rhs(t + h, y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _error_norm(err, y_old, y_new, rtol, atol):
    scale = atol + rtol * np.maximum(np.abs(y_old), np.abs(y_new))
    ratio = err / scale
    return float(np.sqrt(np.mean(ratio * ratio)))


class _Sampler:
    """Collects samples and running drift of monitored quantities."""

    def __init__(self, y0, monitors):
        self.ts: list = []
        self.ys: list = []
        self.monitors = monitors or {}
        self.reference = {}
        self.drift = {name: 0.0 for name in self.monitors}

    def record(self, t, y):
        self.ts.append(t)
        self.ys.append(np.array(y))
        for name, fn in self.monitors.items():
            value = fn(t, y)
            if value is None or not math.isfinite(value):
                # quantity undefined along this run; drift is unknowable
                self.drift[name] = math.nan
            elif name not in self.reference:
                self.reference[name] = value
            elif not math.isnan(self.drift[name]):
                ref = self.reference[name]
                denom = max(abs(ref), 1e-300)
                self.drift[name] = max(self.drift[name], abs(value - ref) / denom)

    def report(self, steps, rejected, termination, guard_state=None):
        n = len(self.ts)
        y = np.vstack(self.ys) if n else np.empty((0, 0))
        return IntegrationReport(
            t=np.asarray(self.ts), y=y, steps=steps, rejected=rejected,
            drift=dict(self.drift), termination=termination, guard_state=guard_state,
        )


def _check_t_eval(t0, tf, t_eval):
    if t_eval is None:
        t_eval = np.linspace(t0, tf, 201)
    t_eval = np.asarray(t_eval, dtype=float)
    if t_eval.size == 0 or not np.all(np.diff(t_eval) > 0):
        raise ValueError("sample times must be non-empty and strictly increasing")
    if t_eval[0] < t0 or t_eval[-1] > tf + 1e-12 * max(1.0, abs(tf)):
        raise ValueError(f"sample times must lie within t_span [{t0}, {tf}]")
    return t_eval


def integrate(rhs, y0, t_span, spec: IntegratorSpec,
              t_eval=None, monitors=None) -> IntegrationReport:
    """Integrate dy/ds = rhs(s, y) over t_span, sampling at t_eval.

    ``monitors`` maps names to callables q(t, y); the report carries the
    maximum relative drift of each q over the samples. The spec's guard is
    evaluated at y0 (a failure there is a validation error) and after every
    accepted step (a failure terminates with ``guard-tripped`` and the
    offending state).
    """
    t0, tf = float(t_span[0]), float(t_span[1])
    if not (math.isfinite(t0) and math.isfinite(tf) and tf > t0):
        raise ValueError(f"t_span must be finite and increasing, got {t_span}")
    y0 = np.asarray(y0, dtype=float).copy()
    t_eval = _check_t_eval(t0, tf, t_eval)

    if spec.guard is not None and not spec.guard(t0, y0):
        raise ValueError("initial state fails the admissibility guard")

    if spec.method == "rk4":
        return _integrate_rk4(rhs, y0, t0, tf, t_eval, spec, monitors)
    return _integrate_rkf45(rhs, y0, t0, tf, t_eval, spec, monitors)


def _integrate_rk4(rhs, y0, t0, tf, t_eval, spec, monitors):
    sampler = _Sampler(y0, monitors)
    t, y = t0, y0
    if t_eval[0] == t0:
        sampler.record(t0, y0)
        targets = t_eval[1:]
    else:
        targets = t_eval
    steps = 0
    for target in targets:
        span = target - t
        n_sub = max(1, math.ceil(span / spec.step - 1e-12))
        h = span / n_sub
        for _ in range(n_sub):
            if steps >= spec.max_steps:
                return sampler.report(steps, 0, "max-steps")
            y = _rk4_step(rhs, t, y, h)
            t += h
            steps += 1
            if spec.guard is not None and not spec.guard(t, y):
                return sampler.report(steps, 0, "guard-tripped", guard_state=(t, y.copy()))
        t = target  # kill accumulated roundoff at sample boundaries
        sampler.record(t, y)
    return sampler.report(steps, 0, "completed")


def _integrate_rkf45(rhs, y0, t0, tf, t_eval, spec, monitors):
    sampler = _Sampler(y0, monitors)
    t, y = t0, y0
    eval_idx = 0
    if t_eval[0] == t0:
        sampler.record(t0, y0)
        eval_idx = 1

    h_min = 16.0 * np.finfo(float).eps * max(abs(t0), abs(tf), 1.0)
    first_gap = t_eval[eval_idx] - t0 if eval_idx < len(t_eval) else tf - t0
    h = max(h_min, min((tf - t0) * 1e-3, first_gap))
    k = np.empty((6, y0.size))
    steps = rejected = 0

    while eval_idx < len(t_eval):
        if steps + rejected >= spec.max_steps:
            return sampler.report(steps, rejected, "max-steps")
        target = t_eval[eval_idx]
        hit_target = t + h >= target
        h_try = target - t if hit_target else h

        try:
            # non-finite trial values are handled by rejection below
            with np.errstate(over="ignore", invalid="ignore"):
                k[0] = rhs(t, y)
                for i in range(1, 6):
                    yi = y + h_try * (_FEHLBERG_A[i] @ k[:i])
                    k[i] = rhs(t + _FEHLBERG_C[i] * h_try, yi)
                y4 = y + h_try * (_FEHLBERG_B4 @ k)
                err = h_try * ((_FEHLBERG_B5 - _FEHLBERG_B4) @ k)
                norm = _error_norm(err, y, y4, spec.rtol, spec.atol)
            if not math.isfinite(norm):
                norm = math.inf
        except RelmechError:
            # a trial stage left the admissible region: retry smaller
            norm = math.inf

        if norm <= 1.0:
            steps += 1
            t = target if hit_target else t + h_try
            y = y4
            if not hit_target:
                factor = _MAX_FACTOR if norm == 0.0 else min(
                    _MAX_FACTOR, max(_MIN_FACTOR, _SAFETY * norm ** -0.2))
                h = h_try * factor
            if spec.guard is not None and not spec.guard(t, y):
                return sampler.report(steps, rejected, "guard-tripped",
                                      guard_state=(t, y.copy()))
            if hit_target:
                sampler.record(t, y)
                eval_idx += 1
        else:
            rejected += 1
            factor = _MIN_FACTOR if norm == math.inf else min(
                1.0, max(_MIN_FACTOR, _SAFETY * norm ** -0.2))
            h = h_try * factor
            if h < h_min:
                if spec.guard is not None and not spec.guard(t, y):
                    return sampler.report(steps, rejected, "guard-tripped",
                                          guard_state=(t, y.copy()))
                raise StiffnessError(
                    f"step size underflowed at t={t:g} (h={h:g} < {h_min:g})")

    return sampler.report(steps, rejected, "completed")
