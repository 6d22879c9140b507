"""Figure rendering for run reports.

All functions draw with the Agg backend and write PNG files next to the
delimited output; nothing is ever shown interactively.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

_DPI = 150


def _finish(fig, outdir, name):
    path = os.path.join(outdir, name)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path


def save_trajectory_figure(record, outdir, stem="trajectory"):
    """Positions, orbit/phase portrait, and conserved-quantity drift."""
    fig, axes = plt.subplots(2, 2, figsize=(9, 7))

    ax = axes[0, 0]
    for j in range(record.dim):
        ax.plot(record.t, record.x[:, j], label=record.axis_names[j])
    ax.set_xlabel("t")
    ax.set_ylabel("position")
    ax.legend(loc="best", fontsize=8)

    ax = axes[0, 1]
    if record.dim >= 2:
        ax.plot(record.x[:, 0], record.x[:, 1], lw=0.8)
        ax.plot([0], [0], "k+", ms=10)
        ax.set_xlabel("x")
        ax.set_ylabel("y")
        ax.set_aspect("equal", adjustable="datalim")
        ax.set_title("orbit")
    else:
        ax.plot(record.x[:, 0], record.v[:, 0], lw=0.8)
        ax.set_xlabel("x")
        ax.set_ylabel("v")
        ax.set_title("phase portrait")

    def rel_dev(q):
        ref = q[0]
        return np.abs(q - ref) / max(abs(ref), 1e-300)

    ax = axes[1, 0]
    ax.semilogy(record.t, np.maximum(rel_dev(record.energy), 1e-18), label="energy")
    ax.semilogy(record.t, np.maximum(rel_dev(record.k2), 1e-18), label="K^2")
    if record.p_phi is not None:
        ax.semilogy(record.t, np.maximum(rel_dev(record.p_phi), 1e-18), label="p_phi")
    ax.set_xlabel("t")
    ax.set_ylabel("relative drift")
    ax.legend(loc="best", fontsize=8)

    ax = axes[1, 1]
    ax.plot(record.t, record.gamma_big)
    ax.set_xlabel("t")
    ax.set_ylabel("Gamma")

    return _finish(fig, outdir, f"{stem}.png")


def save_duality_figure(report, outdir, stem="duality"):
    """Oscillator orbit, its Bohlin image, and the Kepler-equation residual."""
    fig, axes = plt.subplots(1, 3, figsize=(12, 4))

    ax = axes[0]
    ax.plot(report.oscillator.z.real, report.oscillator.z.imag, lw=0.8)
    ax.set_title("oscillator z")
    ax.set_xlabel("Re z")
    ax.set_ylabel("Im z")
    ax.set_aspect("equal", adjustable="datalim")

    ax = axes[1]
    ax.plot(report.xi_uniform.real, report.xi_uniform.imag, lw=0.8)
    ax.plot([0], [0], "k+", ms=10)
    ax.set_title(f"dual orbit xi = z^2 (kappa={report.kappa:.4g})")
    ax.set_xlabel("Re xi")
    ax.set_ylabel("Im xi")
    ax.set_aspect("equal", adjustable="datalim")

    ax = axes[2]
    tau_int = report.tau_uniform[2:-2]
    ax.semilogy(tau_int, np.maximum(report.residual, 1e-18), lw=0.8)
    ax.set_title("Kepler-equation residual")
    ax.set_xlabel("tau")

    return _finish(fig, outdir, f"{stem}.png")


def save_lienard_figure(traj, outdir, stem="lienard"):
    """Damped motion, phase portrait, and conservation of the first integral."""
    fig, axes = plt.subplots(2, 2, figsize=(9, 7))

    axes[0, 0].plot(traj.ttilde, traj.x, lw=0.8)
    axes[0, 0].set_xlabel("proper time")
    axes[0, 0].set_ylabel("x")

    axes[0, 1].plot(traj.x, traj.xprime, lw=0.8)
    axes[0, 1].set_xlabel("x")
    axes[0, 1].set_ylabel("gamma xdot")
    axes[0, 1].set_title("phase portrait")

    i0 = traj.first_integral[0]
    dev = np.abs(traj.first_integral - i0) / max(abs(i0), 1e-300)
    axes[1, 0].semilogy(traj.ttilde, np.maximum(dev, 1e-18), lw=0.8)
    axes[1, 0].set_xlabel("proper time")
    axes[1, 0].set_ylabel("|I - I0| / |I0|")

    axes[1, 1].plot(traj.ttilde, traj.omega, lw=0.8)
    axes[1, 1].set_xlabel("proper time")
    axes[1, 1].set_ylabel("Omega")

    return _finish(fig, outdir, f"{stem}.png")


def save_metric_figure(xs, potential, g00, outdir, stem="metric"):
    """Reconstructed potential and temporal metric coefficient."""
    fig, axes = plt.subplots(1, 2, figsize=(9, 3.5))
    axes[0].plot(xs, potential, lw=0.9)
    axes[0].set_xlabel("x")
    axes[0].set_ylabel("U(x)")
    axes[1].plot(xs, g00, lw=0.9)
    axes[1].axhline(1.0, color="k", lw=0.5, ls=":")
    axes[1].set_xlabel("x")
    axes[1].set_ylabel("g00(x)")
    return _finish(fig, outdir, f"{stem}.png")
