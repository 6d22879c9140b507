"""Batch command-line front-end.

Runs are driven by flat INI config files (section/key-value, unknown keys
rejected) with ``--set section.key=value`` flag overrides, and write all
artifacts under ``--outdir``: a delimited trajectory/table, a JSON manifest
(always, success or failure), and rendered figures unless ``--no-plot``.

Exit codes: 0 success, 2 validation/config error, 3 integration stopped by
the admissibility guard. Verbosity via the RELMECH_LOG environment variable
(debug/info/warning/error).
"""

from __future__ import annotations

import argparse
import configparser
import json
import logging
import math
import os
import sys
import time

import numpy as np

from . import __version__
from .core import (
    Constants,
    ParticleState,
    RelmechError,
    StaticMetric,
    make_potential,
)
from .dynamics import GUARD_MARGIN, EomForm, propagate
from .duality import run_oscillator, verify_duality
from .integrate import IntegratorSpec
from .kinematics import speed_limit
from .lienard import (
    LienardSystem,
    damped_metric,
    damped_oscillator,
    run_lienard,
)
from .lorentz import boost_from_g00, redshift, redshift_ratio, redshift_weak_limit

log = logging.getLogger("relmech")


class ConfigError(RelmechError):
    """Malformed or inconsistent run configuration."""


# ---------------------------------------------------------------------------
# config plumbing
# ---------------------------------------------------------------------------

_REQUIRED = object()


def _parse_vector(text: str) -> np.ndarray:
    try:
        return np.array([float(tok) for tok in text.split()], dtype=float)
    except ValueError as exc:
        raise ValueError(f"not a numeric vector: {text!r}") from exc


def _choice(*options):
    def parse(text: str) -> str:
        if text not in options:
            raise ValueError(f"expected one of {options}, got {text!r}")
        return text
    return parse


def load_config(path: str, overrides) -> dict:
    """Read an INI run config and apply section.key=value overrides."""
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    read = parser.read(path)
    if not read:
        raise ConfigError(f"config file not found: {path}")
    cfg = {section: dict(parser[section]) for section in parser.sections()}
    for item in overrides or []:
        if "=" not in item or "." not in item.split("=", 1)[0]:
            raise ConfigError(f"override must look like section.key=value, got {item!r}")
        target, value = item.split("=", 1)
        section, key = target.split(".", 1)
        cfg.setdefault(section.strip(), {})[key.strip()] = value.strip()
    return cfg


def validate_config(cfg: dict, schema: dict) -> dict:
    """Parse cfg against schema {section: {key: (parser, default)}}.

    Unknown sections or keys are rejected with the offending location named.
    """
    parsed = {}
    for section in cfg:
        if section not in schema:
            raise ConfigError(f"unknown config section [{section}]")
    for section, keys in schema.items():
        raw = cfg.get(section, {})
        for key in raw:
            if key not in keys:
                raise ConfigError(f"unknown key {key!r} in section [{section}]")
        out = {}
        for key, (parse, default) in keys.items():
            if key in raw:
                try:
                    out[key] = parse(raw[key])
                except (ValueError, TypeError) as exc:
                    raise ConfigError(f"[{section}] {key}: {exc}") from exc
            elif default is _REQUIRED:
                raise ConfigError(f"missing required key {key!r} in section [{section}]")
            else:
                out[key] = default
        parsed[section] = out
    return parsed


def _write_json(path: str, payload: dict):
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_manifest(outdir: str, config_echo: dict, termination: str,
                   drift=None, wall_time: float = 0.0, warnings=None,
                   outputs=None, error: str = None) -> str:
    payload = {
        "version": __version__,
        "config": config_echo,
        "termination": termination,
        "drift": drift or {},
        "wall_time_s": wall_time,
        "warnings": warnings or [],
        "outputs": outputs or [],
    }
    if error is not None:
        payload["error"] = error
    path = os.path.join(outdir, "manifest.json")
    _write_json(path, payload)
    return path


def _csv_write(path: str, headers, columns):
    import csv as _csv

    with open(path, "w", newline="") as fh:
        writer = _csv.writer(fh)
        writer.writerow(headers)
        for i in range(len(columns[0])):
            writer.writerow([f"{col[i]:.17g}" for col in columns])


# restricted evaluator for user f(x)/g(x)/a(x) expression strings
_EXPR_NAMES = {
    "sin": math.sin, "cos": math.cos, "tan": math.tan, "exp": math.exp,
    "log": math.log, "sqrt": math.sqrt, "tanh": math.tanh, "abs": abs,
    "pi": math.pi, "e": math.e,
}


def compile_expression(expr: str, var: str = "x"):
    """Compile a one-variable arithmetic expression into a float function."""
    try:
        code = compile(expr, "<config expression>", "eval")
    except SyntaxError as exc:
        raise ConfigError(f"bad expression {expr!r}: {exc}") from exc
    for name in code.co_names:
        if name != var and name not in _EXPR_NAMES:
            raise ConfigError(f"unknown name {name!r} in expression {expr!r}")

    def fn(x: float) -> float:
        return float(eval(code, {"__builtins__": {}}, {**_EXPR_NAMES, var: x}))

    return fn


def _integrator_schema(with_guard: bool = False):
    schema = {
        "method": (_choice("rk4", "rkf45"), "rkf45"),
        "rtol": (float, 1e-10),
        "atol": (float, 1e-12),
        "step": (float, None),
        "max_steps": (int, 2_000_000),
    }
    if with_guard:
        schema["guard_margin"] = (float, GUARD_MARGIN)
    return schema


def _integrator_spec(section: dict) -> IntegratorSpec:
    return IntegratorSpec(method=section["method"], step=section["step"],
                          rtol=section["rtol"], atol=section["atol"],
                          max_steps=section["max_steps"])


def _constants(section: dict) -> Constants:
    return Constants(c=section["c"], m=section["m"], G=section.get("G", 1.0))


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------

_SIMULATE_SCHEMA = {
    "run": {"label": (str, "run")},
    "constants": {"c": (float, 1.0), "m": (float, 1.0), "G": (float, 1.0)},
    "potential": {
        "name": (_choice("free", "hooke", "kepler"), _REQUIRED),
        "k": (float, None),
        "gm": (float, None),
    },
    "dynamics": {
        "form": (_choice(*[f.value for f in EomForm]), "relativistic_coord_time"),
        "dim": (int, _REQUIRED),
    },
    "initial": {
        "t0": (float, 0.0),
        "x": (_parse_vector, _REQUIRED),
        "v": (_parse_vector, _REQUIRED),
    },
    "integrator": _integrator_schema(with_guard=True),
    "output": {"span": (float, _REQUIRED), "samples": (int, 1001)},
}

_NEEDS_FULL_ADMISSIBILITY = {
    EomForm.RELATIVISTIC_COORD_TIME, EomForm.RELATIVISTIC_PROPER_TIME,
    EomForm.COVARIANT, EomForm.HAMILTONIAN_EXACT,
}
_NEEDS_SUBLUMINAL = {
    EomForm.SEMI_RELATIVISTIC, EomForm.SEMI_RELATIVISTIC_LOW_V,
    EomForm.HAMILTONIAN_WEAK,
}


def _potential_from_config(section: dict, constants: Constants):
    name = section["name"]
    params = {}
    if name == "hooke":
        if section["k"] is None:
            raise ConfigError("[potential] hooke requires k")
        params["k"] = section["k"]
    elif section["k"] is not None:
        raise ConfigError(f"[potential] k is only valid for hooke, not {name}")
    if name == "kepler":
        if section["gm"] is None:
            raise ConfigError("[potential] kepler requires gm")
        params["gm"] = section["gm"]
    elif section["gm"] is not None:
        raise ConfigError(f"[potential] gm is only valid for kepler, not {name}")
    return make_potential(name, params, constants)


def _check_initial_speed(form: EomForm, metric: StaticMetric, state: ParticleState,
                         guard_margin: float = GUARD_MARGIN):
    s = state.speed()
    if form in _NEEDS_FULL_ADMISSIBILITY:
        limit = speed_limit(metric, state.x)
        if metric.admissibility(state.x, state.v) <= guard_margin:
            raise ConfigError(
                f"initial speed |v| = {s:.6g} violates the local speed limit "
                f"c*sqrt(g00) = {limit:.6g} at x = {state.x.tolist()}"
            )
    elif form in _NEEDS_SUBLUMINAL and s >= metric.constants.c:
        raise ConfigError(
            f"initial speed |v| = {s:.6g} violates the speed limit "
            f"c = {metric.constants.c:.6g}"
        )


def cmd_simulate(args) -> int:
    started = time.perf_counter()
    cfg_raw = load_config(args.config, args.set)
    os.makedirs(args.outdir, exist_ok=True)
    try:
        cfg = validate_config(cfg_raw, _SIMULATE_SCHEMA)
        constants = _constants(cfg["constants"])
        potential = _potential_from_config(cfg["potential"], constants)
        dim = cfg["dynamics"]["dim"]
        metric = StaticMetric(potential=potential, constants=constants, dim=dim)
        form = EomForm(cfg["dynamics"]["form"])
        x0, v0 = cfg["initial"]["x"], cfg["initial"]["v"]
        if x0.size != dim or v0.size != dim:
            raise ConfigError(f"[initial] x and v must have dim = {dim} components")
        state0 = ParticleState(t=cfg["initial"]["t0"], x=x0, v=v0)
        guard_margin = cfg["integrator"]["guard_margin"]
        _check_initial_speed(form, metric, state0, guard_margin)
        spec = _integrator_spec(cfg["integrator"])
    except (ConfigError, RelmechError) as exc:
        write_manifest(args.outdir, cfg_raw, "validation-error",
                       wall_time=time.perf_counter() - started, error=str(exc))
        raise

    record, report = propagate(metric, form, state0, cfg["output"]["span"], spec,
                               n_samples=cfg["output"]["samples"],
                               guard_margin=guard_margin)
    log.info("simulate: %d samples, %d steps (%d rejected), %s",
             len(record), report.steps, report.rejected, report.termination)

    stem = cfg["run"]["label"]
    outputs = []
    csv_path = os.path.join(args.outdir, f"{stem}.csv")
    record.to_csv(csv_path)
    outputs.append(csv_path)
    if args.plot and len(record) > 1:
        from . import plots
        outputs.append(plots.save_trajectory_figure(record, args.outdir, stem))

    warnings = []
    if not potential.grad_is_analytic:
        warnings.append("potential gradient uses finite differences")
    if report.termination == "guard-tripped":
        t_bad, y_bad = report.guard_state
        warnings.append(f"admissibility guard tripped at parameter {t_bad:.9g}")

    write_manifest(args.outdir, cfg_raw, report.termination, drift=report.drift,
                   wall_time=time.perf_counter() - started, warnings=warnings,
                   outputs=outputs)
    if report.termination == "guard-tripped":
        print("integration stopped: admissibility guard tripped", file=sys.stderr)
        return 3
    return 0 if report.completed else 1


# ---------------------------------------------------------------------------
# boost / redshift (point evaluations printed as JSON)
# ---------------------------------------------------------------------------

def cmd_boost(args) -> int:
    boost = boost_from_g00(args.g00, args.beta, dim=args.dim)
    payload = {
        "g00": args.g00,
        "beta": args.beta,
        "dim": args.dim,
        "matrix": boost.matrix.tolist(),
        "det": boost.det(),
        "invariance_residual": boost.invariance_residual(),
    }
    text = json.dumps(payload, indent=2, sort_keys=True)
    print(text)
    if args.outdir:
        os.makedirs(args.outdir, exist_ok=True)
        _write_json(os.path.join(args.outdir, "boost.json"), payload)
        write_manifest(args.outdir, {"boost": {"g00": str(args.g00), "beta": str(args.beta)}},
                       "completed", outputs=[os.path.join(args.outdir, "boost.json")])
    return 0


def cmd_redshift(args) -> int:
    nu, delta = redshift(args.r, args.r0, args.nu_inf)
    nu_weak, delta_weak = redshift_weak_limit(args.r, args.r0, args.nu_inf)
    payload = {
        "r": args.r,
        "r0": args.r0,
        "nu_inf": args.nu_inf,
        "nu": nu,
        "delta_nu": delta,
        "nu_weak_limit": nu_weak,
        "delta_nu_weak_limit": delta_weak,
    }
    if args.r2 is not None:
        payload["r2"] = args.r2
        payload["ratio_nu_r_over_nu_r2"] = redshift_ratio(args.r, args.r2, args.r0)
    text = json.dumps(payload, indent=2, sort_keys=True)
    print(text)
    if args.outdir:
        os.makedirs(args.outdir, exist_ok=True)
        _write_json(os.path.join(args.outdir, "redshift.json"), payload)
        write_manifest(args.outdir, {"redshift": {"r": str(args.r), "r0": str(args.r0)}},
                       "completed", outputs=[os.path.join(args.outdir, "redshift.json")])
    return 0


# ---------------------------------------------------------------------------
# duality
# ---------------------------------------------------------------------------

_DUALITY_SCHEMA = {
    "run": {"label": (str, "duality")},
    "constants": {"c": (float, 1.0), "m": (float, 1.0)},
    "oscillator": {
        "k": (float, 1.0),
        "z0": (_parse_vector, _REQUIRED),     # two components: Re, Im
        "w0": (_parse_vector, _REQUIRED),
        "span": (float, _REQUIRED),           # proper-time length
        "samples": (int, 8192),
        # the duality holds for the semi-relativistic flow and is expected
        # to fail for the full metric-derived one
        "regime": (_choice("semi_relativistic", "relativistic"), "semi_relativistic"),
    },
    "duality": {
        "h_drift_tol": (str, "1e-6"),         # number or "none"
        "n_uniform": (int, 0),                # 0 -> auto
    },
    "integrator": _integrator_schema(),
}


def cmd_duality(args) -> int:
    started = time.perf_counter()
    cfg_raw = load_config(args.config, args.set)
    os.makedirs(args.outdir, exist_ok=True)
    try:
        cfg = validate_config(cfg_raw, _DUALITY_SCHEMA)
        osc_cfg = cfg["oscillator"]
        if osc_cfg["z0"].size != 2 or osc_cfg["w0"].size != 2:
            raise ConfigError("[oscillator] z0 and w0 need two components (Re Im)")
        tol_text = cfg["duality"]["h_drift_tol"].strip().lower()
        h_tol = None if tol_text == "none" else float(tol_text)
        spec = _integrator_spec(cfg["integrator"])
    except (ConfigError, RelmechError, ValueError) as exc:
        write_manifest(args.outdir, cfg_raw, "validation-error",
                       wall_time=time.perf_counter() - started, error=str(exc))
        if isinstance(exc, ValueError):
            raise ConfigError(str(exc)) from exc
        raise

    m, c, k = cfg["constants"]["m"], cfg["constants"]["c"], osc_cfg["k"]
    relativistic = osc_cfg["regime"] == "relativistic"
    traj = run_oscillator(
        m=m, k=k, c=c,
        z0=complex(osc_cfg["z0"][0], osc_cfg["z0"][1]),
        w0=complex(osc_cfg["w0"][0], osc_cfg["w0"][1]),
        ttilde_span=osc_cfg["span"], spec=spec, n_samples=osc_cfg["samples"],
        relativistic=relativistic,
    )
    rep = verify_duality(traj, m=m, k=k, h_drift_tol=h_tol,
                         n_uniform=cfg["duality"]["n_uniform"] or None)
    log.info("duality: kappa=%g max residual=%g", rep.kappa, rep.max_residual)

    stem = cfg["run"]["label"]
    h_series = traj.energy_series(m, k)
    osc_csv = os.path.join(args.outdir, f"{stem}_oscillator.csv")
    _csv_write(
        osc_csv,
        ["ttilde (time)", "re_z (length)", "im_z (length)",
         "re_w (length/time)", "im_w (length/time)", "H (energy)"],
        [traj.tau, traj.z.real, traj.z.imag, traj.w.real, traj.w.imag, h_series],
    )
    dual_csv = os.path.join(args.outdir, f"{stem}_kepler.csv")
    interior = slice(2, -2)
    _csv_write(
        dual_csv,
        ["tau (time)", "re_xi (length)", "im_xi (length)",
         "kepler_residual (length/time^2)"],
        [rep.tau_uniform[interior], rep.xi_uniform[interior].real,
         rep.xi_uniform[interior].imag, rep.residual],
    )
    report_json = os.path.join(args.outdir, f"{stem}.json")
    _write_json(report_json, {
        "kappa": rep.kappa,
        "h_value": rep.h_value,
        "h_drift": rep.h_drift,
        "max_kepler_residual": rep.max_residual,
        "regime": osc_cfg["regime"],
        "n_samples": len(traj),
        "n_uniform": len(rep.tau_uniform),
    })
    outputs = [osc_csv, dual_csv, report_json]
    if args.plot:
        from . import plots
        outputs.append(plots.save_duality_figure(rep, args.outdir, stem))
    write_manifest(args.outdir, cfg_raw, "completed",
                   drift={"H": rep.h_drift},
                   wall_time=time.perf_counter() - started, outputs=outputs)
    return 0


# ---------------------------------------------------------------------------
# lienard
# ---------------------------------------------------------------------------

_LIENARD_SCHEMA = {
    "run": {"label": (str, "lienard")},
    "constants": {"c": (float, 1.0), "m": (float, 1.0)},
    "system": {
        "kappa": (float, None),
        "f_expr": (str, None),
        "g_expr": (str, None),
        "alpha": (str, "auto"),
    },
    "initial": {"x": (float, _REQUIRED), "v": (float, 0.0)},
    "output": {"span": (float, _REQUIRED), "samples": (int, 2001)},
    "integrator": _integrator_schema(),
}


def _lienard_system_from_config(cfg: dict) -> LienardSystem:
    sys_cfg = cfg["system"]
    c, m = cfg["constants"]["c"], cfg["constants"]["m"]
    alpha_text = sys_cfg["alpha"].strip().lower()
    if sys_cfg["kappa"] is not None:
        if sys_cfg["f_expr"] or sys_cfg["g_expr"]:
            raise ConfigError("[system] give either kappa or f_expr/g_expr, not both")
        kappa = sys_cfg["kappa"]
        alpha = None if alpha_text == "auto" else float(alpha_text)
        return damped_oscillator(kappa, c=c, m=m, alpha=alpha)
    if not sys_cfg["f_expr"] or not sys_cfg["g_expr"]:
        raise ConfigError("[system] needs kappa, or both f_expr and g_expr")
    if alpha_text == "auto":
        raise ConfigError("[system] alpha must be numeric for expression systems")
    return LienardSystem(
        f=compile_expression(sys_cfg["f_expr"]),
        g=compile_expression(sys_cfg["g_expr"]),
        alpha=float(alpha_text), c=c, m=m,
        label=f"lienard(f={sys_cfg['f_expr']}, g={sys_cfg['g_expr']})",
    )


def cmd_lienard(args) -> int:
    started = time.perf_counter()
    cfg_raw = load_config(args.config, args.set)
    os.makedirs(args.outdir, exist_ok=True)
    try:
        cfg = validate_config(cfg_raw, _LIENARD_SCHEMA)
        system = _lienard_system_from_config(cfg)
        if abs(cfg["initial"]["v"]) >= system.c:
            raise ConfigError(
                f"initial |xdot| = {abs(cfg['initial']['v']):.6g} violates the "
                f"speed limit c = {system.c:.6g}")
        spec = _integrator_spec(cfg["integrator"])
    except (ConfigError, RelmechError, ValueError) as exc:
        write_manifest(args.outdir, cfg_raw, "validation-error",
                       wall_time=time.perf_counter() - started, error=str(exc))
        if isinstance(exc, ValueError):
            raise ConfigError(str(exc)) from exc
        raise

    traj = run_lienard(system, cfg["initial"]["x"], cfg["initial"]["v"],
                       cfg["output"]["span"], spec, n_samples=cfg["output"]["samples"])

    dm = damped_metric(system)
    span = float(np.max(np.abs(traj.x)))
    probe = (-span, span) if span > 0 else (-1.0, 1.0)
    try:
        mismatch = system.check_chiellini(probe)
        consistent = True
    except ValueError:
        mismatch = math.inf
        consistent = False

    i0 = traj.first_integral[0]
    drift_abs = float(np.max(np.abs(traj.first_integral - i0)))
    drift_rel = drift_abs / abs(i0) if i0 != 0 else None
    einstein = dm.einstein_residual(traj.x, traj.omega)

    stem = cfg["run"]["label"]
    csv_path = os.path.join(args.outdir, f"{stem}.csv")
    _csv_write(
        csv_path,
        ["ttilde (time)", "t (time)", "x (length)", "xdot (length/time)",
         "xprime (length/time)", "gamma (dimensionless)",
         "Omega (dimensionless)", "I (length^2/time^2)"],
        [traj.ttilde, traj.t, traj.x, traj.xdot, traj.xprime, traj.gamma,
         traj.omega, traj.first_integral],
    )
    metric_json = os.path.join(args.outdir, f"{stem}_metric.json")
    _write_json(metric_json, {
        "label": system.label,
        "alpha": system.alpha,
        "alpha_product": system.alpha_product,
        "chiellini_consistent": consistent,
        "chiellini_mismatch": mismatch,
        "first_integral_initial": i0,
        "first_integral_drift_abs": drift_abs,
        "first_integral_drift_rel": drift_rel,
        "einstein_residual_max": float(np.max(einstein)),
        "g00_at_x0": dm.g00(cfg["initial"]["x"]),
        "potential_at_x0": dm.potential(cfg["initial"]["x"]),
    })
    outputs = [csv_path, metric_json]
    if args.plot:
        from . import plots
        outputs.append(plots.save_lienard_figure(traj, args.outdir, stem))
    drift = {"I_abs": drift_abs}
    if drift_rel is not None:
        drift["I_rel"] = drift_rel
    write_manifest(args.outdir, cfg_raw, "completed", drift=drift,
                   wall_time=time.perf_counter() - started, outputs=outputs)
    return 0


# ---------------------------------------------------------------------------
# derive-metric
# ---------------------------------------------------------------------------

_DERIVE_SCHEMA = {
    "run": {"label": (str, "metric")},
    "constants": {"c": (float, 1.0), "m": (float, 1.0), "G": (float, 1.0)},
    "accel": {
        "kind": (_choice("hooke", "kepler", "expression"), _REQUIRED),
        "k": (float, None),
        "gm": (float, None),
        "expr": (str, None),
        "reference": (str, None),
    },
    "probe": {"lo": (float, _REQUIRED), "hi": (float, _REQUIRED), "samples": (int, 101)},
}


def cmd_derive_metric(args) -> int:
    from .dynamics import derive_metric_from_eom

    started = time.perf_counter()
    cfg_raw = load_config(args.config, args.set)
    os.makedirs(args.outdir, exist_ok=True)
    try:
        cfg = validate_config(cfg_raw, _DERIVE_SCHEMA)
        constants = _constants(cfg["constants"])
        acc = cfg["accel"]
        kind = acc["kind"]
        if kind == "hooke":
            k = acc["k"] if acc["k"] is not None else 1.0
            accel = lambda x: -(k / constants.m) * x
            reference = 0.0
        elif kind == "kepler":
            gm = acc["gm"] if acc["gm"] is not None else constants.G
            accel = lambda r: -gm / r**2
            reference = math.inf
        else:
            if not acc["expr"]:
                raise ConfigError("[accel] expression kind requires expr")
            accel = compile_expression(acc["expr"])
            reference = 0.0
        if acc["reference"] is not None:
            text = acc["reference"].strip().lower()
            reference = {"inf": math.inf, "+inf": math.inf, "-inf": -math.inf}.get(
                text, None)
            if reference is None:
                reference = float(text)
        lo, hi = cfg["probe"]["lo"], cfg["probe"]["hi"]
        if not hi > lo:
            raise ConfigError("[probe] needs hi > lo")
        if kind == "kepler" and lo <= 0:
            raise ConfigError("[probe] Kepler reconstruction needs lo > 0")
    except (ConfigError, RelmechError, ValueError) as exc:
        write_manifest(args.outdir, cfg_raw, "validation-error",
                       wall_time=time.perf_counter() - started, error=str(exc))
        if isinstance(exc, ValueError):
            raise ConfigError(str(exc)) from exc
        raise

    metric = derive_metric_from_eom(accel, constants, reference=reference, dim=1)
    xs = np.linspace(lo, hi, cfg["probe"]["samples"])
    potential = np.array([metric.potential.eval(np.array([x])) for x in xs])
    g00 = 1.0 + 2.0 * potential / constants.mc2

    stem = cfg["run"]["label"]
    csv_path = os.path.join(args.outdir, f"{stem}.csv")
    _csv_write(csv_path,
               ["x (length)", "U (energy)", "g00 (dimensionless)"],
               [xs, potential, g00])
    json_path = os.path.join(args.outdir, f"{stem}.json")
    _write_json(json_path, {
        "kind": kind,
        "reference": "inf" if math.isinf(reference) else reference,
        "probe": [lo, hi],
        "g00_range": [float(np.min(g00)), float(np.max(g00))],
    })
    outputs = [csv_path, json_path]
    if args.plot:
        from . import plots
        outputs.append(plots.save_metric_figure(xs, potential, g00, args.outdir, stem))
    write_manifest(args.outdir, cfg_raw, "completed",
                   wall_time=time.perf_counter() - started, outputs=outputs)
    return 0


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _add_config_run_flags(sp):
    sp.add_argument("--config", required=True, help="INI run configuration")
    sp.add_argument("--set", action="append", default=[], metavar="SECTION.KEY=VALUE",
                    help="override a config entry (repeatable)")
    sp.add_argument("--outdir", required=True, help="directory for all artifacts")
    sp.add_argument("--plot", action=argparse.BooleanOptionalAction, default=True,
                    help="render figures alongside the delimited output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relmech",
        description="Metric-derived relativistic mechanics: simulations, "
                    "boosts, redshift, Bohlin duality, and damped oscillators.",
    )
    parser.add_argument("--version", action="version", version=f"relmech {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("simulate", help="integrate an equation of motion from a config")
    _add_config_run_flags(sp)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("boost", help="print a modified local Lorentz boost as JSON")
    sp.add_argument("--g00", type=float, required=True)
    sp.add_argument("--beta", type=float, required=True)
    sp.add_argument("--dim", type=int, choices=(2, 4), default=2)
    sp.add_argument("--outdir", default=None)
    sp.set_defaults(func=cmd_boost)

    sp = sub.add_parser("redshift", help="gravitational redshift at radius r")
    sp.add_argument("--r", type=float, required=True)
    sp.add_argument("--r0", type=float, required=True, help="GM/c^2 length")
    sp.add_argument("--nu-inf", type=float, default=1.0)
    sp.add_argument("--r2", type=float, default=None,
                    help="also report the two-radius frequency ratio")
    sp.add_argument("--outdir", default=None)
    sp.set_defaults(func=cmd_redshift)

    sp = sub.add_parser("duality", help="Bohlin map of an oscillator run, with residual")
    _add_config_run_flags(sp)
    sp.set_defaults(func=cmd_duality)

    sp = sub.add_parser("lienard", help="damped relativistic oscillator run")
    _add_config_run_flags(sp)
    sp.set_defaults(func=cmd_lienard)

    sp = sub.add_parser("derive-metric", help="reconstruct g00 from an acceleration law")
    _add_config_run_flags(sp)
    sp.set_defaults(func=cmd_derive_metric)

    return parser


def _configure_logging():
    level_name = os.environ.get("RELMECH_LOG", "warning").upper()
    level = getattr(logging, level_name, None)
    if not isinstance(level, int):
        level = logging.WARNING
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


def main(argv=None) -> int:
    _configure_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except RelmechError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
