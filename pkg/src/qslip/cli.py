"""Command-line front end.

Subcommands: classify, derive-params, eigs, windows, bounds, verify,
evolve.  CSV output is deterministic (header row, '.' decimals, 17
significant digits, LF line endings, NA for undefined concurrence); JSON
objects carry a top-level ``"schema": 1``.  A JSON config file whose keys
equal the long flag names may supply any parameter; explicit flags win.

Exit codes: 0 success, 1 verification failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import bipartite, qmat
from .bipartite import (
    detect_windows,
    eigenvalues_closed_form,
    evolve_isotropic,
    positivity_bound,
    r4_curve,
    r4_max,
    rate_factor_max,
    concurrence_rate_factor,
    concurrence_wootters,
    partial_transpose_spectrum_check,
    window_functions,
)
from .oracle import IntegratorConfig, integrate_master_2x2, maximize_scalar
from .semigroup import (
    BlochVector,
    ModelParams,
    StochasticFieldParams,
    bloch_trajectory,
    classify,
    derive_params,
    norm_bound_curve,
    norm_bound_max,
)

SCHEMA_VERSION = 1

_REQUIRED = object()
_INT_KEYS = {"steps"}


def _fmt(x) -> str:
    """Locale-independent float rendering at 17 significant digits."""
    return format(float(x), ".17g")


def _emit(text: str, output: str | None) -> None:
    if output is None or output == "-":
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _effective(args: argparse.Namespace, defaults: dict) -> dict:
    """Merge flag values over config-file values over built-in defaults."""
    config = {}
    if getattr(args, "config", None):
        with open(args.config, encoding="utf-8") as fh:
            config = json.load(fh)
        if not isinstance(config, dict):
            raise ValueError("config file must hold a JSON object")
        unknown = sorted(set(config) - set(defaults))
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(unknown)}")
    merged = {}
    for name, fallback in defaults.items():
        cast = int if name in _INT_KEYS else float
        value = getattr(args, name.replace("-", "_"))
        if value is None and name in config:
            value = cast(config[name])
        if value is None:
            value = fallback
        if value is _REQUIRED:
            raise ValueError(f"missing required parameter --{name}")
        merged[name] = value
    return merged


def _csv(header: list[str], rows: list[list[str]]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(row) for row in rows)
    return "\n".join(lines) + "\n"


def _json_doc(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _report_payload(report) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "t_bar": report.t_bar,
        "intervals": [[t1, t2] for t1, t2 in report.intervals],
        "mu_upper_physical": report.mu_upper_physical,
        "mu_upper_corrected": report.mu_upper_corrected,
        "kills_all_entanglement": report.kills_all_entanglement,
    }


def _cmd_classify(args) -> int:
    eff = _effective(args, {"a": _REQUIRED, "b": _REQUIRED, "omega": 1.0})
    tag = classify(eff["a"], eff["b"], eff["omega"])
    payload = {
        "schema": SCHEMA_VERSION,
        "tag": tag.value,
        "a": eff["a"],
        "b": eff["b"],
        "omega": eff["omega"],
        "a2_minus_b2": eff["a"] * eff["a"] - eff["b"] * eff["b"],
    }
    _emit(_json_doc(payload), args.output)
    return 0


def _cmd_derive_params(args) -> int:
    eff = _effective(
        args,
        {
            "g1": _REQUIRED,
            "g2": _REQUIRED,
            "g3": _REQUIRED,
            "lambda": _REQUIRED,
            "lambda3": _REQUIRED,
            "omega-tilde": _REQUIRED,
        },
    )
    rates = derive_params(
        StochasticFieldParams(
            g1=eff["g1"],
            g2=eff["g2"],
            g3=eff["g3"],
            lam=eff["lambda"],
            lam3=eff["lambda3"],
            omega_tilde=eff["omega-tilde"],
        )
    )
    payload = {
        "schema": SCHEMA_VERSION,
        "omega": rates.omega,
        "alpha1": rates.alpha1,
        "alpha2": rates.alpha2,
        "a": rates.a,
        "b_raw": rates.b_raw,
        "b_abs": abs(rates.b_raw),
    }
    _emit(_json_doc(payload), args.output)
    return 0


def _check_grid(steps: int, t_max: float, minimum: int = 1) -> None:
    if steps < minimum:
        raise ValueError(f"steps must be >= {minimum}, got {steps}")
    if not t_max > 0.0:
        raise ValueError(f"time horizon must be > 0, got {t_max}")


def _cmd_eigs(args) -> int:
    eff = _effective(
        args,
        {"a": _REQUIRED, "b": _REQUIRED, "omega": 1.0, "mu": 1.0, "t-max": 5.0, "steps": 1000},
    )
    mu = eff["mu"]
    if not (0.0 <= mu <= 1.0):
        raise ValueError(f"mu must lie in [0, 1], got {mu}")
    _check_grid(eff["steps"], eff["t-max"])
    p = ModelParams(eff["a"], eff["b"], eff["omega"])
    header = ["t", "e1", "e2", "e3", "e4", "concurrence"]
    rows = []
    json_rows = []
    for k in range(eff["steps"] + 1):
        t = k * eff["t-max"] / eff["steps"]
        eigs = eigenvalues_closed_form(p, mu, t)
        if min(eigs) < bipartite.ISOTROPIC_EIG_FLOOR:
            conc_str, conc_val = "NA", None
        else:
            conc_val = max(0.0, float(bipartite._concurrence_gap(p, mu, t)))
            conc_str = _fmt(conc_val)
        rows.append([_fmt(t)] + [_fmt(e) for e in eigs] + [conc_str])
        json_rows.append([t, *eigs, conc_val])
    if args.format == "json":
        _emit(_json_doc({"schema": SCHEMA_VERSION, "columns": header, "rows": json_rows}), args.output)
    else:
        _emit(_csv(header, rows), args.output)
    return 0


def _cmd_windows(args) -> int:
    eff = _effective(
        args,
        {"a": _REQUIRED, "b": _REQUIRED, "omega": 1.0, "t-max-offset": None, "steps": 4000},
    )
    p = ModelParams(eff["a"], eff["b"], eff["omega"])
    horizon = eff["t-max-offset"]
    if horizon is None:
        horizon = math.pi / p.Omega
    _check_grid(eff["steps"], horizon, minimum=2)
    report = detect_windows(p, horizon, horizon / eff["steps"])
    offsets = np.linspace(0.0, horizon, eff["steps"] + 1)
    f, g, headroom = window_functions(p, offsets)
    header = ["t_offset", "f", "g", "headroom"]
    if args.format == "json":
        payload = {
            "schema": SCHEMA_VERSION,
            "columns": header,
            "rows": [[float(t), float(fv), float(gv), float(hv)]
                     for t, fv, gv, hv in zip(offsets, f, g, headroom)],
            "report": _report_payload(report),
        }
        _emit(_json_doc(payload), args.output)
    else:
        rows = [
            [_fmt(t), _fmt(fv), _fmt(gv), _fmt(hv)]
            for t, fv, gv, hv in zip(offsets, f, g, headroom)
        ]
        text = _csv(header, rows)
        text += "# window_report: " + json.dumps(_report_payload(report)) + "\n"
        _emit(text, args.output)
    return 0


def _cmd_bounds(args) -> int:
    eff = _effective(args, {"a": _REQUIRED, "b": _REQUIRED, "omega": 1.0})
    p = ModelParams(eff["a"], eff["b"], eff["omega"])
    radius, t_prime = norm_bound_max(p)
    peak4, t_star = r4_max(p)
    report = detect_windows(p)
    payload = {
        "schema": SCHEMA_VERSION,
        "R": radius,
        "t_prime": t_prime,
        "R4": peak4,
        "t_star": t_star,
        "R4_inv": 1.0 / peak4,
        "mu_corrected": report.mu_upper_corrected,
    }
    _emit(_json_doc(payload), args.output)
    return 0


def _cmd_evolve(args) -> int:
    eff = _effective(
        args,
        {
            "a": _REQUIRED,
            "b": _REQUIRED,
            "omega": 1.0,
            "r1": 1.0 / math.sqrt(2.0),
            "r2": 1.0 / math.sqrt(2.0),
            "r3": 0.0,
            "t-max": 5.0,
            "steps": 1000,
        },
    )
    _check_grid(eff["steps"], eff["t-max"])
    p = ModelParams(eff["a"], eff["b"], eff["omega"])
    r0 = BlochVector(eff["r1"], eff["r2"], eff["r3"])
    times = np.linspace(0.0, eff["t-max"], eff["steps"] + 1)
    traj = bloch_trajectory(p, r0, times)
    norms = np.sqrt((traj * traj).sum(axis=1))
    header = ["t", "r1", "r2", "r3", "norm"]
    if args.format == "json":
        payload = {
            "schema": SCHEMA_VERSION,
            "columns": header,
            "rows": [[float(t), *map(float, row), float(n)]
                     for t, row, n in zip(times, traj, norms)],
        }
        _emit(_json_doc(payload), args.output)
    else:
        rows = [
            [_fmt(t), _fmt(row[0]), _fmt(row[1]), _fmt(row[2]), _fmt(n)]
            for t, row, n in zip(times, traj, norms)
        ]
        _emit(_csv(header, rows), args.output)
    return 0


def _verify_checks(p: ModelParams, mu: float, tol_ode: float, t_max: float, step: float):
    """Run the oracle cross-check suite; yields (name, passed, detail)."""
    tol_alg = 1e-10
    tol_max = 1e-6

    cfg = IntegratorConfig(step=step, t_max=t_max)
    r0 = BlochVector(1.0 / math.sqrt(2.0), 1.0 / math.sqrt(2.0), 0.0)
    traj = integrate_master_2x2(p, r0.to_density_matrix(), cfg)
    numeric = np.stack(
        [
            2.0 * traj.states[:, 0, 1].real,
            -2.0 * traj.states[:, 0, 1].imag,
            2.0 * traj.states[:, 0, 0].real - 1.0,
        ],
        axis=-1,
    )
    analytic = bloch_trajectory(p, r0, traj.times)
    dev = float(np.abs(numeric - analytic).max())
    yield "propagator_vs_rk4", dev <= tol_ode, f"max_dev={dev:.3e} tol={tol_ode:.1e}"

    sample_ts = np.linspace(0.0, t_max, 9)
    dev = 0.0
    for t in sample_ts:
        closed = np.array(eigenvalues_closed_form(p, mu, float(t)))
        numeric = qmat.hermitian_eigenvalues(evolve_isotropic(p, mu, float(t)))
        dev = max(dev, float(np.abs(np.sort(closed) - np.sort(numeric)).max()))
    yield "eigenvalues_vs_jacobi", dev <= tol_alg, f"max_dev={dev:.3e} tol={tol_alg:.1e}"

    # Check at the requested mu and just inside the positivity bound, where
    # the concurrence is typically nonzero.
    dev = 0.0
    compared = 0
    for mu_check in dict.fromkeys((mu, 0.999 * positivity_bound(p))):
        for t in sample_ts:
            eigs = eigenvalues_closed_form(p, mu_check, float(t))
            if min(eigs) < bipartite.ISOTROPIC_EIG_FLOOR:
                continue
            closed = max(0.0, float(bipartite._concurrence_gap(p, mu_check, float(t))))
            woot = concurrence_wootters(evolve_isotropic(p, mu_check, float(t)))
            dev = max(dev, abs(closed - woot))
            compared += 1
    yield (
        "concurrence_closed_vs_wootters",
        dev <= tol_alg and compared > 0,
        f"max_dev={dev:.3e} tol={tol_alg:.1e} points={compared}",
    )

    bracket = math.pi / (2.0 * p.Omega)
    radius, t_prime = norm_bound_max(p)
    t_num, v_num = maximize_scalar(lambda t: math.sqrt(norm_bound_curve(p, t)), 0.0, bracket)
    dev_r = abs(radius - v_num) if p.a >= p.b else max(abs(radius - v_num), abs(t_prime - t_num))
    peak4, t_star = r4_max(p)
    t_num, v_num = maximize_scalar(lambda t: r4_curve(p, t), 0.0, bracket)
    dev_4 = max(abs(peak4 - v_num), abs(t_star - t_num))
    peak_g, t_bar = rate_factor_max(p)
    t_num, v_num = maximize_scalar(lambda t: concurrence_rate_factor(p, t), 0.0, bracket)
    dev_g = max(abs(peak_g - v_num), abs(t_bar - t_num))
    dev = max(dev_r, dev_4, dev_g)
    yield "maxima_vs_golden_section", dev <= tol_max, f"max_dev={dev:.3e} tol={tol_max:.1e}"

    ok = all(
        partial_transpose_spectrum_check(p, mu, float(t), tol=tol_alg) for t in sample_ts
    )
    yield "ppt_mu_sign_symmetry", ok, f"tol={tol_alg:.1e}"


def _cmd_verify(args) -> int:
    eff = _effective(
        args,
        {
            "a": _REQUIRED,
            "b": _REQUIRED,
            "omega": 1.0,
            "mu": 0.2,
            "tol": 1e-8,
            "t-max": 2.0,
            "step": 1e-4,
        },
    )
    mu = eff["mu"]
    if not (0.0 <= mu <= 1.0):
        raise ValueError(f"mu must lie in [0, 1], got {mu}")
    p = ModelParams(eff["a"], eff["b"], eff["omega"])
    failures = 0
    for name, passed, detail in _verify_checks(p, mu, eff["tol"], eff["t-max"], eff["step"]):
        print(f"{'PASS' if passed else 'FAIL'}  {name:<32} {detail}")
        failures += 0 if passed else 1
    if failures:
        print(f"{failures} check(s) failed")
        return 1
    print("all checks passed")
    return 0


def _add_common(sub: argparse.ArgumentParser, *, fmt: bool) -> None:
    sub.add_argument("--config", help="JSON file whose keys mirror the long flag names")
    sub.add_argument("--output", help="output path (default: stdout)")
    if fmt:
        sub.add_argument("--format", choices=("csv", "json"), default="csv")


def _add_model_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--a", type=float, help="damping rate a >= 0")
    sub.add_argument("--b", type=float, help="off-diagonal rate b")
    sub.add_argument("--omega", type=float, help="precession frequency (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qslip",
        description="Dephasing-qubit semigroup, slippage channel, and entanglement diagnostics.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("classify", help="positivity class of the map family")
    _add_model_flags(sub)
    _add_common(sub, fmt=False)
    sub.set_defaults(handler=_cmd_classify)

    sub = subs.add_parser("derive-params", help="model rates from stochastic-field constants")
    sub.add_argument("--g1", type=float, help="first transverse noise strength")
    sub.add_argument("--g2", type=float, help="second transverse noise strength")
    sub.add_argument("--g3", type=float, help="longitudinal noise strength")
    sub.add_argument("--lambda", type=float, help="transverse correlation rate")
    sub.add_argument("--lambda3", type=float, help="longitudinal correlation rate")
    sub.add_argument("--omega-tilde", type=float, help="bare precession frequency")
    _add_common(sub, fmt=False)
    sub.set_defaults(handler=_cmd_derive_params)

    sub = subs.add_parser("eigs", help="spectrum and concurrence of the evolved isotropic state")
    _add_model_flags(sub)
    sub.add_argument("--mu", type=float, help="contraction strength in [0, 1] (default 1)")
    sub.add_argument("--t-max", type=float, help="time horizon (default 5)")
    sub.add_argument("--steps", type=int, help="number of grid steps (default 1000)")
    _add_common(sub, fmt=True)
    sub.set_defaults(handler=_cmd_eigs)

    sub = subs.add_parser("windows", help="entanglement-creation window diagnostics")
    _add_model_flags(sub)
    sub.add_argument("--t-max-offset", type=float, help="offset horizon (default pi/Omega)")
    sub.add_argument("--steps", type=int, help="number of grid steps (default 4000)")
    _add_common(sub, fmt=True)
    sub.set_defaults(handler=_cmd_windows)

    sub = subs.add_parser("bounds", help="critical radii and contraction bounds")
    _add_model_flags(sub)
    _add_common(sub, fmt=False)
    sub.set_defaults(handler=_cmd_bounds)

    sub = subs.add_parser("verify", help="run the oracle cross-check suite")
    _add_model_flags(sub)
    sub.add_argument("--mu", type=float, help="contraction strength (default 0.2)")
    sub.add_argument("--tol", type=float, help="tolerance for the ODE checks (default 1e-8)")
    sub.add_argument("--t-max", type=float, help="integration horizon (default 2)")
    sub.add_argument("--step", type=float, help="RK4 step (default 1e-4)")
    _add_common(sub, fmt=False)
    sub.set_defaults(handler=_cmd_verify)

    sub = subs.add_parser("evolve", help="Bloch-vector trajectory of a single qubit")
    _add_model_flags(sub)
    sub.add_argument("--r1", type=float, help="initial r1 (default 1/sqrt(2))")
    sub.add_argument("--r2", type=float, help="initial r2 (default 1/sqrt(2))")
    sub.add_argument("--r3", type=float, help="initial r3 (default 0)")
    sub.add_argument("--t-max", type=float, help="time horizon (default 5)")
    sub.add_argument("--steps", type=int, help="number of grid steps (default 1000)")
    _add_common(sub, fmt=True)
    sub.set_defaults(handler=_cmd_evolve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
