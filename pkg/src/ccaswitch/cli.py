"""Command-line front end: sweeps, oracle runs, and coupler design reports.

Subcommands
-----------
dispersion          band structure of the uniform chain
transmission-sweep  closed-form T, R over a (lambda, k) grid
scatter-sim         wavepacket oracle vs the closed form
coupler-design      flux sweep of the full circuit derivation chain
switch-map          end-to-end flux -> g -> lambda -> T characteristic
validate-adiabatic  three-mode vs effective two-mode comparison

Exit codes: 0 success, 2 config error, 3 physics precondition violation,
4 contract violation (e.g. oracle mismatch beyond tolerance).
"""

import argparse
import json
import math
import sys

import numpy as np

from .circuit import (CircuitParams, at_flux, derive_coupler, flux_to_lambda,
                      paper_parameters)
from .config import load_config, parse_number
from .dynamics import (default_wavepacket, measure_transmission,
                       validate_adiabatic_elimination)
from .errors import ConfigError, ContractViolation, PreconditionError
from .lattice import LatticeSpec, dispersion, group_velocity
from .scattering import reflection, transmission

ORACLE_TOLERANCE = 0.02


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _emit(columns, rows, summary, args) -> None:
    if args.format == "json":
        payload = {"columns": list(columns),
                   "rows": [list(r) for r in rows],
                   "summary": summary}
        text = json.dumps(payload, indent=2, default=_fmt) + "\n"
    else:
        lines = [",".join(columns)]
        lines += [",".join(_fmt(v) for v in row) for row in rows]
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cfg(args) -> dict:
    return load_config(args.config) if args.config else {}


def _get_list(cfg, key, default):
    val = cfg.get(key, default)
    if isinstance(val, (int, float)):
        return [float(val)]
    return [float(v) for v in val]


def _get_num(cfg, key, default):
    val = cfg.get(key, default)
    if isinstance(val, str):
        val = parse_number(val)
    return float(val)


def cmd_dispersion(args) -> int:
    cfg = _cfg(args)
    omega = _get_num(cfg, "lattice.omega", 0.0)
    t = _get_num(cfg, "lattice.t", 1.0)
    if "dispersion.k" in cfg:
        ks = _get_list(cfg, "dispersion.k", [])
    else:
        n_k = int(_get_num(cfg, "dispersion.n_k", 201))
        ks = list(np.linspace(-math.pi, math.pi, n_k + 1)[1:])
    rows = [(k, float(dispersion(k, omega, t)), float(group_velocity(k, t)))
            for k in ks]
    _emit(["k", "energy", "group_velocity"], rows,
          {"omega": omega, "t": t, "n_points": len(rows)}, args)
    return 0


def cmd_transmission_sweep(args) -> int:
    cfg = _cfg(args)
    ks = _get_list(cfg, "sweep.k", [0.01, math.pi / 8, math.pi / 4, math.pi / 2])
    lo = _get_num(cfg, "sweep.lambda_min", -1.0)
    hi = _get_num(cfg, "sweep.lambda_max", 6.0)
    step = _get_num(cfg, "sweep.lambda_step", 0.01)
    if step <= 0 or hi < lo:
        raise ConfigError(f"invalid lambda grid: [{lo}, {hi}] step {step}")
    n = int(round((hi - lo) / step))
    rows = []
    for i in range(n + 1):
        lam = lo + i * step
        for k in ks:
            t_coef = transmission(lam, k)
            r_coef = reflection(lam, k)
            if abs(t_coef + r_coef - 1.0) > 1e-12:
                raise ContractViolation(
                    f"T + R = {t_coef + r_coef} != 1 at lam={lam}, k={k}")
            rows.append((lam, k, t_coef, r_coef))
    _emit(["lambda", "k", "T", "R"], rows, {"n_rows": len(rows)}, args)
    return 0


def cmd_scatter_sim(args) -> int:
    cfg = _cfg(args)
    lams = _get_list(cfg, "scatter.lambda", [-1.0, -0.75, -0.5, 0.0, 0.5, 1.0, 2.0])
    k0s = _get_list(cfg, "scatter.k0", [math.pi / 8, math.pi / 4, math.pi / 2])
    n_sites = int(_get_num(cfg, "scatter.n_sites", 401))
    sigma = _get_num(cfg, "scatter.sigma_x", 20.0)
    t = _get_num(cfg, "lattice.t", 1.0)
    omega = _get_num(cfg, "lattice.omega", 0.0)

    rows = []
    worst = 0.0
    for lam in lams:
        spec = LatticeSpec(n_sites=n_sites, cavity_frequency=omega, hopping=t,
                           defect_bond_index=n_sites // 2, lam=lam)
        for k0 in k0s:
            result = measure_transmission(spec, wp=default_wavepacket(spec, k0, sigma))
            t_analytic = transmission(lam, k0)
            err = abs(result.transmitted_probability - t_analytic)
            worst = max(worst, err)
            rows.append((lam, k0, t_analytic, result.transmitted_probability,
                         err, n_sites, sigma, result.norm_drift))
    summary = {"max_abs_error": worst, "tolerance": ORACLE_TOLERANCE,
               "n_runs": len(rows)}
    _emit(["lambda", "k0", "T_analytic", "T_measured", "abs_error",
           "n_sites", "sigma_x", "norm_drift"], rows, summary, args)
    if worst > ORACLE_TOLERANCE:
        raise ContractViolation(
            f"oracle mismatch: max |T_measured - T_analytic| = {worst:.4f} "
            f"exceeds {ORACLE_TOLERANCE}")
    return 0


def _circuit_from_config(cfg, units: str) -> CircuitParams:
    base = paper_parameters(units)
    if not any(key.startswith("circuit.") for key in cfg):
        return base
    kwargs = dict(
        tlr_frequency=_get_num(cfg, "circuit.omega", base.tlr_frequency),
        tlr_total_capacitance=_get_num(cfg, "circuit.c0d",
                                       base.tlr_total_capacitance),
        coupling_capacitance_left=_get_num(cfg, "circuit.c_l",
                                           base.coupling_capacitance_left),
        coupling_capacitance_right=_get_num(cfg, "circuit.c_r",
                                            base.coupling_capacitance_right),
        units=units,
    )
    if "circuit.c_j" in cfg:
        kwargs["junction_capacitance"] = _get_num(cfg, "circuit.c_j", 0.0)
    if "circuit.e_c" in cfg:
        kwargs["charging_energy_override"] = _get_num(cfg, "circuit.e_c", 0.0)
    elif "circuit.c_j" not in cfg:
        kwargs["charging_energy_override"] = base.charging_energy_override
    if "circuit.e_j0" in cfg:
        kwargs["josephson_energy_scale"] = _get_num(cfg, "circuit.e_j0", 0.0)
    else:
        e_c_ref = kwargs.get("charging_energy_override")
        kwargs["josephson_energy_scale"] = (
            base.josephson_energy_scale if e_c_ref is None else 1e3 * e_c_ref)
    return CircuitParams(**kwargs)


def _flux_grid(cfg):
    if "design.f" in cfg:
        return [float(f) for f in _get_list(cfg, "design.f", [])]
    cos_lo = _get_num(cfg, "design.cos_min", 0.02)
    cos_hi = _get_num(cfg, "design.cos_max", 1.0)
    n = int(_get_num(cfg, "design.n_points", 50))
    if not (-1.0 <= cos_lo <= 1.0 and -1.0 <= cos_hi <= 1.0) or n < 1:
        raise ConfigError("design.cos_min/cos_max must lie in [-1, 1], n >= 1")
    cosses = np.linspace(cos_lo, cos_hi, n)
    return [float(math.acos(c) / math.pi) for c in cosses]


COUPLER_COLUMNS = [
    "f", "cos_pi_f", "e_c", "e_j_eff", "omega_b", "omega_l", "omega_r",
    "omega_b_prime", "g_l", "g_r", "delta_l", "delta_r", "omega_l_prime",
    "omega_r_prime", "g_eff", "omega_b_doubleprime", "harmonic_regime_ok",
    "dispersive_regime_ok",
]


def cmd_coupler_design(args) -> int:
    cfg = _cfg(args)
    base = _circuit_from_config(cfg, args.units)
    rows = []
    g_values = []
    for f in _flux_grid(cfg):
        d = derive_coupler(at_flux(base, f))
        g_values.append(d.g_eff)
        rows.append((f, math.cos(math.pi * f), d.e_c, d.e_j_eff, d.omega_b,
                     d.omega_l, d.omega_r, d.omega_b_prime, d.g_l, d.g_r,
                     d.delta_l, d.delta_r, d.omega_l_prime, d.omega_r_prime,
                     d.g_eff, d.omega_b_doubleprime, d.harmonic_regime_ok,
                     d.dispersive_regime_ok))
    summary = {"g_min": min(g_values), "g_max": max(g_values),
               "n_points": len(rows)}
    _emit(COUPLER_COLUMNS, rows, summary, args)
    return 0


def cmd_switch_map(args) -> int:
    cfg = _cfg(args)
    base = _circuit_from_config(cfg, args.units)
    t = _get_num(cfg, "switch.t", 5e6)
    ks = _get_list(cfg, "switch.k", [math.pi / 4])
    rows = []
    for f in _flux_grid(cfg):
        lam, d = flux_to_lambda(at_flux(base, f), t)
        for k in ks:
            t_coef = transmission(lam, k)
            rows.append((f, math.cos(math.pi * f), d.g_eff, lam, k, t_coef,
                         d.harmonic_regime_ok, d.dispersive_regime_ok))
    _emit(["f", "cos_pi_f", "g", "lambda", "k", "T",
           "harmonic_regime_ok", "dispersive_regime_ok"],
          rows, {"t": t, "n_rows": len(rows)}, args)
    return 0


def cmd_validate_adiabatic(args) -> int:
    from .circuit import CouplerDerived
    cfg = _cfg(args)
    omega = _get_num(cfg, "adiabatic.omega", 0.0)
    delta = _get_num(cfg, "adiabatic.delta", 1.0)
    ratios = _get_list(cfg, "adiabatic.ratio", [10.0, 20.0, 40.0])
    rows = []
    for ratio in ratios:
        g_prime = delta / ratio
        circ = CouplerDerived.from_modes(omega, omega, omega + delta,
                                         -g_prime, -g_prime)
        report = validate_adiabatic_elimination(circ)
        rows.append((ratio, g_prime, report.effective_coupling,
                     report.full_transfer_time, report.effective_transfer_time,
                     report.transfer_time_rel_diff, report.max_cpb_population,
                     report.cpb_population_bound, report.valid, report.marginal))
    _emit(["delta_over_g", "g_prime", "g_eff", "t_full", "t_eff",
           "rel_diff", "max_cpb_population", "cpb_bound", "valid", "marginal"],
          rows, {"delta": delta, "omega": omega}, args)
    return 0


COMMANDS = {
    "dispersion": cmd_dispersion,
    "transmission-sweep": cmd_transmission_sweep,
    "scatter-sim": cmd_scatter_sim,
    "coupler-design": cmd_coupler_design,
    "switch-map": cmd_switch_map,
    "validate-adiabatic": cmd_validate_adiabatic,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ccaswitch",
        description="Single-photon quantum switch: scattering, oracle, "
                    "and coupler design sweeps.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="flat key=value or JSON config file")
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--format", choices=["csv", "json"], default="csv")
        p.add_argument("--units", choices=["paper", "si"], default="paper")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for sampling commands (reserved)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        _report_error("config", exc)
        return 2
    except PreconditionError as exc:
        _report_error("precondition", exc)
        return 3
    except ContractViolation as exc:
        _report_error("contract", exc)
        return 4
    except OSError as exc:
        _report_error("config", exc)
        return 2


def _report_error(kind: str, exc: Exception) -> None:
    sys.stderr.write(json.dumps({"error": kind, "message": str(exc)}) + "\n")


if __name__ == "__main__":
    sys.exit(main())
