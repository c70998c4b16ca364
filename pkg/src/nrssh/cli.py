"""Command-line front end.

    nrssh <subcommand> --config PATH --out DIR [--set section.key=value ...]

Subcommands: spectrum, evolve, synth, circuit-evolve, aipr, sweep.
Exit status: 0 success, 1 validation error, 2 numerical failure, 3 I/O error.
"""
import argparse
from dataclasses import replace
from pathlib import Path
import sys

import numpy as np

from . import circuit_dynamics as cdyn
from .circuit import CircuitDesign, default_lambda, synthesize
from .config import ExperimentConfig, load_config
from .eigen import eigensystem, initial_state_weights
from .errors import ConvergenceError, NumericalError, RealizabilityError, ValidationError
from .io import write_csv, write_json
from .lattice import ModelParams, has_left_end_state
from .netlist import export_netlist, node_names
from .quantum import DEFAULT_N_TIMES, DEFAULT_T_END, end_survival, evolve

EXIT_OK, EXIT_VALIDATION, EXIT_NUMERICAL, EXIT_IO = 0, 1, 2, 3

COMPONENT_HEADER = ["cell_index", "C_A_F", "C_B_F", "D_A_F", "D_B_F", "L_A_H", "L_B_H"]


def _site_state(p: ModelParams, cfg: ExperimentConfig):
    site = cfg.run_int("initial_site", 1)
    if not 1 <= site <= p.dim:
        raise ValidationError(f"{cfg.where('run', 'initial_site')}: initial_site must be in 1..{p.dim}")
    psi0 = np.zeros(p.dim, dtype=complex)
    psi0[site - 1] = 1.0
    return psi0


def _design(cfg: ExperimentConfig, p: ModelParams = None, lam=None) -> CircuitDesign:
    p = cfg.model if p is None else p
    lam = cfg.circuit.lam if lam is None else lam
    try:
        return synthesize(p, lam=lam, ref_L=cfg.circuit.ref_L, ref_C=cfg.circuit.ref_C)
    except RealizabilityError as exc:
        raise RealizabilityError(f"{cfg.where('circuit', 'lambda')}: {exc}") from exc


def _time_grid(cfg, t_end_default, n_default):
    t_end = cfg.run_float("t_end", t_end_default)
    n = cfg.run_int("n_times", n_default)
    if n < 1:
        raise ValidationError(f"{cfg.where('run', 'n_times')}: n_times must be >= 1")
    if n == 1:
        return np.array([0.0])
    if t_end <= 0:
        raise ValidationError(f"{cfg.where('run', 't_end')}: t_end must be positive")
    return np.linspace(0.0, t_end, n)


def cmd_spectrum(cfg: ExperimentConfig, out: Path):
    p = cfg.model
    es = eigensystem(p)
    w = initial_state_weights(es, _site_state(p, cfg))
    files = [write_csv(out / "spectrum.csv", ["s", "E_s", "w_s"],
                       [(s + 1, es.energies[s], w[s]) for s in range(es.dim)])]
    if cfg.run_bool("dump_eigenvectors", False):
        header = ["site"]
        for s in range(es.dim):
            header += [f"re_{s + 1}", f"im_{s + 1}"]
        rows = []
        for i in range(es.dim):
            row = [i + 1]
            for s in range(es.dim):
                v = complex(es.right_vectors[i, s])
                row += [v.real, v.imag]
            rows.append(row)
        files.append(write_csv(out / "eigenvectors.csv", header, rows))
    return files


def cmd_evolve(cfg: ExperimentConfig, out: Path):
    p = cfg.model
    times = _time_grid(cfg, DEFAULT_T_END, DEFAULT_N_TIMES)
    traj = evolve(p, _site_state(p, cfg), times)
    header = ["nu_t"] + [f"I_{i + 1}" for i in range(p.dim)]
    rows = [[traj.times[k], *traj.intensities[k]] for k in range(times.size)]
    meta = dict(traj.metadata)
    meta["initial_site"] = cfg.run_int("initial_site", 1)
    meta["intensity_reference"] = traj.intensity_reference
    return [write_csv(out / "intensities.csv", header, rows),
            write_json(out / "evolve_meta.json", meta)]


def cmd_synth(cfg: ExperimentConfig, out: Path):
    d = _design(cfg)
    table = write_csv(out / "components.csv", COMPONENT_HEADER, d.table())
    netlist = out / "circuit.cir"
    netlist.write_text(export_netlist(d, cfg.circuit.v0), encoding="utf-8", newline="\n")
    return [table, netlist]


def _aipr_report(cfg, d, result, t):
    return {
        "params": d.params.as_dict(),
        "lambda": d.lam,
        "N": d.n_cells,
        "t": t,
        "aipr": result.aipr,
        "quadrature_step": result.step,
        "halving_delta": result.halved_delta,
        "ref_L": d.ref_L,
        "ref_C": d.ref_C,
        "v0": cfg.circuit.v0,
    }


def _aipr_settings(cfg, t_default):
    t = cfg.run_float("aipr_t", t_default)
    step = cfg.run_float("quadrature_step", cdyn.DEFAULT_QUADRATURE_STEP)
    if step <= 0:
        raise ValidationError(f"{cfg.where('run', 'quadrature_step')}: quadrature_step must be positive")
    return t, step


def cmd_circuit_evolve(cfg: ExperimentConfig, out: Path):
    d = _design(cfg)
    v0 = cfg.circuit.v0
    V0, Vdot0 = cdyn.prepare_initial_state(d, v0)
    ms = cdyn.modal_solve(d, d.params, V0, Vdot0)
    times = _time_grid(cfg, 100.0, 10001)
    traj = cdyn.evaluate(ms, times)
    names = node_names(d.n_cells)
    files = [write_csv(out / "circuit_trajectory.csv", ["omega0_t"] + [f"V_{n}" for n in names],
                       [[traj.times[k], *traj.voltages[k]] for k in range(times.size)])]
    t, step = _aipr_settings(cfg, float(times[-1]) if times[-1] > 0 else 100.0)
    profile = cdyn.averaged_voltages(ms, t, step)
    rel = profile / v0 if v0 != 0 else np.full_like(profile, np.nan)
    files.append(write_csv(out / "vbar_profile.csv", ["node", "vbar_V", "vbar_rel"],
                           [[names[i], profile[i], "" if v0 == 0 else rel[i]] for i in range(profile.size)]))
    result = cdyn.switch_aipr(d, v0, t, step)
    files.append(write_json(out / "aipr.json", _aipr_report(cfg, d, result, t)))
    return files


def cmd_aipr(cfg: ExperimentConfig, out: Path):
    d = _design(cfg)
    t, step = _aipr_settings(cfg, 100.0)
    result = cdyn.switch_aipr(d, cfg.circuit.v0, t, step)
    return [write_json(out / "aipr.json", _aipr_report(cfg, d, result, t))]


def _sweep_row(cfg, k1, k2, lam):
    nu = cfg.model.nu
    row = {"kappa1": k1, "kappa2": k2, "lambda": None, "has_end_state": None,
           "end_survival": None, "aipr": None, "error": ""}
    errors = []
    try:
        pq = ModelParams(nu, k1, k2, cfg.run_int("quantum_n_cells", cfg.model.n_cells))
    except ValidationError as exc:
        row["error"] = f"validation: {exc}"
        return row
    row["has_end_state"] = has_left_end_state(pq).present
    try:
        t_end = cfg.run_float("quantum_t_end", DEFAULT_T_END)
        psi0 = np.zeros(pq.dim, dtype=complex)
        psi0[0] = 1.0
        traj = evolve(pq, psi0, np.array([0.0, t_end]))
        row["end_survival"] = float(end_survival(traj)[-1])
    except (ValidationError, ArithmeticError) as exc:
        errors.append(f"quantum: {exc}")
    try:
        pc = replace(pq, n_cells=cfg.run_int("circuit_n_cells", cfg.model.n_cells))
        if lam is None:
            lam = cfg.circuit.lam
        if lam is None:
            lam = default_lambda(pc) if pc.kappa1 >= pc.kappa2 > 0 else 1.0 + max(k1, k2) / nu
        d = synthesize(pc, lam, cfg.circuit.ref_L, cfg.circuit.ref_C)
        row["lambda"] = d.lam
        t, step = _aipr_settings(cfg, 100.0)
        row["aipr"] = cdyn.switch_aipr(d, 1.0, t, step).aipr
    except (ValidationError, ArithmeticError) as exc:
        errors.append(f"circuit: {exc}")
    row["error"] = "; ".join(errors)
    return row


def cmd_sweep(cfg: ExperimentConfig, out: Path):
    header = ["kappa1", "kappa2", "lambda", "has_end_state", "end_survival", "aipr", "error"]
    rows = [_sweep_row(cfg, k1, k2, lam) for k1, k2, lam in cfg.sweep_points()]
    return [write_csv(out / "sweep.csv", header, [[r[h] for h in header] for r in rows])]


COMMANDS = {
    "spectrum": cmd_spectrum,
    "evolve": cmd_evolve,
    "synth": cmd_synth,
    "circuit-evolve": cmd_circuit_evolve,
    "aipr": cmd_aipr,
    "sweep": cmd_sweep,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="nrssh", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", required=True, type=Path, help="experiment configuration file")
        sp.add_argument("--out", required=True, type=Path, help="output directory")
        sp.add_argument("--set", action="append", default=[], metavar="SECTION.KEY=VALUE",
                        help="override a configuration value")
    return parser


def _overrides(items):
    out = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep:
            raise ValidationError(f"--set expects SECTION.KEY=VALUE, got {item!r}")
        out[key.strip()] = value.strip()
    return out


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config, _overrides(args.set))
        args.out.mkdir(parents=True, exist_ok=True)
        files = COMMANDS[args.command](cfg, args.out)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ConvergenceError, NumericalError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    for f in files:
        print(f)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
