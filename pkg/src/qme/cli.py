"""Command-line front end: one subcommand per engine, CSV on stdout or to a file.

Every CSV starts with a ``#`` line echoing the full configuration, then a
header row; floats carry 12 significant digits. Exit status is 0 on success,
2 on argument errors and 1 on numerical failures.
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import sys

import numpy as np

from qme import __version__, continuum, elevator, feedback, piston, strokes, trajectories
from qme.exceptions import EngineError, NumericalError

FEEDBACK_COLUMNS = ("theta", "W", "EM", "SM", "W_reset", "eta", "power")


def _fmt(value):
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.12g}"


def write_csv(out, config: dict, columns, rows) -> None:
    out.write("# qme " + " ".join(f"{k}={v}" for k, v in config.items()) + "\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])


def _linspace(lo, hi, steps):
    if steps < 1:
        raise EngineError("--steps must be at least 1")
    if steps == 1:
        return [lo]
    return [float(v) for v in np.linspace(lo, hi, steps)]


def _geomspace(lo, hi, steps):
    if steps < 1:
        raise EngineError("--steps must be at least 1")
    if steps == 1:
        return [lo]
    return [float(v) for v in np.geomspace(lo, hi, steps)]


def cmd_qubit_zeno(args):
    thetas = _geomspace(args.theta_min, args.theta_max, args.steps)
    rows = [(m.theta, m.work_extracted, m.quantum_heat, m.outcome_entropy, m.reset_cost, m.efficiency, m.cycle_power)
            for m in feedback.zeno_sweep(args.eps, args.temp, thetas)]
    return FEEDBACK_COLUMNS, rows


def cmd_piston_sweep(args):
    eps = _linspace(args.eps_min, args.eps_max, args.steps)
    return piston.CSV_COLUMNS, [m.row() for m in piston.sweep(eps, args.n_points)]


def cmd_elevator(args):
    params = continuum.LinearPotentialParams(args.force, args.mass)
    x0 = params.length_scale
    if args.w_min is not None or args.w_max is not None:
        if args.w_min is None or args.w_max is None:
            raise EngineError("--w-min and --w-max go together")
        ws = _linspace(args.w_min, args.w_max, args.steps)
    else:
        ws = [args.w]
    metrics = elevator.window_sweep(params, args.eps * x0, [w * x0 for w in ws], args.n_points)
    return elevator.CSV_COLUMNS, [m.row() for m in metrics]


def cmd_four_stroke(args):
    recs = strokes.stroke_sweep("four", strokes.sweep_angles(args.steps), args.eps, args.temp)
    return strokes.CSV_COLUMNS, [r.row() for r in recs]


def cmd_three_stroke(args):
    recs = strokes.stroke_sweep("three", strokes.sweep_angles(args.steps), args.eps, args.temp)
    return strokes.CSV_COLUMNS, [r.row() for r in recs]


def cmd_otto(args):
    if args.omega_f_max is None:
        finals = [args.omega_f]
    else:
        finals = _linspace(args.omega_f, args.omega_f_max, args.steps)
    rows = []
    for wf in finals:
        rec = strokes.otto_four_stroke(args.omega_i, wf, args.temp)
        rows.append((args.omega_i, wf, rec.w1, rec.e_m, rec.w2, rec.q, rec.eta,
                     strokes.otto_efficiency(args.omega_i, wf)))
    return strokes.OTTO_COLUMNS, rows


def cmd_mc_piston(args):
    grid = piston.piston_grid(args.eps, args.n_points)
    metrics = piston.numeric_metrics(args.eps, grid)
    rec = trajectories.run_piston_trajectories(args.eps, args.n, args.seed, metrics)
    return trajectories.CSV_COLUMNS, rec.rows()


def cmd_mc_feedback(args):
    rec = trajectories.run_feedback_trajectories(args.theta, args.eps, args.n, args.seed)
    return trajectories.CSV_COLUMNS, rec.rows()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qme", description="Quantum measurement engine simulators (CSV output).")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("-o", "--output", default=None, help="CSV path (default: stdout)")
        p.set_defaults(func=func)
        return p

    p = add("qubit-zeno", cmd_qubit_zeno, "feedback qubit engine, partial-extraction sweep over theta")
    p.add_argument("--eps", type=float, default=1.0, help="qubit splitting")
    p.add_argument("--temp", type=float, default=1.0, help="memory bath temperature")
    p.add_argument("--theta-min", type=float, default=1e-4)
    p.add_argument("--theta-max", type=float, default=math.pi / 2)
    p.add_argument("--steps", type=int, default=41, help="geometric theta grid size")

    p = add("piston-sweep", cmd_piston_sweep, "atom-and-piston engine versus eps/L")
    p.add_argument("--eps-min", type=float, default=0.02)
    p.add_argument("--eps-max", type=float, default=0.9)
    p.add_argument("--steps", type=int, default=45)
    p.add_argument("--n-points", type=int, default=continuum.DEFAULT_POINTS)

    p = add("elevator", cmd_elevator, "elevator engine; lengths in units of x0")
    p.add_argument("--eps", type=float, default=0.5)
    p.add_argument("--w", type=float, default=2.0)
    p.add_argument("--w-min", type=float, default=None)
    p.add_argument("--w-max", type=float, default=None)
    p.add_argument("--steps", type=int, default=20)
    p.add_argument("--force", type=float, default=1.0)
    p.add_argument("--mass", type=float, default=1.0)
    p.add_argument("--n-points", type=int, default=continuum.DEFAULT_POINTS)

    for name, func, default_steps in (("four-stroke", cmd_four_stroke, 90), ("three-stroke", cmd_three_stroke, 90)):
        p = add(name, func, f"{name} unread-measurement qubit engine versus angle")
        p.add_argument("--steps", type=int, default=default_steps)
        p.add_argument("--eps", type=float, default=1.0)
        p.add_argument("--temp", type=float, default=1.0)

    p = add("otto", cmd_otto, "level-spacing 4-stroke engine with sigma_x measurement")
    p.add_argument("--omega-i", type=float, default=1.0)
    p.add_argument("--omega-f", type=float, default=2.0)
    p.add_argument("--omega-f-max", type=float, default=None, help="sweep omega_f up to this value")
    p.add_argument("--steps", type=int, default=20)
    p.add_argument("--temp", type=float, default=1.0)

    p = add("mc-piston", cmd_mc_piston, "Monte Carlo piston cycles")
    p.add_argument("--eps", type=float, default=0.1, help="eps/L")
    p.add_argument("--n", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=trajectories.DEFAULT_SEED)
    p.add_argument("--n-points", type=int, default=continuum.DEFAULT_POINTS)

    p = add("mc-feedback", cmd_mc_feedback, "Monte Carlo feedback qubit cycles")
    p.add_argument("--theta", type=float, default=0.2)
    p.add_argument("--eps", type=float, default=1.0)
    p.add_argument("--n", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=trajectories.DEFAULT_SEED)
    return parser


def _config(args) -> dict:
    skip = {"func", "output"}
    return {"command": args.command, **{k: v for k, v in vars(args).items() if k not in skip | {"command"}}}


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        columns, rows = args.func(args)
        rows = list(rows)
    except NumericalError as exc:
        name = f" (parameter: {exc.parameter})" if exc.parameter else ""
        print(f"qme: numerical failure{name}: {exc}", file=sys.stderr)
        return 1
    except EngineError as exc:
        parser.error(str(exc))
    if args.output is None:
        write_csv(sys.stdout, _config(args), columns, rows)
    else:
        with open(args.output, "w", newline="") as fh:
            write_csv(fh, _config(args), columns, rows)
    return 0


def main():
    try:
        code = run()
        sys.stdout.flush()
    except BrokenPipeError:
        # downstream reader closed early (e.g. `| head`)
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        code = 0
    sys.exit(code)
