"""Command-line entry point: ``dirac-aim <subcommand> ...``.

Exit status is 0 on success, 1 for parse or validation errors and 2 when the
solver fails (including when no bound state exists where one is needed).
"""
from __future__ import annotations

import argparse
import math
import sys
from dataclasses import fields

import numpy as np

from . import angular, radial
from .aim import AimDivergence, ConvergenceError
from .config import ConfigError, RunConfig, load_config
from .spectrum import ProblemConfig, solve_bound_states
from .tables import DOUBLET_Q, TABLE_IDS, TABLE_STEPS, TABLE_WINDOW, reproduction_report, run_table

EXIT_OK, EXIT_INPUT, EXIT_SOLVER = 0, 1, 2


class SolverFailure(RuntimeError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _grid(text: str):
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected r_min,r_max,count")
    try:
        r_min, r_max, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed grid {text!r}")
    if count < 1:
        raise argparse.ArgumentTypeError("grid is empty: count must be >= 1")
    if not (0 < r_min < r_max) and not (count == 1 and 0 < r_min == r_max):
        raise argparse.ArgumentTypeError("grid needs 0 < r_min < r_max")
    return r_min, r_max, count


def _values(text: str):
    try:
        vals = [float(v) for v in text.replace(" ", ",").split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed value list {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("empty value list")
    return vals


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dirac-aim", description="Bound states of the q-deformed Dirac problem via AIM.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="solve the bound states of a config")
    s.add_argument("config")

    t = sub.add_parser("table", help="recompute a reference table as CSV")
    t.add_argument("id", choices=TABLE_IDS)
    t.add_argument("--reading", choices=angular.READINGS, default=angular.DEFAULT_READING)
    t.add_argument("--q", type=float, default=1.0, help="q column of the doublet table")
    t.add_argument("--out", help="write CSV here instead of stdout")

    w = sub.add_parser("wavefunction", help="radial wave function of the lowest admissible state")
    w.add_argument("config")
    w.add_argument("--grid", type=_grid, help="r_min,r_max,count (default from the config)")
    w.add_argument("--state", type=int, default=0, help="index into the admissible states")

    a = sub.add_parser("angular", help="angular chain and one axis wave function")
    a.add_argument("config")
    a.add_argument("--axis", type=int, required=True)
    a.add_argument("--energy", type=float, help="energy at which to evaluate the chain")

    w2 = sub.add_parser("sweep", help="solve over a list of values of one parameter")
    w2.add_argument("config")
    w2.add_argument("--param", required=True)
    w2.add_argument("--values", type=_values, required=True)

    r = sub.add_parser("report", help="write the reproduction report (markdown)")
    r.add_argument("--out", help="output path (default stdout)")
    r.add_argument("--steps", type=int, default=TABLE_STEPS)
    return p


def _solve(run: RunConfig, problem: ProblemConfig | None = None):
    return solve_bound_states(problem or run.problem, run.E_min, run.E_max, run.steps,
                              diagnostics=run.diagnostics, threads=run.threads, z0=run.z0)


def _footer(run: RunConfig) -> str:
    return (f"# config_hash=sha256:{run.digest()} chain_reading={run.problem.reading} "
            f"window=[{run.E_min:g},{run.E_max:g}] steps={run.steps} residual_tol=1e-9*M^2")


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_solve(args) -> int:
    run = load_config(args.config)
    states = _solve(run)
    lines = ["E,n,n_l,ell_prime,residual,admissible,aim_delta"]
    for st in states:
        n_l = "-" if not st.n_l else ";".join(map(str, st.n_l))
        aim = "nan" if st.aim_delta is None else f"{st.aim_delta:.3e}"
        lines.append(f"{st.E:.10g},{st.n},{n_l},{st.ell_prime:.10g},{st.residual:.3e},{str(st.admissible).lower()},{aim}")
    if not states:
        lines.append("# no bound state in the energy window")
    for st in states:
        for reason in st.reasons:
            lines.append(f"# E={st.E:.10g}: {reason}")
    lines.append(_footer(run))
    _emit("\n".join(lines) + "\n", run.output)
    return EXIT_OK


def cmd_table(args) -> int:
    if args.id == "8" and args.q not in DOUBLET_Q:
        raise ConfigError(f"--q must be one of {sorted(DOUBLET_Q)} for table 8")
    out = run_table(args.id, args.reading, q=args.q)
    _emit(out.to_csv(), args.out)
    return EXIT_OK


def _pick_state(run: RunConfig, index: int):
    states = [s for s in solve_bound_states(run.problem, run.E_min, run.E_max, run.steps, threads=run.threads)
              if s.admissible]
    if not states:
        raise SolverFailure("no admissible bound state in the energy window")
    if not 0 <= index < len(states):
        raise SolverFailure(f"state index {index} out of range (found {len(states)})")
    return states[index]


def cmd_wavefunction(args) -> int:
    run = load_config(args.config)
    r_min, r_max, count = args.grid if args.grid else (run.grid.r_min, run.grid.r_max, run.grid.count)
    st = _pick_state(run, args.state)
    r = np.linspace(r_min, r_max, count)
    F = np.atleast_1d(radial.radial_wavefunction(st.shape, run.problem.radial_config(), run.problem.n, r))
    lines = [f"# E={st.E:.10g} delta={st.shape.delta:.10g} gamma={st.shape.gamma:.10g} n={run.problem.n}", "r,F"]
    lines += [f"{x:.6g},{y:.10e}" for x, y in zip(r, F)]
    lines.append(_footer(run))
    _emit("\n".join(lines) + "\n", run.output)
    return EXIT_OK


def cmd_angular(args) -> int:
    run = load_config(args.config)
    prob = run.problem
    if prob.ell_override is not None:
        raise ConfigError("angular output needs [angular] a, b, n_l rather than ell_override")
    if not 1 <= args.axis <= prob.D - 1:
        raise ConfigError(f"--axis must be between 1 and {prob.D - 1}")
    E = args.energy if args.energy is not None else _pick_state(run, 0).E
    try:
        chain = angular.angular_chain(prob.scarf_params(), prob.n_l, prob.M + E - prob.C_s, prob.D, prob.reading)
    except (angular.AxisNotBound, angular.InadmissibleChain) as exc:
        raise SolverFailure(str(exc)) from exc
    ax = chain.axes[args.axis - 1]
    theta = np.linspace(0, np.pi, run.grid.theta_count + 2)[1:-1]
    P = np.atleast_1d(angular.angular_wavefunction(ax, theta))
    lines = [
        f"# E={E:.10g} reading={prob.reading} l'={chain.ell_prime:.10g} admissible={str(chain.admissible).lower()}",
        "# axis,delta_s,gamma_s,n,ell,lambda",
    ]
    lines += [f"# {x.axis},{x.delta_s:.10g},{x.gamma_s:.10g},{x.n},{x.ell:.10g},{x.lam:.10g}" for x in chain.axes]
    lines.append("theta,P")
    lines += [f"{t:.6g},{v:.10e}" for t, v in zip(theta, P)]
    lines.append(_footer(run))
    _emit("\n".join(lines) + "\n", run.output)
    return EXIT_OK


SWEEPABLE = {f.name for f in fields(ProblemConfig)} - {"a", "b", "n_l", "reading"}


def cmd_sweep(args) -> int:
    run = load_config(args.config)
    if args.param not in SWEEPABLE:
        raise ConfigError(f"--param must be one of {sorted(SWEEPABLE)}")
    lines = [f"{args.param},E,residual,admissible"]
    for v in args.values:
        value = int(v) if args.param in ("n", "D") else v
        if args.param in ("n", "D") and value != v:
            raise ConfigError(f"{args.param} takes integer values, got {v}")
        try:
            problem = run.problem.replace(**{args.param: value})
        except ValueError as exc:
            raise ConfigError(f"{args.param}={v}: {exc}") from exc
        states = _solve(run, problem)
        if not states:
            lines.append(f"{v:g},nan,nan,false")
        for st in states:
            lines.append(f"{v:g},{st.E:.10g},{st.residual:.3e},{str(st.admissible).lower()}")
    lines.append(_footer(run))
    _emit("\n".join(lines) + "\n", run.output)
    return EXIT_OK


def cmd_report(args) -> int:
    _emit(reproduction_report(window=TABLE_WINDOW, steps=args.steps), args.out)
    return EXIT_OK


COMMANDS = {
    "solve": cmd_solve,
    "table": cmd_table,
    "wavefunction": cmd_wavefunction,
    "angular": cmd_angular,
    "sweep": cmd_sweep,
    "report": cmd_report,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"dirac-aim: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (SolverFailure, ConvergenceError, AimDivergence, ArithmeticError, ValueError) as exc:
        print(f"dirac-aim: solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
