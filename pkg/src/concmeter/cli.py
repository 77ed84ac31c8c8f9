"""Command-line interface: single-state runs, random sweeps, shot
experiments, cavity checks, and kinematics solving.

Exit codes: 0 success, 1 input error, 2 internal invariant violation,
3 infeasible kinematics.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from . import cavity as cavity_mod
from .concurrence import PureState, concurrence_pure
from .estimation import ReadoutModel, simulate_shots
from .protocol import run_circuit
from .statevec import InvariantViolation

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INVARIANT = 2
EXIT_INFEASIBLE = 3

SWEEP_COLUMNS = [
    "seed",
    "c0_re", "c0_im", "c1_re", "c1_im", "c2_re", "c2_im", "c3_re", "c3_im",
    "concurrence_analytic", "p_gggg", "p_egeg",
    "concurrence_measured", "oracle_residual",
]


class InputError(Exception):
    pass


def load_state_file(path: str, force_normalize: bool = False) -> PureState:
    """Read a JSON state file: {"amplitudes": [[re, im] x 4],
    "normalize": bool (optional)}."""
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read state file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from exc
    if not isinstance(doc, dict) or "amplitudes" not in doc:
        raise InputError("state file must be an object with an 'amplitudes' field")
    raw = doc["amplitudes"]
    if not isinstance(raw, list) or len(raw) != 4:
        raise InputError("'amplitudes' must list exactly four [re, im] pairs")
    amps = []
    for i, pair in enumerate(raw):
        if (not isinstance(pair, list) or len(pair) != 2
                or not all(isinstance(x, (int, float)) for x in pair)):
            raise InputError(f"'amplitudes[{i}]' must be a [re, im] number pair")
        amps.append(complex(pair[0], pair[1]))
    normalize = bool(doc.get("normalize", False)) or force_normalize
    try:
        return PureState.from_amplitudes(amps, normalize=normalize)
    except ValueError as exc:
        raise InputError(f"invalid state in 'amplitudes': {exc}") from exc


def cmd_run(args) -> int:
    psi = load_state_file(args.state_file, args.normalize)
    result = run_circuit(psi)
    print(f"C_analytic       = {concurrence_pure(psi)!r}")
    print(f"P_gggg           = {result.p_gggg!r}")
    print(f"P_egeg           = {result.p_egeg!r}")
    print(f"C_measured       = {result.concurrence_measured!r}")
    print(f"oracle_residual  = {result.oracle_residual!r}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.n_states < 1:
        raise InputError("n_states must be >= 1")
    try:
        out = open(args.out, "w", newline="")
    except OSError as exc:
        raise InputError(f"cannot write {args.out}: {exc}") from exc
    max_dev = 0.0
    max_residual = 0.0
    with out:
        writer = csv.writer(out)
        writer.writerow(SWEEP_COLUMNS)
        for i in range(args.n_states):
            rng = np.random.default_rng([args.seed, i])
            psi = PureState.haar_random(rng)
            result = run_circuit(psi)
            c_analytic = concurrence_pure(psi)
            max_dev = max(max_dev, abs(result.concurrence_measured - c_analytic))
            max_residual = max(max_residual, result.oracle_residual)
            row = [i]
            for c in (psi.c0, psi.c1, psi.c2, psi.c3):
                row += [repr(float(c.real)), repr(float(c.imag))]
            row += [repr(c_analytic), repr(result.p_gggg), repr(result.p_egeg),
                    repr(result.concurrence_measured), repr(result.oracle_residual)]
            writer.writerow(row)
    print(f"wrote {args.n_states} rows to {args.out}; "
          f"max |C_measured - C_analytic| = {max_dev:.3e}, "
          f"max oracle residual = {max_residual:.3e}")
    return EXIT_OK


def cmd_shots(args) -> int:
    psi = load_state_file(args.state_file, args.normalize)
    model = ReadoutModel(p_dark=args.p_dark, p_bright_false=args.p_bright_false)
    summary = simulate_shots(psi, args.shots, model, args.seed)
    print(f"n_shots           = {summary.n_shots}")
    print(f"n_no_fluorescence = {summary.n_no_fluorescence}")
    print(f"p_hat             = {summary.p_hat!r}")
    print(f"c_hat             = {summary.c_hat!r}")
    print(f"ci_95             = [{summary.ci_low!r}, {summary.ci_high!r}]")
    return EXIT_OK


def cmd_cavity(args) -> int:
    if args.kinematics:
        try:
            sol = cavity_mod.solve_delays(args.v, args.w, args.xc, args.xd,
                                          args.lc, args.ld)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        if sol.binding_constraint in ("speed_gap", "geometry"):
            raise InputError(f"invalid kinematics input: {sol.binding_constraint}")
        if not sol.feasible:
            print(f"infeasible: binding constraint {sol.binding_constraint}")
            return EXIT_INFEASIBLE
        cfg, report = sol.config, sol.report
        print(f"tau        = {cfg.tau!r} s")
        print(f"tau_prime  = {cfg.tau_prime!r} s")
        print(f"order_before_C = {report.order_before_C}")
        print(f"order_after_C  = {report.order_after_C}")
        print(f"order_at_D     = {report.order_at_D}")
        print(f"pair12_cross   = {report.pair12_cross_position!r} m")
        print(f"pair34_cross   = {report.pair34_cross_position!r} m")
        print(f"swap14         = {report.swap14_position!r} m")
        print(f"feasible       = {report.feasible}")
        return EXIT_OK
    if args.state_file is None:
        raise InputError("cavity mode needs a state file or --kinematics")
    psi = load_state_file(args.state_file, args.normalize)
    ideal = run_circuit(psi)
    real = cavity_mod.run_cavity_realization(psi)
    print(f"P_gggg ideal     = {ideal.p_gggg!r}")
    print(f"P_gggg cavity    = {real.p_gggg!r}")
    print(f"deviation        = {abs(ideal.p_gggg - real.p_gggg)!r}")
    print(f"C_measured       = {real.concurrence_measured!r}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="concmeter",
        description="Two-copy concurrence measurement: circuit simulation, "
                    "shot statistics, cavity realization, flight kinematics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run the ideal circuit on one state")
    p_run.add_argument("state_file")
    p_run.add_argument("--normalize", action="store_true",
                       help="normalize the input amplitudes")
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser(
        "sweep",
        help="verify the protocol on random states, writing one CSV row per "
             f"state with columns: {', '.join(SWEEP_COLUMNS)}",
    )
    p_sweep.add_argument("n_states", type=int)
    p_sweep.add_argument("--seed", type=int, default=0)
    p_sweep.add_argument("--out", required=True)
    p_sweep.set_defaults(func=cmd_sweep)

    p_shots = sub.add_parser("shots", help="finite-shot estimate with the "
                                           "global shelving readout")
    p_shots.add_argument("state_file")
    p_shots.add_argument("--shots", type=int, default=10000)
    p_shots.add_argument("--seed", type=int, default=0)
    p_shots.add_argument("--p-dark", type=float, default=0.0)
    p_shots.add_argument("--p-bright-false", type=float, default=0.0)
    p_shots.add_argument("--normalize", action="store_true")
    p_shots.set_defaults(func=cmd_shots)

    p_cav = sub.add_parser("cavity", help="cavity realization check or "
                                          "flight-kinematics solving")
    p_cav.add_argument("state_file", nargs="?")
    p_cav.add_argument("--normalize", action="store_true")
    p_cav.add_argument("--kinematics", action="store_true")
    p_cav.add_argument("--v", type=float, help="slow-atom speed (m/s)")
    p_cav.add_argument("--w", type=float, help="fast-atom speed (m/s)")
    p_cav.add_argument("--xc", type=float, help="cavity-C center (m)")
    p_cav.add_argument("--xd", type=float, help="cavity-D center (m)")
    p_cav.add_argument("--lc", type=float, default=0.02, help="cavity-C length (m)")
    p_cav.add_argument("--ld", type=float, default=0.02, help="cavity-D length (m)")
    p_cav.set_defaults(func=cmd_cavity)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "kinematics", False):
        missing = [f for f in ("v", "w", "xc", "xd") if getattr(args, f) is None]
        if missing:
            print(f"error: --kinematics requires --{' --'.join(missing)}",
                  file=sys.stderr)
            return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    raise SystemExit(main())
