"""Command-line front end: ``hybridgates {verify,simulate,surface,curves,depth}``.

Exit codes: 0 success, 1 runtime error or verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from pathlib import Path

from hybridgates import fidelity
from hybridgates.gates import build_cnot, build_cswap, extract_logical_unitary, target_matrix
from hybridgates.netlist import analyze_depth, execute_netlist, parse_netlist
from hybridgates.state import parse_state, serialize_state

VERIFY_TOL = 1e-12


def write_atomic(path: str | None, text: str) -> None:
    """Write via a temp file and rename so a failed run never leaves a partial file."""
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent or ".", prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _circuit(gate: str, d: int):
    return build_cnot() if gate == "cnot" else build_cswap(d)


def cmd_verify(args) -> int:
    circuit = _circuit(args.gate, args.d)
    got = extract_logical_unitary(circuit.gate, circuit.encoding)
    want = target_matrix(args.gate, 2 if args.gate == "cnot" else args.d)
    dev = got.max_deviation(want)
    ok = dev < VERIFY_TOL
    name = "cnot" if args.gate == "cnot" else f"cswap d={args.d}"
    print(f"{name}: dimension {got.dimension}, leakage {got.leakage:.3g}, max deviation {dev:.3g}")
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


def cmd_simulate(args) -> int:
    net = parse_netlist(Path(args.netlist).read_text(encoding="utf-8"))
    state = parse_state(Path(args.state).read_text(encoding="utf-8")) if args.state else None
    out = execute_netlist(net, state)
    write_atomic(args.out, serialize_state(out))
    return 0


def cmd_surface(args, parser) -> int:
    if args.r_max < args.r_min or args.theta_max < args.theta_min:
        parser.error("ranges must satisfy min <= max")
    if not (0 <= args.r_min and args.r_max <= 1):
        parser.error("r must lie in [0, 1]")
    if args.steps < 1:
        parser.error("--steps must be >= 1")
    if args.method == "quadrature" and args.points < fidelity.MIN_POINTS:
        parser.error(f"--points must be >= {fidelity.MIN_POINTS}")
    reports = fidelity.fidelity_surface(
        (args.r_min, args.r_max),
        (args.theta_min, args.theta_max),
        steps=args.steps,
        method=args.method,
        points=args.points,
        workers=args.workers,
    )
    write_atomic(args.out, fidelity.surface_csv(reports))
    return 0


def cmd_curves(args, parser) -> int:
    if not args.fixed or len(args.fixed) != 1:
        parser.error("give exactly one --fixed r=<value> or --fixed theta=<value>")
    name, sep, raw = args.fixed[0].partition("=")
    if not sep or name not in ("r", "theta"):
        parser.error("--fixed must look like r=<value> or theta=<value>")
    try:
        value = float(raw)
    except ValueError:
        parser.error(f"bad number in --fixed: {raw!r}")
    if name == "r" and not 0 <= value <= 1:
        parser.error("fixed r must lie in [0, 1]")
    cmp = fidelity.ComparisonParams(args.epsilon, args.delta_phi)
    rows = fidelity.fidelity_curves(name, value, cmp, points=args.points)
    write_atomic(args.out, fidelity.curves_csv(rows))
    return 0


def cmd_depth(args) -> int:
    circuit = _circuit(args.gate, args.d)
    rep = analyze_depth(circuit.gate)
    prep = analyze_depth(circuit.prep)
    noun = "element" if rep.element_count == 1 else "elements"
    print(f"{rep.element_count} {noun}, depth {rep.optical_depth}")
    print("per kind: " + ", ".join(f"{k}={v}" for k, v in rep.per_kind.items()))
    print(f"prep: {prep.per_kind.get('bs', 0)} bs")
    if args.gate == "cswap":
        print(f"d {args.d} depth {rep.optical_depth}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hybridgates", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def gate_flags(p):
        p.add_argument("--gate", choices=("cnot", "cswap"), required=True)
        p.add_argument("--d", type=int, default=2, help="target dimension for cswap (>= 2)")

    p = sub.add_parser("verify", help="extract the logical unitary and compare with the target matrix")
    gate_flags(p)

    p = sub.add_parser("simulate", help="run a netlist on a state file")
    p.add_argument("--netlist", required=True)
    p.add_argument("--state", help="input state file (omit when the netlist has a source)")
    p.add_argument("--out", help="output state file (default: stdout)")

    p = sub.add_parser("surface", help="average fidelity over an (r, theta) grid as CSV")
    p.add_argument("--r-min", type=float, default=fidelity.DEFAULT_R_RANGE[0])
    p.add_argument("--r-max", type=float, default=fidelity.DEFAULT_R_RANGE[1])
    p.add_argument("--theta-min", type=float, default=fidelity.DEFAULT_THETA_RANGE[0])
    p.add_argument("--theta-max", type=float, default=fidelity.DEFAULT_THETA_RANGE[1])
    p.add_argument("--steps", type=int, default=51)
    p.add_argument("--method", choices=("closed_form", "quadrature"), default="closed_form")
    p.add_argument("--points", type=int, default=16, help="quadrature points per axis")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")

    p = sub.add_parser("curves", help="fidelity vs one imperfection parameter, with baselines, as CSV")
    p.add_argument("--fixed", action="append", help="r=<value> or theta=<value>")
    p.add_argument("--epsilon", type=float, default=fidelity.DEFAULT_EPSILON)
    p.add_argument("--delta-phi", type=float, default=fidelity.DEFAULT_DELTA_PHI)
    p.add_argument("--points", type=int, default=101)
    p.add_argument("--out")

    p = sub.add_parser("depth", help="element count and optical depth of a gate netlist")
    gate_flags(p)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "gate", None) == "cswap" and args.d < 2:
        parser.error("--d must be >= 2 for cswap")
    if getattr(args, "gate", None) == "cnot" and args.d != 2:
        parser.error("--d applies to cswap only")
    try:
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "simulate":
            return cmd_simulate(args)
        if args.command == "surface":
            return cmd_surface(args, parser)
        if args.command == "curves":
            return cmd_curves(args, parser)
        return cmd_depth(args)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
