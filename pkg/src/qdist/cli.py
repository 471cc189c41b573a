"""Command-line front end.

Exit status is 0 on success, 1 when an input violates a physical or
mathematical invariant, and 2 for I/O, parse and usage errors.
"""
from __future__ import annotations

import argparse
import contextlib
import os
import sys
from typing import Callable

import numpy as np

from . import analysis, channels, distances, io, selftest, states
from .errors import ConsistencyError, NoConvergence, QDistError
from .io import SchemaError

SEED_MAX = 2 ** 64 - 1


# ---- mini-syntax parsing -------------------------------------------------

def _split_spec(spec: str) -> tuple[str, str]:
    kind, sep, rest = spec.partition(":")
    return (kind, rest) if sep else (spec, "")


def _number(text: str, key: str, cast: Callable = float):
    try:
        return cast(text)
    except ValueError:
        raise SchemaError(f"{key}: cannot parse {text!r} as {cast.__name__}") from None


def _keyvals(body: str, allowed: dict[str, Callable], required: tuple[str, ...], what: str) -> dict:
    out: dict = {}
    for item in filter(None, body.split(",")):
        key, sep, val = item.partition("=")
        key = key.strip()
        if not sep:
            raise SchemaError(f"{what}: expected key=value, got {item!r}")
        if key not in allowed:
            raise SchemaError(f"{what}: unknown key {key!r}; allowed keys are {sorted(allowed)}")
        if key in out:
            raise SchemaError(f"{what}: key {key!r} given twice")
        out[key] = _number(val.strip(), f"{what}.{key}", allowed[key])
    missing = [k for k in required if k not in out]
    if missing:
        raise SchemaError(f"{what}: missing key(s) {missing}")
    return out


def _numbers(body: str, what: str, cast: Callable = float) -> list:
    if not body:
        raise SchemaError(f"{what}: expected a comma-separated list of numbers")
    return [_number(v.strip(), what, cast) for v in body.split(",")]


def _file_part(spec: str) -> str:
    kind, rest = _split_spec(spec)
    return rest if kind == "file" else spec


def parse_map(spec: str) -> channels.KrausMap:
    """``depolarizing:w=..,dim=..``, ``amp:gamma=..``, ``amp2:ga=..,gb=..``, ``identity:dim=..`` or ``file:path``."""
    kind, body = _split_spec(spec)
    if kind == "depolarizing":
        kv = _keyvals(body, {"w": float, "dim": int}, ("w",), kind)
        return channels.depolarizing(kv.get("dim", 2), kv["w"])
    if kind == "amp":
        kv = _keyvals(body, {"gamma": float}, ("gamma",), kind)
        return channels.amplitude_damping(kv["gamma"])
    if kind == "amp2":
        kv = _keyvals(body, {"ga": float, "gb": float}, ("ga", "gb"), kind)
        return channels.bipartite_damping(kv["ga"], kv["gb"])
    if kind == "identity":
        kv = _keyvals(body, {"dim": int}, ("dim",), kind)
        return channels.identity_map(kv["dim"])
    if kind == "file":
        return io.load_map(body)
    raise SchemaError(f"unknown map kind {kind!r}; use depolarizing, amp, amp2, identity or file")


def parse_state(spec: str) -> states.DensityMatrix:
    """A JSON file (bare path or ``file:path``) or one of the named forms.

    ``diag:p1,p2,..``, ``pure:c1,c2,..`` (complex literals allowed),
    ``bloch:ax,ay,az``, ``mixed:dim=n``, ``rr:r=..`` and ``bell:s=..``.
    """
    kind, body = _split_spec(spec)
    if kind == "diag":
        return states.density_from_matrix(np.diag(_numbers(body, kind)))
    if kind == "pure":
        return states.pure(_numbers(body, kind, complex))
    if kind == "bloch":
        vec = _numbers(body, kind)
        if len(vec) != 3:
            raise SchemaError(f"bloch: expected 3 components, got {len(vec)}")
        return states.bloch_qubit(vec)
    if kind == "mixed":
        return states.maximally_mixed(_keyvals(body, {"dim": int}, ("dim",), kind)["dim"])
    if kind == "rr":
        return states.separable_rr(_keyvals(body, {"r": float}, ("r",), kind)["r"])
    if kind == "bell":
        return states.bell_diagonal_s(_keyvals(body, {"s": float}, ("s",), kind)["s"])
    return io.load_state(_file_part(spec))


def _seed(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= v <= SEED_MAX:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


@contextlib.contextmanager
def _sink(path: str, stdout):
    if path == "-":
        yield stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


# ---- subcommands -----------------------------------------------------------

def cmd_dist(args, out, err) -> int:
    report = distances.compare(parse_state(args.a), parse_state(args.b))
    out.write(io.report_json(report.to_dict()))
    return 0


def cmd_map_analyze(args, out, err) -> int:
    E = parse_map(args.map)
    res = channels.analyze(E)
    if args.write_map:
        io.write_json(io.map_to_json(E), args.write_map)
    out.write(io.report_json({
        "dim": E.dim,
        "n_kraus": len(E.kraus),
        "c_const": res.c_const,
        "m_q": res.m_q,
        "unital": res.unital,
        "mq_identity_residual": res.mq_identity_residual,
        "v_e": io.matrix_to_json(res.v_e),
    }))
    return 0


def cmd_witness(args, out, err) -> int:
    E = parse_map(args.map)
    if args.xyz is not None:
        if args.a or args.b:
            raise SchemaError("give either --xyz or --a/--b, not both")
        vals = _numbers(args.xyz, "--xyz")
        if len(vals) != 3:
            raise SchemaError(f"--xyz expects three comma-separated numbers, got {args.xyz!r}")
        x, y, z = vals
        basis = io.load_matrix(_file_part(args.basis)) if args.basis else None
        d = states.difference_from_spectrum([x, y, z, -(x + y + z)], basis)
        a, b = states.realize_states(d)
    else:
        if not (args.a and args.b):
            raise SchemaError("witness needs --xyz or both --a and --b")
        if args.basis:
            raise SchemaError("--basis only applies together with --xyz")
        a, b = parse_state(args.a), parse_state(args.b)
    rep = analysis.witness(E, a, b)
    if args.xyz is not None:
        rep = analysis.WitnessReport(x, y, z, rep.d_in, rep.d_out, rep.c_const, rep.w)
    if args.save_a:
        io.write_json(io.matrix_to_json(a), args.save_a)
    if args.save_b:
        io.write_json(io.matrix_to_json(b), args.save_b)
    out.write(io.report_json({
        "x": rep.x, "y": rep.y, "z": rep.z,
        "d_in": rep.d_in, "d_out": rep.d_out, "C": rep.c_const, "W": rep.w,
    }))
    return 0


def cmd_witness_scan(args, out, err) -> int:
    E = parse_map(args.map)
    basis = io.load_matrix(_file_part(args.basis)) if args.basis else None
    grid = analysis.witness_scan(E, args.z, args.res, basis=basis, threads=args.threads)
    rows = ((r.x, r.y, r.z, r.d_in, r.d_out, r.c_const, r.w) for r in grid.rows)
    with _sink(args.out, out) as fh:
        io.write_csv(fh, ("x", "y", "z", "d_in", "d_out", "C", "W"), rows)
    return 0


def cmd_fig1(args, out, err) -> int:
    rows = analysis.figure1_curves(args.r, args.steps)
    with _sink(args.out, out) as fh:
        io.write_csv(
            fh,
            ("s", "d_rho", "d_pi", "two_d_rho", "equal"),
            ((r.s, r.d_rho, r.d_pi, r.two_d_rho, int(r.equal)) for r in rows),
        )
    return 0


def cmd_domain(args, out, err) -> int:
    exp = analysis.domain_export(args.samples, args.seed, args.boundary_tol)
    with _sink(args.out, out) as fh:
        io.write_csv(
            fh,
            ("x", "y", "z", "active_face"),
            ((float(p[0]), float(p[1]), float(p[2]), f) for p, f in zip(exp.points, exp.faces)),
        )
    err.write(io.report_json({
        "seed": exp.seed,
        "samples": exp.samples,
        "accepted": int(len(exp.points)),
        "volume_fraction": exp.volume_fraction,
    }))
    return 0


def cmd_hypothesis(args, out, err) -> int:
    res = analysis.hypothesis_test(parse_state(args.a), parse_state(args.b), args.trials, args.seed)
    out.write(io.report_json(res.to_dict()))
    return 0


def cmd_selftest(args, out, err) -> int:
    return 0 if selftest.run(out) else 1


# ---- parser ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qdist", description="State distances, channel quantumness and witness landscapes.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    s = sub.add_parser("dist", help="compare d_rho and d_pi for two states")
    s.add_argument("--a", required=True, help="state spec or JSON file")
    s.add_argument("--b", required=True, help="state spec or JSON file")
    s.set_defaults(func=cmd_dist)

    s = sub.add_parser("map-analyze", help="contraction constant and quantumness of a map")
    s.add_argument("--map", required=True, help="map spec, e.g. amp:gamma=0.5")
    s.add_argument("--write-map", metavar="PATH", help="also write the Kraus list as JSON")
    s.set_defaults(func=cmd_map_analyze)

    s = sub.add_parser("witness", help="contractivity witness W for one state pair")
    s.add_argument("--map", required=True)
    s.add_argument("--xyz", help="difference spectrum x,y,z (two-qubit maps)")
    s.add_argument("--basis", help="unitary JSON (file:path) placing the --xyz spectrum")
    s.add_argument("--a")
    s.add_argument("--b")
    s.add_argument("--save-a", metavar="PATH", help="write the input state a as JSON")
    s.add_argument("--save-b", metavar="PATH", help="write the input state b as JSON")
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("witness-scan", help="W on an (x, y) grid at fixed z, as CSV")
    s.add_argument("--map", required=True)
    s.add_argument("--z", type=float, required=True)
    s.add_argument("--res", type=_positive_int, default=201)
    s.add_argument("--basis", help="unitary JSON (file:path) for the difference operator")
    s.add_argument("--threads", type=_positive_int, default=os.cpu_count() or 1)
    s.add_argument("--out", default="-")
    s.set_defaults(func=cmd_witness_scan)

    s = sub.add_parser("fig1", help="d_rho and d_pi between the product and Bell-diagonal families")
    s.add_argument("--r", type=float, required=True)
    s.add_argument("--steps", type=_positive_int, default=200)
    s.add_argument("--out", default="-")
    s.set_defaults(func=cmd_fig1)

    s = sub.add_parser("domain", help="sample the feasible two-qubit difference body")
    s.add_argument("--samples", type=_positive_int, default=100000)
    s.add_argument("--seed", type=_seed, default=0)
    s.add_argument("--boundary-tol", type=float, default=1e-2)
    s.add_argument("--out", default="-")
    s.set_defaults(func=cmd_domain)

    s = sub.add_parser("hypothesis", help="Monte Carlo of two-state discrimination")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.add_argument("--trials", type=_positive_int, default=100000)
    s.add_argument("--seed", type=_seed, default=0)
    s.set_defaults(func=cmd_hypothesis)

    s = sub.add_parser("selftest", help="run the golden-value checks")
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv=None, stdout=None, stderr=None) -> int:
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out, err)
    except QDistError as exc:
        err.write(f"qdist: invalid input ({type(exc).__name__}): {exc}\n")
        return 1
    except (NoConvergence, ConsistencyError) as exc:
        err.write(f"qdist: numerical failure ({type(exc).__name__}): {exc}\n")
        return 1
    except SchemaError as exc:
        err.write(f"qdist: parse error: {exc}\n")
        return 2
    except OSError as exc:
        err.write(f"qdist: I/O error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
