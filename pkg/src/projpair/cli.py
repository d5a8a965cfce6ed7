"""Command-line front end.

Every subcommand prints ``<subcommand>.<key>: <value>`` lines on stdout.

Exit codes: 0 success, 1 usage/IO, 2 no intertwiner/rotation exists
(d2 != d3), 3 input validation failure, 4 numerical failure or a failed
verification.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import fileio
from .errors import (
    EmptyGenericPartError,
    ExistenceError,
    MatrixFileError,
    NumericalFailure,
    ParameterError,
    ProjectionError,
    ScopeError,
    SpecError,
)
from .halmos import (
    DEFAULT_SPLIT_THRESHOLD,
    ProjectionPair,
    decompose,
    generic_part,
    norm_distance,
    principal_angles,
    reconstruct,
)
from .harness import PairSpec, brute_force_min_distance, build_pair, verify_intertwining
from .intertwine import IntertwinerKind, intertwiner, self_adjoint_params
from .numerics import operator_norm
from .rotation import (
    direct_rotation,
    direct_rotation_generic,
    extremal_norm,
    verify_direct_rotation,
)

EXIT_OK, EXIT_USAGE, EXIT_EXISTENCE, EXIT_INPUT, EXIT_NUMERICAL = range(5)
DEFAULT_TOL = 1e-8


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    if isinstance(value, (list, tuple, np.ndarray)):
        return " ".join(_fmt(v) for v in value)
    return str(value)


def _emit(cmd: str, key: str, value) -> None:
    print(f"{cmd}.{key}: {_fmt(value)}")


def _load_pair(args) -> ProjectionPair:
    p = fileio.read_matrix(args.p)
    q = fileio.read_matrix(args.q)
    if p.shape[0] != p.shape[1] or p.shape != q.shape:
        raise ProjectionError(f"P {p.shape} and Q {q.shape} must be square of equal size")
    return ProjectionPair.from_matrices(p, q, tol=args.tol)


def _decompose(args):
    pair = _load_pair(args)
    return pair, decompose(pair, tol=args.tol, split_threshold=args.split_threshold)


def cmd_decompose(args) -> int:
    pair, dec = _decompose(args)
    _emit("decompose", "n", pair.n)
    _emit("decompose", "dims", list(dec.dims))
    _emit("decompose", "q0_eigenvalues", dec.q0_eigs)
    _emit("decompose", "generic_position", dec.is_generic)
    _emit("decompose", "residual_p", dec.residuals["p"])
    _emit("decompose", "residual_q", dec.residuals["q"])
    _emit("decompose", "norm_pq", norm_distance(pair))
    if args.output:
        fileio.write_decomposition(args.output, dec)
        _emit("decompose", "written", args.output)
    return EXIT_OK


def _report_intertwiner(cmd, report) -> int:
    _emit(cmd, "mode", report.mode.value)
    _emit(cmd, "residual_out", report.residual_out)
    _emit(cmd, "residual_inn", report.residual_inn)
    _emit(cmd, "unitarity", report.unitarity)
    _emit(cmd, "norm_pq", report.norm_pq)
    _emit(cmd, "passed", report.passed)
    return EXIT_OK if report.passed else EXIT_NUMERICAL


def cmd_intertwine(args) -> int:
    pair, dec = _decompose(args)
    kind = IntertwinerKind(args.mode)
    _emit("intertwine", "dims", list(dec.dims))
    if args.selfadjoint:
        if kind is not IntertwinerKind.FULL:
            raise UsageError("--selfadjoint requires --mode full")
        if args.params:
            raise UsageError("--selfadjoint and --params are mutually exclusive")
        params = self_adjoint_params(dec, args.seed)
    else:
        params = fileio.read_params(args.params) if args.params else None
    u = intertwiner(dec, kind, params, seed=args.seed, sample=args.sample)
    report = verify_intertwining(pair, u, kind, args.tol)
    if args.selfadjoint:
        _emit("intertwine", "selfadjoint_defect", operator_norm(u - u.conj().T))
    if args.output:
        fileio.write_matrix(args.output, u)
        _emit("intertwine", "written", args.output)
    return _report_intertwiner("intertwine", report)


def _report_rotation(cmd, cert) -> int:
    _emit(cmd, "residual_intertwine", cert.residual_intertwine)
    _emit(cmd, "residual_square", cert.residual_square)
    _emit(cmd, "min_real_part", cert.min_real_part)
    _emit(cmd, "unitarity", cert.unitarity)
    _emit(cmd, "passed", cert.passed)
    return EXIT_OK if cert.passed else EXIT_NUMERICAL


def cmd_rotate(args) -> int:
    pair, dec = _decompose(args)
    _emit("rotate", "dims", list(dec.dims))
    c = fileio.read_matrix(args.c) if args.c else None
    s = direct_rotation(dec, c=c, seed=args.seed)
    cert = verify_direct_rotation(pair, s, args.tol)
    _emit("rotate", "norm_s_minus_i", operator_norm(s - np.eye(pair.n)))
    if args.output:
        fileio.write_matrix(args.output, s)
        _emit("rotate", "written", args.output)
    return _report_rotation("rotate", cert)


def cmd_verify(args) -> int:
    pair = _load_pair(args)
    if args.round_trip:
        if args.dec:
            dec = fileio.read_decomposition(args.dec)
            if dec.n != pair.n:
                raise MatrixFileError(f"decomposition size {dec.n} != pair size {pair.n}")
        else:
            dec = decompose(pair, tol=args.tol, split_threshold=args.split_threshold)
        rec = reconstruct(dec)
        res_p = operator_norm(rec.P - pair.P)
        res_q = operator_norm(rec.Q - pair.Q)
        passed = res_p <= args.tol and res_q <= args.tol
        _emit("verify", "round_trip_residual_p", res_p)
        _emit("verify", "round_trip_residual_q", res_q)
        _emit("verify", "passed", passed)
        return EXIT_OK if passed else EXIT_NUMERICAL
    if not args.u:
        raise UsageError("verify needs --u or --round-trip")
    u = fileio.read_matrix(args.u)
    if u.shape != (pair.n, pair.n):
        raise ProjectionError(f"U has shape {u.shape}, expected {(pair.n, pair.n)}")
    if args.mode == "rotation":
        return _report_rotation("verify", verify_direct_rotation(pair, u, args.tol))
    return _report_intertwiner("verify", verify_intertwining(pair, u, args.mode, args.tol))


def cmd_angles(args) -> int:
    _, dec = _decompose(args)
    pa = principal_angles(dec)
    _emit("angles", "dims", list(dec.dims))
    _emit("angles", "angles", pa.angles)
    _emit("angles", "zero_count", pa.zero_count)
    _emit("angles", "interior", pa.interior)
    _emit("angles", "right_count", pa.right_count)
    return EXIT_OK


def cmd_extremal(args) -> int:
    _, dec = _decompose(args)
    if args.generic_part:
        dec = decompose(generic_part(dec), tol=args.tol, split_threshold=args.split_threshold)
    value = extremal_norm(dec)
    s = direct_rotation_generic(dec)
    _emit("extremal", "extremal_norm", value)
    _emit("extremal", "rotation_norm", operator_norm(s - np.eye(s.shape[0])))
    if args.trials:
        _emit("extremal", "brute_force_min",
              brute_force_min_distance(dec, args.trials, args.seed))
    return EXIT_OK


def cmd_gen(args) -> int:
    dims = tuple(args.dims)
    if args.q0 and args.q0_range:
        raise UsageError("--q0 and --q0-range are mutually exclusive")
    if args.q0_range:
        q0 = (dims[4], tuple(args.q0_range))
    else:
        q0 = args.q0 or None
    pair = build_pair(PairSpec(dims, q0, args.seed))
    fileio.write_matrix(args.p_out, pair.P)
    fileio.write_matrix(args.q_out, pair.Q)
    _emit("gen", "dims", list(dims))
    _emit("gen", "n", pair.n)
    _emit("gen", "norm_pq", norm_distance(pair))
    _emit("gen", "written", [args.p_out, args.q_out])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="projpair",
                     description="Canonical form, intertwiners and direct rotations "
                                 "of a pair of orthogonal projections.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def pair_args(sp):
        sp.add_argument("--p", required=True, help="matrix file for P")
        sp.add_argument("--q", required=True, help="matrix file for Q")
        sp.add_argument("--tol", type=float, default=DEFAULT_TOL)
        sp.add_argument("--split-threshold", type=float, default=DEFAULT_SPLIT_THRESHOLD)
        sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("decompose", help="six-subspace decomposition")
    pair_args(sp)
    sp.add_argument("-o", "--output", help="write the decomposition JSON here")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("intertwine", help="construct an intertwining unitary")
    pair_args(sp)
    sp.add_argument("--mode", choices=[k.value for k in IntertwinerKind], default="full")
    sp.add_argument("--params", help="JSON file with any of u1, c2, c3, u4, u0, s0")
    sp.add_argument("--selfadjoint", action="store_true",
                    help="build a self-adjoint full intertwiner")
    sp.add_argument("--sample", action="store_true",
                    help="draw missing parameters at random (seeded) instead of identity")
    sp.add_argument("-o", "--output", help="write U here")
    sp.set_defaults(func=cmd_intertwine)

    sp = sub.add_parser("rotate", help="construct a direct rotation from P to Q")
    pair_args(sp)
    sp.add_argument("--c", help="matrix file for the unitary C : H3 -> H2")
    sp.add_argument("-o", "--output", help="write S here")
    sp.set_defaults(func=cmd_rotate)

    sp = sub.add_parser("verify", help="check an operator against P, Q")
    pair_args(sp)
    sp.add_argument("--u", help="matrix file of the operator to check")
    sp.add_argument("--mode", choices=["outer", "inner", "full", "rotation"], default="full")
    sp.add_argument("--round-trip", action="store_true",
                    help="check decomposition + reconstruction instead")
    sp.add_argument("--dec", help="decomposition file for --round-trip")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("angles", help="principal angles between R(P) and R(Q)")
    pair_args(sp)
    sp.set_defaults(func=cmd_angles)

    sp = sub.add_parser("extremal", help="minimal distance ||U - I|| (generic pairs)")
    pair_args(sp)
    sp.add_argument("--generic-part", action="store_true",
                    help="restrict to the generic part first")
    sp.add_argument("--trials", type=int, default=0,
                    help="also report a sampled upper estimate over this many intertwiners")
    sp.set_defaults(func=cmd_extremal)

    sp = sub.add_parser("gen", help="generate a pair with prescribed block dimensions")
    sp.add_argument("--dims", type=int, nargs=6, required=True, metavar="D")
    sp.add_argument("--q0", type=float, nargs="*", default=[],
                    help="explicit eigenvalues of Q0 (d5 values)")
    sp.add_argument("--q0-range", type=float, nargs=2, metavar=("LOW", "HIGH"),
                    help="sample d5 eigenvalues uniformly from (LOW, HIGH)")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--p-out", default="P.json")
    sp.add_argument("--q-out", default="Q.json")
    sp.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MatrixFileError, ScopeError, EmptyGenericPartError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ExistenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EXISTENCE
    except (ProjectionError, ParameterError, SpecError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
