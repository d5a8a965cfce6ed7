"""Random instances with prescribed block structure, intertwining checks and
a sampling oracle for the minimal distance ``‖U − I‖``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ScopeError, SpecError
from .halmos import (
    DEFAULT_SPLIT_THRESHOLD,
    HalmosDecomposition,
    ProjectionPair,
    canonical_form,
)
from .intertwine import IntertwinerKind, base_symmetry
from .numerics import adjoint, block_diag, operator_norm, unitarity_defect
from .sampling import haar_unitary, make_rng, trial_rng


@dataclass(frozen=True)
class PairSpec:
    """Block dimensions ``(d1..d6)`` and the spectrum of Q0.

    `q0` is either an explicit list of eigenvalues or a
    ``(count, (low, high))`` tuple for uniform sampling; it may be omitted
    when d5 == 0.
    """

    dims: tuple
    q0: object = None
    seed: int = 0


@dataclass(frozen=True)
class VerifyReport:
    mode: IntertwinerKind
    residual_out: float
    residual_inn: float
    unitarity: float
    norm_pq: float
    tol: float
    passed: bool


def _spec_q0(spec: PairSpec, rng) -> np.ndarray:
    d5 = spec.dims[4]
    q0 = spec.q0
    if q0 is None:
        if d5:
            raise SpecError("q0 is required when d5 > 0")
        return np.zeros(0)
    if (isinstance(q0, tuple) and len(q0) == 2 and np.ndim(q0[0]) == 0
            and np.ndim(q0[1]) == 1):
        count, (low, high) = q0
        if not 0.0 < low <= high < 1.0:
            raise SpecError(f"sampling interval ({low}, {high}) not inside (0, 1)")
        values = np.sort(rng.uniform(low, high, size=int(count)))
    else:
        values = np.sort(np.asarray(q0, dtype=float).ravel())
    if values.size != d5:
        raise SpecError(f"q0 has {values.size} values but d5 = {d5}")
    thr = DEFAULT_SPLIT_THRESHOLD
    if values.size and (values[0] <= thr or values[-1] >= 1.0 - thr):
        raise SpecError("q0 values must lie strictly inside (split_threshold, 1 − split_threshold)")
    return values


def build_pair(spec: PairSpec) -> ProjectionPair:
    """Assemble P, Q from the canonical block form (D = I) and conjugate both
    by one seeded Haar unitary."""
    dims = tuple(int(d) for d in spec.dims)
    if len(dims) != 6 or min(dims) < 0:
        raise SpecError(f"dims must be six nonnegative counts, got {spec.dims}")
    if dims[4] != dims[5]:
        raise SpecError(f"d5 must equal d6, got {dims[4]} and {dims[5]}")
    rng = make_rng(spec.seed)
    q0 = _spec_q0(spec, rng)
    p, q = canonical_form(dims, q0, np.eye(dims[4]))
    w = haar_unitary(sum(dims), rng)
    return ProjectionPair.from_matrices(w @ p @ adjoint(w), w @ q @ adjoint(w))


def random_pair_dense(n: int, rank_p: int, rank_q: int, seed=0) -> ProjectionPair:
    """Projections onto the spans of seeded random orthonormal frames."""
    if not (0 <= rank_p <= n and 0 <= rank_q <= n):
        raise ValueError(f"ranks must lie in [0, {n}], got {rank_p}, {rank_q}")
    rng = make_rng(seed)
    vp = haar_unitary(n, rng)[:, :rank_p]
    vq = haar_unitary(n, rng)[:, :rank_q]
    return ProjectionPair.from_matrices(vp @ adjoint(vp), vq @ adjoint(vq))


def verify_intertwining(pair: ProjectionPair, u, mode, tol: float = 1e-8) -> VerifyReport:
    mode = IntertwinerKind(mode)
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (pair.n, pair.n):
        raise ValueError(f"U has shape {u.shape}, expected {(pair.n, pair.n)}")
    P, Q = pair.P, pair.Q
    r_out = operator_norm(u @ P - Q @ u)
    r_inn = operator_norm(P @ u - u @ Q)
    unit = unitarity_defect(u)
    ok = unit <= tol
    if mode is IntertwinerKind.OUTER:
        ok = ok and r_out <= tol
    elif mode is IntertwinerKind.INNER:
        ok = ok and r_inn <= tol
    else:
        ok = ok and r_out <= tol and r_inn <= tol
    return VerifyReport(mode, r_out, r_inn, unit, operator_norm(P - Q), tol, bool(ok))


def _distance_to_identity(w0, u0, s0) -> float:
    u = w0 @ block_diag(u0, s0)
    return operator_norm(u - np.eye(u.shape[0]))


def brute_force_min_distance(dec: HalmosDecomposition, trials: int, seed=0,
                             include_deterministic: bool = True) -> float:
    """Minimum of ``‖W0·diag(U0, S0) − I‖`` over sampled outer intertwiners.

    Each trial draws Haar U0 and S0 from its own stream ``(seed, trial)``.
    With `include_deterministic`, the candidates ``U0 = I, S0 = ±I`` are
    also scored.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if not dec.is_generic or dec.d5 == 0:
        raise ScopeError(f"pair is not in generic position (dims {dec.dims})")
    d5 = dec.d5
    w0 = base_symmetry(dec)
    best = np.inf
    if include_deterministic:
        eye = np.eye(d5)
        best = min(_distance_to_identity(w0, eye, eye),
                   _distance_to_identity(w0, eye, -eye))
    for t in range(trials):
        rng = trial_rng(seed, t)
        best = min(best, _distance_to_identity(w0, haar_unitary(d5, rng), haar_unitary(d5, rng)))
    return float(best)
