"""Intertwining unitaries of a projection pair.

A unitary U is an *outer* intertwiner when ``UP = QU``, *inner* when
``PU = UQ`` and *full* when both hold.  On the generic part every outer
intertwiner is ``W0·diag(U0, S0)`` and every full one is
``W0·diag(U0, Dᴴ U0 D)`` with U0 commuting with Q0, where W0 is the
self-adjoint unitary built by :func:`base_symmetry`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import EmptyGenericPartError, ExistenceError, ParameterError
from .halmos import HalmosDecomposition
from .numerics import adjoint, block_diag, operator_norm, unitarity_defect
from .sampling import haar_unitary, make_rng, random_selfadjoint_unitary


class IntertwinerKind(enum.Enum):
    OUTER = "outer"
    INNER = "inner"
    FULL = "full"


@dataclass(frozen=True)
class IntertwinerParams:
    """Free blocks of the full-intertwiner family, in the adapted basis.

    ``u1`` on H1, ``c2`` : H3 → H2, ``c3`` : H2 → H3, ``u4`` on H4, ``u0`` on
    H5 (must commute with Q0 for the full family), ``s0`` on H6 (outer family
    only).  ``None`` means "use the default".
    """

    u1: np.ndarray | None = None
    c2: np.ndarray | None = None
    c3: np.ndarray | None = None
    u4: np.ndarray | None = None
    u0: np.ndarray | None = None
    s0: np.ndarray | None = None


@dataclass(frozen=True)
class ExistenceReport:
    exists: bool
    d2: int
    d3: int

    def __bool__(self) -> bool:
        return self.exists


def _require_generic(dec: HalmosDecomposition):
    if dec.d5 == 0:
        raise EmptyGenericPartError("the pair has no generic part (dim H5 = 0)")


def _check_unitary(name, m, shape, tol) -> np.ndarray:
    m = np.asarray(m, dtype=np.complex128)
    if m.shape != shape:
        raise ParameterError(f"{name} has shape {m.shape}, expected {shape}")
    defect = unitarity_defect(m)
    if defect > tol:
        raise ParameterError(f"{name} is not unitary (defect {defect:.3e} > {tol:.3e})")
    return m


def commutation_defect(u0, dec: HalmosDecomposition) -> float:
    """``‖U0·Q0 − Q0·U0‖`` in the stored basis."""
    lam = dec.q0_eigs
    return operator_norm(u0 * lam[None, :] - lam[:, None] * u0)


def _sqrt_blocks(dec):
    lam = dec.q0_eigs
    return np.sqrt(lam), np.sqrt(1.0 - lam)


def base_symmetry(dec: HalmosDecomposition) -> np.ndarray:
    """The self-adjoint unitary W0 on H5 ⊕ H6 with ``W0 P̃ = Q̃ W0``::

        W0 = [[√Q0,            √(I−Q0) D ],
              [Dᴴ √(I−Q0),    −Dᴴ √Q0 D  ]]
    """
    _require_generic(dec)
    s, c = _sqrt_blocks(dec)
    d = dec.d_unitary
    dh = adjoint(d)
    return np.block([
        [np.diag(s).astype(np.complex128), c[:, None] * d],
        [dh * c[None, :], -dh @ (s[:, None] * d)],
    ])


def outer_intertwiner(dec: HalmosDecomposition, u0=None, s0=None,
                      tol: float | None = None) -> np.ndarray:
    """``W0·diag(u0, s0)``, an outer intertwiner of the generic part.

    Identity is used for a missing parameter.
    """
    _require_generic(dec)
    tol = dec.tol if tol is None else tol
    d5 = dec.d5
    u0 = np.eye(d5) if u0 is None else _check_unitary("u0", u0, (d5, d5), tol)
    s0 = np.eye(d5) if s0 is None else _check_unitary("s0", s0, (d5, d5), tol)
    return base_symmetry(dec) @ block_diag(u0, s0)


def inner_intertwiner(dec: HalmosDecomposition, u0=None, s0=None,
                      tol: float | None = None) -> np.ndarray:
    """Adjoint of :func:`outer_intertwiner`; satisfies ``P̃U = UQ̃``."""
    return adjoint(outer_intertwiner(dec, u0, s0, tol))


def generic_full_intertwiner(dec: HalmosDecomposition, u0=None,
                             tol: float | None = None) -> np.ndarray:
    """``W0·diag(u0, Dᴴ u0 D)``; requires ``u0`` to commute with Q0."""
    _require_generic(dec)
    tol = dec.tol if tol is None else tol
    d5 = dec.d5
    if u0 is None:
        u0 = np.eye(d5, dtype=np.complex128)
    u0 = _check_unitary("u0", u0, (d5, d5), tol)
    comm = commutation_defect(u0, dec)
    if comm > tol:
        raise ParameterError(f"u0 does not commute with Q0 (defect {comm:.3e} > {tol:.3e})")
    d = dec.d_unitary
    return base_symmetry(dec) @ block_diag(u0, adjoint(d) @ u0 @ d)


def intertwiner_exists(dec: HalmosDecomposition) -> ExistenceReport:
    """A full intertwiner exists iff ``dim R(P)∩N(Q) == dim N(P)∩R(Q)``."""
    d2, d3 = dec.dims[1], dec.dims[2]
    return ExistenceReport(d2 == d3, d2, d3)


def eigenvalue_clusters(eigs, threshold: float) -> list[slice]:
    """Runs of sorted eigenvalues whose consecutive gaps are ≤ `threshold`."""
    eigs = np.asarray(eigs)
    if eigs.size == 0:
        return []
    breaks = np.flatnonzero(np.diff(eigs) > threshold) + 1
    edges = [0, *breaks.tolist(), eigs.size]
    return [slice(a, b) for a, b in zip(edges[:-1], edges[1:])]


def sample_commutant_unitary(dec: HalmosDecomposition, seed=None,
                             selfadjoint: bool = False) -> np.ndarray:
    """Random unitary on H5 commuting with Q0.

    One independent Haar block per eigenvalue cluster of Q0 (clusters use the
    decomposition's split threshold).  With ``selfadjoint=True`` each block
    is a random Hermitian unitary instead.
    """
    _require_generic(dec)
    rng = make_rng(seed)
    sampler = random_selfadjoint_unitary if selfadjoint else haar_unitary
    blocks = [sampler(s.stop - s.start, rng)
              for s in eigenvalue_clusters(dec.q0_eigs, dec.split_threshold)]
    return block_diag(*blocks)


def _resolve_params(dec, params, seed, sample, tol, with_s0=False):
    """Fill missing blocks and validate every block.

    Defaults are identity blocks; C2 and C3 are seeded Haar unitaries.  With
    ``sample=True`` every missing block is drawn at random instead (u0 from
    the commutant of Q0 unless ``with_s0``).
    """
    d1, d2, d3, d4, d5, _ = dec.dims
    params = params or IntertwinerParams()
    rng = make_rng(seed)
    # fixed draw order keeps output a function of the seed alone
    c2 = params.c2 if params.c2 is not None else haar_unitary(d2, rng)
    c3 = params.c3 if params.c3 is not None else haar_unitary(d3, rng)

    def pick(value, size, draw):
        if value is not None:
            return value
        return draw() if sample else np.eye(size, dtype=np.complex128)

    u1 = pick(params.u1, d1, lambda: haar_unitary(d1, rng))
    u4 = pick(params.u4, d4, lambda: haar_unitary(d4, rng))
    if with_s0:
        u0 = pick(params.u0, d5, lambda: haar_unitary(d5, rng))
        s0 = pick(params.s0, d5, lambda: haar_unitary(d5, rng))
    else:
        u0 = pick(params.u0, d5,
                  lambda: sample_commutant_unitary(dec, rng) if d5 else np.zeros((0, 0)))
        s0 = None

    u1 = _check_unitary("u1", u1, (d1, d1), tol)
    c2 = _check_unitary("c2", c2, (d2, d3), tol)
    c3 = _check_unitary("c3", c3, (d3, d2), tol)
    u4 = _check_unitary("u4", u4, (d4, d4), tol)
    u0 = _check_unitary("u0", u0, (d5, d5), tol)
    if s0 is not None:
        s0 = _check_unitary("s0", s0, (d5, d5), tol)
    return u1, c2, c3, u4, u0, s0


def _swap_block(c2, c3):
    d2, d3 = c2.shape
    return np.block([
        [np.zeros((d2, d2)), c2],
        [c3, np.zeros((d3, d3))],
    ]).astype(np.complex128)


def full_intertwiner(dec: HalmosDecomposition, params: IntertwinerParams | None = None,
                     seed=0, sample: bool = False, tol: float | None = None) -> np.ndarray:
    """A unitary U on C^n with ``UP = QU`` and ``PU = UQ``.

    In the adapted basis ``U = U1 ⊕ [[0, C2], [C3, 0]] ⊕ U4 ⊕ W0·diag(U0, Dᴴ U0 D)``.

    Raises
    ------
    ExistenceError
        If ``d2 != d3``.
    ParameterError
        If a supplied block has the wrong shape, is not unitary, or ``u0``
        does not commute with Q0.
    """
    report = intertwiner_exists(dec)
    if not report:
        raise ExistenceError(report.d2, report.d3)
    tol = dec.tol if tol is None else tol
    u1, c2, c3, u4, u0, _ = _resolve_params(dec, params, seed, sample, tol)
    generic = (generic_full_intertwiner(dec, u0, tol) if dec.d5
               else np.zeros((0, 0), dtype=np.complex128))
    return dec.assemble(u1, _swap_block(c2, c3), u4, generic)


def intertwiner(dec: HalmosDecomposition, kind: IntertwinerKind,
                params: IntertwinerParams | None = None, seed=0,
                sample: bool = False, tol: float | None = None) -> np.ndarray:
    """One full-space intertwiner of the requested kind.

    The outer member is ``U1 ⊕ [[0, C2], [C3, 0]] ⊕ U4 ⊕ W0·diag(U0, S0)``;
    the inner member is the adjoint of an outer one.  In finite dimension an
    outer (or inner) intertwiner exists iff rank P == rank Q, i.e. iff
    ``d2 == d3``, the same criterion as for full intertwiners.
    """
    kind = IntertwinerKind(kind)
    if kind is IntertwinerKind.FULL:
        return full_intertwiner(dec, params, seed, sample, tol)
    report = intertwiner_exists(dec)
    if not report:
        raise ExistenceError(report.d2, report.d3)
    tol = dec.tol if tol is None else tol
    u1, c2, c3, u4, u0, s0 = _resolve_params(dec, params, seed, sample, tol, with_s0=True)
    generic = (outer_intertwiner(dec, u0, s0, tol) if dec.d5
               else np.zeros((0, 0), dtype=np.complex128))
    u = dec.assemble(u1, _swap_block(c2, c3), u4, generic)
    return u if kind is IntertwinerKind.OUTER else adjoint(u)


def self_adjoint_params(dec: HalmosDecomposition, seed=0) -> IntertwinerParams:
    """Parameters giving a self-adjoint full intertwiner.

    U1 = I, U4 = I, C3 = C2ᴴ with C2 Haar, and U0 a random self-adjoint
    unitary from the commutant of Q0.
    """
    rng = make_rng(seed)
    d2, d3 = dec.dims[1], dec.dims[2]
    if d2 != d3:
        raise ExistenceError(d2, d3)
    c2 = haar_unitary(d2, rng)
    u0 = sample_commutant_unitary(dec, rng, selfadjoint=True) if dec.d5 else None
    return IntertwinerParams(c2=c2, c3=adjoint(c2), u0=u0)


def swap_conjugator(dec: HalmosDecomposition) -> np.ndarray:
    """Unitary U with ``PQP = U·QPQ·Uᴴ``.

    Identity on H1..H4 and W0 on the generic part, where it exchanges P̃ and
    Q̃.  Exists for every pair.
    """
    head = sum(dec.dims[:4])
    generic = base_symmetry(dec) if dec.d5 else np.zeros((0, 0), dtype=np.complex128)
    return dec.assemble(np.eye(head), generic)
