"""Direct rotations from P to Q.

A direct rotation is a unitary S with ``SP = QS``,
``S² = (Q⊥ − Q)(P⊥ − P)`` and ``Re S ⪰ 0``.  It exists iff d2 == d3 and is
unique when additionally d2 == d3 == 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyGenericPartError, ExistenceError, ParameterError, ScopeError
from .halmos import HalmosDecomposition, ProjectionPair
from .intertwine import intertwiner_exists
from .numerics import adjoint, hermitian_eig, operator_norm, unitarity_defect
from .sampling import haar_unitary, make_rng


@dataclass(frozen=True)
class RotationCertificate:
    """Residuals of the three defining conditions.

    ``passed`` is decided by the three conditions alone; ``unitarity`` is
    reported for information.
    """

    residual_intertwine: float
    residual_square: float
    min_real_part: float
    unitarity: float
    tol: float
    passed: bool


def direct_rotation_generic(dec: HalmosDecomposition) -> np.ndarray:
    """The unique direct rotation of the generic part (local coordinates)::

        S = [[√Q0,            −√(I−Q0) D ],
             [Dᴴ √(I−Q0),     Dᴴ √Q0 D   ]]
    """
    if dec.d5 == 0:
        raise EmptyGenericPartError("the pair has no generic part (dim H5 = 0)")
    lam = dec.q0_eigs
    s, c = np.sqrt(lam), np.sqrt(1.0 - lam)
    d = dec.d_unitary
    dh = adjoint(d)
    return np.block([
        [np.diag(s).astype(np.complex128), -c[:, None] * d],
        [dh * c[None, :], dh @ (s[:, None] * d)],
    ])


def rotation_exists(dec: HalmosDecomposition) -> bool:
    """Same criterion as :func:`projpair.intertwine.intertwiner_exists`."""
    return bool(intertwiner_exists(dec))


def direct_rotation(dec: HalmosDecomposition, c=None, seed=0,
                    tol: float | None = None) -> np.ndarray:
    """A direct rotation on the full space.

    ``S = I1 ⊕ [[0, C], [−Cᴴ, 0]] ⊕ I4 ⊕ S_generic`` where ``C : H3 → H2`` is
    any unitary; a seeded Haar unitary is used when `c` is omitted.
    """
    d1, d2, d3, d4, d5, _ = dec.dims
    if d2 != d3:
        raise ExistenceError(d2, d3)
    tol = dec.tol if tol is None else tol
    if c is None:
        c = haar_unitary(d2, make_rng(seed))
    c = np.asarray(c, dtype=np.complex128)
    if c.shape != (d2, d3):
        raise ParameterError(f"c has shape {c.shape}, expected {(d2, d3)}")
    defect = unitarity_defect(c)
    if defect > tol:
        raise ParameterError(f"c is not unitary (defect {defect:.3e} > {tol:.3e})")
    swap = np.block([
        [np.zeros((d2, d2)), c],
        [-adjoint(c), np.zeros((d3, d3))],
    ]).astype(np.complex128)
    generic = direct_rotation_generic(dec) if d5 else np.zeros((0, 0))
    return dec.assemble(np.eye(d1), swap, np.eye(d4), generic)


def verify_direct_rotation(pair: ProjectionPair, s, tol: float = 1e-8) -> RotationCertificate:
    """Measure how well `s` satisfies the direct-rotation conditions.

    Failures are reported through ``passed``; nothing is raised except for a
    size mismatch.
    """
    s = np.asarray(s, dtype=np.complex128)
    P, Q = pair.P, pair.Q
    n = pair.n
    if s.shape != (n, n):
        raise ValueError(f"S has shape {s.shape}, expected {(n, n)}")
    eye = np.eye(n)
    target = (eye - 2 * Q) @ (eye - 2 * P)
    r_int = operator_norm(s @ P - Q @ s)
    r_sq = operator_norm(s @ s - target)
    min_re = float(hermitian_eig(0.5 * (s + adjoint(s))).eigenvalues[0]) if n else 0.0
    passed = r_int <= tol and r_sq <= tol and min_re >= -tol
    return RotationCertificate(r_int, r_sq, min_re, unitarity_defect(s), tol, passed)


def extremal_norm(dec: HalmosDecomposition) -> float:
    """``√(2(1 − √λ0))`` with λ0 the smallest eigenvalue of Q0.

    This is ``‖S − I‖`` for the direct rotation S and the infimum of
    ``‖U − I‖`` over unitaries with ``P = UᴴQU``.  Defined only for pairs in
    generic position; use :func:`projpair.halmos.generic_part` first
    otherwise.
    """
    if not dec.is_generic:
        raise ScopeError(
            f"pair is not in generic position (dims {dec.dims}); "
            "decompose its generic_part first"
        )
    if dec.d5 == 0:
        raise EmptyGenericPartError("the pair has no generic part (dim H5 = 0)")
    lam0 = float(np.min(dec.q0_eigs))
    return float(np.sqrt(2.0 * (1.0 - np.sqrt(lam0))))
