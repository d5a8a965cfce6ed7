"""Dense complex-matrix kernels.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``; real
input is embedded with zero imaginary part.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import NotHermitianError, NotPSDError, NumericalFailure

_TINY = np.finfo(float).tiny


class EigenSystem(NamedTuple):
    """Eigenvalues (ascending) and orthonormal eigenvectors (columns)."""

    eigenvalues: np.ndarray
    vectors: np.ndarray


def as_complex_matrix(m, name: str = "matrix") -> np.ndarray:
    """Return `m` as a finite 2-D complex128 array (copy when needed)."""
    arr = np.asarray(m)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {arr.shape}")
    arr = arr.astype(np.complex128, copy=False)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return arr


def adjoint(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def operator_norm(m) -> float:
    """Largest singular value of `m` (0 for empty matrices)."""
    m = np.asarray(m)
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, ord=2))


def hermitian_defect(m: np.ndarray) -> float:
    return operator_norm(m - adjoint(m))


def check_hermitian(m, tol: float = 1e-10) -> np.ndarray:
    """Validate ``‖M − Mᴴ‖ ≤ tol·max(1, ‖M‖)`` and return the symmetrized matrix."""
    m = as_complex_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise NotHermitianError(f"matrix is not square: {m.shape}")
    defect = hermitian_defect(m)
    if defect > tol * max(1.0, operator_norm(m)):
        raise NotHermitianError(f"Hermitian defect {defect:.3e} exceeds tolerance")
    return 0.5 * (m + adjoint(m))


def hermitian_eig(h, tol: float = 1e-10) -> EigenSystem:
    """Eigendecomposition of a Hermitian matrix.

    Parameters
    ----------
    h : array_like
        Square matrix, Hermitian within ``tol·max(1, ‖h‖)``.
    tol : float
        Hermitian-defect tolerance.

    Returns
    -------
    EigenSystem
        Ascending real eigenvalues and a unitary matrix of eigenvectors.

    Raises
    ------
    NumericalFailure
        If ``‖H − VΛVᴴ‖ > 1e-12·n·‖H‖``.
    """
    h = check_hermitian(h, tol)
    n = h.shape[0]
    if n == 0:
        return EigenSystem(np.zeros(0), np.zeros((0, 0), dtype=np.complex128))
    try:
        w, v = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"eigensolver did not converge: {exc}") from exc
    residual = operator_norm(h - (v * w) @ adjoint(v))
    bound = 1e-12 * n * max(operator_norm(h), _TINY)
    if residual > bound:
        raise NumericalFailure(
            f"eigen-reconstruction residual {residual:.3e} > {bound:.3e}", residual
        )
    return EigenSystem(w, v)


def psd_sqrt(h, tol: float | None = None) -> np.ndarray:
    """Positive square root of a positive semidefinite Hermitian matrix.

    Eigenvalues in ``[-tol, 0)`` are clamped to zero; the default window is
    ``1e-10·‖H‖``.
    """
    h = check_hermitian(h)
    n = h.shape[0]
    if n == 0:
        return h.copy()
    scale = operator_norm(h)
    if tol is None:
        tol = 1e-10 * scale
    w, v = hermitian_eig(h)
    if w[0] < -tol:
        raise NotPSDError(f"matrix has eigenvalue {w[0]:.3e} < -{tol:.3e}")
    root = np.sqrt(np.clip(w, 0.0, None))
    r = (v * root) @ adjoint(v)
    r = 0.5 * (r + adjoint(r))
    residual = operator_norm(r @ r - h)
    bound = 1e-10 * n * max(scale, _TINY)
    if residual > bound:
        raise NumericalFailure(f"square-root residual {residual:.3e} > {bound:.3e}", residual)
    return r


def unitarity_defect(m) -> float:
    """Distance from unitarity.

    Square input: ``max(‖MᴴM − I‖, ‖MMᴴ − I‖)``.  A tall matrix is measured as
    an isometry (``‖MᴴM − I‖``), a wide one as a co-isometry (``‖MMᴴ − I‖``).
    """
    m = np.asarray(m, dtype=np.complex128)
    rows, cols = m.shape
    if m.size == 0:
        return 0.0
    gram_left = operator_norm(adjoint(m) @ m - np.eye(cols))
    gram_right = operator_norm(m @ adjoint(m) - np.eye(rows))
    if rows == cols:
        return max(gram_left, gram_right)
    return gram_left if rows > cols else gram_right


def block_diag(*blocks) -> np.ndarray:
    """Complex block-diagonal assembly; empty (0×0) blocks are allowed."""
    blocks = [np.asarray(b, dtype=np.complex128).reshape(np.shape(b)) for b in blocks]
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = np.zeros((rows, cols), dtype=np.complex128)
    r = c = 0
    for b in blocks:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out
