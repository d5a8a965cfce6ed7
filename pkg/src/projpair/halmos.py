"""Six-subspace (Halmos) canonical form of a pair of orthogonal projections.

For projections P, Q on C^n the space splits as H1 ⊕ ... ⊕ H6 with

    H1 = R(P)∩R(Q),  H2 = R(P)∩N(Q),  H3 = N(P)∩R(Q),  H4 = N(P)∩N(Q),
    H5 = R(P) ⊖ (H1 ⊕ H2),  H6 = the rest,

and in an adapted basis ``P = I ⊕ I ⊕ 0 ⊕ 0 ⊕ I ⊕ 0`` while ``Q`` is
``I ⊕ 0 ⊕ I ⊕ 0`` followed by the 2×2 block

    [[Q0,                   √Q0 √(I−Q0) D],
     [Dᴴ √Q0 √(I−Q0),      Dᴴ (I−Q0) D ]]

with Q0 a positive contraction on H5 whose spectrum avoids {0, 1} and D a
unitary H6 → H5.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .errors import EmptyGenericPartError, NumericalFailure, ProjectionError
from .numerics import (
    adjoint,
    as_complex_matrix,
    block_diag,
    hermitian_defect,
    hermitian_eig,
    operator_norm,
    unitarity_defect,
)

DEFAULT_SPLIT_THRESHOLD = 1e-8


def default_tol(n: int, *mats) -> float:
    """Scale-aware residual budget ``1e-8·n·max(1, ‖P‖, ‖Q‖)``."""
    scale = max([1.0] + [operator_norm(m) for m in mats])
    return 1e-8 * max(n, 1) * scale


@dataclass(frozen=True)
class OrthoProjection:
    """A Hermitian idempotent matrix together with its achieved residuals."""

    matrix: np.ndarray
    tol_used: float
    hermitian_defect: float = 0.0
    idempotency_defect: float = 0.0

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def rank(self) -> int:
        return int(round(np.trace(self.matrix).real))


@dataclass(frozen=True)
class ProjectionPair:
    p: OrthoProjection
    q: OrthoProjection

    def __post_init__(self):
        if self.p.n != self.q.n:
            raise ValueError(f"projection sizes differ: {self.p.n} != {self.q.n}")

    @property
    def n(self) -> int:
        return self.p.n

    @property
    def P(self) -> np.ndarray:
        return self.p.matrix

    @property
    def Q(self) -> np.ndarray:
        return self.q.matrix

    @classmethod
    def from_matrices(cls, p, q, tol: float | None = None) -> "ProjectionPair":
        """Validate two matrices as orthogonal projections and pair them."""
        p = as_complex_matrix(p, "P")
        q = as_complex_matrix(q, "Q")
        if tol is None:
            tol = default_tol(p.shape[0], p, q)
        return cls(validate_projection(p, tol), validate_projection(q, tol))


def validate_projection(m, tol: float = 1e-8) -> OrthoProjection:
    """Check ``M = Mᴴ = M²`` within `tol` and wrap the result.

    The stored matrix is the Hermitian part of `m`.

    Raises
    ------
    ProjectionError
        When either defect exceeds `tol`, or `m` is not square.
    """
    m = as_complex_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ProjectionError(f"matrix is not square: {m.shape}")
    herm = hermitian_defect(m)
    idem = operator_norm(m @ m - m)
    if herm > tol:
        raise ProjectionError(
            f"not Hermitian: ‖M − Mᴴ‖ = {herm:.3e} > {tol:.3e}", herm, idem
        )
    if idem > tol:
        raise ProjectionError(
            f"not idempotent: ‖M² − M‖ = {idem:.3e} > {tol:.3e}", herm, idem
        )
    return OrthoProjection(0.5 * (m + adjoint(m)), tol, herm, idem)


@dataclass(frozen=True)
class HalmosDecomposition:
    """Adapted orthonormal basis and block data of a projection pair.

    Attributes
    ----------
    basis : ndarray, shape (n, n)
        Unitary whose column blocks span H1, ..., H6 in order.
    dims : tuple of int
        ``(d1, ..., d6)``.
    q0_eigs : ndarray
        Ascending spectrum of Q0; Q0 is ``diag(q0_eigs)`` in the stored basis.
    d_unitary : ndarray, shape (d5, d6)
        The unitary D : H6 → H5.
    tol, split_threshold : float
        Residual budget and the 0/1 clustering window used.
    residuals : dict
        Achieved reconstruction residuals (``p``, ``q``) and defects.
    """

    basis: np.ndarray
    dims: tuple
    q0_eigs: np.ndarray
    d_unitary: np.ndarray
    tol: float
    split_threshold: float = DEFAULT_SPLIT_THRESHOLD
    residuals: dict = field(default_factory=dict, compare=False)

    @property
    def n(self) -> int:
        return self.basis.shape[0]

    @property
    def d5(self) -> int:
        return self.dims[4]

    @property
    def q0(self) -> np.ndarray:
        return np.diag(self.q0_eigs).astype(np.complex128)

    @property
    def is_generic(self) -> bool:
        return not any(self.dims[:4])

    def block(self, i: int) -> np.ndarray:
        """Basis columns spanning H_i (1-based)."""
        start = sum(self.dims[: i - 1])
        return self.basis[:, start:start + self.dims[i - 1]]

    def generic_basis(self) -> np.ndarray:
        """Columns spanning H5 ⊕ H6."""
        start = sum(self.dims[:4])
        return self.basis[:, start:]

    def embed_generic(self, block: np.ndarray) -> np.ndarray:
        """Lift an operator on H5 ⊕ H6 (local coordinates) to C^n, zero elsewhere."""
        g = self.generic_basis()
        return g @ block @ adjoint(g)

    def assemble(self, *blocks) -> np.ndarray:
        """``B · block_diag(blocks) · Bᴴ`` for blocks given in basis order."""
        m = block_diag(*blocks)
        if m.shape != (self.n, self.n):
            raise ValueError(f"blocks assemble to {m.shape}, expected {(self.n, self.n)}")
        return self.basis @ m @ adjoint(self.basis)


def _canonical_phase(columns: np.ndarray) -> np.ndarray:
    """Scale each column so its largest-magnitude entry is real positive."""
    if columns.size == 0:
        return columns
    idx = np.argmax(np.abs(columns), axis=0)
    pivots = columns[idx, np.arange(columns.shape[1])]
    return columns * (np.abs(pivots) / pivots)


def _split(w: np.ndarray, thr: float):
    ones = w >= 1.0 - thr
    zeros = w <= thr
    interior = ~(ones | zeros)
    return ones, zeros, interior


def generic_q_block(q0_eigs: np.ndarray, d: np.ndarray) -> np.ndarray:
    """The H5 ⊕ H6 block of Q from the spectrum of Q0 and D."""
    lam = np.asarray(q0_eigs, dtype=float)
    s = np.sqrt(lam)
    c = np.sqrt(1.0 - lam)
    dh = adjoint(d)
    top_right = (s * c)[:, None] * d
    return np.block([
        [np.diag(lam).astype(np.complex128), top_right],
        [adjoint(top_right), dh @ ((1.0 - lam)[:, None] * d)],
    ])


def canonical_form(dims, q0_eigs, d):
    d1, d2, d3, d4, d5, d6 = dims
    p = block_diag(np.eye(d1), np.eye(d2), np.zeros((d3, d3)), np.zeros((d4, d4)),
                   np.eye(d5), np.zeros((d6, d6)))
    q = block_diag(np.eye(d1), np.zeros((d2, d2)), np.eye(d3), np.zeros((d4, d4)),
                   generic_q_block(q0_eigs, d))
    return p, q


def canonical_matrices(dec: HalmosDecomposition):
    """P and Q written in the adapted basis (the block-diagonal canonical form)."""
    return canonical_form(dec.dims, dec.q0_eigs, dec.d_unitary)


def decompose(pair: ProjectionPair, tol: float | None = None,
              split_threshold: float = DEFAULT_SPLIT_THRESHOLD) -> HalmosDecomposition:
    """Compute the six-subspace decomposition of `pair`.

    H1/H2/H5 come from the spectrum of the compression of Q to R(P)
    (eigenvalue 1, 0, interior); H3/H4/H6 from the compression of Q to N(P).
    Interior eigenvalues within `split_threshold` of 0 or 1 are assigned to
    the intersection blocks.

    Raises
    ------
    NumericalFailure
        If the two sides disagree on the interior dimension, the recovered D
        is not unitary within ``10·tol``, or the reconstruction misses `tol`.
    """
    P, Q = pair.P, pair.Q
    n = pair.n
    if tol is None:
        tol = default_tol(n, P, Q)

    wp, vp = hermitian_eig(P)
    range_p = vp[:, wp > 0.5]
    null_p = vp[:, wp <= 0.5]

    w_r, v_r = hermitian_eig(adjoint(range_p) @ Q @ range_p)
    ones, zeros, interior = _split(w_r, split_threshold)
    b1 = range_p @ v_r[:, ones]
    b2 = range_p @ v_r[:, zeros]
    b5 = range_p @ v_r[:, interior]
    q0_eigs = w_r[interior]

    w_n, v_n = hermitian_eig(adjoint(null_p) @ Q @ null_p)
    ones_n, zeros_n, interior_n = _split(w_n, split_threshold)
    b3 = null_p @ v_n[:, ones_n]
    b4 = null_p @ v_n[:, zeros_n]
    # On H6 the compression of Q is Dᴴ(I − Q0)D; reverse so 1 − μ ascends with q0_eigs.
    b6 = (null_p @ v_n[:, interior_n])[:, ::-1]

    if b5.shape[1] != b6.shape[1]:
        raise NumericalFailure(
            f"inconsistent split: dim H5 = {b5.shape[1]} but dim H6 = {b6.shape[1]}; "
            "try a different split_threshold"
        )

    b1, b2, b3, b4, b5, b6 = (_canonical_phase(b) for b in (b1, b2, b3, b4, b5, b6))
    basis = np.hstack([b1, b2, b3, b4, b5, b6])
    dims = tuple(int(b.shape[1]) for b in (b1, b2, b3, b4, b5, b6))

    cross = adjoint(b5) @ Q @ b6
    d_unitary = cross / np.sqrt(q0_eigs * (1.0 - q0_eigs))[:, None]
    d_defect = unitarity_defect(d_unitary)
    if d_defect > 10 * tol:
        raise NumericalFailure(
            f"recovered D is not unitary (defect {d_defect:.3e}); eigenvalue clusters "
            "were probably mis-split", d_defect,
        )

    p_rec, q_rec = canonical_form(dims, q0_eigs, d_unitary)
    res_p = operator_norm(basis @ p_rec @ adjoint(basis) - P)
    res_q = operator_norm(basis @ q_rec @ adjoint(basis) - Q)
    if max(res_p, res_q) > tol:
        raise NumericalFailure(
            f"reconstruction residual {max(res_p, res_q):.3e} exceeds tol {tol:.3e}",
            max(res_p, res_q),
        )
    residuals = {
        "p": res_p,
        "q": res_q,
        "basis_unitarity": unitarity_defect(basis),
        "d_unitarity": d_defect,
    }
    return HalmosDecomposition(basis, dims, q0_eigs, d_unitary, tol, split_threshold, residuals)


def reconstruct(dec: HalmosDecomposition) -> ProjectionPair:
    """Rebuild (P, Q) from the block data and the adapted basis."""
    p, q = canonical_matrices(dec)
    b = dec.basis
    return ProjectionPair.from_matrices(b @ p @ adjoint(b), b @ q @ adjoint(b), tol=dec.tol)


def generic_part(dec: HalmosDecomposition) -> ProjectionPair:
    """The restriction (P̃, Q̃) of the pair to H5 ⊕ H6, in local coordinates."""
    if dec.d5 == 0:
        raise EmptyGenericPartError("the pair has no generic part (dim H5 = 0)")
    d5 = dec.d5
    p = block_diag(np.eye(d5), np.zeros((d5, d5)))
    q = generic_q_block(dec.q0_eigs, dec.d_unitary)
    return ProjectionPair.from_matrices(p, q, tol=dec.tol)


@dataclass(frozen=True)
class PrincipalAngles:
    """Principal angles between R(P) and R(Q), ascending.

    ``zero_count`` angles come from H1, ``interior`` are ``arccos √λ`` for λ
    in the spectrum of Q0, and ``right_count = min(d2, d3)`` right angles
    close the list.  ``right_p``/``right_q`` record d2 and d3.
    """

    angles: np.ndarray
    zero_count: int
    interior: np.ndarray
    right_count: int
    right_p: int
    right_q: int


def principal_angles(dec: HalmosDecomposition) -> PrincipalAngles:
    d1, d2, d3 = dec.dims[:3]
    interior = np.sort(np.arccos(np.sqrt(dec.q0_eigs)))
    right = min(d2, d3)
    angles = np.concatenate([np.zeros(d1), interior, np.full(right, np.pi / 2)])
    return PrincipalAngles(angles, d1, interior, right, d2, d3)


def norm_distance(pair: ProjectionPair) -> float:
    """Operator norm ``‖P − Q‖``."""
    return operator_norm(pair.P - pair.Q)


def canonicalize_d(dec: HalmosDecomposition) -> HalmosDecomposition:
    """Rotate the H6 basis by Dᴴ so the stored D becomes the identity."""
    if dec.d5 == 0:
        return dec
    start = sum(dec.dims[:5])
    basis = dec.basis.copy()
    basis[:, start:] = basis[:, start:] @ adjoint(dec.d_unitary)
    return replace(dec, basis=basis,
                   d_unitary=np.eye(dec.d5, dtype=np.complex128))
