"""Seeded random unitaries."""

from __future__ import annotations

import numpy as np


def make_rng(seed=None) -> np.random.Generator:
    """PCG64 generator from an int, a sequence of ints, or an existing Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent stream for one trial, derived from ``(seed, trial)``."""
    return np.random.default_rng([int(seed), int(trial)])


def haar_unitary(n: int, rng) -> np.ndarray:
    """Haar-distributed n×n unitary: QR of a complex Ginibre matrix with the
    phases of diag(R) moved into Q."""
    rng = make_rng(rng)
    if n == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_selfadjoint_unitary(n: int, rng) -> np.ndarray:
    """``V·diag(±1)·Vᴴ`` with V Haar and independent fair signs."""
    rng = make_rng(rng)
    v = haar_unitary(n, rng)
    signs = rng.choice([-1.0, 1.0], size=n)
    u = (v * signs) @ v.conj().T
    return 0.5 * (u + u.conj().T)
