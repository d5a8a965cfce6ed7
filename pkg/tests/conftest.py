import numpy as np
import pytest

from projpair import ProjectionPair, decompose

R3 = np.sqrt(3.0)
ROT_Q = np.array([[0.25, R3 / 4], [R3 / 4, 0.75]])


def pair_a():
    """P = Q = diag(1, 0)."""
    return ProjectionPair.from_matrices(np.diag([1.0, 0.0]), np.diag([1.0, 0.0]))


def pair_b():
    """Orthogonal ranges: P = diag(1, 0), Q = diag(0, 1)."""
    return ProjectionPair.from_matrices(np.diag([1.0, 0.0]), np.diag([0.0, 1.0]))


def pair_c():
    """Generic 2×2 pair with interior angle π/3."""
    return ProjectionPair.from_matrices(np.diag([1.0, 0.0]), ROT_Q)


def pair_d():
    """Direct sum of fixtures B and C (n = 4)."""
    p = np.zeros((4, 4))
    q = np.zeros((4, 4))
    p[:2, :2] = np.diag([1.0, 0.0])
    q[:2, :2] = np.diag([0.0, 1.0])
    p[2:, 2:] = np.diag([1.0, 0.0])
    q[2:, 2:] = ROT_Q
    return ProjectionPair.from_matrices(p, q)


def pair_e():
    """P = diag(1, 1, 0), Q = diag(1, 0, 0): d2 = 1, d3 = 0."""
    return ProjectionPair.from_matrices(np.diag([1.0, 1.0, 0.0]), np.diag([1.0, 0.0, 0.0]))


FIXTURES = {"A": pair_a, "B": pair_b, "C": pair_c, "D": pair_d, "E": pair_e}


@pytest.fixture(params=sorted(FIXTURES))
def any_fixture(request):
    pair = FIXTURES[request.param]()
    return request.param, pair, decompose(pair)


def subspace_projector(cols):
    """Orthogonal projector onto the span of the columns (independent of decompose)."""
    if cols.shape[1] == 0:
        return np.zeros((cols.shape[0], cols.shape[0]))
    q, _ = np.linalg.qr(cols)
    return q @ q.conj().T


def intersection_dim(p, q, tol=1e-8):
    """dim R(p) ∩ R(q) via the null space of [[I − p], [I − q]] (SVD count)."""
    n = p.shape[0]
    stacked = np.vstack([np.eye(n) - p, np.eye(n) - q])
    s = np.linalg.svd(stacked, compute_uv=False)
    return int(np.sum(s <= tol))


# -- acceptance report ------------------------------------------------------

ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key:>2}: {detail}")
