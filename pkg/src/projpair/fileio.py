"""JSON file formats.

Matrix file::

    {"rows": 2, "cols": 2, "data": [[[re, im], [re, im]], [[re, im], [re, im]]]}

Doubles are written with 17 significant digits so a write/read cycle is
bit-exact.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import MatrixFileError
from .halmos import HalmosDecomposition
from .intertwine import IntertwinerParams
from .numerics import unitarity_defect


def _fmt_float(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise MatrixFileError(f"non-finite value {x!r} cannot be serialized")
    return format(x, ".17g")


def _dumps(obj, indent: int = 0) -> str:
    """Minimal JSON writer with fixed float formatting and compact innermost lists."""
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad}  {json.dumps(str(k))}: {_dumps(v, indent + 1)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if all(not isinstance(v, (list, tuple, dict)) for v in obj):
            return "[" + ", ".join(_dumps(v) for v in obj) + "]"
        if all(isinstance(v, (list, tuple)) and all(not isinstance(w, (list, tuple, dict)) for w in v)
               for v in obj):
            return "[" + ", ".join(_dumps(v) for v in obj) + "]"
        items = [pad + "  " + _dumps(v, indent + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(obj)
    if obj is None:
        return "null"
    return json.dumps(obj)


def matrix_to_obj(m) -> dict:
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2:
        raise MatrixFileError(f"expected a 2-D matrix, got shape {m.shape}")
    rows, cols = m.shape
    data = [[[float(z.real), float(z.imag)] for z in row] for row in m]
    return {"rows": rows, "cols": cols, "data": data}


def matrix_from_obj(obj, where: str = "matrix") -> np.ndarray:
    try:
        rows = obj["rows"]
        cols = obj["cols"]
        data = obj["data"]
    except (KeyError, TypeError) as exc:
        raise MatrixFileError(f"{where}: missing field {exc}") from exc
    if not (isinstance(rows, int) and isinstance(cols, int)) or rows < 0 or cols < 0:
        raise MatrixFileError(f"{where}: rows/cols must be nonnegative integers")
    if not isinstance(data, list) or len(data) != rows:
        raise MatrixFileError(f"{where}: expected {rows} rows of data")
    out = np.zeros((rows, cols), dtype=np.complex128)
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != cols:
            raise MatrixFileError(f"{where}: row {i} does not have {cols} entries")
        for j, entry in enumerate(row):
            if (not isinstance(entry, list) or len(entry) != 2
                    or not all(isinstance(x, (int, float)) and not isinstance(x, bool)
                               for x in entry)):
                raise MatrixFileError(f"{where}: entry ({i}, {j}) is not a [re, im] pair")
            re, im = float(entry[0]), float(entry[1])
            if not (math.isfinite(re) and math.isfinite(im)):
                raise MatrixFileError(f"{where}: entry ({i}, {j}) is not finite")
            out[i, j] = complex(re, im)
    return out


def _load_json(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MatrixFileError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFileError(f"{path}: invalid JSON: {exc}") from exc


def _write_text(path, text: str) -> None:
    try:
        Path(path).write_text(text + "\n")
    except OSError as exc:
        raise MatrixFileError(f"cannot write {path}: {exc}") from exc


def read_matrix(path) -> np.ndarray:
    return matrix_from_obj(_load_json(path), str(path))


def write_matrix(path, m) -> None:
    _write_text(path, _dumps(matrix_to_obj(m)))


def decomposition_to_obj(dec: HalmosDecomposition) -> dict:
    return {
        "dims": list(dec.dims),
        "q0_eigenvalues": [float(x) for x in dec.q0_eigs],
        "basis": matrix_to_obj(dec.basis),
        "d_unitary": matrix_to_obj(dec.d_unitary),
        "tol": float(dec.tol),
        "split_threshold": float(dec.split_threshold),
        "residuals": {k: float(v) for k, v in dec.residuals.items()},
    }


def decomposition_from_obj(obj, where: str = "decomposition") -> HalmosDecomposition:
    try:
        dims = tuple(obj["dims"])
        q0 = np.asarray(obj["q0_eigenvalues"], dtype=float)
        basis = matrix_from_obj(obj["basis"], f"{where}.basis")
        d = matrix_from_obj(obj["d_unitary"], f"{where}.d_unitary")
        tol = float(obj["tol"])
        thr = float(obj["split_threshold"])
        residuals = {k: float(v) for k, v in obj.get("residuals", {}).items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise MatrixFileError(f"{where}: malformed decomposition ({exc})") from exc
    if len(dims) != 6 or any(not isinstance(x, int) or x < 0 for x in dims):
        raise MatrixFileError(f"{where}: dims must be six nonnegative integers")
    n, d5 = sum(dims), dims[4]
    if dims[4] != dims[5]:
        raise MatrixFileError(f"{where}: d5 != d6")
    if basis.shape != (n, n) or d.shape != (d5, d5) or q0.shape != (d5,):
        raise MatrixFileError(f"{where}: block sizes inconsistent with dims {dims}")
    if unitarity_defect(basis) > tol or unitarity_defect(d) > 10 * tol:
        raise MatrixFileError(f"{where}: basis or D is not unitary within tolerance")
    if d5 and (q0.min() <= thr or q0.max() >= 1 - thr or np.any(np.diff(q0) < 0)):
        raise MatrixFileError(f"{where}: q0 eigenvalues must ascend inside (thr, 1 − thr)")
    return HalmosDecomposition(basis, dims, q0, d, tol, thr, residuals)


def write_decomposition(path, dec: HalmosDecomposition) -> None:
    _write_text(path, _dumps(decomposition_to_obj(dec)))


def read_decomposition(path) -> HalmosDecomposition:
    return decomposition_from_obj(_load_json(path), str(path))


PARAM_KEYS = ("u1", "c2", "c3", "u4", "u0", "s0")


def read_params(path) -> IntertwinerParams:
    """Parameter file: a JSON object mapping any of u1, c2, c3, u4, u0, s0 to
    a matrix object."""
    obj = _load_json(path)
    if not isinstance(obj, dict):
        raise MatrixFileError(f"{path}: expected a JSON object")
    unknown = set(obj) - set(PARAM_KEYS)
    if unknown:
        raise MatrixFileError(f"{path}: unknown parameter(s) {sorted(unknown)}")
    return IntertwinerParams(**{k: matrix_from_obj(v, f"{path}.{k}") for k, v in obj.items()})


def write_params(path, params: IntertwinerParams) -> None:
    obj = {k: matrix_to_obj(getattr(params, k)) for k in PARAM_KEYS
           if getattr(params, k) is not None}
    _write_text(path, _dumps(obj))
