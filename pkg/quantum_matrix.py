#!/usr/bin/env python3
"""
Quantum Matrix Kernel
Dense complex matrices: Hermitian eigendecomposition, Kronecker products,
partial trace, density-matrix validation and the matrix text format.
"""

import json
from dataclasses import dataclass
from functools import reduce
from typing import Sequence, Union

import numpy as np

from basis_errors import (
    DimensionMismatchError,
    NonFiniteEntriesError,
    NotHermitianError,
    NotPositiveSemidefiniteError,
    StateParseError,
    TraceNotOneError,
)

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-10

IDENTITY_2 = np.eye(2, dtype=complex)
SIGMA_1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_3 = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_1, SIGMA_2, SIGMA_3)

SUBSYSTEM_A = "A"
SUBSYSTEM_B = "B"


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Validated Hermitian, positive-semidefinite, unit-trace matrix"""
    dim: int
    matrix: np.ndarray

    def __post_init__(self):
        frozen = np.array(self.matrix, dtype=complex, copy=True)
        frozen.setflags(write=False)
        object.__setattr__(self, "matrix", frozen)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_cmatrix(entries) -> np.ndarray:
    """Coerce entries to a finite 2-D complex array"""
    matrix = np.array(entries, dtype=complex)
    if matrix.ndim != 2 or 0 in matrix.shape:
        raise DimensionMismatchError(f"expected a non-empty 2-D matrix, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise NonFiniteEntriesError("finite entries", float("nan"), "matrix contains NaN or infinity")
    return matrix


def hermitian_deviation(matrix: np.ndarray) -> float:
    return float(np.max(np.abs(matrix - matrix.conj().T)))


def _require_square(matrix: np.ndarray):
    if matrix.shape[0] != matrix.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got {matrix.shape[0]}x{matrix.shape[1]}")


def eigh(matrix) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending"""
    matrix = as_cmatrix(matrix)
    _require_square(matrix)
    deviation = hermitian_deviation(matrix)
    if deviation > HERMITIAN_TOL:
        raise NotHermitianError("max |A - A^dagger|", deviation)

    # Symmetrize so round-off in the input cannot leak into the spectrum
    eigenvalues, eigenvectors = np.linalg.eigh((matrix + matrix.conj().T) / 2)
    return EigenDecomposition(eigenvalues=eigenvalues, eigenvectors=eigenvectors)


def eigvalsh(matrix) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix without validation"""
    matrix = np.asarray(matrix)
    return np.linalg.eigvalsh((matrix + matrix.conj().T) / 2)


def kron(a, b) -> np.ndarray:
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def kron_all(*factors) -> np.ndarray:
    return reduce(kron, factors)


def _resolve_keep(keep: Union[str, int]) -> int:
    if keep in (SUBSYSTEM_A, "a", 0):
        return 0
    if keep in (SUBSYSTEM_B, "b", 1):
        return 1
    raise ValueError(f"unknown subsystem '{keep}', expected 'A' or 'B'")


def partial_trace_matrix(matrix, dims: Sequence[int], keep: Union[str, int]) -> np.ndarray:
    """Partial trace of a bipartite operator, returning the kept block"""
    matrix = np.asarray(matrix, dtype=complex)
    d_a, d_b = int(dims[0]), int(dims[1])
    if d_a * d_b != matrix.shape[0] or matrix.shape[0] != matrix.shape[1]:
        raise DimensionMismatchError(f"dims {d_a}x{d_b} do not match a {matrix.shape[0]}x{matrix.shape[1]} matrix")

    blocks = matrix.reshape(d_a, d_b, d_a, d_b)
    if _resolve_keep(keep) == 0:
        return np.einsum("ijkj->ik", blocks)
    return np.einsum("ijik->jk", blocks)


def partial_trace(rho: DensityMatrix, dims: Sequence[int], keep: Union[str, int]) -> DensityMatrix:
    """Reduced state of subsystem `keep` of a bipartite density matrix"""
    return validate_density(partial_trace_matrix(rho.matrix, dims, keep))


def validate_density(matrix) -> DensityMatrix:
    """Validate a matrix as a density matrix, naming the first violated invariant"""
    if isinstance(matrix, DensityMatrix):
        matrix = matrix.matrix
    matrix = as_cmatrix(matrix)
    _require_square(matrix)

    deviation = hermitian_deviation(matrix)
    if deviation > HERMITIAN_TOL:
        raise NotHermitianError("max |rho - rho^dagger|", deviation)

    trace = complex(np.trace(matrix))
    if abs(trace - 1.0) > TRACE_TOL:
        raise TraceNotOneError("trace", trace.real)

    smallest = float(eigvalsh(matrix)[0])
    if smallest < -PSD_TOL:
        raise NotPositiveSemidefiniteError("smallest eigenvalue", smallest)

    return DensityMatrix(dim=matrix.shape[0], matrix=matrix)


def clamped_eigenvalues(rho: DensityMatrix) -> np.ndarray:
    """Spectrum with tolerance-level negatives clamped to zero"""
    return np.clip(eigvalsh(rho.matrix), 0.0, None)


def orthonormality_error(frame) -> float:
    frame = np.asarray(frame)
    return float(np.max(np.abs(frame.conj().T @ frame - np.eye(frame.shape[1]))))


# ---------------------------------------------------------------------------
# Matrix text format: {"dim": D, "re": [[...]], "im": [[...]]}
# ---------------------------------------------------------------------------

def _format_row(row) -> str:
    return "[" + ", ".join(f"{float(value):.17g}" for value in row) + "]"


def format_matrix_text(matrix) -> str:
    """Serialize a square complex matrix, 17 significant digits per entry"""
    matrix = as_cmatrix(matrix)
    _require_square(matrix)
    re_rows = ",\n    ".join(_format_row(row) for row in matrix.real)
    im_rows = ",\n    ".join(_format_row(row) for row in matrix.imag)
    return (
        "{\n"
        f'  "dim": {matrix.shape[0]},\n'
        f'  "re": [\n    {re_rows}\n  ],\n'
        f'  "im": [\n    {im_rows}\n  ]\n'
        "}\n"
    )


def _parse_block(payload: dict, field: str, dim: int) -> np.ndarray:
    rows = payload.get(field)
    if not isinstance(rows, list) or len(rows) != dim:
        raise StateParseError(f"expected {dim} rows", field=field)
    block = np.zeros((dim, dim))
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise StateParseError(f"row {i} must hold {dim} numbers", field=field)
        for j, value in enumerate(row):
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise StateParseError(f"entry [{i}][{j}] is not a number: {value!r}", field=field)
            try:
                block[i, j] = float(value)
            except OverflowError as e:
                raise StateParseError(f"entry [{i}][{j}] is out of range: {e}", field=field) from e
    return block


def parse_matrix_text(text: str) -> np.ndarray:
    """Parse the matrix text format into a complex array (no state validation)"""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise StateParseError(e.msg, line=e.lineno) from e
    except ValueError as e:
        # Integer literals past the interpreter's digit limit
        raise StateParseError(str(e)) from e

    if not isinstance(payload, dict):
        raise StateParseError("top level must be an object")

    dim = payload.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise StateParseError(f"must be a positive integer, got {dim!r}", field="dim")

    matrix = _parse_block(payload, "re", dim) + 1j * _parse_block(payload, "im", dim)
    if not np.all(np.isfinite(matrix)):
        raise StateParseError("entries must be finite", field="re/im")
    return matrix


def read_matrix_file(path: str) -> np.ndarray:
    """Parse a matrix file; undecodable bytes are a parse error"""
    with open(path, "r", encoding="utf-8") as f:
        try:
            text = f.read()
        except UnicodeDecodeError as e:
            raise StateParseError(f"'{path}' is not UTF-8 text ({e.reason} at byte {e.start})") from e
    return parse_matrix_text(text)


def random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Random Hermitian matrix with Gaussian entries"""
    raw = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (raw + raw.conj().T) / 2


def random_density(dim: int, rng: np.random.Generator, rank: int = None) -> DensityMatrix:
    """Random density matrix from a Ginibre draw of the given rank"""
    rank = dim if rank is None else rank
    ginibre = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = ginibre @ ginibre.conj().T
    return validate_density(rho / np.trace(rho).real)


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Counter-based generator keyed by (seed, stream)"""
    return np.random.Generator(np.random.Philox(key=[int(seed) & 0xFFFFFFFFFFFFFFFF, int(stream)]))
