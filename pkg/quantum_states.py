#!/usr/bin/env python3
"""
Quantum State Library
Constructors, keyword grammar and file serialization for the qubit and
two-qubit state families used throughout the toolkit.
"""

import math
import os
from dataclasses import dataclass
from typing import List, Tuple, Union

import numpy as np

from basis_errors import DimensionMismatchError, ParameterDomainError, StateParseError
from quantum_matrix import (
    IDENTITY_2,
    PAULIS,
    DensityMatrix,
    format_matrix_text,
    kron,
    parse_matrix_text,
    read_matrix_file,
    validate_density,
)

BLOCH_TOL = 1e-12
PURITY_TOL = 1e-10
BELL_DIAGONAL_TOL = 1e-12

# Sign patterns (s1, s2, s3) of the Bell-diagonal eigenvalues (1 + s1 c1 + s2 c2 + s3 c3) / 4
BELL_DIAGONAL_SIGNS = ((-1, -1, -1), (-1, 1, 1), (1, -1, 1), (1, 1, -1))


@dataclass(frozen=True)
class BlochVector:
    """Qubit coefficients of rho = I/2 + a s1 + b s2 + c s3 (pure states at radius 1/2)"""
    a: float
    b: float
    c: float

    @property
    def radius_squared(self) -> float:
        return self.a ** 2 + self.b ** 2 + self.c ** 2

    @property
    def is_pure(self) -> bool:
        return abs(self.radius_squared - 0.25) <= PURITY_TOL

    def as_array(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c], dtype=float)


@dataclass(frozen=True)
class BellDiagonalParams:
    """Correlation coefficients of rho = (I + sum_i c_i s_i x s_i) / 4"""
    c1: float
    c2: float
    c3: float

    @property
    def c(self) -> float:
        return max(abs(self.c1), abs(self.c2), abs(self.c3))

    def as_array(self) -> np.ndarray:
        return np.array([self.c1, self.c2, self.c3], dtype=float)

    def eigenvalues(self) -> np.ndarray:
        """Spectrum in the fixed sign-pattern order"""
        coefficients = self.as_array()
        return np.array([(1.0 + np.dot(signs, coefficients)) / 4.0 for signs in BELL_DIAGONAL_SIGNS])

    def is_valid(self) -> bool:
        return bool(np.all(self.eigenvalues() >= -BELL_DIAGONAL_TOL))


@dataclass(frozen=True)
class WernerParam:
    z: float


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

def from_bloch(v: BlochVector) -> DensityMatrix:
    """Qubit state from its Bloch coefficients"""
    if not v.radius_squared <= 0.25 + BLOCH_TOL:
        raise ParameterDomainError(
            f"Bloch vector length {math.sqrt(v.radius_squared):.6g} exceeds 1/2",
            subexpression="a^2 + b^2 + c^2 <= 1/4",
        )
    matrix = IDENTITY_2 / 2 + v.a * PAULIS[0] + v.b * PAULIS[1] + v.c * PAULIS[2]
    return validate_density(matrix)


def bloch_of(rho: DensityMatrix) -> BlochVector:
    """Bloch coefficients of a qubit state (a = tr(rho s1) / 2, ...)"""
    if rho.dim != 2:
        raise ParameterDomainError(f"Bloch coefficients need a qubit, got dimension {rho.dim}")
    a, b, c = (float(np.real(np.trace(rho.matrix @ sigma))) / 2 for sigma in PAULIS)
    return BlochVector(a, b, c)


def pure_state(amplitudes) -> DensityMatrix:
    """Projector onto a normalized copy of the given ket"""
    ket = np.asarray(amplitudes, dtype=complex).reshape(-1)
    norm = np.linalg.norm(ket)
    if norm == 0:
        raise ParameterDomainError("cannot build a state from the zero vector")
    ket = ket / norm
    return validate_density(np.outer(ket, ket.conj()))


def maximally_mixed(dim: int) -> DensityMatrix:
    if dim < 1:
        raise ParameterDomainError(f"dimension must be positive, got {dim}")
    return validate_density(np.eye(dim, dtype=complex) / dim)


def bell() -> DensityMatrix:
    """(|00> + |11>) / sqrt(2)"""
    return pure_state([1, 0, 0, 1])


def werner(z: Union[WernerParam, float]) -> DensityMatrix:
    """(1 - z) I/4 + z |Phi+><Phi+|"""
    z = z.z if isinstance(z, WernerParam) else float(z)
    if not 0.0 <= z <= 1.0:
        raise ParameterDomainError(f"Werner parameter z = {z} outside [0, 1]")
    return validate_density((1 - z) * np.eye(4, dtype=complex) / 4 + z * bell().matrix)


def bell_diagonal(p: BellDiagonalParams) -> DensityMatrix:
    if not p.is_valid():
        smallest = float(np.min(p.eigenvalues()))
        raise ParameterDomainError(
            f"Bell-diagonal triple ({p.c1}, {p.c2}, {p.c3}) gives eigenvalue {smallest:.6g}",
            subexpression="(1 +/- c1 +/- c2 +/- c3) / 4 >= 0",
        )
    matrix = np.eye(4, dtype=complex)
    for coefficient, sigma in zip(p.as_array(), PAULIS):
        matrix = matrix + coefficient * kron(sigma, sigma)
    return validate_density(matrix / 4)


def bell_diagonal_params_of(rho: DensityMatrix) -> BellDiagonalParams:
    """Re-extract c_i = tr(rho s_i x s_i) by Pauli projection"""
    c1, c2, c3 = (float(np.real(np.trace(rho.matrix @ kron(sigma, sigma)))) for sigma in PAULIS)
    return BellDiagonalParams(c1, c2, c3)


def asymmetric_example() -> DensityMatrix:
    """1/2 |00><00| + 1/2 |1><1| x |+><+|: classical on A, not on B"""
    matrix = np.array([
        [2, 0, 0, 0],
        [0, 0, 0, 0],
        [0, 0, 1, 1],
        [0, 0, 1, 1],
    ], dtype=complex) / 4
    return validate_density(matrix)


def tilted_pure_state() -> DensityMatrix:
    """(sqrt(3)|0> + |1>) / 2"""
    return pure_state([math.sqrt(3), 1])


def uncorrected_tilted_matrix() -> np.ndarray:
    """Tilted-state matrix with off-diagonal sqrt(3)/2 instead of sqrt(3)/4; not a state"""
    off = math.sqrt(3) / 2
    return np.array([[0.75, off], [off, 0.25]], dtype=complex)


# ---------------------------------------------------------------------------
# Keyword grammar and files
# ---------------------------------------------------------------------------

STATE_KEYWORDS = ("bell", "werner:z", "bell-diagonal:c1,c2,c3", "bloch:a,b,c",
                  "asymmetric", "c10-example", "tilted", "maximally-mixed:D")


def _parse_numbers(spec: str, text: str, count: int) -> List[float]:
    parts = [part.strip() for part in text.split(",")]
    if len(parts) != count:
        raise StateParseError(f"'{spec}' needs {count} comma-separated numbers", field=spec.split(":")[0])
    try:
        return [float(part) for part in parts]
    except ValueError as e:
        raise StateParseError(f"'{spec}': {e}", field=spec.split(":")[0]) from e


def state_from_keyword(spec: str) -> DensityMatrix:
    """Build a named state: bell, werner:z, bell-diagonal:c1,c2,c3, bloch:a,b,c, ..."""
    name, _, argument = spec.strip().partition(":")
    name = name.lower()

    if name == "bell" and not argument:
        return bell()
    if name in ("asymmetric", "c10-example") and not argument:
        return asymmetric_example()
    if name == "tilted" and not argument:
        return tilted_pure_state()
    if name == "werner":
        (z,) = _parse_numbers(spec, argument, 1)
        return werner(z)
    if name == "bell-diagonal":
        return bell_diagonal(BellDiagonalParams(*_parse_numbers(spec, argument, 3)))
    if name == "bloch":
        return from_bloch(BlochVector(*_parse_numbers(spec, argument, 3)))
    if name == "maximally-mixed":
        try:
            dim = int(argument)
        except ValueError as e:
            raise StateParseError(f"'{spec}': dimension must be an integer", field=name) from e
        return maximally_mixed(dim)

    raise StateParseError(f"unknown state '{spec}'; expected one of {', '.join(STATE_KEYWORDS)} or a file path")


def parse_state(text: str) -> DensityMatrix:
    """Parse the matrix text format and validate it as a state"""
    return validate_density(parse_matrix_text(text))


def serialize_state(rho: DensityMatrix) -> str:
    return format_matrix_text(rho.matrix)


def load_state(path: str) -> DensityMatrix:
    return validate_density(read_matrix_file(path))


def save_state(path: str, rho: DensityMatrix):
    with open(path, "w") as f:
        f.write(serialize_state(rho))


def resolve_state(spec_or_path: str) -> DensityMatrix:
    """Keyword state, or a state file when the argument names an existing path"""
    if os.path.isfile(spec_or_path):
        return load_state(spec_or_path)
    return state_from_keyword(spec_or_path)


def two_qubit_dims(rho: DensityMatrix) -> Tuple[int, int]:
    if rho.dim != 4:
        raise DimensionMismatchError(f"expected a two-qubit state, got dimension {rho.dim}")
    return (2, 2)
