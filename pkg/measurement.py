#!/usr/bin/env python3
"""
Projective Measurement
Rank-1 projector bases, the measurement (dephasing) channel, von Neumann
entropy and basis entropy S(sum_k P_k rho P_k) - S(rho), all in bits.
"""

import math
import os
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from basis_errors import BasisSpecError, DimensionMismatchError, ParameterDomainError, StateParseError
from quantum_matrix import (
    DensityMatrix,
    clamped_eigenvalues,
    eigh,
    format_matrix_text,
    kron,
    orthonormality_error,
    read_matrix_file,
    validate_density,
)

FRAME_TOL = 1e-9
KRON_TOL = 1e-12
UNIT_TOL = 1e-12
ENTROPY_CLAMP = 1e-12

GENERAL = "general"
LOCAL_PRODUCT = "local_product"
SAME_LOCAL = "same_local"


@dataclass(frozen=True)
class UnitaryAxisParam:
    """Parameters of V = t I + i (y1 s1 + y2 s2 + y3 s3)"""
    t: float
    y1: float
    y2: float
    y3: float

    def __post_init__(self):
        norm = self.t ** 2 + self.y1 ** 2 + self.y2 ** 2 + self.y3 ** 2
        if not abs(norm - 1.0) <= UNIT_TOL:
            raise ParameterDomainError(f"t^2 + |y|^2 = {norm:.15g}, expected 1", subexpression="t^2 + y1^2 + y2^2 + y3^2 = 1")

    @classmethod
    def normalized(cls, t: float, y1: float, y2: float, y3: float) -> "UnitaryAxisParam":
        norm = math.sqrt(t ** 2 + y1 ** 2 + y2 ** 2 + y3 ** 2)
        if not math.isfinite(norm) or norm == 0:
            raise ParameterDomainError(f"cannot normalize ({t}, {y1}, {y2}, {y3})", subexpression="0 < t^2 + |y|^2 < inf")
        return cls(t / norm, y1 / norm, y2 / norm, y3 / norm)

    def unitary(self) -> np.ndarray:
        t, y1, y2, y3 = self.t, self.y1, self.y2, self.y3
        return np.array([
            [t + 1j * y3, 1j * y1 + y2],
            [1j * y1 - y2, t - 1j * y3],
        ], dtype=complex)


@dataclass(frozen=True)
class MeasurementAxis:
    """Unit vector n; the basis {(I + n.s)/2, (I - n.s)/2}"""
    z1: float
    z2: float
    z3: float

    def __post_init__(self):
        norm = self.z1 ** 2 + self.z2 ** 2 + self.z3 ** 2
        if not abs(norm - 1.0) <= UNIT_TOL:
            raise ParameterDomainError(f"axis norm^2 = {norm:.15g}, expected 1", subexpression="z1^2 + z2^2 + z3^2 = 1")

    @classmethod
    def normalized(cls, z1: float, z2: float, z3: float) -> "MeasurementAxis":
        norm = math.sqrt(z1 ** 2 + z2 ** 2 + z3 ** 2)
        if not math.isfinite(norm) or norm == 0:
            raise ParameterDomainError(f"cannot normalize axis ({z1}, {z2}, {z3})", subexpression="0 < |z| < inf")
        return cls(z1 / norm, z2 / norm, z3 / norm)

    @classmethod
    def from_angles(cls, polar: float, azimuth: float) -> "MeasurementAxis":
        return cls.normalized(math.sin(polar) * math.cos(azimuth),
                              math.sin(polar) * math.sin(azimuth),
                              math.cos(polar))

    def as_array(self) -> np.ndarray:
        return np.array([self.z1, self.z2, self.z3], dtype=float)


@dataclass(frozen=True, eq=False)
class ProjectorBasis:
    """Complete rank-1 projectors P_k = |u_k><u_k| given by the columns of `frame`"""
    dim: int
    frame: np.ndarray
    structure: str = GENERAL
    factors: Tuple[np.ndarray, ...] = field(default=())

    def __post_init__(self):
        frame = np.array(self.frame, dtype=complex, copy=True)
        if frame.shape != (self.dim, self.dim):
            raise BasisSpecError(f"frame shape {frame.shape} does not match dimension {self.dim}")
        if not np.all(np.isfinite(frame)):
            raise BasisSpecError("frame has non-finite entries")
        error = orthonormality_error(frame)
        if not error <= FRAME_TOL:
            raise BasisSpecError(f"frame columns are not orthonormal (error {error:.3e})")
        if self.factors:
            expected = kron(*self.factors) if len(self.factors) == 2 else frame
            if np.max(np.abs(expected - frame)) > KRON_TOL:
                raise BasisSpecError("frame does not equal the Kronecker product of its factors")
        frame.setflags(write=False)
        object.__setattr__(self, "frame", frame)

    def projectors(self):
        return [np.outer(self.frame[:, k], self.frame[:, k].conj()) for k in range(self.dim)]


# ---------------------------------------------------------------------------
# Bases
# ---------------------------------------------------------------------------

def axis_from_param(p: UnitaryAxisParam) -> MeasurementAxis:
    """Direction n with V s3 V^dagger = n.s"""
    t, y1, y2, y3 = p.t, p.y1, p.y2, p.y3
    z1 = 2 * (-t * y2 + y1 * y3)
    z2 = 2 * (t * y1 + y2 * y3)
    z3 = t ** 2 + y3 ** 2 - y1 ** 2 - y2 ** 2
    return MeasurementAxis.normalized(z1, z2, z3)


def qubit_frame_from_axis(axis: MeasurementAxis) -> np.ndarray:
    """Columns |+n>, |-n>"""
    polar = math.acos(max(-1.0, min(1.0, axis.z3)))
    azimuth = math.atan2(axis.z2, axis.z1)
    up = np.array([math.cos(polar / 2), np.exp(1j * azimuth) * math.sin(polar / 2)], dtype=complex)
    down = np.array([-np.exp(-1j * azimuth) * math.sin(polar / 2), math.cos(polar / 2)], dtype=complex)
    return np.column_stack([up, down])


def qubit_basis_from_axis(axis: MeasurementAxis) -> ProjectorBasis:
    return ProjectorBasis(dim=2, frame=qubit_frame_from_axis(axis))


def qubit_basis_from_param(p: UnitaryAxisParam) -> ProjectorBasis:
    """{V|k><k|V^dagger : k = 0, 1}"""
    return ProjectorBasis(dim=2, frame=p.unitary())


def computational_basis(dim: int) -> ProjectorBasis:
    return ProjectorBasis(dim=dim, frame=np.eye(dim, dtype=complex))


def general_basis(frame) -> ProjectorBasis:
    frame = np.asarray(frame, dtype=complex)
    return ProjectorBasis(dim=frame.shape[0], frame=frame)


def product_basis(basis_a: ProjectorBasis, basis_b: ProjectorBasis) -> ProjectorBasis:
    """Local product basis {P_k x Q_l}, index k * dB + l"""
    return ProjectorBasis(
        dim=basis_a.dim * basis_b.dim,
        frame=kron(basis_a.frame, basis_b.frame),
        structure=LOCAL_PRODUCT,
        factors=(basis_a.frame, basis_b.frame),
    )


def same_local_basis(local_frame) -> ProjectorBasis:
    """Same local frame applied to both factors"""
    if isinstance(local_frame, UnitaryAxisParam):
        local_frame = local_frame.unitary()
    local_frame = np.asarray(local_frame, dtype=complex)
    return ProjectorBasis(
        dim=local_frame.shape[0] ** 2,
        frame=kron(local_frame, local_frame),
        structure=SAME_LOCAL,
        factors=(local_frame, local_frame),
    )


def eigenbasis(rho: DensityMatrix) -> ProjectorBasis:
    return general_basis(eigh(rho.matrix).eigenvectors)


def fourier_frame(dim: int) -> np.ndarray:
    indices = np.arange(dim)
    return np.exp(2j * np.pi * np.outer(indices, indices) / dim) / math.sqrt(dim)


def unbiased_basis(rho: DensityMatrix) -> ProjectorBasis:
    """Basis mutually unbiased to an eigenbasis of rho: every outcome has probability 1/D"""
    return general_basis(eigh(rho.matrix).eigenvectors @ fourier_frame(rho.dim))


# ---------------------------------------------------------------------------
# Channel and entropies
# ---------------------------------------------------------------------------

def _require_match(rho: DensityMatrix, basis: ProjectorBasis):
    if rho.dim != basis.dim:
        raise DimensionMismatchError(f"state dimension {rho.dim} does not match basis dimension {basis.dim}")


def outcome_probabilities(rho, frame) -> np.ndarray:
    """p_k = <u_k| rho |u_k> for the columns of frame"""
    matrix = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho)
    frame = np.asarray(frame)
    probabilities = np.real(np.einsum("ik,ij,jk->k", frame.conj(), matrix, frame))
    return np.clip(probabilities, 0.0, None)


def apply_measurement(rho: DensityMatrix, basis: ProjectorBasis) -> DensityMatrix:
    """sum_k P_k rho P_k"""
    _require_match(rho, basis)
    probabilities = outcome_probabilities(rho, basis.frame)
    dephased = (basis.frame * probabilities) @ basis.frame.conj().T
    return validate_density(dephased)


def shannon_entropy(probabilities) -> float:
    """-sum p log2 p with p < 1e-12 treated as zero"""
    probabilities = np.asarray(probabilities, dtype=float)
    kept = probabilities[probabilities >= ENTROPY_CLAMP]
    return float(-np.sum(kept * np.log2(kept)))


def von_neumann_entropy(rho: DensityMatrix) -> float:
    return shannon_entropy(clamped_eigenvalues(rho))


def measured_entropy(rho: DensityMatrix, basis: ProjectorBasis) -> float:
    """S(sum_k P_k rho P_k); the dephased spectrum is the outcome distribution"""
    _require_match(rho, basis)
    return shannon_entropy(outcome_probabilities(rho, basis.frame))


def basis_entropy(rho: DensityMatrix, basis: ProjectorBasis, state_entropy: Optional[float] = None) -> float:
    """Entropy gained by measuring rho in the basis"""
    if state_entropy is None:
        state_entropy = von_neumann_entropy(rho)
    return measured_entropy(rho, basis) - state_entropy


def relative_entropy_of_coherence(rho: DensityMatrix) -> float:
    """Basis entropy in the computational basis"""
    return basis_entropy(rho, computational_basis(rho.dim))


# ---------------------------------------------------------------------------
# Basis specification grammar
#   comp | axis:z1,z2,z3 | product:<spec>x<spec> | samelocal:t,y1,y2,y3 | frame:<file>
# ---------------------------------------------------------------------------

def _numbers(spec: str, text: str, count: int):
    parts = [part.strip() for part in text.split(",")]
    if len(parts) != count:
        raise BasisSpecError(f"'{spec}' needs {count} comma-separated numbers")
    try:
        numbers = [float(part) for part in parts]
    except ValueError as e:
        raise BasisSpecError(f"'{spec}': {e}") from e
    if not all(math.isfinite(number) for number in numbers):
        raise BasisSpecError(f"'{spec}' has a non-finite component")
    return numbers


def _factor_dim(dim: Optional[int]) -> Optional[int]:
    if dim is None:
        return None
    root = math.isqrt(dim)
    return root if root * root == dim else None


def _split_product(spec: str, argument: str, dim: Optional[int]) -> ProjectorBasis:
    factor_dim = _factor_dim(dim)
    last_error = None
    # Try every 'x' until both halves parse; file paths may contain the letter
    for position, letter in enumerate(argument):
        if letter != "x":
            continue
        left, right = argument[:position], argument[position + 1:]
        try:
            basis_a = parse_basis_spec(left, factor_dim)
            basis_b = parse_basis_spec(right, factor_dim)
        except (BasisSpecError, ParameterDomainError) as e:
            last_error = e
            continue
        return product_basis(basis_a, basis_b)
    if last_error is not None:
        raise BasisSpecError(f"'{spec}': {last_error}") from last_error
    raise BasisSpecError(f"'{spec}' is not of the form product:<spec>x<spec>")


def load_frame(path: str) -> ProjectorBasis:
    if not os.path.isfile(path):
        raise BasisSpecError(f"frame file '{path}' not found")
    try:
        return general_basis(read_matrix_file(path))
    except StateParseError as e:
        raise BasisSpecError(f"frame file '{path}': {e}") from e


def save_frame(path: str, basis: ProjectorBasis):
    with open(path, "w") as f:
        f.write(format_matrix_text(basis.frame))


def parse_basis_spec(spec: str, dim: Optional[int] = None) -> ProjectorBasis:
    """Build a basis from the CLI grammar; `dim` sizes the computational basis"""
    spec = spec.strip()
    name, _, argument = spec.partition(":")
    name = name.lower()

    if name == "comp" and not argument:
        return computational_basis(dim if dim is not None else 2)
    if name == "axis":
        return qubit_basis_from_axis(MeasurementAxis.normalized(*_numbers(spec, argument, 3)))
    if name == "samelocal":
        return same_local_basis(UnitaryAxisParam.normalized(*_numbers(spec, argument, 4)))
    if name == "product":
        return _split_product(spec, argument, dim)
    if name == "frame" and argument:
        return load_frame(argument)

    raise BasisSpecError(f"unknown basis '{spec}'; expected comp, axis:..., product:AxB, samelocal:..., frame:<file>")
