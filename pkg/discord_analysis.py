#!/usr/bin/env python3
"""
Discord Analysis
Quantum mutual information, measured conditional entropy, variational and
closed-form discord of two-qubit states, and the minimum-basis-entropy
discord detector.
"""

import math
from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from basis_errors import DimensionMismatchError, ParameterDomainError
from extremal_search import BasisClass, ExtremalResult, OptimizerConfig, min_basis_entropy, multistart_minimize
from measurement import MeasurementAxis, qubit_frame_from_axis, von_neumann_entropy
from quantum_matrix import DensityMatrix, partial_trace
from quantum_states import BellDiagonalParams, WernerParam, two_qubit_dims, werner

MEASURE_A = "MeasureA"
MEASURE_B = "MeasureB"

DISCORD_PRESENT = "DiscordPresent"
NO_EVIDENCE = "NoEvidence"
DETECTION_THRESHOLD = 1e-4

OUTCOME_CLAMP = 1e-12

# Two different values printed for delta(A:B) of the asymmetric example; neither is taken as ground truth
REPORTED_ASYMMETRIC_DISCORD = (0.1887, 0.2896)


@dataclass(frozen=True)
class DiscordResult:
    delta: float
    side: str
    optimal_axis: MeasurementAxis
    mutual_information: float
    measured_mutual: float
    converged: bool = True


@dataclass(frozen=True)
class DiscordDetection:
    tag: str
    min_basis_entropy: float
    extremal: Optional[ExtremalResult] = None

    @property
    def present(self) -> bool:
        return self.tag == DISCORD_PRESENT


@dataclass(frozen=True)
class WernerSweepRow:
    z: float
    discord: float
    min_basis_entropy: float


def resolve_side(side: str) -> str:
    """Accept MeasureA/MeasureB or the subsystem letter being measured"""
    normalized = side.strip()
    if normalized in (MEASURE_A, "A", "a"):
        return MEASURE_A
    if normalized in (MEASURE_B, "B", "b"):
        return MEASURE_B
    raise ParameterDomainError(f"unknown measurement side '{side}', expected A or B")


def _split(side: str) -> Tuple[str, str]:
    """(measured subsystem, unmeasured subsystem)"""
    return ("B", "A") if resolve_side(side) == MEASURE_B else ("A", "B")


def mutual_information(rho: DensityMatrix, dims: Sequence[int] = (2, 2)) -> float:
    """S(A) + S(B) - S(AB)"""
    if dims[0] * dims[1] != rho.dim:
        raise DimensionMismatchError(f"dims {dims[0]}x{dims[1]} do not match state dimension {rho.dim}")
    entropy_a = von_neumann_entropy(partial_trace(rho, dims, "A"))
    entropy_b = von_neumann_entropy(partial_trace(rho, dims, "B"))
    return entropy_a + entropy_b - von_neumann_entropy(rho)


def _unnormalized_conditionals(rho: DensityMatrix, frames: np.ndarray, side: str) -> np.ndarray:
    """Unnormalized post-measurement states of the unmeasured qubit, shape (axes, outcomes, 2, 2)"""
    blocks = rho.matrix.reshape(2, 2, 2, 2)
    bras = frames.conj()
    if resolve_side(side) == MEASURE_B:
        return np.einsum("gbk,abcd,gdk->gkac", bras, blocks, frames)
    return np.einsum("gak,abcd,gck->gkbd", bras, blocks, frames)


def _weighted_entropies(conditionals: np.ndarray) -> np.ndarray:
    """sum_b p_b S(rho_b) per axis from unnormalized 2x2 blocks"""
    weights = np.real(conditionals[..., 0, 0] + conditionals[..., 1, 1])
    determinants = np.real(conditionals[..., 0, 0] * conditionals[..., 1, 1]
                           - conditionals[..., 0, 1] * conditionals[..., 1, 0])
    safe = np.where(weights > OUTCOME_CLAMP, weights, 1.0)
    discriminant = np.clip(1.0 - 4.0 * determinants / safe ** 2, 0.0, 1.0)
    upper = (1.0 + np.sqrt(discriminant)) / 2
    lower = 1.0 - upper
    entropies = np.zeros_like(upper)
    for eigen in (upper, lower):
        kept = eigen > OUTCOME_CLAMP
        entropies[kept] -= eigen[kept] * np.log2(eigen[kept])
    entropies = np.where(weights > OUTCOME_CLAMP, entropies, 0.0)
    return np.sum(weights * entropies, axis=-1)


def measured_conditional_entropy(rho: DensityMatrix, axis: MeasurementAxis, side: str = MEASURE_B) -> float:
    """sum_b p_b S(rho_{unmeasured | b}) for the measurement along `axis`"""
    two_qubit_dims(rho)
    frames = qubit_frame_from_axis(axis)[np.newaxis]
    return float(_weighted_entropies(_unnormalized_conditionals(rho, frames, side))[0])


def _entropy_terms(rho: DensityMatrix, side: str) -> Tuple[float, float, float]:
    """(S(measured), S(unmeasured), S(AB))"""
    measured, unmeasured = _split(side)
    dims = two_qubit_dims(rho)
    return (von_neumann_entropy(partial_trace(rho, dims, measured)),
            von_neumann_entropy(partial_trace(rho, dims, unmeasured)),
            von_neumann_entropy(rho))


def _assemble(rho: DensityMatrix, side: str, axis: MeasurementAxis, conditional: float, converged: bool) -> DiscordResult:
    entropy_measured, entropy_unmeasured, entropy_joint = _entropy_terms(rho, side)
    mutual = entropy_measured + entropy_unmeasured - entropy_joint
    measured_mutual = entropy_unmeasured - conditional
    return DiscordResult(
        delta=mutual - measured_mutual,
        side=resolve_side(side),
        optimal_axis=axis,
        mutual_information=mutual,
        measured_mutual=measured_mutual,
        converged=converged,
    )


def discord_variational(rho: DensityMatrix, side: str = MEASURE_B,
                        config: OptimizerConfig = OptimizerConfig(starts=32)) -> DiscordResult:
    """I(A:B) - J(A:B) minimized over the measurement axis of the measured qubit"""
    two_qubit_dims(rho)

    def objective(angles):
        frames = qubit_frame_from_axis(MeasurementAxis.from_angles(angles[0], angles[1]))[np.newaxis]
        return float(_weighted_entropies(_unnormalized_conditionals(rho, frames, side))[0])

    anchors = [np.array([0.0, 0.0]), np.array([math.pi / 2, 0.0]), np.array([math.pi / 2, math.pi / 2])]
    outcome = multistart_minimize(objective, 2, config, anchors)
    axis = MeasurementAxis.from_angles(outcome.params[0], outcome.params[1])
    return _assemble(rho, side, axis, outcome.value, outcome.converged)


def discord_grid_oracle(rho: DensityMatrix, side: str = MEASURE_B,
                        polar_points: int = 721, azimuth_points: int = 1441,
                        chunk_rows: int = 24) -> DiscordResult:
    """Exhaustive search over a (polar x azimuth) grid of measurement axes"""
    two_qubit_dims(rho)
    polar = np.linspace(0.0, math.pi, polar_points)
    azimuth = np.linspace(0.0, 2 * math.pi, azimuth_points)

    best_value, best_axis = math.inf, None
    for start in range(0, polar_points, chunk_rows):
        theta, phi = np.meshgrid(polar[start:start + chunk_rows], azimuth, indexing="ij")
        theta, phi = theta.ravel(), phi.ravel()
        frames = np.empty((theta.size, 2, 2), dtype=complex)
        frames[:, 0, 0] = np.cos(theta / 2)
        frames[:, 1, 0] = np.exp(1j * phi) * np.sin(theta / 2)
        frames[:, 0, 1] = -np.exp(-1j * phi) * np.sin(theta / 2)
        frames[:, 1, 1] = np.cos(theta / 2)

        values = _weighted_entropies(_unnormalized_conditionals(rho, frames, side))
        index = int(np.argmin(values))
        if values[index] < best_value:
            best_value = float(values[index])
            best_axis = MeasurementAxis.from_angles(theta[index], phi[index])

    return _assemble(rho, side, best_axis, best_value, True)


def luo_discord(p: BellDiagonalParams) -> float:
    """I(rho) - C(rho) for the Bell-diagonal family"""
    mutual = sum(value * math.log2(value) for value in (4 * p.eigenvalues()) if value > OUTCOME_CLAMP) / 4
    c = p.c
    classical = sum(weight * math.log2(weight) / 2
                    for weight in (1 - c, 1 + c) if weight > OUTCOME_CLAMP)
    return mutual - classical


def detect_discord(rho: DensityMatrix, config: OptimizerConfig = OptimizerConfig()) -> DiscordDetection:
    """Nonzero minimum basis entropy over local product bases signals discord"""
    dims = two_qubit_dims(rho)
    result = min_basis_entropy(rho, BasisClass.product(*dims), config)
    tag = DISCORD_PRESENT if result.value > DETECTION_THRESHOLD else NO_EVIDENCE
    return DiscordDetection(tag=tag, min_basis_entropy=max(result.value, 0.0), extremal=result)


def werner_sweep(z_values: Iterable, config: OptimizerConfig = OptimizerConfig(),
                 callback: Optional[Callable[[str, str], None]] = None) -> List[WernerSweepRow]:
    """Rows (z, closed-form discord, minimum same-local basis entropy)"""
    rows = []
    z_values = [z.z if isinstance(z, WernerParam) else float(z) for z in z_values]
    for index, z in enumerate(z_values):
        state = werner(z)
        discord = luo_discord(BellDiagonalParams(z, -z, z))
        minimum = min_basis_entropy(state, BasisClass.same_local(2), config).value
        rows.append(WernerSweepRow(z=z, discord=discord, min_basis_entropy=minimum))
        if callback:
            try:
                callback(f"z = {z:.4f}: discord {discord:.6f}, min basis entropy {minimum:.6f}"
                         f" ({index + 1}/{len(z_values)})", "info")
            except Exception as e:
                print(f"Warning: Status callback error: {e}")
    return rows

