#!/usr/bin/env python3
"""
Algorithm Tracers
Basis-entropy traces of Grover search (closed form and statevector),
the first register of Shor's order finding, and a decoherence sequence of
projective measurements.
"""

import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from basis_errors import ParameterDomainError
from extremal_search import OptimizerConfig, classify_purity
from measurement import (
    ENTROPY_CLAMP,
    ProjectorBasis,
    apply_measurement,
    basis_entropy,
    shannon_entropy,
    von_neumann_entropy,
)
from quantum_matrix import DensityMatrix

MAX_STATEVECTOR_QUBITS = 12
MAX_SHOR_COUNTING_QUBITS = 12
MAX_SHOR_MODULUS = 64
OUTCOME_TOL = 1e-12


@dataclass(frozen=True)
class TraceRecord:
    """One row of a trace; auxiliary is the success probability (Grover) or outcome count (Shor)"""
    step_index: int
    basis_entropy: float
    auxiliary: float


@dataclass(frozen=True)
class GroverConfig:
    n: int
    x0: int = 0
    k: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ParameterDomainError(f"Grover needs at least one qubit, got n = {self.n}")
        if not 0 <= self.x0 < 2 ** self.n:
            raise ParameterDomainError(f"marked index {self.x0} outside [0, 2^{self.n})")
        if self.k < 0:
            raise ParameterDomainError(f"iteration count must be nonnegative, got {self.k}")

    @property
    def theta(self) -> float:
        return 2 * math.asin(2 ** (-self.n / 2))

    @property
    def k_max(self) -> int:
        """Iteration count that brings the state closest to the marked item"""
        # Guard exact integers (n = 2) against round-off pushing the ceiling up
        return math.ceil(math.pi / (2 * self.theta) - 0.5 - 1e-12)

    @property
    def desired_iterations(self) -> int:
        """Small-angle estimate ceil(pi sqrt(2^n) / 4)"""
        return math.ceil(math.pi * math.sqrt(2 ** self.n) / 4)

    def with_k(self, k: int) -> "GroverConfig":
        return GroverConfig(n=self.n, x0=self.x0, k=k)


@dataclass(frozen=True)
class ShorConfig:
    N: int
    x: int
    t: int
    L: Optional[int] = None

    def __post_init__(self):
        if not 2 <= self.N <= MAX_SHOR_MODULUS:
            raise ParameterDomainError(f"N = {self.N} outside the simulated range [2, {MAX_SHOR_MODULUS}]")
        if not 1 <= self.t <= MAX_SHOR_COUNTING_QUBITS:
            raise ParameterDomainError(f"t = {self.t} outside [1, {MAX_SHOR_COUNTING_QUBITS}]")
        if not 1 <= self.x < self.N:
            raise ParameterDomainError(f"base x = {self.x} outside [1, {self.N})")
        if math.gcd(self.x, self.N) != 1:
            raise ParameterDomainError(f"gcd({self.x}, {self.N}) = {math.gcd(self.x, self.N)}, base must be coprime",
                                       subexpression="gcd(x, N) = 1")
        if self.L is None:
            object.__setattr__(self, "L", max(1, math.ceil(math.log2(self.N))))
        if 2 ** self.L < self.N:
            raise ParameterDomainError(f"second register of {self.L} qubits cannot hold N = {self.N}",
                                       subexpression="2^L >= N")

    @property
    def r(self) -> int:
        """Multiplicative order of x modulo N"""
        value, order = self.x % self.N, 1
        while value != 1:
            value = (value * self.x) % self.N
            order += 1
        return order


@dataclass(frozen=True)
class DecoherenceTrace:
    steps: List[Tuple[DensityMatrix, TraceRecord]]
    classification: str

    @property
    def final_state(self) -> DensityMatrix:
        return self.steps[-1][0]


# ---------------------------------------------------------------------------
# Grover
# ---------------------------------------------------------------------------

def _xlog2(p: float, scale: float = 1.0) -> float:
    """p log2(p / scale) for `scale` equal outcomes of weight p / scale, clamped like shannon_entropy"""
    return p * math.log2(p / scale) if p / scale >= ENTROPY_CLAMP else 0.0


def grover_closed_form(cfg: GroverConfig) -> TraceRecord:
    """Success probability sin^2 and basis entropy after k iterations"""
    angle = (2 * cfg.k + 1) * cfg.theta / 2
    success = math.sin(angle) ** 2
    failure = math.cos(angle) ** 2
    # Failure weight is spread evenly over the 2^n - 1 unmarked outcomes
    value = -(_xlog2(failure, 2 ** cfg.n - 1) + _xlog2(success))
    return TraceRecord(step_index=cfg.k, basis_entropy=value, auxiliary=success)


def grover_statevector(cfg: GroverConfig) -> TraceRecord:
    """Simulate k oracle + diffusion rounds on the 2^n amplitude vector"""
    if cfg.n > MAX_STATEVECTOR_QUBITS:
        raise ParameterDomainError(f"statevector simulation is limited to n <= {MAX_STATEVECTOR_QUBITS}, got {cfg.n}")

    amplitudes = np.full(2 ** cfg.n, 2 ** (-cfg.n / 2))
    for _ in range(cfg.k):
        amplitudes[cfg.x0] = -amplitudes[cfg.x0]
        amplitudes = 2 * amplitudes.mean() - amplitudes

    probabilities = amplitudes ** 2
    return TraceRecord(
        step_index=cfg.k,
        basis_entropy=shannon_entropy(probabilities),
        auxiliary=float(probabilities[cfg.x0]),
    )


def grover_trace(n: int, k_range: Optional[Iterable[int]] = None, x0: int = 0) -> List[TraceRecord]:
    """Closed-form rows, k = 0 .. k_max unless a range is given"""
    base = GroverConfig(n=n, x0=x0)
    if k_range is None:
        k_range = range(base.k_max + 1)
    return [grover_closed_form(base.with_k(k)) for k in k_range]


def full_grover_range(n: int) -> range:
    """0 .. max(k_max, desired_iterations)"""
    base = GroverConfig(n=n)
    return range(max(base.k_max, base.desired_iterations) + 1)


# ---------------------------------------------------------------------------
# Shor first register
# ---------------------------------------------------------------------------

def _first_register_record(step: int, amplitudes: np.ndarray) -> TraceRecord:
    # Joint state is pure, so the grouped measurement gains exactly the outcome entropy
    probabilities = np.sum(np.abs(amplitudes) ** 2, axis=1)
    return TraceRecord(
        step_index=step,
        basis_entropy=shannon_entropy(probabilities),
        auxiliary=float(np.count_nonzero(probabilities > OUTCOME_TOL)),
    )


def shor_first_register_trace(cfg: ShorConfig) -> List[TraceRecord]:
    """Records after superposition (2), modular exponentiation (3) and inverse Fourier transform (4)"""
    size = 2 ** cfg.t
    amplitudes = np.zeros((size, 2 ** cfg.L), dtype=complex)
    amplitudes[:, 1] = 1 / math.sqrt(size)
    records = [_first_register_record(2, amplitudes)]

    exponentiated = np.zeros_like(amplitudes)
    powers = [pow(cfg.x, j, cfg.N) for j in range(size)]
    exponentiated[np.arange(size), powers] = amplitudes[:, 1]
    records.append(_first_register_record(3, exponentiated))

    transformed = np.fft.fft(exponentiated, axis=0, norm="ortho")
    records.append(_first_register_record(4, transformed))
    return records


def detected_order(records: Sequence[TraceRecord]) -> int:
    """Outcome count after the inverse transform; equals r whenever r divides 2^t"""
    return int(records[-1].auxiliary)


# ---------------------------------------------------------------------------
# Decoherence
# ---------------------------------------------------------------------------

def decohere_sequence(rho: DensityMatrix, bases: Sequence[ProjectorBasis],
                      config: OptimizerConfig = OptimizerConfig()) -> DecoherenceTrace:
    """Apply each measurement in turn, recording the entropy it adds; auxiliary is S after the step"""
    steps = []
    current = rho
    for index, basis in enumerate(bases):
        gained = basis_entropy(current, basis)
        current = apply_measurement(current, basis)
        steps.append((current, TraceRecord(step_index=index + 1, basis_entropy=gained,
                                           auxiliary=von_neumann_entropy(current))))

    if not steps:
        steps.append((rho, TraceRecord(step_index=0, basis_entropy=0.0, auxiliary=von_neumann_entropy(rho))))
    return DecoherenceTrace(steps=steps, classification=classify_purity(current, config))
