#!/usr/bin/env python3
"""
Extremal Basis Entropy Search
Maximizes and minimizes basis entropy over classes of projector bases with a
seeded multi-start Nelder-Mead search, plus the closed-form witnesses:
uniform-outcome (unbiased) bases, the axis orthogonal to a Bloch vector, the
explicit unitary-parameter solution for qubits and the Bell-diagonal minimum.
"""

import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy.optimize import minimize

from basis_errors import DimensionMismatchError, ParameterDomainError
from measurement import (
    GENERAL,
    LOCAL_PRODUCT,
    SAME_LOCAL,
    MeasurementAxis,
    ProjectorBasis,
    UnitaryAxisParam,
    basis_entropy,
    eigenbasis,
    general_basis,
    outcome_probabilities,
    product_basis,
    qubit_frame_from_axis,
    relative_entropy_of_coherence,
    same_local_basis,
    shannon_entropy,
    unbiased_basis,
    von_neumann_entropy,
)
from quantum_matrix import DensityMatrix, kron, make_rng
from quantum_states import BellDiagonalParams, BlochVector

PURE = "Pure"
MIXED = "Mixed"
MAXIMALLY_MIXED = "MaximallyMixed"
PURITY_TOL = 1e-6

MAXIMIZE = "max"
MINIMIZE = "min"
SEARCH_MODES = (MAXIMIZE, MINIMIZE)
BASIS_CLASSES = ("general", "product", "samelocal")


@dataclass(frozen=True)
class OptimizerConfig:
    """Budget of a multi-start search; the seed fixes every trajectory"""
    starts: int = 64
    seed: int = 42
    max_evals: int = 2000
    tol: float = 1e-10
    initial_step: float = 0.25
    workers: int = 1
    use_closed_form: bool = True


@dataclass(frozen=True)
class SearchOutcome:
    value: float
    params: np.ndarray
    starts_used: int
    converged: bool


@dataclass(frozen=True, eq=False)
class ExtremalResult:
    value: float
    basis: ProjectorBasis
    starts_used: int
    converged: bool
    params: Optional[np.ndarray] = None


# ---------------------------------------------------------------------------
# Basis classes and their parameterizations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BasisClass:
    tag: str
    dims: Tuple[int, ...]

    @classmethod
    def general(cls, dim: int) -> "BasisClass":
        return cls(GENERAL, (dim,))

    @classmethod
    def product(cls, dim_a: int = 2, dim_b: int = 2) -> "BasisClass":
        return cls(LOCAL_PRODUCT, (dim_a, dim_b))

    @classmethod
    def same_local(cls, dim: int = 2) -> "BasisClass":
        return cls(SAME_LOCAL, (dim,))

    @property
    def total_dim(self) -> int:
        if self.tag == SAME_LOCAL:
            return self.dims[0] ** 2
        return int(np.prod(self.dims))

    @property
    def param_count(self) -> int:
        if self.tag == GENERAL:
            return self.dims[0] * (self.dims[0] - 1)
        if self.tag == SAME_LOCAL:
            return local_param_count(self.dims[0])
        return local_param_count(self.dims[0]) + local_param_count(self.dims[1])

    def frame(self, params) -> np.ndarray:
        params = np.asarray(params, dtype=float)
        if self.tag == GENERAL:
            return givens_frame(params, self.dims[0])
        if self.tag == SAME_LOCAL:
            local = local_frame(params, self.dims[0])
            return kron(local, local)
        split = local_param_count(self.dims[0])
        return kron(local_frame(params[:split], self.dims[0]), local_frame(params[split:], self.dims[1]))

    def basis(self, params) -> ProjectorBasis:
        params = np.asarray(params, dtype=float)
        if self.tag == GENERAL:
            return general_basis(givens_frame(params, self.dims[0]))
        if self.tag == SAME_LOCAL:
            return same_local_basis(local_frame(params, self.dims[0]))
        split = local_param_count(self.dims[0])
        return product_basis(general_basis(local_frame(params[:split], self.dims[0])),
                             general_basis(local_frame(params[split:], self.dims[1])))

    def anchor_starts(self) -> List[np.ndarray]:
        """Computational, sigma-1 and sigma-2 aligned frames (qubit factors), or the identity frame"""
        zero = np.zeros(self.param_count)
        if self.tag == GENERAL or any(d != 2 for d in self.dims):
            return [zero]
        per_factor = 1 if self.tag == SAME_LOCAL else 2
        return [zero,
                np.tile([math.pi / 2, 0.0], per_factor),
                np.tile([math.pi / 2, math.pi / 2], per_factor)]


def local_param_count(dim: int) -> int:
    return 2 if dim == 2 else dim * (dim - 1)


def local_frame(params, dim: int) -> np.ndarray:
    """Qubit factors use (polar, azimuth) of the measurement axis; larger factors use Givens angles"""
    if dim == 2:
        polar, azimuth = float(params[0]), float(params[1])
        return qubit_frame_from_axis(MeasurementAxis.from_angles(polar, azimuth))
    return givens_frame(params, dim)


def givens_frame(params, dim: int) -> np.ndarray:
    """Product of phased Givens rotations over all coordinate pairs (i < j)"""
    params = np.asarray(params, dtype=float)
    expected = dim * (dim - 1)
    if params.size != expected:
        raise ParameterDomainError(f"dimension {dim} needs {expected} Givens parameters, got {params.size}")

    frame = np.eye(dim, dtype=complex)
    position = 0
    for i in range(dim - 1):
        for j in range(i + 1, dim):
            angle, phase = params[position], params[position + 1]
            position += 2
            cosine, sine = math.cos(angle), math.sin(angle)
            rotation = np.eye(dim, dtype=complex)
            rotation[i, i] = cosine
            rotation[j, j] = cosine
            rotation[i, j] = -np.exp(-1j * phase) * sine
            rotation[j, i] = np.exp(1j * phase) * sine
            frame = frame @ rotation
    return frame


# ---------------------------------------------------------------------------
# Multi-start Nelder-Mead
# ---------------------------------------------------------------------------

def _single_start(objective: Callable, start: np.ndarray, config: OptimizerConfig):
    n_params = start.size
    simplex = np.vstack([start, start + config.initial_step * np.eye(n_params)])
    result = minimize(
        objective,
        start,
        method="Nelder-Mead",
        options={
            "initial_simplex": simplex,
            "xatol": config.tol,
            "fatol": config.tol * 1e-2,
            "maxfev": config.max_evals,
            "maxiter": config.max_evals,
        },
    )
    return float(result.fun), np.array(result.x), bool(result.success)


def multistart_minimize(objective: Callable, n_params: int, config: OptimizerConfig,
                        anchors: Optional[List[np.ndarray]] = None) -> SearchOutcome:
    """Minimize from anchor starts then seeded random starts; best value wins, ties go to the lowest start index"""
    starts = [np.asarray(anchor, dtype=float) for anchor in (anchors or [])][:config.starts]
    for index in range(len(starts), config.starts):
        rng = make_rng(config.seed, index)
        starts.append(rng.uniform(0.0, 2 * math.pi, size=n_params))

    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            outcomes = list(pool.map(lambda start: _single_start(objective, start, config), starts))
    else:
        outcomes = [_single_start(objective, start, config) for start in starts]

    best_index = min(range(len(outcomes)), key=lambda index: (outcomes[index][0], index))
    value, params, converged = outcomes[best_index]
    if not converged:
        print(f"⚠️  Best of {len(starts)} starts stopped at the {config.max_evals}-evaluation budget",
              file=sys.stderr)
    return SearchOutcome(value=value, params=params, starts_used=len(starts), converged=converged)


def _check_class(rho: DensityMatrix, basis_class: BasisClass):
    if basis_class.total_dim != rho.dim:
        raise DimensionMismatchError(
            f"basis class {basis_class.tag}{basis_class.dims} has dimension {basis_class.total_dim}, state has {rho.dim}")


def _search(rho: DensityMatrix, basis_class: BasisClass, config: OptimizerConfig, mode: str) -> ExtremalResult:
    state_entropy = von_neumann_entropy(rho)
    sign = -1.0 if mode == MAXIMIZE else 1.0
    matrix = rho.matrix

    def objective(params):
        probabilities = outcome_probabilities(matrix, basis_class.frame(params))
        return sign * shannon_entropy(probabilities)

    outcome = multistart_minimize(objective, basis_class.param_count, config, basis_class.anchor_starts())
    basis = basis_class.basis(outcome.params)
    return ExtremalResult(
        value=basis_entropy(rho, basis, state_entropy),
        basis=basis,
        starts_used=outcome.starts_used,
        converged=outcome.converged,
        params=outcome.params,
    )


def max_basis_entropy(rho: DensityMatrix, basis_class: BasisClass,
                      config: OptimizerConfig = OptimizerConfig()) -> ExtremalResult:
    """Largest entropy gain over the class"""
    _check_class(rho, basis_class)
    if basis_class.tag == GENERAL and config.use_closed_form:
        # Uniform outcomes reach log2 D, the upper bound of S(rho_pm)
        basis = unbiased_basis(rho)
        return ExtremalResult(value=basis_entropy(rho, basis), basis=basis, starts_used=0, converged=True)
    return _search(rho, basis_class, config, MAXIMIZE)


def min_basis_entropy(rho: DensityMatrix, basis_class: BasisClass,
                      config: OptimizerConfig = OptimizerConfig()) -> ExtremalResult:
    """Smallest entropy gain over the class"""
    _check_class(rho, basis_class)
    if basis_class.tag == GENERAL and config.use_closed_form:
        basis = eigenbasis(rho)
        return ExtremalResult(value=basis_entropy(rho, basis), basis=basis, starts_used=0, converged=True)
    return _search(rho, basis_class, config, MINIMIZE)


# ---------------------------------------------------------------------------
# Closed-form witnesses
# ---------------------------------------------------------------------------

def orthogonal_axis_witness(v: BlochVector) -> MeasurementAxis:
    """Unit axis orthogonal to the Bloch vector: +/- normalize(-c, 0, a) with its first nonzero component positive"""
    if v.radius_squared == 0.0:
        return MeasurementAxis(0.0, 0.0, 1.0)
    if math.hypot(v.a, v.c) < 1e-15:
        return MeasurementAxis(1.0, 0.0, 0.0)
    z1, z3 = -v.c, v.a
    if z1 < 0 or (z1 == 0 and z3 < 0):
        z1, z3 = -z1, -z3
    return MeasurementAxis.normalized(z1, 0.0, z3)


def vanishing_bracket(a: float, b: float, c: float, p: UnitaryAxisParam) -> float:
    """2a(-t y2 + y1 y3) + 2b(t y1 + y2 y3) + c(t^2 + y3^2 - y1^2 - y2^2), zero when S(rho_pm) = 1"""
    t, y1, y2, y3 = p.t, p.y1, p.y2, p.y3
    return (2 * a * (-t * y2 + y1 * y3)
            + 2 * b * (t * y1 + y2 * y3)
            + c * (t ** 2 + y3 ** 2 - y1 ** 2 - y2 ** 2))


def axis_parameter_solution(a: float, b: float, c: float) -> UnitaryAxisParam:
    """Explicit (t, 0, y, y) solving the vanishing bracket for the qubit state I/2 + a s1 + b s2 + c s3"""
    if a == 0.0 or c == 0.0:
        raise ParameterDomainError("a and c must be nonzero", subexpression="1/(a c)")
    P = 2 * (2 * a ** 2 + b ** 2 - 2 * b * c + c ** 2)
    if abs(P) < 1e-15:
        raise ParameterDomainError("P vanishes", subexpression="P = 2(2a^2 + b^2 - 2bc + c^2)")
    inner = a ** 4 - 2 * a ** 2 * b * c
    if inner < 0:
        raise ParameterDomainError(f"negative radicand {inner:.6g}", subexpression="a^4 - 2 a^2 b c")
    outer = a ** 2 / P + c ** 2 / P - b * c / P - math.sqrt(inner) / P
    if outer < 0:
        raise ParameterDomainError(f"negative radicand {outer:.6g}",
                                   subexpression="a^2/P + c^2/P - bc/P - sqrt(a^4 - 2a^2 bc)/P")

    root = math.sqrt(outer)
    cube = outer ** 1.5
    t = (2 * a ** 2 * root - b * c * root + c ** 2 * root
         - 4 * a ** 2 * cube - 2 * b ** 2 * cube + 4 * b * c * cube - 2 * c ** 2 * cube) / (a * c)

    norm = t ** 2 + 2 * outer
    if abs(norm - 1.0) > 1e-8:
        raise ParameterDomainError(f"solution not normalized (t^2 + |y|^2 = {norm:.12g})",
                                   subexpression="t^2 + y1^2 + y2^2 + y3^2")
    return UnitaryAxisParam.normalized(t, 0.0, root, root)


def min_be_bell_diagonal(p: BellDiagonalParams) -> float:
    """Minimum basis entropy of a Bell-diagonal state: S(rho_pm) at |c1 z1^2 + c2 z2^2 + c3 z3^2| = c, minus S(rho)"""
    dephased = [(1 - p.c) / 4, (1 - p.c) / 4, (1 + p.c) / 4, (1 + p.c) / 4]
    return shannon_entropy(dephased) - shannon_entropy(p.eigenvalues())


def bell_diagonal_dephased_spectrum(p: BellDiagonalParams, axis: MeasurementAxis) -> np.ndarray:
    """Ascending spectrum (1 -/+ s)/4, each twice, with s = c1 z1^2 + c2 z2^2 + c3 z3^2"""
    s = float(np.dot(p.as_array(), axis.as_array() ** 2))
    return np.sort([(1 - s) / 4, (1 - s) / 4, (1 + s) / 4, (1 + s) / 4])


def classify_purity(rho: DensityMatrix, config: OptimizerConfig = OptimizerConfig()) -> str:
    """Pure at max BE = log2 D, maximally mixed at max BE = 0, mixed otherwise"""
    best = max_basis_entropy(rho, BasisClass.general(rho.dim), config).value
    if abs(best - math.log2(rho.dim)) <= PURITY_TOL:
        return PURE
    if best <= PURITY_TOL:
        return MAXIMALLY_MIXED
    return MIXED


def coherence_comparison(rho: DensityMatrix, config: OptimizerConfig = OptimizerConfig()) -> Tuple[float, float]:
    """(computational-basis coherence, maximum basis entropy)"""
    coherence = relative_entropy_of_coherence(rho)
    best = max_basis_entropy(rho, BasisClass.general(rho.dim), config).value
    return coherence, best


def parse_basis_class(name: str, dim: int) -> BasisClass:
    """'general' | 'product' | 'samelocal' for a state of dimension dim"""
    name = name.lower()
    if name == "general":
        return BasisClass.general(dim)
    root = math.isqrt(dim)
    if root * root != dim:
        raise DimensionMismatchError(f"class '{name}' needs a square dimension, got {dim}")
    if name == "product":
        return BasisClass.product(root, root)
    if name == "samelocal":
        return BasisClass.same_local(root)
    raise ParameterDomainError(f"unknown basis class '{name}', expected general, product or samelocal")
