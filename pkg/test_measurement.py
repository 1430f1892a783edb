#!/usr/bin/env python3
"""
Tests for projector bases, the measurement channel and entropies,
including the randomized property suite
"""

import math
import os
import sys

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from scipy.stats import unitary_group

# Add current directory to Python path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from basis_errors import BasisSpecError, DimensionMismatchError, ParameterDomainError
from measurement import (
    LOCAL_PRODUCT,
    SAME_LOCAL,
    MeasurementAxis,
    ProjectorBasis,
    UnitaryAxisParam,
    apply_measurement,
    axis_from_param,
    basis_entropy,
    computational_basis,
    eigenbasis,
    general_basis,
    outcome_probabilities,
    parse_basis_spec,
    product_basis,
    qubit_basis_from_axis,
    qubit_basis_from_param,
    relative_entropy_of_coherence,
    same_local_basis,
    save_frame,
    von_neumann_entropy,
)
from quantum_matrix import make_rng, random_density, validate_density
from quantum_states import BlochVector, bell, from_bloch, maximally_mixed, pure_state

unit = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False, allow_infinity=False)


def _projectors_match(basis, expected):
    actual = basis.projectors()
    return all(any(np.allclose(p, q, atol=1e-12) for p in actual) for q in expected)


def test_axis_bases():
    print("🧪 Testing qubit axis bases...")
    z_basis = qubit_basis_from_axis(MeasurementAxis(0.0, 0.0, 1.0))
    assert _projectors_match(z_basis, [np.diag([1.0, 0.0]), np.diag([0.0, 1.0])])

    y_basis = qubit_basis_from_axis(MeasurementAxis(0.0, 1.0, 0.0))
    assert _projectors_match(y_basis, [np.array([[1, -1j], [1j, 1]]) / 2, np.array([[1, 1j], [-1j, 1]]) / 2])

    x_basis = qubit_basis_from_axis(MeasurementAxis(1.0, 0.0, 0.0))
    assert _projectors_match(x_basis, [np.full((2, 2), 0.5), np.array([[0.5, -0.5], [-0.5, 0.5]])])
    print("✅ z, y and x axes give the expected projector pairs")


def test_axis_from_param():
    assert np.allclose(axis_from_param(UnitaryAxisParam(1.0, 0.0, 0.0, 0.0)).as_array(), [0, 0, 1])
    assert np.allclose(axis_from_param(UnitaryAxisParam(0.0, 1.0, 0.0, 0.0)).as_array(), [0, 0, -1])
    p = UnitaryAxisParam.normalized(0.3, -0.5, 0.7, 0.2)
    v = p.unitary()
    n = axis_from_param(p).as_array()
    sigma_n = np.array([[n[2], n[0] - 1j * n[1]], [n[0] + 1j * n[1], -n[2]]])
    assert np.allclose(v @ np.diag([1, -1]) @ v.conj().T, sigma_n, atol=1e-12)


def test_param_basis_uses_columns_of_v():
    p = UnitaryAxisParam.normalized(0.3, -0.5, 0.7, 0.2)
    from_param = qubit_basis_from_param(p)
    from_axis = qubit_basis_from_axis(axis_from_param(p))
    assert _projectors_match(from_param, from_axis.projectors())


def test_unit_constraints():
    with pytest.raises(ParameterDomainError):
        UnitaryAxisParam(1.0, 1.0, 0.0, 0.0)
    with pytest.raises(ParameterDomainError):
        MeasurementAxis(0.5, 0.0, 0.0)
    with pytest.raises(BasisSpecError):
        ProjectorBasis(dim=2, frame=np.array([[1.0, 1.0], [0.0, 1.0]]))


def test_product_and_same_local_bases():
    print("🧪 Testing product bases...")
    comp = computational_basis(2)
    both = product_basis(comp, comp)
    assert both.structure == LOCAL_PRODUCT
    assert np.allclose(both.frame, np.eye(4))

    mixed = product_basis(qubit_basis_from_axis(MeasurementAxis(0.0, 0.0, 1.0)),
                          qubit_basis_from_axis(MeasurementAxis(1.0, 0.0, 0.0)))
    plus, minus = np.array([1, 1]) / math.sqrt(2), np.array([1, -1]) / math.sqrt(2)
    expected = [np.outer(v, v) for v in (np.kron([1, 0], plus), np.kron([1, 0], minus),
                                         np.kron([0, 1], plus), np.kron([0, 1], minus))]
    assert _projectors_match(mixed, expected)

    same = same_local_basis(UnitaryAxisParam(1.0, 0.0, 0.0, 0.0))
    assert same.structure == SAME_LOCAL
    assert np.allclose(same.frame, np.eye(4))
    print("✅ Kronecker frames and tags are correct")


def test_bell_state_examples():
    print("🧪 Testing Bell state measurement...")
    comp = product_basis(computational_basis(2), computational_basis(2))
    dephased = apply_measurement(bell(), comp)
    assert np.allclose(dephased.matrix, np.diag([0.5, 0, 0, 0.5]), atol=1e-12)
    assert basis_entropy(bell(), comp) == pytest.approx(1.0, abs=1e-12)
    print("✅ Bell basis entropy in the computational product basis is 1")


def test_mixed_qubit_examples():
    rho = validate_density(np.diag([0.75, 0.25]))
    y_basis = qubit_basis_from_axis(MeasurementAxis(0.0, 1.0, 0.0))
    assert np.allclose(apply_measurement(rho, y_basis).matrix, np.eye(2) / 2, atol=1e-12)
    assert von_neumann_entropy(rho) == pytest.approx(0.811278, abs=1e-6)
    assert basis_entropy(rho, y_basis) == pytest.approx(0.188722, abs=1e-6)


def test_entropy_of_special_states():
    assert von_neumann_entropy(bell()) == pytest.approx(0.0, abs=1e-12)
    for dim in (2, 3, 4):
        rho = maximally_mixed(dim)
        assert von_neumann_entropy(rho) == pytest.approx(math.log2(dim), abs=1e-12)
        frame = unitary_group.rvs(dim, random_state=make_rng(dim))
        assert basis_entropy(rho, general_basis(frame)) == pytest.approx(0.0, abs=1e-10)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        basis_entropy(bell(), computational_basis(2))


def test_relative_entropy_of_coherence():
    assert relative_entropy_of_coherence(pure_state([1, 0])) == pytest.approx(0.0, abs=1e-12)
    assert relative_entropy_of_coherence(pure_state([1, 1])) == pytest.approx(1.0, abs=1e-12)
    assert relative_entropy_of_coherence(maximally_mixed(2)) == pytest.approx(0.0, abs=1e-12)


def test_basis_grammar(tmp_path):
    print("🧪 Testing basis grammar...")
    assert np.allclose(parse_basis_spec("comp", 4).frame, np.eye(4))
    assert np.allclose(parse_basis_spec("product:compxcomp", 4).frame, np.eye(4))
    assert parse_basis_spec("product:axis:0,0,1xaxis:1,0,0", 4).structure == LOCAL_PRODUCT
    assert parse_basis_spec("samelocal:1,0,0,0", 4).structure == SAME_LOCAL
    assert _projectors_match(parse_basis_spec("axis:0,0,2"), [np.diag([1.0, 0.0]), np.diag([0.0, 1.0])])

    path = str(tmp_path / "frame.json")
    save_frame(path, qubit_basis_from_axis(MeasurementAxis(0.0, 1.0, 0.0)))
    loaded = parse_basis_spec(f"frame:{path}")
    assert _projectors_match(loaded, qubit_basis_from_axis(MeasurementAxis(0.0, 1.0, 0.0)).projectors())

    for bad in ("unknown", "axis:1,2", "product:comp", f"frame:{tmp_path / 'missing.json'}"):
        with pytest.raises(BasisSpecError):
            parse_basis_spec(bad, 4)
    print("✅ comp, axis, product, samelocal and frame specs parse")


def test_non_finite_axes_and_frames_are_rejected():
    for bad in ("axis:nan,0,0", "axis:inf,0,1", "samelocal:inf,0,0,0", "samelocal:nan,1,0,0"):
        with pytest.raises(BasisSpecError):
            parse_basis_spec(bad, 4)
    with pytest.raises(ParameterDomainError):
        MeasurementAxis.normalized(float("nan"), 0.0, 0.0)
    with pytest.raises(ParameterDomainError):
        MeasurementAxis(float("nan"), 0.0, 1.0)
    with pytest.raises(ParameterDomainError):
        UnitaryAxisParam.normalized(float("inf"), 0.0, 0.0, 0.0)
    with pytest.raises(ParameterDomainError):
        UnitaryAxisParam(float("nan"), 0.0, 0.0, 0.0)
    with pytest.raises(BasisSpecError):
        ProjectorBasis(dim=2, frame=np.array([[1.0, np.nan], [0.0, 1.0]]))


def test_product_spec_reports_inner_error():
    with pytest.raises(BasisSpecError) as excinfo:
        parse_basis_spec("product:frame:missing.jsonxcomp", 4)
    assert "missing.json" in str(excinfo.value)
    assert "not found" in str(excinfo.value)


@settings(max_examples=200, deadline=None)
@given(unit, unit, unit, unit, unit, unit)
def test_axis_outcomes_follow_bloch_projection(a, b, c, z1, z2, z3):
    length = math.sqrt(a * a + b * b + c * c)
    if length > 0.5:
        a, b, c = (0.5 * value / length for value in (a, b, c))
    assume(z1 * z1 + z2 * z2 + z3 * z3 > 1e-3)
    rho = from_bloch(BlochVector(a, b, c))
    axis = MeasurementAxis.normalized(z1, z2, z3)
    probabilities = outcome_probabilities(rho, qubit_basis_from_axis(axis).frame)
    projection = a * axis.z1 + b * axis.z2 + c * axis.z3
    assert probabilities[0] == pytest.approx(0.5 + projection, abs=1e-12)
    assert probabilities[1] == pytest.approx(0.5 - projection, abs=1e-12)


def test_randomized_property_suite():
    """1000 seeded (state, basis) pairs: nonnegativity, idempotence, eigenbasis zero, covariance, dephasing"""
    print("🧪 Running 1000-case property suite...")
    rng = make_rng(2024)
    for case in range(1000):
        dim = 2 if case % 2 == 0 else 4
        rho = random_density(dim, rng, rank=int(rng.integers(1, dim + 1)))
        basis = general_basis(unitary_group.rvs(dim, random_state=rng))

        assert basis_entropy(rho, basis) >= -1e-10

        once = apply_measurement(rho, basis)
        twice = apply_measurement(once, basis)
        assert np.max(np.abs(twice.matrix - once.matrix)) <= 1e-12

        assert basis_entropy(rho, eigenbasis(rho)) <= 1e-9

        u = unitary_group.rvs(dim, random_state=rng)
        rotated = validate_density(u @ rho.matrix @ u.conj().T)
        assert basis_entropy(rotated, general_basis(u @ basis.frame)) == pytest.approx(basis_entropy(rho, basis), abs=1e-9)

        for projector in basis.projectors():
            commutator = projector @ once.matrix - once.matrix @ projector
            assert np.max(np.abs(commutator)) <= 1e-12
    print("✅ All 1000 cases within tolerance")


if __name__ == "__main__":
    print("🚀 Measurement Tests")
    print("=" * 50)
    sys.exit(pytest.main([__file__, "-q"]))
