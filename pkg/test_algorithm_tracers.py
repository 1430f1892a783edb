#!/usr/bin/env python3
"""
Tests for the Grover, Shor and decoherence basis-entropy traces
"""

import os
import sys

import numpy as np
import pytest

# Add current directory to Python path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from algorithm_tracers import (
    GroverConfig,
    ShorConfig,
    decohere_sequence,
    detected_order,
    full_grover_range,
    grover_closed_form,
    grover_statevector,
    grover_trace,
    shor_first_register_trace,
)
from basis_errors import ParameterDomainError
from extremal_search import MAXIMALLY_MIXED, PURE
from measurement import MeasurementAxis, qubit_basis_from_axis
from quantum_states import tilted_pure_state

Z_BASIS = qubit_basis_from_axis(MeasurementAxis(0.0, 0.0, 1.0))
Y_BASIS = qubit_basis_from_axis(MeasurementAxis(0.0, 1.0, 0.0))


def test_grover_statevector_matches_closed_form():
    print("🧪 Testing Grover statevector against the closed form...")
    for n in range(4, 11):
        base = GroverConfig(n=n, x0=3)
        for k in range(base.k_max + 2):
            simulated = grover_statevector(base.with_k(k))
            exact = grover_closed_form(base.with_k(k))
            assert simulated.basis_entropy == pytest.approx(exact.basis_entropy, abs=1e-9)
            assert simulated.auxiliary == pytest.approx(exact.auxiliary, abs=1e-9)
    print("✅ n = 4..10 agree within 1e-9")


def test_grover_twenty_qubits():
    print("🧪 Testing Grover trace for n = 20...")
    cfg = GroverConfig(n=20)
    assert cfg.k_max == 804
    assert cfg.desired_iterations == 805

    records = grover_trace(20, full_grover_range(20))
    assert len(records) == 806
    assert records[0].basis_entropy == pytest.approx(20.0, abs=1e-9)
    for earlier, later in zip(records[:804], records[1:805]):
        assert later.basis_entropy <= earlier.basis_entropy + 1e-12
        assert later.auxiliary >= earlier.auxiliary - 1e-12
    assert records[805].auxiliary >= 0.999
    assert records[805].basis_entropy <= 1e-3
    print(f"✅ k_max = 804, BE(805) = {records[805].basis_entropy:.2e}")


def test_grover_default_trace_stops_at_k_max():
    records = grover_trace(2)
    assert [record.step_index for record in records] == [0, 1]
    assert records[1].auxiliary == pytest.approx(1.0, abs=1e-12)
    assert records[1].basis_entropy == pytest.approx(0.0, abs=1e-12)


def test_grover_config_validation():
    with pytest.raises(ParameterDomainError):
        GroverConfig(n=0)
    with pytest.raises(ParameterDomainError):
        GroverConfig(n=3, x0=8)
    with pytest.raises(ParameterDomainError):
        GroverConfig(n=3, k=-1)
    with pytest.raises(ParameterDomainError):
        grover_statevector(GroverConfig(n=13))


def test_shor_first_register():
    print("🧪 Testing Shor first-register trace for N = 15, x = 7...")
    cfg = ShorConfig(N=15, x=7, t=8)
    assert cfg.L == 4
    assert cfg.r == 4

    records = shor_first_register_trace(cfg)
    assert [record.step_index for record in records] == [2, 3, 4]
    values = [record.basis_entropy for record in records]
    assert np.allclose(values, [8.0, 8.0, 2.0], atol=1e-9)
    assert detected_order(records) == 4
    print("✅ Basis entropy 8, 8, 2 and order 4")


@pytest.mark.parametrize("kwargs", [
    {"N": 15, "x": 5, "t": 8},
    {"N": 65, "x": 2, "t": 8},
    {"N": 15, "x": 7, "t": 13},
    {"N": 15, "x": 7, "t": 8, "L": 3},
    {"N": 15, "x": 0, "t": 8},
])
def test_shor_config_rejects_out_of_range(kwargs):
    with pytest.raises(ParameterDomainError):
        ShorConfig(**kwargs)


def test_decoherence_sequence():
    print("🧪 Testing decoherence of the tilted pure state...")
    trace = decohere_sequence(tilted_pure_state(), [Z_BASIS, Y_BASIS])
    gains = [record.basis_entropy for _, record in trace.steps]
    assert gains == pytest.approx([0.811278, 0.188722], abs=1e-6)
    assert trace.steps[-1][1].auxiliary == pytest.approx(1.0, abs=1e-12)
    assert np.allclose(trace.final_state.matrix, np.eye(2) / 2, atol=1e-12)
    assert trace.classification == MAXIMALLY_MIXED

    extended = decohere_sequence(trace.final_state, [Z_BASIS])
    assert extended.steps[0][1].basis_entropy <= 1e-9
    print("✅ z then y measurement reaches I/2")


def test_empty_decoherence_sequence():
    trace = decohere_sequence(tilted_pure_state(), [])
    assert len(trace.steps) == 1
    assert trace.steps[0][1].step_index == 0
    assert trace.classification == PURE


if __name__ == "__main__":
    print("🚀 Algorithm Tracer Tests")
    print("=" * 50)
    sys.exit(pytest.main([__file__, "-q"]))
