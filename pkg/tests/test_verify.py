import numpy as np
import pytest

from zxkit.circuit import Circuit, random_clifford_circuit
from zxkit.verify import DIFFERENT, INCONCLUSIVE, NUMERIC, PROVED, verify_circuits


def test_same_circuit_is_proved():
    c = Circuit(2).add("H", 0).add("CX", 0, 1).add("S", 1)
    r = verify_circuits(c, c)
    assert r.status == PROVED and r.equal and r.factor == pytest.approx(1)


def test_three_cnots_make_a_swap():
    a = Circuit(2).add("CX", 0, 1).add("CX", 1, 0).add("CX", 0, 1)
    assert verify_circuits(a, Circuit(2).add("SWAP", 0, 1)).status == PROVED


def test_stray_z_is_different():
    c = Circuit(2).add("H", 0).add("CX", 0, 1)
    r = verify_circuits(c, c.copy().add("Z", 0))
    assert r.status == DIFFERENT and not r.equal


def test_t_circuits_fall_back_to_numeric_or_proof():
    a = Circuit(2).add("T", 0).add("CX", 0, 1).add("T", 0)
    b = Circuit(2).add("S", 0).add("CX", 0, 1)
    assert verify_circuits(a, b).status in (PROVED, NUMERIC)


def test_random_clifford_equivalences_are_proved():
    rng = np.random.default_rng(2)
    for _ in range(15):
        c = random_clifford_circuit(4, 40, rng)
        doubled = c.copy()
        doubled.extend(c.adjoint().gates)
        doubled.extend(c.gates)
        assert verify_circuits(c, doubled).status == PROVED


def test_wide_non_clifford_difference_is_inconclusive():
    a = Circuit(12).add("T", 0).add("CX", 0, 11).add("T", 11)
    b = Circuit(12).add("T", 0)
    assert verify_circuits(a, b).status == INCONCLUSIVE


def test_qubit_mismatch():
    with pytest.raises(ValueError):
        verify_circuits(Circuit(1), Circuit(2))
