import itertools

import numpy as np
import pytest

from zxkit.circuit import Circuit, random_clifford_circuit
from zxkit.extract import (
    BitMatrix,
    NotExtractableError,
    RowOp,
    cnot_circuit_of,
    extract_circuit,
    gauss_elim,
    verify_extraction,
)
from zxkit.simplify import full_reduce
from zxkit.tensor import circuit_matrix, proportional
from zxkit.translate import circuit_to_diagram

CNOT = np.eye(4)[[0, 1, 3, 2]]


def random_invertible(rng, n):
    while True:
        m = BitMatrix(rng.integers(0, 2, (n, n)))
        if m.is_invertible():
            return m


def basis_action(c: Circuit) -> dict[int, int]:
    m = circuit_matrix(c)
    return {x: int(np.argmax(np.abs(m[:, x]))) for x in range(m.shape[1])}


def bits(x: int, n: int) -> list[int]:
    return [(x >> (n - 1 - i)) & 1 for i in range(n)]


def test_row_op_needs_distinct_rows():
    with pytest.raises(ValueError):
        RowOp(1, 1)


def test_gauss_elim_examples():
    ops, red = gauss_elim(BitMatrix.identity(3))
    assert ops == [] and red.is_identity()
    ops, red = gauss_elim(BitMatrix([[1, 1], [0, 1]]))
    assert ops == [RowOp(0, 1)] and red.is_identity()
    ops, red = gauss_elim(BitMatrix([[1, 1], [1, 1]]))
    assert not red.is_identity()


def test_gauss_elim_replay_and_bound():
    rng = np.random.default_rng(3)
    for _ in range(50):
        n = int(rng.integers(1, 8))
        m = random_invertible(rng, n)
        ops, red = gauss_elim(m)
        assert red.is_identity()
        assert len(ops) <= n * n
        replay = m.copy()
        for op in ops:
            replay.apply(op)
        assert replay == red


def test_cnot_circuit_orientation():
    assert len(cnot_circuit_of([], 2)) == 0
    c = cnot_circuit_of([RowOp(0, 1)], 2)
    assert [(g.name, g.qubits) for g in c] == [("CX", (1, 0))]
    # |x0 x1> -> |x0 xor x1, x1>
    for x0, x1 in itertools.product((0, 1), repeat=2):
        out = basis_action(c)[2 * x0 + x1]
        assert out == 2 * (x0 ^ x1) + x1
    with pytest.raises(ValueError):
        cnot_circuit_of([RowOp(0, 5)], 2)


def test_cnot_circuit_matches_matrix_exhaustively():
    rng = np.random.default_rng(6)
    n = 6
    for _ in range(5):
        m = random_invertible(rng, n)
        ops, _ = gauss_elim(m)
        action = basis_action(cnot_circuit_of(ops, n))
        for x in range(2**n):
            y = m.apply_to(bits(x, n))
            assert action[x] == int("".join(map(str, y)), 2)


def _round_trip(c: Circuit):
    g, _ = full_reduce(circuit_to_diagram(c))
    out = extract_circuit(g)
    return out, verify_extraction(c, out)


def test_extract_identity_and_cnot():
    out, _ = _round_trip(Circuit(3))
    assert len(out) == 0
    out, rep = _round_trip(Circuit(2).add("CX", 0, 1))
    assert rep.ok
    assert proportional(CNOT, circuit_matrix(out)) is not None


def test_round_trip_random_clifford():
    rng = np.random.default_rng(10)
    for _ in range(60):
        n = int(rng.integers(1, 7))
        c = random_clifford_circuit(n, int(rng.integers(1, 60)), rng)
        out, rep = _round_trip(c)
        assert rep.ok and abs(abs(rep.factor) - 1) < 1e-9
        assert {g.name for g in out} <= {"H", "S", "Sdg", "Z", "CZ", "CX"}


def test_verify_extraction_reports():
    c = Circuit(2).add("H", 0).add("CX", 0, 1)
    rep = verify_extraction(c, c)
    assert rep.ok and rep.factor == pytest.approx(1) and rep.max_deviation < 1e-12
    bad = c.copy().add("Z", 0)
    assert not verify_extraction(c, bad).ok
    with pytest.raises(ValueError):
        verify_extraction(c, Circuit(3))
    assert set(rep.to_dict()) == {"ok", "factor", "max_deviation"}


def test_not_extractable_cases():
    g, _ = full_reduce(circuit_to_diagram(Circuit(3).add("T", 0).add("CCX", 0, 1, 2), "gadgets"))
    with pytest.raises(NotExtractableError):
        extract_circuit(g)
    from zxkit.graph import make_generator

    with pytest.raises(NotExtractableError):
        extract_circuit(make_generator("zspider", 1, 2))
