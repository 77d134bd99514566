import math

import numpy as np
import pytest

from zxkit.circuit import Circuit, stats
from zxkit.extract import extract_circuit
from zxkit.graph import VertexType
from zxkit.phase import Phase
from zxkit.tensor import circuit_matrix, evaluate
from zxkit.translate import circuit_to_diagram, ccz_gadget_terms
from zxkit.zh import phase_terms_circuit

ALL_GATES = ["H", "X", "Y", "Z", "S", "Sdg", "T", "Tdg"]


def random_circuit(rng, n, gates):
    c = Circuit(n)
    for _ in range(gates):
        r = rng.random()
        if n >= 3 and r < 0.08:
            qs = [int(q) for q in rng.choice(n, 3, replace=False)]
            c.add("CCX" if rng.random() < 0.5 else "CCZ", *qs)
        elif n >= 2 and r < 0.35:
            a, b = (int(q) for q in rng.choice(n, 2, replace=False))
            c.add(["CX", "CZ", "SWAP"][int(rng.integers(3))], a, b)
        elif r < 0.45:
            c.add(["RZ", "RX"][int(rng.integers(2))], int(rng.integers(n)), phase=Phase(int(rng.integers(16)), 8))
        elif r < 0.5 and n >= 2:
            k = int(rng.integers(1, n + 1))
            qs = [int(q) for q in rng.choice(n, k, replace=False)]
            c.add("PhaseGadget", *qs, phase=Phase.real(float(rng.uniform(0, 6))))
        else:
            c.add(ALL_GATES[int(rng.integers(len(ALL_GATES)))], int(rng.integers(n)))
    return c


@pytest.mark.parametrize("mode", ["hbox", "gadgets"])
def test_translation_is_exact(mode):
    rng = np.random.default_rng(17)
    for _ in range(40):
        n = int(rng.integers(1, 5))
        c = random_circuit(rng, n, 20)
        assert np.allclose(evaluate(circuit_to_diagram(c, mode)), circuit_matrix(c), atol=1e-9, rtol=0)


def test_cnot_diagram_shape():
    d = circuit_to_diagram(Circuit(2).add("CX", 0, 1))
    spiders = [v for v in d.vertices() if d.is_spider(v)]
    assert sorted(d.type(v).value for v in spiders) == ["X", "Z"]
    assert d.scalar.value == pytest.approx(math.sqrt(2))


def test_toffoli_modes_agree():
    c = Circuit(3).add("CCX", 0, 1, 2)
    hbox = circuit_to_diagram(c, "hbox")
    assert any(hbox.type(v) is VertexType.H_BOX for v in hbox.vertices())
    assert np.allclose(evaluate(hbox), evaluate(circuit_to_diagram(c, "gadgets")))


def test_ccz_gadget_terms_t_count_seven():
    terms = ccz_gadget_terms(0, 1, 2)
    assert len(terms) == 7
    assert all(p in (Phase(1, 4), Phase(7, 4)) for _, p in terms)
    circ = phase_terms_circuit(3, terms)
    assert stats(circ)["t_count"] == 7
    expected = np.diag([1, 1, 1, 1, 1, 1, 1, -1])
    assert np.allclose(circuit_matrix(circ), expected)


def test_unknown_toffoli_mode():
    with pytest.raises(ValueError):
        circuit_to_diagram(Circuit(1), "nope")


def test_ghz_circuit_and_extraction_of_identity():
    d = circuit_to_diagram(Circuit(2))
    assert len(extract_circuit(d)) == 0
