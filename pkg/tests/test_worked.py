import itertools

import numpy as np
import pytest

from zxkit.phase import Phase
from zxkit.tensor import circuit_state, evaluate
from zxkit.worked import (
    disentangling_circuit,
    ghz_diagram,
    injected_phase,
    magic_injection_diagram,
    output_components,
    reduce_to_wire,
    reduced_state,
    single_spider_state,
    teleportation_diagram,
    wire_phase,
)


def test_ghz_reduces_to_one_spider():
    d = ghz_diagram()
    before = evaluate(d)
    reduce_to_wire(d)
    assert single_spider_state(d) is not None
    assert np.allclose(evaluate(d), before)


@pytest.mark.parametrize("a, b", list(itertools.product((0, 1), repeat=2)))
def test_teleportation_gives_a_wire(a, b):
    d = teleportation_diagram(a, b)
    before = evaluate(d)
    reduce_to_wire(d)
    assert wire_phase(d) == Phase(0)
    assert not [v for v in d.vertices() if d.is_spider(v)]
    assert np.allclose(evaluate(d), before)
    assert np.allclose(before, 0.5 * np.eye(2))


@pytest.mark.parametrize("alpha", [Phase(1, 4), Phase(1, 3), Phase.real(0.9)])
@pytest.mark.parametrize("a", [0, 1])
def test_magic_injection(a, alpha):
    d = magic_injection_diagram(a, alpha)
    before = evaluate(d)
    reduce_to_wire(d)
    assert wire_phase(d) == injected_phase(a, alpha)
    assert np.allclose(evaluate(d), before)
    p = injected_phase(a, alpha).exp()
    ratio = before[1, 1] / before[0, 0]
    assert ratio == pytest.approx(p)


def test_injected_phase_pattern_for_t():
    for a in (0, 1):
        assert injected_phase(a) == Phase(1, 4) - Phase(a, 2)


def test_second_qubit_is_unentangled():
    c = disentangling_circuit()
    state = circuit_state(c).reshape(2, 2, 2, 2)
    moved = np.moveaxis(state, 1, 0).reshape(2, 8)
    assert np.linalg.matrix_rank(moved, tol=1e-9) == 1
    d = reduced_state(c)
    comps = output_components(d)
    assert {1} in comps and {0, 2, 3} in comps
