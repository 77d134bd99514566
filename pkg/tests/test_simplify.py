import math

import numpy as np
import pytest

from zxkit.circuit import Circuit, random_clifford_circuit
from zxkit.graph import Diagram, DiagramError, EdgeType, VertexType, compose, make_generator, tensor
from zxkit.phase import Phase
from zxkit.rules import StaleMatchError
from zxkit.simplify import (
    GraphLikeView,
    NotCliffordError,
    boundary_pivot,
    clifford_amplitude,
    full_reduce,
    graph_like_violations,
    gslc_diagram,
    gslc_form,
    lc_simp,
    pivot_simp,
    to_graph_like,
)
from zxkit.tensor import circuit_matrix, evaluate, proportional
from zxkit.translate import circuit_to_diagram
from zxkit.worked import disentangling_circuit, output_components, reduced_state

ET = EdgeType
VT = VertexType


def graph(phases, edges, boundary=()):
    """Graph-like diagram from spider phases, Hadamard edges and boundary-attached spider indices."""
    d = Diagram()
    vs = [d.add_vertex(VT.Z, phase=p) for p in phases]
    for a, b in edges:
        d.add_edge(vs[a], vs[b], ET.HADAMARD)
    for i in boundary:
        o = d.add_vertex(VT.BOUNDARY)
        d.add_edge(vs[i], o)
        d.outputs.append(o)
    return d, vs


def random_circuit(rng, n, gates, t=False):
    c = Circuit(n)
    names = ["H", "S", "Sdg", "Z", "X"] + (["T", "Tdg"] if t else [])
    for _ in range(gates):
        if rng.random() < 0.35:
            a, b = rng.choice(n, 2, replace=False)
            c.add("CX" if rng.random() < 0.5 else "CZ", int(a), int(b))
        else:
            c.add(names[int(rng.integers(len(names)))], int(rng.integers(n)))
    return c


def test_to_graph_like_invariants_and_evaluation():
    rng = np.random.default_rng(1)
    for _ in range(20):
        d = circuit_to_diagram(random_circuit(rng, 4, 25, t=True))
        before = evaluate(d)
        g, _ = to_graph_like(d)
        assert graph_like_violations(g.diagram) == []
        assert np.allclose(evaluate(g.diagram), before, atol=1e-9)


def test_graph_like_view_rejects_other_diagrams():
    with pytest.raises(DiagramError):
        GraphLikeView(make_generator("xspider", 1, 1))


def test_graph_state_is_already_graph_like():
    d, _ = graph([0, 0, 0], [(0, 1), (1, 2)], boundary=(0, 1, 2))
    g, _ = to_graph_like(d)
    assert len(g.spiders()) == 3
    assert sum(len(n) for n in g.adjacency().values()) == 4


def test_lc_simp_triangle():
    d, vs = graph([Phase(1, 2), 0, 0, 0], [(0, 1), (0, 2), (0, 3)], boundary=(1, 2, 3))
    before = evaluate(d)
    g = GraphLikeView(d)
    lc_simp(g, vs[0])
    assert vs[0] not in g.spiders()
    adj = g.adjacency()
    assert adj[vs[1]] == {vs[2], vs[3]} and adj[vs[2]] == {vs[1], vs[3]}
    assert all(d.phase(v) == Phase(3, 2) for v in vs[1:])
    assert np.allclose(evaluate(d), before)


def test_lc_simp_isolated_spider():
    d, vs = graph([Phase(3, 2)], [])
    before = evaluate(d)
    lc_simp(GraphLikeView(d), vs[0])
    assert d.num_vertices() == 0
    assert np.allclose(evaluate(d), before)


def test_lc_simp_rejects_bad_matches():
    d, vs = graph([Phase(1, 4), 0], [(0, 1)], boundary=(1,))
    with pytest.raises(StaleMatchError):
        lc_simp(GraphLikeView(d), vs[0])
    d, vs = graph([Phase(1, 2)], [], boundary=(0,))
    with pytest.raises(StaleMatchError):
        lc_simp(GraphLikeView(d), vs[0])


def test_pivot_simp_complements_neighbourhoods():
    # u, v adjacent; a exclusive to u, b exclusive to v, c shared
    d, vs = graph([0, 1, 0, 0, 0], [(0, 1), (0, 2), (1, 3), (0, 4), (1, 4)], boundary=(2, 3, 4))
    u, v, a, b, c = vs
    before = evaluate(d)
    g = GraphLikeView(d)
    pivot_simp(g, u, v)
    adj = g.adjacency()
    assert u not in adj and v not in adj
    assert adj[a] == {b, c} and adj[b] == {a, c}
    assert np.allclose(evaluate(d), before)


def test_pivot_pure_scalar():
    d, vs = graph([1, 0], [(0, 1)])
    before = evaluate(d)
    pivot_simp(GraphLikeView(d), *vs)
    assert d.num_vertices() == 0
    assert np.allclose(evaluate(d), before)


def test_boundary_pivot_chain():
    d, vs = graph([1, Phase(1, 2)], [(0, 1)], boundary=(1,))
    before = evaluate(d)
    g = GraphLikeView(d)
    boundary_pivot(g, vs[0], vs[1])
    assert g.internal_spiders() == []
    assert np.allclose(evaluate(d), before)
    with pytest.raises(StaleMatchError):
        boundary_pivot(g, vs[0], vs[1])


def test_boundary_pivot_random_instances():
    rng = np.random.default_rng(4)
    done = 0
    for _ in range(40):
        n = int(rng.integers(1, 4))
        phases = [int(rng.integers(2))] + [Phase(int(rng.integers(4)), 2) for _ in range(n)]
        edges = [(0, i) for i in range(1, n + 1)]
        edges += [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if rng.random() < 0.5]
        d, vs = graph(phases, edges, boundary=range(1, n + 1))
        before = evaluate(d)
        boundary_pivot(GraphLikeView(d), vs[0], vs[1])
        assert np.allclose(evaluate(d), before, atol=1e-9)
        done += 1
    assert done == 40


def test_full_reduce_on_clifford_circuits():
    rng = np.random.default_rng(8)
    for _ in range(40):
        n = int(rng.integers(2, 6))
        c = random_clifford_circuit(n, 40, rng)
        d = circuit_to_diagram(c)
        g, _ = full_reduce(d)
        assert g.internal_spiders() == []
        assert len(g.spiders()) <= 2 * (2 * n)
        assert np.allclose(evaluate(g.diagram), circuit_matrix(c), atol=1e-9)


def test_full_reduce_leaves_input_untouched_and_preserves_t_circuits():
    rng = np.random.default_rng(9)
    for _ in range(15):
        c = random_circuit(rng, 3, 30, t=True)
        d = circuit_to_diagram(c)
        sig = d.signature()
        g, _ = full_reduce(d)
        assert d.signature() == sig
        for v in g.internal_spiders():
            assert not g.phase(v).is_clifford() or len(g.neighbors(v)) >= 1
        assert np.allclose(evaluate(g.diagram), circuit_matrix(c), atol=1e-9)


def test_identity_circuit_reduces_to_wires():
    g, _ = full_reduce(circuit_to_diagram(Circuit(3)))
    assert g.internal_spiders() == []
    assert np.allclose(evaluate(g.diagram), np.eye(8))


def test_clifford_amplitude_matches_dense():
    assert clifford_amplitude(Circuit(4)) == pytest.approx(1)
    assert clifford_amplitude(Circuit(2).add("X", 0)) == 0
    hczh = Circuit(2).add("H", 0).add("H", 1).add("CZ", 0, 1).add("H", 0).add("H", 1)
    assert clifford_amplitude(hczh) == pytest.approx(circuit_matrix(hczh)[0, 0])
    rng = np.random.default_rng(12)
    for _ in range(25):
        n = int(rng.integers(1, 6))
        c = random_clifford_circuit(n, 30, rng)
        bi = [int(x) for x in rng.integers(0, 2, n)]
        bo = [int(x) for x in rng.integers(0, 2, n)]
        idx_in = int("".join(map(str, bi)), 2)
        idx_out = int("".join(map(str, bo)), 2)
        assert abs(clifford_amplitude(c, bi, bo) - circuit_matrix(c)[idx_out, idx_in]) < 1e-9


def test_clifford_amplitude_rejects_t():
    with pytest.raises(NotCliffordError):
        clifford_amplitude(Circuit(1).add("T", 0))


def _state(c: Circuit) -> Diagram:
    prep = Diagram()
    for _ in range(c.qubit_count):
        s = make_generator("xspider", 0, 1)
        s.scale(1 / math.sqrt(2))
        prep = tensor(prep, s)
    return compose(prep, circuit_to_diagram(c))


def _gslc_matches(state: Diagram):
    graph_, local, _ = gslc_form(state)
    lam = proportional(evaluate(gslc_diagram(graph_, local)), evaluate(state))
    return graph_, local, lam


def test_gslc_plus_states():
    graph_, local, lam = _gslc_matches(_state(Circuit(2).add("H", 0).add("H", 1)))
    assert graph_ == {0: set(), 1: set()}
    assert lam is not None and all(p == Phase(0) for row in local for p in row)


def test_gslc_cz_on_plus():
    graph_, local, lam = _gslc_matches(_state(Circuit(2).add("H", 0).add("H", 1).add("CZ", 0, 1)))
    assert graph_ == {0: {1}, 1: {0}}
    assert lam is not None and all(p == Phase(0) for row in local for p in row)


def test_gslc_ghz_and_random_states():
    _, _, lam = _gslc_matches(_state(Circuit(3).add("H", 0).add("CX", 0, 1).add("CX", 0, 2)))
    assert lam is not None
    rng = np.random.default_rng(21)
    for _ in range(20):
        _, _, lam = _gslc_matches(_state(random_clifford_circuit(4, 25, rng)))
        assert lam is not None


def test_gslc_rejects_non_clifford():
    with pytest.raises(NotCliffordError):
        gslc_form(_state(Circuit(1).add("T", 0)))


def test_disentangled_qubit():
    d = reduced_state(disentangling_circuit())
    comps = output_components(d)
    assert {1} in comps
