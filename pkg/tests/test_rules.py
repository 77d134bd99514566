import cmath
import math

import numpy as np
import pytest

from strategies import ZX_RULE_NAMES, zx_instance
from zxkit.circuit import Circuit
from zxkit.corpus import swap_colours
from zxkit.graph import Diagram, EdgeType, VertexType, make_generator
from zxkit.phase import Phase
from zxkit.rules import (
    RULES,
    Match,
    StaleMatchError,
    apply_bialgebra,
    apply_color_change,
    apply_hopf,
    apply_pi_copy,
    apply_remove_identity,
    apply_remove_self_loop,
    apply_spider_fusion,
    apply_state_copy,
    euler_decompose_hadamard_at,
    find_spider_fusion,
    replay,
    simplify,
    trace_from_jsonl,
    trace_to_jsonl,
)
from zxkit.tensor import evaluate
from zxkit.translate import circuit_to_diagram
from zxkit.worked import ghz_diagram, teleportation_diagram

ET = EdgeType
VT = VertexType
INSTANCES = 60
GRAPH_LIKE_ONLY = ("lc_simp", "pivot_simp")


def wired(ty, phase, n_in, n_out, zh=False):
    return make_generator("zspider" if ty is VT.Z else "xspider", n_in, n_out, phase, zh=zh)


def spider_ids(d, ty):
    return [v for v in d.vertices() if d.type(v) is ty]


def _attach(d, v, side, et=ET.SIMPLE):
    b = d.add_vertex(VT.BOUNDARY)
    d.add_edge(v, b, et)
    (d.inputs if side == "in" else d.outputs).append(b)


@pytest.mark.parametrize("name", ZX_RULE_NAMES)
def test_rule_soundness_exact(name):
    rng = np.random.default_rng(sum(map(ord, name)))
    rule = RULES[name]
    for _ in range(INSTANCES):
        d, m = zx_instance(name, rng)
        before = evaluate(d)
        rule.apply(d, m)
        assert np.allclose(evaluate(d), before, atol=1e-9, rtol=0)


@pytest.mark.parametrize("name", [n for n in ZX_RULE_NAMES if n not in GRAPH_LIKE_ONLY])
def test_colour_swapped_rule_soundness(name):
    rng = np.random.default_rng(7 + sum(map(ord, name)))
    rule = RULES[name]
    applied = 0
    for _ in range(INSTANCES):
        d, m = zx_instance(name, rng)
        s = swap_colours(d)
        assert np.allclose(evaluate(s), evaluate(d), atol=1e-9)
        if not rule.applies(s, m):
            m = Match(m.rule_name, tuple(reversed(m.vertices)), m.edges)
        assert rule.applies(s, m)
        before = evaluate(s)
        rule.apply(s, m)
        assert np.allclose(evaluate(s), before, atol=1e-9, rtol=0)
        applied += 1
    assert applied >= 50


def test_stale_match_rejected():
    d = Diagram()
    u = d.add_vertex(VT.Z)
    v = d.add_vertex(VT.Z)
    d.add_edge(u, v)
    apply_spider_fusion(d, Match("spider_fusion", (u, v)))
    with pytest.raises(StaleMatchError):
        apply_spider_fusion(d, Match("spider_fusion", (u, v)))


def test_spider_fusion_adds_phases():
    d = Diagram()
    u = d.add_vertex(VT.Z, phase=Phase(1, 4))
    v = d.add_vertex(VT.Z, phase=Phase(7, 4))
    d.add_edge(u, v)
    d.add_edge(u, v)
    _attach(d, u, "in")
    _attach(d, v, "out")
    before = evaluate(d)
    (m,) = find_spider_fusion(d)
    apply_spider_fusion(d, m)
    (z,) = spider_ids(d, VT.Z)
    assert d.phase(z) == Phase(0)
    assert np.allclose(evaluate(d), before)


def test_remove_identity_between_hadamards():
    d = Diagram()
    v = d.add_vertex(VT.Z)
    _attach(d, v, "in", ET.HADAMARD)
    _attach(d, v, "out", ET.HADAMARD)
    apply_remove_identity(d, Match("remove_identity", (v,)))
    assert not spider_ids(d, VT.Z)
    assert np.allclose(evaluate(d), np.eye(2))


def test_pi_copy_negates_phase_with_scalar():
    alpha = Phase(1, 3)
    d = Diagram()
    x = d.add_vertex(VT.X, phase=1)
    z = d.add_vertex(VT.Z, phase=alpha)
    e = d.add_edge(x, z)
    _attach(d, x, "in")
    _attach(d, z, "out")
    _attach(d, z, "out")
    before = evaluate(d)
    apply_pi_copy(d, Match("pi_copy", (x, z), (e,)))
    assert d.phase(z) == -alpha
    assert len([v for v in spider_ids(d, VT.X) if d.phase(v) == Phase(1)]) == 2
    assert np.allclose(evaluate(d), before)


def test_state_copy_pi_into_pi_spider():
    d = Diagram()
    s = d.add_vertex(VT.X, phase=1)
    z = d.add_vertex(VT.Z, phase=1)
    d.add_edge(s, z)
    for _ in range(3):
        _attach(d, z, "out")
    before = evaluate(d)
    apply_state_copy(d, Match("state_copy", (s, z)))
    assert len(spider_ids(d, VT.X)) == 3 and not spider_ids(d, VT.Z)
    assert np.allclose(evaluate(d), before)


def test_color_change_is_an_involution():
    d = wired(VT.X, Phase(2, 3), 1, 2)
    (v,) = spider_ids(d, VT.X)
    sig = d.signature()
    apply_color_change(d, Match("color_change", (v,)))
    assert d.type(v) is VT.Z
    assert all(d.edge_type(e) is ET.HADAMARD for e in d.incident(v))
    apply_color_change(d, Match("color_change", (v,)))
    assert d.signature() == sig


def test_bialgebra_two_by_two_square():
    d = Diagram()
    z = d.add_vertex(VT.Z)
    x = d.add_vertex(VT.X)
    d.add_edge(z, x)
    for _ in range(2):
        _attach(d, z, "in")
        _attach(d, x, "out")
    before = evaluate(d)
    apply_bialgebra(d, Match("bialgebra", (z, x)))
    assert len(spider_ids(d, VT.Z)) == 2 and len(spider_ids(d, VT.X)) == 2
    assert d.num_edges() == 4 + 4
    assert np.allclose(evaluate(d), before)


def test_bialgebra_rejects_phases():
    d = Diagram()
    z = d.add_vertex(VT.Z, phase=Phase(1, 2))
    x = d.add_vertex(VT.X)
    d.add_edge(z, x)
    with pytest.raises(StaleMatchError):
        apply_bialgebra(d, Match("bialgebra", (z, x)))


def test_hopf_three_edges_leave_one():
    d = Diagram()
    z = d.add_vertex(VT.Z)
    x = d.add_vertex(VT.X)
    for _ in range(3):
        d.add_edge(z, x)
    _attach(d, z, "in")
    _attach(d, x, "out")
    before = evaluate(d)
    apply_hopf(d, Match("hopf", (z, x)))
    assert len(d.edges_between(z, x)) == 1
    assert np.allclose(evaluate(d), before)


def test_hadamard_self_loop_adds_pi():
    d = wired(VT.Z, Phase(1, 4), 1, 1)
    (v,) = spider_ids(d, VT.Z)
    e = d.add_edge(v, v, ET.HADAMARD)
    before = evaluate(d)
    apply_remove_self_loop(d, Match("remove_self_loop", (v,), (e,)))
    assert d.phase(v) == Phase(5, 4)
    assert np.allclose(evaluate(d), before)


def test_euler_decomposition_is_exactly_hadamard():
    d = Diagram()
    a, b = d.add_vertex(VT.BOUNDARY), d.add_vertex(VT.BOUNDARY)
    e = d.add_edge(a, b, ET.HADAMARD)
    d.inputs, d.outputs = [a], [b]
    euler_decompose_hadamard_at(d, e)
    assert len(spider_ids(d, VT.Z)) == 2 and len(spider_ids(d, VT.X)) == 1
    assert np.allclose(evaluate(d), np.array([[1, 1], [1, -1]]) / math.sqrt(2))
    assert d.scalar.value == pytest.approx(cmath.exp(-0.25j * math.pi))


def test_basic_simp_on_ghz_gives_one_spider():
    d = ghz_diagram()
    before = evaluate(d)
    trace = simplify(d, "basic")
    spiders = [v for v in d.vertices() if d.is_spider(v)]
    assert len(spiders) == 1 and d.type(spiders[0]) is VT.Z and d.degree(spiders[0]) == 3
    assert np.allclose(evaluate(d), before)
    assert simplify(d, "basic") == []
    assert len(trace) <= 10 * before.size


def test_basic_simp_on_teleportation():
    d = teleportation_diagram(1, 1)
    before = evaluate(d)
    simplify(d, "basic")
    assert np.allclose(evaluate(d), before)
    assert not [v for v in d.vertices() if d.is_spider(v)]


def test_two_cnots_cancel():
    d = circuit_to_diagram(Circuit(2).add("CX", 0, 1).add("CX", 0, 1))
    simplify(d, "basic")
    assert not [v for v in d.vertices() if d.is_spider(v)]
    assert np.allclose(evaluate(d), np.eye(4))


def test_custom_strategy_and_unknown_names():
    d = ghz_diagram()
    trace = simplify(d, ["spider_fusion"])
    assert trace and all(s.rule_name == "spider_fusion" for s in trace)
    with pytest.raises(ValueError):
        simplify(d, "nonsense")
    with pytest.raises(ValueError):
        simplify(d, ["nonsense"])


def test_basic_simp_terminates_within_bound():
    rng = np.random.default_rng(0)
    for _ in range(20):
        c = Circuit(4)
        for _ in range(30):
            r = rng.random()
            if r < 0.3:
                a, b = rng.choice(4, 2, replace=False)
                c.add("CX" if rng.random() < 0.5 else "CZ", int(a), int(b))
            else:
                c.add(["H", "S", "T", "X", "Z"][int(rng.integers(5))], int(rng.integers(4)))
        d = circuit_to_diagram(c)
        n = d.num_vertices()
        before = evaluate(d)
        trace = simplify(d, "basic")
        assert len(trace) <= 10 * n
        assert np.allclose(evaluate(d), before, atol=1e-9)


def test_trace_replay_through_jsonl():
    rng = np.random.default_rng(2)
    for _ in range(10):
        c = Circuit(3)
        for _ in range(15):
            if rng.random() < 0.4:
                a, b = rng.choice(3, 2, replace=False)
                c.add("CX", int(a), int(b))
            else:
                c.add(["H", "S", "T"][int(rng.integers(3))], int(rng.integers(3)))
        d = circuit_to_diagram(c)
        work = d.copy()
        trace = simplify(work, "clifford_full")
        again = replay(d, trace_from_jsonl(trace_to_jsonl(trace)))
        assert again.signature() == work.signature()
        assert np.allclose(evaluate(again), evaluate(d), atol=1e-9)
