import json
import math

import numpy as np
import pytest

from strategies import random_phase
from zxkit.graph import (
    Diagram,
    DiagramError,
    EdgeType,
    Scalar,
    VertexType,
    adjoint,
    compose,
    conjugate,
    from_json,
    identity,
    make_generator,
    tensor,
    to_json,
    transpose,
    validate,
)
from zxkit.phase import Phase
from zxkit.tensor import evaluate

SQRT2 = math.sqrt(2)
CNOT = np.eye(4)[[0, 1, 3, 2]]


def cnot_diagram() -> Diagram:
    return compose(
        tensor(make_generator("zspider", 1, 2), identity(1)),
        tensor(identity(1), make_generator("xspider", 2, 1)),
    )


def test_generators_evaluate_to_their_matrices():
    a = Phase(1, 3)
    assert np.allclose(evaluate(make_generator("zspider", 1, 1, a)), np.diag([1, a.exp()]))
    assert np.allclose(evaluate(make_generator("cup", 0, 2)), [[1], [0], [0], [1]])
    assert np.allclose(evaluate(make_generator("zspider", 0, 0, 0)), [[2]])


def test_generator_errors():
    with pytest.raises(DiagramError):
        make_generator("swap", 1, 2)
    with pytest.raises(DiagramError):
        make_generator("hbox", 1, 1)
    with pytest.raises(DiagramError):
        make_generator("triangle", 1, 1)
    make_generator("hbox", 1, 1, zh=True)


def test_compose_gives_cnot():
    assert np.allclose(evaluate(cnot_diagram()), CNOT / SQRT2)


def test_compose_arity_mismatch():
    with pytest.raises(DiagramError):
        compose(make_generator("zspider", 1, 2), identity(1))


def test_compose_with_identity_and_inverse_phases():
    d = cnot_diagram()
    assert np.allclose(evaluate(compose(d, identity(2))), evaluate(d))
    t = compose(make_generator("zspider", 1, 1, Phase(1, 4)), make_generator("zspider", 1, 1, Phase(7, 4)))
    assert np.allclose(evaluate(t), np.eye(2))


def test_tensor_products():
    d = tensor(make_generator("zspider", 1, 2), identity(1))
    assert evaluate(d).shape == (8, 4)
    two = make_generator("zspider", 0, 0, 0)
    assert np.allclose(evaluate(tensor(two, two)), [[4]])
    assert np.allclose(evaluate(tensor(d, Diagram())), evaluate(d))


def test_dagger_family():
    d = cnot_diagram()
    assert np.allclose(evaluate(transpose(d)), evaluate(d))
    assert conjugate(make_generator("zspider", 1, 1, 1)).signature()[0][-1][2] == Phase(1)
    s_adj = adjoint(make_generator("zspider", 1, 1, Phase(1, 2)))
    assert np.allclose(evaluate(s_adj), np.diag([1, -1j]))
    assert adjoint(adjoint(d)).signature() == d.signature()


def _random_diagram(rng, n_in: int, n_out: int) -> Diagram:
    d = Diagram()
    vs = [d.add_vertex(VertexType.Z if rng.random() < 0.5 else VertexType.X, phase=random_phase(rng, True)) for _ in range(3)]
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            if rng.random() < 0.7:
                d.add_edge(vs[i], vs[j], EdgeType.HADAMARD if rng.random() < 0.3 else EdgeType.SIMPLE)
    for side, count in ((d.inputs, n_in), (d.outputs, n_out)):
        for _ in range(count):
            b = d.add_vertex(VertexType.BOUNDARY)
            d.add_edge(b, vs[int(rng.integers(3))])
            side.append(b)
    d.scale(complex(rng.normal(), rng.normal()))
    return d


def test_functoriality_and_dagger_laws():
    rng = np.random.default_rng(3)
    for _ in range(30):
        k = int(rng.integers(1, 3))
        d1, d2, d3 = (_random_diagram(rng, k, k) for _ in range(3))
        left = evaluate(compose(compose(d1, d2), d3))
        right = evaluate(compose(d1, compose(d2, d3)))
        assert np.allclose(left, right, atol=1e-9)
        assert np.allclose(left, evaluate(d3) @ evaluate(d2) @ evaluate(d1), atol=1e-9)
        assert np.allclose(evaluate(adjoint(d1)), evaluate(d1).conj().T, atol=1e-9)
        assert np.allclose(evaluate(tensor(d1, d2)), np.kron(evaluate(d1), evaluate(d2)), atol=1e-9)


def test_yanking():
    cup, cap = make_generator("cup", 0, 2), make_generator("cap", 2, 0)
    snake = compose(tensor(identity(1), cup), tensor(cap, identity(1)))
    assert np.array_equal(evaluate(snake), np.eye(2))


def test_spider_symmetry_under_edge_shuffles():
    rng = np.random.default_rng(5)
    for _ in range(10):
        d = _random_diagram(rng, 2, 2)
        ref = evaluate(d)
        edges = list(d.edges())
        e = Diagram()
        vmap = {}
        for v in d.vertices():
            vmap[v] = e.add_vertex(d.type(v), phase=d.phase(v) if d.is_spider(v) else 0)
        for k in rng.permutation(len(edges)):
            _, u, v, et = edges[int(k)]
            e.add_edge(vmap[u], vmap[v], et)
        e.inputs = [vmap[v] for v in d.inputs]
        e.outputs = [vmap[v] for v in d.outputs]
        e.scalar = d.scalar
        assert np.allclose(evaluate(e), ref, atol=1e-9)


def test_validate_reports_problems():
    assert validate(cnot_diagram()) == []
    d = identity(1)
    extra = d.add_vertex(VertexType.Z)
    d.add_edge(d.inputs[0], extra)
    assert any("boundary degree" in p for p in validate(d))
    d = identity(1)
    d._add_edge_raw(d.inputs[0], 999, EdgeType.SIMPLE)
    assert any("dangling edge" in p for p in validate(d))


def test_scalar_zero_flag_is_sticky():
    s = Scalar(2) * 0
    assert s.is_zero and (s * 5).is_zero


def test_json_round_trip_and_empty_form():
    assert to_json(Diagram()) == '{"vertices":[],"edges":[],"inputs":[],"outputs":[],"scalar":[1.0,0.0]}'
    d = cnot_diagram()
    d.add_vertex(VertexType.Z, phase=Phase.real(0.4))
    text = to_json(d)
    assert json.loads(to_json(from_json(text))) == json.loads(text)
    kinds = sorted(v["kind"] for v in json.loads(text)["vertices"])
    assert kinds.count("Z") == 2 and kinds.count("X") == 1 and kinds.count("B") == 4


def test_json_errors():
    with pytest.raises(DiagramError, match="line 1"):
        from_json("{bad")
    with pytest.raises(DiagramError, match="schema"):
        from_json('{"vertices": [{"id": 0}]}')
    bad = '{"vertices":[{"id":0,"kind":"B"}],"edges":[],"inputs":[],"outputs":[],"scalar":[1,0]}'
    with pytest.raises(DiagramError, match="invalid"):
        from_json(bad)
