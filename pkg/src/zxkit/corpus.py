"""Reference identities: generator matrices, the unitary table, circuit identities and rule instances.

Each identity is stated as a pair of diagrams (or a diagram and a matrix) and
checked with the dense evaluator. Rule instances are small hand-built
diagrams with one match of a named rule, used to check that the engine's
rewrites preserve evaluation and replay from their recorded traces.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from .circuit import Circuit
from .graph import SPIDERS, Diagram, EdgeType, VertexType, compose, conjugate, make_generator, transpose
from .phase import Phase
from .rules import RULES, Match, Trace, replay, trace_from_jsonl, trace_to_jsonl
from .tensor import DEFAULT_TOL, circuit_matrix, evaluate, proportional
from .translate import circuit_to_diagram

ET = EdgeType
VT = VertexType
SQRT2 = math.sqrt(2)

# Generic angles for the identities that hold for every alpha and beta.
ALPHA = Phase.real(0.7318)
BETA = Phase.real(2.0461)


# -- generators and unitaries ---------------------------------------------------------------------


@dataclass
class MatrixEntry:
    """A diagram, a global scalar and the matrix it must equal exactly."""

    name: str
    diagram: Diagram
    scalar: complex
    matrix: np.ndarray

    def check(self, tol: float = DEFAULT_TOL) -> bool:
        got = self.scalar * evaluate(self.diagram)
        return got.shape == self.matrix.shape and bool(np.max(np.abs(got - self.matrix), initial=0.0) <= tol)


def _gen(kind: str, n_in: int, n_out: int, param=None) -> Diagram:
    return make_generator(kind, n_in, n_out, param)


def _chain(*ds: Diagram) -> Diagram:
    out = ds[0]
    for d in ds[1:]:
        out = compose(out, d)
    return out


def generator_table(alpha: Phase = ALPHA) -> list[MatrixEntry]:
    """Generators with their defining matrices."""
    e = alpha.exp()
    s = 1 / SQRT2
    return [
        MatrixEntry("Z-a", _gen("zspider", 1, 1, alpha), 1, np.diag([1, e])),
        MatrixEntry("X-a", _gen("xspider", 1, 1, alpha), 1, 0.5 * np.array([[1 + e, 1 - e], [1 - e, 1 + e]])),
        MatrixEntry("Z-id", _gen("zspider", 1, 1), 1, np.eye(2)),
        MatrixEntry("X-id", _gen("xspider", 1, 1), 1, np.eye(2)),
        MatrixEntry("Zsp-3", _gen("zspider", 1, 2), 1, np.array([[1, 0], [0, 0], [0, 0], [0, 1]])),
        MatrixEntry("Xsp-3", _gen("xspider", 2, 1), 1, s * np.array([[1, 0, 0, 1], [0, 1, 1, 0]])),
        MatrixEntry("ket0", _gen("xspider", 0, 1), 1, np.array([[SQRT2], [0]])),
        MatrixEntry("ket1", _gen("xspider", 0, 1, 1), 1, np.array([[0], [SQRT2]])),
        MatrixEntry("ketplus", _gen("zspider", 0, 1), 1, np.array([[1], [1]])),
        MatrixEntry("ketminus", _gen("zspider", 0, 1, 1), 1, np.array([[1], [-1]])),
        MatrixEntry("Z-scalar", _gen("zspider", 0, 0, alpha), 1, np.array([[1 + e]])),
        MatrixEntry("X-scalar", _gen("xspider", 0, 0, alpha), 1, np.array([[1 + e]])),
        MatrixEntry("Z-X-scalar", compose(_gen("zspider", 0, 1), _gen("xspider", 1, 0)), 1, np.array([[SQRT2]])),
        MatrixEntry(
            "Z-X-pi-scalar",
            compose(_gen("zspider", 0, 1, alpha), _gen("xspider", 1, 0, 1)),
            1,
            np.array([[SQRT2 * e]]),
        ),
        MatrixEntry(
            "had-euler",
            _chain(_gen("zspider", 1, 1, Phase(1, 2)), _gen("xspider", 1, 1, Phase(1, 2)), _gen("zspider", 1, 1, Phase(1, 2))),
            cmath.exp(-0.25j * math.pi),
            np.array([[1, 1], [1, -1]]) * s,
        ),
        MatrixEntry(
            "had-euler-x",
            _chain(_gen("xspider", 1, 1, Phase(1, 2)), _gen("zspider", 1, 1, Phase(1, 2)), _gen("xspider", 1, 1, Phase(1, 2))),
            cmath.exp(-0.25j * math.pi),
            np.array([[1, 1], [1, -1]]) * s,
        ),
        MatrixEntry("swap", _gen("swap", 2, 2), 1, np.eye(4)[[0, 2, 1, 3]]),
        MatrixEntry("cup", _gen("cup", 0, 2), 1, np.array([[1], [0], [0], [1]])),
        MatrixEntry("cap", _gen("cap", 2, 0), 1, np.array([[1, 0, 0, 1]])),
    ]


def _cnot_zx() -> Diagram:
    d = Diagram()
    z, x = d.add_vertex(VT.Z), d.add_vertex(VT.X)
    d.add_edge(z, x)
    _wire(d, z, "in")
    _wire(d, x, "in")
    _wire(d, z, "out")
    _wire(d, x, "out")
    return d


def _cz_zx() -> Diagram:
    d = Diagram()
    a, b = d.add_vertex(VT.Z), d.add_vertex(VT.Z)
    d.add_edge(a, b, ET.HADAMARD)
    for side in ("in", "out"):
        _wire(d, a, side)
        _wire(d, b, side)
    return d


def _gadget_zx(alpha: Phase) -> Diagram:
    d = Diagram()
    a, b, hub, leaf = d.add_vertex(VT.Z), d.add_vertex(VT.Z), d.add_vertex(VT.X), d.add_vertex(VT.Z, phase=alpha)
    d.add_edge(hub, leaf)
    d.add_edge(hub, a)
    d.add_edge(hub, b)
    for side in ("in", "out"):
        _wire(d, a, side)
        _wire(d, b, side)
    return d


def unitary_table(alpha: Phase = ALPHA) -> list[MatrixEntry]:
    """Common gates as diagrams with their global scalar."""
    s = 1 / SQRT2
    had = Diagram()
    i, o = had.add_vertex(VT.BOUNDARY), had.add_vertex(VT.BOUNDARY)
    had.add_edge(i, o, ET.HADAMARD)
    had.inputs, had.outputs = [i], [o]
    e = alpha.exp()
    a = alpha.radians
    return [
        MatrixEntry("identity", _gen("identity", 1, 1), 1, np.eye(2)),
        MatrixEntry("Pauli Z", _gen("zspider", 1, 1, 1), 1, np.diag([1, -1])),
        MatrixEntry("Pauli X", _gen("xspider", 1, 1, 1), 1, np.array([[0, 1], [1, 0]])),
        MatrixEntry("Pauli Y", compose(_gen("zspider", 1, 1, 1), _gen("xspider", 1, 1, 1)), 1j, np.array([[0, -1j], [1j, 0]])),
        MatrixEntry("Hadamard", had, 1, s * np.array([[1, 1], [1, -1]])),
        MatrixEntry("S", _gen("zspider", 1, 1, Phase(1, 2)), 1, np.diag([1, 1j])),
        MatrixEntry("V", _gen("xspider", 1, 1, Phase(1, 2)), 1, 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]])),
        MatrixEntry("T", _gen("zspider", 1, 1, Phase(1, 4)), 1, np.diag([1, cmath.exp(0.25j * math.pi)])),
        MatrixEntry("CNOT", _cnot_zx(), SQRT2, np.eye(4)[[0, 1, 3, 2]]),
        MatrixEntry("CZ", _cz_zx(), SQRT2, np.diag([1, 1, 1, -1])),
        MatrixEntry(
            "phase gadget",
            _gadget_zx(alpha),
            SQRT2 * cmath.exp(-0.5j * a),
            cmath.exp(-0.5j * a) * np.diag([1, e, e, 1]),
        ),
    ]


# -- circuit identities -----------------------------------------------------------------------------


def _c(n: int, *gates) -> Circuit:
    c = Circuit(n)
    for g in gates:
        name, *rest = g
        if rest and isinstance(rest[-1], Phase):
            c.add(name, *rest[:-1], phase=rest[-1])
        else:
            c.add(name, *rest)
    return c


def _pauli_gadget(p: np.ndarray, q: np.ndarray, alpha: Phase) -> np.ndarray:
    """``exp(-i alpha/2 P (x) Q)`` for Paulis ``P`` and ``Q``."""
    t = alpha.radians / 2
    return math.cos(t) * np.eye(4) - 1j * math.sin(t) * np.kron(p, q)


_Z = np.diag([1, -1]).astype(complex)
_Y = np.array([[0, -1j], [1j, 0]])


@dataclass
class CircuitIdentity:
    """``lhs`` equals ``rhs`` up to a non-zero global scalar.

    ``rhs`` is either a circuit or the matrix it should implement.
    """

    name: str
    lhs: Circuit
    rhs: Union[Circuit, np.ndarray]

    def diagrams(self) -> tuple[Diagram, Optional[Diagram]]:
        r = circuit_to_diagram(self.rhs, "gadgets") if isinstance(self.rhs, Circuit) else None
        return circuit_to_diagram(self.lhs, "gadgets"), r

    def rhs_matrix(self) -> np.ndarray:
        return circuit_matrix(self.rhs) if isinstance(self.rhs, Circuit) else self.rhs

    def check(self, tol: float = DEFAULT_TOL) -> dict[str, bool]:
        """Proportionality of the matrices, of the diagrams and of the diagram variants.

        The variants interchange the colours, swap inputs with outputs and negate
        every phase, applied to both sides at once.
        """
        out = {"matrix": _nonzero_prop(circuit_matrix(self.lhs), self.rhs_matrix(), tol)}
        dl, dr = self.diagrams()
        if dr is None:
            out["diagram"] = _nonzero_prop(evaluate(dl), self.rhs_matrix(), tol)
            return out
        out["diagram"] = _nonzero_prop(evaluate(dl), evaluate(dr), tol)
        for label, fn in (("colour_swap", swap_colours), ("transpose", transpose), ("conjugate", conjugate)):
            out[label] = _nonzero_prop(evaluate(fn(dl)), evaluate(fn(dr)), tol)
        return out


def _nonzero_prop(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    lam = proportional(a, b, tol)
    return lam is not None and lam != 0


def swap_colours(d: Diagram) -> Diagram:
    """Interchange Z and X on every spider of a copy of ``d``.

    Every spider leg gains a Hadamard, so edges between two spiders are
    unchanged and boundary wires pick up a Hadamard.
    """
    out = d.copy()
    for v in out.vertices():
        if out.type(v) in SPIDERS:
            out.set_type(v, VT.X if out.type(v) is VT.Z else VT.Z)
            for e in out.incident(v):
                a, b, et = out.edge(e)
                if a != b:
                    out.set_edge_type(e, et.toggle())
    return out


def circuit_identities(alpha: Phase = ALPHA, beta: Phase = BETA) -> list[CircuitIdentity]:
    """Commutation and rewriting identities among X, Z, S, V, H, CNOT, CZ and phase gadgets."""
    a, b = alpha, beta
    half = Phase(1, 2)
    pg = "PhaseGadget"
    return [
        CircuitIdentity("cnot_self_inverse", _c(2, ("CX", 0, 1), ("CX", 0, 1)), Circuit(2)),
        CircuitIdentity("cz_self_inverse", _c(2, ("CZ", 0, 1), ("CZ", 0, 1)), Circuit(2)),
        CircuitIdentity("cz_symmetric", _c(2, ("CZ", 0, 1)), _c(2, ("CZ", 1, 0))),
        CircuitIdentity("cnot_from_cz", _c(2, ("CX", 0, 1)), _c(2, ("H", 1), ("CZ", 0, 1), ("H", 1))),
        CircuitIdentity("cnot_reversed_by_hadamards", _c(2, ("H", 0), ("H", 1), ("CX", 0, 1), ("H", 0), ("H", 1)), _c(2, ("CX", 1, 0))),
        CircuitIdentity("z_phase_through_control", _c(2, ("RZ", 0, a), ("CX", 0, 1)), _c(2, ("CX", 0, 1), ("RZ", 0, a))),
        CircuitIdentity("x_phase_through_target", _c(2, ("RX", 1, a), ("CX", 0, 1)), _c(2, ("CX", 0, 1), ("RX", 1, a))),
        CircuitIdentity("x_copies_through_control", _c(2, ("X", 0), ("CX", 0, 1)), _c(2, ("CX", 0, 1), ("X", 0), ("X", 1))),
        CircuitIdentity("z_copies_through_target", _c(2, ("Z", 1), ("CX", 0, 1)), _c(2, ("CX", 0, 1), ("Z", 0), ("Z", 1))),
        CircuitIdentity("z_phase_through_cz", _c(2, ("RZ", 1, a), ("CZ", 0, 1)), _c(2, ("CZ", 0, 1), ("RZ", 1, a))),
        CircuitIdentity("x_through_cz", _c(2, ("X", 0), ("CZ", 0, 1)), _c(2, ("CZ", 0, 1), ("X", 0), ("Z", 1))),
        CircuitIdentity("cnot_targets_commute", _c(3, ("CX", 0, 2), ("CX", 1, 2)), _c(3, ("CX", 1, 2), ("CX", 0, 2))),
        CircuitIdentity("cnot_controls_commute", _c(3, ("CX", 0, 1), ("CX", 0, 2)), _c(3, ("CX", 0, 2), ("CX", 0, 1))),
        CircuitIdentity(
            "cnot_through_cnot",
            _c(3, ("CX", 0, 1), ("CX", 1, 2)),
            _c(3, ("CX", 1, 2), ("CX", 0, 2), ("CX", 0, 1)),
        ),
        CircuitIdentity("cz_through_cnot_control", _c(3, ("CZ", 0, 2), ("CX", 0, 1)), _c(3, ("CX", 0, 1), ("CZ", 0, 2))),
        CircuitIdentity("three_cnots_swap", _c(2, ("CX", 0, 1), ("CX", 1, 0), ("CX", 0, 1)), _c(2, ("SWAP", 0, 1))),
        CircuitIdentity("hzh_is_x", _c(1, ("H", 0), ("Z", 0), ("H", 0)), _c(1, ("X", 0))),
        CircuitIdentity("hsh_is_v", _c(1, ("H", 0), ("S", 0), ("H", 0)), _c(1, ("RX", 0, half))),
        CircuitIdentity("h_euler_svs", _c(1, ("H", 0)), _c(1, ("S", 0), ("RX", 0, half), ("S", 0))),
        CircuitIdentity("h_euler_vsv", _c(1, ("H", 0)), _c(1, ("RX", 0, half), ("S", 0), ("RX", 0, half))),
        CircuitIdentity("s_squared_is_z", _c(1, ("S", 0), ("S", 0)), _c(1, ("Z", 0))),
        CircuitIdentity("v_squared_is_x", _c(1, ("RX", 0, half), ("RX", 0, half)), _c(1, ("X", 0))),
        CircuitIdentity("x_flips_z_phase", _c(1, ("X", 0), ("RZ", 0, a)), _c(1, ("RZ", 0, -a), ("X", 0))),
        CircuitIdentity("gadget_from_cnots", _c(2, ("CX", 0, 1), ("RZ", 1, a), ("CX", 0, 1)), _c(2, (pg, 0, 1, a))),
        CircuitIdentity(
            "gadget_from_cnot_ladder",
            _c(3, ("CX", 0, 2), ("CX", 1, 2), ("RZ", 2, a), ("CX", 1, 2), ("CX", 0, 2)),
            _c(3, (pg, 0, 1, 2, a)),
        ),
        CircuitIdentity("gadget_commutes_with_z_phase", _c(2, ("RZ", 0, b), (pg, 0, 1, a)), _c(2, (pg, 0, 1, a), ("RZ", 0, b))),
        CircuitIdentity("gadget_commutes_with_cz", _c(2, ("CZ", 0, 1), (pg, 0, 1, a)), _c(2, (pg, 0, 1, a), ("CZ", 0, 1))),
        CircuitIdentity("gadgets_commute", _c(3, (pg, 0, 1, a), (pg, 1, 2, b)), _c(3, (pg, 1, 2, b), (pg, 0, 1, a))),
        CircuitIdentity("gadget_fusion", _c(2, (pg, 0, 1, a), (pg, 0, 1, b)), _c(2, (pg, 0, 1, a + b))),
        CircuitIdentity("gadget_through_cnot", _c(3, ("CX", 0, 1), (pg, 1, 2, a), ("CX", 0, 1)), _c(3, (pg, 0, 1, 2, a))),
        CircuitIdentity("x_flips_gadget", _c(2, ("X", 0), (pg, 0, 1, a)), _c(2, (pg, 0, 1, -a), ("X", 0))),
        CircuitIdentity(
            "cz_from_gadget",
            _c(2, ("CZ", 0, 1)),
            _c(2, ("RZ", 0, half), ("RZ", 1, half), (pg, 0, 1, -half)),
        ),
        CircuitIdentity(
            "pauli_gadget_zy",
            _c(2, ("Sdg", 1), ("H", 1), (pg, 0, 1, a), ("H", 1), ("S", 1)),
            _pauli_gadget(_Z, _Y, a),
        ),
        CircuitIdentity(
            "pauli_gadget_zy_via_v",
            _c(2, ("RX", 1, half), (pg, 0, 1, a), ("RX", 1, -half)),
            _pauli_gadget(_Z, _Y, a),
        ),
    ]


# -- rule instances -------------------------------------------------------------------------------


def _wire(d: Diagram, v: int, side: str, et: EdgeType = ET.SIMPLE) -> int:
    b = d.add_vertex(VT.BOUNDARY)
    d.add_edge(v, b, et)
    (d.inputs if side == "in" else d.outputs).append(b)
    return b


def _spider(d: Diagram, ty: VertexType, phase, n_in: int, n_out: int) -> int:
    v = d.add_vertex(ty, phase=phase)
    for _ in range(n_in):
        _wire(d, v, "in")
    for _ in range(n_out):
        _wire(d, v, "out")
    return v


@dataclass
class RuleInstance:
    """A diagram with one match of a named rule.

    ``family`` is ``"zx"`` for the core ZX rules and ``"zh"`` for the H-box rules.
    """

    name: str
    family: str
    diagram: Diagram
    match: Match


def _zx_instances(alpha: Phase, beta: Phase) -> list[RuleInstance]:
    out = []

    def add(name: str, d: Diagram, *vs: int, es: tuple = (), rule: Optional[str] = None) -> None:
        out.append(RuleInstance(name, "zx", d, Match(rule or name, vs, es)))

    d = Diagram()
    u = _spider(d, VT.Z, alpha, 2, 1)
    v = _spider(d, VT.Z, beta, 1, 2)
    d.add_edge(u, v)
    add("spider_fusion", d, u, v)

    d = Diagram()
    v = _spider(d, VT.Z, 0, 1, 1)
    add("remove_identity", d, v)

    d = Diagram(zh=True)
    h1, h2 = d.add_vertex(VT.H_BOX, label=-1), d.add_vertex(VT.H_BOX, label=-1)
    d.add_edge(h1, h2)
    _wire(d, h1, "in")
    _wire(d, h2, "out")
    add("cancel_hh", d, h1, h2)

    d = Diagram()
    x = d.add_vertex(VT.X, phase=1)
    _wire(d, x, "in")
    z = _spider(d, VT.Z, alpha, 0, 3)
    e = d.add_edge(x, z)
    add("pi_copy", d, x, z, es=(e,))

    for a in (0, 1):
        d = Diagram()
        s = d.add_vertex(VT.X, phase=a)
        z = _spider(d, VT.Z, alpha, 1, 2)
        d.add_edge(s, z)
        add(f"state_copy_{a}", d, s, z, rule="state_copy")

    d = Diagram()
    v = _spider(d, VT.X, alpha, 1, 2)
    add("color_change", d, v)

    d = Diagram()
    u = _spider(d, VT.Z, 0, 2, 0)
    v = _spider(d, VT.X, 0, 0, 2)
    d.add_edge(u, v)
    add("bialgebra", d, u, v)

    d = Diagram()
    u = _spider(d, VT.Z, alpha, 1, 0)
    v = _spider(d, VT.X, beta, 0, 1)
    d.add_edge(u, v)
    d.add_edge(u, v)
    add("hopf", d, u, v)

    # derived rules
    d = Diagram()
    v = _spider(d, VT.Z, alpha, 1, 1)
    e = d.add_edge(v, v, ET.HADAMARD)
    add("hadamard_self_loop", d, v, es=(e,), rule="remove_self_loop")

    d = Diagram()
    u = _spider(d, VT.Z, alpha, 1, 0)
    v = _spider(d, VT.Z, beta, 0, 1)
    d.add_edge(u, v, ET.HADAMARD)
    d.add_edge(u, v, ET.HADAMARD)
    add("hopf_hadamard", d, u, v, rule="hopf")

    d = Diagram()
    ts = [_spider(d, VT.Z, p, 1, 1) for p in (alpha, beta, 0)]
    pairs = []
    for p in (alpha, beta):
        hub, leaf = d.add_vertex(VT.X), d.add_vertex(VT.Z, phase=p)
        d.add_edge(hub, leaf)
        for t in ts:
            d.add_edge(hub, t)
        pairs.append((hub, leaf))
    add("phase_gadget_fusion", d, *pairs[0], *pairs[1], rule="fuse_phase_gadgets")

    d = Diagram()
    v = d.add_vertex(VT.Z, phase=Phase(1, 2))
    ns = [_spider(d, VT.Z, p, 1, 0) for p in (alpha, beta, Phase(1, 4))]
    for n in ns:
        d.add_edge(v, n, ET.HADAMARD)
    d.add_edge(ns[0], ns[1], ET.HADAMARD)
    add("local_complementation", d, v, rule="lc_simp")

    d = Diagram()
    u, v = d.add_vertex(VT.Z, phase=1), d.add_vertex(VT.Z, phase=0)
    d.add_edge(u, v, ET.HADAMARD)
    nu = [_spider(d, VT.Z, p, 1, 0) for p in (alpha, Phase(1, 4))]
    nv = [_spider(d, VT.Z, p, 0, 1) for p in (beta,)]
    common = _spider(d, VT.Z, Phase(3, 4), 0, 1)
    for n in nu + [common]:
        d.add_edge(u, n, ET.HADAMARD)
    for n in nv + [common]:
        d.add_edge(v, n, ET.HADAMARD)
    add("pivot", d, u, v, rule="pivot_simp")

    d = Diagram()
    u = _spider(d, VT.Z, alpha, 1, 0)
    v = _spider(d, VT.X, beta, 0, 1)
    e = d.add_edge(u, v, ET.HADAMARD)
    add("hadamard_euler", d, es=(e,), rule="euler_decompose_hadamard")
    return out


def _zh_instances(alpha: Phase) -> list[RuleInstance]:
    out = []
    lab_a, lab_b = 0.3 + 0.8j, -1.7 + 0.2j

    def add(name: str, d: Diagram, *vs: int) -> None:
        out.append(RuleInstance(name, "zh", d, Match(name, vs)))

    d = Diagram(zh=True)
    h1, k, h2 = d.add_vertex(VT.H_BOX, label=lab_a), d.add_vertex(VT.H_BOX, label=-1), d.add_vertex(VT.H_BOX, label=-1)
    d.add_edge(h1, k)
    d.add_edge(k, h2)
    _wire(d, h1, "in")
    _wire(d, h1, "in")
    _wire(d, h2, "out")
    add("fuse_hbox", d, h1, k, h2)

    for name, ph in (("absorb_one", 1), ("explode_zero", 0)):
        d = Diagram(zh=True)
        h, s = d.add_vertex(VT.H_BOX, label=lab_a), d.add_vertex(VT.X, phase=ph)
        d.add_edge(s, h)
        _wire(d, h, "in")
        _wire(d, h, "out")
        add(name, d, s, h)

    d = Diagram(zh=True)
    x, h = d.add_vertex(VT.X), d.add_vertex(VT.H_BOX, label=-1)
    d.add_edge(x, h)
    _wire(d, x, "in")
    _wire(d, x, "in")
    _wire(d, h, "out")
    _wire(d, h, "out")
    add("zh_bialgebra", d, x, h)

    d = Diagram(zh=True)
    h = d.add_vertex(VT.H_BOX, label=1)
    _wire(d, h, "in")
    _wire(d, h, "out")
    add("unit_decompose", d, h)

    def pair(name: str, la: complex, lb: complex, link: bool = False, intro: bool = False) -> None:
        d = Diagram(zh=True)
        zs = [_spider(d, VT.Z, 0, 1, 1) for _ in range(2)]
        a, b = d.add_vertex(VT.H_BOX, label=la), d.add_vertex(VT.H_BOX, label=lb)
        for z in zs:
            d.add_edge(a, z)
            d.add_edge(b, z)
        if link:
            n = d.add_vertex(VT.X, phase=1)
            d.add_edge(b, n)
            d.add_edge(n, a)
        if intro:
            y = _spider(d, VT.Z, 0, 1, 1)
            d.add_edge(a, y)
            n = d.add_vertex(VT.X, phase=1)
            d.add_edge(b, n)
            d.add_edge(n, y)
        add(name, d, *((min(a, b), max(a, b)) if name == "multiply_hboxes" else (a, b)))

    pair("multiply_hboxes", lab_a, lab_b)
    pair("average_hboxes", lab_a, lab_b, link=True)
    pair("intro_rule", lab_a, lab_a, intro=True)

    for k in (2, 3):
        d = Diagram(zh=True)
        h = d.add_vertex(VT.H_BOX, label=alpha.exp())
        for i in range(k):
            _wire(d, h, "in" if i % 2 == 0 else "out")
        out.append(RuleInstance(f"hbox{k}_fourier", "zh", d, Match("ccz_decompose", (h,))))
    return out


def rule_instances(alpha: Phase = ALPHA, beta: Phase = BETA, colour_swapped: bool = True) -> list[RuleInstance]:
    """Hand-built instances of every core ZX rule, the derived rules and the H-box rules.

    With ``colour_swapped`` each ZX instance also appears with Z and X interchanged.
    """
    zx = _zx_instances(alpha, beta)
    out = list(zx)
    if colour_swapped:
        for inst in zx:
            if inst.match.rule_name in ("lc_simp", "pivot_simp", "fuse_phase_gadgets", "euler_decompose_hadamard", "remove_identity"):
                continue
            m = inst.match
            if m.rule_name == "bialgebra":
                m = Match(m.rule_name, tuple(reversed(m.vertices)), m.edges)
            out.append(RuleInstance(inst.name + "_swapped", "zx", swap_colours(inst.diagram), m))
        d = Diagram()
        v = _spider(d, VT.X, 0, 1, 1)
        out.append(RuleInstance("remove_identity_x", "zx", d, Match("remove_identity", (v,))))
    return out + _zh_instances(alpha)


@dataclass
class ReplayReport:
    name: str
    sound: bool
    replayed: bool
    trace: Trace


def check_rule_instance(inst: RuleInstance, tol: float = DEFAULT_TOL) -> ReplayReport:
    """Apply the instance's rule, check exact evaluation preservation, then replay the JSONL trace."""
    before = evaluate(inst.diagram)
    work = inst.diagram.copy()
    trace = [RULES[inst.match.rule_name].apply(work, inst.match)]
    after = evaluate(work)
    sound = before.shape == after.shape and bool(np.max(np.abs(before - after), initial=0.0) <= tol)
    again = replay(inst.diagram, trace_from_jsonl(trace_to_jsonl(trace)))
    replayed = again.signature() == work.signature() and bool(np.max(np.abs(evaluate(again) - after), initial=0.0) <= tol)
    return ReplayReport(inst.name, sound, replayed, trace)


def y_state_identity() -> tuple[Diagram, Diagram]:
    """The two ways of writing the ``|+i>`` state: ``Z(pi/2)`` and ``X(-pi/2)`` states."""
    return _gen("zspider", 0, 1, Phase(1, 2)), _gen("xspider", 0, 1, Phase(-1, 2))


def all_checks(tol: float = DEFAULT_TOL) -> dict[str, Callable[[], bool]]:
    """Named boolean checks covering every corpus entry."""
    checks: dict[str, Callable[[], bool]] = {}
    for e in generator_table() + unitary_table():
        checks[f"matrix:{e.name}"] = lambda e=e: e.check(tol)
    for ident in circuit_identities():
        checks[f"circuit:{ident.name}"] = lambda i=ident: all(i.check(tol).values())
    for inst in rule_instances():
        checks[f"rule:{inst.name}"] = lambda i=inst: (lambda r: r.sound and r.replayed)(check_rule_instance(i, tol))
    y1, y2 = y_state_identity()
    checks["derived:y_state"] = lambda: _nonzero_prop(evaluate(y1), evaluate(y2), tol)
    return checks
