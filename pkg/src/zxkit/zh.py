"""H-box rules, Toffoli constructions and the XOR/AND Fourier transform.

H-boxes are unnormalised: an arity-``n`` H-box with label ``a`` is the
all-ones tensor with ``a`` at the all-ones index. An arity-2 H-box labelled
``-1`` is ``sqrt(2)`` times a Hadamard gate.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number
from typing import Optional, Sequence

from .circuit import Circuit
from .graph import Diagram, DiagramError, EdgeType, VertexType, compose, identity, make_generator, tensor
from .phase import Phase
from .rules import (
    RULES,
    Match,
    Rule,
    StaleMatchError,
    Trace,
    _bind,
    _run_to_fixpoint,
    color_change,
    register,
)
from .translate import circuit_to_diagram

SQRT2 = math.sqrt(2)
ET = EdgeType
VT = VertexType


# -- helpers ----------------------------------------------------------------------------


def _legs(d: Diagram, v: int) -> Optional[list[tuple[int, int, EdgeType]]]:
    """``(edge, neighbour, type)`` per leg of ``v``, or None if ``v`` has a self-loop."""
    out = []
    for e in d.incident(v):
        a, b, et = d.edge(e)
        if a == b:
            return None
        out.append((e, b if a == v else a, et))
    return out


def _is_state(d: Diagram, v: int, ty: VertexType, phase: Phase) -> bool:
    return d.type(v) is ty and d.phase(v) == phase and len(d.incident(v)) == 1 and not d.self_loops(v)


def _z_targets(d: Diagram, h: int) -> Optional[dict[int, int]]:
    """Map neighbour -> edge when every leg of ``h`` is a plain edge to a distinct Z-spider."""
    legs = _legs(d, h)
    if legs is None:
        return None
    out: dict[int, int] = {}
    for e, w, et in legs:
        if et is not ET.SIMPLE or d.type(w) is not VT.Z or w in out:
            return None
        out[w] = e
    return out


def label_phase(label: complex, tol: float = 1e-12) -> Phase:
    """Angle of a unit-modulus label, exact when it is a small rational multiple of pi.

    Raises:
        ValueError: if ``|label| != 1``.
    """
    if abs(abs(label) - 1) > 1e-9:
        raise ValueError(f"label {label} is not a phase")
    turns = cmath.phase(label) / math.pi
    frac = Fraction(turns).limit_denominator(1024)
    if abs(float(frac) - turns) < tol:
        return Phase(frac)
    return Phase.real(cmath.phase(label))


# -- H-box fusion ----------------------------------------------------------------------


def _fuse_parts(d: Diagram, m: Match):
    h1, k, h2 = m.vertices
    if len({h1, k, h2}) != 3 or any(d.type(x) is not VT.H_BOX for x in (h1, k, h2)):
        return None
    lk = _legs(d, k)
    if lk is None or len(lk) != 2 or abs(d.label(k) + 1) > 1e-12 or abs(d.label(h2) + 1) > 1e-12:
        return None
    if any(et is not ET.SIMPLE for _, _, et in lk) or {w for _, w, _ in lk} != {h1, h2}:
        return None
    if _legs(d, h1) is None or _legs(d, h2) is None:
        return None
    if len(d.edges_between(h1, h2)) or len(d.edges_between(h1, k)) != 1:
        return None
    return h1, k, h2


def _fuse_check(d: Diagram, m: Match) -> bool:
    return _fuse_parts(d, m) is not None


def _fuse_find(d: Diagram) -> list[Match]:
    out = []
    for k in d.vertices():
        if d.type(k) is not VT.H_BOX or len(d.incident(k)) != 2:
            continue
        ns = d.neighbors(k)
        for h1, h2 in (ns, ns[::-1]):
            m = Match("fuse_hbox", (h1, k, h2))
            if _fuse_check(d, m):
                out.append(m)
    return out


def _fuse_rewrite(d: Diagram, m: Match) -> None:
    h1, k, h2 = m.vertices
    for e, w, et in _legs(d, h2):
        if w != k:
            d.add_edge(h1, w, et)
    d.remove_vertex(k)
    d.remove_vertex(h2)
    d.scale(2)


fuse_hbox = register(Rule("fuse_hbox", _fuse_find, _fuse_check, _fuse_rewrite))


# -- absorbing |1> and exploding |0> ------------------------------------------------------


def _state_into_hbox(d: Diagram, m: Match, phase: Phase) -> bool:
    s, h = m.vertices
    if s == h or d.type(h) is not VT.H_BOX or _legs(d, h) is None:
        return False
    if not _is_state(d, s, VT.X, phase):
        return False
    (e,) = d.incident(s)
    return d.other_end(e, s) == h and d.edge_type(e) is ET.SIMPLE


def _state_find(name: str, phase: Phase):
    def find(d: Diagram) -> list[Match]:
        out = []
        for s in d.vertices():
            if d.type(s) is VT.X and len(d.incident(s)) == 1:
                h = d.other_end(d.incident(s)[0], s)
                m = Match(name, (s, h))
                if _state_into_hbox(d, m, phase):
                    out.append(m)
        return out

    return find


def _absorb_rewrite(d: Diagram, m: Match) -> None:
    s, h = m.vertices
    d.remove_vertex(s)
    d.scale(SQRT2)
    if not d.incident(h):
        d.scale(d.label(h))
        d.remove_vertex(h)


absorb_one = register(
    Rule("absorb_one", _state_find("absorb_one", Phase(1)), lambda d, m: _state_into_hbox(d, m, Phase(1)), _absorb_rewrite)
)


def _explode_rewrite(d: Diagram, m: Match) -> None:
    s, h = m.vertices
    legs = [(w, et) for e, w, et in _legs(d, h) if w != s]
    d.remove_vertex(s)
    d.remove_vertex(h)
    for w, et in legs:
        z = d.add_vertex(VT.Z)
        d.add_edge(z, w, et)
    d.scale(SQRT2)


explode_zero = register(
    Rule("explode_zero", _state_find("explode_zero", Phase(0)), lambda d, m: _state_into_hbox(d, m, Phase(0)), _explode_rewrite)
)


# -- ZH bialgebra ------------------------------------------------------------------------------


def _zhb_check(d: Diagram, m: Match) -> bool:
    x, h = m.vertices
    if d.type(x) is not VT.X or not d.phase(x).is_zero() or d.type(h) is not VT.H_BOX:
        return False
    if abs(d.label(h) + 1) > 1e-12:
        return False
    lx, lh = _legs(d, x), _legs(d, h)
    if lx is None or lh is None or len(lx) < 2:
        return False
    between = d.edges_between(x, h)
    return len(between) == 1 and d.edge_type(between[0]) is ET.SIMPLE


def _zhb_find(d: Diagram) -> list[Match]:
    out = []
    for x in d.vertices():
        if d.type(x) is VT.X:
            for h in sorted(set(d.neighbors(x))):
                m = Match("zh_bialgebra", (x, h))
                if _zhb_check(d, m):
                    out.append(m)
    return out


def _zhb_rewrite(d: Diagram, m: Match) -> None:
    x, h = m.vertices
    xs = [(w, et) for e, w, et in _legs(d, x) if w != h]
    hs = [(w, et) for e, w, et in _legs(d, h) if w != x]
    d.remove_vertex(x)
    d.remove_vertex(h)
    zs = []
    for w, et in hs:
        z = d.add_vertex(VT.Z)
        d.add_edge(z, w, et)
        zs.append(z)
    for w, et in xs:
        box = d.add_vertex(VT.H_BOX, label=-1)
        d.add_edge(box, w, et)
        for z in zs:
            d.add_edge(box, z)
    d.scale(SQRT2 ** (1 - len(xs)))


zh_bialgebra = register(Rule("zh_bialgebra", _zhb_find, _zhb_check, _zhb_rewrite))


# -- unit decomposition --------------------------------------------------------------------------


def _unit_check(d: Diagram, m: Match) -> bool:
    (h,) = m.vertices
    return d.type(h) is VT.H_BOX and abs(d.label(h) - 1) < 1e-12 and _legs(d, h) is not None


def _unit_rewrite(d: Diagram, m: Match) -> None:
    (h,) = m.vertices
    legs = [(w, et) for e, w, et in _legs(d, h)]
    d.remove_vertex(h)
    for w, et in legs:
        z = d.add_vertex(VT.Z)
        d.add_edge(z, w, et)


unit_decompose = register(
    Rule(
        "unit_decompose",
        lambda d: [Match("unit_decompose", (h,)) for h in d.vertices() if _unit_check(d, Match("unit_decompose", (h,)))],
        _unit_check,
        _unit_rewrite,
    )
)


# -- multiply, average and intro -------------------------------------------------------------------


def _pair_find(name: str, check):
    def find(d: Diagram) -> list[Match]:
        boxes = [v for v in d.vertices() if d.type(v) is VT.H_BOX]
        out = []
        for a in boxes:
            for b in boxes:
                if a != b:
                    m = Match(name, (a, b))
                    if check(d, m):
                        out.append(m)
        return out

    return find


def _multiply_check(d: Diagram, m: Match) -> bool:
    a, b = m.vertices
    if a >= b or d.type(a) is not VT.H_BOX or d.type(b) is not VT.H_BOX:
        return False
    ta, tb = _z_targets(d, a), _z_targets(d, b)
    return ta is not None and tb is not None and set(ta) == set(tb)


def _multiply_rewrite(d: Diagram, m: Match) -> None:
    a, b = m.vertices
    d.set_label(a, d.label(a) * d.label(b))
    d.remove_vertex(b)


multiply_hboxes = register(
    Rule("multiply_hboxes", _pair_find("multiply_hboxes", _multiply_check), _multiply_check, _multiply_rewrite)
)


def _not_link(d: Diagram, b: int) -> Optional[tuple[int, int, dict[int, int]]]:
    """For an H-box ``b`` with exactly one leg through a NOT: (not vertex, far end, other Z targets)."""
    legs = _legs(d, b)
    if legs is None:
        return None
    nots = [(e, w) for e, w, et in legs if d.type(w) is VT.X]
    if len(nots) != 1:
        return None
    e, n = nots[0]
    if d.edge_type(e) is not ET.SIMPLE or d.phase(n) != Phase(1) or d.self_loops(n):
        return None
    ln = _legs(d, n)
    if len(ln) != 2 or any(et is not ET.SIMPLE for _, _, et in ln):
        return None
    far = [w for _, w, _ in ln if w != b]
    if len(far) != 1:
        return None
    rest: dict[int, int] = {}
    for e2, w, et in legs:
        if e2 == e:
            continue
        if et is not ET.SIMPLE or d.type(w) is not VT.Z or w in rest:
            return None
        rest[w] = e2
    return n, far[0], rest


def _average_check(d: Diagram, m: Match) -> bool:
    a, b = m.vertices
    if a == b or d.type(a) is not VT.H_BOX or d.type(b) is not VT.H_BOX:
        return False
    link = _not_link(d, b)
    if link is None or link[1] != a:
        return False
    legs_a = _legs(d, a)
    if legs_a is None:
        return False
    rest: dict[int, int] = {}
    for e, w, et in legs_a:
        if w == link[0]:
            continue
        if et is not ET.SIMPLE or d.type(w) is not VT.Z or w in rest:
            return False
        rest[w] = e
    return set(rest) == set(link[2])


def _average_rewrite(d: Diagram, m: Match) -> None:
    a, b = m.vertices
    n, _, _ = _not_link(d, b)
    d.set_label(a, (d.label(a) + d.label(b)) / 2)
    d.remove_vertex(n)
    d.remove_vertex(b)
    d.scale(2)


average_hboxes = register(
    Rule("average_hboxes", _pair_find("average_hboxes", _average_check), _average_check, _average_rewrite)
)


def _intro_check(d: Diagram, m: Match) -> bool:
    a, b = m.vertices
    if a == b or d.type(a) is not VT.H_BOX or d.type(b) is not VT.H_BOX:
        return False
    if abs(d.label(a) - d.label(b)) > 1e-12:
        return False
    link = _not_link(d, b)
    ta = _z_targets(d, a)
    if link is None or ta is None:
        return False
    _, y, rest = link
    return d.type(y) is VT.Z and set(ta) == set(rest) | {y} and y not in rest


def _intro_rewrite(d: Diagram, m: Match) -> None:
    a, b = m.vertices
    n, y, _ = _not_link(d, b)
    d.remove_edge(_z_targets(d, a)[y])
    d.remove_vertex(n)
    d.remove_vertex(b)


intro_rule = register(Rule("intro_rule", _pair_find("intro_rule", _intro_check), _intro_check, _intro_rewrite))


# -- CCZ decomposition ----------------------------------------------------------------------------


def _ccz_check(d: Diagram, m: Match) -> bool:
    (h,) = m.vertices
    if d.type(h) is not VT.H_BOX or len(d.incident(h)) not in (2, 3) or _legs(d, h) is None:
        return False
    return abs(abs(d.label(h)) - 1) < 1e-9


def and_phase_terms(phase: Phase, arity: int) -> list[tuple[tuple[int, ...], Phase]]:
    """Parity terms whose phases sum to ``phase * x_0 x_1 ... x_{arity-1}``.

    Returns ``(positions, coefficient)`` pairs with non-zero coefficients, one
    per non-empty subset, singletons first.
    """
    table = FourierTable.and_monomial(arity, Fraction(1))
    out = and_to_xor(table)
    terms = []
    for mask in sorted(range(1, 2**arity), key=lambda y: (bin(y).count("1"), y)):
        c = out.coeffs[mask]
        if c == 0:
            continue
        pos = tuple(i for i in range(arity) if mask >> (arity - 1 - i) & 1)
        if phase.is_exact:
            terms.append((pos, Phase(phase.fraction * c)))
        else:
            terms.append((pos, Phase.real(phase.radians * float(c))))
    if phase.is_zero():
        return []
    return terms


def _ccz_rewrite(d: Diagram, m: Match) -> None:
    (h,) = m.vertices
    phase = label_phase(d.label(h))
    spiders = []
    for e, w, et in _legs(d, h):
        if et is ET.SIMPLE and d.type(w) is VT.Z and len(d.edges_between(h, w)) == 1:
            spiders.append(w)
        else:
            z = d.add_vertex(VT.Z)
            d.add_edge(z, w, et)
            d.add_edge(z, h)
            spiders.append(z)
    d.remove_vertex(h)
    for pos, ph in and_phase_terms(phase, len(spiders)):
        if len(pos) == 1:
            d.add_to_phase(spiders[pos[0]], ph)
            continue
        hub = d.add_vertex(VT.X)
        leaf = d.add_vertex(VT.Z, phase=ph)
        d.add_edge(hub, leaf)
        for i in pos:
            d.add_edge(spiders[i], hub)
        d.scale(SQRT2 ** (len(pos) - 1))


ccz_rule = register(
    Rule(
        "ccz_decompose",
        lambda d: [Match("ccz_decompose", (h,)) for h in d.vertices() if _ccz_check(d, Match("ccz_decompose", (h,)))],
        _ccz_check,
        _ccz_rewrite,
    )
)


def ccz_decompose(d: Diagram, hbox: int) -> Trace:
    """Replace an arity-2 or arity-3 H-box labelled ``e^{i alpha}`` by phases and phase gadgets.

    The H-box is the diagonal ``e^{i alpha x y (z)}`` on its legs; the AND is
    expanded into parities, each parity becoming a phase (singletons) or a
    phase gadget. With ``alpha = pi`` and arity 3 this is the seven-term
    ``pi/4`` CCZ decomposition.

    Raises:
        StaleMatchError: if ``hbox`` is not such an H-box.
    """
    if d.has_vertex(hbox) and d.type(hbox) is VT.H_BOX and len(d.incident(hbox)) > 3:
        raise StaleMatchError("ccz_decompose supports arity 2 and 3 only")
    return [ccz_rule.apply(d, Match("ccz_decompose", (hbox,)))]


def phase_terms_circuit(n: int, terms: Sequence[tuple[Sequence[int], Phase]]) -> Circuit:
    """Circuit of phase gadgets, one per ``(qubits, phase)`` term."""
    c = Circuit(n)
    for qs, ph in terms:
        c.add("PhaseGadget", *qs, phase=ph)
    return c


# -- Toffoli and controls ----------------------------------------------------------------------------


def toffoli_diagram(controls: int) -> Diagram:
    """Multiply-controlled NOT on ``controls + 1`` qubits, target last.

    Each control is a Z-spider wired to one H-box labelled -1; the target is an
    X-spider joined to the H-box by a Hadamard edge. The scalar is exact.

    Raises:
        ValueError: if ``controls < 1``.
    """
    if controls < 1:
        raise ValueError("need at least one control")
    d = Diagram(zh=True)
    n = controls + 1
    d.inputs = [d.add_vertex(VT.BOUNDARY) for _ in range(n)]
    h = d.add_vertex(VT.H_BOX, label=-1)
    outs = []
    for q in range(n):
        v = d.add_vertex(VT.Z if q < controls else VT.X)
        d.add_edge(d.inputs[q], v)
        o = d.add_vertex(VT.BOUNDARY)
        d.add_edge(v, o)
        outs.append(o)
        d.add_edge(v, h, ET.SIMPLE if q < controls else ET.HADAMARD)
    d.outputs = outs
    return d


def add_control(d: Diagram, hbox: int, activating: bool = True) -> Diagram:
    """Copy ``d`` and wire ``hbox`` to a Z-spider on a new last qubit.

    With ``activating`` the new control fires on ``|1>``; otherwise the wire
    passes through a NOT so it fires on ``|0>``. Feeding the firing basis
    state into the new qubit gives back ``d``; the other branch is not checked
    here and has to be verified separately.

    Raises:
        DiagramError: if ``hbox`` is not an H-box of ``d``.
    """
    if not d.has_vertex(hbox) or d.type(hbox) is not VT.H_BOX:
        raise DiagramError(f"vertex {hbox} is not an H-box")
    out = d.copy()
    out.zh = True
    i = out.add_vertex(VT.BOUNDARY)
    z = out.add_vertex(VT.Z)
    o = out.add_vertex(VT.BOUNDARY)
    out.add_edge(i, z)
    out.add_edge(z, o)
    if activating:
        out.add_edge(z, hbox)
    else:
        n = out.add_vertex(VT.X, phase=1)
        out.add_edge(z, n)
        out.add_edge(n, hbox)
    out.inputs.append(i)
    out.outputs.append(o)
    return out


def phase_hbox_diagram(phase: Phase) -> Diagram:
    """Single-qubit ``diag(1, e^{i phase})`` written as an arity-1 H-box on a Z-spider."""
    d = Diagram(zh=True)
    i, o = d.add_vertex(VT.BOUNDARY), d.add_vertex(VT.BOUNDARY)
    z = d.add_vertex(VT.Z)
    h = d.add_vertex(VT.H_BOX, label=phase.exp())
    d.add_edge(i, z)
    d.add_edge(z, o)
    d.add_edge(z, h)
    d.inputs, d.outputs = [i], [o]
    return d


def reduce_toffoli_pair(d: Diagram) -> Trace:
    """Reduce composed Toffoli-style diagrams in place.

    X-spiders are colour-changed, then fusion, H-box multiplication, unit
    decomposition and identity removal run until nothing applies.
    """
    trace: Trace = []
    for v in d.vertices():
        if d.type(v) is VT.X:
            trace.append(color_change.apply(d, Match("color_change", (v,))))
    always = lambda d, m: True  # noqa: E731
    names = ("spider_fusion", "multiply_hboxes", "unit_decompose", "remove_identity", "cancel_hh")
    _run_to_fixpoint(d, [(RULES[n], always) for n in names], trace)
    return trace


# -- Fourier transform between XOR and AND phase polynomials -------------------------------------


@dataclass
class FourierTable:
    """Coefficients of a phase polynomial over ``n`` Boolean variables.

    ``coeffs[y]`` multiplies the parity of the variables in bitmask ``y``
    (``kind == "xor"``) or their product (``kind == "and"``). Bit ``n-1-i`` of
    ``y`` selects variable ``i``. Index 0 is the constant term in both bases.
    Coefficients may be ints, Fractions or floats in any fixed angle unit;
    exact inputs give exact transforms.
    """

    n: int
    kind: str
    coeffs: list

    def __post_init__(self) -> None:
        if self.kind not in ("xor", "and"):
            raise ValueError("kind must be 'xor' or 'and'")
        if len(self.coeffs) != 2**self.n:
            raise ValueError(f"expected {2 ** self.n} coefficients, got {len(self.coeffs)}")
        self.coeffs = list(self.coeffs)

    @classmethod
    def zeros(cls, n: int, kind: str) -> "FourierTable":
        return cls(n, kind, [0] * 2**n)

    @classmethod
    def and_monomial(cls, n: int, coeff: Number) -> "FourierTable":
        """``coeff * x_0 x_1 ... x_{n-1}``."""
        t = cls.zeros(n, "and")
        t.coeffs[-1] = coeff
        return t

    def value(self, x: Sequence[int] | int):
        """Evaluate the polynomial at a bit string (or its integer encoding)."""
        if isinstance(x, int):
            bits = x
        else:
            bits = 0
            for b in x:
                bits = 2 * bits + int(b)
        total = 0
        for y, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if y == 0:
                total += c
            elif self.kind == "xor":
                total += c * (bin(y & bits).count("1") % 2)
            else:
                total += c * int(y & bits == y)
        return total

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FourierTable)
            and (self.n, self.kind) == (other.n, other.kind)
            and all(a == b for a, b in zip(self.coeffs, other.coeffs))
        )


def _submasks(y: int):
    z = y
    while z:
        yield z
        z = (z - 1) & y


def xor_to_and(t: FourierTable) -> FourierTable:
    """Rewrite parities as products, using ``x XOR y = x + y - 2xy`` repeatedly.

    A parity over ``y`` expands to ``sum_z (-2)^(|z|-1) AND_z`` over non-empty
    subsets ``z`` of ``y``.
    """
    if t.kind != "xor":
        raise ValueError("expected an XOR table")
    out = FourierTable.zeros(t.n, "and")
    out.coeffs[0] = t.coeffs[0]
    for y in range(1, 2**t.n):
        c = t.coeffs[y]
        if c == 0:
            continue
        for z in _submasks(y):
            out.coeffs[z] += c * (-2) ** (bin(z).count("1") - 1)
    return out


def and_to_xor(t: FourierTable) -> FourierTable:
    """Rewrite products as parities.

    A product over ``y`` expands to ``2^(1-|y|) sum_z (-1)^(|z|+1) XOR_z`` over
    non-empty subsets ``z`` of ``y``; for two variables this is
    ``xy = (x + y - x XOR y) / 2``.
    """
    if t.kind != "and":
        raise ValueError("expected an AND table")
    out = FourierTable.zeros(t.n, "xor")
    out.coeffs[0] = t.coeffs[0]
    for y in range(1, 2**t.n):
        c = t.coeffs[y]
        if c == 0:
            continue
        k = bin(y).count("1")
        for z in _submasks(y):
            sign = 1 if bin(z).count("1") % 2 else -1
            out.coeffs[z] += c * sign * Fraction(1, 2 ** (k - 1))
    return out


# -- T-count reductions with a post-selected ancilla ------------------------------------------------


def _and_ancilla_circuit() -> Circuit:
    """Four-qubit circuit that leaves ``|ab>`` on qubit 3 when that qubit starts in ``|+>``."""
    c = Circuit(4)
    a, b, anc = 0, 1, 3
    q = Phase(1, 4)
    c.add("PhaseGadget", anc, phase=q)
    c.add("PhaseGadget", a, anc, phase=-q)
    c.add("PhaseGadget", b, anc, phase=-q)
    c.add("PhaseGadget", a, b, anc, phase=q)
    c.add("H", anc)
    c.add("S", anc)
    return c


def jones_circuit() -> Circuit:
    """Unitary part of the 4-T Toffoli; qubit 3 is the ancilla, prepared in ``|+>``."""
    c = _and_ancilla_circuit()
    c.add("CX", 3, 2)
    return c


def gidney_circuit(middle: Phase | int | Fraction = Fraction(1, 2)) -> Circuit:
    """Unitary part of the Toffoli pair around a phase ``middle`` on the target.

    The ancilla (qubit 3) ends up holding ``t XOR ab``; the middle phase is
    applied to it and the ancilla is then measured out.
    """
    c = _and_ancilla_circuit()
    c.add("CX", 2, 3)
    ph = Phase.coerce(middle)
    if not ph.is_zero():
        c.add("PhaseGadget", 3, phase=ph)
    return c


def _ancilla_diagram(core: Circuit) -> Diagram:
    plus = make_generator("zspider", 0, 1, Phase(0))
    plus.scale(1 / SQRT2)
    return compose(tensor(identity(3), plus), circuit_to_diagram(core, "gadgets"))


def post_select(d: Diagram, outcome: int) -> Diagram:
    """Project the last output onto ``<+|`` (0) or ``<->`` (1)."""
    eff = make_generator("zspider", 1, 0, Phase(outcome))
    eff.scale(1 / SQRT2)
    return compose(d, tensor(identity(len(d.outputs) - 1), eff))


def build_jones_toffoli() -> tuple[Diagram, Circuit]:
    """Toffoli with four T gates and an ancilla measured in the X basis.

    Returns:
        The diagram with inputs ``a, b, t`` and outputs ``a, b, t, ancilla``,
        and the correction for the ``<-|`` outcome (a CZ on ``a, b``). Either
        branch is obtained with :func:`post_select`.
    """
    corr = Circuit(3).add("CZ", 0, 1)
    return _ancilla_diagram(jones_circuit()), corr


def build_gidney_pair(middle: Phase | int | Fraction = Fraction(1, 2)) -> tuple[Diagram, Circuit]:
    """Toffoli pair around a target phase, with four T gates and a measured ancilla.

    The ``<+|`` branch is proportional to ``Toffoli . P(middle)_t . Toffoli``;
    the ``<-|`` branch needs the returned correction, a CZ on ``a, b`` and a
    Z on ``t``.
    """
    corr = Circuit(3).add("CZ", 0, 1).add("Z", 2)
    return _ancilla_diagram(gidney_circuit(middle)), corr


find_fuse_hbox, apply_fuse_hbox = _bind(fuse_hbox)
find_absorb_one, apply_absorb_one = _bind(absorb_one)
find_explode_zero, apply_explode_zero = _bind(explode_zero)
find_zh_bialgebra, apply_zh_bialgebra = _bind(zh_bialgebra)
find_unit_decompose, apply_unit_decompose = _bind(unit_decompose)
find_multiply_hboxes, apply_multiply_hboxes = _bind(multiply_hboxes)
find_average_hboxes, apply_average_hboxes = _bind(average_hboxes)
find_intro_rule, apply_intro_rule = _bind(intro_rule)
find_ccz_decompose, apply_ccz_decompose = _bind(ccz_rule)

ZH_RULES = (fuse_hbox, absorb_one, explode_zero, zh_bialgebra, unit_decompose, multiply_hboxes, average_hboxes, intro_rule, ccz_rule)
