"""Small worked derivations: GHZ, teleportation, magic-state injection and entanglement checks."""

from __future__ import annotations

import math
from typing import Optional

from .circuit import Circuit
from .graph import Diagram, VertexType, compose, identity, make_generator, tensor
from .phase import Phase
from .rules import Trace, basic_simp
from .simplify import full_reduce_inplace
from .translate import circuit_to_diagram

SQRT2 = math.sqrt(2)


def basis_states(bits) -> Diagram:
    """Computational basis state ``|bits>`` as normalised X-spider states."""
    out = Diagram()
    for b in bits:
        s = make_generator("xspider", 0, 1, Phase(int(b)))
        s.scale(1 / SQRT2)
        out = tensor(out, s)
    return out


def _effect(kind: str, phase: Phase) -> Diagram:
    e = make_generator(kind, 1, 0, phase)
    e.scale(1 / SQRT2)
    return e


def ghz_circuit(n: int = 3) -> Circuit:
    c = Circuit(n).add("H", 0)
    for q in range(n - 1):
        c.add("CX", q, q + 1)
    return c


def ghz_diagram(n: int = 3) -> Diagram:
    """The GHZ preparation circuit applied to ``|0...0>``."""
    return compose(basis_states([0] * n), circuit_to_diagram(ghz_circuit(n)))


def single_spider_state(d: Diagram) -> Optional[int]:
    """The spider id if ``d`` is one phase-free Z-spider wired straight to every output."""
    spiders = [v for v in d.vertices() if d.type(v) is not VertexType.BOUNDARY]
    if len(spiders) != 1 or d.inputs:
        return None
    (s,) = spiders
    if d.type(s) is not VertexType.Z or not d.phase(s).is_zero():
        return None
    if sorted(d.neighbors(s)) != sorted(d.outputs) or any(et.value != "P" for _, _, _, et in d.edges()):
        return None
    return s


def teleportation_diagram(a: int, b: int) -> Diagram:
    """Teleportation with measurement outcomes ``a`` (qubit 0) and ``b`` (qubit 1) fixed.

    Qubit 0 is the input. A Bell pair on qubits 1 and 2 is made by a phase-free
    Z-spider; after CNOT(0, 1) and H(0) the two qubits are projected onto
    ``<a|`` and ``<b|`` and the corrections ``X^b`` then ``Z^a`` act on qubit 2,
    which is the only output.
    """
    bell = make_generator("zspider", 0, 2, Phase(0))
    bell.scale(1 / SQRT2)
    prep = tensor(identity(1), bell)
    body = circuit_to_diagram(Circuit(3).add("CX", 0, 1).add("H", 0))
    meas = tensor(tensor(_effect("xspider", Phase(a)), _effect("xspider", Phase(b))), identity(1))
    fix = Circuit(1)
    if b:
        fix.add("X", 0)
    if a:
        fix.add("Z", 0)
    return compose(compose(compose(prep, body), meas), circuit_to_diagram(fix))


def magic_injection_diagram(a: int, alpha: Phase = Phase(1, 4)) -> Diagram:
    """Inject ``Z(alpha)`` from an ancilla state through CNOT(data, ancilla) and outcome ``a``."""
    anc = make_generator("zspider", 0, 1, alpha)
    anc.scale(1 / SQRT2)
    prep = tensor(identity(1), anc)
    body = circuit_to_diagram(Circuit(2).add("CX", 0, 1))
    return compose(compose(prep, body), tensor(identity(1), _effect("xspider", Phase(a))))


def injected_phase(a: int, alpha: Phase = Phase(1, 4)) -> Phase:
    """Phase left on the data qubit: ``alpha`` for ``a = 0`` and ``-alpha`` for ``a = 1``.

    For ``alpha = pi/4`` this is ``pi/4 - a pi/2``.
    """
    return -alpha if a else alpha


def reduce_to_wire(d: Diagram) -> Trace:
    """Run the basic strategy in place."""
    return basic_simp(d)


def wire_phase(d: Diagram) -> Optional[Phase]:
    """Phase of a one-wire diagram that is a single Z-spider (or a bare wire, phase 0)."""
    if len(d.inputs) != 1 or len(d.outputs) != 1:
        return None
    spiders = [v for v in d.vertices() if d.type(v) is not VertexType.BOUNDARY]
    if not spiders:
        return Phase(0) if d.neighbors(d.inputs[0]) == [d.outputs[0]] else None
    if len(spiders) != 1 or d.type(spiders[0]) is not VertexType.Z:
        return None
    if any(et.value != "P" for _, _, _, et in d.edges()):
        return None
    return d.phase(spiders[0])


def disentangling_circuit() -> Circuit:
    """Four-qubit Clifford circuit whose output leaves qubit 1 in ``|i>``, unentangled.

    The two CZ gates cancel through the gates in between, leaving GHZ on
    qubits 0, 2, 3 and ``S H |0>`` on qubit 1.
    """
    return (
        Circuit(4)
        .add("H", 0)
        .add("H", 1)
        .add("CZ", 0, 1)
        .add("CX", 0, 2)
        .add("S", 1)
        .add("CX", 2, 3)
        .add("CZ", 0, 1)
    )


def output_components(d: Diagram) -> list[set[int]]:
    """Output indices grouped by connected component of the diagram."""
    seen: set[int] = set()
    index = {o: i for i, o in enumerate(d.outputs)}
    groups = []
    for o in d.outputs:
        if o in seen:
            continue
        stack, comp = [o], set()
        seen.add(o)
        while stack:
            v = stack.pop()
            if v in index:
                comp.add(index[v])
            for w in d.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        groups.append(comp)
    return groups


def reduced_state(c: Circuit) -> Diagram:
    """Fully reduced diagram of ``c`` applied to ``|0...0>``."""
    d = compose(basis_states([0] * c.qubit_count), circuit_to_diagram(c, "gadgets"))
    full_reduce_inplace(d)
    return d
