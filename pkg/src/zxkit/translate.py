"""Translation of circuits into diagrams with exact scalars."""

from __future__ import annotations

import cmath
import math
from typing import Sequence

from .circuit import Circuit, Gate
from .graph import Diagram, EdgeType, VertexType
from .phase import Phase

SQRT2 = math.sqrt(2)
TOFFOLI_MODES = ("hbox", "gadgets")


class _Builder:
    """Grows a diagram wire by wire, tracking pending Hadamards on each qubit."""

    def __init__(self, n: int, zh: bool) -> None:
        self.d = Diagram(zh=zh)
        self.d.inputs = [self.d.add_vertex(VertexType.BOUNDARY) for _ in range(n)]
        self.front = list(self.d.inputs)
        self.pending = [EdgeType.SIMPLE] * n

    def place(self, q: int, ty: VertexType, phase: Phase | int = 0) -> int:
        v = self.d.add_vertex(ty, phase=phase)
        self.d.add_edge(self.front[q], v, self.pending[q])
        self.front[q] = v
        self.pending[q] = EdgeType.SIMPLE
        return v

    def hadamard(self, q: int) -> None:
        self.pending[q] = self.pending[q].toggle()

    def gadget(self, qubits: Sequence[int], phase: Phase) -> None:
        """Phase gadget ``e^{i phase * parity}`` on ``qubits``."""
        if len(qubits) == 1:
            self.place(qubits[0], VertexType.Z, phase)
            return
        hub = self.d.add_vertex(VertexType.X)
        leaf = self.d.add_vertex(VertexType.Z, phase=phase)
        self.d.add_edge(hub, leaf)
        for q in qubits:
            self.d.add_edge(self.place(q, VertexType.Z), hub)
        self.d.scale(SQRT2 ** (len(qubits) - 1))

    def finish(self) -> Diagram:
        outs = []
        for q, f in enumerate(self.front):
            o = self.d.add_vertex(VertexType.BOUNDARY)
            self.d.add_edge(f, o, self.pending[q])
            outs.append(o)
        self.d.outputs = outs
        return self.d


def ccz_gadget_terms(a: int, b: int, c: int) -> list[tuple[tuple[int, ...], Phase]]:
    """Parity terms whose phases sum to ``pi*abc``: three T phases and four gadgets."""
    q, mq = Phase(1, 4), Phase(-1, 4)
    return [((a,), q), ((b,), q), ((c,), q), ((a, b), mq), ((a, c), mq), ((b, c), mq), ((a, b, c), q)]


def circuit_to_diagram(c: Circuit, toffoli_mode: str = "hbox") -> Diagram:
    """Translate a circuit gate by gate.

    The global scalar is fixed so that the diagram evaluates exactly to the
    circuit unitary.

    Args:
        c: the circuit.
        toffoli_mode: ``hbox`` renders CCX/CCZ with an H-box; ``gadgets``
            uses seven pi/4 phase terms and stays inside plain ZX.
    """
    if toffoli_mode not in TOFFOLI_MODES:
        raise ValueError(f"toffoli_mode must be one of {TOFFOLI_MODES}")
    needs_h = toffoli_mode == "hbox" and any(g.name in ("CCX", "CCZ") for g in c.gates)
    b = _Builder(c.qubit_count, zh=needs_h)
    for g in c.gates:
        _add_gate(b, g, toffoli_mode)
    return b.finish()


def _add_gate(b: _Builder, g: Gate, toffoli_mode: str) -> None:
    n, qs = g.name, g.qubits
    zp = g.z_phase()
    if n == "H":
        b.hadamard(qs[0])
    elif zp is not None:
        b.place(qs[0], VertexType.Z, zp)
        if n == "RZ":
            b.d.scale(cmath.exp(-0.5j * zp.radians))
    elif n == "X":
        b.place(qs[0], VertexType.X, Phase(1))
    elif n == "RX":
        b.place(qs[0], VertexType.X, g.phase)  # type: ignore[arg-type]
        b.d.scale(cmath.exp(-0.5j * g.phase.radians))  # type: ignore[union-attr]
    elif n == "Y":
        b.place(qs[0], VertexType.Z, Phase(1))
        b.place(qs[0], VertexType.X, Phase(1))
        b.d.scale(1j)
    elif n == "CX":
        u = b.place(qs[0], VertexType.Z)
        v = b.place(qs[1], VertexType.X)
        b.d.add_edge(u, v)
        b.d.scale(SQRT2)
    elif n == "CZ":
        u = b.place(qs[0], VertexType.Z)
        v = b.place(qs[1], VertexType.Z)
        b.d.add_edge(u, v, EdgeType.HADAMARD)
        b.d.scale(SQRT2)
    elif n == "SWAP":
        i, j = qs
        b.front[i], b.front[j] = b.front[j], b.front[i]
        b.pending[i], b.pending[j] = b.pending[j], b.pending[i]
    elif n == "PhaseGadget":
        b.gadget(qs, g.phase)  # type: ignore[arg-type]
    elif n in ("CCZ", "CCX"):
        if toffoli_mode == "hbox":
            h = b.d.add_vertex(VertexType.H_BOX, label=-1)
            for q in qs[:2]:
                b.d.add_edge(b.place(q, VertexType.Z), h)
            if n == "CCZ":
                b.d.add_edge(b.place(qs[2], VertexType.Z), h)
            else:
                b.d.add_edge(b.place(qs[2], VertexType.X), h, EdgeType.HADAMARD)
        else:
            if n == "CCX":
                b.hadamard(qs[2])
            for sub, ph in ccz_gadget_terms(*qs):
                b.gadget(sub, ph)
            if n == "CCX":
                b.hadamard(qs[2])
    else:  # pragma: no cover - Gate validates names
        raise ValueError(f"unsupported gate {n}")
