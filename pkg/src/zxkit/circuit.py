"""Quantum circuits over a small gate set, with textbook matrices and statistics."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .phase import Phase

SINGLE = ("H", "X", "Y", "Z", "S", "Sdg", "T", "Tdg", "RZ", "RX")
TWO = ("CX", "CZ", "SWAP")
THREE = ("CCX", "CCZ")
PARAMETRIC = ("RZ", "RX", "PhaseGadget")
GATE_NAMES = SINGLE + TWO + THREE + ("PhaseGadget",)

_FIXED_PHASE = {"Z": Phase(1), "S": Phase(1, 2), "Sdg": Phase(3, 2), "T": Phase(1, 4), "Tdg": Phase(7, 4)}


class CircuitError(ValueError):
    """Raised for invalid gates or circuits."""


@dataclass(frozen=True)
class Gate:
    """One gate application.

    ``phase`` is only used by ``RZ``, ``RX`` and ``PhaseGadget``. The qubit
    list of a phase gadget is kept sorted.
    """

    name: str
    qubits: tuple[int, ...]
    phase: Optional[Phase] = None

    def __post_init__(self) -> None:
        if self.name not in GATE_NAMES:
            raise CircuitError(f"unknown gate {self.name!r}")
        arity = {**{g: 1 for g in SINGLE}, **{g: 2 for g in TWO}, **{g: 3 for g in THREE}}.get(self.name)
        if arity is not None and len(self.qubits) != arity:
            raise CircuitError(f"{self.name} acts on {arity} qubit(s), got {len(self.qubits)}")
        if len(set(self.qubits)) != len(self.qubits):
            raise CircuitError(f"{self.name} qubits must be distinct: {self.qubits}")
        if self.name == "PhaseGadget":
            if not self.qubits:
                raise CircuitError("phase gadget needs at least one qubit")
            object.__setattr__(self, "qubits", tuple(sorted(self.qubits)))
        if self.name in PARAMETRIC:
            if self.phase is None:
                raise CircuitError(f"{self.name} needs a phase")
            object.__setattr__(self, "phase", Phase.coerce(self.phase))
        elif self.phase is not None:
            raise CircuitError(f"{self.name} takes no phase")

    def z_phase(self) -> Optional[Phase]:
        """Phase of a diagonal single-qubit gate, if this is one."""
        if self.name in _FIXED_PHASE:
            return _FIXED_PHASE[self.name]
        if self.name == "RZ":
            return self.phase
        return None

    def matrix(self) -> np.ndarray:
        """Exact textbook unitary of the gate (``RZ(t) = diag(e^{-it/2}, e^{it/2})``)."""
        return _matrix(self)

    def __str__(self) -> str:
        args = ",".join(str(q) for q in self.qubits)
        if self.phase is not None:
            return f"{self.name}({self.phase}) {args}"
        return f"{self.name} {args}"


def _matrix(g: Gate) -> np.ndarray:
    n = g.name
    s2 = 1 / math.sqrt(2)
    if n == "H":
        return np.array([[s2, s2], [s2, -s2]], dtype=complex)
    if n == "X":
        return np.array([[0, 1], [1, 0]], dtype=complex)
    if n == "Y":
        return np.array([[0, -1j], [1j, 0]], dtype=complex)
    zp = g.z_phase()
    if zp is not None:
        m = np.diag([1, zp.exp()]).astype(complex)
        if n == "RZ":
            m *= cmath.exp(-0.5j * zp.radians)
        return m
    if n == "RX":
        t = g.phase.radians  # type: ignore[union-attr]
        c, s = math.cos(t / 2), math.sin(t / 2)
        return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)
    if n in ("CX", "CZ", "SWAP", "CCX", "CCZ"):
        k = len(g.qubits)
        m = np.eye(2**k, dtype=complex)
        if n == "CX":
            m[[2, 3]] = m[[3, 2]]
        elif n == "CCX":
            m[[6, 7]] = m[[7, 6]]
        elif n == "SWAP":
            m[[1, 2]] = m[[2, 1]]
        else:
            m[-1, -1] = -1
        return m
    # phase gadget: e^{i alpha} on odd parity basis states
    k = len(g.qubits)
    e = g.phase.exp()  # type: ignore[union-attr]
    diag = [e if bin(i).count("1") % 2 else 1 for i in range(2**k)]
    return np.diag(diag).astype(complex)


@dataclass
class Circuit:
    """An ordered list of gates on ``qubit_count`` wires."""

    qubit_count: int
    gates: list[Gate] = field(default_factory=list)

    def __post_init__(self) -> None:
        for g in self.gates:
            self._check(g)

    def _check(self, g: Gate) -> None:
        for q in g.qubits:
            if not 0 <= q < self.qubit_count:
                raise CircuitError(f"qubit index {q} out of range for {self.qubit_count} qubits")

    def add(self, name: str, *qubits: int, phase: Optional[Phase | int | Fraction | float] = None) -> "Circuit":
        """Append a gate and return ``self`` for chaining."""
        g = Gate(name, tuple(qubits), None if phase is None else Phase.coerce(phase))
        self._check(g)
        self.gates.append(g)
        return self

    def append(self, g: Gate) -> None:
        self._check(g)
        self.gates.append(g)

    def extend(self, gates: Iterable[Gate]) -> None:
        for g in gates:
            self.append(g)

    def copy(self) -> "Circuit":
        return Circuit(self.qubit_count, list(self.gates))

    def adjoint(self) -> "Circuit":
        """Inverse circuit.

        Exact except for ``RZ`` and ``RX``, whose inverse may differ by a
        global sign because phases are only kept modulo 2pi.
        """
        inv = {"S": "Sdg", "Sdg": "S", "T": "Tdg", "Tdg": "T"}
        out = Circuit(self.qubit_count)
        for g in reversed(self.gates):
            if g.name in inv:
                out.append(Gate(inv[g.name], g.qubits))
            elif g.name in PARAMETRIC:
                out.append(Gate(g.name, g.qubits, -g.phase))  # type: ignore[operator]
            else:
                out.append(g)
        return out

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def is_clifford(self) -> bool:
        for g in self.gates:
            if g.name in ("T", "Tdg", "CCX", "CCZ"):
                return False
            if g.phase is not None and not g.phase.is_clifford():
                return False
        return True


def gate_t_count(g: Gate) -> int:
    if g.name in ("T", "Tdg"):
        return 1
    if g.name in ("CCX", "CCZ"):
        return 7
    if g.name in PARAMETRIC and g.phase is not None and g.phase.is_t_like():
        return 1
    return 0


def stats(c: Circuit) -> dict[str, int]:
    """Gate statistics.

    Returns:
        ``t_count`` (T/Tdg, odd multiples of pi/4 in rotations and phase
        gadgets, 7 per CCX/CCZ), ``two_qubit_count`` (gates touching two or
        more qubits), ``total`` and ``depth``.
    """
    level = [0] * c.qubit_count
    t = two = 0
    for g in c.gates:
        t += gate_t_count(g)
        if len(g.qubits) >= 2:
            two += 1
        d = max(level[q] for q in g.qubits) + 1
        for q in g.qubits:
            level[q] = d
    return {"t_count": t, "two_qubit_count": two, "total": len(c.gates), "depth": max(level, default=0)}


def random_clifford_circuit(
    qubits: int, gates: int, rng: np.random.Generator, two_qubit_fraction: float = 0.3
) -> Circuit:
    """Uniformly mixed random circuit over H, S, Sdg, Z, X, CX and CZ."""
    c = Circuit(qubits)
    singles = ("H", "S", "Sdg", "Z", "X")
    for _ in range(gates):
        if qubits >= 2 and rng.random() < two_qubit_fraction:
            a, b = (int(x) for x in rng.choice(qubits, size=2, replace=False))
            c.add("CX" if rng.random() < 0.5 else "CZ", a, b)
        else:
            c.add(singles[int(rng.integers(len(singles)))], int(rng.integers(qubits)))
    return c


def ladder_phase_gadget(qubits: Sequence[int], phase: Phase) -> list[Gate]:
    """Phase gadget as a CNOT ladder around one ``RZ``-type phase gate."""
    qs = sorted(qubits)
    ladder = [Gate("CX", (qs[i], qs[i + 1])) for i in range(len(qs) - 1)]
    mid = _phase_gate(qs[-1], phase)
    return ladder + mid + list(reversed(ladder))


def _phase_gate(q: int, phase: Phase) -> list[Gate]:
    """Exact diagonal ``diag(1, e^{i phase})`` as named gates where possible."""
    names = {Phase(1, 4): ["T"], Phase(1, 2): ["S"], Phase(3, 4): ["S", "T"], Phase(1): ["Z"],
             Phase(5, 4): ["Z", "T"], Phase(3, 2): ["Sdg"], Phase(7, 4): ["Tdg"], Phase(0): []}
    if phase in names:
        return [Gate(n, (q,)) for n in names[phase]]
    # RZ carries a global phase e^{-i t/2}; a Z-gate pair cancels it only for exact phases,
    # so callers needing exactness should stay on the named gates above.
    return [Gate("RZ", (q,), phase)]


_SELF_INVERSE = ("H", "X", "Y", "Z", "CX", "CZ", "SWAP", "CCX", "CCZ")
_UNORDERED = ("CZ", "SWAP", "CCZ")


def _same_action(a: Gate, b: Gate) -> bool:
    if a.name != b.name:
        return False
    if a.name in _UNORDERED:
        return set(a.qubits) == set(b.qubits)
    return a.qubits == b.qubits


def peephole(c: Circuit) -> Circuit:
    """Cancel adjacent inverse gates and merge adjacent single-qubit Z-phases.

    Two gates are adjacent when nothing acts on any of their qubits in between.
    The result equals ``c`` up to a global phase.
    """
    out: list[Optional[Gate]] = []
    stacks: list[list[int]] = [[] for _ in range(c.qubit_count)]

    def top(g: Gate) -> Optional[int]:
        tops = {stacks[q][-1] if stacks[q] else -1 for q in g.qubits}
        if len(tops) != 1:
            return None
        (i,) = tops
        if i < 0 or set(out[i].qubits) != set(g.qubits):  # type: ignore[union-attr]
            return None
        return i

    def drop(i: int) -> None:
        for q in out[i].qubits:  # type: ignore[union-attr]
            stacks[q].pop()
        out[i] = None

    def push(g: Gate) -> None:
        i = top(g)
        if i is not None:
            prev = out[i]
            assert prev is not None
            if g.name in _SELF_INVERSE and _same_action(prev, g):
                drop(i)
                return
            pz, gz = prev.z_phase(), g.z_phase()
            if pz is not None and gz is not None:
                drop(i)
                merged = _phase_gate(g.qubits[0], pz + gz)
                if len(merged) == 1:
                    push(merged[0])
                else:
                    for h in merged:
                        emit(h)
                return
            if prev.name == g.name == "PhaseGadget":
                drop(i)
                total = prev.phase + g.phase  # type: ignore[operator]
                if not total.is_zero():
                    push(Gate("PhaseGadget", g.qubits, total))
                return
        emit(g)

    def emit(g: Gate) -> None:
        out.append(g)
        for q in g.qubits:
            stacks[q].append(len(out) - 1)

    for g in c.gates:
        push(g)
    return Circuit(c.qubit_count, [g for g in out if g is not None])
