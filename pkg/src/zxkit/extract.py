"""Circuit extraction from reduced graph-like diagrams, with GF(2) elimination."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .circuit import Circuit, Gate, _phase_gate, peephole
from .graph import Diagram, EdgeType, VertexType
from .rules import RULES, Match
from .simplify import GraphLikeView, NotCliffordError, graph_like_violations, to_graph_like_inplace
from .tensor import QUBIT_CAP, WidthError, circuit_matrix, proportional

ET = EdgeType
VT = VertexType


class NotExtractableError(ValueError):
    """Raised when a diagram has no circuit-like cut structure to extract from."""


@dataclass(frozen=True)
class RowOp:
    """Row operation ``target <- target XOR source``."""

    target: int
    source: int

    def __post_init__(self) -> None:
        if self.target == self.source:
            raise ValueError("row operation needs distinct rows")


class BitMatrix:
    """Dense matrix over GF(2), stored row-major.

    Row operations are the only mutators.
    """

    def __init__(self, bits: Sequence[Sequence[int]] | np.ndarray) -> None:
        arr = np.array(bits, dtype=np.uint8)
        if arr.ndim != 2:
            arr = arr.reshape(len(bits), -1)
        self._bits = arr & 1

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(np.eye(n, dtype=np.uint8))

    @property
    def rows(self) -> int:
        return self._bits.shape[0]

    @property
    def cols(self) -> int:
        return self._bits.shape[1]

    def __getitem__(self, rc: tuple[int, int]) -> int:
        return int(self._bits[rc])

    def row(self, r: int) -> list[int]:
        return [int(x) for x in self._bits[r]]

    def to_list(self) -> list[list[int]]:
        return [self.row(r) for r in range(self.rows)]

    def copy(self) -> "BitMatrix":
        return BitMatrix(self._bits.copy())

    def apply(self, op: RowOp) -> None:
        self._bits[op.target] ^= self._bits[op.source]

    def is_identity(self) -> bool:
        return self.rows == self.cols and bool(np.array_equal(self._bits, np.eye(self.rows, dtype=np.uint8)))

    def is_invertible(self) -> bool:
        return self.rows == self.cols and gauss_elim(self)[1].is_identity()

    def apply_to(self, x: Sequence[int]) -> list[int]:
        """Matrix-vector product over GF(2)."""
        return [int(v) for v in (self._bits.astype(int) @ np.array(x, dtype=int)) % 2]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BitMatrix) and np.array_equal(self._bits, other._bits)

    def __repr__(self) -> str:
        return f"BitMatrix({self.to_list()})"


def gauss_elim(m: BitMatrix) -> tuple[list[RowOp], BitMatrix]:
    """Reduce ``m`` to reduced row echelon form using only row additions.

    The pivot for each column is the lowest-index row at or below the current
    one. A missing pivot is created by adding that row rather than swapping.

    Returns:
        The row operations in the order applied and the reduced matrix (the
        input is not modified). An invertible matrix reduces to the identity.
    """
    red = m.copy()
    ops: list[RowOp] = []
    r = 0
    for c in range(red.cols):
        if r >= red.rows:
            break
        pivot = next((p for p in range(r, red.rows) if red[p, c]), None)
        if pivot is None:
            continue
        if pivot != r:
            op = RowOp(r, pivot)
            red.apply(op)
            ops.append(op)
        for p in range(red.rows):
            if p != r and red[p, c]:
                op = RowOp(p, r)
                red.apply(op)
                ops.append(op)
        r += 1
    return ops, red


def cnot_circuit_of(ops: Sequence[RowOp], n: int) -> Circuit:
    """CNOT circuit for the inverse of an elimination.

    If ``gauss_elim(m)`` returned ``ops`` and the identity, the circuit maps
    basis state ``|x>`` to ``|m x>``. Each ``RowOp(t, s)`` becomes a CNOT with
    control ``s`` and target ``t``, in reverse order.

    Raises:
        ValueError: if a row index is out of range.
    """
    c = Circuit(n)
    for op in reversed(ops):
        if not (0 <= op.target < n and 0 <= op.source < n):
            raise ValueError(f"row operation {op} out of range for {n} rows")
        c.add("CX", op.source, op.target)
    return c


# -- extraction -------------------------------------------------------------------------------


def _split(d: Diagram, s: int, e: int, first: EdgeType = ET.HADAMARD) -> None:
    name = "insert_hadamard_identity" if first is ET.HADAMARD else "insert_identity"
    RULES[name].apply(d, Match(name, (s,), (e,)))


def _boundary_spider(d: Diagram, b: int) -> tuple[int, int]:
    (e,) = d.incident(b)
    return d.other_end(e, b), e


def _prepare(d: Diagram) -> None:
    """Give every boundary its own spider through a plain edge.

    No spider is left touching both an input and an output, or two boundaries.
    """
    owner: dict[int, int] = {}
    for b in d.outputs + d.inputs:
        s, e = _boundary_spider(d, b)
        if d.type(s) is VT.BOUNDARY:
            raise NotExtractableError("boundary wired directly to a boundary")
        if s in owner or d.edge_type(e) is ET.HADAMARD:
            if d.edge_type(e) is ET.SIMPLE:
                _split(d, s, e)
                s, e = _boundary_spider(d, b)
            _split(d, s, e)
            s, e = _boundary_spider(d, b)
        owner[s] = b


def extract_circuit(g: GraphLikeView | Diagram, clifford_only: bool = False) -> Circuit:
    """Read a circuit off a reduced graph-like diagram.

    Working back from the outputs, each round moves frontier phases into phase
    gates, frontier-frontier Hadamard edges into CZs, and eliminates the
    biadjacency between the frontier and its neighbours with CNOTs until some
    frontier spider has a single neighbour, which is then pulled through a
    Hadamard. A final permutation is written with CNOTs, and adjacent inverse
    gates are cancelled at the end. The diagram is copied.

    Args:
        g: a graph-like view or diagram, typically the output of ``full_reduce``.
            Diagrams that are not graph-like are converted first.
        clifford_only: reject non-Clifford phases.

    Returns:
        A circuit over H, S, Sdg, Z, CZ and CX (plus T-type phase gates for
        non-Clifford input) whose matrix is proportional to the diagram.

    Raises:
        NotCliffordError: if ``clifford_only`` and a phase is non-Clifford.
        NotExtractableError: if the diagram is not unitary-shaped or the
            elimination gets stuck.
    """
    d = (g.diagram if isinstance(g, GraphLikeView) else g).copy()
    n = len(d.outputs)
    if len(d.inputs) != n:
        raise NotExtractableError(f"{len(d.inputs)} inputs but {n} outputs")
    if graph_like_violations(d):
        to_graph_like_inplace(d)
    for v in d.vertices():
        if d.is_spider(v) and not d.incident(v):
            RULES["remove_scalar_spider"].apply(d, Match("remove_scalar_spider", (v,)))
        elif clifford_only and d.is_spider(v) and not d.phase(v).is_clifford():
            raise NotCliffordError(f"spider {v} has a non-Clifford phase")
    _prepare(d)
    view = GraphLikeView(d)
    inputs = set(d.inputs)
    input_qubit = {b: i for i, b in enumerate(d.inputs)}
    rev: list[Gate] = []  # gates in reverse circuit order

    def frontier() -> list[int]:
        return [_boundary_spider(d, o)[0] for o in d.outputs]

    def input_of(s: int) -> Optional[int]:
        for e in d.incident(s):
            w = d.other_end(e, s)
            if w in inputs:
                return w
        return None

    budget = 4 * (d.num_vertices() + 10) ** 2
    while True:
        budget -= 1
        if budget < 0:
            raise NotExtractableError("extraction did not terminate")  # pragma: no cover
        front = frontier()
        pos = {s: q for q, s in enumerate(front)}
        for q, s in enumerate(front):
            p = d.phase(s)
            if not p.is_zero():
                rev.extend(reversed(_phase_gate(q, p)))
                d.set_phase(s, 0)
        for q, s in enumerate(front):
            for w in sorted(view.neighbors(s)):
                if w in pos and pos[w] > q:
                    rev.append(Gate("CZ", (q, pos[w])))
                    view.toggle(s, w)
        # a frontier spider fed by an input but with other neighbours is unfused
        for s in front:
            b = input_of(s)
            if b is not None and view.neighbors(s):
                (e,) = d.edges_between(s, b)
                _split(d, s, e)
                w, e2 = _boundary_spider(d, b)
                _split(d, w, e2)
        view._sync()
        # frontier spiders already sitting on an input are finished
        live = [q for q, s in enumerate(front) if input_of(s) is None]
        nbrs = sorted(set().union(*(view.neighbors(front[q]) for q in live)))
        if not live:
            break
        if not nbrs:
            raise NotExtractableError("frontier spider is disconnected from the inputs")
        col = {w: j for j, w in enumerate(nbrs)}
        m = np.zeros((len(live), len(nbrs)), dtype=np.uint8)
        for r, q in enumerate(live):
            for w in view.neighbors(front[q]):
                m[r, col[w]] = 1
        ops, red = gauss_elim(BitMatrix(m))
        for op in ops:
            # the neighbourhood of target absorbs that of source
            qt, qs = live[op.target], live[op.source]
            for w in view.neighbors(front[qs]):
                view.toggle(front[qt], w)
            rev.append(Gate("CX", (qt, qs)))
        progress = False
        for r, q in enumerate(live):
            row = red.row(r)
            if sum(row) != 1:
                continue
            w = nbrs[row.index(1)]
            s = front[q]
            o = d.outputs[q]
            rev.append(Gate("H", (q,)))
            d.remove_vertex(s)
            d.add_edge(w, o, ET.SIMPLE)
            view._sync()
            progress = True
        if not progress:
            raise NotExtractableError("no frontier spider with a single neighbour")
    # remaining diagram: each output spider is an identity onto some input
    perm = []
    for q, s in enumerate(frontier()):
        b = input_of(s)
        if b is None or d.degree(s) != 2 or not d.phase(s).is_zero():
            raise NotExtractableError("spiders left over after extraction")
        perm.append(input_qubit[b])
    if d.num_vertices() != 3 * n:
        raise NotExtractableError("spiders left over after extraction")
    circ = Circuit(n)
    circ.extend(_permutation_gates(perm))
    circ.extend(reversed(rev))
    return peephole(circ)


def _permutation_gates(perm: list[int]) -> list[Gate]:
    """CNOT-only network sending input wire ``perm[q]`` to output wire ``q``."""
    cur = list(range(len(perm)))  # cur[q]: input wire currently on q
    gates: list[Gate] = []
    for q in range(len(perm)):
        if cur[q] == perm[q]:
            continue
        r = cur.index(perm[q])
        gates += [Gate("CX", (q, r)), Gate("CX", (r, q)), Gate("CX", (q, r))]
        cur[q], cur[r] = cur[r], cur[q]
    return gates


@dataclass
class ExtractionReport:
    """Outcome of comparing a circuit against its extracted form."""

    ok: bool
    factor: Optional[complex]
    max_deviation: float

    def to_dict(self) -> dict:
        f = self.factor
        return {
            "ok": self.ok,
            "factor": None if f is None else [f.real, f.imag],
            "max_deviation": self.max_deviation,
        }


def verify_extraction(original: Circuit, extracted: Circuit, tol: float = 1e-9) -> ExtractionReport:
    """Check that two circuits agree up to a unit-modulus global phase.

    Raises:
        ValueError: on a qubit count mismatch.
        WidthError: beyond the dense-evaluation qubit cap.
    """
    if original.qubit_count != extracted.qubit_count:
        raise ValueError("qubit counts differ")
    if original.qubit_count > QUBIT_CAP:
        raise WidthError(f"{original.qubit_count} qubits exceeds cap {QUBIT_CAP}")
    a, b = circuit_matrix(original), circuit_matrix(extracted)
    lam = proportional(a, b, tol)
    if lam is None or abs(abs(lam) - 1) > tol:
        k = int(np.argmax(np.abs(b)))
        guess = a.flat[k] / b.flat[k] if b.flat[k] != 0 else 0
        return ExtractionReport(False, lam, float(np.max(np.abs(a - guess * b))))
    return ExtractionReport(True, lam, float(np.max(np.abs(a - lam * b))))
