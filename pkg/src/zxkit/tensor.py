"""Dense tensor semantics: the reference oracle for every rewrite.

Matrices follow the big-endian convention: wire 0 is the most significant bit
of the row (outputs) and column (inputs) index.
"""

from __future__ import annotations

import math
from typing import TYPE_CHECKING, Optional, Sequence

import numpy as np

from .graph import Diagram, EdgeType, VertexType

if TYPE_CHECKING:
    from .circuit import Circuit

WIDTH_CAP = 20
QUBIT_CAP = 10
DEFAULT_TOL = 1e-9

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)


class WidthError(ValueError):
    """Raised when a dense evaluation would exceed the supported width."""


def z_tensor(arity: int, phase: complex) -> np.ndarray:
    """Z-spider tensor with ``phase`` given as ``e^{i alpha}``."""
    if arity == 0:
        return np.array(1 + phase, dtype=complex)
    t = np.zeros((2,) * arity, dtype=complex)
    t[(0,) * arity] = 1
    t[(1,) * arity] += phase
    return t


def _parity(arity: int) -> np.ndarray:
    par = np.zeros(1, dtype=np.int8)
    for _ in range(arity):
        par = np.concatenate([par, 1 - par])
    return par.reshape((2,) * arity)


def x_tensor(arity: int, phase: complex) -> np.ndarray:
    """X-spider tensor: ``|+..+><+..+| + e^{i alpha} |-..-><-..-|``."""
    if arity == 0:
        return np.array(1 + phase, dtype=complex)
    signs = 1 - 2 * _parity(arity).astype(float)
    return (1 + phase * signs).astype(complex) * (1 / math.sqrt(2)) ** arity


def h_tensor(arity: int, label: complex) -> np.ndarray:
    """H-box tensor: all ones except ``label`` at the all-ones index."""
    t = np.ones((2,) * arity, dtype=complex)
    t[(1,) * arity] = label
    return t


def _trace_repeated(arr: np.ndarray, labels: list[int]) -> tuple[np.ndarray, list[int]]:
    """Sum over every label that occurs twice on one tensor."""
    while len(set(labels)) != len(labels):
        seen: dict[int, int] = {}
        for pos, lab in enumerate(labels):
            if lab in seen:
                arr = np.trace(arr, axis1=seen[lab], axis2=pos)
                labels = [l for i, l in enumerate(labels) if i not in (seen[lab], pos)]
                break
            seen[lab] = pos
    return arr, labels


def evaluate(d: Diagram, order: Optional[Sequence[int]] = None) -> np.ndarray:
    """Contract a diagram into its ``2^outputs x 2^inputs`` matrix.

    Args:
        d: the diagram.
        order: optional explicit contraction order given as vertex ids. By
            default the cheapest pairwise contraction is chosen greedily.

    Raises:
        WidthError: if the diagram has more than ``WIDTH_CAP`` boundary wires.
    """
    n_in, n_out = len(d.inputs), len(d.outputs)
    if n_in + n_out > WIDTH_CAP:
        raise WidthError(f"diagram has {n_in + n_out} open wires, cap is {WIDTH_CAP}")
    if d.scalar.is_zero:
        return np.zeros((2**n_out, 2**n_in), dtype=complex)

    fresh = iter(range(10**9))
    # label of edge end at each vertex: end_label[(eid, side)]
    tensors: list[tuple[np.ndarray, list[int]]] = []
    owner: list[Optional[int]] = []
    end_labels: dict[int, tuple[int, int]] = {}
    for eid, u, v, et in d.edges():
        a = next(fresh)
        if et is EdgeType.SIMPLE:
            end_labels[eid] = (a, a)
        else:
            b = next(fresh)
            end_labels[eid] = (a, b)
            tensors.append((HADAMARD, [a, b]))
            owner.append(None)

    open_label: dict[int, int] = {}
    for v in d.vertices():
        legs: list[int] = []
        for eid in d.incident(v):
            x, y, _ = d.edge(eid)
            la, lb = end_labels[eid]
            if x == y:
                legs.extend([la, lb])
            else:
                legs.append(la if x == v else lb)
        ty = d.type(v)
        if ty is VertexType.BOUNDARY:
            o = next(fresh)
            open_label[v] = o
            tensors.append((np.eye(2, dtype=complex), [o] + legs))
        elif ty is VertexType.Z:
            tensors.append((z_tensor(len(legs), d.phase(v).exp()), legs))
        elif ty is VertexType.X:
            tensors.append((x_tensor(len(legs), d.phase(v).exp()), legs))
        else:
            tensors.append((h_tensor(len(legs), d.label(v)), legs))
        owner.append(v)

    tensors = [_trace_repeated(arr, labs) for arr, labs in tensors]
    result, labels = _contract(tensors, owner, order)
    want = [open_label[v] for v in d.outputs] + [open_label[v] for v in d.inputs]
    perm = [labels.index(l) for l in want]
    result = np.transpose(result, perm) if perm else result
    return result.reshape(2**n_out, 2**n_in) * d.scalar.value


def _contract(
    tensors: list[tuple[np.ndarray, list[int]]],
    owner: list[Optional[int]],
    order: Optional[Sequence[int]],
) -> tuple[np.ndarray, list[int]]:
    alive = dict(enumerate(tensors))
    where: dict[int, set[int]] = {}
    for idx, (_, labs) in alive.items():
        for l in labs:
            where.setdefault(l, set()).add(idx)
    nxt = len(tensors)

    def merge(i: int, j: int) -> int:
        nonlocal nxt
        a, la = alive.pop(i)
        b, lb = alive.pop(j)
        shared = [l for l in la if l in lb]
        arr = np.tensordot(a, b, axes=([la.index(l) for l in shared], [lb.index(l) for l in shared]))
        labs = [l for l in la if l not in shared] + [l for l in lb if l not in shared]
        k = nxt
        nxt += 1
        alive[k] = (arr, labs)
        for l in shared:
            del where[l]
        for l in labs:
            s = where[l]
            s.discard(i)
            s.discard(j)
            s.add(k)
        return k

    def rank_after(i: int, j: int) -> int:
        la, lb = alive[i][1], alive[j][1]
        return len(set(la).symmetric_difference(lb))

    if order is not None:
        pos = {v: i for i, v in enumerate(owner) if v is not None}
        acc: Optional[int] = None
        for v in order:
            if v not in pos:
                continue
            acc = pos[v] if acc is None else merge(acc, pos[v])
    # Absorb matrices (Hadamards, boundary identities) first: this never grows a tensor.
    changed = True
    while changed:
        changed = False
        for i in sorted(alive):
            if i not in alive or len(alive[i][1]) > 2:
                continue
            partners = sorted({j for l in alive[i][1] for j in where[l] if j != i})
            if partners:
                merge(i, partners[0])
                changed = True
    while True:
        best: Optional[tuple[int, int, int]] = None
        for l, s in where.items():
            if len(s) == 2:
                i, j = sorted(s)
                r = rank_after(i, j)
                if best is None or (r, i, j) < best:
                    best = (r, i, j)
        if best is None:
            break
        merge(best[1], best[2])
    arrs = [alive[i] for i in sorted(alive)]
    result = np.array(1, dtype=complex)
    labels: list[int] = []
    for arr, labs in arrs:
        result = np.tensordot(result, arr, axes=0)
        labels += labs
    return result, labels


def proportional(a: np.ndarray, b: np.ndarray, tol: float = DEFAULT_TOL) -> Optional[complex]:
    """Find ``lam`` with ``a == lam * b`` entrywise within ``tol``.

    Entries are rescaled by the largest magnitude when it exceeds 1e3.

    Returns:
        The factor, ``0j`` as a sentinel when both tensors vanish, or ``None``
        when no non-zero factor exists.

    Raises:
        ValueError: on a shape mismatch.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    scale = max(float(np.max(np.abs(a), initial=0.0)), float(np.max(np.abs(b), initial=0.0)))
    scale = scale if scale > 1e3 else 1.0
    a_zero = np.max(np.abs(a), initial=0.0) <= tol * scale
    b_zero = np.max(np.abs(b), initial=0.0) <= tol * scale
    if a_zero and b_zero:
        return 0j
    if a_zero or b_zero:
        return None
    k = int(np.argmax(np.abs(b)))
    lam = a.flat[k] / b.flat[k]
    if np.max(np.abs(a - lam * b)) <= tol * scale:
        return complex(lam)
    return None


def equal(a: np.ndarray, b: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """Entrywise equality within ``tol`` (same rescaling rule as :func:`proportional`)."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        return False
    scale = max(float(np.max(np.abs(a), initial=0.0)), float(np.max(np.abs(b), initial=0.0)))
    scale = scale if scale > 1e3 else 1.0
    return bool(np.max(np.abs(a - b), initial=0.0) <= tol * scale)


def apply_gate(state: np.ndarray, n: int, matrix: np.ndarray, qubits: Sequence[int]) -> np.ndarray:
    """Apply a ``k``-qubit matrix to the leading ``n`` axes of a state tensor."""
    k = len(qubits)
    u = matrix.reshape((2,) * (2 * k))
    out = np.tensordot(u, state, axes=(list(range(k, 2 * k)), list(qubits)))
    return np.moveaxis(out, list(range(k)), list(qubits))


def circuit_matrix(c: "Circuit") -> np.ndarray:
    """Unitary of a circuit as the ordered product of its gate matrices."""
    n = c.qubit_count
    if n > QUBIT_CAP:
        raise WidthError(f"circuit has {n} qubits, cap is {QUBIT_CAP}")
    dim = 2**n
    state = np.eye(dim, dtype=complex).reshape((2,) * n + (dim,))
    for g in c.gates:
        state = apply_gate(state, n, g.matrix(), g.qubits)
    return state.reshape(dim, dim)


def circuit_state(c: "Circuit", bits: Sequence[int] | None = None) -> np.ndarray:
    """Apply a circuit to a computational basis state (all zeros by default)."""
    n = c.qubit_count
    if n > 24:
        raise WidthError(f"circuit has {n} qubits; state vector too large")
    bits = [0] * n if bits is None else list(bits)
    state = np.zeros((2,) * n, dtype=complex)
    state[tuple(bits)] = 1
    for g in c.gates:
        state = apply_gate(state, n, g.matrix(), g.qubits)
    return state.reshape(-1)
