"""Circuit equivalence by reducing ``A . B^dagger`` to bare wires."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .circuit import Circuit
from .graph import Diagram, EdgeType, VertexType, adjoint, compose
from .rules import Match
from .simplify import full_reduce_inplace, remove_scalar_spider
from .tensor import DEFAULT_TOL, QUBIT_CAP, circuit_matrix, proportional
from .translate import circuit_to_diagram

PROVED = "equal (proved)"
NUMERIC = "equal (numeric)"
DIFFERENT = "different"
INCONCLUSIVE = "inconclusive"


@dataclass
class VerifyResult:
    """Outcome of an equivalence check.

    ``factor`` is the global phase relating the two circuits when known.
    """

    status: str
    factor: Optional[complex] = None
    detail: str = ""

    @property
    def equal(self) -> bool:
        return self.status in (PROVED, NUMERIC)

    def to_dict(self) -> dict:
        f = self.factor
        return {"status": self.status, "factor": None if f is None else [f.real, f.imag], "detail": self.detail}


def is_identity_wires(d: Diagram, tol: float = DEFAULT_TOL) -> Optional[complex]:
    """Scalar of ``d`` if it is bare identity wires up to a unit-modulus scalar.

    Wire ``i`` may pass through a chain of phase-free arity-2 Z-spiders as long
    as its edge types compose to a plain wire ending at output ``i``.
    Disconnected spiders are folded into the scalar first (``d`` is modified).
    The modulus of the scalar must be 1 within ``1000 * tol``, since it is
    accumulated over many floating-point rule corrections.
    """
    if len(d.inputs) != len(d.outputs):
        return None
    for v in d.vertices():
        if d.is_spider(v) and not d.incident(v):
            remove_scalar_spider.apply(d, Match("remove_scalar_spider", (v,)))
    used = set(d.inputs) | set(d.outputs)
    for i, o in zip(d.inputs, d.outputs):
        (e,) = d.incident(i)
        et = d.edge_type(e)
        w = d.other_end(e, i)
        while w != o:
            if d.type(w) is not VertexType.Z or not d.phase(w).is_zero() or d.degree(w) != 2 or w in used:
                return None
            used.add(w)
            (e,) = [x for x in d.incident(w) if x != e]
            et = et.compose(d.edge_type(e))
            w = d.other_end(e, w)
        if et is not EdgeType.SIMPLE:
            return None
    if set(d.vertices()) != used:
        return None
    s = d.scalar.value
    if d.scalar.is_zero or abs(abs(s) - 1) > 1e3 * tol:
        return None
    return complex(s)


def verify_circuits(a: Circuit, b: Circuit, tol: float = DEFAULT_TOL) -> VerifyResult:
    """Decide whether two circuits are equal up to a global phase.

    The diagram of ``a`` after ``b^dagger`` is fully reduced. Bare wires prove
    equality. Otherwise circuits of at most ``QUBIT_CAP`` qubits are compared
    densely, and wider ones are reported inconclusive.

    Raises:
        ValueError: if the qubit counts differ.
    """
    if a.qubit_count != b.qubit_count:
        raise ValueError(f"qubit counts differ: {a.qubit_count} vs {b.qubit_count}")
    d = compose(adjoint(circuit_to_diagram(b, "gadgets")), circuit_to_diagram(a, "gadgets"))
    full_reduce_inplace(d)
    lam = is_identity_wires(d, tol)
    if lam is not None:
        return VerifyResult(PROVED, lam)
    if a.qubit_count > QUBIT_CAP:
        return VerifyResult(INCONCLUSIVE, None, f"{a.qubit_count} qubits exceeds the dense cap {QUBIT_CAP}")
    ma, mb = circuit_matrix(a), circuit_matrix(b)
    lam = proportional(ma, mb, tol)
    if lam is not None and abs(abs(lam) - 1) <= 1e3 * tol:
        return VerifyResult(NUMERIC, lam)
    dev = float(np.max(np.abs(ma - mb)))
    return VerifyResult(DIFFERENT, lam, f"max deviation {dev:.3g}")
