"""Rewriting ZX- and ZH-diagrams, simplifying Clifford circuits and extracting them back."""

from .circuit import Circuit, Gate, stats
from .extract import BitMatrix, NotExtractableError, RowOp, cnot_circuit_of, extract_circuit, gauss_elim, verify_extraction
from .graph import (
    Diagram,
    DiagramError,
    EdgeType,
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
from .phase import Phase
from .qasm import QasmError, emit_qasm, parse_qasm
from .render import diagram_to_dot, diagram_to_tikz
from .rules import RULES, Match, RewriteStep, Rule, replay, simplify, trace_from_jsonl, trace_to_jsonl
from .simplify import (
    GraphLikeView,
    boundary_pivot,
    clifford_amplitude,
    full_reduce,
    gslc_form,
    lc_simp,
    pivot_simp,
    to_graph_like,
)
from .tensor import circuit_matrix, evaluate, proportional
from .translate import circuit_to_diagram
from .verify import VerifyResult, verify_circuits
from .zh import (
    FourierTable,
    add_control,
    and_to_xor,
    build_gidney_pair,
    build_jones_toffoli,
    ccz_decompose,
    toffoli_diagram,
    xor_to_and,
)

__version__ = "0.1.0"
