from hypothesis import given, settings
from hypothesis import strategies as st

import pytest

from zxkit.circuit import Circuit
from zxkit.phase import Phase
from zxkit.qasm import QasmError, emit_qasm, format_angle, parse_angle, parse_qasm
from zxkit.tensor import circuit_matrix, proportional

HEAD = 'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[3];\n'


def test_parse_basic_program():
    c = parse_qasm(HEAD + "h q[0]; cx q[0],q[1];\n")
    assert [(g.name, g.qubits) for g in c] == [("H", (0,)), ("CX", (0, 1))]
    c = parse_qasm(HEAD + "rz(pi/4) q[0];\nccx q[0],q[1],q[2];\n")
    assert c.gates[0].phase == Phase(1, 4) and c.gates[1].name == "CCX"


def test_angles():
    assert parse_angle("pi/4") == Phase(1, 4)
    assert parse_angle("-pi/2") == Phase(3, 2)
    assert parse_angle("3*pi/4") == Phase(3, 4)
    assert parse_angle("pi*5/8") == Phase(5, 8)
    assert not parse_angle("0.3").is_exact
    assert format_angle(Phase(3, 4)) == "pi*3/4"
    assert parse_angle(format_angle(Phase.real(0.3))) == Phase.real(0.3)
    with pytest.raises(QasmError):
        parse_angle("pi/0")
    with pytest.raises(QasmError):
        parse_angle("banana")


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("OPENQASM 3;\nqreg q[1];\n", 1, "header"),
        (HEAD + "foo q[0];\n", 4, "unknown gate"),
        (HEAD + "h q[7];\n", 4, "out of range"),
        (HEAD + "\n\ncx q[0],q[0];\n", 6, "distinct"),
        (HEAD + "h q[0]\n", 4, "missing ';'"),
        (HEAD + "rz q[0];\n", 4, "needs angle"),
        (HEAD + "measure q[0] -> c[0];\n", 4, "unsupported"),
        ("OPENQASM 2.0;\nh q[0];\n", 2, "before qreg"),
    ],
)
def test_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(QasmError) as info:
        parse_qasm(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")
    assert fragment in str(info.value)


def test_gadget_emission_is_exact():
    c = Circuit(3).add("PhaseGadget", 0, 2, phase=Phase(1, 4)).add("RX", 1, phase=Phase.real(0.7))
    back = parse_qasm(emit_qasm(c))
    assert proportional(circuit_matrix(c), circuit_matrix(back)) == pytest.approx(1)


NAMES = ["H", "X", "Y", "Z", "S", "Sdg", "T", "Tdg", "RZ", "RX", "CX", "CZ", "SWAP", "CCX", "CCZ"]


@st.composite
def circuits(draw):
    n = draw(st.integers(3, 5))
    c = Circuit(n)
    for name in draw(st.lists(st.sampled_from(NAMES), max_size=20)):
        arity = 3 if name in ("CCX", "CCZ") else 2 if name in ("CX", "CZ", "SWAP") else 1
        qs = draw(st.permutations(range(n)))[:arity]
        phase = None
        if name in ("RZ", "RX"):
            phase = draw(st.one_of(st.fractions(0, 2, max_denominator=16).map(Phase),
                                   st.floats(0.01, 6.2).map(Phase.real)))
        c.add(name, *qs, phase=phase)
    return c


@settings(max_examples=60)
@given(circuits())
def test_emit_parse_round_trip(c):
    text = emit_qasm(c)
    back = parse_qasm(text)
    assert back.gates == c.gates and back.qubit_count == c.qubit_count
    assert emit_qasm(back) == text
