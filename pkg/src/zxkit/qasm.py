"""OpenQASM 2.0 subset: one quantum register, standard gates, no classical bits."""

from __future__ import annotations

import re
from fractions import Fraction

from .circuit import Circuit, CircuitError, Gate, ladder_phase_gadget
from .phase import Phase


class QasmError(ValueError):
    """Parse failure, tagged with the 1-based source line."""

    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


_GATES = {
    "h": ("H", 1, False),
    "x": ("X", 1, False),
    "y": ("Y", 1, False),
    "z": ("Z", 1, False),
    "s": ("S", 1, False),
    "sdg": ("Sdg", 1, False),
    "t": ("T", 1, False),
    "tdg": ("Tdg", 1, False),
    "rz": ("RZ", 1, True),
    "rx": ("RX", 1, True),
    "cx": ("CX", 2, False),
    "cz": ("CZ", 2, False),
    "swap": ("SWAP", 2, False),
    "ccx": ("CCX", 3, False),
    "ccz": ("CCZ", 3, False),
}
_NAMES = {v[0]: k for k, v in _GATES.items()}

_HEADER = re.compile(r"OPENQASM\s+2(\.0)?$")
_INCLUDE = re.compile(r'include\s+"[^"]+"$')
_QREG = re.compile(r"qreg\s+([A-Za-z_]\w*)\s*\[\s*(\d+)\s*\]$")
_GATE = re.compile(r"([A-Za-z_]\w*)\s*(?:\(([^)]*)\))?\s+(.+)$")
_ARG = re.compile(r"([A-Za-z_]\w*)\s*\[\s*(\d+)\s*\]$")
# [-] [p *] pi [/ q]   or   [-] pi * p [/ q]
_PI_FORMS = (
    re.compile(r"(?P<sign>-)?\s*(?:(?P<num>\d+)\s*\*\s*)?pi(?:\s*/\s*(?P<den>\d+))?$"),
    re.compile(r"(?P<sign>-)?\s*pi\s*\*\s*(?P<num>\d+)(?:\s*/\s*(?P<den>\d+))?$"),
)


def parse_angle(text: str, line: int = 0) -> Phase:
    """Parse an angle: exact for ``0`` and ``pi*p/q`` style forms, real radians otherwise."""
    s = text.strip()
    if s in ("0", "-0"):
        return Phase(0)
    for pat in _PI_FORMS:
        m = pat.match(s)
        if m:
            num = int(m.group("num") or 1)
            den = int(m.group("den") or 1)
            if den == 0:
                raise QasmError(line, "division by zero in angle")
            val = Fraction(num, den)
            return Phase(-val if m.group("sign") else val)
    try:
        return Phase.real(float(s))
    except ValueError:
        raise QasmError(line, f"cannot parse angle {text!r}") from None


def format_angle(p: Phase) -> str:
    if not p.is_exact:
        return repr(p.radians)
    f = p.fraction
    if f == 0:
        return "0"
    if f.denominator == 1:
        return "pi" if f.numerator == 1 else f"pi*{f.numerator}"
    return f"pi*{f.numerator}/{f.denominator}"


def _statements(text: str):
    """Yield ``(line, statement)`` pairs, splitting on semicolons and dropping comments."""
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("//", 1)[0]
        parts = body.split(";")
        for i, part in enumerate(parts):
            stmt = part.strip()
            if not stmt:
                continue
            if i == len(parts) - 1:
                raise QasmError(no, f"missing ';' after {stmt!r}")
            yield no, " ".join(stmt.split())


def parse_qasm(text: str) -> Circuit:
    """Parse the supported OpenQASM 2.0 subset.

    Raises:
        QasmError: on a malformed header, unknown gate, bad argument or an
            out-of-range qubit index. The message starts with the line number.
    """
    stmts = list(_statements(text))
    if not stmts or not _HEADER.match(stmts[0][1]):
        raise QasmError(stmts[0][0] if stmts else 1, "expected header 'OPENQASM 2.0;'")
    reg: tuple[str, int] | None = None
    circ: Circuit | None = None
    for no, stmt in stmts[1:]:
        if _INCLUDE.match(stmt):
            continue
        m = _QREG.match(stmt)
        if m:
            if reg is not None:
                raise QasmError(no, "only one qreg is supported")
            reg = (m.group(1), int(m.group(2)))
            circ = Circuit(reg[1])
            continue
        if stmt.startswith(("creg", "measure", "barrier", "gate ", "if", "reset")):
            raise QasmError(no, f"unsupported statement {stmt.split()[0]!r}")
        m = _GATE.match(stmt)
        if not m:
            raise QasmError(no, f"cannot parse statement {stmt!r}")
        name, params, args = m.group(1), m.group(2), m.group(3)
        if name not in _GATES:
            raise QasmError(no, f"unknown gate {name!r}")
        if circ is None or reg is None:
            raise QasmError(no, "gate before qreg declaration")
        gname, arity, takes_param = _GATES[name]
        if takes_param != (params is not None):
            raise QasmError(no, f"{name} {'needs' if takes_param else 'takes no'} angle")
        qubits = []
        for a in args.split(","):
            am = _ARG.match(a.strip())
            if not am:
                raise QasmError(no, f"bad qubit argument {a.strip()!r}")
            if am.group(1) != reg[0]:
                raise QasmError(no, f"unknown register {am.group(1)!r}")
            q = int(am.group(2))
            if q >= reg[1]:
                raise QasmError(no, f"qubit index {q} out of range for {reg[0]}[{reg[1]}]")
            qubits.append(q)
        if len(qubits) != arity:
            raise QasmError(no, f"{name} takes {arity} qubit(s), got {len(qubits)}")
        phase = parse_angle(params, no) if takes_param else None
        try:
            circ.append(Gate(gname, tuple(qubits), phase))
        except CircuitError as exc:
            raise QasmError(no, str(exc)) from None
    if circ is None:
        raise QasmError(stmts[-1][0], "no qreg declared")
    return circ


def emit_qasm(c: Circuit, register: str = "q") -> str:
    """Write a circuit in the supported subset.

    Phase gadgets are expanded into a CNOT ladder around a phase gate.
    """
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg {register}[{c.qubit_count}];"]
    gates: list[Gate] = []
    for g in c.gates:
        gates.extend(ladder_phase_gadget(g.qubits, g.phase) if g.name == "PhaseGadget" else [g])  # type: ignore[arg-type]
    for g in gates:
        args = ",".join(f"{register}[{q}]" for q in g.qubits)
        name = _NAMES[g.name]
        if g.phase is not None:
            lines.append(f"{name}({format_angle(g.phase)}) {args};")
        else:
            lines.append(f"{name} {args};")
    return "\n".join(lines) + "\n"
