"""``zx`` command line: opt, verify, amp, convert, render and stats.

Exit codes: 0 success, 1 input error (or circuits that differ), 2 not
extractable, 3 inconclusive or too wide for the dense fallback.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .circuit import Circuit, peephole, stats
from .extract import NotExtractableError, extract_circuit, verify_extraction
from .graph import Diagram, DiagramError, from_json, to_json
from .qasm import QasmError, emit_qasm, parse_qasm
from .render import diagram_to_dot, diagram_to_tikz
from .rules import simplify, trace_to_jsonl
from .simplify import GraphLikeView, NotCliffordError, clifford_amplitude, full_reduce_inplace
from .tensor import QUBIT_CAP, circuit_state
from .translate import circuit_to_diagram
from .verify import DIFFERENT, INCONCLUSIVE, verify_circuits

EXIT_OK, EXIT_INPUT, EXIT_NOT_EXTRACTABLE, EXIT_INCONCLUSIVE = 0, 1, 2, 3
STRATEGIES = ("clifford_full", "basic")

log = logging.getLogger("zxkit")


class InputError(Exception):
    """Bad input file, format or argument; maps to exit code 1."""


def _format(path: str) -> str:
    p = path.lower()
    for ext, fmt in ((".zx.json", "json"), (".json", "json"), (".qasm", "qasm"), (".dot", "dot"), (".tikz", "tikz"), (".tex", "tikz")):
        if p.endswith(ext):
            return fmt
    raise InputError(f"cannot detect format of {path!r} (use .qasm, .zx.json, .dot or .tikz)")


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_circuit(path: str) -> Circuit:
    if _format(path) != "qasm":
        raise InputError(f"{path}: expected a .qasm circuit")
    try:
        return parse_qasm(_read(path))
    except QasmError as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_diagram(path: str, toffoli_mode: str) -> Diagram:
    fmt = _format(path)
    if fmt == "qasm":
        return circuit_to_diagram(_load_circuit(path), toffoli_mode)
    if fmt == "json":
        try:
            return from_json(_read(path))
        except (DiagramError, ValueError) as exc:
            raise InputError(f"{path}: {exc}") from None
    raise InputError(f"{path}: cannot read {fmt} input")


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _stats_line(label: str, c: Circuit) -> str:
    s = stats(c)
    return f"{label}: " + " ".join(f"{k}={v}" for k, v in s.items())


# -- commands ----------------------------------------------------------------------------------


def _cost(c: Circuit) -> tuple[int, int, int]:
    s = stats(c)
    return s["t_count"], s["two_qubit_count"], s["total"]


def optimize(c: Circuit, strategy: str = "clifford_full", toffoli_mode: str = "gadgets"):
    """Simplify and re-extract a circuit; returns ``(circuit, trace)``.

    Both the extracted circuit and the input get a peephole pass, and the
    cheaper of the two is returned (T-count, then two-qubit count, then size).

    Raises:
        NotExtractableError: if the reduced diagram has no circuit-like cut.
    """
    d = circuit_to_diagram(c, toffoli_mode)
    trace = simplify(d, strategy)
    if strategy != "clifford_full":
        trace += full_reduce_inplace(d)
    extracted = peephole(extract_circuit(GraphLikeView(d)))
    fallback = peephole(c)
    if _cost(fallback) < _cost(extracted):
        log.info("extracted circuit is larger than the input; keeping the input")
        return fallback, trace
    return extracted, trace


def _opt_one(path: str, out: Optional[str], args: argparse.Namespace) -> int:
    c = _load_circuit(path)
    try:
        new, trace = optimize(c, args.strategy, args.toffoli_mode)
    except (NotExtractableError, DiagramError) as exc:
        print(f"{path}: not extractable: {exc}", file=sys.stderr)
        return EXIT_NOT_EXTRACTABLE
    if c.qubit_count <= QUBIT_CAP:
        rep = verify_extraction(c, new, args.tol)
        if not rep.ok:  # pragma: no cover - would be an engine bug
            print(f"{path}: extraction check failed (deviation {rep.max_deviation:.3g})", file=sys.stderr)
            return EXIT_NOT_EXTRACTABLE
    _write(out, emit_qasm(new))
    print(_stats_line("before", c), file=sys.stderr)
    print(_stats_line("after", new), file=sys.stderr)
    if args.trace:
        base = Path(out) if out not in (None, "-") else Path(path)
        tpath = base.with_name(base.name + ".trace.jsonl")
        tpath.write_text(trace_to_jsonl(trace))
        log.info("trace written to %s", tpath)
    return EXIT_OK


def _batch_worker(job: tuple[str, Optional[str], dict]) -> tuple[int, str]:
    path, out, opts = job
    args = argparse.Namespace(**opts)
    try:
        return _opt_one(path, out, args), path
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT, path


def cmd_opt(args: argparse.Namespace) -> int:
    inputs = args.inputs
    if len(inputs) == 1:
        return _opt_one(inputs[0], args.output, args)
    if args.output not in (None, "-"):
        raise InputError("-o/--output takes a single input; batch mode writes <name>.opt.qasm")
    opts = {k: getattr(args, k) for k in ("strategy", "toffoli_mode", "tol", "trace", "seed")}
    jobs = [(p, str(Path(p).with_suffix(".opt.qasm")), opts) for p in inputs]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_batch_worker, jobs))
    else:
        results = [_batch_worker(j) for j in jobs]
    return max(code for code, _ in results)


def cmd_verify(args: argparse.Namespace) -> int:
    a, b = _load_circuit(args.a), _load_circuit(args.b)
    if a.qubit_count != b.qubit_count:
        raise InputError(f"qubit counts differ: {a.qubit_count} vs {b.qubit_count}")
    res = verify_circuits(a, b, args.tol)
    line = res.status + (f" ({res.detail})" if res.detail else "")
    print(line)
    if res.status == INCONCLUSIVE:
        return EXIT_INCONCLUSIVE
    return EXIT_INPUT if res.status == DIFFERENT else EXIT_OK


def _bits(text: str, n: int) -> list[int]:
    if len(text) != n or any(ch not in "01" for ch in text):
        raise InputError(f"bit string {text!r} must have {n} characters from 0/1")
    return [int(ch) for ch in text]


def _complex_text(z: complex) -> str:
    return f"{z.real:.12g}{z.imag:+.12g}j"


def cmd_amp(args: argparse.Namespace) -> int:
    c = _load_circuit(args.circuit)
    bi, bo = _bits(args.bits_in, c.qubit_count), _bits(args.bits_out, c.qubit_count)
    try:
        amp = clifford_amplitude(c, bi, bo)
        how = "clifford"
    except NotCliffordError:
        if c.qubit_count > QUBIT_CAP:
            print(f"non-Clifford circuit with {c.qubit_count} qubits exceeds the dense cap {QUBIT_CAP}", file=sys.stderr)
            return EXIT_INCONCLUSIVE
        idx = int("".join(map(str, bo)) or "0", 2)
        amp = complex(circuit_state(c, bi)[idx])
        how = "dense"
    log.info("amplitude computed via %s path", how)
    print(_complex_text(amp))
    return EXIT_OK


def _render(d: Diagram, fmt: str) -> str:
    return diagram_to_dot(d) if fmt == "dot" else diagram_to_tikz(d)


def cmd_convert(args: argparse.Namespace) -> int:
    src, dst = _format(args.input), _format(args.output)
    if dst in ("dot", "tikz"):
        _write(args.output, _render(_load_diagram(args.input, args.toffoli_mode), dst))
        return EXIT_OK
    if src == "qasm" and dst == "qasm":
        _write(args.output, emit_qasm(_load_circuit(args.input)))
        return EXIT_OK
    d = _load_diagram(args.input, args.toffoli_mode)
    if dst == "json":
        _write(args.output, to_json(d) + "\n")
        return EXIT_OK
    try:
        work = d.copy()
        full_reduce_inplace(work)
        c = extract_circuit(GraphLikeView(work))
    except (NotExtractableError, DiagramError) as exc:
        print(f"{args.input}: not extractable: {exc}", file=sys.stderr)
        return EXIT_NOT_EXTRACTABLE
    _write(args.output, emit_qasm(c))
    return EXIT_OK


def cmd_render(args: argparse.Namespace) -> int:
    fmt = args.format or (_format(args.output) if args.output not in (None, "-") else "dot")
    if fmt not in ("dot", "tikz"):
        raise InputError(f"cannot render to {fmt}")
    _write(args.output, _render(_load_diagram(args.input, args.toffoli_mode), fmt))
    return EXIT_OK


def cmd_stats(args: argparse.Namespace) -> int:
    rows = {p: stats(_load_circuit(p)) for p in args.inputs}
    if len(rows) == 1:
        print(json.dumps(next(iter(rows.values())), sort_keys=True))
    else:
        print(json.dumps(rows, sort_keys=True, indent=2))
    return EXIT_OK


# -- argument parsing --------------------------------------------------------------------------------


def _positive(text: str) -> float:
    v = float(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--strategy", choices=STRATEGIES, default="clifford_full")
    common.add_argument("--toffoli-mode", choices=("hbox", "gadgets"), default="gadgets")
    common.add_argument("--tol", type=_positive, default=1e-9)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trace", action="store_true", help="write the rewrite trace as JSON lines next to the output")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for batch mode")

    p = argparse.ArgumentParser(prog="zx", description="ZX-calculus circuit rewriting toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("opt", parents=[common], help="simplify a circuit and extract it again")
    s.add_argument("inputs", nargs="+")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_opt)

    s = sub.add_parser("verify", parents=[common], help="check two circuits for equality")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("amp", parents=[common], help="amplitude <out|C|in>")
    s.add_argument("circuit")
    s.add_argument("bits_in")
    s.add_argument("bits_out")
    s.set_defaults(func=cmd_amp)

    s = sub.add_parser("convert", parents=[common], help="convert between .qasm, .zx.json, .dot and .tikz")
    s.add_argument("input")
    s.add_argument("output")
    s.set_defaults(func=cmd_convert)

    s = sub.add_parser("render", parents=[common], help="draw a circuit or diagram")
    s.add_argument("input")
    s.add_argument("-o", "--output")
    s.add_argument("--format", choices=("dot", "tikz"))
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("stats", parents=[common], help="gate statistics")
    s.add_argument("inputs", nargs="+")
    s.set_defaults(func=cmd_stats)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=os.environ.get("ZX_LOG", "WARNING").upper(), format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    np.random.seed(args.seed)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
