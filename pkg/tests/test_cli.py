import json

import pytest

from zxkit.cli import EXIT_INCONCLUSIVE, EXIT_INPUT, EXIT_NOT_EXTRACTABLE, EXIT_OK, main
from zxkit.qasm import parse_qasm
from zxkit.tensor import circuit_matrix, proportional

HEAD = 'OPENQASM 2.0;\ninclude "qelib1.inc";\n'


def write(tmp_path, name, body, n):
    p = tmp_path / name
    p.write_text(HEAD + f"qreg q[{n}];\n" + body)
    return str(p)


@pytest.fixture
def ghz(tmp_path):
    return write(tmp_path, "ghz.qasm", "h q[0];\ncx q[0],q[1];\ncx q[1],q[2];\n", 3)


def test_amp(ghz, capsys):
    assert main(["amp", ghz, "000", "111"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "0.707106781187+0j"
    assert main(["amp", ghz, "000", "010"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "0+0j"
    assert main(["amp", ghz, "00", "111"]) == EXIT_INPUT


def test_amp_empty_and_non_clifford(tmp_path, capsys):
    empty = write(tmp_path, "e.qasm", "", 1)
    assert main(["amp", empty, "0", "0"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "1+0j"
    t = write(tmp_path, "t.qasm", "h q[0];\nt q[0];\n", 1)
    assert main(["amp", t, "0", "1"]) == EXIT_OK
    wide = write(tmp_path, "w.qasm", "t q[0];\n", 11)
    assert main(["amp", wide, "0" * 11, "0" * 11]) == EXIT_INCONCLUSIVE


def test_verify(tmp_path, capsys):
    three = write(tmp_path, "a.qasm", "cx q[0],q[1];\ncx q[1],q[0];\ncx q[0],q[1];\n", 2)
    swap = write(tmp_path, "b.qasm", "swap q[0],q[1];\n", 2)
    assert main(["verify", three, swap]) == EXIT_OK
    assert "equal (proved)" in capsys.readouterr().out
    stray = write(tmp_path, "c.qasm", "cx q[0],q[1];\ncx q[1],q[0];\ncx q[0],q[1];\nz q[0];\n", 2)
    assert main(["verify", stray, swap]) == EXIT_INPUT
    assert "different" in capsys.readouterr().out


def test_opt_clifford(tmp_path, capsys):
    src = write(tmp_path, "c.qasm", "h q[0];\ncx q[0],q[1];\ncz q[1],q[2];\ncx q[0],q[1];\ns q[2];\ns q[2];\n", 3)
    out = tmp_path / "out.qasm"
    assert main(["opt", src, "-o", str(out), "--trace"]) == EXIT_OK
    err = capsys.readouterr().err
    assert "before:" in err and "after:" in err
    a = parse_qasm(open(src).read())
    b = parse_qasm(out.read_text())
    lam = proportional(circuit_matrix(a), circuit_matrix(b))
    assert lam is not None and abs(abs(lam) - 1) < 1e-9
    assert (tmp_path / "out.qasm.trace.jsonl").exists()


def test_opt_identity_and_not_extractable(tmp_path, capsys):
    ident = write(tmp_path, "i.qasm", "h q[0];\nh q[0];\n", 2)
    out = tmp_path / "i.out.qasm"
    assert main(["opt", ident, "-o", str(out)]) == EXIT_OK
    assert parse_qasm(out.read_text()).gates == []
    bad = write(tmp_path, "t.qasm", "t q[0];\nccx q[0],q[1],q[2];\n", 3)
    assert main(["opt", bad, "-o", str(tmp_path / "t.out.qasm")]) == EXIT_NOT_EXTRACTABLE
    assert "not extractable" in capsys.readouterr().err


def test_opt_batch(tmp_path, ghz):
    other = write(tmp_path, "x.qasm", "cx q[0],q[1];\ncx q[0],q[1];\n", 2)
    assert main(["opt", ghz, other]) == EXIT_OK
    assert (tmp_path / "ghz.opt.qasm").exists() and (tmp_path / "x.opt.qasm").exists()
    assert main(["opt", ghz, other, "--jobs", "2"]) == EXIT_OK
    assert main(["opt", ghz, other, "-o", "foo.qasm"]) == EXIT_INPUT


def test_convert_round_trip(tmp_path, ghz):
    js = tmp_path / "g.zx.json"
    back = tmp_path / "back.qasm"
    assert main(["convert", ghz, str(js)]) == EXIT_OK
    json.loads(js.read_text())
    assert main(["convert", str(js), str(back)]) == EXIT_OK
    a = parse_qasm(open(ghz).read())
    b = parse_qasm(back.read_text())
    assert proportional(circuit_matrix(a), circuit_matrix(b)) is not None
    dot = tmp_path / "g.dot"
    assert main(["convert", ghz, str(dot)]) == EXIT_OK
    assert dot.read_text().startswith("graph zx")
    assert main(["convert", ghz, str(tmp_path / "g.png")]) == EXIT_INPUT


def test_render_and_stats(tmp_path, ghz, capsys):
    tex = tmp_path / "g.tex"
    assert main(["render", ghz, "-o", str(tex)]) == EXIT_OK
    assert r"\begin{tikzpicture}" in tex.read_text()
    assert main(["render", ghz, "--format", "dot"]) == EXIT_OK
    assert "graph zx" in capsys.readouterr().out
    t = write(tmp_path, "t.qasm", "t q[0];\ntdg q[0];\n", 1)
    assert main(["stats", t]) == EXIT_OK
    row = json.loads(capsys.readouterr().out)
    assert row == {"depth": 2, "t_count": 2, "total": 2, "two_qubit_count": 0}


def test_input_errors(tmp_path, capsys):
    bad = write(tmp_path, "bad.qasm", "ccx q[0],q[1],q[1];\n", 3)
    assert main(["stats", bad]) == EXIT_INPUT
    assert "line 4" in capsys.readouterr().err
    assert main(["stats", str(tmp_path / "missing.qasm")]) == EXIT_INPUT
    assert main(["opt", "--tol", "-1", bad]) == EXIT_INPUT
    assert main(["nonsense"]) == EXIT_INPUT


def test_opt_is_deterministic(tmp_path):
    src = write(tmp_path, "d.qasm", "h q[0];\ncx q[0],q[1];\ns q[1];\ncz q[1],q[2];\nh q[2];\ncx q[2],q[0];\n", 3)
    outs = []
    for k in range(2):
        out = tmp_path / f"d{k}.qasm"
        assert main(["opt", src, "-o", str(out), "--seed", "7"]) == EXIT_OK
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
