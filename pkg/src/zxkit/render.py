"""Deterministic DOT and TikZ renderings of diagrams."""

from __future__ import annotations

from collections import deque

from .graph import Diagram, EdgeType, VertexType

VT = VertexType


def _vertex_text(d: Diagram, v: int) -> str:
    ty = d.type(v)
    if ty is VT.BOUNDARY:
        kind, idx = d.boundary_index(v)
        return f"{kind[0]}{idx}"
    if ty is VT.H_BOX:
        lab = complex(d.label(v))
        return "" if lab == -1 else _complex_text(lab)
    p = d.phase(v)
    return "" if p.is_zero() else str(p)


def _complex_text(z: complex) -> str:
    if z.imag == 0:
        return f"{z.real:g}"
    return f"{z.real:g}{z.imag:+g}i"


def diagram_to_dot(d: Diagram) -> str:
    """GraphViz source with inputs ranked left and outputs ranked right.

    Z-spiders are white circles, X-spiders grey circles, H-boxes yellow
    squares and Hadamard edges dashed blue.
    """
    lines = ["graph zx {", "  rankdir=LR;"]
    for v in sorted(d.vertices()):
        ty = d.type(v)
        label = _vertex_text(d, v).replace('"', '\\"')
        if ty is VT.Z:
            attrs = f'shape=circle, style=filled, fillcolor=white, label="{label}"'
        elif ty is VT.X:
            attrs = f'shape=circle, style=filled, fillcolor=gray, label="{label}"'
        elif ty is VT.H_BOX:
            attrs = f'shape=square, style=filled, fillcolor=yellow, label="{label}"'
        else:
            attrs = f'shape=plaintext, label="{label}"'
        lines.append(f"  v{v} [{attrs}];")
    for side, ids in (("source", d.inputs), ("sink", d.outputs)):
        if ids:
            lines.append("  { rank=" + side + "; " + " ".join(f"v{v};" for v in ids) + " }")
    for e, u, v, et in sorted(d.edges()):
        style = " [style=dashed, color=blue]" if et is EdgeType.HADAMARD else ""
        lines.append(f"  v{u} -- v{v}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _layout(d: Diagram) -> dict[int, tuple[float, float]]:
    """Column by distance from the inputs, row by order of discovery within a column."""
    depth: dict[int, int] = {}
    queue = deque()
    for v in d.inputs:
        depth[v] = 0
        queue.append(v)
    while queue:
        v = queue.popleft()
        for w in sorted(set(d.neighbors(v))):
            if w not in depth and w not in d.outputs:
                depth[w] = depth[v] + 1
                queue.append(w)
    for v in sorted(d.vertices()):
        if v not in depth and v not in d.outputs:
            depth[v] = 1
    last = max([x for x in depth.values()] + [0]) + 1
    for v in d.outputs:
        depth[v] = last
    rows: dict[int, int] = {}
    pos = {}
    order = list(d.inputs) + sorted(v for v in d.vertices() if v not in d.inputs and v not in d.outputs) + list(d.outputs)
    for v in order:
        col = depth[v]
        row = rows.get(col, 0)
        rows[col] = row + 1
        pos[v] = (float(col), -float(row))
    return pos


def diagram_to_tikz(d: Diagram) -> str:
    """TikZ picture using the styles ``zspider``, ``xspider``, ``hbox``, ``boundary`` and ``hedge``."""
    style = {VT.Z: "zspider", VT.X: "xspider", VT.H_BOX: "hbox", VT.BOUNDARY: "boundary"}
    lines = [
        r"\begin{tikzpicture}[",
        r"  zspider/.style={circle, draw, fill=white, minimum size=4mm},",
        r"  xspider/.style={circle, draw, fill=gray!60, minimum size=4mm},",
        r"  hbox/.style={rectangle, draw, fill=yellow, minimum size=3mm},",
        r"  boundary/.style={inner sep=1pt},",
        r"  hedge/.style={dashed, blue}]",
    ]
    pos = _layout(d)
    for v in sorted(d.vertices()):
        x, y = pos[v]
        text = _vertex_text(d, v).replace("π", r"$\pi$")
        lines.append(rf"  \node[{style[d.type(v)]}] (v{v}) at ({x:g}, {y:g}) {{{text}}};")
    for e, u, v, et in sorted(d.edges()):
        opt = "[hedge]" if et is EdgeType.HADAMARD else ""
        if u == v:
            lines.append(rf"  \draw{opt} (v{u}) to[loop above] (v{v});")
        else:
            lines.append(rf"  \draw{opt} (v{u}) -- (v{v});")
    lines.append(r"\end{tikzpicture}")
    return "\n".join(lines) + "\n"
