"""Open multigraph representation of ZX and ZH diagrams."""

from __future__ import annotations

import enum
import json
from typing import Iterable, Iterator, Optional, Union

from .phase import Phase, PhaseLike


class DiagramError(ValueError):
    """Raised for malformed diagrams or invalid structural operations."""


class VertexType(enum.Enum):
    Z = "Z"
    X = "X"
    H_BOX = "H"
    BOUNDARY = "B"


class EdgeType(enum.Enum):
    SIMPLE = "P"
    HADAMARD = "H"

    def toggle(self) -> "EdgeType":
        return EdgeType.HADAMARD if self is EdgeType.SIMPLE else EdgeType.SIMPLE

    def compose(self, other: "EdgeType") -> "EdgeType":
        """Edge type of two edge segments joined in series."""
        return EdgeType.SIMPLE if self is other else EdgeType.HADAMARD


SPIDERS = (VertexType.Z, VertexType.X)


class Scalar:
    """Global complex factor of a diagram.

    The zero flag is sticky: once a zero factor is absorbed the scalar stays
    zero regardless of later multiplications.
    """

    __slots__ = ("_value", "_zero")

    def __init__(self, value: complex = 1.0) -> None:
        value = complex(value)
        self._zero = value == 0
        self._value = 0j if self._zero else value

    @property
    def value(self) -> complex:
        return self._value

    @property
    def is_zero(self) -> bool:
        return self._zero

    def __mul__(self, other: Union["Scalar", complex, float, int]) -> "Scalar":
        v = other.value if isinstance(other, Scalar) else complex(other)
        return Scalar(self._value * v)

    __rmul__ = __mul__

    def __complex__(self) -> complex:
        return self._value

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Scalar):
            return self._value == other._value
        if isinstance(other, (int, float, complex)):
            return self._value == other
        return NotImplemented

    def __repr__(self) -> str:
        return f"Scalar({self._value!r})"


class Diagram:
    """A ZX(H) diagram: typed vertices, typed edges, ordered boundaries and a scalar.

    Vertex and edge ids are integers that are never reused within one diagram.
    Parallel edges and self-loops are stored explicitly.

    Args:
        zh: allow H-box vertices in this diagram.
    """

    def __init__(self, zh: bool = False) -> None:
        self.zh = zh
        self._types: dict[int, VertexType] = {}
        self._phases: dict[int, Phase] = {}
        self._labels: dict[int, complex] = {}
        self._edges: dict[int, tuple[int, int, EdgeType]] = {}
        self._inc: dict[int, list[int]] = {}
        self.inputs: list[int] = []
        self.outputs: list[int] = []
        self.scalar = Scalar(1)
        self._vnext = 0
        self._enext = 0
        self.rev = 0

    # -- construction -------------------------------------------------------

    def add_vertex(
        self,
        ty: VertexType,
        phase: PhaseLike | float = 0,
        label: complex = -1,
        vid: Optional[int] = None,
    ) -> int:
        """Add a vertex and return its id.

        ``phase`` is used for spiders, ``label`` for H-boxes.
        """
        if ty is VertexType.H_BOX and not self.zh:
            raise DiagramError("H-box vertices require a diagram with zh=True")
        if vid is None:
            vid = self._vnext
        elif vid in self._types:
            raise DiagramError(f"vertex id {vid} already in use")
        self._vnext = max(self._vnext, vid + 1)
        self.rev += 1
        self._types[vid] = ty
        self._inc[vid] = []
        if ty in SPIDERS:
            self._phases[vid] = Phase.coerce(phase)
        elif ty is VertexType.H_BOX:
            self._labels[vid] = complex(label)
        return vid

    def add_edge(self, u: int, v: int, et: EdgeType = EdgeType.SIMPLE) -> int:
        """Add an edge between existing vertices and return its id."""
        if u not in self._types or v not in self._types:
            raise DiagramError(f"edge endpoint missing: {u}-{v}")
        return self._add_edge_raw(u, v, et)

    def _add_edge_raw(self, u: int, v: int, et: EdgeType) -> int:
        eid = self._enext
        self._enext += 1
        self.rev += 1
        self._edges[eid] = (u, v, et)
        if u in self._inc:
            self._inc[u].append(eid)
        if v != u and v in self._inc:
            self._inc[v].append(eid)
        return eid

    def remove_edge(self, eid: int) -> None:
        self.rev += 1
        u, v, _ = self._edges.pop(eid)
        if u in self._inc:
            self._inc[u].remove(eid)
        if v != u and v in self._inc:
            self._inc[v].remove(eid)

    def remove_vertex(self, v: int) -> None:
        """Remove a vertex, its incident edges and any boundary registration."""
        for eid in list(self._inc[v]):
            self.remove_edge(eid)
        self.rev += 1
        del self._inc[v]
        del self._types[v]
        self._phases.pop(v, None)
        self._labels.pop(v, None)
        if v in self.inputs:
            self.inputs.remove(v)
        if v in self.outputs:
            self.outputs.remove(v)

    def scale(self, factor: Union[Scalar, complex, float]) -> None:
        """Multiply the global scalar in place."""
        self.scalar = self.scalar * factor

    # -- queries --------------------------------------------------------------

    def vertices(self) -> list[int]:
        return sorted(self._types)

    def num_vertices(self) -> int:
        return len(self._types)

    def num_edges(self) -> int:
        return len(self._edges)

    def has_vertex(self, v: int) -> bool:
        return v in self._types

    def has_edge(self, eid: int) -> bool:
        return eid in self._edges

    def edge_ids(self) -> list[int]:
        return sorted(self._edges)

    def edges(self) -> Iterator[tuple[int, int, int, EdgeType]]:
        """Yield ``(edge_id, u, v, type)`` in ascending id order."""
        for eid in sorted(self._edges):
            u, v, et = self._edges[eid]
            yield eid, u, v, et

    def edge(self, eid: int) -> tuple[int, int, EdgeType]:
        return self._edges[eid]

    def edge_type(self, eid: int) -> EdgeType:
        return self._edges[eid][2]

    def set_edge_type(self, eid: int, et: EdgeType) -> None:
        u, v, _ = self._edges[eid]
        self.rev += 1
        self._edges[eid] = (u, v, et)

    def other_end(self, eid: int, v: int) -> int:
        a, b, _ = self._edges[eid]
        return b if a == v else a

    def incident(self, v: int) -> list[int]:
        """Ids of the edges touching ``v``; a self-loop is listed once."""
        return list(self._inc[v])

    def degree(self, v: int) -> int:
        """Number of edge ends at ``v``; a self-loop counts twice."""
        return sum(2 if self._edges[e][0] == self._edges[e][1] else 1 for e in self._inc[v])

    def neighbors(self, v: int) -> list[int]:
        """Distinct vertices adjacent to ``v``, excluding ``v`` itself."""
        out = {self.other_end(e, v) for e in self._inc[v]}
        out.discard(v)
        return sorted(out)

    def edges_between(self, u: int, v: int) -> list[int]:
        return [e for e in self._inc[u] if self.other_end(e, u) == v and (u != v or self._edges[e][0] == self._edges[e][1])]

    def self_loops(self, v: int) -> list[int]:
        return [e for e in self._inc[v] if self._edges[e][0] == self._edges[e][1]]

    def type(self, v: int) -> VertexType:
        return self._types[v]

    def set_type(self, v: int, ty: VertexType) -> None:
        old = self._types[v]
        self.rev += 1
        if ty is VertexType.H_BOX and not self.zh:
            raise DiagramError("H-box vertices require a diagram with zh=True")
        self._types[v] = ty
        if ty in SPIDERS and old not in SPIDERS:
            self._phases[v] = Phase(0)
            self._labels.pop(v, None)
        elif ty is VertexType.H_BOX and old is not VertexType.H_BOX:
            self._labels[v] = -1
            self._phases.pop(v, None)

    def is_boundary(self, v: int) -> bool:
        return self._types[v] is VertexType.BOUNDARY

    def is_spider(self, v: int) -> bool:
        return self._types[v] in SPIDERS

    def phase(self, v: int) -> Phase:
        return self._phases[v]

    def set_phase(self, v: int, phase: PhaseLike | float) -> None:
        self._phases[v] = Phase.coerce(phase)

    def add_to_phase(self, v: int, phase: PhaseLike | float) -> None:
        self._phases[v] = self._phases[v] + Phase.coerce(phase)

    def label(self, v: int) -> complex:
        return self._labels[v]

    def set_label(self, v: int, label: complex) -> None:
        self._labels[v] = complex(label)

    def boundary_index(self, v: int) -> tuple[str, int]:
        if v in self.inputs:
            return "in", self.inputs.index(v)
        return "out", self.outputs.index(v)

    def copy(self) -> "Diagram":
        d = Diagram.__new__(Diagram)
        d.zh = self.zh
        d._types = dict(self._types)
        d._phases = dict(self._phases)
        d._labels = dict(self._labels)
        d._edges = dict(self._edges)
        d._inc = {v: list(es) for v, es in self._inc.items()}
        d.inputs = list(self.inputs)
        d.outputs = list(self.outputs)
        d.scalar = self.scalar
        d._vnext = self._vnext
        d._enext = self._enext
        d.rev = 0
        return d

    def __repr__(self) -> str:
        return (
            f"Diagram(vertices={self.num_vertices()}, edges={self.num_edges()}, "
            f"inputs={len(self.inputs)}, outputs={len(self.outputs)})"
        )

    # -- structural equality --------------------------------------------------

    def signature(self) -> tuple:
        """Canonical id-level description used for exact structural comparison."""
        verts = []
        for v in self.vertices():
            ty = self._types[v]
            data: object = None
            if ty in SPIDERS:
                data = self._phases[v]
            elif ty is VertexType.H_BOX:
                data = self._labels[v]
            verts.append((v, ty.value, data))
        edges = sorted((min(u, v), max(u, v), et.value) for _, u, v, et in self.edges())
        return (tuple(verts), tuple(edges), tuple(self.inputs), tuple(self.outputs), self.scalar.value)


Generator = str


def make_generator(
    kind: Generator,
    in_count: int = 1,
    out_count: int = 1,
    param: Union[PhaseLike, float, complex, None] = None,
    zh: bool = False,
) -> Diagram:
    """Build a diagram holding a single generator.

    Args:
        kind: one of ``zspider``, ``xspider``, ``hbox``, ``identity``, ``swap``,
            ``cup`` or ``cap``.
        in_count: number of inputs.
        out_count: number of outputs.
        param: phase for spiders (multiple of pi, or a float in radians) or
            complex label for H-boxes.
        zh: must be true to request an H-box.

    Raises:
        DiagramError: on an unknown kind, an arity violation or a disallowed H-box.
    """
    fixed = {"identity": (1, 1), "swap": (2, 2), "cup": (0, 2), "cap": (2, 0)}
    if kind in fixed and (in_count, out_count) != fixed[kind]:
        raise DiagramError(f"{kind} has arity {fixed[kind][0]}->{fixed[kind][1]}, got {in_count}->{out_count}")
    if in_count < 0 or out_count < 0:
        raise DiagramError("arity must be non-negative")
    if kind == "hbox" and not zh:
        raise DiagramError("hbox generator requires zh=True")
    d = Diagram(zh=zh)
    ins = [d.add_vertex(VertexType.BOUNDARY) for _ in range(in_count)]
    outs = [d.add_vertex(VertexType.BOUNDARY) for _ in range(out_count)]
    d.inputs, d.outputs = ins, outs
    if kind in ("zspider", "xspider", "hbox"):
        if kind == "hbox":
            c = d.add_vertex(VertexType.H_BOX, label=-1 if param is None else complex(param))  # type: ignore[arg-type]
        else:
            ty = VertexType.Z if kind == "zspider" else VertexType.X
            c = d.add_vertex(ty, phase=0 if param is None else param)  # type: ignore[arg-type]
        for b in ins + outs:
            d.add_edge(b, c)
    elif kind == "identity":
        d.add_edge(ins[0], outs[0])
    elif kind == "swap":
        d.add_edge(ins[0], outs[1])
        d.add_edge(ins[1], outs[0])
    elif kind == "cup":
        d.add_edge(outs[0], outs[1])
    elif kind == "cap":
        d.add_edge(ins[0], ins[1])
    else:
        raise DiagramError(f"unknown generator kind {kind!r}")
    return d


def identity(n: int = 1) -> Diagram:
    """The identity on ``n`` wires."""
    d = Diagram()
    for _ in range(n):
        i = d.add_vertex(VertexType.BOUNDARY)
        o = d.add_vertex(VertexType.BOUNDARY)
        d.add_edge(i, o)
        d.inputs.append(i)
        d.outputs.append(o)
    return d


def _merge_into(target: Diagram, other: Diagram) -> dict[int, int]:
    """Copy the vertices and edges of ``other`` into ``target``; return the id map."""
    target.zh = target.zh or other.zh
    vmap: dict[int, int] = {}
    for v in other.vertices():
        ty = other.type(v)
        if ty in SPIDERS:
            vmap[v] = target.add_vertex(ty, phase=other.phase(v))
        elif ty is VertexType.H_BOX:
            vmap[v] = target.add_vertex(ty, label=other.label(v))
        else:
            vmap[v] = target.add_vertex(ty)
    for _, u, v, et in other.edges():
        target.add_edge(vmap[u], vmap[v], et)
    target.scale(other.scalar)
    return vmap


def _glue(d: Diagram, a: int, b: int) -> None:
    """Remove boundary vertices ``a`` and ``b`` and join their neighbours."""
    ea = d.incident(a)[0]
    eb = d.incident(b)[0]
    if ea == eb:
        # The two boundaries were wired to each other: a closed loop.
        d.scale(2 if d.edge_type(ea) is EdgeType.SIMPLE else 0)
        d.remove_vertex(a)
        d.remove_vertex(b)
        return
    x, y = d.other_end(ea, a), d.other_end(eb, b)
    et = d.edge_type(ea).compose(d.edge_type(eb))
    d.remove_vertex(a)
    d.remove_vertex(b)
    if x == y and d.type(x) is VertexType.H_BOX:
        mid = d.add_vertex(VertexType.Z)
        d.add_edge(x, mid, et)
        d.add_edge(mid, x)
    else:
        d.add_edge(x, y, et)


def compose(first: Diagram, second: Diagram) -> Diagram:
    """Plug the outputs of ``first`` into the inputs of ``second``.

    The result evaluates to ``M_second @ M_first``.
    """
    if len(first.outputs) != len(second.inputs):
        raise DiagramError(f"cannot compose: {len(first.outputs)} outputs vs {len(second.inputs)} inputs")
    d = first.copy()
    vmap = _merge_into(d, second)
    outs = list(d.outputs)
    ins = [vmap[v] for v in second.inputs]
    d.outputs = [vmap[v] for v in second.outputs]
    for a, b in zip(outs, ins):
        _glue(d, a, b)
    return d


def tensor(top: Diagram, bottom: Diagram) -> Diagram:
    """Place two diagrams side by side; ``top`` wires come first."""
    d = top.copy()
    vmap = _merge_into(d, bottom)
    d.inputs = d.inputs + [vmap[v] for v in bottom.inputs]
    d.outputs = d.outputs + [vmap[v] for v in bottom.outputs]
    return d


def transpose(d: Diagram) -> Diagram:
    """Swap the roles of inputs and outputs (bending every wire with cups and caps)."""
    t = d.copy()
    t.inputs, t.outputs = list(d.outputs), list(d.inputs)
    return t


def conjugate(d: Diagram) -> Diagram:
    """Negate every phase and conjugate labels and the scalar."""
    c = d.copy()
    for v in c.vertices():
        if c.is_spider(v):
            c.set_phase(v, -c.phase(v))
        elif c.type(v) is VertexType.H_BOX:
            c.set_label(v, c.label(v).conjugate())
    c.scalar = Scalar(c.scalar.value.conjugate())
    return c


def adjoint(d: Diagram) -> Diagram:
    """Dagger of a diagram: transpose followed by conjugation."""
    return conjugate(transpose(d))


def validate(d: Diagram) -> list[str]:
    """Check the structural invariants of ``d`` and return the violations found."""
    problems: list[str] = []
    for eid, (u, v, _) in sorted(d._edges.items()):
        if u not in d._types or v not in d._types:
            problems.append(f"dangling edge {eid}: {u}-{v}")
    ins, outs = d.inputs, d.outputs
    if len(set(ins)) != len(ins) or len(set(outs)) != len(outs):
        problems.append("duplicate boundary in input/output list")
    if set(ins) & set(outs):
        problems.append("input/output overlap")
    bounds = {v for v, t in d._types.items() if t is VertexType.BOUNDARY}
    listed = set(ins) | set(outs)
    for v in sorted(listed - bounds):
        problems.append(f"boundary list references non-boundary vertex {v}")
    for v in sorted(bounds - listed):
        problems.append(f"boundary coverage: vertex {v} is in neither inputs nor outputs")
    for v in sorted(d._types):
        ty = d._types[v]
        loops = [e for e in d._inc[v] if d._edges[e][0] == d._edges[e][1]]
        if ty is VertexType.BOUNDARY:
            deg = sum(2 if e in loops else 1 for e in d._inc[v])
            if deg != 1:
                problems.append(f"boundary degree: vertex {v} has degree {deg}")
            if loops:
                problems.append(f"self-loop on boundary {v}")
        elif ty is VertexType.H_BOX:
            if not d.zh:
                problems.append(f"H-box {v} in a diagram without zh enabled")
            if loops:
                problems.append(f"self-loop on H-box {v}")
    if d.scalar.is_zero and d.scalar.value != 0:
        problems.append("scalar zero flag inconsistent")
    return problems


# -- JSON ----------------------------------------------------------------------


def to_json(d: Diagram) -> str:
    """Serialise to the compact JSON exchange format."""
    verts = []
    for v in d.vertices():
        ty = d.type(v)
        verts.append(
            {
                "id": v,
                "kind": ty.value,
                "phase": d.phase(v).to_json() if ty in SPIDERS else None,
                "label": [d.label(v).real, d.label(v).imag] if ty is VertexType.H_BOX else None,
            }
        )
    data = {
        "vertices": verts,
        "edges": [[u, v, et.value] for _, u, v, et in d.edges()],
        "inputs": list(d.inputs),
        "outputs": list(d.outputs),
        "scalar": [float(d.scalar.value.real), float(d.scalar.value.imag)],
    }
    return json.dumps(data, separators=(",", ":"))


def from_json(text: str, check: bool = True) -> Diagram:
    """Parse the JSON exchange format.

    Args:
        text: the JSON document.
        check: run :func:`validate` and raise on any violation.

    Raises:
        DiagramError: with line and column for syntax errors, or the list of
            invariant violations.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DiagramError(f"JSON parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    try:
        verts = data["vertices"]
        has_h = any(v["kind"] == "H" for v in verts)
        d = Diagram(zh=has_h)
        for item in verts:
            ty = VertexType(item["kind"])
            if ty in SPIDERS:
                ph = item.get("phase")
                d.add_vertex(ty, phase=Phase.from_json(ph) if ph is not None else Phase(0), vid=int(item["id"]))
            elif ty is VertexType.H_BOX:
                lab = item.get("label")
                d.add_vertex(ty, label=complex(lab[0], lab[1]) if lab is not None else -1, vid=int(item["id"]))
            else:
                d.add_vertex(ty, vid=int(item["id"]))
        for u, v, et in data["edges"]:
            d._add_edge_raw(int(u), int(v), EdgeType(et))
        d.inputs = [int(i) for i in data["inputs"]]
        d.outputs = [int(i) for i in data["outputs"]]
        re, im = data.get("scalar", [1.0, 0.0])
        d.scalar = Scalar(complex(re, im))
    except (KeyError, TypeError, ValueError) as exc:
        raise DiagramError(f"schema error: {exc}") from None
    if check:
        problems = validate(d)
        if problems:
            raise DiagramError("invalid diagram: " + "; ".join(problems))
    return d


def spiders(d: Diagram) -> Iterable[int]:
    return [v for v in d.vertices() if d.is_spider(v)]
