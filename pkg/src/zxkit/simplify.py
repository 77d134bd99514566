"""Graph-like diagrams, local complementation, pivoting and Clifford reduction."""

from __future__ import annotations

import math
from typing import Optional

from .circuit import Circuit
from .graph import SPIDERS, Diagram, DiagramError, EdgeType, VertexType
from .phase import HALF_PI, Phase
from .rules import (
    RULES,
    Match,
    RewriteStep,
    Rule,
    StaleMatchError,
    Trace,
    cancel_hh,
    color_change,
    fuse_phase_gadgets,
    hbox_to_edge,
    hopf,
    register,
    remove_self_loop,
    spider_fusion,
)

SQRT2 = math.sqrt(2)
ET = EdgeType
VT = VertexType


class NotCliffordError(ValueError):
    """Raised when a Clifford-only procedure meets a non-Clifford phase."""


class GraphLikeView:
    """A diagram known to be graph-like, with adjacency and boundary tables.

    Only Z-spiders and boundaries occur; spider-spider edges are single
    Hadamard edges; there are no self-loops; every boundary touches exactly
    one spider. The tables are rebuilt automatically if the underlying diagram
    is modified behind the view's back.

    Args:
        d: the diagram (not copied).
        check: raise :class:`DiagramError` if the invariants do not hold.
    """

    def __init__(self, d: Diagram, check: bool = True) -> None:
        self.diagram = d
        if check:
            problems = graph_like_violations(d)
            if problems:
                raise DiagramError("not graph-like: " + "; ".join(problems))
        self._build()

    def _build(self) -> None:
        d = self.diagram
        self._nbr: dict[int, dict[int, int]] = {}
        self._bnd: dict[int, list[int]] = {}
        for v in d.vertices():
            if d.type(v) is VT.Z:
                self._nbr[v] = {}
        for e, u, v, et in d.edges():
            if u in self._nbr and v in self._nbr and u != v and et is ET.HADAMARD:
                self._nbr[u][v] = e
                self._nbr[v][u] = e
        for b in d.inputs + d.outputs:
            for e in d.incident(b):
                s = d.other_end(e, b)
                if s in self._nbr:
                    self._bnd.setdefault(s, []).append(b)
        self._rev = d.rev

    def _sync(self) -> None:
        if self.diagram.rev != self._rev:
            self._build()

    # -- queries ----------------------------------------------------------------

    def spiders(self) -> list[int]:
        self._sync()
        return sorted(self._nbr)

    def neighbors(self, v: int) -> set[int]:
        self._sync()
        return set(self._nbr[v])

    def phase(self, v: int) -> Phase:
        return self.diagram.phase(v)

    def boundaries(self, v: int) -> list[int]:
        self._sync()
        return list(self._bnd.get(v, []))

    def is_internal(self, v: int) -> bool:
        self._sync()
        return v in self._nbr and not self._bnd.get(v)

    def internal_spiders(self) -> list[int]:
        self._sync()
        return [v for v in sorted(self._nbr) if not self._bnd.get(v)]

    def adjacency(self) -> dict[int, set[int]]:
        self._sync()
        return {v: set(n) for v, n in self._nbr.items()}

    def phases(self) -> dict[int, Phase]:
        return {v: self.diagram.phase(v) for v in self.spiders()}

    def boundary_table(self) -> dict[int, list[int]]:
        self._sync()
        return {v: list(b) for v, b in self._bnd.items() if b}

    # -- mutations (keep tables in sync) ----------------------------------------

    def toggle(self, x: int, y: int) -> int:
        """Add the Hadamard edge x-y if absent, remove it otherwise.

        Returns +1 if an edge was added and -1 if one was removed.
        """
        self._sync()
        d = self.diagram
        e = self._nbr[x].get(y)
        if e is None:
            e = d.add_edge(x, y, ET.HADAMARD)
            self._nbr[x][y] = e
            self._nbr[y][x] = e
            delta = 1
        else:
            d.remove_edge(e)
            del self._nbr[x][y]
            del self._nbr[y][x]
            delta = -1
        self._rev = d.rev
        return delta

    def remove_spider(self, v: int) -> None:
        self._sync()
        for y in self._nbr[v]:
            del self._nbr[y][v]
        del self._nbr[v]
        self._bnd.pop(v, None)
        self.diagram.remove_vertex(v)
        self._rev = self.diagram.rev

    def add_phase(self, v: int, p: Phase) -> None:
        self.diagram.add_to_phase(v, p)


def graph_like_violations(d: Diagram) -> list[str]:
    """List the ways in which ``d`` fails to be graph-like."""
    out = []
    for v in d.vertices():
        ty = d.type(v)
        if ty not in (VT.Z, VT.BOUNDARY):
            out.append(f"vertex {v} has type {ty.value}")
    seen = set()
    for e, u, v, et in d.edges():
        if u == v:
            out.append(f"self-loop on {u}")
            continue
        tu, tv = d.type(u), d.type(v)
        if tu is VT.BOUNDARY and tv is VT.BOUNDARY:
            out.append(f"boundary {u} wired directly to boundary {v}")
        elif tu is VT.Z and tv is VT.Z:
            if et is not ET.HADAMARD:
                out.append(f"plain edge between spiders {u}-{v}")
            key = (min(u, v), max(u, v))
            if key in seen:
                out.append(f"parallel edges {u}-{v}")
            seen.add(key)
    return out


# -- extra structural rules ---------------------------------------------------------


def _split_check(d: Diagram, m: Match) -> bool:
    (e,) = m.edges
    (u,) = m.vertices
    a, b, _ = d.edge(e)
    return a != b and u in (a, b)


def _make_split(first: EdgeType) -> "callable":
    def rewrite(d: Diagram, m: Match) -> None:
        (e,) = m.edges
        (u,) = m.vertices
        w = d.other_end(e, u)
        t = d.edge_type(e)
        d.remove_edge(e)
        z = d.add_vertex(VT.Z)
        d.add_edge(u, z, first)
        d.add_edge(z, w, first.compose(t))

    return rewrite


insert_identity = register(Rule("insert_identity", lambda d: [], _split_check, _make_split(ET.SIMPLE)))
insert_hadamard_identity = register(
    Rule("insert_hadamard_identity", lambda d: [], _split_check, _make_split(ET.HADAMARD))
)


def _scalar_spider_check(d: Diagram, m: Match) -> bool:
    (v,) = m.vertices
    return d.type(v) in SPIDERS and not d.incident(v)


def _scalar_spider_rewrite(d: Diagram, m: Match) -> None:
    (v,) = m.vertices
    d.scale(1 + d.phase(v).exp())
    d.remove_vertex(v)


remove_scalar_spider = register(
    Rule(
        "remove_scalar_spider",
        lambda d: [Match("remove_scalar_spider", (v,)) for v in d.vertices() if _scalar_spider_check(d, Match("remove_scalar_spider", (v,)))],
        _scalar_spider_check,
        _scalar_spider_rewrite,
    )
)


# -- local complementation -----------------------------------------------------------


def _lc_local_ok(d: Diagram, v: int) -> bool:
    if d.type(v) is not VT.Z or not d.phase(v).is_proper_clifford():
        return False
    seen = set()
    for e in d.incident(v):
        a, b, et = d.edge(e)
        w = b if a == v else a
        if a == b or et is not ET.HADAMARD or d.type(w) is not VT.Z or w in seen:
            return False
        seen.add(w)
    return True


def _lc_core(g: GraphLikeView, v: int) -> None:
    d = g.diagram
    ns = sorted(g.neighbors(v))
    n = len(ns)
    sign = 1 if d.phase(v) == Phase(1, 2) else -1
    net = -n
    for i, x in enumerate(ns):
        for y in ns[i + 1 :]:
            net += g.toggle(x, y)
        g.add_phase(x, Phase(-sign, 2))
    g.remove_spider(v)
    # Each Hadamard edge is a CZ over sqrt(2), hence the edge-count term.
    d.scale(complex(1, sign) * SQRT2**net)


def _lc_rule_rewrite(d: Diagram, m: Match) -> None:
    _lc_core(GraphLikeView(d, check=False), m.vertices[0])


lc_rule = register(
    Rule(
        "lc_simp",
        lambda d: [Match("lc_simp", (v,)) for v in d.vertices() if _lc_local_ok(d, v) and _is_internal(d, v)],
        lambda d, m: _lc_local_ok(d, m.vertices[0]) and _is_internal(d, m.vertices[0]),
        _lc_rule_rewrite,
    )
)


def _is_internal(d: Diagram, v: int) -> bool:
    return all(d.type(d.other_end(e, v)) is not VT.BOUNDARY for e in d.incident(v))


def lc_simp(g: GraphLikeView, v: int) -> Trace:
    """Remove an internal spider with phase +-pi/2 by local complementation.

    Its neighbourhood is complemented and every neighbour's phase moves by
    minus the removed phase.

    Raises:
        StaleMatchError: if ``v`` is not internal or its phase is not +-pi/2.
    """
    d = g.diagram
    if not (g.is_internal(v) and _lc_local_ok(d, v)):
        raise StaleMatchError(f"lc_simp: vertex {v} is not an internal +-pi/2 spider")
    return [_record(d, "lc_simp", (v,), (), lambda: _lc_core(g, v))]


def _record(d: Diagram, name: str, vs: tuple, es: tuple, fn) -> RewriteStep:
    before = d.scalar.value
    vs0, es0 = set(d._types), set(d._edges)
    fn()
    after = d.scalar.value
    vs1, es1 = set(d._types), set(d._edges)
    corr = after / before if before != 0 else after
    return RewriteStep(
        name,
        vs,
        es,
        corr,
        {
            "removed_vertices": sorted(vs0 - vs1),
            "added_vertices": sorted(vs1 - vs0),
            "removed_edges": sorted(es0 - es1),
            "added_edges": sorted(es1 - es0),
        },
    )


# -- pivoting ---------------------------------------------------------------------------


def _pivot_local_ok(d: Diagram, u: int, v: int) -> bool:
    if u == v:
        return False
    for x in (u, v):
        if d.type(x) is not VT.Z or not d.phase(x).is_pauli():
            return False
        seen = set()
        for e in d.incident(x):
            a, b, et = d.edge(e)
            w = b if a == x else a
            if a == b or et is not ET.HADAMARD or d.type(w) is not VT.Z or w in seen:
                return False
            seen.add(w)
    return v in {d.other_end(e, u) for e in d.incident(u)}


def _pivot_core(g: GraphLikeView, u: int, v: int) -> None:
    d = g.diagram
    nu = g.neighbors(u) - {v}
    nv = g.neighbors(v) - {u}
    common = nu & nv
    only_u = nu - common
    only_v = nv - common
    pu, pv = d.phase(u), d.phase(v)
    net = -(len(nu) + len(nv) + 1)
    for a_set, b_set in ((only_u, only_v), (only_u, common), (only_v, common)):
        for x in sorted(a_set):
            for y in sorted(b_set):
                net += g.toggle(x, y)
    for x in only_u:
        g.add_phase(x, pv)
    for x in only_v:
        g.add_phase(x, pu)
    for x in common:
        g.add_phase(x, pu + pv + Phase(1))
    g.remove_spider(u)
    g.remove_spider(v)
    d.scale((-2 if pu == Phase(1) and pv == Phase(1) else 2) * SQRT2**net)


def _pivot_rule_rewrite(d: Diagram, m: Match) -> None:
    _pivot_core(GraphLikeView(d, check=False), *m.vertices)


pivot_rule = register(
    Rule(
        "pivot_simp",
        lambda d: [],
        lambda d, m: _pivot_local_ok(d, *m.vertices) and all(_is_internal(d, x) for x in m.vertices),
        _pivot_rule_rewrite,
    )
)


def pivot_simp(g: GraphLikeView, u: int, v: int) -> Trace:
    """Remove an adjacent pair of internal Pauli spiders by pivoting along their edge.

    Raises:
        StaleMatchError: if the precondition fails.
    """
    d = g.diagram
    if not (g.is_internal(u) and g.is_internal(v) and _pivot_local_ok(d, u, v)):
        raise StaleMatchError(f"pivot_simp: ({u}, {v}) is not an adjacent internal Pauli pair")
    return [_record(d, "pivot_simp", (u, v), (), lambda: _pivot_core(g, u, v))]


def _unfuse_boundaries(g: GraphLikeView, b: int) -> Trace:
    """Put a fresh identity spider on every boundary wire of ``b``, making ``b`` internal."""
    d = g.diagram
    trace = []
    for bnd in g.boundaries(b):
        (e,) = [x for x in d.edges_between(b, bnd)]
        trace.append(RULES["insert_hadamard_identity"].apply(d, Match("insert_hadamard_identity", (b,), (e,))))
    g._sync()
    return trace


def boundary_pivot(g: GraphLikeView, u: int, b: int) -> Trace:
    """Remove an internal Pauli spider ``u`` whose neighbour ``b`` sits on the boundary.

    The boundary wires of ``b`` are moved onto fresh identity spiders so that
    ``b`` becomes internal. Then ``u`` and ``b`` are pivoted away when ``b`` is
    Pauli; when ``b`` carries +-pi/2 it is removed by local complementation,
    which turns ``u`` into a +-pi/2 spider that is removed the same way.

    Raises:
        StaleMatchError: if ``u`` is not an internal Pauli spider adjacent to ``b``.
    """
    d = g.diagram
    if not (g.is_internal(u) and d.phase(u).is_pauli() and b in g.neighbors(u) and not g.is_internal(b)):
        raise StaleMatchError(f"boundary_pivot: ({u}, {b}) does not match")
    if not d.phase(b).is_clifford():
        raise StaleMatchError(f"boundary_pivot: spider {b} has a non-Clifford phase")
    trace = _unfuse_boundaries(g, b)
    if d.phase(b).is_pauli():
        trace += pivot_simp(g, u, b)
    else:
        trace += lc_simp(g, b)
        trace += lc_simp(g, u)
    return trace


# -- graph-like conversion ---------------------------------------------------------------


def _apply_all(d: Diagram, rule: Rule, trace: Trace) -> bool:
    changed = False
    while True:
        progress = False
        for m in rule.find(d):
            if rule.applies(d, m):
                trace.append(rule.apply(d, m))
                progress = changed = True
        if not progress:
            return changed


def to_graph_like_inplace(d: Diagram) -> Trace:
    """Rewrite ``d`` into graph-like form and return the trace."""
    for v in d.vertices():
        if d.type(v) is VT.H_BOX and not (len(d.incident(v)) == 2 and abs(d.label(v) + 1) < 1e-12):
            raise DiagramError(f"H-box {v} cannot be expressed with Hadamard edges")
    trace: Trace = []
    for v in d.vertices():
        if d.type(v) is VT.X:
            trace.append(color_change.apply(d, Match("color_change", (v,))))
    while True:
        changed = _apply_all(d, cancel_hh, trace)
        changed |= _apply_all(d, spider_fusion, trace)
        changed |= _apply_all(d, hbox_to_edge, trace)
        changed |= _apply_all(d, remove_self_loop, trace)
        changed |= _apply_all(d, hopf, trace)
        if not changed:
            break
    for e, u, v, _ in list(d.edges()):
        if d.type(u) is VT.BOUNDARY and d.type(v) is VT.BOUNDARY:
            trace.append(RULES["insert_identity"].apply(d, Match("insert_identity", (u,), (e,))))
    return trace


def to_graph_like(d: Diagram) -> tuple[GraphLikeView, Trace]:
    """Convert a copy of ``d`` to graph-like form.

    The conversion colour-changes every X-spider, cancels Hadamard pairs, fuses
    spiders, turns Hadamard boxes into Hadamard edges, removes self-loops and
    cancels parallel Hadamard edges in pairs. Boundaries wired straight to
    each other get an identity spider in between.

    Returns:
        The view on the converted copy and the trace that produced it.

    Raises:
        DiagramError: if ``d`` holds H-boxes other than plain Hadamards.
    """
    g = d.copy()
    trace = to_graph_like_inplace(g)
    return GraphLikeView(g), trace


# -- full reduction -------------------------------------------------------------------------


def _lc_candidates(g: GraphLikeView) -> list[int]:
    d = g.diagram
    return [v for v in g.internal_spiders() if d.phase(v).is_proper_clifford()]


def _pivot_candidate(g: GraphLikeView) -> Optional[tuple[int, int]]:
    d = g.diagram
    for u in g.internal_spiders():
        if not d.phase(u).is_pauli():
            continue
        for v in sorted(g.neighbors(u)):
            if v > u and g.is_internal(v) and d.phase(v).is_pauli():
                return u, v
    return None


def _boundary_pivot_candidate(g: GraphLikeView) -> Optional[tuple[int, int]]:
    d = g.diagram
    for u in g.internal_spiders():
        if not d.phase(u).is_pauli():
            continue
        ns = sorted(g.neighbors(u))
        if not ns or not all(not g.is_internal(x) and d.phase(x).is_clifford() for x in ns):
            continue
        pauli = [x for x in ns if d.phase(x).is_pauli()]
        return u, (pauli[0] if pauli else ns[0])
    return None


def _reduce_graph(g: GraphLikeView) -> Trace:
    d = g.diagram
    trace: Trace = []
    while True:
        progress = False
        for v in g.internal_spiders():
            if d.has_vertex(v) and not g.neighbors(v):
                trace.append(remove_scalar_spider.apply(d, Match("remove_scalar_spider", (v,))))
                g._sync()
                progress = True
        for v in _lc_candidates(g):
            if d.has_vertex(v) and g.is_internal(v) and d.phase(v).is_proper_clifford():
                trace += lc_simp(g, v)
                progress = True
        while True:
            p = _pivot_candidate(g)
            if p is None:
                break
            trace += pivot_simp(g, *p)
            progress = True
        if not progress:
            bp = _boundary_pivot_candidate(g)
            if bp is not None:
                trace += boundary_pivot(g, *bp)
                progress = True
        if not progress:
            break
    return trace


def full_reduce_inplace(d: Diagram) -> Trace:
    """Graph-like conversion followed by exhaustive Clifford simplification, in place."""
    trace = to_graph_like_inplace(d)
    g = GraphLikeView(d)
    trace += _reduce_graph(g)
    while True:
        ms = fuse_phase_gadgets.find(d)
        if not ms:
            break
        trace.append(fuse_phase_gadgets.apply(d, ms[0]))
    return trace


def full_reduce(d: Diagram) -> tuple[GraphLikeView, Trace]:
    """Simplify a copy of ``d`` with local complementation and pivoting.

    Clifford input ends with no internal spiders. Non-Clifford spiders are left
    in place and phase gadgets with equal targets are fused at the end.
    """
    g = d.copy()
    trace = full_reduce_inplace(g)
    return GraphLikeView(g), trace


# -- Clifford amplitudes and GSLC form -------------------------------------------------------


def _basis_effects(c: Circuit, bits_in, bits_out) -> Diagram:
    from .graph import compose, make_generator, tensor
    from .translate import circuit_to_diagram

    def layer(bits, effect: bool) -> Diagram:
        out = Diagram()
        for b in bits:
            s = make_generator("xspider", 1 if effect else 0, 0 if effect else 1, Phase(int(b)))
            s.scale(1 / SQRT2)
            out = tensor(out, s)
        return out

    return compose(compose(layer(bits_in, False), circuit_to_diagram(c, "gadgets")), layer(bits_out, True))


def clifford_amplitude(c: Circuit, bits_in=None, bits_out=None) -> complex:
    """Amplitude ``<out|C|in>`` of a Clifford circuit by diagram reduction.

    Both bit strings default to all zeros.

    Raises:
        NotCliffordError: if a gate has a non-Clifford phase.
    """
    if not c.is_clifford():
        raise NotCliffordError("circuit contains non-Clifford gates")
    n = c.qubit_count
    bits_in = [0] * n if bits_in is None else list(bits_in)
    bits_out = [0] * n if bits_out is None else list(bits_out)
    d = _basis_effects(c, bits_in, bits_out)
    full_reduce_inplace(d)
    if d.scalar.is_zero:
        return 0j
    for v in d.vertices():
        if d.incident(v):
            raise NotCliffordError("reduction left connected spiders behind")  # pragma: no cover
        remove_scalar_spider.apply(d, Match("remove_scalar_spider", (v,)))
    return 0j if d.scalar.is_zero else d.scalar.value


def gslc_form(state: Diagram) -> tuple[dict[int, set[int]], list[list[Phase]], Diagram]:
    """Graph state with local Cliffords for a Clifford state diagram.

    Returns:
        ``(graph, local_cliffords, reduced)`` where ``graph`` maps each output
        index to the set of adjacent output indices, ``local_cliffords[i]`` is
        ``[z1, x, z2]``, the phases applied on output ``i`` after the graph
        state in that order, and ``reduced`` is the graph-like diagram the
        form was read from. The form matches ``state`` up to a scalar.

    Raises:
        NotCliffordError: on non-Clifford phases, or if the input has inputs.
    """
    if state.inputs:
        raise NotCliffordError("gslc_form expects a state (no inputs)")
    for v in state.vertices():
        if state.is_spider(v) and not state.phase(v).is_clifford():
            raise NotCliffordError(f"spider {v} has a non-Clifford phase")
    g, _ = full_reduce(state)
    d = g.diagram
    for v in d.vertices():
        if d.is_spider(v) and not d.incident(v):
            remove_scalar_spider.apply(d, Match("remove_scalar_spider", (v,)))
    # Every spider keeps its first output; later outputs move onto a fresh
    # spider joined to it by a Hadamard edge.
    owned: set[int] = set()
    for o in d.outputs:
        (e,) = d.incident(o)
        s = d.other_end(e, o)
        if s in owned:
            RULES["insert_hadamard_identity"].apply(d, Match("insert_hadamard_identity", (s,), (e,)))
        owned.add(s)
    g = GraphLikeView(d)
    if g.internal_spiders():
        raise NotCliffordError("reduction left internal spiders behind")  # pragma: no cover
    spider_of = {}
    for i, o in enumerate(d.outputs):
        (e,) = d.incident(o)
        spider_of[d.other_end(e, o)] = i
    graph: dict[int, set[int]] = {i: set() for i in range(len(d.outputs))}
    local: list[list[Phase]] = []
    for i, o in enumerate(d.outputs):
        (e,) = d.incident(o)
        s = d.other_end(e, o)
        graph[i] = {spider_of[t] for t in g.neighbors(s)}
        alpha = d.phase(s)
        if d.edge_type(e) is ET.HADAMARD:
            # H = Z(pi/2) X(pi/2) Z(pi/2) up to a global phase
            local.append([alpha + HALF_PI, HALF_PI, HALF_PI])
        else:
            local.append([alpha, Phase(0), Phase(0)])
    return graph, local, d


def gslc_diagram(graph: dict[int, set[int]], local: list[list[Phase]]) -> Diagram:
    """Build the diagram of a graph state followed by local Clifford phases."""
    d = Diagram()
    n = len(local)
    vs = [d.add_vertex(VT.Z) for _ in range(n)]
    for i in range(n):
        for j in graph[i]:
            if i < j:
                d.add_edge(vs[i], vs[j], ET.HADAMARD)
    outs = []
    for i, (z1, x, z2) in enumerate(local):
        cur = vs[i]
        d.set_phase(cur, z1)
        xs = d.add_vertex(VT.X, phase=x)
        d.add_edge(cur, xs)
        zs = d.add_vertex(VT.Z, phase=z2)
        d.add_edge(xs, zs)
        o = d.add_vertex(VT.BOUNDARY)
        d.add_edge(zs, o)
        outs.append(o)
    d.outputs = outs
    return d
