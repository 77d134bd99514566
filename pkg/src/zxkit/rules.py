"""Local rewrite rules with exact scalar bookkeeping.

Every rule exposes ``find_<name>(d)`` returning :class:`Match` objects and
``apply_<name>(d, match)`` which mutates ``d`` and returns a
:class:`RewriteStep`. Each rule multiplies the global scalar by the factor
needed to keep the diagram's evaluation unchanged, so rewrites are equalities
rather than proportionalities.

Rules are written once for a generic colour; the colour-swapped variants come
for free because an X-spider is exactly an H-conjugated Z-spider.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence, Union

from .graph import SPIDERS, Diagram, EdgeType, VertexType
from .phase import Phase

SQRT2 = math.sqrt(2)

ET = EdgeType
VT = VertexType


class StaleMatchError(ValueError):
    """Raised when a match no longer applies to the diagram."""


@dataclass(frozen=True)
class Match:
    """Binding of a rule pattern to diagram ids."""

    rule_name: str
    vertices: tuple[int, ...]
    edges: tuple[int, ...] = ()


@dataclass
class RewriteStep:
    """Record of one rule application.

    ``delta`` lists the vertex and edge ids removed and added by the step.
    """

    rule_name: str
    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    scalar_correction: complex
    delta: dict = field(default_factory=dict)

    def match(self) -> Match:
        return Match(self.rule_name, tuple(self.vertices), tuple(self.edges))

    def to_dict(self) -> dict:
        c = complex(self.scalar_correction)
        return {
            "rule": self.rule_name,
            "vertices": list(self.vertices),
            "edges": list(self.edges),
            "scalar_correction": [c.real, c.imag],
            "delta": self.delta,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RewriteStep":
        re, im = data["scalar_correction"]
        return cls(data["rule"], tuple(data["vertices"]), tuple(data["edges"]), complex(re, im), data.get("delta", {}))


Trace = list[RewriteStep]


class Rule:
    """A named local rewrite: a matcher, a freshness check and an applier."""

    def __init__(
        self,
        name: str,
        find: Callable[[Diagram], list[Match]],
        check: Callable[[Diagram, Match], bool],
        rewrite: Callable[[Diagram, Match], None],
    ) -> None:
        self.name = name
        self._find = find
        self._check = check
        self._rewrite = rewrite

    def find(self, d: Diagram) -> list[Match]:
        return self._find(d)

    def applies(self, d: Diagram, m: Match) -> bool:
        if m.rule_name != self.name:
            return False
        if not all(d.has_vertex(v) for v in m.vertices) or not all(d.has_edge(e) for e in m.edges):
            return False
        return self._check(d, m)

    def apply(self, d: Diagram, m: Match) -> RewriteStep:
        if not self.applies(d, m):
            raise StaleMatchError(f"{self.name}: match {m.vertices}/{m.edges} does not apply")
        before = d.scalar.value
        vs, es = set(d._types), set(d._edges)
        self._rewrite(d, m)
        after = d.scalar.value
        corr = (after / before) if before != 0 else (0j if after == 0 else after)
        vs2, es2 = set(d._types), set(d._edges)
        delta = {
            "removed_vertices": sorted(vs - vs2),
            "added_vertices": sorted(vs2 - vs),
            "removed_edges": sorted(es - es2),
            "added_edges": sorted(es2 - es),
        }
        return RewriteStep(self.name, m.vertices, m.edges, corr, delta)


RULES: dict[str, Rule] = {}


def register(rule: Rule) -> Rule:
    RULES[rule.name] = rule
    return rule


def apply_rule(d: Diagram, m: Match) -> RewriteStep:
    """Apply a match with whichever registered rule it names."""
    return RULES[m.rule_name].apply(d, m)


# -- helpers --------------------------------------------------------------------


def other_color(ty: VertexType) -> VertexType:
    return VT.X if ty is VT.Z else VT.Z


def _has_loops(d: Diagram, v: int) -> bool:
    return bool(d.self_loops(v))


def _edges_of_type(d: Diagram, u: int, v: int, et: EdgeType) -> list[int]:
    return [e for e in d.edges_between(u, v) if d.edge_type(e) is et]


def _legs(d: Diagram, v: int, skip: Iterable[int] = ()) -> list[tuple[int, int, EdgeType]]:
    """``(edge, other end, type)`` for every non-loop edge of ``v`` not in ``skip``."""
    skip = set(skip)
    out = []
    for e in d.incident(v):
        if e in skip:
            continue
        a, b, et = d.edge(e)
        if a == b:
            continue
        out.append((e, b if a == v else a, et))
    return out


# -- spider fusion --------------------------------------------------------------


def _fusion_find(d: Diagram) -> list[Match]:
    seen = set()
    out = []
    for _, u, v, et in d.edges():
        if et is not ET.SIMPLE or u == v:
            continue
        if d.type(u) in SPIDERS and d.type(u) is d.type(v):
            key = (min(u, v), max(u, v))
            if key not in seen:
                seen.add(key)
                out.append(Match("spider_fusion", key))
    return sorted(out, key=lambda m: m.vertices)


def _fusion_check(d: Diagram, m: Match) -> bool:
    u, v = m.vertices
    return u != v and d.type(u) in SPIDERS and d.type(u) is d.type(v) and bool(_edges_of_type(d, u, v, ET.SIMPLE))


def _fusion_rewrite(d: Diagram, m: Match) -> None:
    u, v = m.vertices
    d.add_to_phase(u, d.phase(v))
    for e in d.incident(v):
        a, b, et = d.edge(e)
        if a == b:
            d.add_edge(u, u, et)
            continue
        w = b if a == v else a
        if w == u:
            # plain loops contribute nothing; Hadamard ones are kept as loops on u
            if et is ET.HADAMARD:
                d.add_edge(u, u, et)
        else:
            d.add_edge(u, w, et)
    d.remove_vertex(v)


spider_fusion = register(Rule("spider_fusion", _fusion_find, _fusion_check, _fusion_rewrite))


# -- identity removal ---------------------------------------------------------


def _identity_ok(d: Diagram, v: int) -> bool:
    if d.type(v) not in SPIDERS or not d.phase(v).is_zero() or _has_loops(d, v):
        return False
    inc = d.incident(v)
    if len(inc) != 2:
        return False
    w1, w2 = d.other_end(inc[0], v), d.other_end(inc[1], v)
    return not (w1 == w2 and d.type(w1) is not VT.Z and d.type(w1) is not VT.X)


def _identity_find(d: Diagram) -> list[Match]:
    return [Match("remove_identity", (v,)) for v in d.vertices() if _identity_ok(d, v)]


def _identity_rewrite(d: Diagram, m: Match) -> None:
    (v,) = m.vertices
    e1, e2 = d.incident(v)
    w1, w2 = d.other_end(e1, v), d.other_end(e2, v)
    et = d.edge_type(e1).compose(d.edge_type(e2))
    d.remove_vertex(v)
    d.add_edge(w1, w2, et)


remove_identity = register(
    Rule("remove_identity", _identity_find, lambda d, m: _identity_ok(d, m.vertices[0]), _identity_rewrite)
)


# -- Hadamard handling ----------------------------------------------------------


def _is_had_box(d: Diagram, v: int) -> bool:
    return (
        d.type(v) is VT.H_BOX
        and abs(d.label(v) + 1) < 1e-12
        and len(d.incident(v)) == 2
        and not _has_loops(d, v)
    )


def _hh_check(d: Diagram, m: Match) -> bool:
    h1, h2 = m.vertices
    if h1 == h2 or not (_is_had_box(d, h1) and _is_had_box(d, h2)):
        return False
    if len(d.edges_between(h1, h2)) != 1:
        return False
    w1 = [x for x in d.neighbors(h1) if x != h2][0]
    w2 = [x for x in d.neighbors(h2) if x != h1][0]
    return not (w1 == w2 and d.type(w1) is VT.H_BOX)


def _hh_find(d: Diagram) -> list[Match]:
    out = []
    for v in d.vertices():
        if d.type(v) is VT.H_BOX:
            for w in d.neighbors(v):
                if w > v and _hh_check(d, Match("cancel_hh", (v, w))):
                    out.append(Match("cancel_hh", (v, w)))
    return out


def _hh_rewrite(d: Diagram, m: Match) -> None:
    h1, h2 = m.vertices
    (mid,) = d.edges_between(h1, h2)
    (e1,) = [e for e in d.incident(h1) if e != mid]
    (e2,) = [e for e in d.incident(h2) if e != mid]
    w1, w2 = d.other_end(e1, h1), d.other_end(e2, h2)
    et = d.edge_type(e1).compose(d.edge_type(mid)).compose(d.edge_type(e2))
    d.remove_vertex(h1)
    d.remove_vertex(h2)
    d.add_edge(w1, w2, et)
    d.scale(2)


cancel_hh = register(Rule("cancel_hh", _hh_find, _hh_check, _hh_rewrite))


def _h2e_check(d: Diagram, m: Match) -> bool:
    (h,) = m.vertices
    if not _is_had_box(d, h):
        return False
    ws = [d.other_end(e, h) for e in d.incident(h)]
    return not (ws[0] == ws[1] and d.type(ws[0]) is not VT.Z and d.type(ws[0]) is not VT.X)


def _h2e_find(d: Diagram) -> list[Match]:
    return [Match("hbox_to_edge", (v,)) for v in d.vertices() if d.type(v) is VT.H_BOX and _h2e_check(d, Match("hbox_to_edge", (v,)))]


def _h2e_rewrite(d: Diagram, m: Match) -> None:
    (h,) = m.vertices
    e1, e2 = d.incident(h)
    w1, w2 = d.other_end(e1, h), d.other_end(e2, h)
    et = d.edge_type(e1).compose(d.edge_type(e2)).toggle()
    d.remove_vertex(h)
    d.add_edge(w1, w2, et)
    d.scale(SQRT2)


hbox_to_edge = register(Rule("hbox_to_edge", _h2e_find, _h2e_check, _h2e_rewrite))


# -- pi copy ------------------------------------------------------------------------


def _pi_copy_check(d: Diagram, m: Match) -> bool:
    x, z = m.vertices
    (e,) = m.edges
    if d.type(x) not in SPIDERS or d.phase(x) != Phase(1) or _has_loops(d, x):
        return False
    if d.type(z) is not other_color(d.type(x)) or _has_loops(d, z):
        return False
    inc = d.incident(x)
    if len(inc) != 2 or e not in inc or d.edge_type(e) is not ET.SIMPLE or d.other_end(e, x) != z:
        return False
    other = inc[0] if inc[1] == e else inc[1]
    return d.other_end(other, x) != z


def _pi_copy_find(d: Diagram) -> list[Match]:
    out = []
    for x in d.vertices():
        if d.type(x) in SPIDERS and d.phase(x) == Phase(1):
            for e in d.incident(x):
                z = d.other_end(e, x)
                m = Match("pi_copy", (x, z), (e,))
                if z != x and _pi_copy_check(d, m):
                    out.append(m)
    return out


def _pi_copy_rewrite(d: Diagram, m: Match) -> None:
    x, z = m.vertices
    (e,) = m.edges
    color = d.type(x)
    (other,) = [f for f in d.incident(x) if f != e]
    w, tw = d.other_end(other, x), d.edge_type(other)
    legs = _legs(d, z, skip=(e,))
    alpha = d.phase(z)
    d.remove_vertex(x)
    for f, y, t in legs:
        d.remove_edge(f)
        p = d.add_vertex(color, phase=Phase(1))
        d.add_edge(z, p)
        d.add_edge(p, y, t)
    d.add_edge(z, w, tw)
    d.set_phase(z, -alpha)
    d.scale(alpha.exp())


pi_copy = register(Rule("pi_copy", _pi_copy_find, _pi_copy_check, _pi_copy_rewrite))


# -- state copy ---------------------------------------------------------------------


def _state_copy_check(d: Diagram, m: Match) -> bool:
    s, z = m.vertices
    if s == z or d.type(s) not in SPIDERS or not d.phase(s).is_pauli():
        return False
    inc = d.incident(s)
    if len(inc) != 1 or d.edge_type(inc[0]) is not ET.SIMPLE or d.other_end(inc[0], s) != z:
        return False
    return d.type(z) is other_color(d.type(s)) and not _has_loops(d, z)


def _state_copy_find(d: Diagram) -> list[Match]:
    out = []
    for s in d.vertices():
        if d.type(s) in SPIDERS and len(d.incident(s)) == 1:
            z = d.other_end(d.incident(s)[0], s)
            m = Match("state_copy", (s, z))
            if _state_copy_check(d, m):
                out.append(m)
    return out


def _state_copy_rewrite(d: Diagram, m: Match) -> None:
    s, z = m.vertices
    color = d.type(s)
    a = 0 if d.phase(s).is_zero() else 1
    alpha = d.phase(z)
    legs = _legs(d, z, skip=d.incident(s))
    d.remove_vertex(s)
    d.remove_vertex(z)
    for _, y, t in legs:
        p = d.add_vertex(color, phase=Phase(a))
        d.add_edge(p, y, t)
    d.scale(SQRT2 ** (1 - len(legs)) * (alpha.exp() if a else 1))


state_copy = register(Rule("state_copy", _state_copy_find, _state_copy_check, _state_copy_rewrite))


# -- colour change ------------------------------------------------------------------


def _cc_find(d: Diagram) -> list[Match]:
    return [Match("color_change", (v,)) for v in d.vertices() if d.type(v) in SPIDERS]


def _cc_rewrite(d: Diagram, m: Match) -> None:
    (v,) = m.vertices
    d.set_type(v, other_color(d.type(v)))
    for e in d.incident(v):
        a, b, et = d.edge(e)
        if a != b:
            d.set_edge_type(e, et.toggle())


color_change = register(Rule("color_change", _cc_find, lambda d, m: d.type(m.vertices[0]) in SPIDERS, _cc_rewrite))


# -- bialgebra ---------------------------------------------------------------------


def _bialg_check(d: Diagram, m: Match) -> bool:
    u, v = m.vertices
    if d.type(u) is not VT.Z or d.type(v) is not VT.X:
        return False
    if not (d.phase(u).is_zero() and d.phase(v).is_zero()):
        return False
    if _has_loops(d, u) or _has_loops(d, v):
        return False
    es = d.edges_between(u, v)
    return len(es) == 1 and d.edge_type(es[0]) is ET.SIMPLE


def _bialg_find(d: Diagram) -> list[Match]:
    out = []
    for u in d.vertices():
        if d.type(u) is VT.Z:
            for v in d.neighbors(u):
                m = Match("bialgebra", (u, v))
                if _bialg_check(d, m):
                    out.append(m)
    return out


def _bialg_rewrite(d: Diagram, m: Match) -> None:
    u, v = m.vertices
    (e,) = d.edges_between(u, v)
    ulegs = _legs(d, u, skip=(e,))
    vlegs = _legs(d, v, skip=(e,))
    d.remove_vertex(u)
    d.remove_vertex(v)
    xs = []
    for _, w, t in ulegs:
        x = d.add_vertex(VT.X)
        d.add_edge(x, w, t)
        xs.append(x)
    for _, w, t in vlegs:
        z = d.add_vertex(VT.Z)
        d.add_edge(z, w, t)
        for x in xs:
            d.add_edge(x, z)
    n, k = len(ulegs), len(vlegs)
    d.scale(SQRT2 ** ((n - 1) * (k - 1)))


bialgebra = register(Rule("bialgebra", _bialg_find, _bialg_check, _bialg_rewrite))


# -- Hopf ---------------------------------------------------------------------------


def _hopf_edges(d: Diagram, u: int, v: int) -> list[int]:
    if d.type(u) not in SPIDERS or d.type(v) not in SPIDERS or u == v:
        return []
    et = ET.SIMPLE if d.type(u) is not d.type(v) else ET.HADAMARD
    return _edges_of_type(d, u, v, et)


def _hopf_find(d: Diagram) -> list[Match]:
    out = []
    for u in d.vertices():
        for v in d.neighbors(u):
            if v > u and len(_hopf_edges(d, u, v)) >= 2:
                out.append(Match("hopf", (u, v)))
    return out


def _hopf_rewrite(d: Diagram, m: Match) -> None:
    u, v = m.vertices
    es = _hopf_edges(d, u, v)
    d.remove_edge(es[0])
    d.remove_edge(es[1])
    d.scale(0.5)


hopf = register(Rule("hopf", _hopf_find, lambda d, m: len(_hopf_edges(d, *m.vertices)) >= 2, _hopf_rewrite))


# -- self loops ---------------------------------------------------------------------


def _loop_check(d: Diagram, m: Match) -> bool:
    (v,) = m.vertices
    (e,) = m.edges
    a, b, _ = d.edge(e)
    return d.type(v) in SPIDERS and a == b == v


def _loop_find(d: Diagram) -> list[Match]:
    out = []
    for v in d.vertices():
        if d.type(v) in SPIDERS:
            out.extend(Match("remove_self_loop", (v,), (e,)) for e in d.self_loops(v))
    return out


def _loop_rewrite(d: Diagram, m: Match) -> None:
    (v,) = m.vertices
    (e,) = m.edges
    if d.edge_type(e) is ET.HADAMARD:
        d.add_to_phase(v, Phase(1))
        d.scale(1 / SQRT2)
    d.remove_edge(e)


remove_self_loop = register(Rule("remove_self_loop", _loop_find, _loop_check, _loop_rewrite))


# -- phase gadgets ------------------------------------------------------------------


def gadget_of(d: Diagram, leaf: int) -> Optional[tuple[int, frozenset[int]]]:
    """Return ``(hub, targets)`` if ``leaf`` is the phase spider of a phase gadget.

    The leaf and targets share one colour. The hub is phase-free and either
    of the other colour with plain edges, or of the same colour with Hadamard
    edges. Each target must be joined to the hub exactly once.
    """
    if d.type(leaf) not in SPIDERS or len(d.incident(leaf)) != 1 or _has_loops(d, leaf):
        return None
    (e,) = d.incident(leaf)
    hub = d.other_end(e, leaf)
    if hub == leaf or d.type(hub) not in SPIDERS or not d.phase(hub).is_zero() or _has_loops(d, hub):
        return None
    colour = d.type(leaf)
    et = ET.SIMPLE if d.type(hub) is not colour else ET.HADAMARD
    if d.edge_type(e) is not et:
        return None
    targets = []
    for f, w, t in _legs(d, hub, skip=(e,)):
        if t is not et or d.type(w) is not colour or len(d.edges_between(hub, w)) != 1:
            return None
        targets.append(w)
    if not targets or leaf in targets:
        return None
    return hub, frozenset(targets)


def _gadget_find(d: Diagram) -> list[Match]:
    groups: dict[tuple[VertexType, VertexType, frozenset[int]], list[tuple[int, int]]] = {}
    for v in d.vertices():
        g = gadget_of(d, v)
        if g is not None:
            hub, ts = g
            groups.setdefault((d.type(hub), d.type(v), ts), []).append((hub, v))
    out = []
    for key in sorted(groups, key=lambda k: (k[0].value, k[1].value, sorted(k[2]))):
        items = sorted(groups[key])
        if len(items) >= 2:
            (h1, l1), (h2, l2) = items[0], items[1]
            if h1 != h2:
                out.append(Match("fuse_phase_gadgets", (h1, l1, h2, l2)))
    return out


def _gadget_check(d: Diagram, m: Match) -> bool:
    h1, l1, h2, l2 = m.vertices
    g1, g2 = gadget_of(d, l1), gadget_of(d, l2)
    if g1 is None or g2 is None or g1[0] != h1 or g2[0] != h2 or h1 == h2:
        return False
    return (g1[1] == g2[1] and d.type(h1) is d.type(h2) and d.type(l1) is d.type(l2)
            and not ({h2, l2} & g1[1]))


def _gadget_rewrite(d: Diagram, m: Match) -> None:
    h1, l1, h2, l2 = m.vertices
    k = len(gadget_of(d, l1)[1])  # type: ignore[index]
    d.add_to_phase(l1, d.phase(l2))
    d.remove_vertex(l2)
    d.remove_vertex(h2)
    d.scale(SQRT2 ** (1 - k))


fuse_phase_gadgets = register(Rule("fuse_phase_gadgets", _gadget_find, _gadget_check, _gadget_rewrite))


# -- Euler decomposition of a Hadamard -----------------------------------------------


def _euler_check(d: Diagram, m: Match) -> bool:
    if m.edges:
        return len(m.edges) == 1 and d.edge_type(m.edges[0]) is ET.HADAMARD
    return len(m.vertices) == 1 and _is_had_box(d, m.vertices[0])


def _euler_find(d: Diagram) -> list[Match]:
    out = [Match("euler_decompose_hadamard", (), (e,)) for e, _, _, et in d.edges() if et is ET.HADAMARD]
    out += [Match("euler_decompose_hadamard", (v,)) for v in d.vertices() if d.type(v) is VT.H_BOX and _is_had_box(d, v)]
    return out


def _euler_rewrite(d: Diagram, m: Match) -> None:
    if m.edges:
        (e,) = m.edges
        u, v, _ = d.edge(e)
        d.remove_edge(e)
        factor = cmath.exp(-0.25j * math.pi)
        t1 = t2 = ET.SIMPLE
    else:
        (h,) = m.vertices
        e1, e2 = d.incident(h)
        u, v = d.other_end(e1, h), d.other_end(e2, h)
        t1, t2 = d.edge_type(e1), d.edge_type(e2)
        d.remove_vertex(h)
        factor = SQRT2 * cmath.exp(-0.25j * math.pi)
    z1 = d.add_vertex(VT.Z, Phase(1, 2))
    x = d.add_vertex(VT.X, Phase(1, 2))
    z2 = d.add_vertex(VT.Z, Phase(1, 2))
    d.add_edge(u, z1, t1)
    d.add_edge(z1, x)
    d.add_edge(x, z2)
    d.add_edge(z2, v, t2)
    d.scale(factor)


def _euler_check_full(d: Diagram, m: Match) -> bool:
    if not _euler_check(d, m):
        return False
    if m.vertices:
        return len(d.self_loops(m.vertices[0])) == 0
    return True


euler_decompose_hadamard = register(
    Rule("euler_decompose_hadamard", _euler_find, _euler_check_full, _euler_rewrite)
)


# -- public find_/apply_ functions ----------------------------------------------------


def _bind(rule: Rule) -> tuple[Callable[[Diagram], list[Match]], Callable[[Diagram, Match], RewriteStep]]:
    def find(d: Diagram) -> list[Match]:
        return rule.find(d)

    def apply(d: Diagram, m: Match) -> RewriteStep:
        return rule.apply(d, m)

    find.__name__ = f"find_{rule.name}"
    apply.__name__ = f"apply_{rule.name}"
    find.__doc__ = f"All current matches of the {rule.name.replace('_', ' ')} rule, by ascending id."
    apply.__doc__ = f"Apply one {rule.name.replace('_', ' ')} match in place and return the step."
    return find, apply


find_spider_fusion, apply_spider_fusion = _bind(spider_fusion)
find_remove_identity, apply_remove_identity = _bind(remove_identity)
find_cancel_hh, apply_cancel_hh = _bind(cancel_hh)
find_hbox_to_edge, apply_hbox_to_edge = _bind(hbox_to_edge)
find_pi_copy, apply_pi_copy = _bind(pi_copy)
find_state_copy, apply_state_copy = _bind(state_copy)
find_color_change, apply_color_change = _bind(color_change)
find_bialgebra, apply_bialgebra = _bind(bialgebra)
find_hopf, apply_hopf = _bind(hopf)
find_remove_self_loop, apply_remove_self_loop = _bind(remove_self_loop)
find_fuse_phase_gadgets, apply_fuse_phase_gadgets = _bind(fuse_phase_gadgets)
find_euler_decompose_hadamard, apply_euler_decompose_hadamard = _bind(euler_decompose_hadamard)


def euler_decompose_hadamard_at(d: Diagram, target: int, is_edge: bool = True) -> RewriteStep:
    """Decompose the Hadamard edge (or arity-2 H-box vertex) ``target`` into three spiders."""
    m = Match("euler_decompose_hadamard", () if is_edge else (target,), (target,) if is_edge else ())
    return euler_decompose_hadamard.apply(d, m)


# -- strategies -----------------------------------------------------------------------


def _fuse_across_hadamard(d: Diagram, trace: Trace) -> bool:
    """Colour-change an X-spider joined to a Z-spider by a Hadamard edge, then fuse them."""
    for _, u, v, et in d.edges():
        if et is not ET.HADAMARD or u == v:
            continue
        tu, tv = d.type(u), d.type(v)
        if {tu, tv} != {VT.Z, VT.X}:
            continue
        x, z = (u, v) if tu is VT.X else (v, u)
        trace.append(color_change.apply(d, Match("color_change", (x,))))
        trace.append(spider_fusion.apply(d, Match("spider_fusion", (min(x, z), max(x, z)))))
        return True
    return False


def _basic_filters() -> list[tuple[Rule, Callable[[Diagram, Match], bool]]]:
    always = lambda d, m: True  # noqa: E731

    def small_copy(d: Diagram, m: Match) -> bool:
        return len(d.incident(m.vertices[1])) <= 3

    def terminal_pi(d: Diagram, m: Match) -> bool:
        return len(d.incident(m.vertices[1])) == 1

    return [
        (spider_fusion, always),
        (remove_identity, always),
        (state_copy, small_copy),
        (pi_copy, terminal_pi),
        (hopf, always),
        (cancel_hh, always),
        (hbox_to_edge, always),
        (remove_self_loop, always),
    ]


def _run_to_fixpoint(
    d: Diagram, rules: Sequence[tuple[Rule, Callable[[Diagram, Match], bool]]], trace: Trace,
    extra: Optional[Callable[[Diagram, Trace], bool]] = None, max_steps: Optional[int] = None,
) -> None:
    limit = max_steps if max_steps is not None else 10 * max(d.num_vertices(), 1) + 100
    while len(trace) < limit:
        progress = False
        for rule, keep in rules:
            while len(trace) < limit:
                applied = False
                for m in rule.find(d):
                    if rule.applies(d, m) and keep(d, m):
                        trace.append(rule.apply(d, m))
                        applied = True
                if not applied:
                    break
                progress = True
        if extra is not None and len(trace) < limit and extra(d, trace):
            progress = True
        if not progress:
            break


def basic_simp(d: Diagram, max_steps: Optional[int] = None) -> Trace:
    """Fuse, remove identities, copy states and cancel wires until nothing changes.

    Only rules that shrink the diagram are used, so the loop terminates. The
    pass order is fusion, identity removal, copying, Hopf and then Hadamard
    handling.
    """
    trace: Trace = []
    _run_to_fixpoint(d, _basic_filters(), trace, extra=_fuse_across_hadamard, max_steps=max_steps)
    return trace


def simplify(d: Diagram, strategy: Union[str, Sequence[str]] = "basic", max_steps: Optional[int] = None) -> Trace:
    """Simplify ``d`` in place and return the trace of applied steps.

    Args:
        d: diagram to rewrite.
        strategy: ``basic``, ``clifford_full`` or a sequence of registered rule
            names applied in order until none fires.
        max_steps: safety bound on the number of steps for custom strategies.
    """
    if strategy == "basic":
        return basic_simp(d, max_steps=max_steps)
    if strategy == "clifford_full":
        from .simplify import full_reduce_inplace

        return full_reduce_inplace(d)
    if isinstance(strategy, str):
        raise ValueError(f"unknown strategy {strategy!r}")
    always = lambda d, m: True  # noqa: E731
    try:
        rules = [(RULES[name], always) for name in strategy]
    except KeyError as exc:
        raise ValueError(f"unknown rule {exc.args[0]!r}") from None
    trace: Trace = []
    _run_to_fixpoint(d, rules, trace, max_steps=max_steps)
    return trace


# -- traces ---------------------------------------------------------------------------


def trace_to_jsonl(trace: Iterable[RewriteStep]) -> str:
    """One JSON object per line, one line per step."""
    return "".join(json.dumps(s.to_dict(), separators=(",", ":")) + "\n" for s in trace)


def trace_from_jsonl(text: str) -> Trace:
    return [RewriteStep.from_dict(json.loads(line)) for line in text.splitlines() if line.strip()]


def replay(d: Diagram, trace: Iterable[RewriteStep]) -> Diagram:
    """Re-apply a recorded trace to a copy of ``d`` and return the result."""
    out = d.copy()
    for step in trace:
        RULES[step.rule_name].apply(out, step.match())
    return out
