"""Interacting bialgebras: black (copying) and red (adding) spiders joined by colour changers.

Hosts are bipartite graphs whose edges are single changers between a black and
a red node. The reduction eliminates interior black nodes one at a time with
K_mn, then tidies the boundary so the result reads off as a system of GF(2)
equations (or, with the colours swapped, as a spanning set).

Throughout, the "variable" colour is the one being eliminated and the
"equation" colour is the other one; a colour-swapped run just exchanges them.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..cospan import Cospan, InterfacedGraph
from ..dpoi import Rule
from ..errors import RewriteError
from ..hypergraph import Hypergraph, is_acyclic
from ..multifrob import chrome_rule, make_poly_signature, upsilon_normalize
from ..semantics import IB_BLACK, IB_RED
from ..signature import changer_label, make_signature, parse_changer_label
from ..term import parse

# rule pack

AXIOMS = [
    ("b", "frob2.mult ; frob.comult",
     "(frob.comult + frob.comult) ; (id[1] + sym[1,1] + id[1]) ; (frob2.mult + frob2.mult)"),
    ("cp1", "frob2.unit ; frob.comult", "frob2.unit + frob2.unit"),
    ("cp2", "frob2.mult ; frob.counit", "frob.counit + frob.counit"),
    ("u", "frob2.unit ; frob.counit", "id[0]"),
    ("capcup", "frob.unit ; frob.comult", "frob2.unit ; frob2.comult"),
]


def axiom_rules(black: str = IB_BLACK, red: str = IB_RED) -> list[Rule]:
    """The bialgebra axioms, with the second Frobenius family moved to the red colour."""
    base = make_signature({}, colours=(black,))
    ps = make_poly_signature(base, 2, [black, red])
    return [chrome_rule(name, parse(l, base), parse(r, base), ps) for name, l, r in AXIOMS]


def _graph_rule(name: str, colours: dict[str, str], interface: list[str],
                left: list[tuple[str, str]], right: list[tuple[str, str]],
                left_nodes: list[str] = (), right_nodes: list[str] = (),
                right_interface: list[str] | None = None) -> Rule:
    """A rule from named nodes; every edge is a changer between its endpoints' colours.

    The interface becomes the input boundary of both sides. ``right_interface``
    lets several interface legs land on one RHS node (or vice versa).
    """
    def side(extra, edges, legs):
        g = Hypergraph()
        ids = {}
        for n in list(dict.fromkeys(list(legs) + list(extra))):
            ids[n] = g.add_node(colours[n])
        for a, b in edges:
            g.add_edge(changer_label(colours[a], colours[b]), [ids[a]], [ids[b]])
        return Cospan(g, [ids[n] for n in legs], [])
    return Rule(name, side(left_nodes, left, interface),
                side(right_nodes, right, right_interface or interface))


def derived_rules(black: str = IB_BLACK, red: str = IB_RED) -> list[Rule]:
    """D (reverse an edge), H (cancel a parallel pair), U1/U2 (drop isolated nodes), CA (merge through a red node)."""
    c = {"b": black, "r": red, "b1": black, "b2": black, "x": black}
    return [
        _graph_rule("D", c, ["b", "r"], [("b", "r")], [("r", "b")]),
        _graph_rule("H", c, ["b", "r"], [("b", "r"), ("b", "r")], []),
        _graph_rule("U1", c, [], [], [], left_nodes=["b"]),
        _graph_rule("U2", c, [], [], [], left_nodes=["r"]),
        _graph_rule("CA", c, ["b1", "b2"], [("b1", "r"), ("b2", "r")], [],
                    left_nodes=["r"], right_interface=["x", "x"]),
    ]


def kmn_rule(m: int, n: int, black: str = IB_BLACK, red: str = IB_RED) -> Rule:
    """K_mn: black v joined to red w, v also to red r_i (i < m), w also to black b_j (j < n).

    The RHS drops v and w and joins every b_j to every r_i.
    """
    reds = [f"r{i}" for i in range(m)]
    blacks = [f"b{j}" for j in range(n)]
    colours = {"v": black, "w": red, **{r: red for r in reds}, **{b: black for b in blacks}}
    left = [("v", "w")] + [("v", r) for r in reds] + [(b, "w") for b in blacks]
    right = [(b, r) for r in reds for b in blacks]
    return _graph_rule(f"K[{m},{n}]", colours, reds + blacks, left, right, left_nodes=["v", "w"])


@dataclass
class IbRulePack:
    axioms: list[Rule]
    derived: list[Rule]

    def kmn(self, m: int, n: int) -> Rule:
        return kmn_rule(m, n)


def rule_pack() -> IbRulePack:
    return IbRulePack(axiom_rules(), derived_rules())


# graph surgery

def _endpoints(g: Hypergraph, eid: int, var: str) -> tuple[int, int]:
    """(variable node, equation node) of a changer edge."""
    e = g.edges[eid]
    a, b = e.sources[0], e.targets[0]
    return (a, b) if g.nodes[a] == var else (b, a)


def _check_host(ig: InterfacedGraph, var: str, eq: str) -> None:
    g = ig.graph
    for v, c in g.nodes.items():
        if c not in (var, eq):
            raise RewriteError(f"node {v} has colour {c!r}")
    for eid, e in g.edges.items():
        pair = parse_changer_label(e.label)
        if pair is None or len(e.sources) != 1 or len(e.targets) != 1 or set(pair) != {var, eq}:
            raise RewriteError(f"edge {eid} ({e.label}) is not a changer between the two colours")
        if (g.nodes[e.sources[0]], g.nodes[e.targets[0]]) != pair:
            raise RewriteError(f"edge {eid} does not match its endpoint colours")


def neighbours(ig: InterfacedGraph, v: int, var: str) -> dict[int, list[int]]:
    """Nodes across from v, each with the edges leading there."""
    out: dict[int, list[int]] = {}
    for eid in sorted(ig.graph.edges):
        a, b = _endpoints(ig.graph, eid, var)
        if a == v:
            out.setdefault(b, []).append(eid)
        elif b == v:
            out.setdefault(a, []).append(eid)
    return out


def _set_direction(g: Hypergraph, eid: int, var: str, toward_eq: bool) -> bool:
    """Point an edge var->eq (or eq->var); True when it had to be reversed."""
    a, b = _endpoints(g, eid, var)
    want = (a, b) if toward_eq else (b, a)
    e = g.edges[eid]
    if (e.sources[0], e.targets[0]) == want:
        return False
    g.remove_edge(eid)
    g.add_edge(changer_label(g.nodes[want[0]], g.nodes[want[1]]), [want[0]], [want[1]], edge_id=eid)
    return True


def _parallel_pair(ig: InterfacedGraph, var: str) -> tuple[int, int] | None:
    seen: dict[tuple[int, int], int] = {}
    for eid in sorted(ig.graph.edges):
        key = _endpoints(ig.graph, eid, var)
        if key in seen:
            return seen[key], eid
        seen[key] = eid
    return None


def _isolated(ig: InterfacedGraph, colour: str) -> list[int]:
    g = ig.graph
    busy = {v for e in g.edges.values() for v in e.endpoints()} | set(ig.interface)
    return sorted(v for v, c in g.nodes.items() if c == colour and v not in busy)


def interior_nodes(ig: InterfacedGraph, colour: str) -> list[int]:
    legs = set(ig.interface)
    return sorted(v for v, c in ig.graph.nodes.items() if c == colour and v not in legs)


def apply_Kmn(host: InterfacedGraph, v: int, w: int, black: str = IB_BLACK, red: str = IB_RED) -> InterfacedGraph:
    """Eliminate interior node v (colour ``black``) through its neighbour w (colour ``red``).

    Edge directions are ignored, as the D rule allows. Parallel pairs created
    by the new complete bipartite edges are cancelled straight away.
    """
    g = host.graph
    if g.nodes.get(v) != black or v in host.interface:
        raise RewriteError(f"node {v} is not an interior {black} node")
    if g.nodes.get(w) != red or w in host.interface:
        raise RewriteError(f"node {w} is not a legless {red} node")
    around_v = neighbours(host, v, black)
    around_w = neighbours(host, w, black)
    if len(around_v.get(w, [])) % 2 == 0:
        raise RewriteError(f"nodes {v} and {w} are not joined")
    others_v = [r for r, es in sorted(around_v.items()) if r != w and len(es) % 2]
    others_w = [b for b, es in sorted(around_w.items()) if b != v and len(es) % 2]
    out = g.copy()
    for eid in {e for es in around_v.values() for e in es} | {e for es in around_w.values() for e in es}:
        out.remove_edge(eid)
    out.remove_node(v)
    out.remove_node(w)
    result = InterfacedGraph(out, list(host.interface), host.split)
    for r in others_v:
        for b in others_w:
            out.add_edge(changer_label(black, red), [b], [r])
    while (pair := _parallel_pair(result, black)) is not None:
        for eid in pair:
            out.remove_edge(eid)
    return result


# the strategy

@dataclass
class IbLogEntry:
    step: str
    rule: str
    graph: InterfacedGraph

    def record(self) -> dict:
        return {"step": self.step, "rule": self.rule,
                "nodes": len(self.graph.graph.nodes), "edges": len(self.graph.graph.edges)}


@dataclass
class IbRun:
    original: InterfacedGraph
    start: InterfacedGraph
    final: InterfacedGraph
    initial_interior: int
    iterations: int = 0
    swapped: bool = False
    log: list[IbLogEntry] = field(default_factory=list)


def swap_interface(host: InterfacedGraph, black: str = IB_BLACK, red: str = IB_RED) -> InterfacedGraph:
    """Move every leg onto a fresh red node joined to the old black node by one changer."""
    g = host.graph.copy()
    legs = []
    for v in host.interface:
        fresh = g.add_node(red)
        g.add_edge(changer_label(red, black), [fresh], [v])
        legs.append(fresh)
    return InterfacedGraph(g, legs, host.split)


def _leg_sides(ig: InterfacedGraph) -> dict[int, tuple[int, int]]:
    split = ig.split if ig.split is not None else len(ig.interface)
    sides: dict[int, list[int]] = {}
    for i, v in enumerate(ig.interface):
        sides.setdefault(v, [0, 0])[0 if i < split else 1] += 1
    return {v: (a, b) for v, (a, b) in sides.items()}


class _Reducer:
    def __init__(self, run: IbRun, var: str, eq: str):
        self.run, self.var, self.eq = run, var, eq
        self.current = run.start

    def log(self, step: str, rule: str) -> None:
        self.run.log.append(IbLogEntry(step, rule, self.current.copy()))

    def edit(self) -> Hypergraph:
        self.current = self.current.copy()
        return self.current.graph

    def orient(self, step: str, toward_eq) -> bool:
        changed = False
        for eid in sorted(self.current.graph.edges):
            a, _ = _endpoints(self.current.graph, eid, self.var)
            want = toward_eq(a)
            g = self.current.graph.copy()
            if _set_direction(g, eid, self.var, want):
                self.current = InterfacedGraph(g, list(self.current.interface), self.current.split)
                self.log(step, "D")
                changed = True
        return changed

    def upsilon(self, step: str) -> None:
        normal = upsilon_normalize(self.current)
        if len(normal.graph.nodes) != len(self.current.graph.nodes):
            self.current = normal
            self.log(step, "upsilon")

    def tidy(self, step: str) -> bool:
        """H and U2 until neither applies."""
        changed = False
        while True:
            pair = _parallel_pair(self.current, self.var)
            if pair is not None:
                g = self.edit()
                for eid in pair:
                    g.remove_edge(eid)
                self.log(step, "H")
                changed = True
                continue
            lonely = _isolated(self.current, self.eq)
            if lonely:
                self.edit().remove_node(lonely[0])
                self.log(step, "U2")
                changed = True
                continue
            return changed

    def eliminate(self) -> bool:
        """One pass of the main loop; False once no interior variable node is left."""
        self.tidy("1")
        interior = interior_nodes(self.current, self.var)
        if not interior:
            return False
        v = interior[0]
        around = [n for n, es in sorted(neighbours(self.current, v, self.var).items()) if len(es) % 2]
        if not around:
            self.edit().remove_node(v)
            self.log("2", "U1")
        else:
            m = len(neighbours(self.current, v, self.var)) - 1
            n = len(neighbours(self.current, around[0], self.var)) - 1
            self.current = apply_Kmn(self.current, v, around[0], self.var, self.eq)
            self.log("2", f"K[{m},{n}]")
        self.run.iterations += 1
        return True

    def split_legs(self) -> None:
        """Converse of CA: a node with several legs on one side only becomes a chain."""
        for v, (ins, outs) in sorted(_leg_sides(self.current).items()):
            one_sided = (ins >= 2 and not outs) or (outs >= 2 and not ins)
            if self.current.graph.nodes[v] != self.var or not one_sided:
                continue
            g = self.edit()
            positions = [i for i, x in enumerate(self.current.interface) if x == v]
            chain = [v] + [g.add_node(self.var) for _ in positions[1:]]
            legs = list(self.current.interface)
            for pos, node in zip(positions, chain):
                legs[pos] = node
            for a, b in zip(chain, chain[1:]):
                r = g.add_node(self.eq)
                g.add_edge(changer_label(self.var, self.eq), [a], [r])
                g.add_edge(changer_label(self.var, self.eq), [b], [r])
            self.current = InterfacedGraph(g, legs, self.current.split)
            self.log("4", "CA^-1")

    def finish(self) -> None:
        while True:
            sides = _leg_sides(self.current)
            changed = self.orient("5", lambda a: sides.get(a, (0, 0))[0] > 0)
            before = len(self.current.graph.nodes)
            self.upsilon("5")
            changed |= len(self.current.graph.nodes) != before
            changed |= self.tidy("5")
            if not changed:
                return


def ib_reduce(host: InterfacedGraph, colour_swap: bool = False,
              black: str = IB_BLACK, red: str = IB_RED) -> IbRun:
    """Reduce an IB host whose legs all sit on black nodes.

    The default run eliminates interior black nodes and ends in cospan form.
    ``colour_swap`` first moves the legs onto red nodes and eliminates interior
    red nodes instead, ending in span form.
    """
    for v in host.interface:
        if host.graph.nodes[v] != black:
            raise RewriteError(f"interface node {v} is not {black}; insert changers first")
    _check_host(host, black, red)
    var, eq = (red, black) if colour_swap else (black, red)
    prepared = swap_interface(host, black, red) if colour_swap else host
    run = IbRun(host, prepared, prepared, 0, swapped=colour_swap)
    reducer = _Reducer(run, var, eq)
    # all edges var -> eq first, so the main loop never meets an upsilon redex
    reducer.orient("0", lambda a: True)
    reducer.upsilon("0")
    run.start = reducer.current
    run.initial_interior = len(interior_nodes(reducer.current, var))
    while reducer.eliminate():
        pass
    reducer.split_legs()
    reducer.finish()
    run.final = reducer.current.compact()
    return run


def ib_is_reduced(host: InterfacedGraph, black: str = IB_BLACK, red: str = IB_RED) -> tuple[bool, str | None]:
    """Reduced form check; ``black`` is the colour that carries the legs.

    Returns (True, None) or (False, reason naming the first offending node).
    """
    g = host.graph
    if not is_acyclic(g):
        return False, "graph has a directed cycle"
    sides = _leg_sides(host)
    for v in sorted(g.nodes):
        ins, outs = sides.get(v, (0, 0))
        if g.nodes[v] == red:
            if ins or outs:
                return False, f"node {v} ({red}) carries a leg"
            continue
        if ins and outs:
            continue
        if ins == 1 and not g.in_edges(v):
            continue
        if outs == 1 and not g.out_edges(v):
            continue
        if not ins and not outs:
            return False, f"node {v} is interior"
        return False, f"node {v} is neither an input, output nor through node"
    return True, None
