"""Several Frobenius structures on one sort.

Each extra Frobenius family is moved to a colour of its own and connected to
the base colour by changer generators. ``chrome`` does this on terms,
``upsilon_normalize`` removes changer round trips (x -> c -> x) from graphs,
and ``transform_rule`` prepares a chromed rule so that matching against
upsilon-normal hosts is complete.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .cospan import Cospan, InterfacedGraph, fold, unfold
from .dpoi import Derivation, Rule, first_match, rewrite_closure, rule_from_terms
from .errors import RewriteError, TermError
from .hypergraph import Hypergraph, UnionFind, quotient
from .signature import Signature, changer_label, make_signature, parse_changer_label
from .term import Changer, Frob, Gen, Id, Par, Seq, Sym, Term, interp, par, seq


@dataclass
class PolySignature:
    """A monochrome base signature with ``families`` Frobenius structures, and its coloured version."""
    base: Signature
    poly: Signature
    colours: list[str]

    @property
    def base_colour(self) -> str:
        return self.colours[0]


def make_poly_signature(base: Signature, families: int = 2, colour_names: list[str] | None = None) -> PolySignature:
    if len(base.colours) != 1:
        raise RewriteError("the base signature must be monochrome")
    if families < 2:
        raise RewriteError("at least two Frobenius families are needed")
    root = base.default_colour
    colours = list(colour_names) if colour_names else [root] + [f"{root}{k + 1}" for k in range(1, families)]
    if len(colours) != families or colours[0] != root:
        raise RewriteError("colour names must start with the base colour, one per family")
    gens = [(g.name, g.arity, g.coarity) for g in base.generators]
    # star topology: every extra colour talks only to the base colour
    changers = [pair for c in colours[1:] for pair in ((root, c), (c, root))]
    poly = make_signature(gens, colours=colours, frobenius=colours, changers=changers)
    return PolySignature(base, poly, colours)


def chrome(t: Term, ps: PolySignature) -> Term:
    """Move Frobenius family k (k >= 1) to colour k, wrapping it in changers."""
    if isinstance(t, Frob):
        if t.family == 0:
            return t
        if t.family >= len(ps.colours):
            raise TermError(f"Frobenius family {t.family + 1} has no colour")
        c, k = t.colour, ps.colours[t.family]
        into, back = Changer(c, k), Changer(k, c)
        if t.kind == "mult":
            return seq(par(into, into), Frob(k, "mult"), back)
        if t.kind == "unit":
            return seq(Frob(k, "unit"), back)
        if t.kind == "comult":
            return seq(into, Frob(k, "comult"), par(back, back))
        return seq(into, Frob(k, "counit"))
    if isinstance(t, Seq):
        return Seq(chrome(t.left, ps), chrome(t.right, ps))
    if isinstance(t, Par):
        return Par(chrome(t.left, ps), chrome(t.right, ps))
    if isinstance(t, (Gen, Id, Sym, Changer)):
        return t
    raise TypeError(f"not a term: {t!r}")


# upsilon normalization

def upsilon_redexes(ig: InterfacedGraph) -> list[int]:
    """Nodes without legs whose only connections are an in-changer x>c and an out-changer c>x."""
    g = ig.graph
    legs = set(ig.interface)
    table = g.connection_table()
    out = []
    for v in sorted(g.nodes):
        conns = table[v]
        if v in legs or len(conns) != 2:
            continue
        into = [c for c in conns if c.polarity == "target"]
        outof = [c for c in conns if c.polarity == "source"]
        if len(into) != 1 or len(outof) != 1:
            continue
        a_pair = parse_changer_label(g.edges[into[0].edge].label)
        b_pair = parse_changer_label(g.edges[outof[0].edge].label)
        if a_pair is None or b_pair is None or into[0].edge == outof[0].edge:
            continue
        c = g.nodes[v]
        if a_pair[1] == c and b_pair[0] == c and a_pair[0] == b_pair[1]:
            out.append(v)
    return out


def contract_redex(ig: InterfacedGraph, v: int) -> InterfacedGraph:
    """Delete redex v with its two changers and merge the neighbours they lead to."""
    g = ig.graph.copy()
    into = next(e for e in g.in_edges(v))
    outof = next(e for e in g.out_edges(v))
    a, b = g.edges[into].sources[0], g.edges[outof].targets[0]
    g.remove_edge(into)
    g.remove_edge(outof)
    g.remove_node(v)
    uf = UnionFind(g.nodes)
    uf.union(a, b)
    merged, rep = quotient(g, uf)
    return InterfacedGraph(merged, [rep[x] for x in ig.interface], ig.split)


def _recolour_scalars(ig: InterfacedGraph, least: str) -> InterfacedGraph:
    """Give every isolated, legless node the colour ``least``.

    A closed loop of changers collapses to a lone node whose colour depends on
    the contraction order; all such lone nodes are equal, so pick one colour.
    """
    g = ig.graph
    busy = {v for e in g.edges.values() for v in e.endpoints()} | set(ig.interface)
    lone = [v for v in g.nodes if v not in busy]
    if not lone:
        return ig
    out = g.copy()
    for v in lone:
        out.nodes[v] = least
    return InterfacedGraph(out, ig.interface, ig.split)


def upsilon_normalize(ig: InterfacedGraph, seed: int | None = None) -> InterfacedGraph:
    """Contract redexes until none remain; ``seed`` picks them in a random order instead of by id."""
    rng = random.Random(seed) if seed is not None else None
    current = ig
    least = min(ig.graph.nodes.values(), default="")
    while True:
        redexes = upsilon_redexes(current)
        if not redexes:
            return _recolour_scalars(current, least).compact()
        v = rng.choice(redexes) if rng else redexes[0]
        current = contract_redex(current, v)


def upsilon_normalize_cospan(c: Cospan, seed: int | None = None) -> Cospan:
    return unfold(upsilon_normalize(fold(c), seed))


def upsilon_rules(ps: PolySignature) -> list[Rule]:
    """The round-trip contractions as DPOI rules, both directions for every extra colour."""
    rules = []
    root = ps.base_colour
    for c in ps.colours[1:]:
        for x, y in ((root, c), (c, root)):
            left = Seq(Changer(x, y), Changer(y, x))
            rules.append(rule_from_terms(f"upsilon[{x},{y}]", left, Id((x,)), ps.poly))
    return rules


def is_upsilon_normal(ig: InterfacedGraph) -> bool:
    return not upsilon_redexes(ig)


# rule transform

def boundary_changers(rule: Rule) -> list[tuple[int, int, int]]:
    """(leg position, changer edge, far node) for every leg that can be pulled through a changer."""
    lhs = rule.lhs
    g = lhs.graph
    legs = rule.k_to_l
    table = g.connection_table()
    out = []
    for pos, v in enumerate(legs):
        if legs.count(v) != 1 or len(table[v]) != 1:
            continue
        eid = table[v][0].edge
        e = g.edges[eid]
        if parse_changer_label(e.label) is None:
            continue
        far = e.targets[0] if e.sources[0] == v else e.sources[0]
        if g.nodes[far] != g.nodes[v]:
            out.append((pos, eid, far))
    return out


def transform_rule(rule: Rule, ps: PolySignature | None = None) -> Rule:
    """Upsilon-normalize the LHS, then move boundary changers of the LHS over to the RHS."""
    if ps is not None and any(c != ps.base_colour for c in rule.interface_word):
        raise RewriteError(f"rule {rule.name!r} has a boundary off the base colour")
    lhs = upsilon_normalize_cospan(rule.lhs)
    rule = Rule(rule.name, lhs, rule.rhs)
    pulls = boundary_changers(rule)
    lg = lhs.graph.copy()
    rg = rule.rhs.graph.copy()
    l_legs = list(rule.k_to_l)
    r_legs = list(rule.k_to_r)
    for pos, eid, far in pulls:
        e = lg.edges[eid]
        near = l_legs[pos]
        lg.remove_edge(eid)
        lg.remove_node(near)
        l_legs[pos] = far
        fresh = rg.add_node(lg.nodes[far])
        if e.sources[0] == near:
            rg.add_edge(e.label, [r_legs[pos]], [fresh])
        else:
            rg.add_edge(e.label, [fresh], [r_legs[pos]])
        r_legs[pos] = fresh
    k = len(rule.lhs.inputs)
    new_l = Cospan(lg, l_legs[:k], l_legs[k:]).compact()
    new_r = Cospan(rg, r_legs[:k], r_legs[k:]).compact()
    return Rule(f"{rule.name}*", new_l, new_r)


def lhs_has_upsilon_redex(rule: Rule) -> bool:
    return bool(upsilon_redexes(fold(rule.lhs)))


# the whole pipeline

def chrome_rule(name: str, left: Term, right: Term, ps: PolySignature) -> Rule:
    return rule_from_terms(name, chrome(left, ps), chrome(right, ps), ps.poly)


def prepare_host(t: Term, ps: PolySignature) -> InterfacedGraph:
    return upsilon_normalize(fold(interp(chrome(t, ps), ps.poly)))


def multifrob_rewrite(rules: list[tuple[str, Term, Term]], host: Term, ps: PolySignature,
                      max_steps: int = 100, transform: bool = True) -> Derivation:
    """Chrome, interpret, fold and upsilon-normalize the host, then rewrite with the
    (transformed) chromed rules, upsilon-normalizing after every step.

    With ``transform=False`` the chromed rules are used as they are, which can get stuck.
    """
    prepared = [chrome_rule(name, left, right, ps) for name, left, right in rules]
    if transform:
        prepared = [transform_rule(r, ps) for r in prepared]
    return rewrite_closure(prepared, prepare_host(host, ps), max_steps,
                           strategy=first_match, normalize=upsilon_normalize)


def empty_graph() -> InterfacedGraph:
    return InterfacedGraph(Hypergraph(), [], 0)
