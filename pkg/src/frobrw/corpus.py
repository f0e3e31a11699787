"""Seeded random generators for terms, graphs and hosts used by the tests and the CLI.

Every generator takes a ``random.Random`` so that a fixed seed reproduces the
same corpus. Default sizes stay within ten nodes and ten edges.
"""
from __future__ import annotations

import itertools
import random
from typing import Sequence

from .cospan import InterfacedGraph, cospan_iso
from .hypergraph import Hypergraph
from .semantics import IB_BLACK, IB_RED, FiniteModel, eval_term
from .signature import Signature, Word, changer_label, make_signature
from .term import Changer, Frob, Gen, Id, Par, Seq, Sym, Term, generators_used, interp, term_type

MAX_WIRES = 4


def _atoms_from(sig: Signature, dom: Word) -> list[Term]:
    """Every atomic term whose domain is exactly ``dom``."""
    out: list[Term] = [g_term for g_term in (Gen(g.name) for g in sig.generators)
                       if sig.generator(g_term.name).arity == dom]
    if len(dom) == 2:
        out.append(Sym(dom[:1], dom[1:]))
    if len(dom) == 2 and dom[0] == dom[1] and dom[0] in sig.frobenius:
        out.append(Frob(dom[0], "mult"))
    if len(dom) == 1:
        c = dom[0]
        if c in sig.frobenius:
            out += [Frob(c, "comult"), Frob(c, "counit")]
        out += [Changer(a, b) for a, b in sig.changers if a == c]
    if not dom:
        out += [Frob(c, "unit") for c in sorted(sig.frobenius)]
    return out


def random_term_from(rng: random.Random, sig: Signature, dom: Word, depth: int = 3) -> Term:
    """A random well-typed term with the given domain; codomains are kept short."""
    dom = tuple(dom)
    choice = rng.random()
    if depth <= 0 or choice < 0.15:
        atoms = [a for a in _atoms_from(sig, dom) if len(term_type(a, sig)[1]) <= MAX_WIRES]
        if atoms and rng.random() < 0.8:
            return rng.choice(atoms)
        return Id(dom)
    if choice < 0.55 and len(dom) >= 1:
        cut = rng.randint(0, len(dom))
        left = random_term_from(rng, sig, dom[:cut], depth - 1)
        right = random_term_from(rng, sig, dom[cut:], depth - 1)
        t = Par(left, right)
    else:
        first = random_term_from(rng, sig, dom, depth - 1)
        t = Seq(first, random_term_from(rng, sig, term_type(first, sig)[1], depth - 1))
    if len(term_type(t, sig)[1]) > MAX_WIRES:
        return Id(dom)
    return t


def random_word(rng: random.Random, sig: Signature, max_len: int = 3) -> Word:
    names = sig.colour_names
    return tuple(rng.choice(names) for _ in range(rng.randint(0, max_len)))


def random_term(rng: random.Random, sig: Signature, depth: int = 3) -> Term:
    return random_term_from(rng, sig, random_word(rng, sig), depth)


def contexts_for(rng: random.Random, a: Term, b: Term, sig: Signature, depth: int = 2) -> tuple[Term, Term]:
    """The same random context around two terms of one type.

    The context is (before + id) ; (id + t + id) ; after, with random before and after.
    """
    dom, cod = term_type(a, sig)
    before = random_term_from(rng, sig, random_word(rng, sig, 2), depth)
    upper = term_type(before, sig)[1]
    lower = random_word(rng, sig, 1)
    after = random_term_from(rng, sig, upper + cod + lower, depth)

    def plug(t: Term) -> Term:
        return Seq(Seq(Par(before, Id(dom + lower)), Par(Par(Id(upper), t), Id(lower))), after)
    return plug(a), plug(b)


# graphs

def random_group_host(rng: random.Random, max_edges: int = 10) -> InterfacedGraph:
    """An acyclic m/u/i host where every node has at most one producing edge.

    Nodes are created in order and each either is a free input or gets one
    producer drawing its sources from earlier nodes.
    """
    g = Hypergraph()
    n = rng.randint(2, max_edges + 1)
    free = []
    arity = {"m": 2, "u": 0, "i": 1}
    for j in range(n):
        g.add_node("w")
        label = rng.choice("mmuii-") if j else rng.choice("u-")
        if label == "-" or len(g.edges) >= max_edges:
            free.append(j)
            continue
        g.add_edge(label, [rng.randrange(j) for _ in range(arity[label])], [j])
    ins = [v for v in free if rng.random() < 0.7]
    outs = [rng.randrange(n) for _ in range(rng.randint(0, 2))]
    return InterfacedGraph(g, ins + outs, len(ins))


def random_ib_host(rng: random.Random, max_black: int = 8, max_red: int = 8) -> InterfacedGraph:
    """A bipartite black/red host with changer edges in random directions and legs on black nodes."""
    g = Hypergraph()
    blacks = [g.add_node(IB_BLACK) for _ in range(rng.randint(1, max_black))]
    reds = [g.add_node(IB_RED) for _ in range(rng.randint(0, max_red))]
    for _ in range(rng.randint(0, 2 * len(blacks) + len(reds)) if reds else 0):
        b, r = rng.choice(blacks), rng.choice(reds)
        if rng.random() < 0.5:
            g.add_edge(changer_label(IB_BLACK, IB_RED), [b], [r])
        else:
            g.add_edge(changer_label(IB_RED, IB_BLACK), [r], [b])
    ins = [rng.choice(blacks) for _ in range(rng.randint(0, 3))]
    outs = [rng.choice(blacks) for _ in range(rng.randint(0, 3))]
    return InterfacedGraph(g, ins + outs, len(ins))


def random_two_coloured_graph(rng: random.Random, colours: Sequence[str] = ("w", "w2"),
                              max_nodes: int = 10) -> InterfacedGraph:
    """Random changer-only graph with plenty of x -> c -> x round trips."""
    a, b = colours
    g = Hypergraph()
    for _ in range(rng.randint(2, max_nodes)):
        g.add_node(rng.choice(colours))
    nodes = sorted(g.nodes)
    for _ in range(rng.randint(1, 10)):
        v = rng.choice(nodes)
        others = [u for u in nodes if g.nodes[u] != g.nodes[v]]
        if not others:
            continue
        c, x = g.nodes[v], g.nodes[others[0]]
        if rng.random() < 0.6:
            # a round trip through v
            g.add_edge(changer_label(x, c), [rng.choice(others)], [v])
            g.add_edge(changer_label(c, x), [v], [rng.choice(others)])
        else:
            u = rng.choice(others)
            if rng.random() < 0.5:
                g.add_edge(changer_label(c, x), [v], [u])
            else:
                g.add_edge(changer_label(x, c), [u], [v])
    legs = [rng.choice(nodes) for _ in range(rng.randint(0, 3))]
    return InterfacedGraph(g, legs, rng.randint(0, len(legs)))


def random_profile(rng: random.Random, max_len: int = 5, max_count: int = 4) -> list[int]:
    """A depth profile without trailing zeros."""
    n = rng.randint(0, max_len)
    word = [rng.randint(0, max_count) for _ in range(n)]
    if word:
        word[-1] = rng.randint(1, max_count)
    return word


# rules with equal semantics

def small_signature() -> Signature:
    return make_signature({"f": (1, 1), "g": (2, 1), "h": (1, 2)})


def random_model(rng: random.Random, sig: Signature, carrier: Sequence[int] = (0, 1)) -> FiniteModel:
    relations = {}
    for gen in sig.generators:
        width = len(gen.arity) + len(gen.coarity)
        tuples = list(itertools.product(carrier, repeat=width))
        relations[gen.name] = frozenset(t for t in tuples if rng.random() < 0.5)
    colours = {c: tuple(carrier) for c in sig.colour_names}
    return FiniteModel(colours, relations)


def _edge_covered(g: Hypergraph) -> bool:
    touched = {v for e in g.edges.values() for v in e.endpoints()}
    return bool(g.edges) and touched == set(g.nodes)


def sound_rule_pairs(rng: random.Random, sig: Signature, model: FiniteModel, count: int,
                     tries: int = 20000) -> list[tuple[Term, Term]]:
    """Pairs (lhs, rhs) of one type that the model cannot tell apart.

    The lhs always uses a generator and has no node without an edge (such
    nodes match anywhere and swamp the step count), the two sides are not
    isomorphic as cospans, and no lhs is used twice.
    """
    buckets: dict = {}
    pairs: list[tuple[Term, Term]] = []
    used: set = set()
    for _ in range(tries):
        dom = tuple(sig.default_colour for _ in range(rng.randint(1, 2)))
        t = random_term_from(rng, sig, dom, 3)
        key = (term_type(t, sig), eval_term(model, t, sig).pairs)
        graph = interp(t, sig)
        for other, other_graph in buckets.get(key, []):
            (lhs, lhs_graph), rhs = ((t, graph), other) if generators_used(t) else ((other, other_graph), t)
            if lhs in used or not _edge_covered(lhs_graph.graph) or cospan_iso(graph, other_graph):
                continue
            pairs.append((lhs, rhs))
            used.add(lhs)
            break
        buckets.setdefault(key, []).append((t, graph))
        if len(pairs) >= count:
            break
    return pairs
