"""Hypothesis strategies for small hypergraphs and cospans."""
from __future__ import annotations

import random

from hypothesis import strategies as st

from frobrw.cospan import Cospan
from frobrw.hypergraph import Hypergraph

SHAPES = {"f": (1, 1), "g": (2, 1), "h": (1, 2), "k": (0, 1)}


@st.composite
def hypergraphs(draw, max_nodes: int = 6, max_edges: int = 5, colours=("w",)) -> Hypergraph:
    g = Hypergraph()
    n = draw(st.integers(1, max_nodes))
    for _ in range(n):
        g.add_node(draw(st.sampled_from(colours)))
    for _ in range(draw(st.integers(0, max_edges))):
        label = draw(st.sampled_from(sorted(SHAPES)))
        k, l = SHAPES[label]
        node = st.integers(0, n - 1)
        g.add_edge(label, [draw(node) for _ in range(k)], [draw(node) for _ in range(l)])
    return g


@st.composite
def cospans(draw, max_legs: int = 3) -> Cospan:
    g = draw(hypergraphs())
    node = st.sampled_from(sorted(g.nodes))
    return Cospan(g, draw(st.lists(node, max_size=max_legs)), draw(st.lists(node, max_size=max_legs)))


def shuffled(g: Hypergraph, seed: int) -> tuple[Hypergraph, dict[int, int]]:
    """A copy with node and edge ids permuted, plus the node renaming."""
    rng = random.Random(seed)
    nodes = sorted(g.nodes)
    perm = dict(zip(nodes, rng.sample(range(len(nodes)), len(nodes))))
    edges = sorted(g.edges)
    eperm = dict(zip(edges, rng.sample(range(len(edges)), len(edges))))
    h = Hypergraph({perm[v]: c for v, c in g.nodes.items()})
    for eid in sorted(edges, key=eperm.get):
        e = g.edges[eid]
        h.add_edge(e.label, [perm[v] for v in e.sources], [perm[v] for v in e.targets], eperm[eid])
    return h, perm
