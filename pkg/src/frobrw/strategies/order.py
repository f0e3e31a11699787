"""Branching degree and depth, depth profiles, and the reverse-lexicographic order on them."""
from __future__ import annotations

from typing import Sequence

from ..cospan import InterfacedGraph
from ..errors import RewriteError
from ..hypergraph import Hypergraph, degree, is_acyclic

Profile = list[int]


def revlex_less(a: Sequence[int], b: Sequence[int]) -> bool:
    """Shorter words are smaller; equal lengths compare from the last letter backwards."""
    if len(a) != len(b):
        return len(a) < len(b)
    for x, y in zip(reversed(a), reversed(b)):
        if x != y:
            return x < y
    return False


def branching_degree(g: Hypergraph, interface: Sequence[int], v: int) -> int:
    return max(0, degree(g, v) + list(interface).count(v) - 2)


class _Depths:
    """Memoized branching depths of one acyclic graph."""

    def __init__(self, g: Hypergraph, interface: Sequence[int]):
        if not is_acyclic(g):
            raise RewriteError("branching depth needs an acyclic graph")
        self.g = g
        table = g.connection_table()
        legs = list(interface)
        self.weight = {v: max(0, len(table[v]) + legs.count(v) - 2) for v in g.nodes}
        self.out = {v: [c.edge for c in table[v] if c.polarity == "source"] for v in g.nodes}
        self.edge_memo: dict[int, int] = {}
        self.node_memo: dict[int, int] = {}

    def node(self, v: int) -> int:
        # cheapest total weight from v (inclusive) to a node that feeds no edge
        if v not in self.node_memo:
            outs = self.out[v]
            rest = min(self.edge(e) for e in outs) if outs else 0
            self.node_memo[v] = self.weight[v] + rest
        return self.node_memo[v]

    def edge(self, eid: int) -> int:
        if eid not in self.edge_memo:
            targets = self.g.edges[eid].targets
            # an edge without targets is already at the bottom of the graph
            self.edge_memo[eid] = min((self.node(t) for t in targets), default=0)
        return self.edge_memo[eid]


def branching_depth(g: Hypergraph, interface: Sequence[int], edge: int) -> int:
    """Least total branching degree along a path from the edge down to a sink node."""
    return _Depths(g, interface).edge(edge)


def profile(g: Hypergraph | InterfacedGraph, interface: Sequence[int] | None = None) -> Profile:
    """Number of edges at each branching depth, up to the deepest one."""
    if isinstance(g, InterfacedGraph):
        g, interface = g.graph, g.interface
    depths = _Depths(g, interface or [])
    values = [depths.edge(e) for e in sorted(g.edges)]
    counts = [0] * (max(values, default=-1) + 1)
    for d in values:
        counts[d] += 1
    return counts
