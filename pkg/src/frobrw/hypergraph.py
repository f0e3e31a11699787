"""Labelled directed hypergraphs with ordered endpoints.

Nodes carry a colour name, hyperedges carry a label plus ordered source and
target lists. Node and edge ids are small integers that stay stable until
``compact`` is called explicitly.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple, Sequence

from .errors import ColourClash, GraphError

SOURCE = "source"
TARGET = "target"


@dataclass(frozen=True)
class Edge:
    label: str
    sources: tuple[int, ...]
    targets: tuple[int, ...]

    def endpoints(self) -> tuple[int, ...]:
        return self.sources + self.targets


class Connection(NamedTuple):
    polarity: str
    edge: int
    index: int


@dataclass
class Homomorphism:
    nodes: dict[int, int]
    edges: dict[int, int]

    def sort_key(self) -> tuple:
        return (tuple(self.edges[e] for e in sorted(self.edges)),
                tuple(self.nodes[v] for v in sorted(self.nodes)))

    def is_injective(self) -> bool:
        return (len(set(self.nodes.values())) == len(self.nodes)
                and len(set(self.edges.values())) == len(self.edges))


class Hypergraph:
    __slots__ = ("nodes", "edges")

    def __init__(self, nodes: dict[int, str] | None = None, edges: dict[int, Edge] | None = None):
        self.nodes: dict[int, str] = dict(nodes or {})
        self.edges: dict[int, Edge] = dict(edges or {})

    # construction

    def next_node_id(self) -> int:
        return max(self.nodes, default=-1) + 1

    def next_edge_id(self) -> int:
        return max(self.edges, default=-1) + 1

    def add_node(self, colour: str, node_id: int | None = None) -> int:
        if node_id is None:
            node_id = self.next_node_id()
        elif node_id in self.nodes:
            raise GraphError(f"duplicate node id {node_id}")
        self.nodes[node_id] = colour
        return node_id

    def add_edge(self, label: str, sources: Iterable[int], targets: Iterable[int],
                 edge_id: int | None = None) -> int:
        sources, targets = tuple(sources), tuple(targets)
        for v in sources + targets:
            if v not in self.nodes:
                raise GraphError(f"edge endpoint {v} is not a node")
        if edge_id is None:
            edge_id = self.next_edge_id()
        elif edge_id in self.edges:
            raise GraphError(f"duplicate edge id {edge_id}")
        self.edges[edge_id] = Edge(label, sources, targets)
        return edge_id

    def remove_edge(self, edge_id: int) -> None:
        del self.edges[edge_id]

    def remove_node(self, node_id: int) -> None:
        if any(node_id in e.endpoints() for e in self.edges.values()):
            raise GraphError(f"node {node_id} still has connections")
        del self.nodes[node_id]

    def copy(self) -> Hypergraph:
        return Hypergraph(self.nodes, self.edges)

    # queries

    def connections(self, node_id: int) -> list[Connection]:
        if node_id not in self.nodes:
            raise GraphError(f"unknown node {node_id}")
        out = []
        for eid in sorted(self.edges):
            e = self.edges[eid]
            out.extend(Connection(SOURCE, eid, i) for i, v in enumerate(e.sources) if v == node_id)
            out.extend(Connection(TARGET, eid, i) for i, v in enumerate(e.targets) if v == node_id)
        return out

    def connection_table(self) -> dict[int, list[Connection]]:
        table: dict[int, list[Connection]] = {v: [] for v in self.nodes}
        for eid in sorted(self.edges):
            e = self.edges[eid]
            for i, v in enumerate(e.sources):
                table[v].append(Connection(SOURCE, eid, i))
            for i, v in enumerate(e.targets):
                table[v].append(Connection(TARGET, eid, i))
        return table

    def in_edges(self, node_id: int) -> list[int]:
        return sorted(eid for eid, e in self.edges.items() if node_id in e.targets)

    def out_edges(self, node_id: int) -> list[int]:
        return sorted(eid for eid, e in self.edges.items() if node_id in e.sources)

    def colour_word(self, nodes: Sequence[int]) -> tuple[str, ...]:
        return tuple(self.nodes[v] for v in nodes)

    def labels(self) -> list[str]:
        return sorted(e.label for e in self.edges.values())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Hypergraph) and self.nodes == other.nodes and self.edges == other.edges

    def __repr__(self) -> str:
        es = ", ".join(f"{i}:{e.label}{list(e.sources)}->{list(e.targets)}" for i, e in sorted(self.edges.items()))
        return f"Hypergraph(nodes={dict(sorted(self.nodes.items()))}, edges=[{es}])"

    def compact(self) -> tuple[Hypergraph, dict[int, int], dict[int, int]]:
        """Renumber nodes and edges densely, preserving relative order."""
        node_map = {v: i for i, v in enumerate(sorted(self.nodes))}
        edge_map = {e: i for i, e in enumerate(sorted(self.edges))}
        g = Hypergraph({node_map[v]: c for v, c in self.nodes.items()})
        for eid, e in self.edges.items():
            g.edges[edge_map[eid]] = Edge(e.label, tuple(node_map[v] for v in e.sources),
                                          tuple(node_map[v] for v in e.targets))
        g.nodes = dict(sorted(g.nodes.items()))
        g.edges = dict(sorted(g.edges.items()))
        return g, node_map, edge_map

    def disjoint_union(self, other: Hypergraph) -> tuple[Hypergraph, dict[int, int], dict[int, int]]:
        """Copy of self plus a shifted copy of other; returns the maps for other's ids."""
        g = self.copy()
        node_off, edge_off = g.next_node_id(), g.next_edge_id()
        node_map = {v: v + node_off for v in other.nodes}
        edge_map = {e: e + edge_off for e in other.edges}
        for v, c in other.nodes.items():
            g.nodes[node_map[v]] = c
        for eid, e in other.edges.items():
            g.edges[edge_map[eid]] = Edge(e.label, tuple(node_map[v] for v in e.sources),
                                          tuple(node_map[v] for v in e.targets))
        return g, node_map, edge_map


class UnionFind:
    """Union-find over integers; the smallest member is always the representative."""

    def __init__(self, items: Iterable[int] = ()):
        self.parent: dict[int, int] = {x: x for x in items}

    def add(self, x: int) -> None:
        self.parent.setdefault(x, x)

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:  # path compression
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> int:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        lo, hi = min(ra, rb), max(ra, rb)
        self.parent[hi] = lo
        return lo

    def classes(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for x in sorted(self.parent):
            out.setdefault(self.find(x), []).append(x)
        return out


def quotient(g: Hypergraph, uf: UnionFind) -> tuple[Hypergraph, dict[int, int]]:
    """Merge the nodes of g along uf. Raises ColourClash if a class mixes colours."""
    rep = {v: uf.find(v) for v in g.nodes}
    q = Hypergraph()
    for v in sorted(g.nodes):
        r = rep[v]
        if r in q.nodes and q.nodes[r] != g.nodes[v]:
            raise ColourClash(f"cannot merge node {v} ({g.nodes[v]}) with {r} ({q.nodes[r]})")
        q.nodes[r] = g.nodes[v]
    q.nodes = dict(sorted(q.nodes.items()))
    for eid in sorted(g.edges):
        e = g.edges[eid]
        q.edges[eid] = Edge(e.label, tuple(rep[v] for v in e.sources), tuple(rep[v] for v in e.targets))
    return q, rep


def pushout_discrete(g: Hypergraph, k: Hypergraph, f: Sequence[int], h: Sequence[int]
                     ) -> tuple[Hypergraph, dict[int, int], dict[int, int]]:
    """Glue g and k along a discrete apex: position a identifies f[a] in g with h[a] in k.

    Returns the quotient and the two injections (node maps into the quotient).
    Edge ids of g are kept; those of k are shifted past them.
    """
    if len(f) != len(h):
        raise GraphError("pushout legs differ in length")
    union, kmap, _ = g.disjoint_union(k)
    uf = UnionFind(union.nodes)
    for a, b in zip(f, h):
        if g.nodes[a] != k.nodes[b]:
            raise ColourClash(f"apex position maps to colours {g.nodes[a]} and {k.nodes[b]}")
        uf.union(a, kmap[b])
    result, rep = quotient(union, uf)
    inj_g = {v: rep[v] for v in g.nodes}
    inj_k = {v: rep[kmap[v]] for v in k.nodes}
    return result, inj_g, inj_k


def degree(g: Hypergraph, v: int) -> int:
    """Number of connections of v; repeated attachments to one edge count separately."""
    return len(g.connections(v))


def successors(g: Hypergraph) -> dict[int, set[int]]:
    succ: dict[int, set[int]] = {v: set() for v in g.nodes}
    for e in g.edges.values():
        for s in e.sources:
            succ[s].update(e.targets)
    return succ


def is_acyclic(g: Hypergraph) -> bool:
    """True iff no directed node/edge path visits a node twice."""
    succ = successors(g)
    state: dict[int, int] = {}  # 1 = on stack, 2 = done
    for root in sorted(g.nodes):
        if root in state:
            continue
        stack = [(root, iter(sorted(succ[root])))]
        state[root] = 1
        while stack:
            v, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                state[v] = 2
                stack.pop()
            elif state.get(nxt) == 1:
                return False
            elif nxt not in state:
                state[nxt] = 1
                stack.append((nxt, iter(sorted(succ[nxt]))))
    return True


def node_invariant(g: Hypergraph, table: dict[int, list[Connection]], v: int) -> tuple:
    conns = table[v]
    return (g.nodes[v], len(conns),
            tuple(sorted((g.edges[c.edge].label, c.polarity, c.index) for c in conns)))


def _edge_order(pattern: Hypergraph, seeded: set[int]) -> list[int]:
    # visit edges connected to already-placed nodes first, so candidates get pinned early
    remaining = sorted(pattern.edges)
    placed = set(seeded)
    order = []
    while remaining:
        pick = next((e for e in remaining if placed & set(pattern.edges[e].endpoints())), remaining[0])
        remaining.remove(pick)
        order.append(pick)
        placed.update(pattern.edges[pick].endpoints())
    return order


def _search(pattern: Hypergraph, host: Hypergraph, fixed: dict[int, int] | None,
            injective: bool, node_ok: Callable[[int, int], bool] | None,
            first: bool) -> list[Homomorphism]:
    by_label: dict[tuple, list[int]] = {}
    for eid in sorted(host.edges):
        e = host.edges[eid]
        by_label.setdefault((e.label, len(e.sources), len(e.targets)), []).append(eid)

    nmap: dict[int, int] = {}
    used_nodes: dict[int, int] = {}
    for pv, hv in (fixed or {}).items():
        if pattern.nodes[pv] != host.nodes[hv] or (node_ok and not node_ok(pv, hv)):
            return []
        if injective and used_nodes.get(hv, pv) != pv:
            return []
        nmap[pv] = hv
        used_nodes[hv] = pv
    order = _edge_order(pattern, set(nmap))
    loose = [v for v in sorted(pattern.nodes)
             if v not in nmap and not any(v in pattern.edges[e].endpoints() for e in pattern.edges)]
    emap: dict[int, int] = {}
    used_edges: set[int] = set()
    results: list[Homomorphism] = []

    def bind(pv: int, hv: int, trail: list[int]) -> bool:
        if pv in nmap:
            return nmap[pv] == hv
        if pattern.nodes[pv] != host.nodes[hv]:
            return False
        if injective and hv in used_nodes:
            return False
        if node_ok is not None and not node_ok(pv, hv):
            return False
        nmap[pv] = hv
        if injective:
            used_nodes[hv] = pv
        trail.append(pv)
        return True

    def unbind(trail: list[int]) -> None:
        for pv in trail:
            hv = nmap.pop(pv)
            if injective:
                del used_nodes[hv]

    def place_loose(i: int) -> bool:
        if i == len(loose):
            results.append(Homomorphism(dict(nmap), dict(emap)))
            return first
        pv = loose[i]
        for hv in sorted(host.nodes):
            trail: list[int] = []
            if bind(pv, hv, trail):
                if place_loose(i + 1):
                    return True
            unbind(trail)
        return False

    def place_edge(i: int) -> bool:
        if i == len(order):
            return place_loose(0)
        pe = pattern.edges[order[i]]
        for he_id in by_label.get((pe.label, len(pe.sources), len(pe.targets)), []):
            if injective and he_id in used_edges:
                continue
            he = host.edges[he_id]
            trail: list[int] = []
            if all(bind(p, h, trail) for p, h in zip(pe.endpoints(), he.endpoints())):
                emap[order[i]] = he_id
                used_edges.add(he_id)
                if place_edge(i + 1):
                    return True
                used_edges.discard(he_id)
                del emap[order[i]]
            unbind(trail)
        return False

    place_edge(0)
    results.sort(key=Homomorphism.sort_key)
    return results


def find_homomorphisms(pattern: Hypergraph, host: Hypergraph,
                       fixed: dict[int, int] | None = None) -> list[Homomorphism]:
    """All colour- and label-preserving homomorphisms, sorted by pattern edge id then node id."""
    return _search(pattern, host, fixed, injective=False, node_ok=None, first=False)


def are_isomorphic(g: Hypergraph, h: Hypergraph,
                   fixed: dict[int, int] | None = None) -> Homomorphism | None:
    """An isomorphism g -> h extending the partial node map ``fixed``, or None."""
    if len(g.nodes) != len(h.nodes) or len(g.edges) != len(h.edges):
        return None
    if g.labels() != h.labels() or sorted(g.nodes.values()) != sorted(h.nodes.values()):
        return None
    tg, th = g.connection_table(), h.connection_table()
    inv_g = {v: node_invariant(g, tg, v) for v in g.nodes}
    inv_h = {v: node_invariant(h, th, v) for v in h.nodes}
    if sorted(inv_g.values()) != sorted(inv_h.values()):
        return None
    found = _search(g, h, fixed, injective=True,
                    node_ok=lambda a, b: inv_g[a] == inv_h[b], first=True)
    return found[0] if found else None
