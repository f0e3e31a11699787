"""Double-pushout rewriting with interfaces on hypergraphs.

A rule is a pair of cospans with equal boundary words; its interface K is the
discrete set of boundary positions (inputs then outputs), mapped into L and R
by the legs. When K -> L is injective the pushout complement is unique.
Otherwise the candidates are enumerated: the matched part of the host is cut
out, every remaining attachment to it gets a fresh node, and the fibre over
each matched node is partitioned in all ways. A candidate is kept exactly when
re-gluing L onto it gives back the host.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence, TextIO

from .cospan import Cospan, InterfacedGraph
from .errors import RewriteError
from .hypergraph import Homomorphism, Hypergraph, UnionFind, find_homomorphisms, pushout_discrete, quotient
from .signature import Signature
from .term import Term, interp, parse, term_type

MAX_FIBRE = 8


@dataclass
class Rule:
    name: str
    lhs: Cospan
    rhs: Cospan

    def __post_init__(self):
        if self.lhs.dom != self.rhs.dom or self.lhs.cod != self.rhs.cod:
            raise RewriteError(f"rule {self.name!r}: sides have different boundaries")

    @property
    def interface_word(self) -> tuple[str, ...]:
        return self.lhs.dom + self.lhs.cod

    @property
    def k_to_l(self) -> list[int]:
        return self.lhs.inputs + self.lhs.outputs

    @property
    def k_to_r(self) -> list[int]:
        return self.rhs.inputs + self.rhs.outputs

    def is_left_mono(self) -> bool:
        return len(set(self.k_to_l)) == len(self.k_to_l)

    def inverse(self, name: str | None = None) -> Rule:
        return Rule(name or f"{self.name}^-1", self.rhs.copy(), self.lhs.copy())


def rule_from_terms(name: str, left: Term, right: Term, sig: Signature) -> Rule:
    if term_type(left, sig) != term_type(right, sig):
        raise RewriteError(f"rule {name!r}: sides have different types")
    return Rule(name, interp(left, sig), interp(right, sig))


def parse_rule(line: str, sig: Signature) -> Rule:
    """``name : lterm => rterm``"""
    name, sep, body = line.partition(":")
    left, arrow, right = body.partition("=>")
    if not sep or not arrow or not name.strip():
        raise RewriteError(f"rule line should read 'name : lterm => rterm': {line!r}")
    return rule_from_terms(name.strip(), parse(left, sig), parse(right, sig), sig)


def parse_rule_file(text: str, sig: Signature) -> list[Rule]:
    rules = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rules.append(parse_rule(line, sig))
    return rules


# conditions

@dataclass
class Violation:
    kind: str  # "dangling", "identification" or "interface"
    witness: int
    message: str


def _as_interfaced(host: InterfacedGraph | Hypergraph) -> InterfacedGraph:
    return host if isinstance(host, InterfacedGraph) else InterfacedGraph(host, [])


def check_conditions(rule: Rule, hom: Homomorphism, host: InterfacedGraph | Hypergraph) -> Violation | None:
    """First violated gluing condition for this match, or None when a complement exists."""
    ig = _as_interfaced(host)
    g = ig.graph
    matched_edges = set(hom.edges.values())
    boundary_nodes = {hom.nodes[v] for v in rule.k_to_l}
    deleted = {hom.nodes[v] for v in rule.lhs.graph.nodes} - boundary_nodes
    for eid in sorted(g.edges):
        if eid in matched_edges:
            continue
        for v in g.edges[eid].endpoints():
            if v in deleted:
                return Violation("dangling", v, f"host edge {eid} attaches to node {v}, which the rule deletes")
    seen: dict[int, int] = {}
    k_image = set(rule.k_to_l)
    for pv in sorted(hom.nodes):
        hv = hom.nodes[pv]
        if hv in seen and not (pv in k_image and seen[hv] in k_image):
            return Violation("identification", hv, f"pattern nodes {seen[hv]} and {pv} both land on host node {hv}")
        seen.setdefault(hv, pv)
    hit: dict[int, int] = {}
    for pe in sorted(hom.edges):
        he = hom.edges[pe]
        if he in hit:
            return Violation("identification", he, f"pattern edges {hit[he]} and {pe} both land on host edge {he}")
        hit[he] = pe
    for v in ig.interface:
        if v in deleted:
            return Violation("interface", v, f"interface leg points at node {v}, which the rule deletes")
    return None


# complements

@dataclass
class Complement:
    graph: Hypergraph
    k_map: list[int]                 # K position -> node of C
    to_host: Homomorphism            # C -> G
    j_map: list[int]                 # J position -> node of C
    partition: tuple = ()            # per-fibre restricted growth strings


@dataclass
class ExplodedContext:
    """K + G~ together with the projection q onto the host, and the fibres over matched nodes."""
    graph: Hypergraph
    q: dict[int, int]
    k_nodes: list[int]
    j_nodes: list[int]
    fibres: list[tuple[int, list[int]]]  # (host node, members of q^-1(host node))

    def partition_count(self) -> int:
        total = 1
        for _, members in self.fibres:
            total *= _bell(len(members))
        return total


def _bell(n: int) -> int:
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def set_partitions(n: int) -> Iterator[tuple[int, ...]]:
    """Restricted growth strings of length n: block index per element, in lexicographic order."""
    if n == 0:
        yield ()
        return

    def grow(prefix: list[int], top: int) -> Iterator[tuple[int, ...]]:
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for b in range(top + 2):
            prefix.append(b)
            yield from grow(prefix, max(top, b))
            prefix.pop()

    yield from grow([0], 0)


def exploded_context(rule: Rule, hom: Homomorphism, host: InterfacedGraph | Hypergraph) -> ExplodedContext:
    ig = _as_interfaced(host)
    g = ig.graph
    matched_nodes = {hom.nodes[v] for v in rule.lhs.graph.nodes}
    matched_edges = set(hom.edges.values())
    c0 = Hypergraph()
    q: dict[int, int] = {}
    for v in sorted(g.nodes):
        if v not in matched_nodes:
            c0.add_node(g.nodes[v], v)
            q[v] = v
    fresh_id = itertools.count(max(g.nodes, default=-1) + 1)
    fibres: dict[int, list[int]] = {v: [] for v in sorted(matched_nodes)}

    def fresh(hv: int) -> int:
        v = c0.add_node(g.nodes[hv], next(fresh_id))
        q[v] = hv
        fibres[hv].append(v)
        return v

    k_nodes = [fresh(hom.nodes[lv]) for lv in rule.k_to_l]
    for eid in sorted(g.edges):
        if eid in matched_edges:
            continue
        e = g.edges[eid]
        ends = [fresh(v) if v in matched_nodes else v for v in e.endpoints()]
        c0.add_edge(e.label, ends[:len(e.sources)], ends[len(e.sources):], eid)
    j_nodes = [fresh(v) if v in matched_nodes else v for v in ig.interface]
    return ExplodedContext(c0, q, k_nodes, j_nodes, [(v, fibres[v]) for v in sorted(fibres) if fibres[v]])


def _glue_check(rule: Rule, hom: Homomorphism, g: Hypergraph, comp: Complement) -> bool:
    """Is L <- K -> C a pushout with apex G, mapped canonically?"""
    p, inj_l, inj_c = pushout_discrete(rule.lhs.graph, comp.graph, rule.k_to_l, comp.k_map)
    node_img: dict[int, int] = {}
    for lv, pv in inj_l.items():
        if node_img.setdefault(pv, hom.nodes[lv]) != hom.nodes[lv]:
            return False
    for cv, pv in inj_c.items():
        if node_img.setdefault(pv, comp.to_host.nodes[cv]) != comp.to_host.nodes[cv]:
            return False
    if len(p.nodes) != len(g.nodes) or set(node_img.values()) != set(g.nodes):
        return False
    edge_img = list(hom.edges.values()) + [comp.to_host.edges[e] for e in comp.graph.edges]
    return len(edge_img) == len(set(edge_img)) == len(g.edges)


def anchored_partitions(size: int, anchors: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Partitions of range(size) in which every block holds an anchor, as restricted growth strings.

    These are the only fibre partitions that can pass the gluing check, so
    generating them directly skips the hopeless candidates.
    """
    anchors = list(anchors)
    others = [i for i in range(size) if i not in set(anchors)]
    for anchor_blocks in set_partitions(len(anchors)):
        nblocks = max(anchor_blocks, default=-1) + 1
        for assignment in itertools.product(range(nblocks), repeat=len(others)):
            raw = [0] * size
            for i, b in zip(anchors, anchor_blocks):
                raw[i] = b
            for i, b in zip(others, assignment):
                raw[i] = b
            relabel: dict[int, int] = {}
            yield tuple(relabel.setdefault(b, len(relabel)) for b in raw)


def peeled_partitions(size: int, anchors: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Anchored partitions in which at most one non-anchor leaves the first block."""
    anchors = list(anchors)
    others = [i for i in range(size) if i not in set(anchors)]
    for anchor_blocks in set_partitions(len(anchors)):
        nblocks = max(anchor_blocks, default=-1) + 1
        if nblocks == 0:
            continue
        moves = [None] + [(i, b) for i in others for b in range(1, nblocks)]
        for move in moves:
            raw = [0] * size
            for i, b in zip(anchors, anchor_blocks):
                raw[i] = b
            if move is not None:
                raw[move[0]] = move[1]
            relabel: dict[int, int] = {}
            yield tuple(relabel.setdefault(b, len(relabel)) for b in raw)


PARTITION_MODES = {"anchored": anchored_partitions, "peel": peeled_partitions}


def iter_complements(rule: Rule, hom: Homomorphism, host: InterfacedGraph | Hypergraph,
                     context: ExplodedContext | None = None, mode: str = "all") -> Iterator[Complement]:
    """Pushout complements in partition order, produced lazily.

    ``mode`` "all" tries every fibre partition (capped fibre size). "anchored"
    tries only partitions whose blocks all contain a K node: the valid results
    are the same and there is no cap. "peel" further keeps only those moving at
    most one attachment away from the first block, a subset used by strategies.
    """
    ig = _as_interfaced(host)
    ctx = context or exploded_context(rule, hom, ig)
    k_set = set(ctx.k_nodes)
    if mode in PARTITION_MODES:
        gen = PARTITION_MODES[mode]
        per_fibre = [gen(len(m), [i for i, x in enumerate(m) if x in k_set]) for _, m in ctx.fibres]
    elif mode != "all":
        raise ValueError(f"unknown partition mode {mode!r}")
    else:
        for v, members in ctx.fibres:
            if len(members) > MAX_FIBRE:
                raise RewriteError(f"fibre over node {v} has {len(members)} elements; "
                                   f"enumeration is capped at {MAX_FIBRE}")
        per_fibre = [set_partitions(len(m)) for _, m in ctx.fibres]
    for choice in _lazy_product(per_fibre):
        uf = UnionFind(ctx.graph.nodes)
        for (_, members), blocks in zip(ctx.fibres, choice):
            first: dict[int, int] = {}
            for member, b in zip(members, blocks):
                uf.union(first.setdefault(b, member), member)
        c, rep = quotient(ctx.graph, uf)
        to_host = Homomorphism({rep[v]: ctx.q[v] for v in ctx.graph.nodes}, {e: e for e in c.edges})
        comp = Complement(c, [rep[v] for v in ctx.k_nodes], to_host, [rep[v] for v in ctx.j_nodes], choice)
        if _glue_check(rule, hom, ig.graph, comp):
            yield comp


def _lazy_product(iterables: list[Iterator]) -> Iterator[tuple]:
    # itertools.product would drain every generator up front
    if not iterables:
        yield ()
        return
    first, rest = iterables[0], iterables[1:]
    cache_rest = None
    for x in first:
        if cache_rest is None:
            cache_rest = list(_lazy_product(rest)) if len(rest) > 0 else [()]
        for tail in cache_rest:
            yield (x,) + tail


def complements_enumerate(rule: Rule, hom: Homomorphism, host: InterfacedGraph | Hypergraph,
                          context: ExplodedContext | None = None) -> list[Complement]:
    """Every pushout complement of hom through which the host interface factors."""
    return list(iter_complements(rule, hom, host, context))


def complement_mono(rule: Rule, hom: Homomorphism, host: InterfacedGraph | Hypergraph) -> Complement:
    """The unique complement when K -> L is injective: delete the matched non-boundary part."""
    if not rule.is_left_mono():
        raise RewriteError(f"rule {rule.name!r}: K -> L is not injective")
    ig = _as_interfaced(host)
    bad = check_conditions(rule, hom, ig)
    if bad is not None:
        raise RewriteError(bad.message)
    g = ig.graph.copy()
    keep = {hom.nodes[v] for v in rule.k_to_l}
    for e in set(hom.edges.values()):
        g.remove_edge(e)
    for v in {hom.nodes[v] for v in rule.lhs.graph.nodes} - keep:
        g.remove_node(v)
    to_host = Homomorphism({v: v for v in g.nodes}, {e: e for e in g.edges})
    return Complement(g, [hom.nodes[v] for v in rule.k_to_l], to_host, list(ig.interface))


# matches and steps

@dataclass
class Match:
    rule: Rule
    hom: Homomorphism
    complement: Complement


def find_matches(rule: Rule, host: InterfacedGraph | Hypergraph) -> list[Match]:
    """All (homomorphism, complement) pairs, ordered by homomorphism then partition."""
    ig = _as_interfaced(host)
    out = []
    for hom in find_homomorphisms(rule.lhs.graph, ig.graph):
        out.extend(Match(rule, hom, comp) for comp in complements_for(rule, hom, ig))
    return out


def complements_for(rule: Rule, hom: Homomorphism, host: InterfacedGraph,
                    mode: str = "anchored") -> Iterator[Complement]:
    """Complements as used by strategies: direct in the mono case, lazy enumeration otherwise."""
    if rule.is_left_mono():
        if check_conditions(rule, hom, host) is None:
            yield complement_mono(rule, hom, host)
        return
    yield from iter_complements(rule, hom, host, mode=mode)


def rewrite_step(rule: Rule, host: InterfacedGraph | Hypergraph, match: Match) -> InterfacedGraph:
    """Glue R onto the complement; the host interface is carried along and ids are compacted."""
    ig = _as_interfaced(host)
    comp = match.complement
    h, inj_c, _ = pushout_discrete(comp.graph, rule.rhs.graph, comp.k_map, rule.k_to_r)
    return InterfacedGraph(h, [inj_c[v] for v in comp.j_map], ig.split).compact()


def first_match(rules: Sequence[Rule], host: InterfacedGraph) -> Match | None:
    for rule in rules:
        for hom in find_homomorphisms(rule.lhs.graph, host.graph):
            comp = next(complements_for(rule, hom, host), None)
            if comp is not None:
                return Match(rule, hom, comp)
    return None


@dataclass
class Step:
    index: int
    rule: str
    hom: Homomorphism
    partition: tuple
    result: InterfacedGraph

    def record(self) -> dict:
        return {"step": self.index, "rule": self.rule,
                "hom": {"nodes": {str(k): v for k, v in sorted(self.hom.nodes.items())},
                        "edges": {str(k): v for k, v in sorted(self.hom.edges.items())}},
                "partition": [list(p) for p in self.partition],
                "nodes": len(self.result.graph.nodes), "edges": len(self.result.graph.edges)}


@dataclass
class Derivation:
    start: InterfacedGraph
    steps: list[Step] = field(default_factory=list)
    exhausted: bool = False

    @property
    def final(self) -> InterfacedGraph:
        return self.steps[-1].result if self.steps else self.start

    def write_log(self, stream: TextIO) -> None:
        for s in self.steps:
            stream.write(json.dumps(s.record(), sort_keys=True) + "\n")


Strategy = Callable[[Sequence[Rule], InterfacedGraph], "Match | None"]


def rewrite_closure(rules: Sequence[Rule], host: InterfacedGraph, max_steps: int = 1000,
                    strategy: Strategy = first_match,
                    normalize: Callable[[InterfacedGraph], InterfacedGraph] | None = None) -> Derivation:
    """Rewrite until no rule applies or the budget runs out (reported via ``exhausted``).

    ``normalize`` is applied to the host before the first step and after every step.
    """
    current = normalize(host) if normalize else host
    d = Derivation(current)
    for i in range(max_steps):
        m = strategy(rules, current)
        if m is None:
            return d
        current = rewrite_step(m.rule, current, m)
        if normalize:
            current = normalize(current)
        d.steps.append(Step(i, m.rule.name, m.hom, m.complement.partition, current))
    d.exhausted = strategy(rules, current) is not None
    return d
