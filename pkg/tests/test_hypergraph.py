import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frobrw.errors import ColourClash, GraphError
from frobrw.hypergraph import (Hypergraph, UnionFind, are_isomorphic, degree, find_homomorphisms, is_acyclic,
                               pushout_discrete)

from strategies_hyp import hypergraphs, shuffled
from worked_examples import fg_host, fg_rules


def eight_node_graph() -> Hypergraph:
    """v1..v8 as ids 1..8; h1 is (3,3), h2 is (2,1), h3 is (1,0)."""
    g = Hypergraph()
    for v in range(1, 9):
        g.add_node("w", v)
    g.add_edge("h1", [1, 2, 3], [5, 6, 6])
    g.add_edge("h2", [3, 4], [8])
    g.add_edge("h3", [6], [])
    return g


def test_degree_counts_repeated_attachments():
    g = eight_node_graph()
    assert degree(g, 6) == 3
    assert degree(g, 7) == 0
    h = Hypergraph({0: "w"})
    h.add_edge("g", [0, 0], [])
    assert degree(h, 0) == 2


def test_degree_of_unknown_node():
    with pytest.raises(GraphError):
        degree(Hypergraph(), 0)


def brute_force_acyclic(g: Hypergraph) -> bool:
    step = {v: set() for v in g.nodes}
    for e in g.edges.values():
        for s in e.sources:
            step[s].update(e.targets)

    def walk(v, seen):
        return all(u not in seen and walk(u, seen | {u}) for u in step[v])
    return all(walk(v, {v}) for v in g.nodes)


def test_acyclicity_examples():
    assert is_acyclic(eight_node_graph())
    assert brute_force_acyclic(eight_node_graph())
    loop = Hypergraph({0: "w"})
    loop.add_edge("f", [0], [0])
    assert not is_acyclic(loop)
    assert is_acyclic(Hypergraph())


@settings(max_examples=150, deadline=None)
@given(hypergraphs())
def test_acyclicity_matches_path_search(g):
    assert is_acyclic(g) == brute_force_acyclic(g)


def test_homomorphisms_simple_counts():
    pattern = Hypergraph({0: "w", 1: "w"})
    pattern.add_edge("f", [0], [1])
    host = Hypergraph({i: "w" for i in range(4)})
    host.add_edge("f", [0], [1])
    host.add_edge("f", [2], [3])
    assert len(find_homomorphisms(pattern, host)) == 2
    red_pattern = Hypergraph({0: "r"})
    assert find_homomorphisms(red_pattern, host) == []


def test_two_matches_of_the_one_sided_inverse():
    lr, _ = fg_rules()
    assert len(find_homomorphisms(lr.lhs.graph, fg_host().graph)) == 2


def test_homomorphisms_are_sorted_and_structure_preserving():
    lr, _ = fg_rules()
    host = fg_host().graph
    homs = find_homomorphisms(lr.lhs.graph, host)
    assert homs == sorted(homs, key=lambda h: h.sort_key())
    for hom in homs:
        for eid, e in lr.lhs.graph.edges.items():
            image = host.edges[hom.edges[eid]]
            assert image.label == e.label
            assert image.sources == tuple(hom.nodes[v] for v in e.sources)
            assert image.targets == tuple(hom.nodes[v] for v in e.targets)


def nx_encoding(g: Hypergraph) -> nx.DiGraph:
    d = nx.DiGraph()
    for v, c in g.nodes.items():
        d.add_node(("n", v), tag=("node", c))
    for eid, e in g.edges.items():
        d.add_node(("e", eid), tag=("edge", e.label))
        ports: dict = {}
        for i, v in enumerate(e.sources):
            ports.setdefault((("n", v), ("e", eid)), []).append(i)
        for i, v in enumerate(e.targets):
            ports.setdefault((("e", eid), ("n", v)), []).append(i)
        for (a, b), idx in ports.items():
            d.add_edge(a, b, ports=tuple(idx))
    return d


def nx_isomorphic(g: Hypergraph, h: Hypergraph) -> bool:
    return nx.is_isomorphic(nx_encoding(g), nx_encoding(h),
                            node_match=lambda a, b: a["tag"] == b["tag"],
                            edge_match=lambda a, b: a["ports"] == b["ports"])


@settings(max_examples=150, deadline=None)
@given(hypergraphs(max_nodes=5, max_edges=4), hypergraphs(max_nodes=5, max_edges=4))
def test_isomorphism_agrees_with_networkx(g, h):
    assert (are_isomorphic(g, h) is not None) == nx_isomorphic(g, h)


@settings(max_examples=100, deadline=None)
@given(hypergraphs(), st.integers(0, 1000))
def test_permuted_copy_is_isomorphic(g, seed):
    h, _ = shuffled(g, seed)
    iso = are_isomorphic(g, h)
    assert iso is not None and iso.is_injective()
    back = are_isomorphic(h, g)
    assert back is not None


def test_different_labels_not_isomorphic():
    g = Hypergraph({0: "w"})
    g.add_edge("f", [0], [0])
    h = Hypergraph({0: "w"})
    h.add_edge("k", [], [0])
    assert are_isomorphic(g, h) is None


@settings(max_examples=60, deadline=None)
@given(hypergraphs(max_nodes=4, max_edges=3), st.integers(0, 100))
def test_homomorphisms_transport_along_isomorphism(g, seed):
    host, _ = shuffled(g, seed + 1)
    renamed, perm = shuffled(g, seed)
    direct = find_homomorphisms(g, host)
    via = find_homomorphisms(renamed, host)
    assert len(direct) == len(via)
    assert {tuple(sorted(h.nodes.items())) for h in direct} == {
        tuple(sorted((v, h.nodes[perm[v]]) for v in g.nodes)) for h in via}


def test_gluing_five_point_apex():
    left = Hypergraph({0: "w", 1: "w", 2: "w"})
    right = Hypergraph({i: "w" for i in range(4)})
    glued, inj_left, inj_right = pushout_discrete(left, right, [0, 0, 2, 2, 2], [0, 1, 1, 2, 3])
    assert len(glued.nodes) == 2
    x = inj_left[0]
    assert inj_left[2] == x and all(inj_right[v] == x for v in range(4))
    assert inj_left[1] != x


def test_gluing_empty_apex_is_disjoint_union():
    a = Hypergraph({0: "w"})
    b = Hypergraph({0: "w", 1: "w"})
    glued, _, _ = pushout_discrete(a, b, [], [])
    assert len(glued.nodes) == 3


def test_gluing_along_identity_is_the_graph():
    g = eight_node_graph()
    nodes = sorted(g.nodes)
    glued, inj, _ = pushout_discrete(g, Hypergraph(dict(g.nodes)), nodes, nodes)
    assert are_isomorphic(glued, g) is not None
    assert len(set(inj.values())) == len(nodes)


def test_gluing_colour_clash():
    with pytest.raises(ColourClash):
        pushout_discrete(Hypergraph({0: "w"}), Hypergraph({0: "v"}), [0], [0])


@settings(max_examples=80, deadline=None)
@given(hypergraphs(max_nodes=4, max_edges=3), hypergraphs(max_nodes=4, max_edges=3), st.data())
def test_gluing_is_symmetric(a, b, data):
    n = data.draw(st.integers(0, 3))
    f = data.draw(st.lists(st.sampled_from(sorted(a.nodes)), min_size=n, max_size=n))
    h = data.draw(st.lists(st.sampled_from(sorted(b.nodes)), min_size=n, max_size=n))
    ab, _, _ = pushout_discrete(a, b, f, h)
    ba, _, _ = pushout_discrete(b, a, h, f)
    assert are_isomorphic(ab, ba) is not None


@settings(max_examples=100, deadline=None)
@given(hypergraphs())
def test_degree_is_sum_of_multiplicities(g):
    for v in g.nodes:
        assert degree(g, v) == sum(e.sources.count(v) + e.targets.count(v) for e in g.edges.values())


@settings(max_examples=40, deadline=None)
@given(st.lists(hypergraphs(max_nodes=4, max_edges=3), min_size=3, max_size=3))
def test_isomorphism_is_an_equivalence(gs):
    a, b, c = gs
    iso = lambda x, y: are_isomorphic(x, y) is not None
    assert iso(a, a)
    assert iso(a, b) == iso(b, a)
    if iso(a, b) and iso(b, c):
        assert iso(a, c)


def test_union_find_uses_smallest_representative():
    uf = UnionFind(range(5))
    uf.union(4, 2)
    uf.union(2, 3)
    assert uf.find(4) == 2 and uf.find(3) == 2
    assert sorted(map(sorted, uf.classes().values())) == [[0], [1], [2, 3, 4]]


def test_compact_renumbers_densely():
    g = Hypergraph({3: "w", 7: "w"})
    g.add_edge("f", [3], [7], 5)
    c, nodes, edges = g.compact()
    assert list(c.nodes) == [0, 1] and list(c.edges) == [0]
    assert nodes == {3: 0, 7: 1} and edges == {5: 0}


def test_remove_connected_node_refused():
    g = eight_node_graph()
    with pytest.raises(GraphError):
        g.remove_node(6)
    with pytest.raises(GraphError):
        g.add_edge("f", [99], [])
