import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frobrw import gf2, semantics
from frobrw.corpus import random_ib_host, random_model, random_term, small_signature
from frobrw.cospan import InterfacedGraph, fold
from frobrw.errors import SemanticsError
from frobrw.gf2 import Subspace2, orthogonal_complement, subspace_equal
from frobrw.hypergraph import Hypergraph
from frobrw.semantics import (FiniteModel, Relation, cyclic_group_model, eval_graph, eval_term, ib_model, ib_subspace,
                              load_model, readoff_equations, readoff_reduced, relation_to_subspace)
from frobrw.strategies.group import group_signature
from frobrw.strategies.ib import ib_reduce
from frobrw.term import interp, parse

import worked_examples as ex

GROUP = group_signature()
Z3 = cyclic_group_model(3)


# GF(2) linear algebra against brute force

def brute_solutions(dim, rows):
    return {v for v in range(2 ** dim) if all(bin(v & r).count("1") % 2 == 0 for r in rows)}


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 6).flatmap(lambda d: st.tuples(st.just(d), st.lists(st.integers(0, 2 ** d - 1), max_size=6))))
def test_solutions_match_brute_force(case):
    dim, rows = case
    space = Subspace2.solutions(dim, rows)
    assert set(space.vectors()) == brute_solutions(dim, rows)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 6).flatmap(lambda d: st.tuples(st.just(d), st.lists(st.integers(0, 2 ** d - 1), max_size=6))))
def test_span_is_closed_and_canonical(case):
    dim, vectors = case
    space = Subspace2.span(dim, vectors)
    closure = {0}
    for v in vectors:
        closure |= {x ^ v for x in closure}
    assert set(space.vectors()) == closure
    shuffled = list(reversed(vectors)) + [a ^ b for a, b in zip(vectors, vectors[1:])]
    assert subspace_equal(Subspace2.span(dim, shuffled), space)
    assert orthogonal_complement(orthogonal_complement(space)) == space
    assert space.rank + orthogonal_complement(space).rank == dim


def test_rank_nullspace_and_bits():
    assert gf2.rank([0b011, 0b110, 0b101], 3) == 2
    assert gf2.nullspace([0b011, 0b110], 3) and all(
        bin(n & r).count("1") % 2 == 0 for n in gf2.nullspace([0b011, 0b110], 3) for r in (0b011, 0b110))
    assert gf2.bits((1, 0, 1)) == 0b101
    assert gf2.unbits(0b101, 3) == (1, 0, 1)
    with pytest.raises(ValueError):
        Subspace2.span(2, [0b100])


def test_subspace_equality_needs_equal_dimension():
    assert not subspace_equal(Subspace2.full(2), Subspace2.full(3))
    s = Subspace2.span(2, [0b11])
    assert not subspace_equal(s, Subspace2.span(2, [0b01]))
    assert subspace_equal(s.orthogonal_complement(), s)


# finite models

def test_generators_and_spiders_in_z3():
    assert eval_term(Z3, parse("m", GROUP), GROUP).pairs == frozenset(
        ((a, b), ((a + b) % 3,)) for a in range(3) for b in range(3))
    assert eval_term(Z3, parse("id[1]", GROUP), GROUP).pairs == frozenset(((a,), (a,)) for a in range(3))
    counit = eval_term(Z3, parse("frob.counit", GROUP), GROUP)
    assert counit.pairs == frozenset(((a,), ()) for a in range(3))


def test_inverse_law_in_z3():
    left = eval_term(Z3, parse("frob.comult ; (id[1] + i) ; m", GROUP), GROUP)
    right = eval_term(Z3, parse("frob.counit ; u", GROUP), GROUP)
    assert left == right
    assert len(left) == 3


def test_frobenius_law_over_z2():
    model = cyclic_group_model(2)
    a = eval_term(model, parse("(frob.comult + id[1]) ; (id[1] + frob.mult)", GROUP), GROUP)
    b = eval_term(model, parse("frob.mult ; frob.comult", GROUP), GROUP)
    assert a == b


def test_graph_reading_agrees_with_syntax_reading():
    sig = small_signature()
    rng = random.Random(17)
    for _ in range(80):
        model = random_model(rng, sig)
        t = random_term(rng, sig, 3)
        assert eval_graph(model, interp(t, sig)) == eval_term(model, t, sig)


def test_closed_diagram_with_empty_relation():
    sig = small_signature()
    model = FiniteModel({"w": (0, 1)}, {"f": frozenset(), "g": frozenset(), "h": frozenset()})
    rel = eval_graph(model, interp(parse("frob.unit ; f ; frob.counit", sig), sig))
    assert rel.dom == () and rel.cod == () and rel.pairs == frozenset()


def test_uninterpreted_label_and_missing_carrier():
    g = Hypergraph({0: "w"})
    g.add_edge("zz", [0], [])
    with pytest.raises(SemanticsError):
        eval_graph(Z3, InterfacedGraph(g, [0], 1))
    with pytest.raises(SemanticsError):
        eval_graph(Z3, InterfacedGraph(Hypergraph({0: "v"}), [0], 1))


def test_table_guard(monkeypatch):
    monkeypatch.setattr(semantics, "TABLE_LIMIT", 10)
    wide = fold(interp(parse("id[4]", GROUP), GROUP))
    with pytest.raises(SemanticsError):
        eval_graph(Z3, wide)


def test_model_file():
    model = load_model('{"carriers": {"w": [0, 1]}, "relations": {"f": [[0, 1], [1, 0]]}}')
    assert model.label_tuples("f") == frozenset({(0, 1), (1, 0)})
    with pytest.raises(SemanticsError):
        load_model('{"relations": {}}')


# GF(2) readings of two-coloured graphs

def test_ib_subspace_agrees_with_the_parity_model():
    rng = random.Random(18)
    for _ in range(60):
        host = random_ib_host(rng, 5, 5)
        via_model = relation_to_subspace(eval_graph(ib_model(), host))
        assert subspace_equal(ib_subspace(host), via_model)


def test_nonlinear_relation_is_refused():
    with pytest.raises(SemanticsError):
        relation_to_subspace(Relation(("b",), (), frozenset({((1,), ())})))


def test_empty_diagram_is_the_zero_dimensional_space():
    s = ib_subspace(InterfacedGraph(Hypergraph(), [], 0))
    assert s.dim == 0 and s.rank == 0


def test_no_equations_means_everything():
    g = Hypergraph({0: "b", 1: "b"})
    host = InterfacedGraph(g, [0, 1], 1)
    assert subspace_equal(readoff_reduced(host), Subspace2.full(2))
    assert readoff_equations(host) == []


def test_homogeneous_system():
    host = ex.homog_system_host()
    expected = Subspace2.span(3, [gf2.bits((1, 1, 0))])
    assert subspace_equal(ib_subspace(host), expected)
    run = ib_reduce(host)
    assert readoff_equations(run.final) == ex.HOMOG_EQUATIONS
    assert subspace_equal(readoff_reduced(run.final), expected)
    assert subspace_equal(semantics.equations_subspace(ex.HOMOG_EQUATIONS, 2, 1), expected)


def test_span_readoff_of_swapped_runs():
    rng = random.Random(19)
    for _ in range(40):
        host = random_ib_host(rng)
        run = ib_reduce(host, colour_swap=True)
        assert subspace_equal(readoff_reduced(run.final, mode="span"), ib_subspace(host))


def test_readoff_refuses_wrong_forms():
    interior = InterfacedGraph(Hypergraph({0: "b"}), [], 0)
    with pytest.raises(SemanticsError):
        readoff_reduced(interior)
    with pytest.raises(SemanticsError):
        readoff_reduced(InterfacedGraph(Hypergraph({0: "r"}), [], 0), mode="span")
    with pytest.raises(ValueError):
        readoff_reduced(interior, mode="bogus")


def test_brute_force_subspace_of_a_small_graph():
    # x0 -> e <- x1, e -> y0: the relation x0 + x1 = y0
    g = Hypergraph({0: "b", 1: "b", 2: "b", 3: "r"})
    g.add_edge("chg[b,r]", [0], [3])
    g.add_edge("chg[b,r]", [1], [3])
    g.add_edge("chg[r,b]", [3], [2])
    host = InterfacedGraph(g, [0, 1, 2], 2)
    solutions = {gf2.bits(v) for v in itertools.product((0, 1), repeat=3) if (v[0] + v[1] + v[2]) % 2 == 0}
    assert set(ib_subspace(host).vectors()) == solutions
