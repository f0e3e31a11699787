import random

import pytest

from frobrw.corpus import random_group_host, random_profile
from frobrw.cospan import InterfacedGraph, fold, interfaced_iso
from frobrw.dpoi import find_matches, rewrite_step
from frobrw.errors import RewriteError
from frobrw.hypergraph import Hypergraph
from frobrw.semantics import cyclic_group_model, eval_graph, eval_term
from frobrw.strategies.group import (NATURALITY, STRUCTURAL, group_reduce, group_signature, left_nested_m,
                                     left_weight, measure, structural_rules)
from frobrw.strategies.order import branching_degree, branching_depth, profile, revlex_less
from frobrw.term import interp, parse

SIG = group_signature()


def host_of(text):
    return fold(interp(parse(text, SIG), SIG))


# the order

def test_revlex_examples():
    assert revlex_less([3], [1, 1])
    assert revlex_less([5, 2], [0, 3])
    assert revlex_less([1, 2], [4, 2])
    assert not revlex_less([1, 2], [1, 2])
    assert not revlex_less([0, 3], [5, 2])


def test_revlex_is_a_strict_total_order():
    rng = random.Random(2)
    words = [random_profile(rng) for _ in range(60)]
    for a in words:
        assert not revlex_less(a, a)
        for b in words:
            if a != b:
                assert revlex_less(a, b) != revlex_less(b, a)
            for c in words[:10]:
                if revlex_less(a, b) and revlex_less(b, c):
                    assert revlex_less(a, c)


def test_branching_degree_counts_legs():
    host = host_of("i ; frob.comult")
    g, legs = host.graph, host.interface
    start, copy = legs[0], legs[1]
    assert branching_degree(g, legs, start) == 0
    assert branching_degree(g, legs, copy) == 1


def test_depths_before_and_after_pushing_the_copy():
    before = host_of("i ; frob.comult")
    (eid,) = before.graph.edges
    assert branching_depth(before.graph, before.interface, eid) == 1
    assert profile(before) == [0, 1]
    after = host_of("frob.comult ; (i + i)")
    assert profile(after) == [2]
    assert revlex_less(profile(after), profile(before))


def test_empty_graph_profile():
    assert profile(Hypergraph(), []) == []


def test_depth_refuses_cycles():
    g = Hypergraph({0: "w"})
    g.add_edge("i", [0], [0])
    with pytest.raises(RewriteError):
        profile(g, [])
    with pytest.raises(RewriteError):
        group_reduce(InterfacedGraph(g, [], 0))


# the rules

@pytest.mark.parametrize("name,left,right", STRUCTURAL + NATURALITY)
@pytest.mark.parametrize("order", [2, 3])
def test_rules_hold_in_cyclic_groups(name, left, right, order):
    model = cyclic_group_model(order)
    assert eval_term(model, parse(left, SIG), SIG) == eval_term(model, parse(right, SIG), SIG)


def test_left_unit_removes_two_edges():
    host = host_of("(u + i) ; m")
    run = group_reduce(host)
    assert [e.rule for e in run.accepted] == ["left-unit"]
    assert len(run.final.graph.edges) == 1
    assert interfaced_iso(run.final, host_of("i"))


def test_normal_host_is_left_alone():
    host = host_of("(i + i) ; m")
    run = group_reduce(host)
    assert run.accepted == [] and run.final is host


def test_copy_is_pushed_above_an_inverse_once():
    run = group_reduce(host_of("i ; frob.comult"), log_rejections=True)
    assert [(e.rule, e.before, e.after) for e in run.accepted] == [("i-copy", [0, 1], [2])]
    assert interfaced_iso(run.final, host_of("frob.comult ; (i + i)"))
    assert not run.exhausted


def test_gate_refuses_growth_on_a_lone_inverse():
    run = group_reduce(host_of("i"), log_rejections=True)
    assert run.accepted == []
    assert len(run.final.graph.edges) == 1
    assert all(not e.accepted and not revlex_less(e.after, e.before) for e in run.log)


def test_accepted_naturality_steps_drop_the_profile():
    rng = random.Random(8)
    for _ in range(40):
        run = group_reduce(random_group_host(rng, 8))
        for e in run.accepted:
            if e.phase == "naturality":
                assert revlex_less(e.after, e.before)


def test_strategy_preserves_the_z3_reading():
    rng = random.Random(9)
    model = cyclic_group_model(3)
    for _ in range(30):
        host = random_group_host(rng, 8)
        run = group_reduce(host)
        assert eval_graph(model, run.final).pairs == eval_graph(model, host).pairs


# the termination measure

def test_reassociation_can_leave_the_triple_unchanged():
    # ((a.(b.c)).d) -> (a.((b.c).d)): one left-nested m before and after
    host = host_of("(((id[1] + m) ; m) + id[1]) ; m")
    assoc = structural_rules(SIG)[0]
    outer = [m for m in find_matches(assoc, host)
             if left_nested_m(rewrite_step(assoc, host, m)) == left_nested_m(host)]
    assert outer
    result = rewrite_step(assoc, host, outer[0])
    assert measure(result) == measure(host)
    assert left_weight(result) < left_weight(host)


def test_reassociation_always_lowers_left_weight():
    rng = random.Random(10)
    seen = 0
    for _ in range(80):
        run = group_reduce(random_group_host(rng))
        prev = run.start
        for e in run.accepted:
            if e.rule == "assoc":
                assert left_weight(e.result) < left_weight(prev)
                seen += 1
            prev = e.result
    assert seen > 0
