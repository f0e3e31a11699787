import pytest

from frobrw.errors import SignatureError
from frobrw.formats import read_signature
from frobrw.hypergraph import Hypergraph, find_homomorphisms
from frobrw.signature import (Colour, Generator, Signature, changer_label, check_labelling, make_signature,
                              parse_changer_label, parse_signature_text, signature_graph, signature_to_text,
                              validate_signature)


def test_commutative_monoid_signature_is_valid():
    sig = make_signature({"mu": (2, 1), "eta": (0, 1)})
    assert validate_signature(sig) == []
    assert sig.generator("mu").arity == ("w", "w")
    assert sig.generator("eta").arity == ()


def test_undeclared_colour_reported():
    sig = Signature([Colour(0, "w")], [Generator("f", ("w",), ("v",))])
    assert any("undeclared colour" in p for p in validate_signature(sig))
    with pytest.raises(SignatureError):
        make_signature([("f", "w", "v")], colours=("w",))


def test_duplicate_generator_reported():
    sig = Signature([Colour(0, "w")], [Generator("f", ("w",), ("w",)), Generator("f", (), ())])
    assert any("duplicate" in p for p in validate_signature(sig))


def test_every_violation_is_listed():
    sig = Signature([Colour(0, "w")], [Generator("f", ("x",), ("y",)), Generator("f", (), ())])
    assert len(validate_signature(sig)) == 3


def test_single_colour_signature_graph():
    g = signature_graph(make_signature({"o1": (2, 2), "o2": (1, 0)}))
    assert len(g.nodes) == 1
    shapes = sorted((len(e.sources), len(e.targets)) for e in g.edges.values())
    assert shapes == [(1, 0), (2, 2)]


def test_two_colour_signature_graph():
    sig = make_signature([("o1", "c1 c2", "c2 c2"), ("o2", "c2", "0")], colours=("c1", "c2"))
    g = signature_graph(sig)
    assert len(g.nodes) == 2
    o2 = next(e for e in g.edges.values() if e.label == "o2")
    assert o2.sources == (1,) and o2.targets == ()
    o1 = next(e for e in g.edges.values() if e.label == "o1")
    assert o1.sources == (0, 1) and o1.targets == (1, 1)


def test_empty_signature_graph_has_only_colour_nodes():
    g = signature_graph(make_signature({}, colours=("a", "b", "c")))
    assert len(g.nodes) == 3 and not g.edges


def test_labelled_graph_maps_into_signature_graph():
    sig = make_signature([("o1", "c1 c2", "c2 c2"), ("o2", "c2", "0")], colours=("c1", "c2"))
    g = Hypergraph()
    a, b, c, d = g.add_node("c1"), g.add_node("c2"), g.add_node("c2"), g.add_node("c2")
    g.add_edge("o1", [a, b], [c, d])
    g.add_edge("o2", [d], [])
    assert check_labelling(g, sig) == []
    assert len(find_homomorphisms(g, signature_graph(sig))) == 1


def test_labelling_mismatch():
    sig = make_signature({"f": (1, 1)})
    g = Hypergraph({0: "w"})
    g.add_edge("f", [0], [])
    g.add_edge("nope", [], [])
    assert len(check_labelling(g, sig)) == 2


def test_changer_labels_round_trip():
    assert parse_changer_label(changer_label("b", "r")) == ("b", "r")
    assert parse_changer_label("f") is None


def test_text_round_trip():
    text = "colours: w v\nfrobenius: w\nchangers: w>v v>w\np : w -> v\nq : v w -> 0\n"
    sig = parse_signature_text(text)
    assert sig.frobenius == frozenset({"w"})
    assert parse_signature_text(signature_to_text(sig)) == sig


def test_monochrome_shorthand_and_json():
    assert read_signature("f : 2 -> 1\n") == make_signature({"f": (2, 1)})
    assert read_signature('{"generators": {"f": [2, 1]}}') == make_signature({"f": (2, 1)})


def test_malformed_text_signature():
    with pytest.raises(SignatureError):
        parse_signature_text("f 2 -> 1")
    with pytest.raises(SignatureError):
        parse_signature_text("f : 2 1")
