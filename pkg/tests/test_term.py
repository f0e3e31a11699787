import itertools
import random

import pytest

from frobrw.corpus import random_term, random_term_from
from frobrw.cospan import cospan_iso, identity
from frobrw.errors import TermError
from frobrw.signature import make_signature
from frobrw.term import (Frob, Gen, Id, Par, Seq, Sym, generators_used, interp, parse, parse_term_file,
                         term_equal_mod_frobenius, term_type, to_text)

CMON = make_signature({"mu": (2, 1), "eta": (0, 1), "delta": (1, 2), "eps": (1, 0)})
FG = make_signature({"f": (1, 1), "g": (2, 1), "h": (1, 2)})
FROB_ONLY = make_signature({})


def test_parse_types():
    assert term_type(parse("(mu + id[1]) ; mu", CMON), CMON) == (("w",) * 3, ("w",))
    assert term_type(parse("eta ; eps", CMON), CMON) == ((), ())


def test_semicolon_binds_looser_than_plus():
    t = parse("mu + id[1] ; mu", CMON)
    assert isinstance(t, Seq) and isinstance(t.left, Par)


def test_type_mismatch_at_semicolon():
    with pytest.raises(TermError) as info:
        parse("mu ; eta", CMON)
    assert info.value.position == 3


def test_syntax_errors_carry_positions():
    with pytest.raises(TermError) as info:
        parse("mu ; (eta", CMON)
    assert info.value.position is not None
    with pytest.raises(TermError):
        parse("nope", CMON)
    with pytest.raises(TermError):
        parse("frob.mult[v]", CMON)


def test_coloured_words_and_changers():
    sig = make_signature([("p", "w", "v")], colours=("w", "v"), changers=[("v", "w")])
    t = parse("p ; chg[v,w] ; frob.comult[w] ; sym[w, w]", sig)
    assert term_type(t, sig) == (("w",), ("w", "w"))
    assert term_type(parse("id[w v]", sig), sig) == (("w", "v"), ("w", "v"))
    with pytest.raises(TermError):
        parse("chg[w,v]", sig)


def test_text_round_trip_on_random_terms():
    rng = random.Random(4)
    for _ in range(200):
        t = random_term(rng, FG)
        assert parse(to_text(t, FG), FG) == t


def test_term_file_skips_comments():
    terms = parse_term_file("# header\nf ; f\n\n h ; g  # trailing\n", FG)
    assert terms == [Seq(Gen("f"), Gen("f")), Seq(Gen("h"), Gen("g"))]


def test_frobenius_law_sides_agree():
    left = parse("(frob.comult + id[1]) ; (id[1] + frob.mult)", FROB_ONLY)
    right = parse("frob.mult ; frob.comult", FROB_ONLY)
    assert cospan_iso(interp(left, FROB_ONLY), interp(right, FROB_ONLY))


def test_six_to_two_monoid_map():
    # inputs 0..3 meet in output 1, inputs 4 and 5 in output 0
    t = parse("sym[4, 2] ; (frob.mult + ((frob.mult + frob.mult) ; frob.mult))", FROB_ONLY)
    c = interp(t, FROB_ONLY)
    assert [c.outputs.index(v) for v in c.inputs] == [1, 1, 1, 1, 0, 0]


def test_identity_interprets_to_identity():
    assert cospan_iso(interp(Id(("w", "w")), FG), identity(("w", "w")))


def test_equality_modulo_frobenius():
    assert term_equal_mod_frobenius(parse("(frob.mult + id[1]) ; frob.mult", FROB_ONLY),
                                    parse("(id[1] + frob.mult) ; frob.mult", FROB_ONLY), FROB_ONLY)
    assert term_equal_mod_frobenius(parse("frob.mult", FROB_ONLY), parse("sym[1,1] ; frob.mult", FROB_ONLY),
                                    FROB_ONLY)
    assert not term_equal_mod_frobenius(Gen("f"), parse("id[1]", FG), FG)
    sig = make_signature({"f": (1, 1), "k": (1, 1)})
    assert not term_equal_mod_frobenius(Gen("f"), Gen("k"), sig)


def test_second_family_needs_translation():
    with pytest.raises(TermError):
        interp(Frob("w", "mult", 1), FROB_ONLY)


def test_generators_used():
    assert generators_used(parse("(f + id[1]) ; g ; h", FG)) == {"f", "g", "h"}
    assert generators_used(Sym(("w",), ("w",))) == set()


# independent oracle: a Frobenius-only term is its partition of boundary wires

def components(t):
    """(input blocks, output blocks, number of blocks) computed straight from the syntax."""
    parent: dict = {}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    fresh = itertools.count()

    def new():
        x = next(fresh)
        parent[x] = x
        return x

    def walk(t):
        if isinstance(t, Id):
            wires = [new() for _ in t.word]
            return wires, wires
        if isinstance(t, Sym):
            a = [new() for _ in t.left]
            b = [new() for _ in t.right]
            return a + b, b + a
        if isinstance(t, Frob):
            x = new()
            n_in, n_out = {"mult": (2, 1), "unit": (0, 1), "comult": (1, 2), "counit": (1, 0)}[t.kind]
            return [x] * n_in, [x] * n_out
        if isinstance(t, Seq):
            a_in, a_out = walk(t.left)
            b_in, b_out = walk(t.right)
            for x, y in zip(a_out, b_in):
                parent[find(x)] = find(y)
            return a_in, b_out
        a_in, a_out = walk(t.left)
        b_in, b_out = walk(t.right)
        return a_in + b_in, a_out + b_out

    ins, outs = walk(t)
    roots = {find(x) for x in parent}
    label: dict = {}
    canon = lambda xs: [label.setdefault(find(x), len(label)) for x in xs]
    return canon(ins), canon(outs), len(roots)


def cospan_components(c):
    label: dict = {}
    canon = lambda xs: [label.setdefault(v, len(label)) for v in xs]
    return canon(c.inputs), canon(c.outputs), len(c.graph.nodes)


def test_frobenius_terms_match_component_oracle():
    rng = random.Random(12)
    for _ in range(300):
        t = random_term(rng, FROB_ONLY, 4)
        assert cospan_components(interp(t, FROB_ONLY)) == components(t)


def test_frobenius_terms_iso_iff_same_partition():
    rng = random.Random(13)
    for _ in range(200):
        a = random_term_from(rng, FROB_ONLY, ("w", "w"), 3)
        b = random_term_from(rng, FROB_ONLY, ("w", "w"), 3)
        if term_type(a, FROB_ONLY) != term_type(b, FROB_ONLY):
            continue
        assert cospan_iso(interp(a, FROB_ONLY), interp(b, FROB_ONLY)) == (components(a) == components(b))


def test_distinct_wirings_stay_distinct():
    # Frobenius-free terms over f, with the wires permuted differently
    sig = make_signature({"f": (1, 1), "k": (1, 1)})
    words = ["f + k", "k + f", "sym[1,1] ; (f + k)", "(f ; k) + id[1]", "(k ; f) + id[1]", "id[1] + (f ; k)"]
    cospans = [interp(parse(w, sig), sig) for w in words]
    for (i, a), (j, b) in itertools.combinations(enumerate(cospans), 2):
        assert not cospan_iso(a, b), (words[i], words[j])
