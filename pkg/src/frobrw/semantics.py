"""Semantic oracles: brute-force finite relational models and GF(2) linear relations.

Two independent routes are provided for each question so that they can be
checked against each other: ``eval_term`` composes relations along the term
syntax, ``eval_graph`` solves the constraint network of an interpreted graph;
``ib_subspace`` does linear algebra, while ``eval_graph`` with ``ib_model``
enumerates.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import gf2
from .cospan import Cospan, InterfacedGraph
from .errors import SemanticsError
from .gf2 import Subspace2
from .hypergraph import Hypergraph
from .signature import Signature, Word, make_signature, parse_changer_label
from .term import Changer, Frob, Gen, Id, Par, Seq, Sym, Term

EQUAL = "equal"
PARITY = "parity"
TABLE_LIMIT = 10 ** 7

IB_BLACK = "b"
IB_RED = "r"


@dataclass
class FiniteModel:
    """Carriers per colour and a tuple set per generator label.

    Frobenius structures are spiders: ``equal`` (all legs carry one value) by
    default, or ``parity`` (legs sum to zero mod 2) for colours listed in
    ``spiders``. Changers default to the identity map between carriers.
    """
    carriers: dict[str, tuple]
    relations: dict[str, frozenset] = field(default_factory=dict)
    spiders: dict[str, str] = field(default_factory=dict)
    changers: dict[tuple[str, str], dict] = field(default_factory=dict)

    def carrier(self, colour: str) -> tuple:
        if colour not in self.carriers:
            raise SemanticsError(f"no carrier for colour {colour!r}")
        return self.carriers[colour]

    def spider(self, colour: str) -> str:
        return self.spiders.get(colour, EQUAL)

    def changer_map(self, src: str, dst: str) -> dict:
        if (src, dst) in self.changers:
            return self.changers[(src, dst)]
        a, b = self.carrier(src), self.carrier(dst)
        if set(a) != set(b):
            raise SemanticsError(f"changer {src}>{dst} needs an explicit bijection")
        return {x: x for x in a}

    def label_tuples(self, label: str) -> frozenset:
        if label in self.relations:
            return self.relations[label]
        pair = parse_changer_label(label)
        if pair is not None:
            return frozenset(self.changer_map(*pair).items())
        raise SemanticsError(f"label {label!r} is not interpreted in the model")


@dataclass(frozen=True)
class Relation:
    dom: Word
    cod: Word
    pairs: frozenset

    def __len__(self) -> int:
        return len(self.pairs)


# models used throughout the tests

def cyclic_group_model(order: int = 3, colour: str = "w") -> FiniteModel:
    """The group algebra generators m, u, i interpreted in Z_order."""
    g = tuple(range(order))
    return FiniteModel(
        {colour: g},
        {"m": frozenset((a, b, (a + b) % order) for a in g for b in g),
         "u": frozenset({(0,)}),
         "i": frozenset((a, (-a) % order) for a in g)})


def ib_model() -> FiniteModel:
    """Black = copying (equality) spider, red = adding (parity) spider, over Z2."""
    return FiniteModel({IB_BLACK: (0, 1), IB_RED: (0, 1)}, {}, {IB_RED: PARITY})


def ib_signature() -> Signature:
    return make_signature({}, colours=(IB_BLACK, IB_RED), changers=[(IB_BLACK, IB_RED), (IB_RED, IB_BLACK)])


def load_model(text: str) -> FiniteModel:
    """Model file: JSON with "carriers", "relations", optional "spiders" and "changers"."""
    data = json.loads(text)
    try:
        carriers = {c: tuple(vals) for c, vals in data["carriers"].items()}
        relations = {name: frozenset(tuple(t) for t in tuples) for name, tuples in data.get("relations", {}).items()}
        changers = {}
        for key, mapping in data.get("changers", {}).items():
            src, _, dst = key.partition(">")
            changers[(src, dst)] = {a: b for a, b in mapping}
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise SemanticsError(f"malformed model file: {exc}") from None
    return FiniteModel(carriers, relations, dict(data.get("spiders", {})), changers)


def _spider_tuples(model: FiniteModel, colour: str, legs: int) -> list[tuple]:
    carrier = model.carrier(colour)
    if model.spider(colour) == EQUAL:
        return [(x,) * legs for x in carrier]
    return [t for t in itertools.product(carrier, repeat=legs) if sum(t) % 2 == 0]


# evaluation of graphs by constraint joins

def _boundary(c: Cospan | InterfacedGraph) -> tuple[Hypergraph, list[int], int]:
    if isinstance(c, Cospan):
        return c.graph, c.inputs + c.outputs, len(c.inputs)
    split = c.split if c.split is not None else len(c.interface)
    return c.graph, list(c.interface), split


def eval_graph(model: FiniteModel, c: Cospan | InterfacedGraph) -> Relation:
    """The relation denoted by a cospan: boundary projections of all consistent node assignments."""
    g, legs, split = _boundary(c)
    domains: dict = {}

    def node_var(v: int, slot) -> object:
        colour = g.nodes[v]
        var = ("n", v) if model.spider(colour) == EQUAL else slot
        domains[var] = model.carrier(colour)
        return var

    constraints: list[tuple[list, list]] = []
    parity_slots: dict[int, list] = {v: [] for v in g.nodes if model.spider(g.nodes[v]) != EQUAL}
    for eid in sorted(g.edges):
        e = g.edges[eid]
        cvars = []
        for pos, v in enumerate(e.endpoints()):
            var = node_var(v, ("s", eid, pos))
            if v in parity_slots:
                parity_slots[v].append(var)
            cvars.append(var)
        constraints.append((cvars, list(model.label_tuples(e.label))))
    leg_vars = []
    for i, v in enumerate(legs):
        var = node_var(v, ("l", i))
        if v in parity_slots:
            parity_slots[v].append(var)
        leg_vars.append(var)
    for v, slots in sorted(parity_slots.items()):
        constraints.append((slots, _spider_tuples(model, g.nodes[v], len(slots))))
    for v in sorted(g.nodes):
        if model.spider(g.nodes[v]) == EQUAL:
            node_var(v, None)

    schema, rows = _solve(constraints, set(leg_vars))
    for var in dict.fromkeys(leg_vars):
        if var not in schema:
            schema = schema + [var]
            rows = {r + (x,) for r in rows for x in domains[var]}
            _guard(rows)
    # interior variables that never met a constraint only matter if their carrier is empty
    for var, dom in domains.items():
        if not dom and var not in schema:
            rows = set()
    pos = {var: i for i, var in enumerate(schema)}
    pairs = set()
    for r in rows:
        vals = tuple(r[pos[var]] for var in leg_vars)
        pairs.add((vals[:split], vals[split:]))
    word = g.colour_word(legs)
    return Relation(word[:split], word[split:], frozenset(pairs))


def _guard(rows) -> None:
    if len(rows) > TABLE_LIMIT:
        raise SemanticsError(f"assignment table exceeded {TABLE_LIMIT} rows")


def _solve(constraints: list[tuple[list, list]], keep: set) -> tuple[list, set]:
    schema: list = []
    rows: set = {()}
    pending = list(range(len(constraints)))
    while pending:
        have = set(schema)
        # join the constraint sharing most variables with the table so far
        pick = max(pending, key=lambda i: (len(have & set(constraints[i][0])), -i))
        pending.remove(pick)
        cvars, allowed = constraints[pick]
        schema, rows = _join(schema, rows, cvars, allowed)
        needed = set(keep)
        for i in pending:
            needed.update(constraints[i][0])
        if any(v not in needed for v in schema):
            idx = [i for i, v in enumerate(schema) if v in needed]
            schema = [schema[i] for i in idx]
            rows = {tuple(r[i] for i in idx) for r in rows}
        if not rows:
            return schema, rows
    return schema, rows


def _join(schema: list, rows: set, cvars: list, allowed: Iterable[tuple]) -> tuple[list, set]:
    pos = {v: i for i, v in enumerate(schema)}
    distinct = list(dict.fromkeys(cvars))
    shared = [v for v in distinct if v in pos]
    fresh = [v for v in distinct if v not in pos]
    index: dict[tuple, list[tuple]] = {}
    for tup in allowed:
        assign: dict = {}
        if all(assign.setdefault(var, val) == val for var, val in zip(cvars, tup)):
            index.setdefault(tuple(assign[v] for v in shared), []).append(tuple(assign[v] for v in fresh))
    spos = [pos[v] for v in shared]
    out = set()
    for r in rows:
        for ext in index.get(tuple(r[i] for i in spos), ()):
            out.add(r + ext)
        _guard(out)
    return schema + fresh, out


# compositional evaluation of terms

def _identity(model: FiniteModel, word: Word) -> Relation:
    tuples = itertools.product(*(model.carrier(c) for c in word))
    return Relation(word, word, frozenset((t, t) for t in tuples))


def _split(tuples: Iterable[tuple], k: int) -> frozenset:
    return frozenset((t[:k], t[k:]) for t in tuples)


def compose_relations(a: Relation, b: Relation) -> Relation:
    if a.cod != b.dom:
        raise SemanticsError("relation boundaries do not match")
    by_input: dict[tuple, list[tuple]] = {}
    for x, y in b.pairs:
        by_input.setdefault(x, []).append(y)
    return Relation(a.dom, b.cod, frozenset((x, z) for x, y in a.pairs for z in by_input.get(y, ())))


def tensor_relations(a: Relation, b: Relation) -> Relation:
    return Relation(a.dom + b.dom, a.cod + b.cod,
                    frozenset((x1 + x2, y1 + y2) for x1, y1 in a.pairs for x2, y2 in b.pairs))


def eval_term(model: FiniteModel, t: Term, sig: Signature) -> Relation:
    """Relation of a term computed along its syntax (Seq = relational composition, Par = product)."""
    if isinstance(t, Gen):
        gen = sig.generator(t.name)
        if gen is None:
            raise SemanticsError(f"unknown generator {t.name!r}")
        return Relation(gen.arity, gen.coarity, _split(model.label_tuples(t.name), len(gen.arity)))
    if isinstance(t, Id):
        return _identity(model, t.word)
    if isinstance(t, Sym):
        word = t.left + t.right
        k = len(t.left)
        tuples = itertools.product(*(model.carrier(c) for c in word))
        return Relation(word, t.right + t.left, frozenset((x, x[k:] + x[:k]) for x in tuples))
    if isinstance(t, Frob):
        if t.family != 0:
            raise SemanticsError("only the first Frobenius structure has a finite-model reading")
        ins, outs = {"mult": (2, 1), "unit": (0, 1), "comult": (1, 2), "counit": (1, 0)}[t.kind]
        c = t.colour
        return Relation((c,) * ins, (c,) * outs, _split(_spider_tuples(model, c, ins + outs), ins))
    if isinstance(t, Changer):
        mapping = model.changer_map(t.src, t.dst)
        return Relation((t.src,), (t.dst,), frozenset(((a,), (b,)) for a, b in mapping.items()))
    if isinstance(t, Seq):
        return compose_relations(eval_term(model, t.left, sig), eval_term(model, t.right, sig))
    if isinstance(t, Par):
        return tensor_relations(eval_term(model, t.left, sig), eval_term(model, t.right, sig))
    raise TypeError(f"not a term: {t!r}")


# GF(2) semantics of two-coloured graphs

def relation_to_subspace(rel: Relation) -> Subspace2:
    """Read a 0/1 relation as a subspace of GF(2)^(m+n); raises if it is not linear."""
    dim = len(rel.dom) + len(rel.cod)
    vectors = [gf2.bits(x + y) for x, y in rel.pairs]
    space = Subspace2.span(dim, vectors)
    if len(set(vectors)) != 2 ** space.rank:
        raise SemanticsError("relation is not a linear subspace")
    return space


def _ib_edges(g: Hypergraph, black: str, red: str) -> list[tuple[int, int]]:
    """(black node, red node) per changer edge."""
    out = []
    for eid in sorted(g.edges):
        e = g.edges[eid]
        if len(e.sources) != 1 or len(e.targets) != 1 or parse_changer_label(e.label) is None:
            raise SemanticsError(f"edge {eid} ({e.label}) is not a colour changer")
        a, b = e.sources[0], e.targets[0]
        colours = (g.nodes[a], g.nodes[b])
        if colours == (black, red):
            out.append((a, b))
        elif colours == (red, black):
            out.append((b, a))
        else:
            raise SemanticsError(f"edge {eid} does not join a {black} node to a {red} node")
    return out


def _check_ib_colours(g: Hypergraph, black: str, red: str) -> None:
    for v, c in g.nodes.items():
        if c not in (black, red):
            raise SemanticsError(f"node {v} has colour {c!r}, expected {black!r} or {red!r}")


def ib_subspace(c: Cospan | InterfacedGraph, black: str = IB_BLACK, red: str = IB_RED) -> Subspace2:
    """Solution space over the boundary: black nodes are variables, red nodes parity equations.

    Interior black variables are projected out by elimination.
    """
    g, legs, _ = _boundary(c)
    _check_ib_colours(g, black, red)
    nlegs = len(legs)
    black_nodes = sorted(v for v, col in g.nodes.items() if col == black)
    column = {v: nlegs + i for i, v in enumerate(black_nodes)}
    ncols = nlegs + len(black_nodes)
    rows = []
    parity = {v: 0 for v, col in g.nodes.items() if col == red}
    for i, v in enumerate(legs):
        if v in column:
            rows.append((1 << i) | (1 << column[v]))
        else:
            parity[v] ^= 1 << i
    for b, r in _ib_edges(g, black, red):
        parity[r] ^= 1 << column[b]
    rows.extend(parity.values())
    boundary_rows = gf2.eliminate(rows, list(range(nlegs, ncols)), ncols)
    return Subspace2.solutions(nlegs, boundary_rows)


def _first_legs(g: Hypergraph, legs: Sequence[int]) -> dict[int, list[int]]:
    at: dict[int, list[int]] = {}
    for i, v in enumerate(legs):
        at.setdefault(v, []).append(i)
    return at


def readoff_reduced(host: Cospan | InterfacedGraph, mode: str = "cospan",
                    black: str = IB_BLACK, red: str = IB_RED) -> Subspace2:
    """Transcribe a reduced graph straight into its subspace, without elimination.

    ``cospan`` mode expects every black node to carry a leg and reads red nodes
    as equations (a basis of the annihilator). ``span`` mode expects a
    colour-swapped reduced graph, every red node carrying a leg, and reads each
    black node as a spanning vector.
    """
    g, legs, _ = _boundary(host)
    _check_ib_colours(g, black, red)
    nlegs = len(legs)
    at = _first_legs(g, legs)
    edges = _ib_edges(g, black, red)
    if mode == "cospan":
        for v, col in g.nodes.items():
            if col == black and v not in at:
                raise SemanticsError(f"black node {v} is interior; graph is not in cospan form")
        rows = []
        for v, idx in at.items():
            if g.nodes[v] == black:
                rows.extend((1 << idx[0]) | (1 << j) for j in idx[1:])
        parity = {v: 0 for v, col in g.nodes.items() if col == red}
        for v, idx in at.items():
            if g.nodes[v] == red:
                for j in idx:
                    parity[v] ^= 1 << j
        for b, r in edges:
            parity[r] ^= 1 << at[b][0]
        rows.extend(parity.values())
        return Subspace2.solutions(nlegs, rows)
    if mode == "span":
        for v, col in g.nodes.items():
            if col == red and v not in at:
                raise SemanticsError(f"red node {v} is interior; graph is not in span form")
            if col == black and v in at:
                raise SemanticsError(f"black node {v} carries a leg; graph is not in span form")
        generators = {v: 0 for v, col in g.nodes.items() if col == black}
        for b, r in edges:
            generators[b] ^= 1 << at[r][0]
        vectors = list(generators.values())
        for v, idx in at.items():
            vectors.extend((1 << idx[0]) | (1 << j) for j in idx[1:])
        return Subspace2.span(nlegs, vectors)
    raise ValueError(f"unknown read-off mode {mode!r}")


def readoff_equations(host: InterfacedGraph | Cospan, black: str = IB_BLACK, red: str = IB_RED
                      ) -> list[tuple[list[str], list[str]]]:
    """Equations of a cospan-form graph as (lhs, rhs) variable-name lists, one per red node.

    Inputs are named x0, x1, ... and outputs y0, y1, ...; a black node is named
    after its first leg. The lhs collects in-edges of the red node, the rhs its
    out-edges, each counted mod 2.
    """
    g, legs, split = _boundary(host)
    at = _first_legs(g, legs)
    names = [f"x{i}" if i < split else f"y{i - split}" for i in range(len(legs))]
    equations = []
    for r in sorted(v for v, col in g.nodes.items() if col == red):
        if r in at:
            raise SemanticsError(f"red node {r} carries a leg; graph is not in cospan form")
        lhs: dict[str, int] = {}
        rhs: dict[str, int] = {}
        for eid in sorted(g.edges):
            e = g.edges[eid]
            if e.targets == (r,) and g.nodes[e.sources[0]] == black:
                name = names[at[e.sources[0]][0]]
                lhs[name] = lhs.get(name, 0) ^ 1
            elif e.sources == (r,) and g.nodes[e.targets[0]] == black:
                name = names[at[e.targets[0]][0]]
                rhs[name] = rhs.get(name, 0) ^ 1
        equations.append((sorted(n for n, k in lhs.items() if k), sorted(n for n, k in rhs.items() if k)))
    return equations


def equations_subspace(equations: Sequence[tuple[Sequence[str], Sequence[str]]], inputs: int, outputs: int) -> Subspace2:
    """Solution space of named equations over x0.. (inputs) and y0.. (outputs)."""
    names = [f"x{i}" for i in range(inputs)] + [f"y{j}" for j in range(outputs)]
    col = {n: i for i, n in enumerate(names)}
    rows = []
    for lhs, rhs in equations:
        row = 0
        for n in list(lhs) + list(rhs):
            row ^= 1 << col[n]
        rows.append(row)
    return Subspace2.solutions(len(names), rows)
