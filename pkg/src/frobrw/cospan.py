"""Discrete cospans of hypergraphs: composition, tensor, the Frobenius spiders, folding."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import GraphError
from .hypergraph import Homomorphism, Hypergraph, are_isomorphic, pushout_discrete
from .signature import Generator, Signature, Word, changer_label

FROB_KINDS = ("mult", "unit", "comult", "counit")


class BoundaryMismatch(GraphError):
    pass


@dataclass
class Cospan:
    graph: Hypergraph
    inputs: list[int]
    outputs: list[int]

    def __post_init__(self):
        for v in list(self.inputs) + list(self.outputs):
            if v not in self.graph.nodes:
                raise GraphError(f"leg points at missing node {v}")
        self.inputs, self.outputs = list(self.inputs), list(self.outputs)

    @property
    def dom(self) -> Word:
        return self.graph.colour_word(self.inputs)

    @property
    def cod(self) -> Word:
        return self.graph.colour_word(self.outputs)

    def copy(self) -> Cospan:
        return Cospan(self.graph.copy(), self.inputs, self.outputs)

    def compact(self) -> Cospan:
        g, nm, _ = self.graph.compact()
        return Cospan(g, [nm[v] for v in self.inputs], [nm[v] for v in self.outputs])


@dataclass
class InterfacedGraph:
    """A hypergraph with one interface leg J -> G.

    ``split`` records how many leading interface entries were inputs, so a folded
    cospan can be unfolded exactly.
    """
    graph: Hypergraph
    interface: list[int] = field(default_factory=list)
    split: int | None = None

    def __post_init__(self):
        self.interface = list(self.interface)
        for v in self.interface:
            if v not in self.graph.nodes:
                raise GraphError(f"interface points at missing node {v}")

    @property
    def colours(self) -> Word:
        return self.graph.colour_word(self.interface)

    def legs_on(self, v: int) -> int:
        return sum(1 for x in self.interface if x == v)

    def copy(self) -> InterfacedGraph:
        return InterfacedGraph(self.graph.copy(), self.interface, self.split)

    def compact(self) -> InterfacedGraph:
        g, nm, _ = self.graph.compact()
        return InterfacedGraph(g, [nm[v] for v in self.interface], self.split)


def identity(word: Sequence[str]) -> Cospan:
    g = Hypergraph()
    nodes = [g.add_node(c) for c in word]
    return Cospan(g, nodes, nodes)


def symmetry(left: Sequence[str], right: Sequence[str]) -> Cospan:
    """Swap a block of wires coloured ``left`` past a block coloured ``right``."""
    g = Hypergraph()
    a = [g.add_node(c) for c in left]
    b = [g.add_node(c) for c in right]
    return Cospan(g, a + b, b + a)


def generator(gen: Generator) -> Cospan:
    g = Hypergraph()
    ins = [g.add_node(c) for c in gen.arity]
    outs = [g.add_node(c) for c in gen.coarity]
    g.add_edge(gen.name, ins, outs)
    return Cospan(g, ins, outs)


def changer(src: str, dst: str) -> Cospan:
    g = Hypergraph()
    a, b = g.add_node(src), g.add_node(dst)
    g.add_edge(changer_label(src, dst), [a], [b])
    return Cospan(g, [a], [b])


def frob(colour: str, kind: str, sig: Signature | None = None) -> Cospan:
    """The single-node spider for one Frobenius generator."""
    if kind not in FROB_KINDS:
        raise GraphError(f"unknown Frobenius generator {kind!r}")
    if sig is not None and colour not in sig.frobenius:
        raise GraphError(f"colour {colour!r} carries no Frobenius structure")
    g = Hypergraph()
    v = g.add_node(colour)
    legs = {"mult": ([v, v], [v]), "unit": ([], [v]), "comult": ([v], [v, v]), "counit": ([v], [])}
    ins, outs = legs[kind]
    return Cospan(g, ins, outs)


def empty() -> Cospan:
    return Cospan(Hypergraph(), [], [])


def compose(a: Cospan, b: Cospan) -> Cospan:
    """Sequential composite a ; b, by pushout over the shared boundary."""
    if a.cod != b.dom:
        raise BoundaryMismatch(f"cannot compose: codomain {list(a.cod)} vs domain {list(b.dom)}")
    g, inj_a, inj_b = pushout_discrete(a.graph, b.graph, a.outputs, b.inputs)
    return Cospan(g, [inj_a[v] for v in a.inputs], [inj_b[v] for v in b.outputs]).compact()


def tensor(a: Cospan, b: Cospan) -> Cospan:
    g, nm, _ = a.graph.disjoint_union(b.graph)
    return Cospan(g, a.inputs + [nm[v] for v in b.inputs], a.outputs + [nm[v] for v in b.outputs]).compact()


def fold(a: Cospan) -> InterfacedGraph:
    """Bend the inputs round to the outputs: interface = inputs ++ outputs."""
    return InterfacedGraph(a.graph.copy(), a.inputs + a.outputs, split=len(a.inputs))


def unfold(ig: InterfacedGraph, split: int | None = None) -> Cospan:
    k = ig.split if split is None else split
    if k is None or not 0 <= k <= len(ig.interface):
        raise GraphError("interfaced graph carries no input/output split")
    return Cospan(ig.graph.copy(), ig.interface[:k], ig.interface[k:])


def _leg_map(src: Sequence[int], dst: Sequence[int]) -> dict[int, int] | None:
    fixed: dict[int, int] = {}
    back: dict[int, int] = {}
    for x, y in zip(src, dst):
        if fixed.setdefault(x, y) != y or back.setdefault(y, x) != x:
            return None
    return fixed


def interfaced_isomorphism(a: InterfacedGraph, b: InterfacedGraph) -> Homomorphism | None:
    """Graph isomorphism commuting with the interface legs position by position."""
    if a.colours != b.colours:
        return None
    fixed = _leg_map(a.interface, b.interface)
    if fixed is None:
        return None
    return are_isomorphic(a.graph, b.graph, fixed)


def cospan_isomorphism(a: Cospan, b: Cospan) -> Homomorphism | None:
    if a.dom != b.dom or a.cod != b.cod:
        return None
    return interfaced_isomorphism(fold(a), fold(b))


def cospan_iso(a: Cospan, b: Cospan) -> bool:
    return cospan_isomorphism(a, b) is not None


def interfaced_iso(a: InterfacedGraph, b: InterfacedGraph) -> bool:
    return interfaced_isomorphism(a, b) is not None
