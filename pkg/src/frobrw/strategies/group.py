"""Group algebra rewriting: a multiplication m, unit u and inverse i over one Frobenius colour.

Structural rules (associativity, units, inverse) always fire first. Naturality
rules push m, i and u through copying and deleting; each such step is kept
only when the depth profile of the graph strictly drops.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..cospan import InterfacedGraph
from ..dpoi import Match, Rule, complements_for, rewrite_step, rule_from_terms
from ..errors import RewriteError
from ..hypergraph import find_homomorphisms, is_acyclic
from ..signature import Signature, make_signature
from ..term import parse
from .order import profile, revlex_less

STRUCTURAL = [
    ("assoc", "(m + id[1]) ; m", "(id[1] + m) ; m"),
    ("inverse", "frob.comult ; (id[1] + i) ; m", "frob.counit ; u"),
    ("left-unit", "(u + id[1]) ; m", "id[1]"),
    ("right-unit", "(id[1] + u) ; m", "id[1]"),
]

NATURALITY = [
    ("m-copy", "m ; frob.comult", "(frob.comult + frob.comult) ; (id[1] + sym[1,1] + id[1]) ; (m + m)"),
    ("m-delete", "m ; frob.counit", "frob.counit + frob.counit"),
    ("i-copy", "i ; frob.comult", "frob.comult ; (i + i)"),
    ("i-delete", "i ; frob.counit", "frob.counit"),
    ("u-copy", "u ; frob.comult", "u + u"),
    ("u-delete", "u ; frob.counit", "id[0]"),
]


def group_signature() -> Signature:
    return make_signature({"m": (2, 1), "u": (0, 1), "i": (1, 1)})


def _rules(table, sig: Signature) -> list[Rule]:
    return [rule_from_terms(name, parse(l, sig), parse(r, sig), sig) for name, l, r in table]


def structural_rules(sig: Signature | None = None) -> list[Rule]:
    return _rules(STRUCTURAL, sig or group_signature())


def naturality_rules(sig: Signature | None = None) -> list[Rule]:
    return _rules(NATURALITY, sig or group_signature())


def left_nested_m(g: InterfacedGraph) -> int:
    """m edges whose first (upper) input is produced by another m edge."""
    graph = g.graph
    produced_by_m = {t for e in graph.edges.values() if e.label == "m" for t in e.targets}
    return sum(1 for e in graph.edges.values() if e.label == "m" and e.sources[0] in produced_by_m)


def left_weight(g: InterfacedGraph) -> int:
    """Sum over m edges of the size of the m-tree feeding their first input.

    Associativity always lowers this, even when ``left_nested_m`` stays put
    (the middle operand being an m output itself).
    """
    graph = g.graph
    producer = {t: e for e in graph.edges.values() for t in e.targets}
    sizes: dict[int, int] = {}

    def size(v: int) -> int:
        if v not in sizes:
            e = producer.get(v)
            sizes[v] = 1 + (size(e.sources[0]) + size(e.sources[1]) if e is not None and e.label == "m" else 0)
        return sizes[v]
    return sum(size(e.sources[0]) for e in graph.edges.values() if e.label == "m")


def measure(g: InterfacedGraph) -> tuple:
    """The termination triple: depth profile, left-nested m count, edge count."""
    return (profile(g), left_nested_m(g), len(g.graph.edges))


def _candidates(rules: list[Rule], host: InterfacedGraph) -> list[tuple[tuple, int, Rule, object]]:
    found = []
    for idx, rule in enumerate(rules):
        for hom in find_homomorphisms(rule.lhs.graph, host.graph):
            found.append((tuple(sorted(hom.edges.values())), idx, rule, hom))
    found.sort(key=lambda c: (c[0], c[1]))
    return found


@dataclass
class GroupLogEntry:
    phase: str
    rule: str
    accepted: bool
    before: list[int]
    after: list[int]
    result: InterfacedGraph | None = None

    def record(self) -> dict:
        return {"phase": self.phase, "rule": self.rule, "accepted": self.accepted,
                "before": self.before, "after": self.after}


@dataclass
class GroupRun:
    start: InterfacedGraph
    final: InterfacedGraph
    log: list[GroupLogEntry] = field(default_factory=list)
    exhausted: bool = False

    @property
    def accepted(self) -> list[GroupLogEntry]:
        return [e for e in self.log if e.accepted]


def _structural_step(rules: list[Rule], host: InterfacedGraph) -> tuple[Rule, InterfacedGraph] | None:
    for _, _, rule, hom in _candidates(rules, host):
        comp = next(complements_for(rule, hom, host), None)
        if comp is not None:
            return rule, rewrite_step(rule, host, Match(rule, hom, comp))
    return None


def _naturality_step(rules: list[Rule], host: InterfacedGraph, current: list[int],
                     log: list[GroupLogEntry], log_rejections: bool) -> tuple[Rule, InterfacedGraph] | None:
    for _, _, rule, hom in _candidates(rules, host):
        # only single-attachment splits of the copied node are explored
        for comp in complements_for(rule, hom, host, mode="peel"):
            result = rewrite_step(rule, host, Match(rule, hom, comp))
            after = profile(result)
            if revlex_less(after, current):
                return rule, result
            if log_rejections:
                log.append(GroupLogEntry("naturality", rule.name, False, current, after))
    return None


def group_reduce(host: InterfacedGraph, max_steps: int | None = None, log_rejections: bool = False) -> GroupRun:
    """Run the group strategy to a fixpoint (or until ``max_steps`` accepted steps)."""
    if not is_acyclic(host.graph):
        raise RewriteError("group strategy needs an acyclic host")
    sig = group_signature()
    structural, natural = structural_rules(sig), naturality_rules(sig)
    run = GroupRun(host, host)
    current = host
    budget = max_steps if max_steps is not None else 10 * max(1, len(host.graph.edges)) + 10
    for _ in range(budget):
        before = profile(current)
        step = _structural_step(structural, current)
        phase = "structural"
        if step is None:
            step = _naturality_step(natural, current, before, run.log, log_rejections)
            phase = "naturality"
        if step is None:
            run.final = current
            return run
        rule, current = step
        run.log.append(GroupLogEntry(phase, rule.name, True, before, profile(current), current))
    run.final = current
    run.exhausted = (_structural_step(structural, current) is not None
                     or _naturality_step(natural, current, profile(current), [], False) is not None)
    return run
