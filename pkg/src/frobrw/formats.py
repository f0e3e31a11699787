"""JSON files for graphs, cospans, rules and signatures, plus a DOT exporter.

Every writer emits sorted keys with a fixed indent so equal objects give
byte-identical files.
"""
from __future__ import annotations

import json
from typing import Any

from .cospan import Cospan, InterfacedGraph, fold, unfold
from .dpoi import Rule, parse_rule_file
from .errors import GraphError, SignatureError
from .hypergraph import Hypergraph
from .signature import Signature, make_signature, parse_signature_text


def dumps(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=1) + "\n"


def _load(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"not valid JSON: {exc}") from None


# graphs and cospans

def graph_to_dict(g: Hypergraph) -> dict:
    return {"nodes": [{"id": v, "colour": c} for v, c in sorted(g.nodes.items())],
            "edges": [{"id": i, "label": e.label, "sources": list(e.sources), "targets": list(e.targets)}
                      for i, e in sorted(g.edges.items())]}


def graph_from_dict(data: dict) -> Hypergraph:
    g = Hypergraph()
    try:
        for n in data.get("nodes", []):
            g.add_node(str(n.get("colour", "w")), int(n["id"]))
        for e in data.get("edges", []):
            g.add_edge(str(e["label"]), [int(x) for x in e["sources"]], [int(x) for x in e["targets"]], int(e["id"]))
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise GraphError(f"malformed graph file: {exc!r}") from None
    return g


def cospan_to_dict(c: Cospan | InterfacedGraph) -> dict:
    if isinstance(c, InterfacedGraph):
        c = unfold(c)
    data = graph_to_dict(c.graph)
    data["inputs"], data["outputs"] = list(c.inputs), list(c.outputs)
    return data


def cospan_from_dict(data: dict) -> Cospan:
    g = graph_from_dict(data)
    try:
        return Cospan(g, [int(v) for v in data.get("inputs", [])], [int(v) for v in data.get("outputs", [])])
    except (TypeError, ValueError) as exc:
        raise GraphError(f"malformed legs: {exc!r}") from None


def read_cospan(text: str) -> Cospan:
    return cospan_from_dict(_load(text))


def read_host(text: str) -> InterfacedGraph:
    """A cospan file, folded; a bare graph file gets an empty interface."""
    return fold(read_cospan(text))


def write_cospan(c: Cospan | InterfacedGraph) -> str:
    return dumps(cospan_to_dict(c))


# rules

def rule_to_dict(rule: Rule) -> dict:
    return {"name": rule.name, "lhs": cospan_to_dict(rule.lhs), "rhs": cospan_to_dict(rule.rhs)}


def rule_from_dict(data: dict) -> Rule:
    try:
        return Rule(str(data["name"]), cospan_from_dict(data["lhs"]), cospan_from_dict(data["rhs"]))
    except (KeyError, TypeError) as exc:
        raise GraphError(f"malformed rule: {exc!r}") from None


def read_rules(text: str, sig: Signature | None) -> list[Rule]:
    """Either JSON (one rule or a list) or text lines ``name : lterm => rterm``."""
    stripped = text.lstrip()
    if stripped.startswith(("[", "{")):
        data = _load(text)
        return [rule_from_dict(d) for d in (data if isinstance(data, list) else [data])]
    if sig is None:
        raise SignatureError(["term rules need a signature"])
    return parse_rule_file(text, sig)


def write_rules(rules: list[Rule]) -> str:
    return dumps([rule_to_dict(r) for r in rules])


# signatures

def read_signature(text: str) -> Signature:
    """Text lines (``f : 2 -> 1``) or JSON with colours, frobenius, changers and generators."""
    if not text.lstrip().startswith("{"):
        return parse_signature_text(text)
    data = _load(text)
    try:
        gens = data.get("generators", {})
        if isinstance(gens, dict):
            gens = [(name, *types) for name, types in gens.items()]
        colours = data.get("colours") or ["w"]
        return make_signature([(n, str(a), str(c)) for n, a, c in gens], colours,
                              data.get("frobenius"), [tuple(p) for p in data.get("changers", [])])
    except (TypeError, ValueError, AttributeError) as exc:
        raise SignatureError([f"malformed signature file: {exc!r}"]) from None


# DOT

_PALETTE = ["black", "red", "blue", "darkgreen", "orange", "purple"]


def to_dot(c: Cospan | InterfacedGraph | Hypergraph, name: str = "G") -> str:
    """Nodes as coloured dots, hyperedges as boxes with numbered ports, legs as small boundary points."""
    if isinstance(c, InterfacedGraph):
        c = unfold(c)
    if isinstance(c, Hypergraph):
        c = Cospan(c, [], [])
    g = c.graph
    colours = sorted(set(g.nodes.values()))
    shade = {col: _PALETTE[i % len(_PALETTE)] for i, col in enumerate(colours)}
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for v, col in sorted(g.nodes.items()):
        lines.append(f'  n{v} [shape=point, width=0.12, color="{shade[col]}", xlabel="{v}"];')
    for i, e in sorted(g.edges.items()):
        label = e.label.replace('"', '\\"')
        lines.append(f'  e{i} [shape=box, label="{label}"];')
        for k, v in enumerate(e.sources):
            lines.append(f'  n{v} -> e{i} [headlabel="{k}", arrowhead=none];')
        for k, v in enumerate(e.targets):
            lines.append(f'  e{i} -> n{v} [taillabel="{k}"];')
    for side, legs in (("in", c.inputs), ("out", c.outputs)):
        for k, v in enumerate(legs):
            lines.append(f'  {side}{k} [shape=plaintext, label="{side}{k}"];')
            edge = f"{side}{k} -> n{v}" if side == "in" else f"n{v} -> {side}{k}"
            lines.append(f"  {edge} [style=dashed, arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"
