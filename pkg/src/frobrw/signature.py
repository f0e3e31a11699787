"""Coloured monoidal signatures and their signature hypergraphs."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

from .errors import SignatureError
from .hypergraph import Hypergraph

DEFAULT_COLOUR = "w"

Word = tuple[str, ...]
WordSpec = Union[int, str, Sequence[str]]


@dataclass(frozen=True)
class Colour:
    id: int
    name: str


@dataclass(frozen=True)
class Generator:
    name: str
    arity: Word
    coarity: Word


def changer_label(src: str, dst: str) -> str:
    return f"chg[{src},{dst}]"


_CHANGER_RE = re.compile(r"^chg\[([^,\]]+),([^,\]]+)\]$")


def parse_changer_label(label: str) -> tuple[str, str] | None:
    m = _CHANGER_RE.match(label)
    return (m.group(1), m.group(2)) if m else None


@dataclass
class Signature:
    colours: list[Colour]
    generators: list[Generator]
    frobenius: frozenset[str] = frozenset()
    changers: list[tuple[str, str]] = field(default_factory=list)

    @property
    def colour_names(self) -> list[str]:
        return [c.name for c in self.colours]

    @property
    def default_colour(self) -> str:
        return self.colours[0].name if self.colours else DEFAULT_COLOUR

    def generator(self, name: str) -> Generator | None:
        for g in self.generators:
            if g.name == name:
                return g
        return None

    def has_changer(self, src: str, dst: str) -> bool:
        return (src, dst) in self.changers

    def label_type(self, label: str) -> tuple[Word, Word] | None:
        """Arity/coarity words for a hyperedge label (generator or changer)."""
        gen = self.generator(label)
        if gen is not None:
            return gen.arity, gen.coarity
        pair = parse_changer_label(label)
        if pair is not None and self.has_changer(*pair):
            return (pair[0],), (pair[1],)
        return None

    def word(self, spec: WordSpec) -> Word:
        return parse_word(spec, self.default_colour)


def parse_word(spec: WordSpec, default_colour: str = DEFAULT_COLOUR) -> Word:
    """A colour word from an int (monochrome shorthand), a space-separated string, or a sequence."""
    if isinstance(spec, int):
        if spec < 0:
            raise SignatureError([f"negative arity {spec}"])
        return (default_colour,) * spec
    if isinstance(spec, str):
        tokens = spec.split()
        if len(tokens) == 1 and tokens[0].isdigit():
            return (default_colour,) * int(tokens[0])
        return tuple(tokens)
    return tuple(spec)


def make_signature(generators: Mapping[str, tuple[WordSpec, WordSpec]] | Iterable[tuple[str, WordSpec, WordSpec]] = (),
                   colours: Sequence[str] = (DEFAULT_COLOUR,), frobenius: Iterable[str] | None = None,
                   changers: Iterable[tuple[str, str]] = ()) -> Signature:
    """Build and validate a signature; frobenius defaults to every colour."""
    cols = [Colour(i, n) for i, n in enumerate(colours)]
    default = cols[0].name if cols else DEFAULT_COLOUR
    items = generators.items() if isinstance(generators, Mapping) else [(n, (a, c)) for n, a, c in generators]
    gens = [Generator(name, parse_word(a, default), parse_word(c, default)) for name, (a, c) in items]
    frob = frozenset(colours if frobenius is None else frobenius)
    sig = Signature(cols, gens, frob, list(changers))
    problems = validate_signature(sig)
    if problems:
        raise SignatureError(problems)
    return sig


def validate_signature(s: Signature) -> list[str]:
    """Every violated invariant, as messages; empty means the signature is valid."""
    problems = []
    names = [c.name for c in s.colours]
    if [c.id for c in s.colours] != list(range(len(s.colours))):
        problems.append("colour ids are not dense")
    if len(set(names)) != len(names):
        problems.append("duplicate colour name")
    declared = set(names)
    seen: set[str] = set()
    for g in s.generators:
        if g.name in seen:
            problems.append(f"duplicate generator {g.name!r}")
        seen.add(g.name)
        if parse_changer_label(g.name) or not re.match(r"^[A-Za-z_][\w']*$", g.name):
            problems.append(f"bad generator name {g.name!r}")
        for letter in g.arity + g.coarity:
            if letter not in declared:
                problems.append(f"undeclared colour {letter!r} in generator {g.name!r}")
    for c in sorted(s.frobenius - declared):
        problems.append(f"undeclared colour {c!r} in frobenius colours")
    for a, b in s.changers:
        if a not in declared or b not in declared:
            problems.append(f"undeclared colour in changer {a}>{b}")
        elif a == b:
            problems.append(f"changer {a}>{b} does not change colour")
    return problems


def signature_graph(s: Signature) -> Hypergraph:
    """One node per colour, one hyperedge per generator (and per declared changer)."""
    g = Hypergraph()
    index = {}
    for c in s.colours:
        index[c.name] = g.add_node(c.name, c.id)
    for gen in s.generators:
        g.add_edge(gen.name, [index[x] for x in gen.arity], [index[x] for x in gen.coarity])
    for a, b in s.changers:
        g.add_edge(changer_label(a, b), [index[a]], [index[b]])
    return g


def check_labelling(g: Hypergraph, s: Signature) -> list[str]:
    """Problems with g as an s-labelled hypergraph (unknown labels, colour mismatches)."""
    problems = []
    declared = set(s.colour_names)
    for v, c in sorted(g.nodes.items()):
        if c not in declared:
            problems.append(f"node {v} has undeclared colour {c!r}")
    for eid, e in sorted(g.edges.items()):
        typ = s.label_type(e.label)
        if typ is None:
            problems.append(f"edge {eid} has unknown label {e.label!r}")
        elif g.colour_word(e.sources) != typ[0] or g.colour_word(e.targets) != typ[1]:
            problems.append(f"edge {eid} ({e.label}) endpoint colours do not match its type")
    return problems


# text format

def _format_word(w: Word, default: str, monochrome: bool) -> str:
    if monochrome and all(x == default for x in w):
        return str(len(w))
    return " ".join(w) if w else "0"


def parse_signature_text(text: str) -> Signature:
    colours: list[str] | None = None
    frobenius: list[str] | None = None
    changers: list[tuple[str, str]] = []
    raw_gens: list[tuple[str, str, str]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep:
            raise SignatureError([f"line {lineno}: expected 'name : word -> word'"])
        if key in ("colours", "colors"):
            colours = rest.split()
        elif key == "frobenius":
            frobenius = rest.split()
        elif key == "changers":
            for tok in rest.replace(",", " ").split():
                a, arrow, b = tok.partition(">")
                if not arrow:
                    raise SignatureError([f"line {lineno}: changer {tok!r} should look like a>b"])
                changers.append((a, b))
        else:
            dom, arrow, cod = rest.partition("->")
            if not arrow:
                raise SignatureError([f"line {lineno}: missing '->'"])
            raw_gens.append((key, dom.strip(), cod.strip()))
    cols = colours or [DEFAULT_COLOUR]
    return make_signature([(n, a or "0", c or "0") for n, a, c in raw_gens], cols, frobenius, changers)


def signature_to_text(s: Signature) -> str:
    default = s.default_colour
    mono = len(s.colours) == 1
    lines = [f"colours: {' '.join(s.colour_names)}",
             f"frobenius: {' '.join(c for c in s.colour_names if c in s.frobenius)}"]
    if s.changers:
        lines.append("changers: " + " ".join(f"{a}>{b}" for a, b in s.changers))
    for g in s.generators:
        lines.append(f"{g.name} : {_format_word(g.arity, default, mono)} -> {_format_word(g.coarity, default, mono)}")
    return "\n".join(lines) + "\n"
