"""Sigma-terms: syntax tree, parser with type checking, and interpretation into cospans.

Grammar (``;`` binds looser than ``+``, both associate to the left)::

    t ::= name | id[w] | sym[w, w] | frob.K[c] | frobN.K[c] | chg[c, c] | t ; t | t + t | ( t )

where K is mult/unit/comult/counit and a word w is either a number (that many
wires of the default colour) or a space-separated list of colour names.
``frobN`` (N >= 2) names the N-th Frobenius structure on a colour; only the
first one has a direct cospan interpretation.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from . import cospan as csp
from .cospan import Cospan
from .errors import GraphError, TermError
from .signature import Signature, Word


@dataclass(frozen=True)
class Gen:
    name: str


@dataclass(frozen=True)
class Id:
    word: Word


@dataclass(frozen=True)
class Sym:
    left: Word
    right: Word


@dataclass(frozen=True)
class Frob:
    colour: str
    kind: str
    family: int = 0


@dataclass(frozen=True)
class Changer:
    src: str
    dst: str


@dataclass(frozen=True)
class Seq:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Par:
    left: "Term"
    right: "Term"


Term = Union[Gen, Id, Sym, Frob, Changer, Seq, Par]


def seq(*terms: Term) -> Term:
    out = terms[0]
    for t in terms[1:]:
        out = Seq(out, t)
    return out


def par(*terms: Term) -> Term:
    out = terms[0]
    for t in terms[1:]:
        out = Par(out, t)
    return out


# typing

def _frob_type(c: str, kind: str) -> tuple[Word, Word]:
    return {"mult": ((c, c), (c,)), "unit": ((), (c,)),
            "comult": ((c,), (c, c)), "counit": ((c,), ())}[kind]


def term_type(t: Term, sig: Signature) -> tuple[Word, Word]:
    """(domain, codomain) colour words; raises TermError on ill-typed terms."""
    if isinstance(t, Gen):
        gen = sig.generator(t.name)
        if gen is None:
            raise TermError(f"unknown generator {t.name!r}")
        return gen.arity, gen.coarity
    if isinstance(t, Id):
        _check_colours(t.word, sig)
        return t.word, t.word
    if isinstance(t, Sym):
        _check_colours(t.left + t.right, sig)
        return t.left + t.right, t.right + t.left
    if isinstance(t, Frob):
        if t.kind not in csp.FROB_KINDS:
            raise TermError(f"unknown Frobenius generator {t.kind!r}")
        if t.colour not in sig.frobenius:
            raise TermError(f"colour {t.colour!r} carries no Frobenius structure")
        return _frob_type(t.colour, t.kind)
    if isinstance(t, Changer):
        if not sig.has_changer(t.src, t.dst):
            raise TermError(f"undeclared colour changer {t.src}>{t.dst}")
        return (t.src,), (t.dst,)
    if isinstance(t, Seq):
        d1, c1 = term_type(t.left, sig)
        d2, c2 = term_type(t.right, sig)
        if c1 != d2:
            raise TermError(f"type mismatch at ';': {_show(c1)} vs {_show(d2)}")
        return d1, c2
    if isinstance(t, Par):
        d1, c1 = term_type(t.left, sig)
        d2, c2 = term_type(t.right, sig)
        return d1 + d2, c1 + c2
    raise TypeError(f"not a term: {t!r}")


def _check_colours(word: Word, sig: Signature) -> None:
    for c in word:
        if c not in sig.colour_names:
            raise TermError(f"undeclared colour {c!r}")


def _show(w: Word) -> str:
    return "[" + " ".join(w) + "]"


# parsing

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][\w']*)|(?P<punct>[;+()\[\],.]))")


def _tokenize(src: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(src):
        if src[pos:].strip() == "":
            break
        m = _TOKEN.match(src, pos)
        if m is None:
            raise TermError(f"unexpected character {src[pos:].lstrip()[:1]!r}", len(src) - len(src[pos:].lstrip()))
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("eof", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str, sig: Signature):
        self.tokens = _tokenize(src)
        self.i = 0
        self.sig = sig

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self, value: str | None = None, kind: str | None = None) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            want = value or kind
            got = tok[1] or "end of input"
            raise TermError(f"expected {want!r}, found {got!r}", tok[2])
        self.i += 1
        return tok

    def typed(self, t: Term, pos: int) -> Term:
        try:
            term_type(t, self.sig)
        except TermError as exc:
            raise TermError(str(exc), pos) from None
        return t

    def parse(self) -> Term:
        t = self.seq()
        self.take(kind="eof")
        return t

    def seq(self) -> Term:
        t = self.par()
        while self.peek()[1] == ";":
            pos = self.take(";")[2]
            t = self.typed(Seq(t, self.par()), pos)
        return t

    def par(self) -> Term:
        t = self.atom()
        while self.peek()[1] == "+":
            self.take("+")
            t = Par(t, self.atom())
        return t

    def word(self, stop: tuple[str, ...]) -> Word:
        kind, value, pos = self.peek()
        if kind == "num":
            self.take()
            return (self.sig.default_colour,) * int(value)
        names = []
        while self.peek()[0] == "name":
            names.append(self.take()[1])
        if self.peek()[1] not in stop:
            tok = self.peek()
            raise TermError(f"bad word, found {tok[1] or 'end of input'!r}", tok[2])
        return tuple(names)

    def atom(self) -> Term:
        kind, value, pos = self.peek()
        if value == "(":
            self.take("(")
            t = self.seq()
            self.take(")")
            return t
        if kind != "name":
            raise TermError(f"expected a term, found {value or 'end of input'!r}", pos)
        self.take()
        if value == "id":
            self.take("[")
            w = self.word(("]",))
            self.take("]")
            return self.typed(Id(w), pos)
        if value == "sym":
            self.take("[")
            a = self.word((",",))
            self.take(",")
            b = self.word(("]",))
            self.take("]")
            return self.typed(Sym(a, b), pos)
        if value == "chg":
            self.take("[")
            a = self.take(kind="name")[1]
            self.take(",")
            b = self.take(kind="name")[1]
            self.take("]")
            return self.typed(Changer(a, b), pos)
        m = re.fullmatch(r"frob(\d*)", value)
        if m and self.peek()[1] == ".":
            family = int(m.group(1) or 1) - 1
            if family < 0:
                raise TermError("Frobenius families are numbered from 1", pos)
            self.take(".")
            k = self.take(kind="name")[1]
            colour = self.sig.default_colour
            if self.peek()[1] == "[":
                self.take("[")
                colour = self.take(kind="name")[1]
                self.take("]")
            return self.typed(Frob(colour, k, family), pos)
        return self.typed(Gen(value), pos)


def parse(src: str, sig: Signature) -> Term:
    """Parse and type-check a term."""
    return _Parser(src, sig).parse()


def parse_term_file(text: str, sig: Signature) -> list[Term]:
    terms = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            terms.append(parse(line, sig))
    return terms


def _word_text(w: Word, sig: Signature | None) -> str:
    default = sig.default_colour if sig else None
    if not w:
        return "0"
    if default is not None and all(c == default for c in w):
        return str(len(w))
    return " ".join(w)


def to_text(t: Term, sig: Signature | None = None) -> str:
    """Render a term in the parser's syntax (parse(to_text(t)) == t)."""
    if isinstance(t, Gen):
        return t.name
    if isinstance(t, Id):
        return f"id[{_word_text(t.word, sig)}]"
    if isinstance(t, Sym):
        return f"sym[{_word_text(t.left, sig)}, {_word_text(t.right, sig)}]"
    if isinstance(t, Frob):
        prefix = "frob" if t.family == 0 else f"frob{t.family + 1}"
        return f"{prefix}.{t.kind}[{t.colour}]"
    if isinstance(t, Changer):
        return f"chg[{t.src},{t.dst}]"
    if isinstance(t, Seq):
        right = to_text(t.right, sig)
        if isinstance(t.right, Seq):
            right = f"({right})"
        return f"{to_text(t.left, sig)} ; {right}"
    if isinstance(t, Par):
        left, right = to_text(t.left, sig), to_text(t.right, sig)
        if isinstance(t.left, Seq):
            left = f"({left})"
        if isinstance(t.right, (Seq, Par)):
            right = f"({right})"
        return f"{left} + {right}"
    raise TypeError(f"not a term: {t!r}")


# interpretation

def interp(t: Term, sig: Signature) -> Cospan:
    """Structural interpretation of a typed term as a discrete cospan."""
    if isinstance(t, Gen):
        gen = sig.generator(t.name)
        if gen is None:
            raise TermError(f"unknown generator {t.name!r}")
        return csp.generator(gen)
    if isinstance(t, Id):
        return csp.identity(t.word)
    if isinstance(t, Sym):
        return csp.symmetry(t.left, t.right)
    if isinstance(t, Frob):
        if t.family != 0:
            raise TermError("a second Frobenius structure on one colour needs the polychromatic translation first")
        if t.colour not in sig.frobenius:
            raise TermError(f"colour {t.colour!r} carries no Frobenius structure")
        return csp.frob(t.colour, t.kind)
    if isinstance(t, Changer):
        return csp.changer(t.src, t.dst)
    if isinstance(t, Seq):
        try:
            return csp.compose(interp(t.left, sig), interp(t.right, sig))
        except GraphError as exc:
            raise TermError(str(exc)) from None
    if isinstance(t, Par):
        return csp.tensor(interp(t.left, sig), interp(t.right, sig))
    raise TypeError(f"not a term: {t!r}")


def term_equal_mod_frobenius(s: Term, t: Term, sig: Signature) -> bool:
    """Equality modulo the symmetric monoidal and Frobenius laws, decided on interpretations."""
    if term_type(s, sig) != term_type(t, sig):
        return False
    return csp.cospan_iso(interp(s, sig), interp(t, sig))


def generators_used(t: Term) -> set[str]:
    if isinstance(t, Gen):
        return {t.name}
    if isinstance(t, (Seq, Par)):
        return generators_used(t.left) | generators_used(t.right)
    return set()
