"""``frobrw`` command line.

Exit codes: 0 success, 1 domain error (JSON diagnostic on stderr), 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import formats
from .dpoi import first_match, rewrite_closure
from .errors import FrobrwError, SemanticsError, TermError
from .multifrob import chrome_rule, make_poly_signature, transform_rule, upsilon_normalize
from .semantics import cyclic_group_model, eval_graph, ib_subspace, load_model
from .signature import Signature
from .strategies.group import group_reduce
from .strategies.ib import ib_reduce
from .term import Term, interp, parse, parse_term_file, term_type, to_text


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _signature(args) -> Signature:
    return formats.read_signature(_read(args.sig))


def _terms(args, sig: Signature) -> list[Term]:
    if args.term is not None:
        return [parse(args.term, sig)]
    if args.input is not None:
        return parse_term_file(_read(args.input), sig)
    raise _Usage("give --term or --in")


class _Usage(Exception):
    pass


def _check_type(t: Term, sig: Signature, declared: Sequence[str] | None) -> None:
    if not declared:
        return
    dom, cod = term_type(t, sig)
    want = (sig.word(declared[0]), sig.word(declared[1]))
    if (dom, cod) != want:
        raise TermError(f"term has type {' '.join(dom) or '0'} -> {' '.join(cod) or '0'}, "
                        f"declared {' '.join(want[0]) or '0'} -> {' '.join(want[1]) or '0'}")


def _seed(args) -> int | None:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("FROBRW_SEED")
    if env is None:
        return None
    try:
        return int(env)
    except ValueError:
        raise _Usage(f"FROBRW_SEED must be an integer, got {env!r}") from None


# verbs

def cmd_parse(args) -> int:
    sig = _signature(args)
    for t in _terms(args, sig):
        _check_type(t, sig, args.check_type)
        dom, cod = term_type(t, sig)
        print(f"{to_text(t, sig)}\t: {' '.join(dom) or '0'} -> {' '.join(cod) or '0'}")
    return 0


def cmd_interp(args) -> int:
    sig = _signature(args)
    terms = _terms(args, sig)
    if len(terms) != 1:
        raise _Usage("interp takes exactly one term")
    _check_type(terms[0], sig, args.check_type)
    _write(args.out, formats.write_cospan(interp(terms[0], sig)))
    return 0


def cmd_rewrite(args) -> int:
    sig = _signature(args) if args.sig else None
    rules = formats.read_rules(_read(args.rules), sig)
    host = formats.read_host(_read(args.input))
    derivation = rewrite_closure(rules, host, args.max_steps, strategy=first_match)
    if args.log:
        with open(args.log, "w", encoding="utf-8") as fh:
            derivation.write_log(fh)
    _write(args.out, formats.write_cospan(derivation.final))
    print(f"{len(derivation.steps)} steps{' (budget exhausted)' if derivation.exhausted else ''}",
          file=sys.stderr)
    return 0


def cmd_normalize_upsilon(args) -> int:
    host = formats.read_host(_read(args.input))
    _write(args.out, formats.write_cospan(upsilon_normalize(host, _seed(args))))
    return 0


def cmd_transform_rules(args) -> int:
    base = _signature(args)
    ps = make_poly_signature(base, args.families)
    text = _read(args.rules)
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        name, _, body = line.partition(":")
        left, arrow, right = body.partition("=>")
        if not arrow:
            raise TermError(f"rule line {line!r} has no '=>'")
        rule = chrome_rule(name.strip(), parse(left, base), parse(right, base), ps)
        out.append(transform_rule(rule, ps) if not args.no_transform else rule)
    _write(args.out, formats.write_rules(out))
    return 0


def cmd_reduce(args) -> int:
    host = formats.read_host(_read(args.input))
    if args.strategy == "group":
        run = group_reduce(host, max_steps=args.max_steps)
        final = run.final
        records = [e.record() for e in run.log]
        model = cyclic_group_model(3)
        same = (lambda: eval_graph(model, host) == eval_graph(model, final))
    else:
        run = ib_reduce(host, colour_swap=args.colour_swap)
        final = run.final
        records = [e.record() for e in run.log]
        same = (lambda: ib_subspace(host) == ib_subspace(final))
    if args.log:
        with open(args.log, "w", encoding="utf-8") as fh:
            for i, r in enumerate(records):
                fh.write(json.dumps({"step": i, **r}, sort_keys=True) + "\n")
    _write(args.out, formats.write_cospan(final))
    if args.check_semantics:
        if not same():
            raise SemanticsError("semantics changed by the reduction")
        print("semantics preserved", file=sys.stderr)
    return 0


def cmd_semantics(args) -> int:
    c = formats.read_cospan(_read(args.input))
    if args.model == "gf2":
        space = ib_subspace(c)
        result = {"dom": list(c.dom), "cod": list(c.cod), "basis": [list(b) for b in space.basis_tuples()]}
    elif args.model.startswith("finite:"):
        model = load_model(_read(args.model[len("finite:"):]))
        rel = eval_graph(model, c)
        result = {"dom": list(rel.dom), "cod": list(rel.cod),
                  "pairs": sorted([list(x), list(y)] for x, y in rel.pairs)}
    else:
        raise _Usage("--model must be gf2 or finite:<file>")
    _write(args.out, formats.dumps(result))
    return 0


def cmd_export(args) -> int:
    text = _read(args.input)
    c = formats.read_cospan(text)
    if args.format == "dot":
        _write(args.out, formats.to_dot(c))
    else:
        _write(args.out, formats.write_cospan(c))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="frobrw", description="Hypergraph rewriting modulo Frobenius structure.")
    p.add_argument("--seed", type=int, default=None, help="seed for randomized choices (else FROBRW_SEED)")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="verb", required=True)

    def with_terms(q):
        q.add_argument("--sig", required=True, help="signature file")
        q.add_argument("--term", help="term text")
        q.add_argument("--in", dest="input", help="term file, one per line")
        q.add_argument("--check-type", nargs=2, metavar=("DOM", "COD"))

    q = sub.add_parser("parse", parents=[common], help="parse and type-check terms")
    with_terms(q)
    q.set_defaults(run=cmd_parse)

    q = sub.add_parser("interp", parents=[common], help="interpret a term as a cospan file")
    with_terms(q)
    q.add_argument("--out")
    q.set_defaults(run=cmd_interp)

    q = sub.add_parser("rewrite", parents=[common], help="rewrite a host until no rule applies")
    q.add_argument("--sig", help="signature (needed for term rules)")
    q.add_argument("--rules", required=True)
    q.add_argument("--in", dest="input", required=True)
    q.add_argument("--max-steps", type=int, default=1000)
    q.add_argument("--log")
    q.add_argument("--out")
    q.set_defaults(run=cmd_rewrite)

    q = sub.add_parser("normalize-upsilon", parents=[common], help="remove changer round trips")
    q.add_argument("--in", dest="input", required=True)
    q.add_argument("--out")
    q.set_defaults(run=cmd_normalize_upsilon)

    q = sub.add_parser("transform-rules", parents=[common], help="chrome and transform term rules for several Frobenius families")
    q.add_argument("--sig", required=True, help="monochrome base signature")
    q.add_argument("--rules", required=True)
    q.add_argument("--families", type=int, default=2)
    q.add_argument("--no-transform", action="store_true", help="only chrome the rules")
    q.add_argument("--out")
    q.set_defaults(run=cmd_transform_rules)

    q = sub.add_parser("reduce", parents=[common], help="run a reduction strategy")
    q.add_argument("--strategy", choices=("group", "ib"), required=True)
    q.add_argument("--in", dest="input", required=True)
    q.add_argument("--colour-swap", action="store_true")
    q.add_argument("--max-steps", type=int, default=None)
    q.add_argument("--check-semantics", action="store_true")
    q.add_argument("--log")
    q.add_argument("--out")
    q.set_defaults(run=cmd_reduce)

    q = sub.add_parser("semantics", parents=[common], help="evaluate a cospan in a model")
    q.add_argument("--model", required=True, help="gf2 or finite:<model.json>")
    q.add_argument("--in", dest="input", required=True)
    q.add_argument("--out")
    q.set_defaults(run=cmd_semantics)

    q = sub.add_parser("export", parents=[common], help="write a cospan as DOT or canonical JSON")
    q.add_argument("--in", dest="input", required=True)
    q.add_argument("--format", choices=("dot", "json"), default="dot")
    q.add_argument("--out")
    q.set_defaults(run=cmd_export)
    return p


def _diagnostic(exc: Exception) -> str:
    data = {"error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, TermError) and exc.position is not None:
        data["position"] = exc.position
    problems = getattr(exc, "problems", None)
    if problems:
        data["problems"] = problems
    return json.dumps(data, sort_keys=True)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.run(args)
    except _Usage as exc:
        parser.print_usage(sys.stderr)
        print(f"frobrw: error: {exc}", file=sys.stderr)
        return 2
    except (FrobrwError, OSError) as exc:
        print(_diagnostic(exc), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
