"""Command-line front end.

    corner check SIG TERMS
    corner normalize SIG TERMS NAME [--trace] [--max-steps N]
    corner interpret SIG TERMS NAME [--format text|layout] [--output FILE]
    corner verify [SIG] [--suite NAME] [--seed S] [--count N] [--json FILE]

Exit status: 0 success, 1 bad input, 2 step limit, 3 failing suite.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

from .calculus import check_term
from .cornering import Stuck, canonical, interpret, layout_json
from .errors import CornerError, ParseError, UnknownTerm
from .rewrite import StepLimit, normalize
from .signature import parse_signature
from .suites import SUITES, run_suite
from .syntax import parse_term_file

EXIT_OK, EXIT_INPUT, EXIT_LIMIT, EXIT_SUITE = 0, 1, 2, 3


class InputError(Exception):
    """A file could not be read, parsed or typechecked."""


@dataclass
class Workspace:
    signature: object
    terms: dict  # name -> (Declaration, Judgment)

    def get(self, name):
        if name not in self.terms:
            raise UnknownTerm(f"no term named {name}")
        return self.terms[name]


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def load_signature(path):
    try:
        return parse_signature(_read(path))
    except ParseError as exc:
        raise InputError(f"{path}:{exc.line}:{exc.col}: {exc.message}") from None


def load_workspace(sig_path, term_path) -> Workspace:
    sig = load_signature(sig_path)
    try:
        decls = parse_term_file(_read(term_path))
    except ParseError as exc:
        raise InputError(f"{term_path}:{exc.line}:{exc.col}: {exc.message}") from None
    terms = {}
    for d in decls:
        try:
            terms[d.name] = (d, check_term(d.term, sig, d.ctx))
        except CornerError as exc:
            raise InputError(f"{term_path}:{d.line}:{d.col}: term {d.name}: {exc}") from None
    return Workspace(sig, terms)


def _judgment_line(name, j):
    ctx = j.render_ctx()
    return f"{name} : {ctx} |- {j.render_type()}" if ctx else f"{name} : |- {j.render_type()}"


def cmd_check(args, out):
    ws = load_workspace(args.signature, args.terms)
    for name, (_, j) in ws.terms.items():
        print(_judgment_line(name, j), file=out)
    return EXIT_OK


def cmd_normalize(args, out):
    ws = load_workspace(args.signature, args.terms)
    decl, _ = ws.get(args.name)
    try:
        trace = normalize(decl.term, args.max_steps)
    except StepLimit as exc:
        if args.trace:
            for line in exc.trace.lines():
                print(line, file=out)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    if args.trace:
        for line in trace.lines():
            print(line, file=out)
        print(f"steps: {len(trace.steps)}", file=out)
    print(trace.final, file=out)
    return EXIT_OK


def cmd_interpret(args, out):
    ws = load_workspace(args.signature, args.terms)
    decl, _ = ws.get(args.name)
    cell = interpret(decl.term, ws.signature, decl.ctx)
    if args.format == "layout":
        text = layout_json(cell)
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            out.write(text)
        return EXIT_OK
    print(f"cell: {cell}", file=out)
    print(f"boundary: {cell.boundary}", file=out)
    try:
        print(f"normal: {canonical(cell)}", file=out)
    except Stuck:
        print("normal: unknown (layout stuck)", file=out)
    return EXIT_OK


def cmd_verify(args, out):
    sig = load_signature(args.signature) if args.signature else None
    seed = args.seed
    env = os.environ.get("CORNER_SEED")
    if env is not None:
        try:
            seed = int(env)
        except ValueError:
            raise InputError(f"CORNER_SEED must be an integer, got {env!r}") from None
    names = list(SUITES) if args.suite == "all" else [args.suite]
    reports = [run_suite(n, sig, seed, args.count) for n in names]
    for r in reports:
        out.write(r.text())
    if args.json:
        import json

        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump({"seed": seed, "count": args.count,
                       "suites": [{"suite": r.suite, "ok": r.ok, "cases": r.records()} for r in reports]},
                      fh, indent=2, sort_keys=True)
            fh.write("\n")
    return EXIT_OK if all(r.ok for r in reports) else EXIT_SUITE


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors are input errors; status 2 is kept for the step limit
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser():
    p = _Parser(prog="corner", description="Typecheck, rewrite and interpret process terms.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="typecheck every term of a file")
    c.add_argument("signature")
    c.add_argument("terms")
    c.set_defaults(func=cmd_check)

    n = sub.add_parser("normalize", help="print the normal form of a term")
    n.add_argument("signature")
    n.add_argument("terms")
    n.add_argument("name")
    n.add_argument("--trace", action="store_true", help="print every rewrite step")
    n.add_argument("--max-steps", type=int, default=None, metavar="N")
    n.set_defaults(func=cmd_normalize)

    i = sub.add_parser("interpret", help="print the cell a term denotes")
    i.add_argument("signature")
    i.add_argument("terms")
    i.add_argument("name")
    i.add_argument("--format", choices=("text", "layout"), default="text")
    i.add_argument("--output", metavar="FILE", help="where to write the layout (default stdout)")
    i.set_defaults(func=cmd_interpret)

    v = sub.add_parser("verify", help="run the property suites")
    v.add_argument("signature", nargs="?", help="signature file (default: a built-in test signature)")
    v.add_argument("--suite", choices=(*SUITES, "all"), default="all")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--count", type=int, default=200)
    v.add_argument("--json", metavar="FILE", help="also write per-case records as JSON")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (InputError, CornerError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
