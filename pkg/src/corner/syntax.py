"""Surface syntax for values, terms and term files.

    value ::= ident | ident '(' [value {',' value}] ')'
    term  ::= '[' value ']'
            | 'let' x:A {',' x:A} '<-' '(' term {'|' term} ')' 'in' term
            | 'putR' '(' value ',' term ')' | 'putL' '(' value ',' term ')'
            | 'getL' '(' x ':' A '.' term ')' | 'getR' '(' x ':' A '.' term ')'
    file  ::= {'term' name '(' [x:A {',' x:A}] ')' '=' term}

``#`` starts a comment.  The arrow may also be written as a down arrow.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .calculus import FRESH_PREFIX, GetL, GetR, Let, PutL, PutR, Seq
from .errors import ParseError
from .signature import App, Var

KEYWORDS = {"let", "in", "putR", "putL", "getL", "getR", "term"}

SCAN = re.compile(
    r"(?P<nl>\n)|(?P<ws>[ \t\r]+)|(?P<com>#[^\n]*)|(?P<id>[A-Za-z0-9_]+)|(?P<sym><-|↓|[()\[\],|:.=])")


@dataclass(frozen=True)
class Token:
    kind: str  # "id", "sym" or "eof"
    text: str
    line: int
    col: int


def tokenize(text: str) -> list:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = SCAN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line, line_start = line + 1, m.end()
        elif kind == "id":
            out.append(Token("id", m.group(), line, pos - line_start + 1))
        elif kind == "sym":
            sym = "<-" if m.group() == "↓" else m.group()
            out.append(Token("sym", sym, line, pos - line_start + 1))
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


class Parser:
    def __init__(self, text: str, allow_reserved: bool = False):
        self.toks = tokenize(text)
        self.i = 0
        self.allow_reserved = allow_reserved

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def fail(self, msg, tok=None):
        tok = tok or self.tok
        raise ParseError(msg, tok.line, tok.col)

    def eat(self, text=None, kind=None) -> Token:
        t = self.tok
        if (text is not None and t.text != text) or (kind is not None and t.kind != kind):
            want = repr(text) if text else kind
            self.fail(f"expected {want}, found {t.text or 'end of input'!r}")
        self.i += 1
        return t

    def at(self, text) -> bool:
        return self.tok.text == text and self.tok.kind != "eof"

    def ident(self, what="identifier") -> str:
        t = self.tok
        if t.kind != "id" or t.text in KEYWORDS:
            self.fail(f"expected {what}, found {t.text or 'end of input'!r}")
        if t.text.startswith(FRESH_PREFIX) and not self.allow_reserved:
            self.fail(f"identifiers starting with {FRESH_PREFIX!r} are reserved")
        self.i += 1
        return t.text

    def value(self):
        name = self.ident("value")
        if not self.at("("):
            return Var(name)
        self.eat("(")
        args = []
        if not self.at(")"):
            args.append(self.value())
            while self.at(","):
                self.eat(",")
                args.append(self.value())
        self.eat(")")
        return App(name, tuple(args))

    def binding(self):
        x = self.ident("variable")
        self.eat(":")
        return x, self.ident("sort")

    def term(self):
        t = self.tok
        if t.text == "[":
            self.eat("[")
            v = self.value()
            self.eat("]")
            return Seq(v)
        if t.text == "let":
            self.eat("let")
            binders = [self.binding()]
            while self.at(","):
                self.eat(",")
                binders.append(self.binding())
            self.eat("<-")
            self.eat("(")
            inputs = [self.term()]
            while self.at("|"):
                self.eat("|")
                inputs.append(self.term())
            self.eat(")")
            self.eat("in")
            body = self.term()
            if len(inputs) != len(binders):
                self.fail(f"let has {len(binders)} binders but {len(inputs)} inputs", t)
            return Let(tuple(binders), tuple(inputs), body)
        if t.text in ("putR", "putL"):
            self.eat(t.text)
            self.eat("(")
            v = self.value()
            self.eat(",")
            body = self.term()
            self.eat(")")
            return (PutR if t.text == "putR" else PutL)(v, body)
        if t.text in ("getL", "getR"):
            self.eat(t.text)
            self.eat("(")
            x, s = self.binding()
            self.eat(".")
            body = self.term()
            self.eat(")")
            return (GetL if t.text == "getL" else GetR)(x, s, body)
        self.fail(f"expected a term, found {t.text or 'end of input'!r}")

    def context(self):
        self.eat("(")
        ctx = []
        if not self.at(")"):
            ctx.append(self.binding())
            while self.at(","):
                self.eat(",")
                ctx.append(self.binding())
        self.eat(")")
        return tuple(ctx)

    def end(self):
        if self.tok.kind != "eof":
            self.fail(f"unexpected {self.tok.text!r}")


@dataclass(frozen=True)
class Declaration:
    name: str
    ctx: tuple
    term: object
    line: int
    col: int


def parse_term(text: str, allow_reserved: bool = False):
    """Parse one term.  ``allow_reserved`` admits generated ``_g`` names."""
    p = Parser(text, allow_reserved)
    t = p.term()
    p.end()
    return t


def parse_value(text: str, allow_reserved: bool = False):
    p = Parser(text, allow_reserved)
    v = p.value()
    p.end()
    return v


def parse_term_file(text: str) -> list:
    p = Parser(text)
    out = []
    seen = set()
    while p.tok.kind != "eof":
        start = p.eat("term")
        name = p.ident("term name")
        if name in seen:
            p.fail(f"term {name} declared twice", start)
        seen.add(name)
        ctx = p.context()
        p.eat("=")
        out.append(Declaration(name, ctx, p.term(), start.line, start.col))
    return out
