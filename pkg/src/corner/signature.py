"""Multi-sorted signatures and their linear value terms.

A signature presents the free multicategory whose morphisms are trees of
operation symbols.  Contexts are ordered and linear: the variables of a
context, read left to right, are exactly the leaves of the term read left
to right.

>>> sig = parse_signature("sort Fabric\\nsort Pattern\\nop cut : Fabric -> Pattern")
>>> check_value((("f", "Fabric"),), App("cut", (Var("f"),)), sig)
'Pattern'
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

from .errors import (
    AmbiguousVariable,
    ArityMismatch,
    ContextMismatch,
    ParseError,
    SortMismatch,
    SplitError,
    UnboundVariable,
    UnknownOp,
    UnknownSort,
    UnknownVariable,
)

IDENT = re.compile(r"[A-Za-z0-9_]+\Z")


def is_identifier(name: str) -> bool:
    return bool(IDENT.match(name))


class Sort(str):
    """A generating sort.  Sorts are plain names, so a Sort compares equal to its string."""

    def __new__(cls, name: str):
        if not is_identifier(name):
            raise ValueError(f"bad sort name {name!r}")
        return super().__new__(cls, name)


@dataclass(frozen=True)
class OpSymbol:
    name: str
    arity: tuple
    result: str

    def __str__(self):
        args = ", ".join(self.arity)
        return f"op {self.name} : {args} -> {self.result}" if args else f"op {self.name} : -> {self.result}"


@dataclass(frozen=True)
class Signature:
    sorts: tuple = ()
    ops: tuple = ()
    _by_name: Mapping = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        sorts = tuple(Sort(s) for s in self.sorts)
        if len(set(sorts)) != len(sorts):
            raise ValueError("duplicate sort")
        by_name = {}
        for op in self.ops:
            if op.name in by_name:
                raise ValueError(f"duplicate op {op.name}")
            for s in (*op.arity, op.result):
                if s not in sorts:
                    raise UnknownSort(f"op {op.name} mentions unknown sort {s}")
            by_name[op.name] = op
        object.__setattr__(self, "sorts", sorts)
        object.__setattr__(self, "ops", tuple(self.ops))
        object.__setattr__(self, "_by_name", by_name)

    def op(self, name: str) -> OpSymbol:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownOp(f"unknown operation {name}") from None

    def has_sort(self, name: str) -> bool:
        return name in self.sorts

    def require_sort(self, name: str) -> str:
        if name not in self.sorts:
            raise UnknownSort(f"unknown sort {name}")
        return name

    def producers(self, sort: str) -> list:
        return [op for op in self.ops if op.result == sort]

    def render(self) -> str:
        lines = [f"sort {s}" for s in self.sorts]
        lines.extend(str(op) for op in self.ops)
        return "\n".join(lines) + "\n"


def make_signature(sorts: Iterable[str], ops: Iterable[tuple]) -> Signature:
    """Build a signature from sort names and ``(name, arity, result)`` triples."""
    return Signature(tuple(sorts), tuple(OpSymbol(n, tuple(a), r) for n, a, r in ops))


# value terms

@dataclass(frozen=True)
class Var:
    name: str
    # optional sort annotation; ignored by equality
    sort: str | None = field(default=None, compare=False)

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class App:
    op: str
    args: tuple = ()

    def __str__(self):
        return f"{self.op}({', '.join(map(str, self.args))})"


ValueTerm = Union[Var, App]


def value_free_vars(v: ValueTerm) -> list:
    """Variable occurrences, left to right, duplicates kept."""
    out = []

    def walk(u):
        if isinstance(u, Var):
            out.append(u.name)
        else:
            for a in u.args:
                walk(a)

    walk(v)
    return out


def check_context(ctx, sig: Signature) -> None:
    names = [x for x, _ in ctx]
    if len(set(names)) != len(names):
        raise ContextMismatch(f"repeated variable in context {names}")
    for _, s in ctx:
        sig.require_sort(s)


def check_value(ctx, v: ValueTerm, sig: Signature) -> str:
    """The sort B with ``ctx |- v : B``, using every variable of ctx once, in order."""
    ctx = tuple(ctx)
    check_context(ctx, sig)
    sorts = dict(ctx)
    occ = value_free_vars(v)
    for x in occ:
        if x not in sorts:
            raise UnknownVariable(f"variable {x} not in context")
    if occ != [x for x, _ in ctx]:
        raise ContextMismatch(f"context {[x for x, _ in ctx]} does not match variable use {occ}")

    def sort_of(u):
        if isinstance(u, Var):
            return sorts[u.name]
        op = sig.op(u.op)
        if len(op.arity) != len(u.args):
            raise ArityMismatch(f"{op.name} takes {len(op.arity)} arguments, got {len(u.args)}")
        for want, a in zip(op.arity, u.args):
            got = sort_of(a)
            if got != want:
                raise SortMismatch(f"argument of {op.name} has sort {got}, expected {want}")
        return op.result

    return sort_of(v)


def synth_value(v: ValueTerm, sig: Signature, env: Mapping, expected: str | None = None):
    """Sort and occurrence-ordered context of v.

    Variable sorts come from ``env``, then the variable's own annotation, then
    the position it occupies (an operation argument or ``expected``).
    """
    ctx = []

    def go(u, want):
        if isinstance(u, Var):
            known = env.get(u.name) or u.sort
            if known is None:
                if want is None:
                    raise AmbiguousVariable(f"cannot determine the sort of {u.name}")
                known = want
            elif want is not None and known != want:
                raise SortMismatch(f"variable {u.name} has sort {known}, expected {want}")
            sig.require_sort(known)
            ctx.append((u.name, known))
            return known
        op = sig.op(u.op)
        if len(op.arity) != len(u.args):
            raise ArityMismatch(f"{op.name} takes {len(op.arity)} arguments, got {len(u.args)}")
        for s, a in zip(op.arity, u.args):
            go(a, s)
        if want is not None and op.result != want:
            raise SortMismatch(f"{op.name}(...) has sort {op.result}, expected {want}")
        return op.result

    return go(v, expected), ctx


def subst_value(v: ValueTerm, bindings) -> ValueTerm:
    """Simultaneous substitution.  Variables without a binding stay put."""
    bindings = list(bindings)
    table = dict(bindings)
    if len(table) != len(bindings):
        raise SplitError("a variable is bound twice")
    free = set(value_free_vars(v))
    for x in table:
        if x not in free:
            raise UnboundVariable(f"{x} does not occur in {v}")
    return _subst(v, table)


def _subst(v, table):
    if isinstance(v, Var):
        return table.get(v.name, v)
    return App(v.op, tuple(_subst(a, table) for a in v.args))


def rename_value(v: ValueTerm, table: Mapping) -> ValueTerm:
    """Substitution without the occurrence checks."""
    return _subst(v, table)


# signature files

def parse_signature(text: str) -> Signature:
    sorts, ops = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        col = len(raw) - len(raw.lstrip()) + 1
        words = line.split(None, 1)
        if words[0] == "sort" and len(words) == 2 and is_identifier(words[1].strip()):
            sorts.append(words[1].strip())
        elif words[0] == "op" and len(words) == 2:
            m = re.fullmatch(r"([A-Za-z0-9_]+)\s*:\s*(.*?)\s*->\s*([A-Za-z0-9_]+)", words[1].strip())
            if not m:
                raise ParseError("malformed op declaration", lineno, col)
            name, args, res = m.groups()
            arity = [a.strip() for a in args.split(",")] if args.strip() else []
            if not all(is_identifier(a) for a in arity):
                raise ParseError("malformed arity", lineno, col)
            ops.append((name, arity, res))
        else:
            raise ParseError(f"expected 'sort' or 'op', got {line!r}", lineno, col)
    try:
        return make_signature(sorts, ops)
    except (ValueError, UnknownSort) as exc:
        raise ParseError(str(exc), 0, 0) from None
