"""Process terms over a signature: syntax, typing, value substitution, size.

Six constructors: ``[v]``, ``let``, ``putR``, ``getL``, ``getR``, ``putL``.
A term is typed by a judgment ``ctx |- t : (U, B, W)`` where U and W are the
protocols spoken on the left and right boundary and B is the result sort.
Contexts are synthesized positionally: ``putR`` appends the value's
variables after the continuation's, ``putL`` prepends them, ``getL`` binds
the leftmost variable of its body and ``getR`` the rightmost.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping, Union

from .errors import (
    BinderPositionError,
    ContextMismatch,
    ProtocolMismatch,
    SortMismatch,
    SplitError,
    UnboundVariable,
)
from .signature import App, Signature, Var, rename_value, synth_value, value_free_vars


class Polarity(enum.Enum):
    SEND = "!"  # left participant sends rightward
    RECV = "?"  # right participant sends leftward


@dataclass(frozen=True)
class Ex:
    """One polarised sort of a protocol."""

    sort: str
    pol: Polarity

    def __str__(self):
        return f"{self.sort}{self.pol.value}"


def send(sort: str) -> Ex:
    return Ex(sort, Polarity.SEND)


def recv(sort: str) -> Ex:
    return Ex(sort, Polarity.RECV)


def render_protocol(U) -> str:
    return "[" + " ".join(map(str, U)) + "]"


# terms

@dataclass(frozen=True)
class Seq:
    v: object

    def __str__(self):
        return f"[{self.v}]"


@dataclass(frozen=True)
class Let:
    binders: tuple  # ((name, sort), ...)
    inputs: tuple
    body: object

    def __str__(self):
        bs = ", ".join(f"{x}:{s}" for x, s in self.binders)
        ins = " | ".join(map(str, self.inputs))
        return f"let {bs} <- ({ins}) in {self.body}"


@dataclass(frozen=True)
class PutR:
    v: object
    t: object

    def __str__(self):
        return f"putR({self.v}, {self.t})"


@dataclass(frozen=True)
class PutL:
    v: object
    t: object

    def __str__(self):
        return f"putL({self.v}, {self.t})"


@dataclass(frozen=True)
class GetL:
    x: str
    sort: str
    t: object

    def __str__(self):
        return f"getL({self.x}:{self.sort}. {self.t})"


@dataclass(frozen=True)
class GetR:
    x: str
    sort: str
    t: object

    def __str__(self):
        return f"getR({self.x}:{self.sort}. {self.t})"


Term = Union[Seq, Let, PutR, PutL, GetL, GetR]


class TermClass(enum.Enum):
    NEUTRAL = "neutral"
    LEFT_FACING = "left-facing"
    RIGHT_FACING = "right-facing"
    LET_BINDING = "let-binding"


def classify(t: Term) -> TermClass:
    if isinstance(t, Seq):
        return TermClass.NEUTRAL
    if isinstance(t, (PutL, GetL)):
        return TermClass.LEFT_FACING
    if isinstance(t, (PutR, GetR)):
        return TermClass.RIGHT_FACING
    return TermClass.LET_BINDING


def is_left_facing(t) -> bool:
    return isinstance(t, (PutL, GetL))


def is_right_facing(t) -> bool:
    return isinstance(t, (PutR, GetR))


@dataclass(frozen=True)
class Judgment:
    ctx: tuple
    left: tuple
    result: str
    right: tuple

    def shape(self):
        return (self.left, self.result, self.right)

    def render_ctx(self) -> str:
        return ", ".join(f"{x}:{s}" for x, s in self.ctx)

    def render_type(self) -> str:
        return f"({render_protocol(self.left)}, {self.result}, {render_protocol(self.right)})"

    def __str__(self):
        return f"{self.render_ctx()} |- {self.render_type()}"


# typing

def check_term(t: Term, sig: Signature, ctx=None) -> Judgment:
    """Synthesize the judgment of t.

    ``ctx`` optionally supplies sorts for free variables, either as a mapping
    or as a list of ``(name, sort)`` pairs.  When it is a list, the synthesized
    context must equal it.
    """
    env = dict(ctx) if ctx is not None else {}
    j = _synth(t, sig, env)
    if ctx is not None and not isinstance(ctx, Mapping):
        if tuple(j.ctx) != tuple((x, s) for x, s in ctx):
            raise ContextMismatch(f"declared context {list(ctx)} but term uses {list(j.ctx)}")
    return j


def _distinct(ctx):
    names = [x for x, _ in ctx]
    if len(set(names)) != len(names):
        raise ContextMismatch(f"repeated variable in context {names}")
    return tuple(ctx)


def _synth(t, sig, env) -> Judgment:
    if isinstance(t, Seq):
        s, ctx = synth_value(t.v, sig, env)
        return Judgment(_distinct(ctx), (), s, ())
    if isinstance(t, Let):
        n = len(t.inputs)
        if n == 0 or n != len(t.binders):
            raise ContextMismatch("let needs one binder per input and at least one input")
        names = [x for x, _ in t.binders]
        if len(set(names)) != n:
            raise ContextMismatch(f"repeated let binder in {names}")
        js = [_synth(a, sig, env) for a in t.inputs]
        for i, (j, (x, s)) in enumerate(zip(js, t.binders)):
            sig.require_sort(s)
            if j.result != s:
                raise SortMismatch(f"input {i} has sort {j.result}, binder {x} expects {s}")
            if i and js[i - 1].right != j.left:
                raise ProtocolMismatch(
                    f"input {i - 1} ends with {render_protocol(js[i - 1].right)} "
                    f"but input {i} starts with {render_protocol(j.left)}")
        jb = _synth(t.body, sig, {**env, **dict(t.binders)})
        if jb.ctx != tuple(t.binders):
            raise ContextMismatch(f"let body uses {list(jb.ctx)}, binders are {list(t.binders)}")
        ctx = [p for j in js for p in j.ctx]
        return Judgment(_distinct(ctx), js[0].left + jb.left, jb.result, js[-1].right + jb.right)
    if isinstance(t, (PutR, PutL)):
        j = _synth(t.t, sig, env)
        s, vctx = synth_value(t.v, sig, env)
        if isinstance(t, PutR):
            return Judgment(_distinct(j.ctx + tuple(vctx)), j.left, j.result, (send(s),) + j.right)
        return Judgment(_distinct(tuple(vctx) + j.ctx), (recv(s),) + j.left, j.result, j.right)
    if isinstance(t, (GetL, GetR)):
        sig.require_sort(t.sort)
        j = _synth(t.t, sig, {**env, t.x: t.sort})
        if isinstance(t, GetL):
            if not j.ctx or j.ctx[0] != (t.x, t.sort):
                raise BinderPositionError(f"getL binder {t.x}:{t.sort} is not leftmost in {list(j.ctx)}")
            return Judgment(j.ctx[1:], (send(t.sort),) + j.left, j.result, j.right)
        if not j.ctx or j.ctx[-1] != (t.x, t.sort):
            raise BinderPositionError(f"getR binder {t.x}:{t.sort} is not rightmost in {list(j.ctx)}")
        return Judgment(j.ctx[:-1], j.left, j.result, (recv(t.sort),) + j.right)
    raise TypeError(f"not a term: {t!r}")


# variables

def free_vars(t: Term) -> list:
    """Free variables in context order (the order the typing rules synthesize)."""
    if isinstance(t, Seq):
        return value_free_vars(t.v)
    if isinstance(t, Let):
        return [x for a in t.inputs for x in free_vars(a)]
    if isinstance(t, PutR):
        return free_vars(t.t) + value_free_vars(t.v)
    if isinstance(t, PutL):
        return value_free_vars(t.v) + free_vars(t.t)
    return [x for x in free_vars(t.t) if x != t.x]


def all_names(t) -> set:
    """Every variable name appearing anywhere in a term or value."""
    if isinstance(t, (Var, App)):
        return set(value_free_vars(t))
    if isinstance(t, Seq):
        return set(value_free_vars(t.v))
    if isinstance(t, Let):
        out = {x for x, _ in t.binders} | all_names(t.body)
        for a in t.inputs:
            out |= all_names(a)
        return out
    if isinstance(t, (PutR, PutL)):
        return set(value_free_vars(t.v)) | all_names(t.t)
    return {t.x} | all_names(t.t)


FRESH_PREFIX = "_g"


def fresh_name(avoid) -> str:
    """The first of ``_g0, _g1, ...`` not in ``avoid``."""
    i = 0
    while f"{FRESH_PREFIX}{i}" in avoid:
        i += 1
    return f"{FRESH_PREFIX}{i}"


# value substitution

def vsub(t: Term, bindings) -> Term:
    """Simultaneous substitution of values for free variables of t.

    Variables left out of ``bindings`` are substituted by themselves.  The
    bound names must be free in t and listed in context order.
    """
    bindings = list(bindings)
    names = [x for x, _ in bindings]
    if len(set(names)) != len(names):
        raise SplitError(f"a variable is bound twice in {names}")
    fv = free_vars(t)
    for x in names:
        if x not in fv:
            raise UnboundVariable(f"{x} is not free in the term")
    pos = [fv.index(x) for x in names]
    if pos != sorted(pos):
        raise SplitError(f"bindings {names} are not in context order {fv}")
    return _vsub(t, dict(bindings))


def _restrict(table, names):
    return {x: table[x] for x in names if x in table}


def _vsub(t, table):
    if not table:
        return t
    if isinstance(t, Seq):
        return Seq(rename_value(t.v, table))
    if isinstance(t, Let):
        ins = tuple(_vsub(a, _restrict(table, free_vars(a))) for a in t.inputs)
        return Let(t.binders, ins, t.body)
    if isinstance(t, (PutR, PutL)):
        v = rename_value(t.v, _restrict(table, value_free_vars(t.v)))
        return type(t)(v, _vsub(t.t, _restrict(table, free_vars(t.t))))
    inner = _restrict(table, [x for x in free_vars(t.t) if x != t.x])
    x, body = t.x, t.t
    captured = set()
    for v in inner.values():
        captured.update(value_free_vars(v))
    if x in captured:
        avoid = all_names(body) | captured | set(inner)
        y = fresh_name(avoid)
        inner = {**inner, x: Var(y, t.sort)}
        x = y
    return type(t)(x, t.sort, _vsub(body, inner))


def rebind(t, new: str):
    """Rename the binder of a getL/getR node to ``new``."""
    if new == t.x:
        return t
    body = _vsub(t.t, {t.x: Var(new, t.sort)})
    return type(t)(new, t.sort, body)


# size

def size(t: Term) -> int:
    if isinstance(t, Seq):
        return 2
    if isinstance(t, Let):
        n = 2 * size(t.body)
        for a in t.inputs:
            n *= size(a)
        return n
    if isinstance(t, (PutL, GetL)):
        return 2 + 2 * size(t.t)
    return 1 + 2 * size(t.t)


# alpha equivalence

def _vkey(v, env):
    if isinstance(v, Var):
        return ("b", env[v.name]) if v.name in env else ("f", v.name)
    return (v.op, tuple(_vkey(a, env) for a in v.args))


def alpha_key(t: Term, env=None, depth=0):
    """A structure equal for two terms exactly when they are alpha-equivalent."""
    env = env or {}
    if isinstance(t, Seq):
        return ("seq", _vkey(t.v, env))
    if isinstance(t, Let):
        ins = tuple(alpha_key(a, env, depth) for a in t.inputs)
        inner = dict(env)
        for i, (x, _) in enumerate(t.binders):
            inner[x] = depth + i
        body = alpha_key(t.body, inner, depth + len(t.binders))
        return ("let", tuple(s for _, s in t.binders), ins, body)
    if isinstance(t, (PutR, PutL)):
        return (type(t).__name__, _vkey(t.v, env), alpha_key(t.t, env, depth))
    return (type(t).__name__, t.sort, alpha_key(t.t, {**env, t.x: depth}, depth + 1))


def alpha_eq(t1: Term, t2: Term) -> bool:
    return alpha_key(t1) == alpha_key(t2)


def children(t) -> tuple:
    if isinstance(t, Let):
        return t.inputs + (t.body,)
    if isinstance(t, Seq):
        return ()
    return (t.t,)


def term_nodes(t):
    """Yield every subterm, preorder."""
    yield t
    for c in children(t):
        yield from term_nodes(c)
