"""The rewrite relation on process terms.

Eleven generating rules, closed under every term position:

    R0   let x.. <- ([v1] | .. | [vn]) in t       ->  t[v../x..]
    R1   .. | putR(v,t) | getL(y.s) | ..          ->  .. | t | s[v/y] | ..
    R2   .. | getR(y.t) | putL(v,s) | ..          ->  .. | t[v/y] | s | ..
    R3   let (putL(v,t) | ..) in r                ->  putL(v, let (t | ..) in r)
    R4   let (getL(y.t) | ..) in r                ->  getL(y. let (t | ..) in r)
    R5   let (.. | putR(v,t)) in r                ->  putR(v, let (.. | t) in r)
    R6   let (.. | getR(y.t)) in r                ->  getR(y. let (.. | t) in r)
    R7   putR(v, putL(w,t))                       ->  putL(w, putR(v,t))
    R8   putR(v, getL(x.t))                       ->  getL(x. putR(v,t))
    R9   getR(x. putL(v,t))   (x not in v)        ->  putL(v, getR(x.t))
    R10  getR(x. getL(y.t))                       ->  getL(y. getR(x.t))

Every rule strictly shrinks ``size``, so normalization terminates, and the
relation is confluent, so normal forms are unique up to renaming.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace

from .calculus import (
    GetL,
    GetR,
    Let,
    PutL,
    PutR,
    Seq,
    all_names,
    alpha_eq,
    check_term,
    children,
    free_vars,
    fresh_name,
    is_left_facing,
    is_right_facing,
    rebind,
    size,
    vsub,
)
from .errors import (
    ArityMismatch,
    EmptyContext,
    InvalidRedex,
    JudgmentMismatch,
    NotEffectful,
    ProtocolMismatch,
)
from .signature import value_free_vars


class Rule(enum.IntEnum):
    R0 = 0
    R1 = 1
    R2 = 2
    R3 = 3
    R4 = 4
    R5 = 5
    R6 = 6
    R7 = 7
    R8 = 8
    R9 = 9
    R10 = 10

    def __str__(self):
        return self.name


@dataclass(frozen=True, order=True)
class Redex:
    path: tuple
    rule: Rule
    # index of the interacting pair for R1/R2, else -1
    detail: int = -1

    def __str__(self):
        pair = f" pair {self.detail}" if self.detail >= 0 else ""
        return f"{self.rule} at {render_path(self.path)}{pair}"


def render_path(path) -> str:
    return "[" + ",".join(map(str, path)) + "]"


# positions

def subterm(t, path):
    for i in path:
        kids = children(t)
        if not 0 <= i < len(kids):
            raise InvalidRedex(f"no subterm at {render_path(path)}")
        t = kids[i]
    return t


def replace_at(t, path, new):
    if not path:
        return new
    i, rest = path[0], path[1:]
    if isinstance(t, Let):
        n = len(t.inputs)
        if i == n:
            return replace(t, body=replace_at(t.body, rest, new))
        ins = list(t.inputs)
        ins[i] = replace_at(ins[i], rest, new)
        return replace(t, inputs=tuple(ins))
    return replace(t, t=replace_at(t.t, rest, new))


# redexes

def local_redexes(t) -> list:
    """(rule, detail) pairs applicable at the root of t."""
    out = []
    if isinstance(t, Let):
        ins = t.inputs
        if all(isinstance(a, Seq) for a in ins):
            out.append((Rule.R0, -1))
        for i in range(len(ins) - 1):
            if isinstance(ins[i], PutR) and isinstance(ins[i + 1], GetL):
                out.append((Rule.R1, i))
        for i in range(len(ins) - 1):
            if isinstance(ins[i], GetR) and isinstance(ins[i + 1], PutL):
                out.append((Rule.R2, i))
        if isinstance(ins[0], PutL):
            out.append((Rule.R3, -1))
        if isinstance(ins[0], GetL):
            out.append((Rule.R4, -1))
        if isinstance(ins[-1], PutR):
            out.append((Rule.R5, -1))
        if isinstance(ins[-1], GetR):
            out.append((Rule.R6, -1))
    elif isinstance(t, PutR):
        if isinstance(t.t, PutL):
            out.append((Rule.R7, -1))
        if isinstance(t.t, GetL):
            # the side condition holds up to renaming the bound variable
            out.append((Rule.R8, -1))
    elif isinstance(t, GetR):
        if isinstance(t.t, PutL) and t.x not in value_free_vars(t.t.v):
            out.append((Rule.R9, -1))
        if isinstance(t.t, GetL):
            out.append((Rule.R10, -1))
    return out


def redexes(t) -> list:
    """Every redex of t, ordered by (path, rule, detail)."""
    out = []

    def walk(u, path):
        for rule, detail in local_redexes(u):
            out.append(Redex(path, rule, detail))
        for i, c in enumerate(children(u)):
            walk(c, path + (i,))

    walk(t, ())
    out.sort()
    return out


def _unclash(g, others):
    """Rename the binder of getL/getR node g away from the free variables of ``others``."""
    clash = set()
    for o in others:
        clash.update(free_vars(o))
    if g.x not in clash:
        return g
    avoid = all_names(g) | clash
    for o in others:
        avoid |= all_names(o)
    return rebind(g, fresh_name(avoid))


def rewrite_root(t, rule: Rule, detail: int = -1):
    if (rule, detail) not in local_redexes(t):
        raise InvalidRedex(f"{rule} does not apply here")
    if rule == Rule.R0:
        return vsub(t.body, [(x, a.v) for (x, _), a in zip(t.binders, t.inputs)])
    if rule in (Rule.R1, Rule.R2):
        ins = list(t.inputs)
        a, b = ins[detail], ins[detail + 1]
        if rule == Rule.R1:
            ins[detail], ins[detail + 1] = a.t, vsub(b.t, [(b.x, a.v)])
        else:
            ins[detail], ins[detail + 1] = vsub(a.t, [(a.x, b.v)]), b.t
        return replace(t, inputs=tuple(ins))
    if rule in (Rule.R3, Rule.R4):
        first, rest = t.inputs[0], t.inputs[1:]
        if rule == Rule.R3:
            return PutL(first.v, replace(t, inputs=(first.t,) + rest))
        first = _unclash(first, rest)
        return GetL(first.x, first.sort, replace(t, inputs=(first.t,) + rest))
    if rule in (Rule.R5, Rule.R6):
        init, last = t.inputs[:-1], t.inputs[-1]
        if rule == Rule.R5:
            return PutR(last.v, replace(t, inputs=init + (last.t,)))
        last = _unclash(last, init)
        return GetR(last.x, last.sort, replace(t, inputs=init + (last.t,)))
    inner = t.t
    if rule == Rule.R7:
        return PutL(inner.v, PutR(t.v, inner.t))
    if rule == Rule.R8:
        if inner.x in value_free_vars(t.v):
            inner = rebind(inner, fresh_name(all_names(t)))
        return GetL(inner.x, inner.sort, PutR(t.v, inner.t))
    if rule == Rule.R9:
        return PutL(inner.v, GetR(t.x, t.sort, inner.t))
    # R10
    if inner.x == t.x:
        inner = rebind(inner, fresh_name(all_names(t)))
    return GetL(inner.x, inner.sort, GetR(t.x, t.sort, inner.t))


def apply(t, r: Redex):
    """Rewrite t at the redex r."""
    node = subterm(t, r.path)
    return replace_at(t, r.path, rewrite_root(node, r.rule, r.detail))


# normalization

@dataclass
class Trace:
    start: object
    steps: list = field(default_factory=list)  # [(Redex, Term)]

    @property
    def final(self):
        return self.steps[-1][1] if self.steps else self.start

    @property
    def rules(self):
        return [r.rule for r, _ in self.steps]

    def terms(self):
        return [self.start] + [t for _, t in self.steps]

    def lines(self):
        return [f"step {i}: {r.rule} at {render_path(r.path)} :: {t}"
                for i, (r, t) in enumerate(self.steps, 1)]

    def records(self):
        return [{"step": i, "rule": str(r.rule), "path": list(r.path), "detail": r.detail, "term": str(t)}
                for i, (r, t) in enumerate(self.steps, 1)]


class StepLimit(Exception):
    def __init__(self, trace):
        super().__init__(f"normalization exceeded {len(trace.steps)} steps")
        self.trace = trace


def normalize(t, max_steps: int | None = None) -> Trace:
    """Rewrite with the first redex until none is left."""
    trace = Trace(t)
    while True:
        rs = redexes(t)
        if not rs:
            return trace
        if max_steps is not None and len(trace.steps) >= max_steps:
            raise StepLimit(trace)
        t = apply(t, rs[0])
        trace.steps.append((rs[0], t))


def normal_form(t):
    return normalize(t).final


def is_normal(t) -> bool:
    return not redexes(t)


def _same_judgment(t1, t2, sig, ctx):
    if sig is None:
        return
    j1, j2 = check_term(t1, sig, ctx), check_term(t2, sig, ctx)
    if j1 != j2:
        raise JudgmentMismatch(f"{j1} vs {j2}")


def convertible(t1, t2, sig=None, ctx=None) -> bool:
    """Decide t1 <->* t2 by comparing normal forms.  With ``sig`` the judgments are checked first."""
    _same_judgment(t1, t2, sig, ctx)
    return alpha_eq(normal_form(t1), normal_form(t2))


def joinable(t1, t2, sig=None, ctx=None) -> bool:
    """Whether t1 and t2 reduce to a common term; by confluence, normal-form equality."""
    return convertible(t1, t2, sig, ctx)


# term contexts

@dataclass(frozen=True)
class TermContext:
    """``F1(F2(..(let x.. <- (a1 | .. | ak | HOLE) in r)))``.

    ``frames`` lists the putL/getL wrappers outermost first; each is a PutL or
    GetL node whose continuation is None.  The hole takes the remaining
    ``len(binders) - len(prefix)`` inputs.
    """

    frames: tuple
    binders: tuple
    prefix: tuple
    body: object

    def __post_init__(self):
        if len(self.prefix) >= len(self.binders):
            raise ArityMismatch("a term context needs room for at least one input in the hole")
        for f in self.frames:
            if not isinstance(f, (PutL, GetL)) or f.t is not None:
                raise TypeError("frames must be putL/getL nodes without a continuation")

    @property
    def arity(self) -> int:
        return len(self.binders) - len(self.prefix)

    def __str__(self):
        ins = " | ".join([*map(str, self.prefix), "HOLE"])
        bs = ", ".join(f"{x}:{s}" for x, s in self.binders)
        s = f"let {bs} <- ({ins}) in {self.body}"
        for f in reversed(self.frames):
            s = f"putL({f.v}, {s})" if isinstance(f, PutL) else f"getL({f.x}:{f.sort}. {s})"
        return s


def bound_prefix(L: TermContext) -> tuple:
    """The let-bound terms before the hole."""
    return L.prefix


def plug(L: TermContext, ts, sig=None, ctx=None):
    ts = tuple(ts)
    if len(ts) != L.arity:
        raise ArityMismatch(f"hole takes {L.arity} terms, got {len(ts)}")
    if sig is not None and L.prefix:
        left = check_term(L.prefix[-1], sig, ctx).right
        for i, a in enumerate(ts):
            j = check_term(a, sig, ctx)
            if j.left != left:
                raise ProtocolMismatch(f"plugged term {i} does not continue the protocol chain")
            left = j.right
    t = Let(L.binders, L.prefix + ts, L.body)
    for f in reversed(L.frames):
        t = PutL(f.v, t) if isinstance(f, PutL) else GetL(f.x, f.sort, t)
    return t


def context_size(L: TermContext) -> int:
    n = 2 * size(L.body)
    for a in L.prefix:
        n *= size(a)
    for _ in L.frames:
        n = 2 + 2 * n
    return n


def hole_protocol(L: TermContext, sig, ctx=None):
    """Left protocol expected by the first plugged term (needs a nonempty prefix)."""
    if not L.prefix:
        raise EmptyContext("the bound prefix is empty")
    return check_term(L.prefix[-1], sig, ctx).right


def is_effectful(L: TermContext, sig, ctx=None) -> bool:
    return bool(L.prefix) and hole_protocol(L, sig, ctx) != ()


def is_active(L: TermContext, sig, ctx=None) -> bool:
    return is_effectful(L, sig, ctx) and is_right_facing(L.prefix[-1])


def active_steps(L: TermContext, sig, ctx=None, avoid=()) -> list:
    """The chain of contexts from L to an active one, one rewrite per link.

    Let-bindings in the prefix are reduced first; then the leftmost
    left-facing input is either hoisted through the let (when it comes
    first) or made to interact with the right-facing input before it.
    ``avoid`` names variables of terms that will later fill the hole.
    """
    if not L.prefix:
        raise EmptyContext("the bound prefix is empty")
    if not is_effectful(L, sig, ctx):
        raise NotEffectful("the hole's left protocol is empty")
    chain = [L]
    while True:
        pre = list(L.prefix)
        lets = [i for i, a in enumerate(pre) if isinstance(a, Let)]
        lefts = [i for i, a in enumerate(pre) if is_left_facing(a)]
        if lets:
            i = lets[0]
            pre[i] = apply(pre[i], redexes(pre[i])[0])
            L = replace(L, prefix=tuple(pre))
        elif lefts and lefts[0] == 0:
            a = pre[0]
            if isinstance(a, GetL):
                clash = set(avoid) | {x for b in pre[1:] for x in free_vars(b)}
                if a.x in clash:
                    a = rebind(a, fresh_name(clash | all_names(a) | {x for b in pre for x in all_names(b)}))
                frame = GetL(a.x, a.sort, None)
            else:
                frame = PutL(a.v, None)
            pre[0] = a.t
            L = replace(L, frames=L.frames + (frame,), prefix=tuple(pre))
        elif lefts:
            i = lefts[0]
            a, b = pre[i - 1], pre[i]
            if isinstance(a, PutR) and isinstance(b, GetL):
                pre[i - 1], pre[i] = a.t, vsub(b.t, [(b.x, a.v)])
            elif isinstance(a, GetR) and isinstance(b, PutL):
                pre[i - 1], pre[i] = vsub(a.t, [(a.x, b.v)]), b.t
            else:
                raise ProtocolMismatch(f"inputs {i - 1} and {i} cannot interact")
            L = replace(L, prefix=tuple(pre))
        elif is_right_facing(pre[-1]):
            return chain
        else:
            raise NotEffectful("no right-facing input ends the prefix")
        chain.append(L)


def reduce_to_active(L: TermContext, sig, ctx=None, avoid=()) -> TermContext:
    return active_steps(L, sig, ctx, avoid)[-1]


# critical pairs

PAIR_CLASSES = ("1-7", "1-8", "2-9", "2-10", "3-5", "3-6", "4-5", "4-6", "5-7", "5-8", "6-9", "6-10")


def critical_pair(cls: str, seed: int, sig=None, prefix_len=None):
    """A random instance ``(apex, left, right)`` of a critical-pair class.

    ``left`` and ``right`` are the reducts by the two overlapping rules the
    class is named after.
    """
    from .generator import gen_critical_pair

    return gen_critical_pair(cls, seed, sig, prefix_len)
