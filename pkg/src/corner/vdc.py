"""Terms as cells of a virtual double category.

A term ``x1:A1, .., xn:An |- f : (U, B, W)`` is a cell with top ``A1..An``,
bottom ``B``, left edge U and right edge W.  Cells compose along a path of
cells chained through their protocols; the composite is a let-binding, or
``id_U(f)`` for the empty path at U.  The laws hold up to convertibility,
which ``check_vdc_laws`` samples.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .calculus import (
    GetL,
    GetR,
    Let,
    Polarity,
    PutL,
    PutR,
    Seq,
    all_names,
    alpha_eq,
    check_term,
    fresh_name,
    recv,
    render_protocol,
    send,
    vsub,
)
from .errors import CornerError, ProtocolChainError, SortMismatch, Unsatisfiable
from .generator import OPEN, Gen, GenConfig, reseeding, universal_signature
from .report import Report
from .rewrite import convertible
from .signature import Var


@dataclass(frozen=True)
class CellPath:
    """Cells chained left to right; an empty path remembers its protocol."""

    terms: tuple
    judgments: tuple
    start: tuple
    end: tuple

    @classmethod
    def of(cls, terms, sig, ctx=None):
        terms = tuple(terms)
        if not terms:
            raise ProtocolChainError("an empty path needs an explicit protocol; use CellPath.empty")
        js = tuple(check_term(t, sig, ctx) for t in terms)
        for i in range(1, len(js)):
            if js[i - 1].right != js[i].left:
                raise ProtocolChainError(
                    f"cell {i - 1} ends with {render_protocol(js[i - 1].right)} "
                    f"but cell {i} starts with {render_protocol(js[i].left)}")
        return cls(terms, js, js[0].left, js[-1].right)

    @classmethod
    def empty(cls, U=()):
        return cls((), (), tuple(U), tuple(U))

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    @property
    def results(self) -> tuple:
        return tuple(j.result for j in self.judgments)

    @property
    def ctx(self) -> tuple:
        return tuple(p for j in self.judgments for p in j.ctx)


def identity_cell(sort: str, sig, name: str = "x"):
    """``name:A |- [name] : (λ, A, λ)``."""
    sig.require_sort(sort)
    return Seq(Var(name, sort))


def id_term(U, f):
    """Wrap f so that it forwards every exchange of U from one side to the other."""
    if not U:
        return f
    inner = id_term(U[1:], f)
    e = U[0]
    x = fresh_name(all_names(inner))
    if e.pol is Polarity.SEND:
        return GetL(x, e.sort, PutR(Var(x, e.sort), inner))
    return GetR(x, e.sort, PutL(Var(x, e.sort), inner))


def compose(f, gs: CellPath, sig):
    """``f ∘ gs``: bind the results of gs to f's context, in order."""
    ctx = check_term(f, sig).ctx
    sorts = tuple(s for _, s in ctx)
    if sorts != gs.results:
        raise SortMismatch(f"cell expects inputs {list(sorts)}, path produces {list(gs.results)}")
    if not gs.terms:
        return id_term(gs.start, f)
    return Let(ctx, gs.terms, f)


# law checking

LAWS = ("associativity", "associativity-empty", "unit-left", "unit-right",
        "id-let", "interaction", "hoisting", "id-nesting")


class _Cases:
    """Random composable configurations over one name supply."""

    def __init__(self, sig, seed, law):
        self.sig = sig
        self.g = Gen(sig, GenConfig(f"{seed}/{law}", max_term_size=3, max_protocol_len=2))
        self.rng = random.Random(f"{seed}/{law}")
        self.n = 0

    def key(self):
        self.n += 1
        return f"k{self.n}"

    def proto(self, nonempty=False):
        return self.g.protocol(self.rng, 2, nonempty)

    def sort(self):
        return self.g.sort(self.rng)

    def term(self, U, B, W, need=None, closed=False):
        """A term of shape (U, B, W); with B None, of any sort that has one."""
        if need is None:
            need = () if closed else OPEN
        if B is None:
            return self.g.some_term(tuple(U), tuple(W), tuple(need), 3, self.key())[0]
        return self.g.term(tuple(U), B, tuple(W), tuple(need), 3, self.key())

    def over(self, results):
        """A cell whose context has the given sorts."""
        need = tuple((self.g.fresh("y"), s) for s in results)
        return self.g.some_shape(self.rng, self.key(), need, 3, max_len=2)[0]

    def chain(self, protocols, sorts=None, closed=False):
        sorts = sorts or [None for _ in protocols[1:]]
        return [self.term(protocols[i], sorts[i], protocols[i + 1], closed=closed)
                for i in range(len(sorts))]

    def protocols(self, n, first=None, last=None):
        ps = [self.proto() for _ in range(n + 1)]
        if first is not None:
            ps[0] = first
        if last is not None:
            ps[-1] = last
        return ps


def _assoc(c: _Cases, all_empty: bool):
    sig = c.sig
    n = c.rng.randint(1, 3)
    A = [c.sort() for _ in range(n)]
    f = c.over(A)
    X = c.protocols(n)
    Y = [c.proto()]
    gs, hs = [], []
    for i in range(n):
        empty = all_empty or c.rng.random() < 0.3
        if empty:
            gs.append(c.term(X[i], A[i], X[i + 1], closed=True))
            hs.append(CellPath.empty(Y[-1]))
            Y.append(Y[-1])
        else:
            m = c.rng.randint(1, 2)
            C = [c.sort() for _ in range(m)]
            need = tuple((c.g.fresh("z"), s) for s in C)
            gs.append(c.term(X[i], A[i], X[i + 1], need))
            Y.append(c.proto())
            ps = [Y[i]] + [c.proto() for _ in range(m - 1)] + [Y[i + 1]]
            hs.append(CellPath.of(c.chain(ps, C), sig))
    inner = [compose(g, h, sig) for g, h in zip(gs, hs)]
    lhs = compose(f, CellPath.of(inner, sig), sig)
    fg = compose(f, CellPath.of(gs, sig), sig)
    flat = [t for h in hs for t in h.terms]
    hpath = CellPath.of(flat, sig) if flat else CellPath.empty(Y[0])
    rhs = compose(fg, hpath, sig)
    return lhs, rhs


def _unit_left(c: _Cases):
    sig = c.sig
    f = c.over([c.sort() for _ in range(c.rng.randint(0, 2))])
    j = check_term(f, sig)
    one = identity_cell(j.result, sig, c.g.fresh("u"))
    return compose(one, CellPath.of([f], sig), sig), f


def _unit_right(c: _Cases):
    sig = c.sig
    f = c.over([c.sort() for _ in range(c.rng.randint(0, 3))])
    ctx = check_term(f, sig).ctx
    if not ctx:
        return compose(f, CellPath.empty(()), sig), f
    ones = [identity_cell(s, sig, x) for x, s in ctx]
    return compose(f, CellPath.of(ones, sig), sig), f


def _id_let(c: _Cases):
    """``let x.. <- (id_U(t1) | ..) in t`` against ``id_U(let x.. <- (t1 | ..) in t)``."""
    sig = c.sig
    n = c.rng.randint(1, 3)
    U = c.proto(nonempty=True)
    ts = c.chain(c.protocols(n), closed=True)
    sorts = [check_term(t, sig).result for t in ts]
    body = c.over(sorts)
    ctx = check_term(body, sig).ctx
    lhs = Let(ctx, tuple(id_term(U, t) for t in ts), body)
    rhs = id_term(U, Let(ctx, tuple(ts), body))
    return lhs, rhs


def _ids(c: _Cases, U, k, first):
    """k closed cells chained from ``first``, and their protocols."""
    ps = [first] + [c.proto() for _ in range(k)]
    hs = c.chain(ps, closed=True)
    return hs, ps


def _interaction(c: _Cases):
    """An exchange across a run of forwarding cells."""
    sig = c.sig
    A = c.sort()
    U = c.proto()
    k = c.rng.randint(0, 2)
    hs, hp = _ids(c, U, k, c.proto())
    na, nb = c.rng.randint(0, 1), c.rng.randint(0, 1)
    P = c.protocols(na)
    a = c.chain(P)
    R1 = R2 = None
    if c.rng.random() < 0.5:
        # getR on the left, putL on the right, forwarding A leftward
        x = c.g.fresh("x")
        t = c.term(P[-1], R1, U + hp[0], OPEN + ((x, A),))
        v = c.g.value(A, OPEN, c.rng)
        tail = c.proto()
        s = c.term(U + hp[-1], R2, tail)
        e = recv(A)
        before = [GetR(x, A, t)] + [id_term((e,) + U, h) for h in hs] + [PutL(v, s)]
        after = [vsub(t, [(x, v)])] + [id_term(U, h) for h in hs] + [s]
    else:
        y = c.g.fresh("x")
        v = c.g.value(A, OPEN, c.rng)
        t = c.term(P[-1], R1, U + hp[0])
        tail = c.proto()
        s = c.term(U + hp[-1], R2, tail, ((y, A),) + OPEN)
        e = send(A)
        before = [PutR(v, t)] + [id_term((e,) + U, h) for h in hs] + [GetL(y, A, s)]
        after = [t] + [id_term(U, h) for h in hs] + [vsub(s, [(y, v)])]
    b = c.chain([tail] + [c.proto() for _ in range(nb)])
    pre = CellPath.of(a + before + b, sig)
    post = CellPath.of(a + after + b, sig)
    f = c.over(pre.results)
    return compose(f, pre, sig), compose(f, post, sig)


def _hoisting(c: _Cases):
    """A put or get at the outer edge moves out of the composite past forwarding cells."""
    sig = c.sig
    A = c.sort()
    U = c.proto()
    k = c.rng.randint(0, 2)
    clause = c.rng.randrange(4)
    R = None
    m = c.rng.randint(0, 2)
    if clause < 2:
        hs, hp = _ids(c, U, k, c.proto())
        gp = [c.proto() for _ in range(m + 1)]
        if clause == 0:
            v = c.g.value(A, OPEN, c.rng)
            t = c.term(U + hp[-1], R, gp[0])
            e, outer, mid = recv(A), PutL(v, t), t
        else:
            x = c.g.fresh("x")
            t = c.term(U + hp[-1], R, gp[0], ((x, A),) + OPEN)
            e, outer, mid = send(A), GetL(x, A, t), t
        gs = c.chain(gp)
        before = [id_term((e,) + U, h) for h in hs] + [outer] + gs
        after = [id_term(U, h) for h in hs] + [mid] + gs
    else:
        gp = [c.proto() for _ in range(m + 1)]
        gs = c.chain(gp)
        hs, hp = _ids(c, U, k, c.proto())
        if clause == 2:
            v = c.g.value(A, OPEN, c.rng)
            t = c.term(gp[-1], R, U + hp[0])
            e, outer, mid = send(A), PutR(v, t), t
        else:
            x = c.g.fresh("x")
            t = c.term(gp[-1], R, U + hp[0], OPEN + ((x, A),))
            e, outer, mid = recv(A), GetR(x, A, t), t
        before = gs + [outer] + [id_term((e,) + U, h) for h in hs]
        after = gs + [mid] + [id_term(U, h) for h in hs]
    pre = CellPath.of(before, sig)
    f = c.over(pre.results)
    lhs = compose(f, pre, sig)
    inner = compose(f, CellPath.of(after, sig), sig)
    if isinstance(outer, PutL):
        rhs = PutL(outer.v, inner)
    elif isinstance(outer, PutR):
        rhs = PutR(outer.v, inner)
    else:
        rhs = type(outer)(outer.x, outer.sort, inner)
    return lhs, rhs


def _id_nesting(c: _Cases):
    t = c.term(c.proto(), None, c.proto(), closed=True)
    U, W = c.proto(), c.proto()
    return id_term(U, id_term(W, t)), id_term(U + W, t)


_BUILD = {
    "associativity": lambda c: _assoc(c, False),
    "associativity-empty": lambda c: _assoc(c, True),
    "unit-left": _unit_left,
    "unit-right": _unit_right,
    "id-let": _id_let,
    "interaction": _interaction,
    "hoisting": _hoisting,
}


def law_instance(law: str, seed: int, sig=None):
    """The two sides ``(lhs, rhs)`` of one random instance of a law."""
    sig = sig or universal_signature()
    build = _id_nesting if law == "id-nesting" else _BUILD[law]
    return reseeding(seed, lambda s: build(_Cases(sig, s, law)))


def check_vdc_laws(sig=None, seed: int = 0, count: int = 200) -> Report:
    """Check ``count`` random law instances; law i is ``LAWS[i % len(LAWS)]``."""
    sig = sig or universal_signature()
    report = Report("vdc")
    for i in range(count):
        law, s = LAWS[i % len(LAWS)], seed + i
        try:
            lhs, rhs = law_instance(law, s, sig)
            if law == "id-nesting":
                ok = alpha_eq(lhs, rhs)
            else:
                ok = convertible(lhs, rhs, sig)
            report.add(law, s, ok)
        except Unsatisfiable as exc:
            report.skip(law, s, exc)
        except CornerError as exc:
            report.error(law, s, exc)
    return report
