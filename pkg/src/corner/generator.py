"""Seeded generation of well-typed values, terms, term contexts and
critical-pair instances.

Generation is protocol-first: the target ``(U, B, W)`` and the variables
that must be used are fixed before a constructor is chosen, so every sample
typechecks by construction.  Free variables are made up as values need them.  Each node draws from its own
``random.Random`` keyed by the seed and the node's position, which keeps
sibling subterms independent of one another.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from functools import lru_cache

from .calculus import (
    GetL,
    GetR,
    Judgment,
    Let,
    PutL,
    PutR,
    Seq,
    check_term,
    recv,
    send,
)
from .errors import Unsatisfiable
from .rewrite import PAIR_CLASSES, Redex, Rule, TermContext, apply
from .signature import App, Signature, Var, make_signature

MAX_VALUE_DEPTH = 8


def universal_signature(sorts=("A", "B", "C")) -> Signature:
    """A signature in which every sort is reachable from every list of sorts.

    For each sort S: a constant ``c_S``, a binary ``m_S : S, S -> S`` and a
    conversion ``S_to_T`` into every other sort T.
    """
    ops = []
    for s in sorts:
        ops.append((f"c_{s}", [], s))
        ops.append((f"m_{s}", [s, s], s))
        for t in sorts:
            if t != s:
                ops.append((f"{s}_to_{t}", [s], t))
    return make_signature(sorts, ops)


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    max_term_size: int = 8
    max_protocol_len: int = 3
    max_let_width: int = 3

    def __post_init__(self):
        if min(self.max_term_size, self.max_protocol_len, self.max_let_width) < 1:
            raise ValueError("generator bounds must be at least 1")


# values
#
# A list of required leaves may contain GAP entries: a gap stands for any
# number of fresh free variables, so a generated term can pick up whatever
# context its values need.  Bound variables keep their exact positions.

GAP = None
OPEN = (GAP,)


def _items(leaves) -> tuple:
    return tuple(GAP if x is GAP else x[1] for x in leaves)


def _drop_gaps(items):
    """Every way to remove one gap (it then stands for no variables)."""
    return [items[:i] + items[i + 1:] for i, x in enumerate(items) if x is GAP]


@lru_cache(maxsize=None)
def _tables(sig: Signature):
    producers = {s: tuple(sig.producers(s)) for s in sig.sorts}

    @lru_cache(maxsize=None)
    def can(sort, items, depth):
        if items in ((sort,), (GAP,)):
            return True
        if any(can(sort, d, depth) for d in _drop_gaps(items)):
            return True
        if depth == 0:
            return False
        return any(can_seq(op.arity, items, depth - 1) for op in producers[sort])

    @lru_cache(maxsize=None)
    def can_seq(arity, items, depth):
        if not arity:
            return all(x is GAP for x in items)
        return any(can(arity[0], head, depth) and can_seq(arity[1:], tail, depth)
                   for head, tail in _cuts(items))

    return producers, can, can_seq


def _cuts(items):
    """(head, tail) splits of a leaf list; a gap on the cut may go to both sides."""
    out = []
    for k in range(len(items) + 1):
        out.append((items[:k], items[k:]))
        if k and items[k - 1] is GAP:
            out.append((items[:k], items[k - 1:]))
    return out


def value_feasible(sig: Signature, sort: str, leaf_sorts) -> bool:
    _, can, _ = _tables(sig)
    return can(sort, tuple(leaf_sorts), MAX_VALUE_DEPTH)


def _merge_gaps(items):
    return tuple(x for i, x in enumerate(items) if not (x is GAP and i and items[i - 1] is GAP))


@lru_cache(maxsize=None)
def _shape_table(sig: Signature):
    _, can, _ = _tables(sig)

    @lru_cache(maxsize=None)
    def fits(U, B, W, items):
        if not U and not W:
            return can(B, items, MAX_VALUE_DEPTH)
        if U:
            e = U[0]
            if e.pol.value == "!":
                if fits(U[1:], B, W, _merge_gaps((e.sort,) + items)):
                    return True
            elif any(can(e.sort, h, MAX_VALUE_DEPTH) and fits(U[1:], B, W, t) for h, t in _cuts(items)):
                return True
        if W:
            e = W[0]
            if e.pol.value == "?":
                return fits(U, B, W[1:], _merge_gaps(items + (e.sort,)))
            return any(can(e.sort, t, MAX_VALUE_DEPTH) and fits(U, B, W[1:], h) for h, t in _cuts(items))
        return False

    return fits


def shape_feasible(sig: Signature, U, B, W, leaf_sorts) -> bool:
    """Whether some let-free term of type (U, B, W) uses exactly these leaves."""
    return _shape_table(sig)(tuple(U), B, tuple(W), _merge_gaps(tuple(leaf_sorts)))


def gen_value(sig: Signature, sort: str, leaves, rng: random.Random, fresh=None):
    """A value of ``sort`` whose variables are exactly ``leaves`` (``(name, sort)`` pairs), in order.

    GAP entries in ``leaves`` are filled with new variables named by ``fresh()``.
    """
    producers, can, can_seq = _tables(sig)
    leaves = tuple(leaves)
    items = _items(leaves)
    depth = next((d for d in range(MAX_VALUE_DEPTH + 1) if can(sort, items, d)), None)
    if depth is None:
        raise Unsatisfiable(f"no value of sort {sort} over {[x or '*' for x in items]}")
    if GAP in items and fresh is None:
        raise ValueError("open leaves need a name supply")
    # the shallowest tree that fits, with occasional slack
    depth = min(depth + (rng.random() < 0.3), MAX_VALUE_DEPTH)

    def build(sort, part, depth):
        # part: the leaves this subtree must use
        its = _items(part)
        if its == (sort,) and (depth == 0 or rng.random() < 0.8):
            return Var(part[0][0], sort)
        if its == (GAP,) and (depth == 0 or rng.random() < 0.5):
            return Var(fresh(), sort)
        if GAP in its:
            drops = [i for i, x in enumerate(its) if x is GAP and can(sort, its[:i] + its[i + 1:], depth)]
            if drops and (rng.random() < 0.5 or not _op_choices(sort, its, depth)):
                i = rng.choice(drops)
                return build(sort, part[:i] + part[i + 1:], depth)
        ops = _op_choices(sort, its, depth)
        if not ops:
            return Var(part[0][0], sort) if its == (sort,) else Var(fresh(), sort)
        # prefer shallow trees: operations with fewer arguments first
        ops.sort(key=lambda op: len(op.arity))
        op = ops[0] if rng.random() < 0.5 else rng.choice(ops)
        return App(op.name, build_seq(op.arity, part, depth - 1))

    def _op_choices(sort, its, depth):
        return [op for op in producers[sort] if depth > 0 and can_seq(op.arity, its, depth - 1)]

    def build_seq(arity, part, depth):
        if not arity:
            return ()
        its = _items(part)
        cuts = [(len(h), len(its) - len(t)) for h, t in _cuts(its)
                if can(arity[0], h, depth) and can_seq(arity[1:], t, depth)]
        k, j = rng.choice(cuts)
        return (build(arity[0], part[:k], depth),) + build_seq(arity[1:], part[j:], depth)

    return build(sort, leaves, depth)


def _value_vars(v):
    if isinstance(v, Var):
        return [v]
    return [u for a in v.args for u in _value_vars(a)]


# terms

class Gen:
    """One generation run: a signature, bounds, a seed and a name supply."""

    def __init__(self, sig: Signature, cfg: GenConfig):
        if not sig.sorts:
            raise Unsatisfiable("the signature has no sorts")
        self.sig = sig
        self.cfg = cfg
        self.counter = 0

    def rng(self, key: str) -> random.Random:
        return random.Random(f"{self.cfg.seed}:{key}")

    def fresh(self, prefix="v") -> str:
        self.counter += 1
        return f"{prefix}{self.counter - 1}"

    def sort(self, rng):
        return rng.choice(self.sig.sorts)

    def protocol(self, rng, max_len=None, nonempty=False):
        hi = self.cfg.max_protocol_len if max_len is None else max_len
        n = rng.randint(1 if nonempty else 0, hi)
        return tuple((send if rng.random() < 0.5 else recv)(self.sort(rng)) for _ in range(n))

    def value(self, sort, leaves, rng):
        return gen_value(self.sig, sort, leaves, rng, self.fresh)

    def fits(self, U, B, W, need):
        return shape_feasible(self.sig, U, B, W, _items(need))

    def split(self, need, sort, rng, at_front, after=None):
        """Ways ``(value_part, rest)`` to share need between a sent value and
        the continuation; the value takes the front of need or its back.
        With ``after = (U, B, W)`` only splits the continuation can finish are kept."""
        out = []
        for k in range(len(need) + 1):
            heads = [(need[:k], need[k:])]
            if k and need[k - 1] is GAP:
                heads.append((need[:k], need[k - 1:]))
            for head, tail in heads:
                part, rest = (head, tail) if at_front else (tail, head)
                if value_feasible(self.sig, sort, _items(part)) and (
                        after is None or self.fits(*after, rest)):
                    out.append((part, rest))
        rng.shuffle(out)
        return out

    def term(self, U, B, W, need, budget, key="r"):
        """A term typed ``need |- t : (U, B, W)``."""
        if not self.fits(U, B, W, need):
            raise Unsatisfiable(f"no term of shape {U} {B} {W} over {len(need)} variables")
        rng = self.rng(key)
        kinds = []
        if budget <= 0:
            kinds = ["left"] if U else ["right"] if W else ["seq"]
        else:
            if U:
                kinds += ["left"] * 2
            if W:
                kinds += ["right"] * 2
            if budget >= 2:
                kinds += ["let"] * 3
            if not U and not W:
                kinds += ["seq"]
            rng.shuffle(kinds)
            kinds = list(dict.fromkeys(kinds))
            if not U and not W and budget < 2:
                kinds = ["seq"]
        last = None
        for kind in kinds:
            try:
                return getattr(self, "_" + kind)(U, B, W, tuple(need), budget, key, rng)
            except Unsatisfiable as exc:
                last = exc
        raise last or Unsatisfiable(f"no term of shape {U} {B} {W}")

    def _seq(self, U, B, W, need, budget, key, rng):
        return Seq(self.value(B, need, rng))

    def _left(self, U, B, W, need, budget, key, rng):
        e = U[0]
        if e.pol.value == "!":
            x = self.fresh("x")
            return GetL(x, e.sort, self.term(U[1:], B, W, ((x, e.sort),) + need, budget - 1, key + "l"))
        last = None
        for part, rest in self.split(need, e.sort, rng, True, (U[1:], B, W))[:3]:
            try:
                v = self.value(e.sort, part, rng)
                return PutL(v, self.term(U[1:], B, W, rest, budget - 1, key + "l"))
            except Unsatisfiable as exc:
                last = exc
        raise last or Unsatisfiable("no value to send left")

    def _right(self, U, B, W, need, budget, key, rng):
        e = W[0]
        if e.pol.value == "?":
            x = self.fresh("x")
            return GetR(x, e.sort, self.term(U, B, W[1:], need + ((x, e.sort),), budget - 1, key + "r"))
        last = None
        for part, rest in self.split(need, e.sort, rng, False, (U, B, W[1:]))[:3]:
            try:
                v = self.value(e.sort, part, rng)
                return PutR(v, self.term(U, B, W[1:], rest, budget - 1, key + "r"))
            except Unsatisfiable as exc:
                last = exc
        raise last or Unsatisfiable("no value to send right")

    def _let(self, U, B, W, need, budget, key, rng):
        n = rng.randint(1, self.cfg.max_let_width)
        cuts = sorted(rng.randint(0, len(need)) for _ in range(n - 1))
        parts = [need[a:b] for a, b in zip([0] + cuts, cuts + [len(need)])]
        # a gap next to a cut is open on both sides
        for k in range(1, n):
            if parts[k - 1][-1:] == OPEN and parts[k][:1] != OPEN:
                parts[k] = OPEN + parts[k]
        i = rng.randint(0, len(U))
        U0, V = U[:i], U[i:]
        i = rng.randint(0, len(W))
        Un, W2 = W[:i], W[i:]
        chain = [U0] + [self.protocol(rng) for _ in range(n - 1)] + [Un]
        sorts = [self.sort(rng) for _ in range(n)]
        if not value_feasible(self.sig, B, sorts) and rng.random() < 0.8:
            # binder sorts the body's value can use up
            sorts = self.leaf_sorts(B, rng, n) or sorts
            n = len(sorts)
            chain = chain[:n] + [Un]
            parts = parts[:n - 1] + [sum(parts[n - 1:], ())]
        binders = tuple((self.fresh("x"), s) for s in sorts)
        sub = max(budget - 1, 0) // 2
        inputs = tuple(self.term(chain[k], sorts[k], chain[k + 1], parts[k], sub, f"{key}{k}.")
                       for k in range(n))
        body = self.term(V, B, W2, binders, sub, key + "b")
        return Let(binders, inputs, body)

    def filler(self, U, B, W, budget, key):
        """A term of the given shape over whatever free variables it needs."""
        return self.term(U, B, W, OPEN, budget, key)

    def some_term(self, U, W, need, budget, key):
        """``(t, B)``: a term of shape ``(U, B, W)`` for the first sort B, in random order, that has one."""
        sorts = [B for B in self.sig.sorts if self.fits(U, B, W, need)]
        self.rng(key + "/sort").shuffle(sorts)
        last = None
        for B in sorts:
            try:
                return self.term(U, B, W, need, budget, f"{key}/{B}"), B
            except Unsatisfiable as exc:
                last = exc
        raise last or Unsatisfiable(f"no term of shape {U} * {W} over {len(need)} variables")

    def some_shape(self, rng, key, need, budget, U=None, W=None, max_len=None, tries=16):
        """``(t, U, B, W)`` for random protocols U and W (those not given) under which need fits.
        Later tries draw shorter protocols, down to empty ones."""
        hi = self.cfg.max_protocol_len if max_len is None else max_len
        for k in range(tries):
            n = max(hi - k * (hi + 1) // tries, 0)
            U1 = self.protocol(rng, n) if U is None else U
            W1 = self.protocol(rng, n) if W is None else W
            if any(self.fits(U1, B, W1, need) for B in self.sig.sorts):
                t, B = self.some_term(U1, W1, need, budget, key)
                return t, U1, B, W1
            if U is not None and W is not None:
                break
        raise Unsatisfiable(f"no protocols fit {len(need)} variables")

    def leaf_sorts(self, B, rng, most):
        """Sorts of the free variables of a random value of sort B, if there are 1 to ``most``."""
        try:
            v = gen_value(self.sig, B, OPEN, rng, lambda: "_")
        except Unsatisfiable:
            return None
        sorts = [u.sort for u in _value_vars(v)]
        return sorts if 1 <= len(sorts) <= most else None


def reseeding(seed, build, tries=32):
    """``build(seed)``, then ``build("seed~k")`` after each Unsatisfiable, up to ``tries`` runs."""
    last = None
    for attempt in range(tries):
        try:
            return build(seed if attempt == 0 else f"{seed}~{attempt}")
        except Unsatisfiable as exc:
            last = exc
    raise last


def _attempts(sig, cfg, build, tries=32):
    return reseeding(cfg.seed, lambda s: build(Gen(sig, replace(cfg, seed=s))), tries)


def gen_term(sig: Signature, target=None, cfg: GenConfig = GenConfig()):
    """A well-typed term.

    ``target`` is None (random shape), a ``(U, B, W)`` triple, or a Judgment
    whose context is then matched exactly.
    """
    def build(g):
        rng = g.rng("target")
        if target is None:
            U, B, W = g.protocol(rng), g.sort(rng), g.protocol(rng)
            need = OPEN
        elif isinstance(target, Judgment):
            U, B, W = target.left, target.result, target.right
            need = tuple(target.ctx)
        else:
            U, B, W = target
            need = OPEN
        return g.term(tuple(U), B, tuple(W), need, cfg.max_term_size)

    return _attempts(sig, cfg, build)


def gen_context(sig: Signature, effectful: bool, cfg: GenConfig = GenConfig()) -> TermContext:
    """A random term context; effectful ones have a nonempty prefix ending in a nonempty protocol."""

    def build(g):
        rng = g.rng("context")
        budget = max(cfg.max_term_size // 2, 1)
        n = rng.randint(2, cfg.max_let_width + 1)
        k = rng.randint(1, n - 1) if effectful else rng.randint(0, n - 1)
        frames, pending = [], ()
        for i in range(rng.randint(0, 2)):
            if rng.random() < 0.5:
                x = g.fresh("x")
                s = g.sort(rng)
                frames.append(GetL(x, s, None))
                pending = ((x, s),) + pending
            else:
                s = g.sort(rng)
                leaves = pending + OPEN
                frames.append(PutL(g.value(s, leaves, rng), None))
                pending = ()
        if pending and k == 0:
            k = 1
        chain = [g.protocol(rng)]
        for i in range(k):
            last = i == k - 1
            chain.append(g.protocol(rng, nonempty=effectful and last) if (effectful or not last)
                         else ())
        prefix, sorts = [], []
        for i in range(k):
            need = (pending if i == 0 else ()) + OPEN
            t, s = g.some_term(chain[i], chain[i + 1], need, budget, f"p{i}.")
            prefix.append(t)
            sorts.append(s)
        sorts += [g.sort(rng) for _ in range(n - k)]
        binders = tuple((g.fresh("x"), s) for s in sorts)
        body, _ = g.some_term(g.protocol(rng), g.protocol(rng), binders, budget, "body")
        return TermContext(tuple(frames), binders, tuple(prefix), body)

    return _attempts(sig, cfg, build)


def gen_fillers(sig: Signature, L: TermContext, cfg: GenConfig = GenConfig(), avoid=()):
    """Terms to plug into the hole of L, continuing its protocol chain."""
    from .rewrite import hole_protocol

    start = hole_protocol(L, sig) if L.prefix else ()
    sorts = [s for _, s in L.binders[len(L.prefix):]]

    def build(g):
        g.counter = 1000  # keep clear of the context's own names
        rng = g.rng("fill")
        left, out = start, []
        for i, s in enumerate(sorts):
            right = g.protocol(rng)
            out.append(g.filler(left, s, right, max(cfg.max_term_size // 2, 1), f"f{i}."))
            left = right
        return tuple(out)

    return _attempts(sig, cfg, build)


# critical pairs

def _chain_let(g, rng, items, budget, key):
    """Assemble ``let`` over ``items``: each item is either a built (term, left, sort, right)
    or None, meaning a random filler for the slot.  Protocols of neighbouring
    fillers are chosen to match the fixed items."""
    n = len(items)
    lefts = [None] * n
    rights = [None] * n
    for i, it in enumerate(items):
        if it is not None:
            lefts[i], rights[i] = it[1], it[3]
    # propagate fixed protocols to neighbours
    bounds = [None] * (n + 1)
    for i in range(n):
        if lefts[i] is not None:
            bounds[i] = lefts[i]
        if rights[i] is not None:
            bounds[i + 1] = rights[i]
    for i in range(n + 1):
        if bounds[i] is None:
            bounds[i] = g.protocol(rng)
    terms, sorts = [], []
    for i, it in enumerate(items):
        if it is not None:
            terms.append(it[0])
            sorts.append(it[2])
        else:
            t, s = g.some_term(bounds[i], bounds[i + 1], OPEN, budget, f"{key}a{i}.")
            terms.append(t)
            sorts.append(s)
    binders = tuple((g.fresh("x"), s) for s in sorts)
    body = g.some_shape(rng, key + "body", binders, budget, max_len=1)[0]
    return Let(binders, tuple(terms), body)


def gen_critical_pair(cls: str, seed: int, sig=None, prefix_len=None):
    if cls not in PAIR_CLASSES:
        raise ValueError(f"unknown critical-pair class {cls}")
    sig = sig or universal_signature()
    cfg = GenConfig(seed, max_term_size=4)

    def build(g):
        rng = g.rng("pair:" + cls)
        b = 3  # filler budget
        na = rng.randint(0, 2) if prefix_len is None else prefix_len
        nb = rng.randint(0, 2)
        S = g.sort

        def val(sort):
            return g.value(sort, OPEN, rng)

        def pick(key, need, left=None, right=None):
            t, U, B, W = g.some_shape(rng, key, need, b, left, right, 2)
            return t, U, B, W

        if cls in ("1-7", "1-8", "2-9", "2-10"):
            D, E = S(rng), S(rng)
            x, y = g.fresh("x"), g.fresh("x")
            if cls == "1-7":
                t, Up, A1, mid_tail = pick("t", OPEN)
                inner = PutR(val(D), PutL(val(E), t))
                first = (inner, (recv(E),) + Up, A1, (send(D),) + mid_tail)
            elif cls == "1-8":
                t, Up, A1, mid_tail = pick("t", ((y, E),) + OPEN)
                inner = PutR(val(D), GetL(y, E, t))
                first = (inner, (send(E),) + Up, A1, (send(D),) + mid_tail)
            elif cls == "2-9":
                # x must stay out of v, so t keeps it as its last variable
                t, Up, A1, mid_tail = pick("t", OPEN + ((x, D),))
                inner = GetR(x, D, PutL(val(E), t))
                first = (inner, (recv(E),) + Up, A1, (recv(D),) + mid_tail)
            else:
                t, Up, A1, mid_tail = pick("t", ((y, E),) + OPEN + ((x, D),))
                inner = GetR(x, D, GetL(y, E, t))
                first = (inner, (send(E),) + Up, A1, (recv(D),) + mid_tail)
            if cls[0] == "1":
                s, _, A2, right_tail = pick("s", ((x, D),) + OPEN, left=mid_tail)
                second = (GetL(x, D, s), (send(D),) + mid_tail, A2, right_tail)
            else:
                s, _, A2, right_tail = pick("s", OPEN, left=mid_tail)
                second = (PutL(val(D), s), (recv(D),) + mid_tail, A2, right_tail)
            items = [None] * na + [first, second] + [None] * nb
            apex = _chain_let(g, rng, items, b, "k")
            rules = ((Rule.R1 if cls in ("1-7", "1-8") else Rule.R2, na, ()),
                     ({"1-7": Rule.R7, "1-8": Rule.R8, "2-9": Rule.R9, "2-10": Rule.R10}[cls], -1, (na,)))
        elif cls in ("3-5", "3-6", "4-5", "4-6"):
            C, D = S(rng), S(rng)
            if cls[0] == "3":
                t, Ut, A1, t_right = pick("t", OPEN)
                first = (PutL(val(C), t), (recv(C),) + Ut, A1, t_right)
            else:
                y = g.fresh("x")
                t, Ut, A1, t_right = pick("t", ((y, C),) + OPEN)
                first = (GetL(y, C, t), (send(C),) + Ut, A1, t_right)
            # with nothing in between, the two ends share a protocol
            s_left = t_right if na == 0 else None
            if cls[2] == "5":
                s, s_left, A2, Ws = pick("s", OPEN, left=s_left)
                last = (PutR(val(D), s), s_left, A2, (send(D),) + Ws)
            else:
                x = g.fresh("x")
                s, s_left, A2, Ws = pick("s", OPEN + ((x, D),), left=s_left)
                last = (GetR(x, D, s), s_left, A2, (recv(D),) + Ws)
            items = [first] + [None] * na + [last]
            apex = _chain_let(g, rng, items, b, "k")
            left_rule = Rule.R3 if cls[0] == "3" else Rule.R4
            right_rule = Rule.R5 if cls[2] == "5" else Rule.R6
            rules = ((left_rule, -1, ()), (right_rule, -1, ()))
        else:
            C, D = S(rng), S(rng)
            x, y = g.fresh("x"), g.fresh("x")
            if cls == "5-7":
                t, Ut, A1, Wt = pick("t", OPEN)
                inner = PutR(val(D), PutL(val(C), t))
                last = (inner, (recv(C),) + Ut, A1, (send(D),) + Wt)
            elif cls == "5-8":
                t, Ut, A1, Wt = pick("t", ((y, C),) + OPEN)
                inner = PutR(val(D), GetL(y, C, t))
                last = (inner, (send(C),) + Ut, A1, (send(D),) + Wt)
            elif cls == "6-9":
                t, Ut, A1, Wt = pick("t", OPEN + ((x, D),))
                inner = GetR(x, D, PutL(val(C), t))
                last = (inner, (recv(C),) + Ut, A1, (recv(D),) + Wt)
            else:
                t, Ut, A1, Wt = pick("t", ((y, C),) + OPEN + ((x, D),))
                inner = GetR(x, D, GetL(y, C, t))
                last = (inner, (send(C),) + Ut, A1, (recv(D),) + Wt)
            items = [None] * na + [last]
            apex = _chain_let(g, rng, items, b, "k")
            second = {"5-7": Rule.R7, "5-8": Rule.R8, "6-9": Rule.R9, "6-10": Rule.R10}[cls]
            rules = ((Rule.R5 if cls[0] == "5" else Rule.R6, -1, ()), (second, -1, (na,)))
        check_term(apex, sig)
        (r1, d1, p1), (r2, d2, p2) = rules
        left = apply(apex, Redex(p1, r1, d1))
        right = apply(apex, Redex(p2, r2, d2))
        return apex, left, right

    return _attempts(sig, cfg, build)
