"""Cells of the free cornering and the interpretation of terms as cells.

A cell has a boundary ``(U, top, bottom, W)``: protocols on its left and
right edges and sort lists along its top and bottom.  Cells are built from
promoted value morphisms, the four corners, identities, and vertical (``.``)
and horizontal (``|``) composition.

Equality is decided through two invariants.  The *dataflow* of a cell says,
for every output (a bottom wire or an outgoing exchange), which value term
over the inputs it carries.  The *canonical form* is a layered drawing
rebuilt from the dataflow by eager simulation: slice by slice, exchanges
happen as soon as their wire reaches the edge, and each output's value is
computed in one promotion as soon as its inputs sit side by side.  The
rebuilt cell is equal to the original by the cornering equations, so equal
canonical forms mean equal cells, and different dataflows mean different
cells.  When the simulation gets stuck the answer is Unknown.
"""

from __future__ import annotations

import enum
import json
import random
from dataclasses import dataclass, field

from .calculus import (
    GetL,
    GetR,
    Let,
    Polarity,
    PutL,
    PutR,
    Seq,
    check_term,
    recv,
    render_protocol,
    send,
)
from .errors import BoundaryMismatch, CornerError, IllFormedComposite, Unsatisfiable
from .report import Report
from .signature import App, Var, rename_value, synth_value, value_free_vars


# monoidal morphisms

@dataclass(frozen=True)
class Component:
    """One value ``ctx |- value : result``."""

    ctx: tuple
    value: object
    result: str

    def __str__(self):
        return str(self.value)


def component(ctx, value, result) -> Component:
    return Component(tuple((x, s) for x, s in ctx), value, result)


# cell expressions

@dataclass(frozen=True)
class Boundary:
    left: tuple
    top: tuple
    bottom: tuple
    right: tuple

    def __str__(self):
        return (f"({render_protocol(self.left)}, [{','.join(self.top)}] -> "
                f"[{','.join(self.bottom)}], {render_protocol(self.right)})")


class Cell:
    """Base of cell expressions; every node carries its boundary."""

    __slots__ = ()

    @property
    def boundary(self) -> Boundary:
        return self._b

    def __str__(self):
        return render(self)


def _set_boundary(cell, b):
    object.__setattr__(cell, "_b", b)


@dataclass(frozen=True, eq=True)
class Promote(Cell):
    m: tuple  # of Component
    _b: Boundary = field(default=None, init=False, compare=False, repr=False)

    def __post_init__(self):
        top = tuple(s for c in self.m for _, s in c.ctx)
        _set_boundary(self, Boundary((), top, tuple(c.result for c in self.m), ()))


@dataclass(frozen=True)
class CornerNE(Cell):
    """Receive A from the left and carry it down."""

    sort: str
    _b: Boundary = field(default=None, init=False, compare=False, repr=False)

    def __post_init__(self):
        _set_boundary(self, Boundary((send(self.sort),), (), (self.sort,), ()))


@dataclass(frozen=True)
class CornerSW(Cell):
    """Send a wire from above out to the right."""

    sort: str
    _b: Boundary = field(default=None, init=False, compare=False, repr=False)

    def __post_init__(self):
        _set_boundary(self, Boundary((), (self.sort,), (), (send(self.sort),)))


@dataclass(frozen=True)
class CornerNW(Cell):
    """Receive A from the right and carry it down."""

    sort: str
    _b: Boundary = field(default=None, init=False, compare=False, repr=False)

    def __post_init__(self):
        _set_boundary(self, Boundary((), (), (self.sort,), (recv(self.sort),)))


@dataclass(frozen=True)
class CornerSE(Cell):
    """Send a wire from above out to the left."""

    sort: str
    _b: Boundary = field(default=None, init=False, compare=False, repr=False)

    def __post_init__(self):
        _set_boundary(self, Boundary((recv(self.sort),), (self.sort,), (), ()))


@dataclass(frozen=True)
class VIdent(Cell):
    sorts: tuple
    _b: Boundary = field(default=None, init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "sorts", tuple(self.sorts))
        _set_boundary(self, Boundary((), self.sorts, self.sorts, ()))


@dataclass(frozen=True)
class HIdent(Cell):
    protocol: tuple
    _b: Boundary = field(default=None, init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "protocol", tuple(self.protocol))
        _set_boundary(self, Boundary(self.protocol, (), (), self.protocol))


@dataclass(frozen=True)
class VComp(Cell):
    """``a . b``: a on top of b."""

    a: Cell
    b: Cell
    _b: Boundary = field(default=None, init=False, compare=False, repr=False)

    def __post_init__(self):
        x, y = self.a.boundary, self.b.boundary
        if x.bottom != y.top:
            raise IllFormedComposite(f"cannot stack {list(x.bottom)} onto {list(y.top)}")
        _set_boundary(self, Boundary(x.left + y.left, x.top, y.bottom, x.right + y.right))


@dataclass(frozen=True)
class HComp(Cell):
    """``a | b``: a beside b, sharing a's right edge with b's left edge."""

    a: Cell
    b: Cell
    _b: Boundary = field(default=None, init=False, compare=False, repr=False)

    def __post_init__(self):
        x, y = self.a.boundary, self.b.boundary
        if x.right != y.left:
            raise IllFormedComposite(
                f"right edge {render_protocol(x.right)} does not meet left edge {render_protocol(y.left)}")
        _set_boundary(self, Boundary(x.left, x.top + y.top, x.bottom + y.bottom, y.right))


def boundary(c: Cell) -> Boundary:
    return c.boundary


def hcomp(*cells) -> Cell:
    """Right-nested horizontal composite; a single cell is returned as is."""
    out = cells[-1]
    for c in reversed(cells[:-1]):
        out = HComp(c, out)
    return out


def vcomp(*cells) -> Cell:
    out = cells[-1]
    for c in reversed(cells[:-1]):
        out = VComp(c, out)
    return out


# rendering

def _sorts(xs) -> str:
    return "[" + ",".join(xs) + "]"


def render(c: Cell) -> str:
    if isinstance(c, Promote):
        return "<<" + ", ".join(map(str, c.m)) + ">>"
    if isinstance(c, CornerNE):
        return f"NE[{c.sort}]"
    if isinstance(c, CornerSW):
        return f"SW[{c.sort}]"
    if isinstance(c, CornerNW):
        return f"NW[{c.sort}]"
    if isinstance(c, CornerSE):
        return f"SE[{c.sort}]"
    if isinstance(c, VIdent):
        return f"1_{_sorts(c.sorts)}"
    if isinstance(c, HIdent):
        return f"id_{render_protocol(c.protocol)}"
    op = " . " if isinstance(c, VComp) else " | "

    def child(d, right):
        s = render(d)
        if isinstance(d, (VComp, HComp)) and not (right and type(d) is type(c)):
            return f"({s})"
        return s

    return child(c.a, False) + op + child(c.b, True)


# interpretation

def interpret(t, sig, ctx=None) -> Cell:
    """The cell denoted by a well-typed term."""
    j = check_term(t, sig, ctx)
    return _interp(t, sig, dict(j.ctx))


def _promote(v, sig, env):
    s, vctx = synth_value(v, sig, env)
    return Promote((component(vctx, v, s),)), vctx


def _interp(t, sig, env) -> Cell:
    if isinstance(t, Seq):
        return _promote(t.v, sig, env)[0]
    if isinstance(t, Let):
        ins = [_interp(a, sig, env) for a in t.inputs]
        body = _interp(t.body, sig, {**env, **dict(t.binders)})
        return VComp(hcomp(*ins), body)
    if isinstance(t, (PutL, PutR)):
        rest = _interp(t.t, sig, env)
        p, vctx = _promote(t.v, sig, env)
        s = p.m[0].result
        delta = VIdent(rest.boundary.top)
        if isinstance(t, PutL):
            return VComp(HComp(VComp(p, CornerSE(s)), delta), rest)
        return VComp(HComp(delta, VComp(p, CornerSW(s))), rest)
    if isinstance(t, (GetL, GetR)):
        rest = _interp(t.t, sig, {**env, t.x: t.sort})
        top = rest.boundary.top
        if isinstance(t, GetL):
            return VComp(HComp(CornerNE(t.sort), VIdent(top[1:])), rest)
        return VComp(HComp(VIdent(top[:-1]), CornerNW(t.sort)), rest)
    raise TypeError(f"not a term: {t!r}")


# dataflow
#
# Inputs are named "t:i" (top wire i), "l:i" (exchange i of the left edge,
# when it enters) and "r:i" (likewise on the right).  Outputs are keyed
# ("b", j), ("l", i) and ("r", i).

def _src(kind, i) -> str:
    return f"{kind}:{i}"


def _rename(v, fn):
    if isinstance(v, Var):
        return fn(v)
    return App(v.op, tuple(_rename(a, fn) for a in v.args))


def dataflow(c: Cell) -> dict:
    return _flow(c, {})


def _flow(c, memo):
    key = id(c)
    if key in memo:
        return memo[key][1]
    out = _flow_node(c, memo)
    memo[key] = (c, out)
    return out


def _flow_node(c, memo):
    if isinstance(c, Promote):
        out, k = {}, 0
        for j, comp in enumerate(c.m):
            table = {}
            for x, _ in comp.ctx:
                table[x] = Var(_src("t", k))
                k += 1
            out[("b", j)] = rename_value(comp.value, table)
        return out
    if isinstance(c, CornerNE):
        return {("b", 0): Var("l:0")}
    if isinstance(c, CornerSW):
        return {("r", 0): Var("t:0")}
    if isinstance(c, CornerNW):
        return {("b", 0): Var("r:0")}
    if isinstance(c, CornerSE):
        return {("l", 0): Var("t:0")}
    if isinstance(c, VIdent):
        return {("b", j): Var(_src("t", j)) for j in range(len(c.sorts))}
    if isinstance(c, HIdent):
        out = {}
        for i, e in enumerate(c.protocol):
            if e.pol is Polarity.SEND:
                out[("r", i)] = Var(_src("l", i))
            else:
                out[("l", i)] = Var(_src("r", i))
        return out
    fa, fb = _flow(c.a, memo), _flow(c.b, memo)
    ba = c.a.boundary
    if isinstance(c, VComp):
        nl, nr = len(ba.left), len(ba.right)

        def lower(v):
            kind, i = v.name.split(":")
            i = int(i)
            if kind == "t":
                return fa[("b", i)]
            return Var(_src(kind, i + (nl if kind == "l" else nr)))

        out = {k: v for k, v in fa.items() if k[0] != "b"}
        for (kind, i), v in fb.items():
            k = (kind, i + nl) if kind == "l" else (kind, i + nr) if kind == "r" else (kind, i)
            out[k] = _rename(v, lower)
        return out
    # HComp: resolve the shared edge
    nt, nbot = len(ba.top), len(ba.bottom)
    busy = set()

    def through(side, i):
        if (side, i) in busy:
            raise IllFormedComposite("the composite has a cyclic exchange")
        busy.add((side, i))
        # a reads its right input i from b's left output i, and conversely
        v = resolve_b(fb[("l", i)]) if side == "a" else resolve_a(fa[("r", i)])
        busy.discard((side, i))
        return v

    def resolve_a(v):
        def fn(u):
            kind, i = u.name.split(":")
            return through("a", int(i)) if kind == "r" else u
        return _rename(v, fn)

    def resolve_b(v):
        def fn(u):
            kind, i = u.name.split(":")
            i = int(i)
            if kind == "l":
                return through("b", i)
            return Var(_src("t", i + nt)) if kind == "t" else u
        return _rename(v, fn)

    out = {}
    for (kind, i), v in fa.items():
        if kind != "r":
            out[(kind, i)] = resolve_a(v)
    for (kind, i), v in fb.items():
        if kind == "b":
            out[("b", i + nbot)] = resolve_b(v)
        elif kind == "r":
            out[("r", i)] = resolve_b(v)
    return out


# canonical form

class Stuck(Exception):
    """The eager layout could not place every output."""


def _leaves(v) -> list:
    return value_free_vars(v)


def canonical(c: Cell) -> Cell:
    """The canonical layered form of c; raises Stuck when layout fails."""
    return _layout(c.boundary, dataflow(c))[0]


def _layout(bd: Boundary, flow: dict):
    left = [("in", _src("l", i), e.sort) if e.pol is Polarity.SEND else ("out", ("l", i), e.sort)
            for i, e in enumerate(bd.left)]
    right = [("in", _src("r", i), e.sort) if e.pol is Polarity.RECV else ("out", ("r", i), e.sort)
             for i, e in enumerate(bd.right)]
    sort_of = {}
    for i, s in enumerate(bd.top):
        sort_of[_src("t", i)] = s
    for kind, evs in (("l", left), ("r", right)):
        for ev in evs:
            if ev[0] == "in":
                sort_of[ev[1]] = ev[2]
    sink_sort = {("b", j): s for j, s in enumerate(bd.bottom)}
    for evs in (left, right):
        for ev in evs:
            if ev[0] == "out":
                sink_sort[ev[1]] = ev[2]
    if set(flow) != set(sink_sort):
        raise Stuck("outputs do not match the boundary")
    owner = {}
    for s, v in flow.items():
        for x in _leaves(v):
            if x in owner or x not in sort_of:
                raise Stuck(f"input {x} is not used exactly once")
            owner[x] = s
    if set(owner) != set(sort_of):
        raise Stuck("an input is discarded")

    # a wire is ("src", name, sort) or ("done", sink, sort)
    cut = [("src", _src("t", i), s) for i, s in enumerate(bd.top)]
    pl = pr = 0
    slices = []
    produced = set()

    def relabel(cut):
        out = []
        for w in cut:
            if w[0] == "src" and flow[owner[w[1]]] == Var(w[1]):
                w = ("done", owner[w[1]], w[2])
            out.append(w)
        return out

    cut = relabel(cut)
    while True:
        lev = left[pl] if pl < len(left) else None
        rev = right[pr] if pr < len(right) else None
        # a wire crossing straight from one edge to the other
        if not cut and lev and rev:
            if lev[0] == "in" and rev[0] == "out" and flow[rev[1]] == Var(lev[1]):
                slices.append(HIdent((bd.left[pl],)))
                pl, pr = pl + 1, pr + 1
                continue
            if rev[0] == "in" and lev[0] == "out" and flow[lev[1]] == Var(rev[1]):
                slices.append(HIdent((bd.left[pl],)))
                pl, pr = pl + 1, pr + 1
                continue
        lo, hi = 0, len(cut)
        lgen = rgen = None
        lnew = rnew = None
        lconst = rconst = None
        if lev:
            if lev[0] == "in":
                lgen, lnew = CornerNE(lev[2]), ("src", lev[1], lev[2])
            elif cut and cut[0][:2] == ("done", lev[1]):
                lgen, lo = CornerSE(lev[2]), 1
            elif not _leaves(flow[lev[1]]) and lev[1] not in produced:
                lconst = lev[1]
        if rev:
            if rev[0] == "in":
                rgen, rnew = CornerNW(rev[2]), ("src", rev[1], rev[2])
            elif cut and cut[-1][:2] == ("done", rev[1]) and hi - 1 >= lo:
                rgen, hi = CornerSW(rev[2]), hi - 1
            elif not _leaves(flow[rev[1]]) and rev[1] not in produced:
                rconst = rev[1]
        mid = cut[lo:hi]
        comps, outs, fired = _fire(mid, flow, owner, sink_sort)
        finished = lev is None and rev is None
        if finished and not fired:
            # closed bottom outputs go in last
            comps, outs, fired = _finish(mid, flow, sink_sort)
            if fired:
                slices.append(_slice(None, comps, outs, None))
            return vcomp(*_merge(slices)) if slices else VIdent(bd.top), slices
        if lconst:
            comps.insert(0, component((), flow[lconst], sink_sort[lconst]))
            outs.insert(0, ("done", lconst, sink_sort[lconst]))
            produced.add(lconst)
            fired = True
        if rconst:
            comps.append(component((), flow[rconst], sink_sort[rconst]))
            outs.append(("done", rconst, sink_sort[rconst]))
            produced.add(rconst)
            fired = True
        if not (lgen or rgen or fired):
            raise Stuck("no exchange or computation can proceed")
        slices.append(_slice(lgen, comps, outs, rgen))
        cut = ([lnew] if lnew else []) + outs + ([rnew] if rnew else [])
        cut = relabel(cut)
        pl += lgen is not None
        pr += rgen is not None


def _fire(mid, flow, owner, sink_sort):
    """Compute every output whose inputs lie side by side in ``mid``."""
    comps, outs, fired = [], [], False
    i = 0
    while i < len(mid):
        w = mid[i]
        if w[0] == "src":
            s = owner[w[1]]
            leaves = _leaves(flow[s])
            n = len(leaves)
            names = [u[1] if u[0] == "src" else None for u in mid[i:i + n]]
            if names == leaves:
                ctx = [(x, mid[i + k][2]) for k, x in enumerate(leaves)]
                comps.append(component(ctx, flow[s], sink_sort[s]))
                outs.append(("done", s, sink_sort[s]))
                fired = True
                i += n
                continue
        comps.append(None)  # pass the wire through
        outs.append(w)
        i += 1
    return comps, outs, fired


def _finish(mid, flow, sink_sort):
    bottoms = sorted(k for k in sink_sort if k[0] == "b")
    comps, outs, fired = [], [], False
    rest = list(mid)
    for k in bottoms:
        if not _leaves(flow[k]):
            comps.append(component((), flow[k], sink_sort[k]))
            outs.append(("done", k, sink_sort[k]))
            fired = True
        elif rest and rest[0][:2] == ("done", k):
            comps.append(None)
            outs.append(rest.pop(0))
        else:
            raise Stuck("bottom wires are out of order")
    if rest:
        raise Stuck("wires left over at the bottom")
    return comps, outs, fired


def _slice(lgen, comps, outs, rgen):
    """One layer: an optional corner on each side around a promotion or identity."""
    parts = [lgen] if lgen else []
    if comps:
        if any(c is not None for c in comps):
            # local names x0, x1, .. from left to right
            k, norm = 0, []
            for c, w in zip(comps, outs):
                if c is None:
                    x = f"x{k}"
                    norm.append(component([(x, w[2])], Var(x, w[2]), w[2]))
                    k += 1
                    continue
                table, ctx = {}, []
                for x, s in c.ctx:
                    table[x] = Var(f"x{k}", s)
                    ctx.append((f"x{k}", s))
                    k += 1
                norm.append(component(ctx, rename_value(c.value, table), c.result))
            parts.append(Promote(tuple(norm)))
        else:
            parts.append(VIdent(tuple(w[2] for w in outs)))
    if rgen:
        parts.append(rgen)
    return hcomp(*parts) if parts else VIdent(())


def _merge(slices):
    """Drop identity slices and join neighbouring protocol identities."""
    out = []
    for s in slices:
        if isinstance(s, VIdent):
            continue
        if isinstance(s, HIdent) and out and isinstance(out[-1], HIdent):
            out[-1] = HIdent(out[-1].protocol + s.protocol)
            continue
        out.append(s)
    return out


def normalize_cell(c: Cell) -> Cell:
    """The canonical form of c, or c itself when the layout is stuck."""
    try:
        return canonical(c)
    except Stuck:
        return c


class Verdict(enum.Enum):
    EQUAL = "Equal"
    DISTINCT = "Distinct"
    UNKNOWN = "Unknown"

    def __str__(self):
        return self.value


def cells_equal(a: Cell, b: Cell) -> Verdict:
    if a.boundary != b.boundary:
        raise BoundaryMismatch(f"{a.boundary} vs {b.boundary}")
    fa, fb = dataflow(a), dataflow(b)
    if fa != fb:
        return Verdict.DISTINCT
    try:
        ca, cb = canonical(a), canonical(b)
    except Stuck:
        return Verdict.UNKNOWN
    return Verdict.EQUAL if ca == cb else Verdict.UNKNOWN


# diagram description

def _generators(c):
    if isinstance(c, HComp):
        return _generators(c.a) + _generators(c.b)
    b = c.boundary
    rec = {"kind": type(c).__name__, "text": render(c),
           "top": list(b.top), "bottom": list(b.bottom),
           "left": [str(e) for e in b.left], "right": [str(e) for e in b.right]}
    return [rec]


def layout(c: Cell) -> dict:
    """One record per slice of the canonical form, top to bottom."""
    try:
        canon = canonical(c)
        stuck = False
    except Stuck:
        canon, stuck = c, True
    slices = []
    node = canon
    while isinstance(node, VComp) and not stuck:
        slices.append(node.a)
        node = node.b
    slices.append(node)
    bd = c.boundary
    return {
        "boundary": {"left": [str(e) for e in bd.left], "top": list(bd.top),
                     "bottom": list(bd.bottom), "right": [str(e) for e in bd.right]},
        "canonical": not stuck,
        "slices": [{"index": i, "wires_in": list(s.boundary.top), "wires_out": list(s.boundary.bottom),
                    "generators": _generators(s)} for i, s in enumerate(slices)],
    }


def layout_json(c: Cell) -> str:
    return json.dumps(layout(c), indent=2, sort_keys=True) + "\n"


# functoriality checks

FUNCTOR_LAWS = ("rewrite-steps", "identity", "composite", "empty-composite")


def _composition_law(sig, law, key) -> bool:
    from .generator import OPEN, Gen, GenConfig
    from .vdc import CellPath, compose, id_term, identity_cell

    g = Gen(sig, GenConfig(key, max_term_size=3, max_protocol_len=2))
    rng = random.Random(key)
    if law == "identity":
        A = g.sort(rng)
        return canonical(interpret(identity_cell(A, sig), sig)) == VIdent((A,))
    if law == "composite":
        n = rng.randint(1, 3)
        gs, right = [], None
        for k in range(n):
            t, _, _, right = g.some_shape(rng, f"g{k}.", OPEN, 3, U=right, max_len=2)
            gs.append(t)
        path = CellPath.of(gs, sig)
        need = tuple((g.fresh("y"), r) for r in path.results)
        f = g.some_shape(rng, "f", need, 3, max_len=2)[0]
        lhs = interpret(compose(f, path, sig), sig)
        rhs = VComp(hcomp(*[interpret(x, sig) for x in gs]), interpret(f, sig))
        return cells_equal(lhs, rhs) is Verdict.EQUAL
    U = g.protocol(rng, 2)
    f = g.some_shape(rng, "f", (), 3, max_len=2)[0]
    composite = compose(f, CellPath.empty(U), sig)
    rhs = VComp(HIdent(U), interpret(f, sig))
    return cells_equal(interpret(composite, sig), rhs) is Verdict.EQUAL and composite == id_term(U, f)


def check_functor(sig=None, seed: int = 0, count: int = 200) -> Report:
    """Interpretation against rewriting and composition on random instances.

    Case i checks every step of the normalization trace of term ``seed + i``,
    then one composition law, cycling through the others.
    """
    from .generator import GenConfig, gen_term, reseeding, universal_signature
    from .rewrite import normalize

    sig = sig or universal_signature()
    report = Report("functor")
    for i in range(count):
        s = seed + i
        try:
            t = gen_term(sig, cfg=GenConfig(s, max_term_size=6))
            trace = normalize(t)
            cells = [interpret(u, sig) for u in trace.terms()]
            ok = all(cells_equal(x, y) is Verdict.EQUAL for x, y in zip(cells, cells[1:]))
            report.add("rewrite-steps", s, ok)
        except Unsatisfiable as exc:
            report.skip("rewrite-steps", s, exc)
        except CornerError as exc:
            report.error("rewrite-steps", s, exc)
        law = FUNCTOR_LAWS[1 + i % 3]
        try:
            report.add(law, s, reseeding(f"{s}/{law}", lambda key: _composition_law(sig, law, key)))
        except Unsatisfiable as exc:
            report.skip(law, s, exc)
        except CornerError as exc:
            report.error(law, s, exc)
    return report
