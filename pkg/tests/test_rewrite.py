import pytest
from hypothesis import given, strategies as st

from corner.calculus import GetL, Let, PutL, alpha_eq, check_term, size
from corner.errors import ArityMismatch, EmptyContext, InvalidRedex, JudgmentMismatch, NotEffectful, ProtocolMismatch
from corner.generator import GenConfig, gen_context, gen_fillers, gen_term, universal_signature
from corner.rewrite import (
    PAIR_CLASSES,
    Redex,
    Rule,
    StepLimit,
    TermContext,
    active_steps,
    apply,
    context_size,
    convertible,
    critical_pair,
    is_active,
    is_normal,
    joinable,
    normalize,
    plug,
    redexes,
    reduce_to_active,
)
from corner.syntax import parse_term
from corner.vdc import CellPath, compose, identity_cell

SIG = universal_signature()


def t(text):
    return parse_term(text)


def test_eleven_rules():
    assert [str(r) for r in Rule] == [f"R{i}" for i in range(11)]


def test_r1_redex_at_root():
    term = t("let x:A, y:B <- (putR(v, [w]) | getL(a:C. [s])) in [r]")
    assert Redex((), Rule.R1, 0) in redexes(term)


def test_neutral_terms_have_no_redex():
    assert redexes(t("[v]")) == []


def test_r7_redex_at_root():
    assert Redex((), Rule.R7) in redexes(t("putR(v, putL(w, [u]))"))


def test_redexes_are_ordered():
    term = t("let x:A, y:A <- (putR(v, putL(w, [u])) | getL(a:A. [a])) in [m_A(x, y)]")
    rs = redexes(term)
    assert rs == sorted(rs)
    assert [(r.path, r.rule) for r in rs] == [((), Rule.R1), ((0,), Rule.R7)]


@pytest.mark.parametrize("before, rule, after", [
    ("let x:A, y:B <- ([p] | [q]) in [f(x, y)]", Rule.R0, "[f(p, q)]"),
    ("let x:A, y:B <- (putR(v, [p]) | getL(a:C. [g(a)])) in [f(x, y)]", Rule.R1,
     "let x:A, y:B <- ([p] | [g(v)]) in [f(x, y)]"),
    ("let x:A, y:B <- (getR(a:C. [g(a)]) | putL(v, [q])) in [f(x, y)]", Rule.R2,
     "let x:A, y:B <- ([g(v)] | [q]) in [f(x, y)]"),
    ("let x:A <- (putL(v, [p])) in [x]", Rule.R3, "putL(v, let x:A <- ([p]) in [x])"),
    ("let x:A <- (getL(a:A. [a])) in [x]", Rule.R4, "getL(a:A. let x:A <- ([a]) in [x])"),
    ("let x:A <- (putR(v, [p])) in [x]", Rule.R5, "putR(v, let x:A <- ([p]) in [x])"),
    ("let x:A <- (getR(a:A. [a])) in [x]", Rule.R6, "getR(a:A. let x:A <- ([a]) in [x])"),
    ("putR(v, putL(w, [p]))", Rule.R7, "putL(w, putR(v, [p]))"),
    ("putR(v, getL(a:A. [a]))", Rule.R8, "getL(a:A. putR(v, [a]))"),
    ("getR(a:A. putL(v, [a]))", Rule.R9, "putL(v, getR(a:A. [a]))"),
    ("getR(a:A. getL(b:B. [f(b, a)]))", Rule.R10, "getL(b:B. getR(a:A. [f(b, a)]))"),
])
def test_each_rule(before, rule, after):
    term = t(before)
    r = next(r for r in redexes(term) if r.path == () and r.rule == rule)
    out = apply(term, r)
    assert alpha_eq(out, t(after))
    assert size(out) < size(term)


def test_r9_side_condition():
    # the received value is sent straight back: the put cannot move outside the get
    term = t("getR(a:A. putL(a, [c_A()]))")
    check_term(term, SIG)
    assert all(r.rule != Rule.R9 for r in redexes(term))


def test_r4_renames_binder_away_from_later_inputs():
    term = t("let x:A, y:A <- (getL(a:A. [a]) | [a]) in [m_A(x, y)]")
    out = apply(term, Redex((), Rule.R4))
    assert isinstance(out, GetL) and out.x != "a"
    assert check_term(out, SIG, {"a": "A"}).ctx == check_term(term, SIG, {"a": "A"}).ctx


def test_r8_renames_when_value_mentions_binder():
    term = t("putR(a, getL(a:A. [a]))")
    out = apply(term, Redex((), Rule.R8))
    assert alpha_eq(out, t("getL(z:A. putR(a, [z]))"))


def test_invalid_redex():
    with pytest.raises(InvalidRedex):
        apply(t("[v]"), Redex((), Rule.R0))
    with pytest.raises(InvalidRedex):
        apply(t("putR(v, [w])"), Redex((3,), Rule.R7))


def test_clothes_golden_trace(clothes):
    decl, _ = clothes.get("main")
    trace = normalize(decl.term)
    assert trace.rules == [Rule.R1, Rule.R0]
    assert str(trace.final) == "[pack(p, sew(cut(f), t))]"
    assert trace.lines() == [
        "step 1: R1 at [] :: let x:Pants, y:Shirt <- ([p] | [sew(cut(f), t)]) in [pack(x, y)]",
        "step 2: R0 at [] :: [pack(p, sew(cut(f), t))]",
    ]


def test_coffee_golden_trace(coffee):
    decl, _ = coffee.get("cafe")
    trace = normalize(decl.term)
    assert trace.rules == [Rule.R1, Rule.R6, Rule.R2, Rule.R0]
    assert alpha_eq(trace.final, t("getR(w:Water. [fin(drink(p, brew(m, b, w)), done())])"))
    assert check_term(trace.final, coffee.signature, decl.ctx) == check_term(decl.term, coffee.signature, decl.ctx)


def test_r6_step_of_coffee(coffee):
    decl, _ = coffee.get("cafe")
    trace = normalize(decl.term)
    r, after = trace.steps[1]
    assert r == Redex((), Rule.R6)
    assert str(after).startswith("getR(w:Water. let x:Person, y:Ready <- (")


def test_neutral_normalizes_in_no_steps():
    trace = normalize(t("[v]"))
    assert trace.steps == [] and trace.final == t("[v]")


def test_trace_records():
    recs = normalize(t("let x:A <- ([v]) in [x]")).records()
    assert recs == [{"step": 1, "rule": "R0", "path": [], "detail": -1, "term": "[v]"}]


def test_step_limit(coffee):
    decl, _ = coffee.get("cafe")
    with pytest.raises(StepLimit) as info:
        normalize(decl.term, max_steps=2)
    assert len(info.value.trace.steps) == 2


def test_convertible_one_step():
    term = t("let x:A <- (putR(c_B(), [c_A()])) in [x]")
    assert convertible(term, apply(term, redexes(term)[0]), SIG)


def test_distinct_neutrals_not_convertible():
    assert not convertible(t("[c_A()]"), t("[m_A(c_A(), c_A())]"), SIG)


def test_convertible_needs_same_judgment():
    with pytest.raises(JudgmentMismatch):
        convertible(t("[c_A()]"), t("[c_B()]"), SIG)


def test_identity_composite_converts_to_cell(usig):
    f = gen_term(usig, ((), "A", ()), GenConfig(3))
    assert convertible(compose(identity_cell("A", usig), CellPath.of([f], usig), usig), f, usig)


def test_joinable_reflexive():
    term = gen_term(SIG, cfg=GenConfig(11))
    assert joinable(term, term)


def test_is_normal():
    assert is_normal(t("putL(v, putR(w, [u]))"))
    assert not is_normal(t("putR(w, putL(v, [u]))"))


@given(st.integers(0, 100_000))
def test_steps_keep_judgment_and_shrink(seed):
    term = gen_term(SIG, cfg=GenConfig(seed, max_term_size=6))
    j = check_term(term, SIG)
    for r in redexes(term):
        out = apply(term, r)
        assert check_term(out, SIG) == j
        assert size(out) < size(term)


# term contexts

CTX = TermContext((), (("x", "A"), ("y", "A")), (t("getR(a:A. [a])"),), t("[m_A(x, y)]"))


def test_plug_into_let():
    L = TermContext((), (("x", "A"),), (), t("[x]"))
    assert plug(L, [t("[v]")]) == t("let x:A <- ([v]) in [x]")


def test_plug_wraps_frames():
    L = TermContext((PutL(t("[v]").v, None),), (("x", "A"),), (), t("[x]"))
    assert plug(L, [t("[w]")]) == t("putL(v, let x:A <- ([w]) in [x])")


def test_plug_recovers_prefix():
    out = plug(CTX, [t("putL(c_A(), [c_A()])")])
    assert isinstance(out, Let) and out.inputs[:1] == CTX.prefix


def test_plug_arity():
    with pytest.raises(ArityMismatch):
        plug(CTX, [])


def test_plug_protocol():
    with pytest.raises(ProtocolMismatch):
        plug(CTX, [t("[c_A()]")], SIG)


def test_context_needs_room_in_hole():
    with pytest.raises(ArityMismatch):
        TermContext((), (("x", "A"),), (t("[v]"),), t("[x]"))


def test_context_size():
    # 2 * #(getR(a.[a])) * #([m_A(x, y)]) = 2 * 5 * 2
    assert context_size(CTX) == 20
    framed = TermContext((PutL(t("[v]").v, None),), CTX.binders, CTX.prefix, CTX.body)
    assert context_size(framed) == 2 + 2 * 20


def test_active_context_unchanged():
    assert is_active(CTX, SIG)
    assert reduce_to_active(CTX, SIG) == CTX


def test_leading_put_is_hoisted():
    L = TermContext((), (("x", "A"), ("y", "A"), ("z", "A")),
                    (t("putL(c_A(), getR(a:A. [a]))"), t("getR(b:A. [b])")), t("[m_A(x, m_A(y, z))]"))
    chain = active_steps(L, SIG)
    assert chain[1].frames == (PutL(t("[c_A()]").v, None),)
    assert chain[1].prefix == (t("getR(a:A. [a])"), t("getR(b:A. [b])"))
    assert is_active(chain[-1], SIG)


def test_let_in_prefix_reduced_first():
    L = TermContext((), (("x", "A"), ("y", "A")),
                    (t("let u:A <- (getR(a:A. [a])) in [u]"),), t("[m_A(x, y)]"))
    chain = active_steps(L, SIG)
    assert all(context_size(a) > context_size(b) for a, b in zip(chain, chain[1:]))
    assert is_active(chain[-1], SIG)


def test_reduce_to_active_errors():
    with pytest.raises(EmptyContext):
        reduce_to_active(TermContext((), (("x", "A"),), (), t("[x]")), SIG)
    closed = TermContext((), (("x", "A"), ("y", "A")), (t("[c_A()]"),), t("[m_A(x, y)]"))
    with pytest.raises(NotEffectful):
        reduce_to_active(closed, SIG)


@given(st.integers(0, 100_000))
def test_active_chain_rewrites_plugged_term(seed):
    cfg = GenConfig(seed, max_term_size=4)
    L = gen_context(SIG, True, cfg)
    ts = gen_fillers(SIG, L, cfg)
    chain = active_steps(L, SIG)
    assert is_active(chain[-1], SIG)
    for a, b in zip(chain, chain[1:]):
        assert context_size(a) > context_size(b)
        ta, tb = plug(a, ts), plug(b, ts)
        assert any(alpha_eq(apply(ta, r), tb) for r in redexes(ta))


# critical pairs

@pytest.mark.parametrize("cls", PAIR_CLASSES)
def test_critical_pairs_join(cls):
    for seed in range(10):
        apex, left, right = critical_pair(cls, seed, SIG)
        j = check_term(apex, SIG)
        assert check_term(left, SIG) == j == check_term(right, SIG)
        assert joinable(left, right, SIG)


def test_critical_pair_shapes():
    apex, _, _ = critical_pair("3-5", 0, SIG)
    assert type(apex.inputs[0]).__name__ == "PutL" and type(apex.inputs[-1]).__name__ == "PutR"
    apex, _, _ = critical_pair("5-7", 0, SIG, prefix_len=0)
    last = apex.inputs[-1]
    assert type(last).__name__ == "PutR" and type(last.t).__name__ == "PutL"
    apex, _, _ = critical_pair("1-7", 1, SIG, prefix_len=2)
    a, b = apex.inputs[2], apex.inputs[3]
    assert type(a).__name__ == "PutR" and type(a.t).__name__ == "PutL" and type(b).__name__ == "GetL"
