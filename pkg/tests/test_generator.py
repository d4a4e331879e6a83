import random
from collections import Counter

import pytest
from hypothesis import assume, given, strategies as st

from corner.calculus import GetL, GetR, Let, PutL, PutR, Seq, check_term, recv, send, term_nodes
from corner.errors import Unsatisfiable
from corner.generator import (
    GAP,
    OPEN,
    Gen,
    GenConfig,
    gen_context,
    gen_fillers,
    gen_term,
    gen_value,
    shape_feasible,
    universal_signature,
)
from corner.rewrite import hole_protocol, plug
from corner.signature import App, Var, make_signature
from corner.suites import SUITES, run_suite

SIG = universal_signature()
BARE = make_signature(["A", "B"], [])


def test_same_seed_same_term():
    assert gen_term(SIG, cfg=GenConfig(42)) == gen_term(SIG, cfg=GenConfig(42))


def test_seeds_differ():
    assert len({str(gen_term(SIG, cfg=GenConfig(s))) for s in range(20)}) > 15


def test_every_constructor_and_both_polarities_appear():
    kinds, pols = Counter(), Counter()
    for s in range(200):
        term = gen_term(SIG, cfg=GenConfig(s))
        kinds.update(type(u).__name__ for u in term_nodes(term))
        j = check_term(term, SIG)
        pols.update(e.pol for e in j.left + j.right)
    assert set(kinds) == {c.__name__ for c in (Seq, Let, PutR, PutL, GetL, GetR)}
    assert len(pols) == 2


def test_target_triple(clothes):
    term = gen_term(clothes.signature, ((), "Clothes", ()), GenConfig(5))
    assert check_term(term, clothes.signature).shape() == ((), "Clothes", ())


def test_target_judgment_fixes_context():
    j = check_term(gen_term(SIG, cfg=GenConfig(8)), SIG)
    again = gen_term(SIG, j, GenConfig(99))
    assert check_term(again, SIG) == j


def test_received_value_with_nowhere_to_go():
    # without operations every sort is conserved, so an A received from the left
    # can neither become the B result nor leave
    with pytest.raises(Unsatisfiable):
        gen_term(BARE, ((send("A"),), "B", ()), GenConfig(0))


def test_received_value_forwarded():
    term = gen_term(BARE, ((send("A"),), "A", ()), GenConfig(0))
    assert isinstance(term, GetL)
    assert check_term(term, BARE).shape() == ((send("A"),), "A", ())


def _balance(j, sort):
    fv = sum(s == sort for _, s in j.ctx)
    received = sum(e.sort == sort for e in j.left if e.pol.value == "!")
    received += sum(e.sort == sort for e in j.right if e.pol.value == "?")
    sent = sum(e.sort == sort for e in j.left + j.right) - received
    return fv + received - sent - (j.result == sort)


@given(st.integers(0, 100_000))
def test_conservation_without_operations(seed):
    try:
        term = gen_term(BARE, cfg=GenConfig(seed, max_term_size=4))
    except Unsatisfiable:
        assume(False)
    j = check_term(term, BARE)
    assert _balance(j, "A") == 0 and _balance(j, "B") == 0


@pytest.mark.parametrize("field", ["max_term_size", "max_protocol_len", "max_let_width"])
def test_config_bounds(field):
    with pytest.raises(ValueError):
        GenConfig(**{field: 0})


def test_empty_signature():
    with pytest.raises(Unsatisfiable):
        gen_term(make_signature([], []))


@given(st.integers(0, 100_000))
def test_effectful_context(seed):
    cfg = GenConfig(seed, max_term_size=4)
    L = gen_context(SIG, True, cfg)
    assert L.prefix and hole_protocol(L, SIG) != ()
    assert gen_context(SIG, True, cfg) == L
    ts = gen_fillers(SIG, L, cfg)
    check_term(plug(L, ts, SIG), SIG)


def test_pure_context_may_be_empty():
    prefixes = [len(gen_context(SIG, False, GenConfig(s)).prefix) for s in range(40)]
    assert 0 in prefixes


def test_generated_binders_are_typed():
    for s in range(50):
        for u in term_nodes(gen_term(SIG, cfg=GenConfig(s))):
            if isinstance(u, (GetL, GetR)):
                assert u.sort in SIG.sorts
            if isinstance(u, (PutL, PutR)):
                assert u.v is not None


def test_open_leaves_are_filled_with_fresh_variables(clothes):
    sig = clothes.signature
    names = iter(["t0", "t1", "t2"])
    v = gen_value(sig, "Shirt", [("p", "Fabric"), GAP], random.Random(3), lambda: next(names))
    # the only shirt: sew(cut(p), <a thread>)
    assert v == App("sew", (App("cut", (Var("p"),)), Var("t0")))


def test_open_leaves_need_a_name_supply(clothes):
    with pytest.raises(ValueError):
        gen_value(clothes.signature, "Shirt", OPEN, random.Random(0))


def test_shape_feasibility(clothes):
    sig = clothes.signature
    assert not shape_feasible(BARE, (send("A"),), "B", (), ())
    assert shape_feasible(BARE, (send("A"),), "A", (), ())
    assert shape_feasible(sig, (), "Clothes", (), OPEN)
    # a received outfit can only be the result or be sent on
    assert not shape_feasible(sig, (send("Clothes"),), "Shirt", (), OPEN)
    assert shape_feasible(sig, (send("Clothes"), recv("Clothes")), "Shirt", (), OPEN)
    # it arrives in front of the open variables, so it cannot leave on the right
    assert not shape_feasible(sig, (send("Clothes"),), "Shirt", (send("Clothes"),), OPEN)


@pytest.mark.parametrize("seed", range(10))
def test_some_shape_fits_its_variables(clothes, seed):
    sig = clothes.signature
    g = Gen(sig, GenConfig(seed))
    need = (("f", "Fabric"), ("t", "Thread"))
    t, U, B, W = g.some_shape(random.Random(seed), "k", need, 4)
    j = check_term(t, sig)
    assert j.shape() == (U, B, W)
    assert {"f", "t"} <= {x for x, _ in j.ctx}


def test_sparse_signature_never_errors(clothes):
    for name in SUITES:
        report = run_suite(name, clothes.signature, 0, 6)
        assert report.ok, name
        assert len(report.skipped) < len(report.cases)
