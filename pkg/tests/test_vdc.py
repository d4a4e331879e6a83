import pytest
from hypothesis import given, strategies as st

from corner.calculus import alpha_eq, check_term, recv, send
from corner.errors import ProtocolChainError, SortMismatch, UnknownSort
from corner.generator import GenConfig, gen_term, universal_signature
from corner.rewrite import convertible
from corner.syntax import parse_term
from corner.vdc import LAWS, CellPath, check_vdc_laws, compose, id_term, identity_cell, law_instance

SIG = universal_signature()


def t(text):
    return parse_term(text)


def test_identity_cell():
    one = identity_cell("A", SIG)
    assert one == t("[x]")
    j = check_term(one, SIG, {"x": "A"})
    assert j.ctx == (("x", "A"),) and j.shape() == ((), "A", ())


def test_identity_cell_unknown_sort():
    with pytest.raises(UnknownSort):
        identity_cell("Z", SIG)


def test_id_on_empty_protocol():
    f = t("[c_A()]")
    assert id_term((), f) is f


def test_id_on_send():
    f = t("[c_B()]")
    assert alpha_eq(id_term((send("A"),), f), t("getL(z:A. putR(z, [c_B()]))"))


def test_id_on_receive():
    f = t("[c_B()]")
    assert alpha_eq(id_term((recv("A"),), f), t("getR(z:A. putL(z, [c_B()]))"))


def test_id_prefixes_both_sides():
    # f : (V, B, W) gives id_U(f) : (U V, B, U W)
    U = (send("A"), recv("B"))
    j = check_term(id_term(U, t("putR(c_C(), [c_A()])")), SIG)
    assert j.shape() == (U, "A", U + (send("C"),))


@given(st.integers(0, 10_000))
def test_id_nesting_is_syntactic(seed):
    lhs, rhs = law_instance("id-nesting", seed, SIG)
    assert alpha_eq(lhs, rhs)


def test_compose_clothes(clothes):
    sig = clothes.signature
    cutter, tailor = clothes.get("cutter")[0], clothes.get("tailor")[0]
    path = CellPath.of([cutter.term, tailor.term], sig, {**dict(cutter.ctx), **dict(tailor.ctx)})
    got = compose(t("[pack(x, y)]"), path, sig)
    assert got == clothes.get("main")[0].term


def test_compose_empty_path_is_id():
    f = t("[m_A(x, y)]")
    U = (send("B"),)
    with pytest.raises(SortMismatch):
        compose(f, CellPath.empty(U), SIG)
    g = t("[c_A()]")
    assert compose(g, CellPath.empty(U), SIG) == id_term(U, g)


def test_compose_sort_mismatch():
    with pytest.raises(SortMismatch):
        compose(t("[m_A(x, y)]"), CellPath.of([t("[c_A()]"), t("[c_B()]")], SIG), SIG)


def test_path_chain_break():
    with pytest.raises(ProtocolChainError):
        CellPath.of([t("putR(c_A(), [c_A()])"), t("[c_A()]")], SIG)


def test_path_needs_a_protocol_when_empty():
    with pytest.raises(ProtocolChainError):
        CellPath.of([], SIG)


def test_path_boundaries():
    p = CellPath.of([t("putR(c_A(), [c_B()])"), t("getL(a:A. [a])")], SIG)
    assert p.start == () and p.end == () and p.results == ("B", "A") and len(p) == 2


def test_left_unit(usig):
    f = gen_term(usig, ((), "A", ()), GenConfig(3))
    assert convertible(compose(identity_cell("A", usig), CellPath.of([f], usig), usig), f, usig)


def test_right_unit():
    f = t("getL(a:A. [m_A(a, m_A(x, y))])")
    ones = CellPath.of([identity_cell("A", SIG, "x"), identity_cell("A", SIG, "y")], SIG, {"x": "A", "y": "A"})
    assert convertible(compose(f, ones, SIG), f, SIG)


@pytest.mark.parametrize("law", LAWS)
def test_each_law(law):
    for seed in range(15):
        lhs, rhs = law_instance(law, seed, SIG)
        if law == "id-nesting":
            assert alpha_eq(lhs, rhs)
        else:
            assert convertible(lhs, rhs, SIG), (law, seed)


def test_report_counts():
    r = check_vdc_laws(SIG, seed=7, count=16)
    assert r.ok and r.counts() == {law: (2, 2) for law in LAWS}
    assert [c.seed for c in r.cases] == list(range(7, 23))


def test_interaction_instances_differ_syntactically():
    # the law compares two genuinely different composites
    assert any(not alpha_eq(*law_instance("interaction", s, SIG)) for s in range(10))
