import random

import pytest
from hypothesis import given, strategies as st

from corner.errors import (
    ArityMismatch,
    ContextMismatch,
    ParseError,
    SortMismatch,
    UnknownOp,
    UnknownSort,
    UnknownVariable,
)
from corner.generator import gen_value, universal_signature
from corner.signature import Var, check_value, make_signature, parse_signature, subst_value, value_free_vars
from corner.syntax import parse_value

TINY = make_signature(["A"], [("f", ["A", "A"], "A"), ("k", [], "A")])


def v(text):
    return parse_value(text)


def test_variable_has_its_context_sort():
    assert check_value([("x", "A")], Var("x"), TINY) == "A"


def test_cut_of_fabric_is_a_pattern(clothes):
    assert check_value([("f", "Fabric")], v("cut(f)"), clothes.signature) == "Pattern"


def test_sew_gives_a_shirt(clothes):
    assert check_value([("a", "Pattern"), ("t", "Thread")], v("sew(a, t)"), clothes.signature) == "Shirt"


def test_constant_in_empty_context(coffee):
    assert check_value([], v("done()"), coffee.signature) == "Ready"


def test_reused_variable_and_unused_one_is_rejected():
    with pytest.raises(ContextMismatch):
        check_value([("x", "A"), ("y", "A")], v("f(x, x)"), TINY)


def test_out_of_order_use_is_rejected():
    with pytest.raises(ContextMismatch):
        check_value([("x", "A"), ("y", "A")], v("f(y, x)"), TINY)


def test_unused_variable_is_rejected():
    with pytest.raises(ContextMismatch):
        check_value([("x", "A"), ("y", "A")], v("x"), TINY)


@pytest.mark.parametrize("ctx, text, err", [
    ([("x", "A")], "y", UnknownVariable),
    ([("x", "A")], "g(x)", UnknownOp),
    ([("x", "A")], "f(x)", ArityMismatch),
])
def test_value_errors(ctx, text, err):
    with pytest.raises(err):
        check_value(ctx, v(text), TINY)


def test_sort_mismatch(clothes):
    with pytest.raises(SortMismatch):
        check_value([("t", "Thread")], v("cut(t)"), clothes.signature)


def test_subst_variable_by_term():
    assert subst_value(Var("x"), [("x", v("k()"))]) == v("k()")


def test_subst_into_sew():
    assert subst_value(v("sew(a, t)"), [("a", v("cut(f)"))]) == v("sew(cut(f), t)")


def test_simultaneous_subst():
    assert subst_value(v("f(x, y)"), [("x", v("u")), ("y", v("w"))]) == v("f(u, w)")


def test_subst_is_simultaneous_not_sequential():
    assert subst_value(v("f(x, y)"), [("x", v("y")), ("y", v("x"))]) == v("f(y, x)")


@pytest.mark.parametrize("text, fv", [("x", ["x"]), ("pack(x, y)", ["x", "y"]), ("sew(cut(f), t)", ["f", "t"])])
def test_free_vars_in_order(text, fv):
    assert value_free_vars(v(text)) == fv


def test_parse_signature_file(data_dir):
    sig = parse_signature((data_dir / "clothes.sig").read_text())
    assert set(sig.sorts) == {"Pants", "Fabric", "Pattern", "Thread", "Shirt", "Clothes"}
    assert sig.op("sew").arity == ("Pattern", "Thread")
    assert sig.op("pack").result == "Clothes"


def test_parse_constant_op():
    sig = parse_signature("sort R\nop done : -> R\n")
    assert sig.op("done").arity == ()


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_signature("sort A\n\n  bogus line\n")
    assert (info.value.line, info.value.col) == (3, 3)
    assert str(info.value).startswith("3:3: ")


def test_op_over_undeclared_sort():
    with pytest.raises(UnknownSort):
        make_signature(["A"], [("f", ["B"], "A")])


def test_duplicate_sort_rejected():
    with pytest.raises((ValueError, ParseError)):
        parse_signature("sort A\nsort A\n")


SIG = universal_signature()


@given(st.integers(0, 10_000), st.lists(st.sampled_from(["A", "B", "C"]), max_size=4), st.sampled_from("ABC"))
def test_generated_values_recheck(seed, leaf_sorts, sort):
    leaves = [(f"x{i}", s) for i, s in enumerate(leaf_sorts)]
    val = gen_value(SIG, sort, leaves, random.Random(seed))
    assert check_value(leaves, val, SIG) == sort
    assert value_free_vars(val) == [x for x, _ in leaves]
