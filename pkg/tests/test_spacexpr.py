import random

import pytest
from hypothesis import given, settings, strategies as st

from loopcard.errors import (
    CoercionRefused,
    ExprSyntaxError,
    MixedRepresentation,
    NonAbelianHigherB,
    UnknownName,
)
from loopcard.groupoid import FiniteGroupoid
from loopcard.invariants import en_cardinality, morava_euler
from loopcard.spacexpr import (
    EM,
    B,
    Discrete,
    DisjointUnion,
    GroupRef,
    Loop,
    Named,
    Point,
    Product,
    Stable,
    evaluate,
    parse,
    pretty,
)
from loopcard.stable import PostnikovOrders


def test_parse_b():
    assert parse("B(C3)") == B(GroupRef(("C3",)))


def test_parse_nested():
    e = parse("L(B^2(C_3) x B(S3))")
    assert e == Loop(Product(EM(2, 3), B(GroupRef(("S3",)))))


def test_nonabelian_higher_b():
    with pytest.raises(NonAbelianHigherB):
        parse("B^2(S3)")


def test_b1_of_nonabelian_is_groupoid():
    assert parse("B^1(S3)") == B(GroupRef(("S3",)))
    assert parse("B^1(C4)") == EM(1, 4)


def test_precedence():
    e = parse("pt + Discrete(2) x S3")
    assert e == DisjointUnion(Point(), Product(Discrete(2), Named("S3")))
    assert parse("(pt + pt) x pt") == Product(DisjointUnion(Point(), Point()), Point())


def test_whitespace_insensitive():
    assert parse("  L ( B ( C2 ) )x\n pt ") == parse("L(B(C2)) x pt")
    assert parse("B(C2)xB(C3)") == Product(B(GroupRef(("C2",))), B(GroupRef(("C3",))))


def test_stable_keyword():
    assert parse("stable(B(C5))") == Stable(B(GroupRef(("C5",))))


def test_group_product_inside_b():
    e = parse("B(C2 x C4)")
    assert e == B(GroupRef(("C2", "C4")))
    assert evaluate(e).space.orders == (8,)


def test_inline_json_group():
    e = parse("""B(@'{"perm": {"degree": 3, "generators": [[1, 0, 2], [1, 2, 0]]}}')""")
    assert evaluate(e).space.orders == (6,)
    t = parse("B(@'{\"table\": [[0, 1], [1, 0]]}')")
    assert evaluate(t).space.orders == (2,)


@pytest.mark.parametrize(
    "source, line, column",
    [
        ("B(C3", 1, 5),
        ("L(B(C2)) x", 1, 11),
        ("pt pt", 1, 4),
        ("B(C2)\n  + ?", 2, 5),
        ("Discrete()", 1, 10),
        ("B[C2]", 1, 2),
    ],
)
def test_syntax_error_positions(source, line, column):
    with pytest.raises(ExprSyntaxError) as info:
        parse(source)
    assert (info.value.payload["line"], info.value.payload["column"]) == (line, column)
    assert info.value.payload["expected"]


def test_expected_tokens_listed():
    with pytest.raises(ExprSyntaxError) as info:
        parse("B(C3")
    assert info.value.payload["expected"] == [")"]


def test_unknown_name_has_position():
    with pytest.raises(UnknownName) as info:
        parse("pt x B(Z7)")
    assert info.value.payload["column"] == 8


def test_evaluate_examples():
    v = evaluate("B(C5)")
    assert isinstance(v.space, FiniteGroupoid) and v.space.orders == (5,)
    assert evaluate("stable(B(C5))").space == PostnikovOrders((1, 5))
    assert evaluate("L(B(S3))").space.orders == (6, 2, 3)


def test_discrete_lifts_into_groupoids():
    v = evaluate("Discrete(3) x B(S3)")
    assert v.space.orders == (6, 6, 6)
    assert any("lift" in rule for rule in v.provenance)
    assert evaluate("pt + B(C2)").space.orders == (1, 2)
    assert evaluate("Discrete(2) + Discrete(3)").space == PostnikovOrders((5,))


def test_mixed_representation():
    with pytest.raises(MixedRepresentation):
        evaluate("B^2(C3) x B(S3)")
    with pytest.raises(MixedRepresentation):
        evaluate("B^2(C3) + B^2(C3)")


def test_coercions():
    with pytest.raises(CoercionRefused):
        evaluate("stable(L(B(C2)) x pt)")
    with pytest.raises(CoercionRefused):
        evaluate("stable(B(S3))")
    with pytest.raises(CoercionRefused):
        evaluate("stable(B(C2) + B(C2))")
    assert evaluate("stable(Discrete(2) + B(C1))").space == PostnikovOrders((3,))


def test_loop_routes():
    assert evaluate("L(B^2(C3))").space == PostnikovOrders((1, 3, 3))
    assert evaluate("L(L(B(C2)))").space.orders == (2, 2, 2, 2)


# -- round trip ---------------------------------------------------------------------

ATOMS = ["pt", "Discrete(2)", "B(C2)", "B^2(C3)", "B^0(S3)", "S3", "B(C2 x C4)", "stable(B(C4))"]


def _random_expr(rng: random.Random, depth: int) -> str:
    if depth == 0 or rng.random() < 0.3:
        return rng.choice(ATOMS)
    kind = rng.choice(["L", "x", "+", "paren", "stable"])
    if kind == "L":
        return f"L({_random_expr(rng, depth - 1)})"
    if kind == "stable":
        return f"stable({_random_expr(rng, depth - 1)})"
    if kind == "paren":
        return f"({_random_expr(rng, depth - 1)})"
    return f"{_random_expr(rng, depth - 1)} {kind} {_random_expr(rng, depth - 1)}"


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6))
def test_pretty_parse_round_trip(seed):
    source = _random_expr(random.Random(seed), 4)
    e = parse(source)
    once = pretty(e)
    assert parse(once) == e
    assert pretty(parse(once)) == once


ABELIAN = ["C2", "C3", "C4", "C2xC2", "C5", "C8", "C4xC2", "C9", "C3xC3"]


@pytest.mark.parametrize("name", ABELIAN)
def test_stable_coercion_preserves_invariants(name):
    g, s = evaluate(f"B({name})"), evaluate(f"stable(B({name}))")
    for n in range(6):
        assert en_cardinality(g, n, None) == en_cardinality(s, n, None)
        assert morava_euler(g, n) == morava_euler(s, n)


def test_product_laws():
    a, b, c = "B(S3)", "Discrete(2)", "B(C2)"
    abc = evaluate(f"({a} x {b}) x {c}").space
    a_bc = evaluate(f"{a} x ({b} x {c})").space
    cba = evaluate(f"{c} x {b} x {a}").space
    assert abc.order_multiset() == a_bc.order_multiset() == cba.order_multiset()
    u1 = evaluate(f"({a} + {b}) + {c}").space
    u2 = evaluate(f"{a} + ({b} + {c})").space
    assert u1.order_multiset() == u2.order_multiset()
    s1 = evaluate("B^2(C3) x (B^1(C3) x Discrete(3))").space
    s2 = evaluate("Discrete(3) x B^2(C3) x B^1(C3)").space
    assert s1 == s2
