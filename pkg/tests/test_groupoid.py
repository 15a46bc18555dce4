import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from loopcard.catalog import catalog_names, named_group
from loopcard.errors import ComponentBudgetExceeded
from loopcard.groupoid import (
    FiniteGroupoid,
    classifying_groupoid,
    discrete,
    disjoint_union,
    groupoid_product,
    homotopy_cardinality,
    iterated_loop_groupoid,
    iterated_loop_hcard,
    iterated_loop_pi0,
    loop_groupoid,
    pi0_count,
    point,
)

from .oracles import commuting_orbits_py, commuting_tuples_py

NAMES = catalog_names(16)


def B(name):
    return classifying_groupoid(named_group(name))


groupoids = st.lists(st.sampled_from(NAMES), max_size=4).map(
    lambda names: FiniteGroupoid(tuple(named_group(n) for n in names))
)


def test_classifying_groupoid():
    assert B("C1").orders == (1,)
    assert B("C5").orders == (5,)
    assert B("S3").orders == (6,)


def test_loop_of_point():
    assert loop_groupoid(point()).orders == (1,)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_loop_of_bcp(p):
    assert loop_groupoid(B(f"C{p}")).orders == (p,) * p


def test_loop_of_bs3():
    # identity, transposition, 3-cycle classes in minimal-representative order
    assert loop_groupoid(B("S3")).orders == (6, 2, 3)


def test_iterated_zero_is_identity():
    A = disjoint_union(B("S3"), B("C2"))
    assert iterated_loop_groupoid(A, 0) is A


def test_l2_of_bc2():
    assert iterated_loop_groupoid(B("C2"), 2).orders == (2, 2, 2, 2)


def test_l2_of_bs3():
    L2 = iterated_loop_groupoid(B("S3"), 2)
    # over S3: classes of S3 (3), of C2 (2), of C3 (3)
    assert L2.orders == (6, 2, 3, 2, 2, 3, 3, 3)
    assert pi0_count(L2) == 8


def test_budget():
    with pytest.raises(ComponentBudgetExceeded):
        iterated_loop_groupoid(B("C5"), 3, component_cap=100)
    with pytest.raises(ComponentBudgetExceeded):
        groupoid_product(discrete(20), discrete(20), component_cap=100)


def test_pi0():
    assert pi0_count(point()) == 1
    assert pi0_count(loop_groupoid(B("S3"))) == 3
    assert pi0_count(FiniteGroupoid()) == 0


def test_homotopy_cardinality_examples():
    assert homotopy_cardinality(B("S3")) == Fraction(1, 6)
    assert homotopy_cardinality(FiniteGroupoid((named_group("C2"), named_group("C3")))) == Fraction(5, 6)
    assert homotopy_cardinality(loop_groupoid(B("S3"))) == 1
    assert homotopy_cardinality(FiniteGroupoid()) == 0


def test_products_and_unions():
    A = disjoint_union(B("S3"), B("C2"))
    assert groupoid_product(A, point()).orders == A.orders
    assert groupoid_product(B("C2"), B("C3")).orders == (6,)
    two = FiniteGroupoid((named_group("C2"), named_group("C3")))
    assert groupoid_product(two, B("C2")).orders == (4, 6)
    assert disjoint_union(point(), point()).orders == (1, 1)
    assert disjoint_union(A, FiniteGroupoid()).orders == A.orders
    assert disjoint_union(B("C2"), B("S3")).orders == (2, 6)


def test_json_round_trip():
    A = disjoint_union(B("S3"), B("C2"))
    back = FiniteGroupoid.from_json(A.to_json())
    assert back.components == A.components
    named = FiniteGroupoid.from_json({"components": ["S3", {"perm": {"degree": 2, "generators": [[1, 0]]}}]})
    assert named.orders == (6, 2)


# -- properties ----------------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(groupoids)
def test_hcard_of_loop_is_pi0(A):
    assert homotopy_cardinality(loop_groupoid(A)) == pi0_count(A)


@settings(max_examples=40, deadline=None)
@given(groupoids, groupoids)
def test_loop_commutes_with_union_and_product(A, C):
    assert loop_groupoid(disjoint_union(A, C)).order_multiset() == (
        disjoint_union(loop_groupoid(A), loop_groupoid(C)).order_multiset()
    )
    assert loop_groupoid(groupoid_product(A, C)).order_multiset() == (
        groupoid_product(loop_groupoid(A), loop_groupoid(C)).order_multiset()
    )


@settings(max_examples=40, deadline=None)
@given(groupoids, groupoids)
def test_hcard_additive_and_multiplicative(A, C):
    assert homotopy_cardinality(disjoint_union(A, C)) == homotopy_cardinality(A) + homotopy_cardinality(C)
    assert homotopy_cardinality(groupoid_product(A, C)) == homotopy_cardinality(A) * homotopy_cardinality(C)


@pytest.mark.parametrize("name", ["C2", "C3", "C4", "C2xC2", "C5"])
@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_abelian_power_law(name, n):
    G = named_group(name)
    L = iterated_loop_groupoid(classifying_groupoid(G), n)
    assert L.orders == (G.order,) * G.order**n


@pytest.mark.parametrize("name", ["S3", "Q8", "D8", "A4", "C6", "D10"])
@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_l_n_against_commuting_tuple_oracle(name, n):
    G = named_group(name)
    table = G.table.tolist()
    L = iterated_loop_groupoid(classifying_groupoid(G), n)
    assert pi0_count(L) == commuting_orbits_py(table, n)
    # hcard of the action groupoid: commuting tuples / |G|
    assert homotopy_cardinality(L) == Fraction(len(commuting_tuples_py(table, n)), G.order)


@pytest.mark.parametrize("n", range(5))
def test_memoized_counts_match_materialized(n):
    rng = random.Random(n)
    names = catalog_names(8)
    for _ in range(10):
        A = FiniteGroupoid(tuple(named_group(rng.choice(names)) for _ in range(rng.randint(0, 3))))
        L = iterated_loop_groupoid(A, n)
        assert iterated_loop_hcard(A, n) == homotopy_cardinality(L)
        assert iterated_loop_pi0(A, n) == pi0_count(L)
