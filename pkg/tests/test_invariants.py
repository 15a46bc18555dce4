from fractions import Fraction

import pytest

from loopcard.catalog import named_group, p_group_names
from loopcard.errors import InvalidPrime, NotAPSpace, WorkCapExceeded
from loopcard.groupoid import FiniteGroupoid, classifying_groupoid, discrete, point
from loopcard.invariants import (
    Result,
    commuting_classes_bruteforce,
    commuting_classes_recursive,
    en_cardinality,
    en_cardinality_pi0_path,
    format_exact,
    morava_euler,
    one_step_reduction_check,
    within_paper_hypothesis,
)
from loopcard.spacexpr import evaluate
from loopcard.stable import PostnikovOrders, em_space

from .oracles import commuting_orbits_py


def B(name):
    return classifying_groupoid(named_group(name))


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("n", range(1, 6))
def test_en_of_bcp(p, n):
    assert en_cardinality(B(f"C{p}"), n, p) == p ** (n - 1)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_en_of_b2cp_at_height_3(p):
    assert en_cardinality(em_space(2, p), 3, p) == p


@pytest.mark.parametrize("name, p", [(n, 2) for n in p_group_names(2, 32)] + [(n, 3) for n in p_group_names(3, 27)])
def test_height_one_of_connected_is_one(name, p):
    assert en_cardinality(B(name), 1, p) == 1


def test_height_zero_is_homotopy_cardinality():
    assert en_cardinality(B("Q8"), 0, 2) == Fraction(1, 8)
    assert en_cardinality(PostnikovOrders((1, 1, 4)), 0, 2) == 4


def test_materialized_route_agrees():
    for name in ["D8", "Q8", "C4xC2", "Heis3"]:
        p = 2 if name != "Heis3" else 3
        for n in range(4):
            assert en_cardinality(B(name), n, p) == en_cardinality(B(name), n, p, materialize=True)


def test_rejects_non_p_space():
    with pytest.raises(NotAPSpace) as info:
        en_cardinality(B("S3"), 2, 3)
    assert info.value.payload["witness"] == 6
    with pytest.raises(NotAPSpace):
        en_cardinality(PostnikovOrders((1, 2, 3)), 2, 2)
    with pytest.raises(InvalidPrime):
        en_cardinality(B("C4"), 2, 4)


def test_unchecked_p_allows_any_group():
    assert en_cardinality(B("S3"), 2, None) == 3


def test_pi0_path_examples():
    assert en_cardinality_pi0_path(B("C2"), 2) == 2
    assert en_cardinality_pi0_path(B("S3"), 2) == 3
    for n in range(1, 5):
        assert en_cardinality_pi0_path(point(), n) == 1


@pytest.mark.parametrize("name", ["D8", "Q8", "Q16", "Heis3", "M27", "C9xC3", "S3", "A4"])
@pytest.mark.parametrize("n", range(1, 6))
def test_pi0_path_equals_hcard_path(name, n):
    assert en_cardinality(B(name), n, None) == en_cardinality_pi0_path(B(name), n)


def test_morava_euler_examples():
    assert morava_euler(B("S3"), 1) == 3
    assert morava_euler(B("S3"), 2) == 8
    for p in (2, 3, 5):
        for n in range(5):
            assert morava_euler(B(f"C{p}"), n) == p**n
            assert morava_euler(em_space(1, p), n) == p**n


def test_morava_euler_materialized():
    for name in ["S3", "D8", "A4"]:
        for n in range(4):
            assert morava_euler(B(name), n) == morava_euler(B(name), n, materialize=True)


def test_one_step_reduction_examples():
    assert one_step_reduction_check(B("C2"), 1, 2)
    assert one_step_reduction_check(em_space(2, 3), 2, 3)
    for n in range(5):
        assert one_step_reduction_check(point(), n, 2)
        assert one_step_reduction_check(PostnikovOrders(()), n, 5)


def test_one_step_sides_for_bc2():
    # |B C2|_{E_2} = 2 and |L B C2|_{E_1} = hcard of L(two copies of B C2) = 2
    L = FiniteGroupoid((named_group("C2"),) * 2)
    assert en_cardinality(B("C2"), 2, 2) == 2 == en_cardinality(L, 1, 2)


# -- commuting tuple counts -----------------------------------------------------


def test_bruteforce_n0_is_one():
    for name in ["C1", "S3", "A5"]:
        assert commuting_classes_bruteforce(named_group(name), 0).count == 1


def test_bruteforce_s3():
    r = commuting_classes_bruteforce(named_group("S3"), 1)
    assert (r.count, r.method, r.n) == (3, "brute_force", 1)


# Frozen from the brute-force oracle (and the pure-Python oracle below):
# commuting pairs of Q8 up to conjugacy.
Q8_PAIRS = 22


def test_q8_pairs_regression():
    assert commuting_classes_bruteforce(named_group("Q8"), 2).count == Q8_PAIRS
    assert commuting_orbits_py(named_group("Q8").table.tolist(), 2) == Q8_PAIRS


def test_recursive_examples():
    for p in (2, 3, 5):
        for n in range(4):
            assert commuting_classes_recursive(named_group(f"C{p}"), n).count == p**n
    r = commuting_classes_recursive(named_group("S3"), 2)
    assert (r.count, r.method) == (8, "recursion")
    for n in range(4):
        assert commuting_classes_recursive(named_group("C1"), n).count == 1


@pytest.mark.parametrize("name", ["S3", "D8", "Q8", "A4", "D10", "C2xC2", "Q12"])
@pytest.mark.parametrize("n", range(4))
def test_oracle_against_python_canonical_forms(name, n):
    G = named_group(name)
    assert commuting_classes_bruteforce(G, n).count == commuting_orbits_py(G.table.tolist(), n)


def test_work_cap():
    with pytest.raises(WorkCapExceeded):
        commuting_classes_bruteforce(named_group("S4"), 3, work_cap=1000)


def test_multiplicativity_of_chi():
    A, C = B("S3"), discrete(2)
    from loopcard.groupoid import groupoid_product

    for n in range(4):
        assert morava_euler(groupoid_product(A, C), n) == morava_euler(A, n) * morava_euler(C, n)


def test_hypothesis_flag():
    assert within_paper_hypothesis(B("Q8"))
    assert not within_paper_hypothesis(B("S3"))
    assert within_paper_hypothesis(point())
    assert within_paper_hypothesis(B("C9"), 3)
    assert not within_paper_hypothesis(B("C9"), 2)
    assert within_paper_hypothesis(evaluate("stable(B(C4)) x B^2(C2)"))


def test_result_json():
    r = Result("en_cardinality", "B(C2)", 3, Fraction(4), "formula", True, p=2)
    assert r.to_json() == {
        "quantity": "en_cardinality",
        "space": "B(C2)",
        "n": 3,
        "p": 2,
        "value": 4,
        "method": "formula",
        "within_paper_hypothesis": True,
    }
    assert format_exact(Fraction(1, 6)) == "1/6"
    assert format_exact(Fraction(-3, 1)) == -3


def test_component_count_is_not_a_group_order():
    # six points form a p-space for every p
    six = evaluate("Discrete(3) + Discrete(3)")
    assert six.space == PostnikovOrders((6,))
    for p in (2, 3, 5):
        assert within_paper_hypothesis(six, p)
        assert en_cardinality(six, 3, p) == 6
    assert en_cardinality(PostnikovOrders((6, 2)), 2, 2) == 12
