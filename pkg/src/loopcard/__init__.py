"""Exact height-n cardinalities and Morava-Euler characteristics of finite spaces.

Spaces are modeled either as finite groupoids (1-types) or as lists of
homotopy-group orders (stable, loop-space inputs). All results are exact
integers or rationals.
"""

from .catalog import catalog_names, group_from_json, named_group
from .groupoid import (
    FiniteGroupoid,
    classifying_groupoid,
    disjoint_union,
    groupoid_product,
    homotopy_cardinality,
    iterated_loop_groupoid,
    loop_groupoid,
    pi0_count,
)
from .groups import FiniteGroup, centralizer, conjugacy_classes, group_from_permutations, group_from_table
from .invariants import (
    commuting_classes_bruteforce,
    commuting_classes_recursive,
    en_cardinality,
    en_cardinality_pi0_path,
    morava_euler,
    one_step_reduction_check,
)
from .spacexpr import evaluate, parse, pretty
from .stable import PostnikovOrders, em_space, loop_formula_cardinality, stable_hcard, stable_loop

__version__ = "0.1.0"

__all__ = [
    "FiniteGroup",
    "FiniteGroupoid",
    "PostnikovOrders",
    "catalog_names",
    "centralizer",
    "classifying_groupoid",
    "commuting_classes_bruteforce",
    "commuting_classes_recursive",
    "conjugacy_classes",
    "disjoint_union",
    "em_space",
    "en_cardinality",
    "en_cardinality_pi0_path",
    "evaluate",
    "group_from_json",
    "group_from_permutations",
    "group_from_table",
    "groupoid_product",
    "homotopy_cardinality",
    "iterated_loop_groupoid",
    "loop_formula_cardinality",
    "loop_groupoid",
    "morava_euler",
    "named_group",
    "one_step_reduction_check",
    "parse",
    "pi0_count",
    "pretty",
    "stable_hcard",
    "stable_loop",
]
