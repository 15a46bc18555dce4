"""Skeletal finite groupoids as models of pi-finite 1-types.

A groupoid is stored as the list of automorphism groups, one per
isomorphism class of objects.  The free loop space of a groupoid has one
component per (component, conjugacy class) pair, with the centralizer of
the class as automorphism group.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable

from . import caps
from .catalog import group_from_json, group_to_json
from .errors import ComponentBudgetExceeded
from .groups import FiniteGroup, centralizer, direct_product, trivial_group


@dataclass(frozen=True)
class FiniteGroupoid:
    components: tuple[FiniteGroup, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))

    def __len__(self) -> int:
        return len(self.components)

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(G.order for G in self.components)

    def order_multiset(self) -> tuple[int, ...]:
        return tuple(sorted(self.orders))

    def __repr__(self) -> str:
        return f"FiniteGroupoid(orders={list(self.orders)})"

    def to_json(self) -> dict[str, Any]:
        return {"components": [group_to_json(G) for G in self.components]}

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> FiniteGroupoid:
        return cls(tuple(group_from_json(c) for c in data["components"]))


def point() -> FiniteGroupoid:
    return FiniteGroupoid((trivial_group(),))


def discrete(m: int) -> FiniteGroupoid:
    return FiniteGroupoid((trivial_group(),) * m)


def classifying_groupoid(G: FiniteGroup) -> FiniteGroupoid:
    return FiniteGroupoid((G,))


def loop_groupoid(A: FiniteGroupoid, component_cap: int | None = None) -> FiniteGroupoid:
    limit = caps.cap("component", component_cap)
    needed = sum(len(H.classes) for H in A.components)
    if needed > limit:
        raise ComponentBudgetExceeded(limit, needed)
    return FiniteGroupoid(
        tuple(centralizer(H, h) for H in A.components for h in H.classes.representatives)
    )


def iterated_loop_groupoid(A: FiniteGroupoid, n: int, component_cap: int | None = None) -> FiniteGroupoid:
    if n < 0:
        raise ValueError("n must be non-negative")
    for _ in range(n):
        A = loop_groupoid(A, component_cap)
    return A


def pi0_count(A: FiniteGroupoid) -> int:
    return len(A.components)


def homotopy_cardinality(A: FiniteGroupoid) -> Fraction:
    return sum((Fraction(1, G.order) for G in A.components), Fraction(0))


def groupoid_product(
    A: FiniteGroupoid, B: FiniteGroupoid, component_cap: int | None = None
) -> FiniteGroupoid:
    limit = caps.cap("component", component_cap)
    if len(A) * len(B) > limit:
        raise ComponentBudgetExceeded(limit, len(A) * len(B))
    return FiniteGroupoid(tuple(direct_product(G, H) for G in A.components for H in B.components))


def disjoint_union(A: FiniteGroupoid, B: FiniteGroupoid) -> FiniteGroupoid:
    return FiniteGroupoid(A.components + B.components)


# -- loop counts without materializing L^n ---------------------------------
#
# hcard(L^n BG) and pi0(L^n BG) satisfy the same recursion over conjugacy
# classes, f_n(G) = sum_[g] f_{n-1}(C_G(g)), and differ only at n = 0:
# 1/|G| for the cardinality, 1 for the component count.  For abelian G
# every centralizer is G, so f_n(G) = |G|^n f_0(G).  Memo keys are
# table digests, so centralizers that come out identical are shared.

_HCARD_MEMO: dict[tuple[bytes, int], Fraction] = {}
_PI0_MEMO: dict[tuple[bytes, int], int] = {}


def _loop_sum(G: FiniteGroup, n: int, memo: dict, base) -> Any:
    if n == 0:
        return base(G)
    key = (G.key, n)
    value = memo.get(key)
    if value is None and G.is_abelian:
        # every centralizer is G itself
        value = memo[key] = G.order**n * base(G)
    if value is None:
        value = sum(_loop_sum(centralizer(G, g), n - 1, memo, base) for g in G.classes.representatives)
        memo[key] = value
    return value


def loop_hcard(G: FiniteGroup, n: int) -> Fraction:
    """Homotopy cardinality of L^n(BG)."""
    return _loop_sum(G, n, _HCARD_MEMO, lambda H: Fraction(1, H.order))


def loop_pi0(G: FiniteGroup, n: int) -> int:
    """Number of components of L^n(BG)."""
    return _loop_sum(G, n, _PI0_MEMO, lambda H: 1)


def iterated_loop_hcard(A: FiniteGroupoid, n: int) -> Fraction:
    """``homotopy_cardinality(iterated_loop_groupoid(A, n))`` computed by
    memoized recursion instead of listing components."""
    return sum((loop_hcard(G, n) for G in A.components), Fraction(0))


def iterated_loop_pi0(A: FiniteGroupoid, n: int) -> int:
    """``pi0_count(iterated_loop_groupoid(A, n))`` by memoized recursion."""
    return sum(loop_pi0(G, n) for G in A.components)


def clear_caches() -> None:
    _HCARD_MEMO.clear()
    _PI0_MEMO.clear()


def groupoid_from_groups(groups: Iterable[FiniteGroup]) -> FiniteGroupoid:
    return FiniteGroupoid(tuple(groups))
