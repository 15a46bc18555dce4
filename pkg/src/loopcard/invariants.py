"""Height-n cardinalities, Morava-Euler characteristics and the
brute-force commuting-tuple oracle.

A *space* here is either a :class:`FiniteGroupoid` or a
:class:`PostnikovOrders` (or a :class:`~loopcard.spacexpr.SpaceValue`
wrapping one of them).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Union

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import caps
from .errors import IntegralityViolation, InvalidPrime, NotAPSpace, OracleMismatch, WorkCapExceeded
from .groupoid import (
    FiniteGroupoid,
    homotopy_cardinality,
    iterated_loop_groupoid,
    iterated_loop_hcard,
    iterated_loop_pi0,
    loop_groupoid,
    loop_pi0,
    pi0_count,
)
from .groups import FiniteGroup, is_power_of, is_prime
from .stable import (
    PostnikovOrders,
    iterated_stable_loop,
    loop_formula_cardinality,
    stable_hcard,
    stable_loop,
)

Space = Union[FiniteGroupoid, PostnikovOrders]


def _unwrap(A: Any) -> Space:
    A = getattr(A, "space", A)
    if not isinstance(A, (FiniteGroupoid, PostnikovOrders)):
        raise TypeError(f"expected a groupoid or PostnikovOrders, got {type(A).__name__}")
    return A


def space_orders(A: Space) -> tuple[int, ...]:
    return _unwrap(A).orders


def homotopy_group_orders(A: Space) -> tuple[int, ...]:
    """Orders of the homotopy groups in degrees >= 1 (over every component)."""
    A = _unwrap(A)
    if isinstance(A, PostnikovOrders):
        return A.group_orders
    return A.orders


def check_p_space(A: Space, p: int) -> None:
    """Raise :class:`NotAPSpace` naming the first order that is not a p-power."""
    if not is_prime(p):
        raise InvalidPrime(p)
    for o in homotopy_group_orders(A):
        if not is_power_of(o, p):
            raise NotAPSpace(p, o)


def within_paper_hypothesis(A: Space, p: int | None = None) -> bool:
    """Whether ``A`` is a p-space, for the given ``p`` or for some prime."""
    orders = [o for o in homotopy_group_orders(A) if o > 1]
    if p is not None:
        return is_prime(p) and all(is_power_of(o, p) for o in orders)
    if not orders:
        return True
    q = min(d for d in range(2, orders[0] + 1) if orders[0] % d == 0)
    return all(is_power_of(o, q) for o in orders)


def en_cardinality(A: Space, n: int, p: int | None, *, materialize: bool = False) -> Fraction:
    """Cardinality of ``A`` at height ``n``: the homotopy cardinality of L^n A.

    With ``p`` given, ``A`` must be a p-space.  ``p=None`` skips that check
    (the numbers are still well defined for any finite groupoid).  For
    ``n >= 1`` the value must be a natural number; anything else raises
    :class:`IntegralityViolation`.

    Groupoids go through a memoized class-by-class recursion unless
    ``materialize`` is set, in which case L^n A is listed explicitly.
    """
    A = _unwrap(A)
    if n < 0:
        raise ValueError("n must be non-negative")
    if p is not None:
        check_p_space(A, p)
    if isinstance(A, FiniteGroupoid):
        if materialize:
            value = homotopy_cardinality(iterated_loop_groupoid(A, n))
        else:
            value = iterated_loop_hcard(A, n)
    else:
        value = loop_formula_cardinality(A, n) if n >= 1 else stable_hcard(A)
    if n >= 1 and value.denominator != 1:
        raise IntegralityViolation(f"height {n} cardinality {value} is not an integer", value=str(value))
    return value


def en_cardinality_pi0_path(A: Space, n: int, p: int | None = None) -> int:
    """Cardinality at height ``n >= 1`` as the component count of L^(n-1) A."""
    A = _unwrap(A)
    if n < 1:
        raise ValueError("the component-count formula needs n >= 1")
    if p is not None:
        check_p_space(A, p)
    if isinstance(A, FiniteGroupoid):
        return iterated_loop_pi0(A, n - 1)
    return iterated_stable_loop(A, n - 1).pi0


def morava_euler(A: Space, n: int, *, materialize: bool = False) -> int:
    """chi_n(A), the number of components of L^n A."""
    A = _unwrap(A)
    if n < 0:
        raise ValueError("n must be non-negative")
    if isinstance(A, FiniteGroupoid):
        if materialize:
            return pi0_count(iterated_loop_groupoid(A, n))
        return iterated_loop_pi0(A, n)
    return iterated_stable_loop(A, n).pi0


def free_loop(A: Space) -> Space:
    """The loop functor matching the representation of ``A``."""
    A = _unwrap(A)
    if isinstance(A, FiniteGroupoid):
        return loop_groupoid(A)
    return stable_loop(A)


def space_hcard(A: Space) -> Fraction:
    """Homotopy cardinality in either representation."""
    A = _unwrap(A)
    if isinstance(A, FiniteGroupoid):
        return homotopy_cardinality(A)
    return stable_hcard(A)


def one_step_reduction_check(A: Space, n: int, p: int) -> bool:
    """Compare the height n+1 cardinality of A with the height n
    cardinality of its free loop space."""
    A = _unwrap(A)
    return en_cardinality(A, n + 1, p) == en_cardinality(free_loop(A), n, p)


# -- commuting tuples ------------------------------------------------------


@dataclass(frozen=True)
class CommutingTupleClassCount:
    group_label: str
    n: int
    count: int
    method: str  # "recursion" or "brute_force"


def commuting_classes_recursive(G: FiniteGroup, n: int) -> CommutingTupleClassCount:
    if n < 0:
        raise ValueError("n must be non-negative")
    return CommutingTupleClassCount(G.label or "G", n, loop_pi0(G, n), "recursion")


def commuting_tuples(G: FiniteGroup, n: int) -> np.ndarray:
    """All n-tuples of pairwise commuting elements, in lexicographic order."""
    N = G.order
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    C = G.commuting
    tuples = np.arange(N, dtype=np.int64)[:, None]
    for _ in range(n - 1):
        mask = np.ones((len(tuples), N), dtype=bool)
        for col in tuples.T:
            mask &= C[col]
        rows, new = np.nonzero(mask)
        tuples = np.column_stack([tuples[rows], new])
    return tuples


def commuting_classes_bruteforce(
    G: FiniteGroup, n: int, work_cap: int | None = None, burnside_check: bool = True
) -> CommutingTupleClassCount:
    """Count commuting n-tuples up to simultaneous conjugation by listing
    them and partitioning into orbits.

    Orbits are the connected components of the graph joining each tuple to
    its conjugates by a generating set.  Burnside's count is computed as a
    cross-check and must agree.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    label = G.label or "G"
    if n == 0:
        return CommutingTupleClassCount(label, 0, 1, "brute_force")
    limit = caps.cap("work", work_cap)
    N = G.order
    if N**n > limit:
        raise WorkCapExceeded(limit, N**n)

    tuples = commuting_tuples(G, n)
    weights = N ** np.arange(n - 1, -1, -1, dtype=np.int64)
    codes = tuples @ weights
    M = len(tuples)
    src, dst = [], []
    T, inv = G.table, G.inverse
    for s in G.generators:
        conj = T[T[s, tuples], inv[s]]
        src.append(np.arange(M))
        dst.append(np.searchsorted(codes, conj @ weights))
    if src:
        i = np.concatenate(src)
        j = np.concatenate(dst)
        graph = coo_matrix((np.ones(len(i), dtype=np.int8), (i, j)), shape=(M, M))
        count, _ = connected_components(graph, directed=True, connection="weak")
    else:
        count = M

    if burnside_check:
        fixed = 0
        for rep, size in zip(G.classes.representatives, G.classes.sizes):
            fixed += size * int(G.commuting[rep][tuples].all(axis=1).sum())
        if fixed % N or fixed // N != count:
            raise OracleMismatch(
                f"orbit partition gives {count}, Burnside gives {Fraction(fixed, N)}",
                group=label,
                n=n,
            )
    return CommutingTupleClassCount(label, n, int(count), "brute_force")


# -- result records ----------------------------------------------------------


def format_exact(x: Fraction | int) -> int | str:
    """Integers stay integers; other rationals become ``"num/den"``."""
    x = Fraction(x)
    if x.denominator == 1:
        return int(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Result:
    quantity: str
    space: str
    n: int | None
    value: Fraction | int
    method: str
    within_paper_hypothesis: bool
    p: int | None = None
    extra: dict[str, Any] = field(default_factory=dict, compare=False)

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"quantity": self.quantity, "space": self.space, "n": self.n}
        if self.p is not None:
            out["p"] = self.p
        out["value"] = format_exact(self.value)
        out["method"] = self.method
        out["within_paper_hypothesis"] = self.within_paper_hypothesis
        out.update(self.extra)
        return out
