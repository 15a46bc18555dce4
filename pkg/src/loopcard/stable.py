"""Loop spaces recorded by the orders of their homotopy groups.

``PostnikovOrders((o0, o1, ..., od))`` stands for a pi-finite loop space
with ``|pi_k| = o_k``.  For a loop space every component looks alike, so
these orders determine every cardinality computed here.  Free loops act by
``L A = A x Omega A``, which on orders is a shift-and-multiply.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import zip_longest
from math import comb, prod
from typing import Any, Iterable

from .groups import is_power_of


def _canonical(orders: Iterable[int]) -> tuple[int, ...]:
    out = [int(o) for o in orders]
    for o in out:
        if o < 1:
            raise ValueError(f"homotopy group orders must be positive, got {o}")
    while out and out[-1] == 1:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class PostnikovOrders:
    orders: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "orders", _canonical(self.orders))

    def __getitem__(self, k: int) -> int:
        return self.orders[k] if 0 <= k < len(self.orders) else 1

    @property
    def pi0(self) -> int:
        return self[0]

    @property
    def is_discrete(self) -> bool:
        return len(self.orders) <= 1

    @property
    def group_orders(self) -> tuple[int, ...]:
        """Orders of pi_1, pi_2, ...; entry 0 counts components and is not a group order."""
        return self.orders[1:]

    def prime(self) -> int | None:
        """The prime p if every homotopy group order is a power of p
        (None when there is no nontrivial group)."""
        ps = {_base_prime(o) for o in self.group_orders if o > 1}
        return ps.pop() if len(ps) == 1 else None

    def is_p_space(self, p: int) -> bool:
        return all(is_power_of(o, p) for o in self.group_orders)

    def to_json(self) -> dict[str, Any]:
        return {"orders": list(self.orders)}

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> PostnikovOrders:
        return cls(tuple(data["orders"]))

    def __repr__(self) -> str:
        return f"PostnikovOrders{self.orders}"


def _base_prime(n: int) -> int | None:
    p = 2
    while p * p <= n:
        if n % p == 0:
            break
        p += 1
    else:
        p = n
    return p if is_power_of(n, p) else None


def em_space(d: int, m: int) -> PostnikovOrders:
    """Eilenberg-MacLane space with a single group of order ``m`` in degree ``d``."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    if m < 1:
        raise ValueError("group order must be positive")
    return PostnikovOrders((1,) * d + (m,))


def stable_loop(A: PostnikovOrders) -> PostnikovOrders:
    o = A.orders
    return PostnikovOrders(tuple(o[k] * A[k + 1] for k in range(len(o))))


def iterated_stable_loop(A: PostnikovOrders, n: int) -> PostnikovOrders:
    for _ in range(n):
        A = stable_loop(A)
    return A


def stable_hcard(A: PostnikovOrders) -> Fraction:
    """Homotopy cardinality: even-degree orders over odd-degree orders.

    Degree 0 counts components, each contributing the same connected factor.
    """
    even = prod(A.orders[0::2])
    odd = prod(A.orders[1::2])
    return Fraction(even, odd)


def stable_product(A: PostnikovOrders, B: PostnikovOrders) -> PostnikovOrders:
    return PostnikovOrders(tuple(a * b for a, b in zip_longest(A.orders, B.orders, fillvalue=1)))


def loop_formula_cardinality(A: PostnikovOrders, n: int) -> Fraction:
    """Height-n cardinality of a loop space: prod_k |pi_k|^C(n-1, k).

    ``n = 0`` falls back to the homotopy cardinality.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return stable_hcard(A)
    return Fraction(prod(o ** comb(n - 1, k) for k, o in enumerate(A.orders)))
