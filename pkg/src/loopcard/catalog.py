"""Named groups and JSON group descriptions.

Recognized names (an underscore before the number is allowed, ``C_3``):

=========  ==========================================================
``C<m>``   cyclic group of order m
``S<m>``   symmetric group on m letters
``A<m>``   alternating group on m letters
``D<2m>``  dihedral group of order 2m
``Q<4m>``  dicyclic group of order 4m, m >= 2 (quaternion for 2-powers)
``Heis<p>`` upper unitriangular 3x3 matrices over F_p, order p^3
``M27``    the nonabelian group of order 27 and exponent 9
``Wr<p>``  wreath product C_p wr C_p, order p^(p+1)
=========  ==========================================================

A product of names, ``C2xC4`` or ``C2 x C4``, denotes the direct product.
"""

from __future__ import annotations

import json
import re
from functools import lru_cache, reduce
from itertools import product as iproduct
from typing import Any, Callable, Sequence

import numpy as np

from . import caps
from .errors import MalformedTable, OrderCapExceeded, UnknownName
from .groups import (
    FiniteGroup,
    direct_product,
    group_from_permutations,
    group_from_table,
    is_prime,
    trivial_group,
)

_NAME = re.compile(r"(C|S|A|D|Q|Heis|M|Wr)_?(\d+)")


def group_from_function(elements: Sequence, mul: Callable, label: str) -> FiniteGroup:
    """Tabulate ``mul`` on ``elements``; ``elements[0]`` must be the identity."""
    index = {x: i for i, x in enumerate(elements)}
    n = len(elements)
    table = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            table[i, j] = index[mul(a, b)]
    return group_from_table(table, label=label)


def cyclic(m: int) -> FiniteGroup:
    if m == 1:
        return trivial_group()
    return group_from_permutations(m, [[(i + 1) % m for i in range(m)]], label=f"C{m}")


def symmetric(m: int) -> FiniteGroup:
    if m <= 1:
        return _relabel(trivial_group(), f"S{m}")
    gens = [[1, 0] + list(range(2, m)), [(i + 1) % m for i in range(m)]]
    return group_from_permutations(m, gens, label=f"S{m}")


def alternating(m: int) -> FiniteGroup:
    if m <= 2:
        return _relabel(trivial_group(), f"A{m}")
    gens = []
    for k in range(2, m):
        perm = list(range(m))
        perm[0], perm[1], perm[k] = 1, k, 0
        gens.append(perm)
    return group_from_permutations(m, gens, label=f"A{m}")


def dihedral(order: int) -> FiniteGroup:
    if order % 2:
        raise UnknownName(f"dihedral group order must be even, got D{order}")
    m = order // 2
    elements = [(r, s) for s in range(2) for r in range(m)]

    def mul(a, b):
        return ((a[0] + (-1) ** a[1] * b[0]) % m, (a[1] + b[1]) % 2)

    return group_from_function(elements, mul, f"D{order}")


def quaternion(order: int) -> FiniteGroup:
    if order % 4 or order < 8:
        raise UnknownName(f"dicyclic group order must be a multiple of 4 and >= 8, got Q{order}")
    m = order // 4
    elements = [(i, j) for j in range(2) for i in range(2 * m)]

    def mul(a, b):
        (i, j), (k_, l) = a, b
        if j == 0:
            return ((i + k_) % (2 * m), l)
        if l == 0:
            return ((i - k_) % (2 * m), 1)
        return ((i - k_ + m) % (2 * m), 0)

    return group_from_function(elements, mul, f"Q{order}")


def heisenberg(p: int) -> FiniteGroup:
    if not is_prime(p):
        raise UnknownName(f"Heis<p> needs a prime, got {p}")
    elements = list(iproduct(range(p), repeat=3))

    def mul(x, y):
        return ((x[0] + y[0]) % p, (x[1] + y[1]) % p, (x[2] + y[2] + x[0] * y[1]) % p)

    return group_from_function(elements, mul, f"Heis{p}")


def metacyclic27() -> FiniteGroup:
    elements = [(i, j) for j in range(3) for i in range(9)]

    def mul(x, y):
        return ((x[0] + pow(4, x[1], 9) * y[0]) % 9, (x[1] + y[1]) % 3)

    return group_from_function(elements, mul, "M27")


def wreath(p: int) -> FiniteGroup:
    if not is_prime(p):
        raise UnknownName(f"Wr<p> needs a prime, got {p}")
    d = p * p
    base = [(i + 1) % p if i < p else i for i in range(d)]
    top = [(i + p) % d for i in range(d)]
    return group_from_permutations(d, [base, top], label=f"Wr{p}")


def _relabel(G: FiniteGroup, label: str) -> FiniteGroup:
    return FiniteGroup(G.table, G.identity, G.inverse, label=label)


@lru_cache(maxsize=None)
def _named(family: str, k: int) -> FiniteGroup:
    if family == "C":
        if k < 1:
            raise UnknownName("C0 is not a finite group")
        return cyclic(k)
    if family == "S":
        return symmetric(k)
    if family == "A":
        return alternating(k)
    if family == "D":
        return dihedral(k)
    if family == "Q":
        return quaternion(k)
    if family == "Heis":
        return heisenberg(k)
    if family == "M" and k == 27:
        return metacyclic27()
    if family == "Wr":
        return wreath(k)
    raise UnknownName(f"unknown group {family}{k}", name=f"{family}{k}")


def named_group(name: str) -> FiniteGroup:
    """Resolve a catalog name or a product of names such as ``C2xC4``."""
    parts = [s.strip() for s in name.split("x")]
    groups = []
    for part in parts:
        m = _NAME.fullmatch(part)
        if not m:
            raise UnknownName(f"unknown group name {part!r}", name=part)
        G = _named(m.group(1), int(m.group(2)))
        # the cache may hold groups built under a looser cap
        limit = caps.cap("order")
        if G.order > limit:
            raise OrderCapExceeded(limit)
        groups.append(G)
    if len(groups) == 1:
        return groups[0]
    G = reduce(direct_product, groups)
    return _relabel(G, " x ".join(g.label for g in groups))


def group_from_json(desc: Any, label: str | None = None) -> FiniteGroup:
    """Build a group from ``{"table": ...}``, ``{"perm": ...}`` or a catalog name."""
    if isinstance(desc, str):
        text = desc.strip()
        if text.startswith("{"):
            try:
                return group_from_json(json.loads(text), label)
            except json.JSONDecodeError as exc:
                raise MalformedTable(f"invalid JSON group description: {exc}") from None
        return named_group(text)
    if isinstance(desc, dict):
        if "table" in desc:
            return group_from_table(desc["table"], label=label or desc.get("label"))
        if "perm" in desc:
            perm = desc["perm"]
            if not isinstance(perm, dict) or "degree" not in perm:
                raise MalformedTable('"perm" needs {"degree": d, "generators": [...]}')
            return group_from_permutations(
                int(perm["degree"]), perm.get("generators", []), label=label or desc.get("label")
            )
        if "name" in desc:
            return named_group(desc["name"])
    raise MalformedTable(f"unrecognized group description: {desc!r}")


def group_to_json(G: FiniteGroup) -> dict[str, Any]:
    out: dict[str, Any] = {"table": G.table.tolist()}
    if G.label:
        out["label"] = G.label
    return out


# -- fixed group lists for the verification suites -------------------------

_SMALL_NONABELIAN = [
    "S3", "D8", "Q8", "D10", "A4", "D12", "Q12", "D14", "D16", "Q16",
    "S3xC3", "D18", "D20", "Heis3", "M27", "S4", "D8xC3", "Q8xC3", "S3xS3",
    "D24", "S3xC2xC2", "D8xC2", "Q8xC2", "D32", "Q32", "A4xC2", "A4xC3",
    "S4xC2", "D8xC4", "Q8xC4", "D8xD8", "A5",
]


def catalog_names(max_order: int) -> list[str]:
    """Catalog groups up to ``max_order``: cyclic groups, small abelian
    products and a list of nonabelian groups."""
    names = [f"C{m}" for m in range(1, max_order + 1)]
    for a, b in [(2, 2), (2, 4), (3, 3), (2, 6), (4, 4), (2, 8), (3, 6)]:
        if a * b <= max_order:
            names.append(f"C{a}xC{b}")
    if 8 <= max_order:
        names.append("C2xC2xC2")
    names += [s for s in _SMALL_NONABELIAN if _order_of(s) <= max_order and s not in names]
    return list(dict.fromkeys(names))


def _order_of(name: str) -> int:
    return named_group(name).order


def p_group_names(p: int, max_order: int) -> list[str]:
    """Named p-groups (abelian and not) of order at most ``max_order``."""
    out = [a for a in abelian_p_group_names(max_order) if _order_of(a) > 1 and _order_of(a) % p == 0]
    extra = {
        2: ["D8", "Q8", "D16", "Q16", "D8xC2", "Q8xC2", "D32", "Q32", "D8xC4", "Q8xC4",
            "D8xC2xC2", "D16xC2", "D64", "Q64", "D8xD8", "Q8xQ8", "D8xQ8"],
        3: ["Heis3", "M27", "Heis3xC3", "M27xC3", "Wr3"],
        5: ["Heis5"],
    }
    out += [s for s in extra.get(p, []) if _order_of(s) <= max_order]
    return ["C1"] + out


def abelian_p_group_names(max_order: int) -> list[str]:
    """Every abelian p-group of order <= ``max_order`` up to isomorphism,
    as products of cyclic factors (one per partition of the exponent)."""
    names = []
    for p in range(2, max_order + 1):
        if not is_prime(p):
            continue
        e = 1
        while p**e <= max_order:
            for part in _partitions(e):
                names.append("x".join(f"C{p ** k}" for k in part))
            e += 1
    return names


def _partitions(n: int, largest: int | None = None) -> list[tuple[int, ...]]:
    largest = n if largest is None else largest
    if n == 0:
        return [()]
    out = []
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            out.append((k,) + rest)
    return out
