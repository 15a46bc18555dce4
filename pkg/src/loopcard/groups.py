"""Finite groups stored as dense multiplication tables.

Elements are the integers ``0 .. order-1``.  Groups built from permutations,
products and centralizers always put the identity at index 0; groups read
from a user table keep the user's labels and record where the identity is.
"""

from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import caps
from .errors import (
    MalformedTable,
    NoIdentity,
    NoInverse,
    NotAPermutation,
    NotAssociative,
    OrderCapExceeded,
)

EXHAUSTIVE_ASSOCIATIVITY_LIMIT = 256
ASSOCIATIVITY_SAMPLES = 200_000


class FiniteGroup:
    """A finite group given by its Cayley table.

    Instances are immutable.  Two groups compare equal when their tables and
    identities coincide (labels are ignored), so structurally identical
    centralizers found along different paths share cache entries.
    """

    def __init__(
        self,
        table: np.ndarray,
        identity: int,
        inverse: np.ndarray,
        label: str | None = None,
        embedding: np.ndarray | None = None,
    ):
        table = np.ascontiguousarray(table, dtype=np.int32)
        inverse = np.ascontiguousarray(inverse, dtype=np.int32)
        table.setflags(write=False)
        inverse.setflags(write=False)
        if embedding is not None:
            embedding = np.ascontiguousarray(embedding, dtype=np.int64)
            embedding.setflags(write=False)
        self.table = table
        self.identity = int(identity)
        self.inverse = inverse
        self.label = label
        #: for subgroups: the index in the parent group of each element
        self.embedding = embedding
        self._centralizers: dict[int, FiniteGroup] = {}

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __len__(self) -> int:
        return self.order

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def element(self, index: int) -> GroupElement:
        return GroupElement(self, index)

    @cached_property
    def key(self) -> bytes:
        """Digest of the multiplication table; equal tables give equal keys."""
        h = hashlib.blake2b(digest_size=16)
        h.update(self.identity.to_bytes(4, "little"))
        h.update(self.table.tobytes())
        return h.digest()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        name = self.label or "group"
        return f"<FiniteGroup {name} of order {self.order}>"

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def commuting(self) -> np.ndarray:
        """Boolean matrix, ``commuting[a, b]`` iff ``ab == ba``."""
        m = self.table == self.table.T
        m.setflags(write=False)
        return m

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        idx = np.arange(n)
        power = idx.copy()
        orders = np.ones(n, dtype=np.int64)
        pending = power != self.identity
        while pending.any():
            power = np.where(pending, self.table[power, idx], power)
            orders += pending
            pending = power != self.identity
        return orders

    def closure(self, generators: Iterable[int]) -> np.ndarray:
        """Sorted element indices of the subgroup generated by ``generators``."""
        gens = [int(g) for g in generators]
        seen = np.zeros(self.order, dtype=bool)
        seen[self.identity] = True
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = int(self.table[x, s])
                    if not seen[y]:
                        seen[y] = True
                        nxt.append(y)
            frontier = nxt
        return np.flatnonzero(seen)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily by ascending index."""
        gens: list[int] = []
        inside = np.zeros(self.order, dtype=bool)
        inside[self.identity] = True
        for g in range(self.order):
            if not inside[g]:
                gens.append(g)
                inside[:] = False
                inside[self.closure(gens)] = True
        return tuple(gens)

    @cached_property
    def classes(self) -> ConjugacyClassTable:
        return _conjugacy_classes(self)

    def subgroup(self, members: Sequence[int], label: str | None = None) -> FiniteGroup:
        """Standalone copy of a subgroup, elements re-indexed in ascending order.

        ``members`` must be closed under multiplication; this is not checked.
        """
        members = np.asarray(sorted(int(m) for m in members), dtype=np.int64)
        pos = np.full(self.order, -1, dtype=np.int64)
        pos[members] = np.arange(len(members))
        table = pos[self.table[np.ix_(members, members)]]
        inverse = pos[self.inverse[members]]
        base = self.embedding
        embedding = members if base is None else base[members]
        return FiniteGroup(table, pos[self.identity], inverse, label=label, embedding=embedding)


@dataclass(frozen=True)
class GroupElement:
    group: FiniteGroup
    index: int

    def __post_init__(self):
        if not 0 <= self.index < self.group.order:
            raise IndexError(f"element {self.index} not in group of order {self.group.order}")


@dataclass(frozen=True)
class ConjugacyClassTable:
    """Conjugacy classes, sorted by their minimal element."""

    classes: tuple[tuple[int, ...], ...]
    representatives: tuple[int, ...]
    class_of: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.classes)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)


def _conjugacy_classes(G: FiniteGroup) -> ConjugacyClassTable:
    T, inv = G.table, G.inverse
    class_of = np.full(G.order, -1, dtype=np.int64)
    classes = []
    for g in range(G.order):
        if class_of[g] >= 0:
            continue
        orbit = np.unique(T[T[:, g], inv])
        class_of[orbit] = len(classes)
        classes.append(tuple(int(x) for x in orbit))
    return ConjugacyClassTable(
        classes=tuple(classes),
        representatives=tuple(c[0] for c in classes),
        class_of=tuple(int(c) for c in class_of),
    )


def conjugacy_classes(G: FiniteGroup) -> ConjugacyClassTable:
    return G.classes


def centralizer(G: FiniteGroup, g: GroupElement | int) -> FiniteGroup:
    """The centralizer of ``g`` as a standalone group, memoized per element.

    A central ``g`` returns ``G`` itself rather than a relabeled copy.
    """
    if isinstance(g, GroupElement):
        if g.group is not G and g.group != G:
            raise ValueError("element belongs to a different group")
        g = g.index
    g = int(g)
    if not 0 <= g < G.order:
        raise IndexError(f"element {g} not in group of order {G.order}")
    cached = G._centralizers.get(g)
    if cached is None:
        members = np.flatnonzero(G.commuting[g])
        if members.size == G.order:
            G._centralizers[g] = G
            return G
        label = f"C({G.label}, {g})" if G.label else None
        cached = G.subgroup(members, label=label)
        G._centralizers[g] = cached
    return cached


def direct_product(G: FiniteGroup, H: FiniteGroup, order_cap: int | None = None) -> FiniteGroup:
    """Pairs ``(g, h)`` at index ``g * |H| + h``, multiplied componentwise."""
    limit = caps.cap("order", order_cap)
    n, m = G.order, H.order
    if n * m > limit:
        raise OrderCapExceeded(limit)
    caps.check_table(n * m)
    table = (G.table.astype(np.int64)[:, None, :, None] * m + H.table[None, :, None, :]).reshape(
        n * m, n * m
    )
    inverse = (G.inverse.astype(np.int64)[:, None] * m + H.inverse[None, :]).reshape(-1)
    label = None
    if G.label and H.label:
        label = f"{G.label} x {H.label}"
    return FiniteGroup(table, G.identity * m + H.identity, inverse, label=label)


def trivial_group() -> FiniteGroup:
    return FiniteGroup(np.zeros((1, 1)), 0, np.zeros(1), label="C1")


def group_from_table(mul_table, label: str | None = None) -> FiniteGroup:
    """Validate a Cayley table and wrap it as a group.

    Raises the first violated axiom with a witness: ``MalformedTable`` for a
    bad shape or out-of-range entry, then ``NoIdentity``, ``NoInverse`` and
    ``NotAssociative``.
    """
    try:
        raw = np.asarray(mul_table)
    except (ValueError, TypeError) as exc:
        raise MalformedTable(f"table is not a rectangular array: {exc}") from None
    if raw.ndim != 2 or raw.shape[0] != raw.shape[1] or raw.shape[0] == 0:
        raise MalformedTable(f"table must be a non-empty square array, got shape {raw.shape}", shape=list(raw.shape))
    n = raw.shape[0]
    if raw.dtype.kind == "f":
        bad = ~np.isfinite(raw) | (raw != np.floor(np.nan_to_num(raw)))
        if bad.any():
            r, c = (int(i) for i in np.argwhere(bad)[0])
            raise MalformedTable(f"entry at ({r}, {c}) is not an integer", witness=[r, c])
    elif raw.dtype.kind not in "iu":
        raise MalformedTable("table entries must be integers")
    T = raw.astype(np.int64)
    out = (T < 0) | (T >= n)
    if out.any():
        r, c = (int(i) for i in np.argwhere(out)[0])
        raise MalformedTable(
            f"entry at ({r}, {c}) is {int(T[r, c])}, outside 0..{n - 1}", witness=[r, c]
        )

    idx = np.arange(n)
    units = np.flatnonzero((T == idx[None, :]).all(axis=1) & (T == idx[:, None]).all(axis=0))
    if len(units) == 0:
        raise NoIdentity("no element is a two-sided identity")
    e = int(units[0])

    is_inv = (T == e) & (T.T == e)
    has_inv = is_inv.any(axis=1)
    if not has_inv.all():
        g = int(np.flatnonzero(~has_inv)[0])
        raise NoInverse(f"element {g} has no two-sided inverse", witness=g)
    inverse = is_inv.argmax(axis=1)

    witness = _associativity_witness(T)
    if witness is not None:
        a, b, c = witness
        raise NotAssociative(f"(({a}*{b})*{c}) != ({a}*({b}*{c}))", witness=list(witness))
    return FiniteGroup(T, e, inverse, label=label)


def _associativity_witness(T: np.ndarray) -> tuple[int, int, int] | None:
    n = T.shape[0]
    if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT:
        for a in range(n):
            left = T[T[a]]  # left[b, c] = (ab)c
            right = T[a][T]  # right[b, c] = a(bc)
            bad = left != right
            if bad.any():
                b, c = np.argwhere(bad)[0]
                return a, int(b), int(c)
        return None
    rng = np.random.default_rng(0)
    a, b, c = rng.integers(0, n, size=(3, ASSOCIATIVITY_SAMPLES))
    bad = T[T[a, b], c] != T[a, T[b, c]]
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        return int(a[i]), int(b[i]), int(c[i])
    return None


def group_from_permutations(
    degree: int,
    generators: Sequence[Sequence[int]],
    order_cap: int | None = None,
    label: str | None = None,
) -> FiniteGroup:
    """Close a set of permutations (image lists of ``0..degree-1``) under composition.

    The product ``a * b`` applies ``b`` first: ``(a * b)[i] == a[b[i]]``.
    Elements are numbered in breadth-first discovery order from the identity.
    """
    if degree < 1:
        raise NotAPermutation(f"degree must be positive, got {degree}")
    limit = caps.cap("order", order_cap)
    gens = []
    for k, perm in enumerate(generators):
        perm = tuple(int(x) for x in perm)
        if len(perm) != degree or sorted(perm) != list(range(degree)):
            raise NotAPermutation(f"generator {k} is not a permutation of 0..{degree - 1}", witness=k)
        gens.append(perm)

    identity = tuple(range(degree))
    elements = [identity]
    index = {identity: 0}
    right = [[] for _ in gens]  # right[s][x] = index of x * s
    queue = deque([0])
    while queue:
        x = queue.popleft()
        px = elements[x]
        for s, ps in enumerate(gens):
            y = tuple(px[i] for i in ps)
            j = index.get(y)
            if j is None:
                if len(elements) >= limit:
                    raise OrderCapExceeded(limit)
                j = index[y] = len(elements)
                elements.append(y)
                queue.append(j)
            right[s].append(j)

    n = len(elements)
    caps.check_table(n)
    # Every element b != e was discovered as parent * s; column b of the
    # table is then right[s] applied to column parent.
    parent = [(-1, -1)] * n
    for x in range(n):
        for s in range(len(gens)):
            y = right[s][x]
            if y != 0 and parent[y][0] < 0 and y > x:
                parent[y] = (x, s)
    right_arr = [np.asarray(r, dtype=np.int64) for r in right]
    table = np.empty((n, n), dtype=np.int64)
    table[:, 0] = np.arange(n)
    for b in range(1, n):
        p, s = parent[b]
        table[:, b] = right_arr[s][table[:, p]]
    inverse = (table == 0).argmax(axis=1)
    return FiniteGroup(table, 0, inverse, label=label)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def is_power_of(n: int, p: int) -> bool:
    if n < 1:
        return False
    while n % p == 0:
        n //= p
    return n == 1


def is_p_group(G: FiniteGroup, p: int) -> bool:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return is_power_of(G.order, p)


def isomorphism_invariants(G: FiniteGroup) -> tuple:
    """Cheap invariants: order, sorted element orders, sorted class sizes."""
    return (
        G.order,
        tuple(sorted(int(o) for o in G.element_orders)),
        tuple(sorted(G.classes.sizes)),
    )
