"""Self-check suites run by ``loopcard verify``.

Each suite returns a :class:`SuiteReport`; failures are collected and
reported, never raised.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb
from typing import Any, Callable, Iterator

from .catalog import catalog_names, named_group, p_group_names
from .errors import LoopcardError
from .groupoid import (
    FiniteGroupoid,
    classifying_groupoid,
    homotopy_cardinality,
    iterated_loop_groupoid,
    loop_groupoid,
    pi0_count,
)
from .invariants import (
    commuting_classes_bruteforce,
    commuting_classes_recursive,
    en_cardinality,
    en_cardinality_pi0_path,
    one_step_reduction_check,
)
from .stable import (
    PostnikovOrders,
    em_space,
    iterated_stable_loop,
    loop_formula_cardinality,
    stable_hcard,
)


@dataclass
class SuiteReport:
    name: str
    checks: int = 0
    failures: int = 0
    first_counterexample: dict[str, Any] | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failures == 0 and self.checks > 0

    def record(self, ok: bool, **case: Any) -> None:
        self.checks += 1
        if not ok:
            self.failures += 1
            if self.first_counterexample is None:
                self.first_counterexample = {k: str(v) for k, v in case.items()}

    def to_json(self) -> dict[str, Any]:
        out = {"suite": self.name, "passed": self.passed, "checks": self.checks, "failures": self.failures}
        if self.first_counterexample is not None:
            out["first_counterexample"] = self.first_counterexample
        return out

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name}: {self.checks} checks, {self.failures} failures"
        if self.first_counterexample:
            text += f"; first counterexample {self.first_counterexample}"
        return text


def _guard(report: SuiteReport, fn: Callable[[], bool], **case: Any) -> None:
    try:
        ok = fn()
    except LoopcardError as exc:
        ok = False
        case["error"] = f"{type(exc).__name__}: {exc}"
    report.record(ok, **case)


def suite_em() -> SuiteReport:
    """Eilenberg-MacLane closed form, plus the groupoid route for d = 1."""
    r = SuiteReport("em")
    for p, d, n in product((2, 3, 5), range(5), range(1, 7)):
        expected = Fraction(p ** comb(n - 1, d))
        _guard(r, lambda: en_cardinality(em_space(d, p), n, p) == expected, p=p, d=d, n=n)
        if d == 1:
            BG = classifying_groupoid(named_group(f"C{p}"))
            _guard(
                r,
                lambda: homotopy_cardinality(iterated_loop_groupoid(BG, n)) == expected,
                p=p, d=d, n=n, route="groupoid",
            )
    return r


def stable_p_spaces(p: int, max_order: int = 27, length: int = 6, nontrivial: int = 4) -> Iterator[PostnikovOrders]:
    """Every order list of the given length whose entries are powers of p up
    to ``max_order``, with at most ``nontrivial`` entries different from 1."""
    powers = [1]
    while powers[-1] * p <= max_order:
        powers.append(powers[-1] * p)
    for orders in product(powers, repeat=length):
        if sum(o > 1 for o in orders) <= nontrivial:
            yield PostnikovOrders(orders)


def p_group_groupoids(p: int, max_order: int = 81, samples: int = 40, seed: int = 0) -> Iterator[tuple[str, FiniteGroupoid]]:
    """Connected p-group 1-types from the catalog, then random disjoint
    unions of them."""
    names = p_group_names(p, max_order)
    for name in names:
        yield f"B({name})", classifying_groupoid(named_group(name))
    rng = random.Random(seed)
    for _ in range(samples):
        picks = [rng.choice(names) for _ in range(rng.randint(2, 4))]
        yield " + ".join(f"B({s})" for s in picks), FiniteGroupoid(tuple(named_group(s) for s in picks))


def suite_loopred(max_n: int = 5) -> SuiteReport:
    """Height n+1 of A against height n of LA, on p-groups and stable p-spaces."""
    r = SuiteReport("loopred")
    for p in (2, 3):
        for label, A in p_group_groupoids(p):
            for n in range(max_n + 1):
                _guard(r, lambda: one_step_reduction_check(A, n, p), space=label, n=n, p=p)
        for A in stable_p_spaces(p):
            for n in range(max_n + 1):
                _guard(r, lambda: one_step_reduction_check(A, n, p), space=A.orders, n=n, p=p)
    return r


def suite_oracle(max_order: int = 60, max_n: int = 3) -> SuiteReport:
    """Class-recursion counts of commuting tuples against brute force."""
    r = SuiteReport("oracle")
    for name in catalog_names(max_order):
        G = named_group(name)
        for n in range(max_n + 1):
            _guard(
                r,
                lambda: commuting_classes_recursive(G, n).count == commuting_classes_bruteforce(G, n).count,
                group=name,
                n=n,
            )
    return r


def full_catalog() -> list[str]:
    """Every named group the suites know about, without duplicates."""
    names = catalog_names(FULL_CATALOG_ORDER)
    for p in (2, 3, 5):
        names += p_group_names(p, 125)
    return list(dict.fromkeys(names))


FULL_CATALOG_ORDER = 64


def random_groupoid(rng: random.Random, names: list[str], max_components: int = 4) -> FiniteGroupoid:
    k = rng.randint(0, max_components)
    return FiniteGroupoid(tuple(named_group(rng.choice(names)) for _ in range(k)))


def suite_remark(samples: int = 200, seed: int = 0) -> SuiteReport:
    """hcard(LA) = |pi_0 A|, and the two routes to the height-n cardinality."""
    r = SuiteReport("remark")
    rng = random.Random(seed)
    names = catalog_names(24)
    for i in range(samples):
        A = random_groupoid(rng, names)
        _guard(r, lambda: homotopy_cardinality(loop_groupoid(A)) == pi0_count(A), sample=i, orders=A.orders)
    for name in full_catalog():
        A = classifying_groupoid(named_group(name))
        for n in range(1, 6):
            _guard(r, lambda: en_cardinality(A, n, None) == en_cardinality_pi0_path(A, n), group=name, n=n)
    return r


def suite_loopformula(samples: int = 500, seed: int = 0) -> SuiteReport:
    """Closed product formula against the homotopy cardinality of iterated stable loops."""
    r = SuiteReport("loopformula")
    rng = random.Random(seed)
    for _ in range(samples):
        A = PostnikovOrders(tuple(rng.randint(1, 16) for _ in range(rng.randint(0, 6))))
        for n in range(9):
            _guard(
                r,
                lambda: loop_formula_cardinality(A, n) == stable_hcard(iterated_stable_loop(A, n)),
                orders=A.orders,
                n=n,
            )
    return r


SUITES: dict[str, Callable[[], SuiteReport]] = {
    "em": suite_em,
    "loopred": suite_loopred,
    "oracle": suite_oracle,
    "remark": suite_remark,
    "loopformula": suite_loopformula,
}


def run_suites(which: str = "all") -> list[SuiteReport]:
    names = list(SUITES) if which == "all" else [which]
    return [SUITES[name]() for name in names]
