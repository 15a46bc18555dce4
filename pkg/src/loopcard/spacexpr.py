"""Space expressions: parsing, pretty-printing and evaluation.

Grammar (whitespace is ignored; ``x`` binds tighter than ``+``)::

    expr     := prod ('+' prod)*
    prod     := term ('x' term)*
    term     := 'pt'
              | 'L' '(' expr ')'
              | 'B' ('^' NAT)? '(' groupref ')'
              | 'Discrete' '(' NAT ')'
              | 'stable' '(' expr ')'
              | '(' expr ')'
              | NAME                      -- B of a catalog group
    groupref := gatom ('x' gatom)*
    gatom    := NAME | '@' "'" JSON "'"

``B(G)`` is the groupoid BG.  An explicit exponent, ``B^d(G)``, is the
Eilenberg-MacLane space K(G, d) in the stable (loop space) representation;
it needs G abelian when d >= 2, and ``B^1`` of a nonabelian group falls
back to the groupoid BG.  ``Discrete(m)`` and ``pt`` are stable discrete
spaces and lift to groupoids when combined with one.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import reduce
from typing import Union

from .catalog import group_from_json, named_group
from .errors import (
    CoercionRefused,
    ExprSyntaxError,
    LoopcardError,
    MixedRepresentation,
    NonAbelianHigherB,
)
from .groupoid import (
    FiniteGroupoid,
    classifying_groupoid,
    discrete,
    disjoint_union,
    groupoid_product,
    loop_groupoid,
)
from .groups import FiniteGroup, direct_product
from .stable import PostnikovOrders, em_space, stable_loop, stable_product

# -- AST ----------------------------------------------------------------------


@dataclass(frozen=True)
class GroupRef:
    """Factors of a group product; each is a catalog name or ``@'json'``."""

    factors: tuple[str, ...]

    def text(self) -> str:
        return " x ".join(self.factors)

    def resolve(self) -> FiniteGroup:
        groups = []
        for f in self.factors:
            if f.startswith("@"):
                groups.append(group_from_json(f[2:-1]))
            else:
                groups.append(named_group(f))
        G = reduce(direct_product, groups)
        if len(groups) > 1:
            G = FiniteGroup(G.table, G.identity, G.inverse, label=self.text())
        return G


@dataclass(frozen=True)
class Point:
    pass


@dataclass(frozen=True)
class Discrete:
    m: int


@dataclass(frozen=True)
class B:
    group: GroupRef


@dataclass(frozen=True)
class EM:
    d: int
    m: int
    group: GroupRef | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Named:
    name: str


@dataclass(frozen=True)
class Loop:
    expr: SpaceExpr


@dataclass(frozen=True)
class Product:
    left: SpaceExpr
    right: SpaceExpr


@dataclass(frozen=True)
class DisjointUnion:
    left: SpaceExpr
    right: SpaceExpr


@dataclass(frozen=True)
class Stable:
    expr: SpaceExpr


SpaceExpr = Union[Point, Discrete, B, EM, Named, Loop, Product, DisjointUnion, Stable]


# -- lexer ------------------------------------------------------------------------

_NAME = re.compile(r"[A-Z][A-Za-wyz]*(?:_?[0-9]+)?")
_NAT = re.compile(r"[0-9]+")
_KEYWORDS = ("stable", "pt", "x")
_PUNCT = {"(": "(", ")": ")", "^": "^", "+": "+"}


@dataclass(frozen=True)
class Token:
    kind: str  # NAME, NAT, JSON, EOF, or the literal text of a keyword/punctuation
    text: str
    line: int
    column: int


def tokenize(source: str) -> list[Token]:
    tokens = []
    i, line, col = 0, 1, 1

    def err(msg, expected):
        raise ExprSyntaxError(msg, line, col, expected)

    while i < len(source):
        ch = source[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch.isspace():
            i, col = i + 1, col + 1
            continue
        start_col = col
        if ch in _PUNCT:
            tokens.append(Token(ch, ch, line, start_col))
            i, col = i + 1, col + 1
            continue
        if ch == "@":
            if source[i + 1 : i + 2] != "'":
                col += 1
                err("inline group must be quoted as @'...'", ["'"])
            end = source.find("'", i + 2)
            if end < 0:
                err("unterminated inline group", ["'"])
            text = source[i:end + 1]
            tokens.append(Token("JSON", text, line, start_col))
            newlines = text.count("\n")
            if newlines:
                line += newlines
                col = len(text) - text.rfind("\n")
            else:
                col += len(text)
            i = end + 1
            continue
        kw = next((k for k in _KEYWORDS if source.startswith(k, i)), None)
        if kw is not None:
            tokens.append(Token(kw, kw, line, start_col))
            i, col = i + len(kw), col + len(kw)
            continue
        m = _NAT.match(source, i) or _NAME.match(source, i)
        if m:
            kind = "NAT" if ch.isdigit() else "NAME"
            tokens.append(Token(kind, m.group(), line, start_col))
            i, col = m.end(), col + len(m.group())
            continue
        err(f"unexpected character {ch!r}", ["expression"])
    tokens.append(Token("EOF", "", line, col))
    return tokens


# -- parser -------------------------------------------------------------------

_TERM_START = ["pt", "L", "B", "Discrete", "stable", "(", "NAME"]


class _Parser:
    def __init__(self, source: str):
        self.tokens = tokenize(source)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def fail(self, expected: list[str], msg: str | None = None):
        t = self.tok
        found = "end of input" if t.kind == "EOF" else repr(t.text)
        raise ExprSyntaxError(msg or f"unexpected {found}", t.line, t.column, expected)

    def expect(self, kind: str) -> Token:
        if self.tok.kind != kind:
            self.fail([kind])
        t = self.tok
        self.pos += 1
        return t

    def parse(self) -> SpaceExpr:
        e = self.expr()
        if self.tok.kind != "EOF":
            self.fail(["x", "+", "end of input"])
        return e

    def expr(self) -> SpaceExpr:
        e = self.prod()
        while self.tok.kind == "+":
            self.pos += 1
            e = DisjointUnion(e, self.prod())
        return e

    def prod(self) -> SpaceExpr:
        e = self.term()
        while self.tok.kind == "x":
            self.pos += 1
            e = Product(e, self.term())
        return e

    def term(self) -> SpaceExpr:
        t = self.tok
        if t.kind == "pt":
            self.pos += 1
            return Point()
        if t.kind == "stable":
            self.pos += 1
            return Stable(self.parenthesized())
        if t.kind == "(":
            return self.parenthesized()
        if t.kind != "NAME":
            self.fail(_TERM_START)
        if t.text == "L":
            self.pos += 1
            return Loop(self.parenthesized())
        if t.text == "Discrete":
            self.pos += 1
            self.expect("(")
            m = int(self.expect("NAT").text)
            if m < 1:
                self.pos -= 1
                self.fail(["positive integer"], "Discrete needs at least one point")
            self.expect(")")
            return Discrete(m)
        if t.text == "B":
            return self.classifying()
        self.pos += 1
        self.check_name(t)
        return Named(t.text)

    def check_name(self, t: Token) -> None:
        try:
            if t.kind == "JSON":
                group_from_json(t.text[2:-1])
            else:
                named_group(t.text)
        except LoopcardError as exc:
            exc.payload.update(line=t.line, column=t.column)
            raise

    def parenthesized(self) -> SpaceExpr:
        self.expect("(")
        e = self.expr()
        self.expect(")")
        return e

    def classifying(self) -> SpaceExpr:
        self.pos += 1
        d = None
        if self.tok.kind == "^":
            self.pos += 1
            d = int(self.expect("NAT").text)
        elif self.tok.kind != "(":
            self.fail(["^", "("])
        self.expect("(")
        ref_tok = self.tok
        ref = self.groupref()
        self.expect(")")
        if d is None:
            return B(ref)
        G = ref.resolve()
        if not G.is_abelian:
            if d >= 2:
                raise NonAbelianHigherB(
                    f"B^{d} needs an abelian group, {ref.text()} is not abelian",
                    line=ref_tok.line,
                    column=ref_tok.column,
                    group=ref.text(),
                )
            if d == 1:
                return B(ref)
        return EM(d, G.order, ref)

    def groupref(self) -> GroupRef:
        factors = [self.gatom()]
        while self.tok.kind == "x":
            self.pos += 1
            factors.append(self.gatom())
        ref = GroupRef(tuple(factors))
        ref.resolve()
        return ref

    def gatom(self) -> str:
        t = self.tok
        if t.kind in ("NAME", "JSON"):
            self.pos += 1
            self.check_name(t)
            return t.text
        self.fail(["NAME", "@'json'"])


def parse(source: str) -> SpaceExpr:
    """Parse an expression; errors carry line, column and expected tokens."""
    return _Parser(source).parse()


def pretty(e: SpaceExpr) -> str:
    return _pretty(e, 0)


def _pretty(e: SpaceExpr, prec: int) -> str:
    if isinstance(e, Point):
        return "pt"
    if isinstance(e, Discrete):
        return f"Discrete({e.m})"
    if isinstance(e, B):
        return f"B({e.group.text()})"
    if isinstance(e, EM):
        ref = e.group.text() if e.group is not None else f"C{e.m}"
        return f"B^{e.d}({ref})"
    if isinstance(e, Named):
        return e.name
    if isinstance(e, Loop):
        return f"L({_pretty(e.expr, 0)})"
    if isinstance(e, Stable):
        return f"stable({_pretty(e.expr, 0)})"
    if isinstance(e, Product):
        s = f"{_pretty(e.left, 1)} x {_pretty(e.right, 2)}"
        return f"({s})" if prec > 1 else s
    if isinstance(e, DisjointUnion):
        s = f"{_pretty(e.left, 0)} + {_pretty(e.right, 1)}"
        return f"({s})" if prec > 0 else s
    raise TypeError(f"not a space expression: {e!r}")


# -- evaluation -----------------------------------------------------------------


@dataclass(frozen=True)
class SpaceValue:
    space: FiniteGroupoid | PostnikovOrders
    provenance: tuple[str, ...] = ()

    @property
    def kind(self) -> str:
        return "groupoid" if isinstance(self.space, FiniteGroupoid) else "stable"

    def describe(self) -> str:
        if isinstance(self.space, FiniteGroupoid):
            orders = ", ".join(str(o) for o in self.space.orders)
            return f"groupoid with {len(self.space)} components, automorphism orders [{orders}]"
        return f"loop space with homotopy orders ({', '.join(map(str, self.space.orders))})"

    def to_json(self) -> dict:
        return {"kind": self.kind, **self.space.to_json(), "provenance": list(self.provenance)}


def evaluate(e: SpaceExpr | str) -> SpaceValue:
    """Evaluate an expression to a groupoid or a stable (loop space) value."""
    if isinstance(e, str):
        e = parse(e)
    rules: list[str] = []
    space = _eval(e, rules)
    return SpaceValue(space, tuple(rules))


def _as_groupoid(v, rules: list[str], context: str) -> FiniteGroupoid:
    if isinstance(v, FiniteGroupoid):
        return v
    if v.is_discrete:
        rules.append(f"lift Discrete({v.pi0}) to groupoid in {context}")
        return discrete(v.pi0)
    raise MixedRepresentation(
        f"{context} mixes a groupoid with the loop space {v.orders}; "
        "wrap the groupoid in stable(...) or use only groupoid operands",
        orders=list(v.orders),
    )


def _eval(e: SpaceExpr, rules: list[str]):
    if isinstance(e, Point):
        return PostnikovOrders(())
    if isinstance(e, Discrete):
        return PostnikovOrders((e.m,))
    if isinstance(e, EM):
        rules.append(f"B^{e.d} -> stable")
        return em_space(e.d, e.m)
    if isinstance(e, B):
        return classifying_groupoid(e.group.resolve())
    if isinstance(e, Named):
        return classifying_groupoid(named_group(e.name))
    if isinstance(e, Loop):
        v = _eval(e.expr, rules)
        if isinstance(v, FiniteGroupoid):
            rules.append("L on groupoid: centralizers of conjugacy classes")
            return loop_groupoid(v)
        rules.append("L on loop space: shift-multiply orders")
        return stable_loop(v)
    if isinstance(e, Stable):
        return _coerce_stable(_eval(e.expr, rules), rules)
    if isinstance(e, (Product, DisjointUnion)):
        a, b = _eval(e.left, rules), _eval(e.right, rules)
        if isinstance(e, Product):
            if isinstance(a, PostnikovOrders) and isinstance(b, PostnikovOrders):
                return stable_product(a, b)
            return groupoid_product(_as_groupoid(a, rules, "product"), _as_groupoid(b, rules, "product"))
        if isinstance(a, PostnikovOrders) and isinstance(b, PostnikovOrders):
            if a.is_discrete and b.is_discrete:
                return PostnikovOrders((a.pi0 + b.pi0,))
            raise MixedRepresentation(
                "a disjoint union of non-discrete loop spaces is not a loop space",
                left=list(a.orders),
                right=list(b.orders),
            )
        return disjoint_union(_as_groupoid(a, rules, "disjoint union"), _as_groupoid(b, rules, "disjoint union"))
    raise TypeError(f"not a space expression: {e!r}")


def _coerce_stable(v, rules: list[str]) -> PostnikovOrders:
    if isinstance(v, PostnikovOrders):
        return v
    comps = v.components
    if comps and all(G.order == 1 for G in comps):
        rules.append("stable: discrete groupoid")
        return PostnikovOrders((len(comps),))
    if len(comps) != 1:
        raise CoercionRefused(
            f"stable(...) needs a connected groupoid, got {len(comps)} components", components=len(comps)
        )
    G = comps[0]
    if not G.is_abelian:
        raise CoercionRefused(f"stable(...) needs an abelian group, {G.label or 'group'} is not abelian")
    rules.append("stable: BG with G abelian")
    return PostnikovOrders((1, G.order))
