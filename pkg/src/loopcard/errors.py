"""Exception hierarchy.

Every error carries a ``payload`` dict so the CLI can emit it as JSON
without string scraping.
"""

from __future__ import annotations

from typing import Any


class LoopcardError(Exception):
    """Base class for all errors raised by this package."""

    #: process exit status used by the CLI
    exit_code = 2

    def __init__(self, message: str, **payload: Any):
        super().__init__(message)
        self.message = message
        self.payload = payload

    def to_json(self) -> dict[str, Any]:
        return {"error": type(self).__name__, "message": self.message, **self.payload}


# algebra-core


class MalformedTable(LoopcardError):
    pass


class NotAssociative(LoopcardError):
    pass


class NoIdentity(LoopcardError):
    pass


class NoInverse(LoopcardError):
    pass


class NotAPermutation(LoopcardError):
    pass


class OrderCapExceeded(LoopcardError):
    def __init__(self, cap: int, what: str = "group order"):
        super().__init__(f"{what} exceeds cap {cap}", cap=cap)


class UnknownName(LoopcardError):
    pass


# groupoid / invariants


class ComponentBudgetExceeded(LoopcardError):
    def __init__(self, cap: int, needed: int):
        super().__init__(
            f"groupoid would have {needed} components, budget is {cap}",
            cap=cap,
            needed=needed,
        )


class WorkCapExceeded(LoopcardError):
    def __init__(self, cap: int, needed: int):
        super().__init__(
            f"brute force needs {needed} tuple checks, cap is {cap}", cap=cap, needed=needed
        )


class InvalidPrime(LoopcardError):
    def __init__(self, p: int):
        super().__init__(f"{p} is not a prime", p=p)


class NotAPSpace(LoopcardError):
    def __init__(self, p: int, witness: Any):
        super().__init__(f"not a {p}-space: order {witness} is not a power of {p}", p=p, witness=witness)


class IntegralityViolation(LoopcardError):
    """An internal identity failed; this is a bug, never bad input."""

    exit_code = 1


class OracleMismatch(IntegralityViolation):
    pass


# spacexpr


class ExprSyntaxError(LoopcardError):
    def __init__(self, message: str, line: int, column: int, expected: list[str]):
        super().__init__(
            f"{line}:{column}: {message} (expected one of: {', '.join(expected)})",
            line=line,
            column=column,
            expected=expected,
        )


class NonAbelianHigherB(LoopcardError):
    pass


class MixedRepresentation(LoopcardError):
    pass


class CoercionRefused(LoopcardError):
    pass
