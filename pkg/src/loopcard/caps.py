"""Resource caps, overridable through environment variables or
:func:`overridden` (used by the CLI flags)."""

import os
from contextlib import contextmanager

ORDER_CAP = 100_000
COMPONENT_CAP = 10**7
WORK_CAP = 10**8
# Dense Cayley tables cost order**2 entries; this bounds them separately
# from the order cap so that large products fail cleanly instead of
# exhausting memory.
TABLE_CAP = 2**26

_ENV = {
    "order": ("LOOPCARD_ORDER_CAP", ORDER_CAP),
    "component": ("LOOPCARD_COMPONENT_CAP", COMPONENT_CAP),
    "work": ("LOOPCARD_WORK_CAP", WORK_CAP),
    "table": ("LOOPCARD_TABLE_CAP", TABLE_CAP),
}
_overrides: dict[str, int] = {}


def cap(kind: str, override: int | None = None) -> int:
    """Resolve a cap: explicit argument, active override, environment, default."""
    if override is not None:
        return int(override)
    if kind in _overrides:
        return _overrides[kind]
    var, default = _ENV[kind]
    value = os.environ.get(var)
    return int(value) if value else default


def check_table(order: int) -> None:
    """Raise :class:`OrderCapExceeded` if a group of this order would need
    a multiplication table above the table cap."""
    from .errors import OrderCapExceeded

    limit = cap("table")
    if order * order > limit:
        raise OrderCapExceeded(limit, what=f"multiplication table for order {order}")


@contextmanager
def overridden(**values: int | None):
    """Temporarily set caps, e.g. ``overridden(order=5000)``; None is ignored."""
    saved = dict(_overrides)
    _overrides.update({k: int(v) for k, v in values.items() if v is not None})
    try:
        yield
    finally:
        _overrides.clear()
        _overrides.update(saved)
