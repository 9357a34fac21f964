"""Size budgets for the exponential searches.

A budget is ambient configuration held in a context variable, so the CLI can
override it once for a whole run while library callers may pass their own.
"""
from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass, replace

from .errors import SizeBudgetExceeded


@dataclass(frozen=True)
class Budget:
    max_objects: int = 5000
    max_morphisms: int = 200000
    max_nodes: int = 5_000_000
    iso_object_cap: int = 8


_CURRENT = contextvars.ContextVar("fin2cat_budget", default=Budget())


def current_budget() -> Budget:
    return _CURRENT.get()


@contextlib.contextmanager
def use_budget(budget: Budget | None = None, **overrides):
    b = budget if budget is not None else current_budget()
    if overrides:
        b = replace(b, **overrides)
    token = _CURRENT.set(b)
    try:
        yield b
    finally:
        _CURRENT.reset(token)


class NodeCounter:
    """Counts search nodes and raises once the budget is spent."""

    __slots__ = ("limit", "used", "what")

    def __init__(self, what: str, limit: int | None = None):
        self.what = what
        self.limit = current_budget().max_nodes if limit is None else limit
        self.used = 0

    def tick(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.limit:
            raise SizeBudgetExceeded(
                f"{self.what}: search exceeded {self.limit} nodes")


def check_size(what: str, n_objects: int, n_morphisms: int = 0) -> None:
    b = current_budget()
    if n_objects > b.max_objects or n_morphisms > b.max_morphisms:
        raise SizeBudgetExceeded(
            f"{what}: {n_objects} objects / {n_morphisms} morphisms exceeds "
            f"budget ({b.max_objects} / {b.max_morphisms})")
