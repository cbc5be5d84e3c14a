"""Enumeration caps.

Caps live in a context variable so concurrent workers can run under
different settings without touching shared state.
"""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass, replace
from typing import Iterator

from .errors import CapExceeded


@dataclass(frozen=True)
class Limits:
    max_elements: int = 2**20
    max_homogeneous: int = 2**10
    max_ideals: int = 4096
    # Rings at or below this size get full operation tables.
    table_limit: int = 4096
    # Largest ring whose axioms are checked on every triple.
    axiom_triple_limit: int = 256
    search_max_elements: int = 16


_current: contextvars.ContextVar[Limits] = contextvars.ContextVar("limits", default=Limits())


def get_limits() -> Limits:
    return _current.get()


@contextlib.contextmanager
def limits(**overrides: int) -> Iterator[Limits]:
    token = _current.set(replace(_current.get(), **overrides))
    try:
        yield _current.get()
    finally:
        _current.reset(token)


def check_size(size: int, what: str) -> None:
    cap = get_limits().max_elements
    if size > cap:
        raise CapExceeded(f"{what} has {size} elements, above the cap of {cap}",
                          {"size": size, "cap": cap})
