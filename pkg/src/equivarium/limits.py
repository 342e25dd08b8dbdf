"""Size guards shared by every construction.

All caps are scaled by the ``EQUIVARIUM_SIZE_GUARD`` environment variable:
a positive number multiplies every default, ``off`` disables the guards.
"""

from __future__ import annotations

import math
import os

DEFAULTS = {
    "group_order": 120,
    "suite_group_order": 24,
    "symmetric_degree": 5,
    "morphisms": 10_000,
    "simplices": 500_000,
    "matrix": 10_000,
    "poset_elements": 5_000,
}


class SizeGuardError(ValueError):
    """A construction would exceed one of the configured size caps."""

    def __init__(self, what: str, size: int, limit: int):
        super().__init__(f"size guard: {what} = {size} exceeds cap {limit}")
        self.what = what
        self.size = size
        self.limit = limit


def cap(name: str) -> float:
    raw = os.environ.get("EQUIVARIUM_SIZE_GUARD", "").strip()
    base = DEFAULTS[name]
    if not raw:
        return base
    if raw.lower() in ("off", "none", "0"):
        return math.inf
    return base * float(raw)


def guard(name: str, size: int, what: str | None = None) -> None:
    limit = cap(name)
    if size > limit:
        raise SizeGuardError(what or name, size, int(limit))
