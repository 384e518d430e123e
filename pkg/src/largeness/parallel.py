"""Block-partitioned scans that return the least hit regardless of worker count."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable

from .errors import CostGuardExceeded

DEFAULT_GUARD = 10**8
BLOCK = 1 << 15

Scan = Callable[[int, int], "int | None"]


def cost_guard(default: int = DEFAULT_GUARD) -> int:
    """Enumeration cap; ``LARGENESS_COST_GUARD`` overrides every default."""
    raw = os.environ.get("LARGENESS_COST_GUARD")
    return int(float(raw)) if raw else default


def check_guard(count: int, what: str, default: int = DEFAULT_GUARD, force: bool = False) -> None:
    limit = cost_guard(default)
    if count > limit and not force:
        raise CostGuardExceeded(f"{what}: {count} cases exceed the cost guard {limit} (use --force or LARGENESS_COST_GUARD)")


def first_hit(scan: Scan, total: int, workers: int = 1, block: int = BLOCK) -> int | None:
    """Least index in ``[0, total)`` reported by ``scan(start, stop)``.

    ``scan`` must return the least hit inside its block or ``None``.  Blocks
    are contiguous, so the first block (in order) with a hit holds the global
    minimum; later blocks are cancelled once it is known.
    """
    starts = range(0, total, block)
    if workers <= 1 or total <= block:
        for start in starts:
            hit = scan(start, min(start + block, total))
            if hit is not None:
                return hit
        return None
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(scan, start, min(start + block, total)) for start in starts]
        try:
            for fut in futures:
                hit = fut.result()
                if hit is not None:
                    return hit
        finally:
            for fut in futures:
                fut.cancel()
    return None
