"""Exhaustive van der Waerden check over all colorings of ``[1, N]``."""

from __future__ import annotations

from functools import partial

import numpy as np

from .errors import UsageError
from .parallel import check_guard, first_hit
from .witnesses import Verdict

VDW_GUARD = 1 << 24


def progressions(k: int, N: int) -> np.ndarray:
    """0-based positions of every k-term progression with positive difference in ``[1, N]``."""
    rows = [
        [a + i * d for i in range(k)]
        for d in range(1, N)
        for a in range(N - (k - 1) * d)
    ]
    if k == 1:
        rows = [[a] for a in range(N)]
    return np.array(rows, dtype=np.int64).reshape(-1, k)


def _colorings(start: int, stop: int, c: int, N: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((idx.size, N), dtype=np.int8)
    for pos in range(N - 1, -1, -1):
        out[:, pos] = idx % c
        idx //= c
    return out


def _vdw_scan(aps: np.ndarray, c: int, N: int, start: int, stop: int) -> int | None:
    col = _colorings(start, stop, c, N)
    mono = np.zeros(stop - start, dtype=bool)
    if aps.size:
        picked = col[:, aps]  # (K, P, k)
        mono = (picked == picked[:, :, :1]).all(axis=2).any(axis=1)
    bad = np.flatnonzero(~mono)
    return int(start + bad[0]) if bad.size else None


def vdw_demo(k: int, c: int, N: int, *, force: bool = False, workers: int = 1) -> Verdict:
    """Does every ``c``-coloring of ``[1, N]`` contain a monochromatic ``k``-term AP?

    Colorings are enumerated with position 1 as the most significant digit;
    a failing verdict carries the least counterexample (colors ``0..c-1``).
    """
    if k < 1 or c < 1 or N < 1:
        raise UsageError("terms, colors and upto must be positive")
    total = c**N
    check_guard(total, f"{c}^{N} colorings", default=VDW_GUARD, force=force)
    aps = progressions(k, N)
    bad = first_hit(partial(_vdw_scan, aps, c, N), total, workers=workers, block=1 << 14)
    if bad is None:
        return Verdict(True, checked=total)
    coloring = tuple(int(x) for x in _colorings(bad, bad + 1, c, N)[0])
    return Verdict(False, counterexample=coloring, checked=bad + 1)


def has_mono_ap(coloring, k: int) -> bool:
    """Direct check of one coloring (independent of the vectorized scan)."""
    N = len(coloring)
    if k == 1:
        return N >= 1
    for d in range(1, N):
        for a in range(N - (k - 1) * d):
            if len({coloring[a + i * d] for i in range(k)}) == 1:
                return True
    return False
