"""Syndetic, thick and piecewise syndetic witnesses on finite semigroups and windows.

On a total (finite) semigroup every negative is exact.  On a window the
shift ``t + y`` may be undefined; syndetic covers are then demanded only on
the sub-window where every candidate shift is defined, and everything else
is reported relative to the window.
"""

from __future__ import annotations

from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .errors import UsageError
from .parallel import check_guard
from .search import candidate_mask
from .semigroup import Element, GroundSet, Semigroup, preimage_mask
from .witnesses import PwsWitness, SyndeticWitness, ThickWitness


def _bits(mask: np.ndarray) -> int:
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


def default_shifts(s: Semigroup) -> np.ndarray:
    """All elements on a total semigroup; on windows, the ``t`` with ``t + t`` defined."""
    if s.is_total:
        return np.ones(s.size, dtype=bool)
    return np.array([s.add(t, t) is not None for t in s.elements], dtype=bool)


def cover_target(s: Semigroup, shifts: np.ndarray) -> np.ndarray:
    """Elements ``y`` for which ``t + y`` is defined for every candidate shift ``t``."""
    target = np.ones(s.size, dtype=bool)
    for t in np.flatnonzero(shifts):
        target &= s.row(int(t)) >= 0
    return target


def find_syndetic_witness(
    A: GroundSet,
    max_card: int,
    shifts: Iterable[Element] | None = None,
    *,
    force: bool = False,
) -> SyndeticWitness | None:
    """Least-cardinality shift set ``F`` (lexicographically first) covering the target.

    A greedy cover bounds the cardinality; the exact search then walks
    ``|F| = 1, 2, ...`` in lexicographic order up to that bound.
    """
    if max_card < 1:
        raise UsageError("max_card must be >= 1")
    s = A.semigroup
    if not A.mask.any():
        return None
    cand_mask = default_shifts(s) if shifts is None else candidate_mask(s, shifts)
    cands = [int(t) for t in np.flatnonzero(cand_mask)]
    target = cover_target(s, cand_mask)
    goal = _bits(target)
    if not cands or goal == 0:
        return None
    covers = [_bits(preimage_mask(A, t) & target) for t in cands]

    everything = 0
    for c in covers:
        everything |= c
    if everything != goal:
        return None

    covered, greedy = 0, 0
    while covered != goal:
        best = max(range(len(cands)), key=lambda k: (bin(covers[k] & ~covered).count("1"), -k))
        covered |= covers[best]
        greedy += 1
    bound = min(max_card, greedy)
    check_guard(sum(comb(len(cands), k) for k in range(1, bound + 1)), "syndetic shift sets", force=force)

    suffix = [0] * (len(cands) + 1)
    for k in range(len(cands) - 1, -1, -1):
        suffix[k] = suffix[k + 1] | covers[k]

    def dfs(start: int, need: int, acc: int, chosen: list[int]) -> list[int] | None:
        if need == 0:
            return chosen if acc == goal else None
        for k in range(start, len(cands) - need + 1):
            if (acc | suffix[k]) != goal:
                return None
            got = dfs(k + 1, need - 1, acc | covers[k], chosen + [k])
            if got is not None:
                return got
        return None

    for size in range(1, bound + 1):
        picked = dfs(0, size, 0, [])
        if picked is not None:
            F = tuple(s.element(cands[k]) for k in picked)
            return _syndetic_record(A, F, target)
    return None


def _syndetic_record(A: GroundSet, F: tuple, target: np.ndarray) -> SyndeticWitness:
    s = A.semigroup
    covered = np.zeros(s.size, dtype=bool)
    for t in F:
        covered |= preimage_mask(A, s.index(t))
    el = s.elements
    return SyndeticWitness(
        F=F,
        target=tuple(el[i] for i in np.flatnonzero(target)),
        covered=tuple(bool(c) for c in covered),
        uncovered_tail=tuple(el[i] for i in np.flatnonzero(~covered & ~target)),
    )


def _thick_mask(s: Semigroup, inside: np.ndarray, E_idx: Sequence[int]) -> np.ndarray:
    """``{x : e + x in inside for all e}``."""
    mask = np.ones(s.size, dtype=bool)
    for e in E_idx:
        row = s.row(e)
        ok = np.zeros(s.size, dtype=bool)
        ok[row >= 0] = inside[row[row >= 0]]
        mask &= ok
    return mask


def find_thick_witness(A: GroundSet, E: Sequence[Element], x_candidates: Iterable[Element] | None = None) -> ThickWitness | None:
    """First ``x`` in canonical order with ``E + x`` inside A."""
    if len(E) == 0:
        raise UsageError("probe set E must be non-empty")
    s = A.semigroup
    E = tuple(s.coerce(e) for e in E)
    mask = _thick_mask(s, A.mask, [s.index(e) for e in E]) & candidate_mask(s, x_candidates)
    if not mask.any():
        return None
    return ThickWitness(E, s.element(int(np.argmax(mask))))


def find_pws_witness(
    A: GroundSet,
    max_card: int,
    E: Sequence[Element],
    shifts: Iterable[Element] | None = None,
    *,
    force: bool = False,
) -> PwsWitness | None:
    """``F`` (|F| ascending, then lexicographic) whose shifted union contains ``E + x``."""
    if max_card < 1:
        raise UsageError("max_card must be >= 1")
    if len(E) == 0:
        raise UsageError("probe set E must be non-empty")
    s = A.semigroup
    if not A.mask.any():
        return None
    E = tuple(s.coerce(e) for e in E)
    E_idx = [s.index(e) for e in E]
    cands = [int(t) for t in np.flatnonzero(candidate_mask(s, shifts))]
    check_guard(sum(comb(len(cands), k) for k in range(1, max_card + 1)), "pws shift sets", force=force)
    pre = {t: preimage_mask(A, t) for t in cands}
    for size in range(1, max_card + 1):
        for F in combinations(cands, size):
            union = np.zeros(s.size, dtype=bool)
            for t in F:
                union |= pre[t]
            xs = _thick_mask(s, union, E_idx)
            if xs.any():
                inner = ThickWitness(E, s.element(int(np.argmax(xs))))
                return PwsWitness(tuple(s.element(t) for t in F), inner)
    return None


def max_gap(A: GroundSet) -> int | None:
    """Largest distance between consecutive members (windows only)."""
    idx = A.indices()
    if idx.size < 2:
        return None
    return int(np.diff(idx).max())
