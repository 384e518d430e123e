"""J-set and CR-set witness search, exhaustive CR checks and AP extraction.

Search orders are fixed: row/position subsets by popcount then mask value,
elements in the semigroup's canonical order.  The kernels here operate on
element indices and numpy masks; :mod:`largeness.validate` replays results on
a separate path.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import partial
from typing import Iterable, NamedTuple

import numpy as np

from .errors import UnsupportedOperation, UsageError, WindowOverflow
from .matrix import Matrix, subset_masks
from .parallel import check_guard, first_hit
from .semigroup import (
    Element,
    FiniteTable,
    GroundSet,
    NatWindow,
    Semigroup,
    TABLE_MAX_ORDER,
    preimage_mask,
    same_semigroup,
    translate,
)
from .validate import validate_cr_witness
from .witnesses import CrWitness, JWitness, SeqFamily, Verdict


def candidate_mask(s: Semigroup, candidates: Iterable[Element] | None) -> np.ndarray:
    if candidates is None:
        return np.ones(s.size, dtype=bool)
    mask = np.zeros(s.size, dtype=bool)
    for x in candidates:
        mask[s.index(x)] = True
    return mask


def covers_universe(s: Semigroup, candidates: Iterable[Element] | None) -> bool:
    """True when a negative over ``candidates`` is a proven negative on ``s``."""
    return s.is_total and bool(candidate_mask(s, candidates).all())


def index_add(s: Semigroup, a: int, b: int) -> int:
    """Index of ``x_a + x_b`` or -1."""
    if s.size <= TABLE_MAX_ORDER:
        return int(s.table[a, b])
    z = s.add(s.element(a), s.element(b))
    return -1 if z is None else s.index(z)


class _Shifts:
    """Lazily cached ``{y : c + y in A}`` masks keyed by the index of ``c``."""

    def __init__(self, A: GroundSet, candidates: np.ndarray):
        self.A = A
        self.candidates = candidates
        self._cache: dict[int, np.ndarray] = {}

    def __getitem__(self, c: int) -> np.ndarray:
        got = self._cache.get(c)
        if got is None:
            got = preimage_mask(self.A, c)
            self._cache[c] = got
        return got

    def first_common(self, targets: list[int]) -> int | None:
        mask = self.candidates.copy()
        for c in targets:
            mask &= self[c]
            if not mask.any():
                return None
        return int(np.argmax(mask))


def _subset_sums(s: Semigroup, columns: list[list[int]], masks: list[int]) -> dict[int, list[int] | None]:
    """Index-level column sums for every row subset; ``None`` when some sum is undefined."""
    out: dict[int, list[int] | None] = {}
    for mask in sorted(masks):
        low = mask & -mask
        i = low.bit_length() - 1
        rest = mask ^ low
        if rest == 0:
            out[mask] = [col[i] for col in columns]
            continue
        prev = out[rest]
        if prev is None:
            out[mask] = None
            continue
        sums = []
        for col, acc in zip(columns, prev):
            z = index_add(s, acc, col[i])
            if z < 0:
                sums = None
                break
            sums.append(z)
        out[mask] = sums
    return out


def find_cr_witness(A: GroundSet, M: Matrix, s_candidates: Iterable[Element] | None = None) -> CrWitness | None:
    """First ``(alpha, s)`` with ``s + M[alpha, j]`` in A for every column ``j``."""
    s = A.semigroup
    same_semigroup(s, M.semigroup)
    if not A.mask.any():
        return None
    shifts = _Shifts(A, candidate_mask(s, s_candidates))
    columns = [[s.index(M.entries[i][j]) for i in range(M.r)] for j in range(M.n)]
    order = subset_masks(M.r)
    sums = _subset_sums(s, columns, order)
    for alpha in order:
        col = sums[alpha]
        if col is None:
            continue
        hit = shifts.first_common(col)
        if hit is not None:
            return CrWitness(alpha, s.element(hit))
    return None


def find_j_witness(A: GroundSet, family: SeqFamily, a_candidates: Iterable[Element] | None = None) -> JWitness | None:
    """First ``(a, H)`` with ``a + sum_{n in H} f(n)`` in A for every sequence ``f``."""
    s = A.semigroup
    same_semigroup(s, family.semigroup)
    if not A.mask.any():
        return None
    shifts = _Shifts(A, candidate_mask(s, a_candidates))
    # positions play the role of rows, sequences the role of columns
    columns = [[s.index(x) for x in f] for f in family.sequences]
    order = subset_masks(family.horizon)
    sums = _subset_sums(s, columns, order)
    for H in order:
        col = sums[H]
        if col is None:
            continue
        hit = shifts.first_common(col)
        if hit is not None:
            return JWitness(s.element(hit), H)
    return None


def _digits(idx: np.ndarray, m: int, width: int) -> np.ndarray:
    out = np.empty((idx.shape[0], width), dtype=np.int64)
    rest = idx.copy()
    for k in range(width - 1, -1, -1):
        out[:, k] = rest % m
        rest //= m
    return out


def _cr_scan(table: np.ndarray, hits: np.ndarray, r: int, n: int, start: int, stop: int) -> int | None:
    """Least matrix index in ``[start, stop)`` admitting no CR witness.

    ``hits[c, x]`` is True when ``x + c`` lies in A; matrix ``k`` has its
    entries as the base-``m`` digits of ``k``, row-major, most significant first.
    """
    m = table.shape[0]
    ent = _digits(np.arange(start, stop, dtype=np.int64), m, r * n).reshape(-1, r, n)
    good = np.zeros(stop - start, dtype=bool)
    sums: dict[int, np.ndarray] = {}
    for mask in range(1, 1 << r):
        low = mask & -mask
        i = low.bit_length() - 1
        rest = mask ^ low
        sums[mask] = ent[:, i, :] if rest == 0 else table[sums[rest], ent[:, i, :]]
        ok = hits[sums[mask][:, 0]]
        for j in range(1, n):
            ok &= hits[sums[mask][:, j]]
        good |= ok.any(axis=1)
    bad = np.flatnonzero(~good)
    return int(start + bad[0]) if bad.size else None


def _matrix_from_index(s: Semigroup, k: int, r: int, n: int) -> Matrix:
    d = _digits(np.array([k], dtype=np.int64), s.size, r * n)[0]
    return Matrix(s, tuple(tuple(s.element(int(d[i * n + j])) for j in range(n)) for i in range(r)))


def check_cr_full(A: GroundSet, n: int, r: int, *, force: bool = False, workers: int = 1) -> Verdict:
    """Whether every ``r x n`` matrix over a finite semigroup has a CR witness in A.

    Matrices are enumerated in lexicographic entry order; the reported
    counterexample is the least one whatever the worker count.
    """
    s = A.semigroup
    if not s.is_total:
        raise UnsupportedOperation(f"universal CR check needs a finite total semigroup, got {s.describe()}")
    if n < 1 or r < 1:
        raise UsageError("n and r must be positive")
    m = s.size
    total = m ** (r * n)
    check_guard(total, f"{m}^({r}*{n}) matrices", force=force)
    if total >= 2**62:
        raise UsageError("enumeration index overflows 64 bits")
    table = s.table
    hits = A.mask[table]  # hits[c, x] = (c + x in A)
    scan = partial(_cr_scan, table, hits, r, n)
    bad = first_hit(scan, total, workers=workers)
    if bad is None:
        return Verdict(True, checked=total)
    return Verdict(False, counterexample=_matrix_from_index(s, bad, r, n), checked=bad + 1)


def cr_degree(A: GroundSet, n: int, r_max: int, *, force: bool = False, workers: int = 1) -> int | None:
    """Least ``r <= r_max`` for which :func:`check_cr_full` holds, else ``None``.

    Holding at ``r`` implies holding at ``r + 1`` (choose ``alpha`` inside the
    first ``r`` rows), so the ascending scan stops at the first success.
    """
    for r in range(1, r_max + 1):
        if check_cr_full(A, n, r, force=force, workers=workers).holds:
            return r
    return None


class ArithmeticProgression(NamedTuple):
    s: Element
    d: int
    terms: list
    witness: CrWitness


def generator_matrix(s: Semigroup, n: int, r: int) -> Matrix:
    """The ``r x n`` matrix whose every row is ``(1, 2, ..., n)``."""
    if n < 1 or r < 1:
        raise UsageError("n and r must be positive")
    if isinstance(s, NatWindow):
        if not s.lo <= 1 or n > s.hi:
            raise UsageError(f"generators 1..{n} do not fit in {s.describe()}")
        row = tuple(range(1, n + 1))
    elif isinstance(s, FiniteTable) and s.is_cyclic_group:
        row = tuple(j % s.order for j in range(1, n + 1))
    else:
        raise UsageError("AP extraction needs an N-window or a cyclic group Z_m")
    return Matrix(s, (row,) * r)


def extract_ap(A: GroundSet, n: int, r: int, s_candidates: Iterable[Element] | None = None) -> ArithmeticProgression | None:
    """An n-term progression ``s + d, ..., s + n d`` inside A with ``d = |alpha|``."""
    s = A.semigroup
    M = generator_matrix(s, n, r)
    w = find_cr_witness(A, M, s_candidates)
    if w is None:
        return None
    terms = []
    for j in range(n):
        col = None
        for i in w.rows:
            col = M.entries[i - 1][j] if col is None else s.add(col, M.entries[i - 1][j])
        terms.append(s.add(w.s, col))
    return ArithmeticProgression(w.s, w.size, terms, w)


def translate_witness(w: CrWitness, t: Element, M: Matrix, A: GroundSet) -> CrWitness:
    """Move a witness for ``(M, A)`` to ``(M, t + A)`` by shifting ``s`` to ``t + s``."""
    s = A.semigroup
    if not validate_cr_witness(A, M, w):
        raise UsageError("witness does not validate for the given matrix and set")
    shifted = s.add(t, w.s)
    if shifted is None:
        raise WindowOverflow(f"{t} + {w.s} leaves {s.describe()}", location=("s",))
    out = CrWitness(w.alpha, shifted)
    if not validate_cr_witness(translate(A, t), M, out):
        raise WindowOverflow(f"translating by {t} pushes a column sum out of {s.describe()}", location=("column",))
    return out
