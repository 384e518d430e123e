"""Matrices over a semigroup, column sums over row subsets, concatenation.

Rows and columns are 0-based in the Python API.  A row subset ``alpha`` is an
``int`` bit mask (bit ``i`` selects row ``i``); :func:`mask_rows` gives the
1-based row list used in JSON output.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import StructuralError, UsageError
from .semigroup import Element, Product, Semigroup, same_semigroup


def mask_rows(mask: int) -> list[int]:
    """1-based positions of the set bits of ``mask``."""
    out, i = [], 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def rows_mask(rows: Iterable[int]) -> int:
    """Inverse of :func:`mask_rows`."""
    mask = 0
    for i in rows:
        if i < 1:
            raise UsageError(f"row positions are 1-based, got {i}")
        mask |= 1 << (i - 1)
    return mask


def subset_masks(width: int) -> list[int]:
    """Non-empty subsets of ``width`` positions, by popcount then mask value."""
    return sorted(range(1, 1 << width), key=lambda m: (bin(m).count("1"), m))


@dataclass(frozen=True)
class Matrix:
    semigroup: Semigroup
    entries: tuple[tuple[Element, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(self.semigroup.coerce(x) for x in row) for row in self.entries)
        if not rows or not rows[0]:
            raise UsageError("a matrix needs at least one row and one column")
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise StructuralError("matrix rows have different lengths")
        object.__setattr__(self, "entries", rows)

    @property
    def r(self) -> int:
        return len(self.entries)

    @property
    def n(self) -> int:
        return len(self.entries[0])

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.entries)

    def to_json(self) -> dict:
        el = self.semigroup.element_to_json
        return {
            "semigroup": self.semigroup.to_json(),
            "rows": self.r,
            "cols": self.n,
            "entries": [[el(x) for x in row] for row in self.entries],
        }


def row_sum(M: Matrix, alpha: int, j: int) -> Element | None:
    """Sum of column ``j`` over the rows in ``alpha``, accumulated top to bottom."""
    if alpha <= 0:
        raise UsageError("row subset must be non-empty")
    if alpha >> M.r:
        raise UsageError(f"row subset {mask_rows(alpha)} exceeds {M.r} rows")
    if not 0 <= j < M.n:
        raise UsageError(f"column {j} out of range 0..{M.n - 1}")
    s = M.semigroup
    acc = None
    for i in range(M.r):
        if alpha >> i & 1:
            acc = M.entries[i][j] if acc is None else s.add(acc, M.entries[i][j])
            if acc is None:
                return None
    return acc


def concat(*matrices: Matrix) -> Matrix:
    """Side-by-side join of equal-height matrices over one semigroup."""
    if not matrices:
        raise UsageError("concat needs at least one matrix")
    first = matrices[0]
    for M in matrices[1:]:
        same_semigroup(first.semigroup, M.semigroup)
        if M.r != first.r:
            raise UsageError(f"row-count mismatch: {first.r} vs {M.r}")
    entries = tuple(
        tuple(x for M in matrices for x in M.entries[i]) for i in range(first.r)
    )
    return Matrix(first.semigroup, entries)


class PairMatrix(Matrix):
    """A matrix over ``S x S``, decomposable into first and second coordinates."""

    def __post_init__(self):
        if not isinstance(self.semigroup, Product) or self.semigroup.left != self.semigroup.right:
            raise UsageError("a pair matrix lives over a product S x S")
        super().__post_init__()

    @property
    def base(self) -> Semigroup:
        return self.semigroup.left

    def components(self) -> tuple[Matrix, Matrix]:
        first = tuple(tuple(x[0] for x in row) for row in self.entries)
        second = tuple(tuple(x[1] for x in row) for row in self.entries)
        return Matrix(self.base, first), Matrix(self.base, second)

    @classmethod
    def from_components(cls, first: Matrix, second: Matrix) -> "PairMatrix":
        same_semigroup(first.semigroup, second.semigroup)
        if (first.r, first.n) != (second.r, second.n):
            raise UsageError("component matrices must have equal shapes")
        entries = tuple(
            tuple(zip(r1, r2)) for r1, r2 in zip(first.entries, second.entries)
        )
        return cls(Product(first.semigroup, first.semigroup), entries)


def matrix_from_rows(semigroup: Semigroup, rows: Sequence[Sequence[Element]]) -> Matrix:
    return Matrix(semigroup, tuple(tuple(r) for r in rows))
