"""Concrete commutative semigroups, elements, ground sets and translations.

Three variants are supported:

* :class:`FiniteTable` -- an addition table over the indices ``0..m-1``;
* :class:`NatWindow` -- the integers ``lo..hi`` with addition defined only
  while the sum stays inside the window;
* :class:`Product` -- componentwise addition on pairs.

Every variant enumerates its universe in a canonical order (index order,
integer order, lexicographic pairs) and exposes ``row(i)``: the indices of
``x_i + y`` for all ``y``, with ``-1`` marking an undefined sum.  The search
kernels in the other modules work on these index rows; the validators work on
:meth:`Semigroup.add` directly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Iterable, Iterator

import numpy as np

from .errors import StructuralError, UsageError

Element = Any

EXACT_ASSOCIATIVITY_MAX = 64
ASSOCIATIVITY_SAMPLES = 100_000
TABLE_MAX_ORDER = 4096


@dataclass(frozen=True)
class ValidationReport:
    commutativity: tuple[tuple[int, int], ...] = ()
    associativity: tuple[tuple[int, int, int], ...] = ()
    sampled: bool = False

    @property
    def ok(self) -> bool:
        return not self.commutativity and not self.associativity

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "commutativity_violations": [list(v) for v in self.commutativity],
            "associativity_violations": [list(v) for v in self.associativity],
            "associativity_sampled": self.sampled,
        }


class Semigroup:
    """Common interface; see the module docstring."""

    kind: str

    @property
    def size(self) -> int:
        raise NotImplementedError

    @cached_property
    def elements(self) -> tuple:
        return tuple(self.element(i) for i in range(self.size))

    def element(self, i: int) -> Element:
        raise NotImplementedError

    def index(self, x: Element) -> int:
        raise NotImplementedError

    def coerce(self, x: Element) -> Element:
        """Return the canonical form of ``x`` or raise :class:`UsageError`."""
        return self.element(self.index(x))

    def contains(self, x: Element) -> bool:
        try:
            self.index(x)
        except UsageError:
            return False
        return True

    def add(self, x: Element, y: Element) -> Element | None:
        raise NotImplementedError

    def row(self, i: int) -> np.ndarray:
        raise NotImplementedError

    @property
    def is_total(self) -> bool:
        """True when addition is defined everywhere (no window factor)."""
        raise NotImplementedError

    @property
    def is_finite_table(self) -> bool:
        """True for finite total structures where universal checks are exact."""
        return self.is_total

    @cached_property
    def table(self) -> np.ndarray:
        if self.size > TABLE_MAX_ORDER:
            raise UsageError(f"addition table of order {self.size} exceeds {TABLE_MAX_ORDER}")
        return np.stack([self.row(i) for i in range(self.size)]) if self.size else np.zeros((0, 0), dtype=np.int64)

    @cached_property
    def report(self) -> ValidationReport:
        return ValidationReport()

    def to_json(self) -> dict:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError

    def element_to_json(self, x: Element) -> Any:
        return x

    def element_from_json(self, raw: Any) -> Element:
        return self.coerce(raw)


def _check_int(x: Any) -> int:
    if isinstance(x, (bool, np.bool_)) or not isinstance(x, (int, np.integer)):
        raise UsageError(f"{x!r} is not an integer element")
    return int(x)


@dataclass(frozen=True, eq=True)
class FiniteTable(Semigroup):
    rows: tuple[tuple[int, ...], ...]
    kind: str = field(default="finite_table", init=False, repr=False)

    def __post_init__(self):
        try:
            rows = tuple(tuple(int(v) for v in r) for r in self.rows)
        except (TypeError, ValueError) as exc:
            raise StructuralError(f"table rows must be integer lists: {exc}") from None
        m = len(rows)
        if m == 0:
            raise StructuralError("table must have at least one element")
        for i, r in enumerate(rows):
            if len(r) != m:
                raise StructuralError(f"table is not square: row {i} has {len(r)} entries, expected {m}")
            for j, v in enumerate(r):
                if not 0 <= v < m:
                    raise StructuralError(f"table[{i}][{j}] = {v} is out of range 0..{m - 1}")
        object.__setattr__(self, "rows", rows)

    @property
    def order(self) -> int:
        return len(self.rows)

    @property
    def size(self) -> int:
        return len(self.rows)

    def element(self, i: int) -> int:
        return i

    def index(self, x: Element) -> int:
        x = _check_int(x)
        if not 0 <= x < self.order:
            raise UsageError(f"{x} is not an element of a table of order {self.order}")
        return x

    def add(self, x, y):
        return self.rows[self.index(x)][self.index(y)]

    def row(self, i: int) -> np.ndarray:
        return np.asarray(self.rows[i], dtype=np.int64)

    @cached_property
    def table(self) -> np.ndarray:
        return np.asarray(self.rows, dtype=np.int64)

    @property
    def is_total(self) -> bool:
        return True

    @cached_property
    def report(self) -> ValidationReport:
        return _table_report(self.table)

    @cached_property
    def is_cyclic_group(self) -> bool:
        """True iff the table is exactly ``x + y mod m`` on indices."""
        m = self.order
        idx = np.arange(m)
        return bool(np.array_equal(self.table, (idx[:, None] + idx[None, :]) % m))

    def to_json(self) -> dict:
        return {"kind": "finite_table", "order": self.order, "table": [list(r) for r in self.rows]}

    def describe(self) -> str:
        if self.is_cyclic_group:
            return f"Z_{self.order}"
        return f"finite table of order {self.order}"


def _table_report(table: np.ndarray) -> ValidationReport:
    m = table.shape[0]
    comm = tuple((int(x), int(y)) for x, y in zip(*np.nonzero(table != table.T)) if x < y)
    if m <= EXACT_ASSOCIATIVITY_MAX:
        left = table[table, :]  # left[x, y, z] = table[table[x, y], z]
        right = table[:, table]  # right[x, y, z] = table[x, table[y, z]]
        bad = np.argwhere(left != right)
        assoc = tuple(tuple(int(v) for v in t) for t in bad)
        return ValidationReport(comm, assoc, sampled=False)
    rng = np.random.default_rng(0)
    trip = rng.integers(0, m, size=(ASSOCIATIVITY_SAMPLES, 3))
    x, y, z = trip.T
    bad = np.nonzero(table[table[x, y], z] != table[x, table[y, z]])[0]
    assoc = tuple(sorted({(int(x[k]), int(y[k]), int(z[k])) for k in bad}))
    return ValidationReport(comm, assoc, sampled=True)


@dataclass(frozen=True, eq=True)
class NatWindow(Semigroup):
    """Integers ``lo..hi`` under addition, undefined once a sum exceeds ``hi``."""

    lo: int
    hi: int
    kind: str = field(default="nat_window", init=False, repr=False)

    def __post_init__(self):
        lo, hi = _check_int(self.lo), _check_int(self.hi)
        if lo < 0:
            raise StructuralError(f"window lower bound must be >= 0, got {lo}")
        if hi < lo:
            raise StructuralError(f"empty window [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1

    def element(self, i: int) -> int:
        return self.lo + i

    def index(self, x: Element) -> int:
        x = _check_int(x)
        if not self.lo <= x <= self.hi:
            raise UsageError(f"{x} is outside the window [{self.lo}, {self.hi}]")
        return x - self.lo

    def add(self, x, y):
        total = self.coerce(x) + self.coerce(y)
        return total if total <= self.hi else None

    def row(self, i: int) -> np.ndarray:
        idx = np.arange(self.size, dtype=np.int64) + i + self.lo
        idx[idx >= self.size] = -1
        return idx

    @property
    def is_total(self) -> bool:
        return False

    def to_json(self) -> dict:
        return {"kind": "nat_window", "lo": self.lo, "hi": self.hi}

    def describe(self) -> str:
        return f"N-window [{self.lo}, {self.hi}]"


@dataclass(frozen=True, eq=True)
class Product(Semigroup):
    left: Semigroup
    right: Semigroup
    kind: str = field(default="product", init=False, repr=False)

    @property
    def size(self) -> int:
        return self.left.size * self.right.size

    def element(self, i: int) -> tuple:
        a, b = divmod(i, self.right.size)
        return (self.left.element(a), self.right.element(b))

    def index(self, x: Element) -> int:
        if not isinstance(x, (tuple, list)) or len(x) != 2:
            raise UsageError(f"{x!r} is not a pair")
        return self.left.index(x[0]) * self.right.size + self.right.index(x[1])

    def coerce(self, x: Element) -> tuple:
        if not isinstance(x, (tuple, list)) or len(x) != 2:
            raise UsageError(f"{x!r} is not a pair")
        return (self.left.coerce(x[0]), self.right.coerce(x[1]))

    def add(self, x, y):
        x, y = self.coerce(x), self.coerce(y)
        a = self.left.add(x[0], y[0])
        b = self.right.add(x[1], y[1])
        if a is None or b is None:
            return None
        return (a, b)

    def row(self, i: int) -> np.ndarray:
        a, b = divmod(i, self.right.size)
        ra, rb = self.left.row(a), self.right.row(b)
        out = ra[:, None] * self.right.size + rb[None, :]
        out[(ra < 0)[:, None] | (rb < 0)[None, :]] = -1
        return out.reshape(-1)

    @property
    def is_total(self) -> bool:
        return self.left.is_total and self.right.is_total

    @cached_property
    def report(self) -> ValidationReport:
        lr, rr = self.left.report, self.right.report
        return ValidationReport(
            commutativity=lr.commutativity + rr.commutativity,
            associativity=lr.associativity + rr.associativity,
            sampled=lr.sampled or rr.sampled,
        )

    def to_json(self) -> dict:
        return {"kind": "product", "left": self.left.to_json(), "right": self.right.to_json()}

    def describe(self) -> str:
        return f"({self.left.describe()}) x ({self.right.describe()})"

    def element_to_json(self, x):
        return [self.left.element_to_json(x[0]), self.right.element_to_json(x[1])]

    def element_from_json(self, raw):
        if not isinstance(raw, (list, tuple)) or len(raw) != 2:
            raise StructuralError(f"product element must be a 2-array, got {raw!r}")
        return (self.left.element_from_json(raw[0]), self.right.element_from_json(raw[1]))


def cyclic(m: int) -> FiniteTable:
    """Z_m as a finite table."""
    if m < 1:
        raise StructuralError("cyclic order must be positive")
    return FiniteTable(tuple(tuple((x + y) % m for y in range(m)) for x in range(m)))


def validate_semigroup(s: Semigroup) -> ValidationReport:
    return s.report


def require_valid(s: Semigroup) -> None:
    report = s.report
    if not report.ok:
        raise StructuralError(
            f"{s.describe()} is not a commutative semigroup: "
            f"{len(report.commutativity)} commutativity and "
            f"{len(report.associativity)} associativity violations"
        )


def same_semigroup(a: Semigroup, b: Semigroup) -> None:
    if a is not b and a != b:
        raise UsageError(f"elements from {b.describe()} used with {a.describe()}")


def add(s: Semigroup, x: Element, y: Element) -> Element | None:
    """Semigroup sum, or ``None`` when it leaves a window."""
    return s.add(x, y)


def repeat_add(s: Semigroup, k: int, x: Element) -> Element | None:
    """``x + x + ... + x`` (k terms); ``None`` once a partial sum is undefined."""
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < 1:
        raise UsageError(f"repeat_add needs k >= 1, got {k!r}")
    x = s.coerce(x)
    acc = x
    for _ in range(int(k) - 1):
        acc = s.add(acc, x)
        if acc is None:
            return None
    return acc


class GroundSet:
    """A subset of a semigroup's universe, stored as a boolean mask over indices."""

    def __init__(self, semigroup: Semigroup, members: Iterable[Element] = ()):
        require_valid(semigroup)
        self.semigroup = semigroup
        mask = np.zeros(semigroup.size, dtype=bool)
        for x in members:
            mask[semigroup.index(x)] = True
        mask.flags.writeable = False
        self.mask = mask

    @classmethod
    def from_mask(cls, semigroup: Semigroup, mask: np.ndarray) -> "GroundSet":
        out = cls.__new__(cls)
        require_valid(semigroup)
        out.semigroup = semigroup
        m = np.array(mask, dtype=bool)
        if m.shape != (semigroup.size,):
            raise StructuralError("mask length does not match the universe")
        m.flags.writeable = False
        out.mask = m
        return out

    @classmethod
    def from_predicate(cls, semigroup: Semigroup, pred: Callable[[Element], bool]) -> "GroundSet":
        return cls.from_mask(semigroup, np.fromiter((bool(pred(x)) for x in semigroup.elements), dtype=bool, count=semigroup.size))

    @classmethod
    def universe(cls, semigroup: Semigroup) -> "GroundSet":
        return cls.from_mask(semigroup, np.ones(semigroup.size, dtype=bool))

    def contains(self, x: Element) -> bool:
        if not self.semigroup.contains(x):
            return False
        return bool(self.mask[self.semigroup.index(x)])

    __contains__ = contains

    def observable(self, x: Element) -> bool:
        """Whether membership of ``x`` is conclusive (always, except for truncated pair sets)."""
        return True

    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def members(self) -> list:
        el = self.semigroup.elements
        return [el[i] for i in self.indices()]

    def __iter__(self) -> Iterator:
        return iter(self.members())

    def __len__(self) -> int:
        return int(self.mask.sum())

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroundSet):
            return NotImplemented
        return self.semigroup == other.semigroup and bool(np.array_equal(self.mask, other.mask))

    def __hash__(self):
        return hash((self.semigroup, self.mask.tobytes()))

    def __repr__(self) -> str:
        mem = self.members()
        shown = ", ".join(map(str, mem[:12])) + (", ..." if len(mem) > 12 else "")
        return f"GroundSet({self.semigroup.describe()}, {{{shown}}})"

    def issubset(self, other: "GroundSet") -> bool:
        same_semigroup(self.semigroup, other.semigroup)
        return not bool(np.any(self.mask & ~other.mask))

    def union(self, other: "GroundSet") -> "GroundSet":
        same_semigroup(self.semigroup, other.semigroup)
        return GroundSet.from_mask(self.semigroup, self.mask | other.mask)

    def intersection(self, other: "GroundSet") -> "GroundSet":
        same_semigroup(self.semigroup, other.semigroup)
        return GroundSet.from_mask(self.semigroup, self.mask & other.mask)

    def difference(self, other: "GroundSet") -> "GroundSet":
        same_semigroup(self.semigroup, other.semigroup)
        return GroundSet.from_mask(self.semigroup, self.mask & ~other.mask)

    def members_json(self) -> list:
        return [self.semigroup.element_to_json(x) for x in self.members()]


def preimage_mask(A: GroundSet, t_index: int) -> np.ndarray:
    """Boolean mask of ``{y : t + y in A}`` where ``t`` is given by its index."""
    row = A.semigroup.row(t_index)
    out = np.zeros(A.semigroup.size, dtype=bool)
    ok = row >= 0
    out[ok] = A.mask[row[ok]]
    return out


def preimage_shift(A: GroundSet, t: Element) -> GroundSet:
    """``-t + A = {y : t + y in A}``; on windows ``t + y`` must be defined."""
    return GroundSet.from_mask(A.semigroup, preimage_mask(A, A.semigroup.index(t)))


def translate(A: GroundSet, t: Element) -> GroundSet:
    """``t + A = {t + a : a in A}``, dropping sums that leave a window."""
    s = A.semigroup
    row = s.row(s.index(t))
    mask = np.zeros(s.size, dtype=bool)
    hit = row[A.mask]
    mask[hit[hit >= 0]] = True
    return GroundSet.from_mask(s, mask)


def box_product(A: GroundSet, B: GroundSet) -> GroundSet:
    """``A x B`` inside ``Product(A.semigroup, B.semigroup)``."""
    p = Product(A.semigroup, B.semigroup)
    return GroundSet.from_mask(p, (A.mask[:, None] & B.mask[None, :]).reshape(-1))


def all_subsets(s: Semigroup) -> Iterator[GroundSet]:
    """Every subset of a (small) universe, in mask order."""
    for bits in itertools.product((False, True), repeat=s.size):
        yield GroundSet.from_mask(s, np.array(bits[::-1], dtype=bool))
