"""Lifting CR witnesses from a set A to its set of progression pairs.

Given a pair matrix ``M' = (M1, M2)`` over ``S x S``, a free element ``s``
and a step count ``L``, the lifted matrix over ``S`` is the concatenation of
the blocks ``M1 + k (s + M2)`` for ``k = 0..L``.  A CR witness ``(alpha, a)``
for the lifted matrix and A turns into the witness
``(alpha, (a, |alpha| s))`` for ``M'`` and the pair set
``{(a, b) : a, a + b, ..., a + L b all in A}``.

``L`` counts steps, so ``L + 1`` blocks certify the ``L + 1``-term
progression ``a, ..., a + L b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import UsageError, WindowOverflow
from .matrix import Matrix, PairMatrix, concat
from .search import candidate_mask, find_cr_witness
from .semigroup import Element, GroundSet, NatWindow, Product, Semigroup, repeat_add, same_semigroup
from .validate import validate_cr_witness
from .witnesses import CrWitness


class TruncatedPairSet(GroundSet):
    """Pairs ``(a, b)`` over a box where non-membership is conclusive only if ``a + L b`` exists."""

    steps: int
    base: Semigroup

    @classmethod
    def from_members(cls, box: Product, members: Iterable, steps: int) -> "TruncatedPairSet":
        out = cls(box, members)
        out.steps = steps
        out.base = box.left
        return out

    def observable(self, x) -> bool:
        if self.base.is_total:
            return True
        a, b = x
        mult = repeat_add(self.base, self.steps, b)
        return mult is not None and self.base.add(a, mult) is not None


def _check_box(S: Semigroup, box: Product | None) -> Product:
    if box is None:
        return Product(S, S)
    if not isinstance(box, Product):
        raise UsageError("box must be a product semigroup")
    for factor in (box.left, box.right):
        if factor == S:
            continue
        if isinstance(factor, NatWindow) and isinstance(S, NatWindow) and S.lo <= factor.lo and factor.hi <= S.hi:
            continue
        raise UsageError(f"box factor {factor.describe()} is not inside {S.describe()}")
    return box


def ap_pair_set(A: GroundSet, L: int, box: Product | None = None) -> TruncatedPairSet:
    """``{(a, b) in box : a, a + b, ..., a + L b all defined and in A}``."""
    if L < 1:
        raise UsageError("steps L must be >= 1")
    S = A.semigroup
    box = _check_box(S, box)
    left = np.array([S.index(a) for a in box.left.elements], dtype=np.int64)
    mask = np.zeros((box.left.size, box.right.size), dtype=bool)
    for jb, b in enumerate(box.right.elements):
        row = S.row(S.index(b))
        cur = left.copy()
        ok = A.mask[cur]
        for _ in range(L):
            cur = np.where(cur >= 0, row[np.maximum(cur, 0)], -1)
            ok &= cur >= 0
            ok &= A.mask[np.maximum(cur, 0)]
        mask[:, jb] = ok
    out = TruncatedPairSet.from_mask(box, mask.reshape(-1))
    out.steps = L
    out.base = S
    return out


def build_lifted_matrix(Mp: PairMatrix, s: Element, L: int) -> Matrix:
    """Concatenate ``M1 + k (s + M2)`` for ``k = 0..L``; ``r x (L + 1) n`` over S."""
    if L < 1:
        raise UsageError("steps L must be >= 1")
    S = Mp.base
    s = S.coerce(s)
    M1, M2 = Mp.components()
    blocks, bad = [M1], []
    for k in range(1, L + 1):
        rows = []
        for i in range(Mp.r):
            row = []
            for j in range(Mp.n):
                step = S.add(s, M2.entries[i][j])
                mult = None if step is None else repeat_add(S, k, step)
                entry = None if mult is None else S.add(M1.entries[i][j], mult)
                if entry is None:
                    bad.append((i, j, k))
                    entry = M1.entries[i][j]
                row.append(entry)
            rows.append(tuple(row))
        blocks.append(Matrix(S, tuple(rows)))
    if bad:
        raise WindowOverflow(f"lifted entries leave {S.describe()} at (row, col, k) = {bad}", location=bad)
    return concat(*blocks)


def progression_terms(S: Semigroup, start: Element, step: Element, L: int) -> list:
    """``start + k step`` for ``k = 0..L``; ``None`` for terms that are undefined."""
    out = [start]
    for k in range(1, L + 1):
        mult = repeat_add(S, k, step)
        out.append(None if mult is None else S.add(start, mult))
    return out


@dataclass(frozen=True)
class Membership:
    column: int
    k: int
    value: Element


def certified_memberships(A: GroundSet, Mp: PairMatrix, L: int, w: CrWitness) -> list[Membership]:
    """Every ``a' + k b'`` implied by a pair witness, or raise if one is outside A."""
    S = A.semigroup
    shift = Mp.semigroup.coerce(w.s)
    out = []
    chosen = [i for i in range(Mp.r) if w.alpha >> i & 1]
    for j in range(Mp.n):
        col = shift
        for i in chosen:
            col = Mp.semigroup.add(col, Mp.entries[i][j])
            if col is None:
                raise WindowOverflow(f"pair column sum {j} leaves the box", location=(j,))
        for k, term in enumerate(progression_terms(S, col[0], col[1], L)):
            if term is None or not A.contains(term):
                raise UsageError(f"column {j}, k = {k}: term {term} is not in A")
            out.append(Membership(j, k, term))
    return out


def lift_witness(Mp: PairMatrix, s: Element, L: int, base: CrWitness, A: GroundSet) -> CrWitness:
    """Turn ``(alpha, a)`` for the lifted matrix into ``(alpha, (a, |alpha| s))`` for ``Mp``."""
    S = A.semigroup
    same_semigroup(S, Mp.base)
    lifted = build_lifted_matrix(Mp, s, L)
    if not validate_cr_witness(A, lifted, base):
        n = Mp.n
        for col in range(lifted.n):
            if not validate_cr_witness(A, Matrix(S, tuple((row[col],) for row in lifted.entries)), base):
                raise UsageError(f"base witness fails at column j = {col % n}, block k = {col // n}")
        raise UsageError("base witness is invalid")
    second = repeat_add(S, base.size, s)
    if second is None:
        raise WindowOverflow(f"{base.size} * {s} leaves {S.describe()}", location=("|alpha| s",))
    out = CrWitness(base.alpha, (S.coerce(base.s), second))
    certified_memberships(A, Mp, L, out)
    return out


@dataclass(frozen=True)
class LiftOutcome:
    s: Element
    lifted: Matrix
    base: CrWitness
    pair: CrWitness
    pair_set: TruncatedPairSet
    validated: bool


def lift_end_to_end(
    A: GroundSet,
    Mp: PairMatrix,
    L: int,
    s_candidates: Iterable[Element] | None = None,
    base_s_candidates: Iterable[Element] | None = None,
    box: Product | None = None,
) -> LiftOutcome | None:
    """First ``s`` (canonical order) whose lifted matrix has a base witness, lifted and checked.

    Values of ``s`` whose lifted matrix leaves a window are skipped.
    """
    S = A.semigroup
    same_semigroup(S, Mp.base)
    pair_set = ap_pair_set(A, L, box)
    base_cands = None if base_s_candidates is None else list(base_s_candidates)
    sweep = np.flatnonzero(candidate_mask(S, s_candidates))
    for idx in sweep:
        s = S.element(int(idx))
        try:
            lifted = build_lifted_matrix(Mp, s, L)
        except WindowOverflow:
            continue
        base = find_cr_witness(A, lifted, base_cands)
        if base is None:
            continue
        pair = lift_witness(Mp, s, L, base, A)
        target = Mp if pair_set.semigroup == Mp.semigroup else PairMatrix(pair_set.semigroup, Mp.entries)
        ok = validate_cr_witness(pair_set, target, pair)
        return LiftOutcome(s, lifted, base, pair, pair_set, ok)
    return None
