"""Witness replay by direct membership arithmetic.

Nothing here touches the index tables or bit masks the searchers use: every
check walks :meth:`Semigroup.add` and :meth:`GroundSet.contains` element by
element, so a searcher bug cannot hide behind a shared helper.
"""

from __future__ import annotations

from .matrix import Matrix
from .semigroup import Element, GroundSet, Semigroup
from .witnesses import CrWitness, JWitness, PwsWitness, SeqFamily, SyndeticWitness, ThickWitness


def _subset_sum(s: Semigroup, terms: list) -> Element | None:
    total = terms[0]
    for x in terms[1:]:
        total = s.add(total, x)
        if total is None:
            return None
    return total


def _lands(A: GroundSet, shift: Element, value: Element | None) -> bool:
    if value is None:
        return False
    z = A.semigroup.add(shift, value)
    return z is not None and A.contains(z)


def validate_cr_witness(A: GroundSet, M: Matrix, w: CrWitness) -> bool:
    s = A.semigroup
    if s != M.semigroup or not s.contains(w.s) or w.alpha <= 0 or w.alpha >> M.r:
        return False
    chosen = [i for i in range(M.r) if w.alpha >> i & 1]
    for j in range(M.n):
        col = _subset_sum(s, [M.entries[i][j] for i in chosen])
        if not _lands(A, w.s, col):
            return False
    return True


def validate_j_witness(A: GroundSet, family: SeqFamily, w: JWitness) -> bool:
    s = A.semigroup
    if not s.contains(w.a) or w.H <= 0 or w.H >> family.horizon:
        return False
    chosen = [n for n in range(family.horizon) if w.H >> n & 1]
    for f in family.sequences:
        if not _lands(A, w.a, _subset_sum(s, [f[n] for n in chosen])):
            return False
    return True


def validate_syndetic(A: GroundSet, w: SyndeticWitness) -> bool:
    s = A.semigroup
    if not w.F:
        return False
    if s.is_total and set(w.target) != set(s.elements):
        return False
    for y in w.target:
        if not any(_lands(A, t, y) for t in w.F):
            return False
    return True


def validate_thick(A: GroundSet, w: ThickWitness) -> bool:
    s = A.semigroup
    return s.contains(w.x) and all(_lands(A, e, w.x) for e in w.E)


def validate_pws(A: GroundSet, w: PwsWitness) -> bool:
    s = A.semigroup

    def in_union(y):
        return y is not None and any(_lands(A, t, y) for t in w.F)

    if not w.F or not s.contains(w.inner.x):
        return False
    return all(in_union(s.add(e, w.inner.x)) for e in w.inner.E)
