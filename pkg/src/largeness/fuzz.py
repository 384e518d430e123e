"""Seeded random instances and soundness sweeps.

Every sweep returns a :class:`FuzzTally`; a searcher result that fails its
validator lands in ``failures`` with enough context to reproduce it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .chains import ChainCertificate, complete_shifts, lift_chain, validate_chain
from .checks import find_pws_witness, find_syndetic_witness, find_thick_witness
from .lift import ap_pair_set, build_lifted_matrix, lift_witness
from .matrix import Matrix, PairMatrix
from .search import find_cr_witness, find_j_witness, translate_witness
from .semigroup import FiniteTable, GroundSet, NatWindow, Product, Semigroup, cyclic, translate
from .validate import (
    validate_cr_witness,
    validate_j_witness,
    validate_pws,
    validate_syndetic,
    validate_thick,
)
from .witnesses import SeqFamily

DEFAULT_SEED = 20240101


@dataclass
class FuzzTally:
    name: str
    instances: int = 0
    emitted: int = 0
    passed: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.passed == self.emitted and not self.failures

    def record(self, ok: bool, context) -> None:
        self.emitted += 1
        if ok:
            self.passed += 1
        else:
            self.failures.append(context)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "instances": self.instances,
            "witnesses": self.emitted,
            "validated": self.passed,
            "pass_rate": (self.passed / self.emitted) if self.emitted else 1.0,
            "failures": [repr(f) for f in self.failures[:10]],
        }


def capped(m: int) -> FiniteTable:
    """``min(x + y, m - 1)`` on ``0..m-1``."""
    return FiniteTable(tuple(tuple(min(x + y, m - 1) for y in range(m)) for x in range(m)))


def semilattice(m: int) -> FiniteTable:
    """``max(x, y)`` on ``0..m-1``."""
    return FiniteTable(tuple(tuple(max(x, y) for y in range(m)) for x in range(m)))


def as_table(s: Semigroup) -> FiniteTable:
    return FiniteTable(tuple(tuple(int(v) for v in row) for row in s.table))


def random_finite_semigroup(rng: np.random.Generator, max_order: int = 8) -> FiniteTable:
    kind = rng.integers(0, 4)
    if kind == 3:
        a = int(rng.integers(2, 3))
        b = int(rng.integers(2, max(3, max_order // a + 1)))
        return as_table(Product(cyclic(a), cyclic(b)))
    m = int(rng.integers(2, max_order + 1))
    return (cyclic, capped, semilattice)[kind](m)


def random_set(rng: np.random.Generator, s: Semigroup, min_frac: float = 0.0) -> GroundSet:
    size = s.size
    lo = int(np.ceil(min_frac * size))
    k = int(rng.integers(lo, size + 1))
    picked = rng.choice(size, size=k, replace=False)
    mask = np.zeros(size, dtype=bool)
    mask[picked] = True
    return GroundSet.from_mask(s, mask)


def random_matrix(rng: np.random.Generator, s: Semigroup, r: int, n: int, pool: int | None = None) -> Matrix:
    top = s.size if pool is None else min(pool, s.size)
    idx = rng.integers(0, top, size=(r, n))
    return Matrix(s, tuple(tuple(s.element(int(i)) for i in row) for row in idx))


def random_pair_matrix(rng: np.random.Generator, S: Semigroup, r: int, n: int) -> PairMatrix:
    M1, M2 = random_matrix(rng, S, r, n), random_matrix(rng, S, r, n)
    return PairMatrix.from_components(M1, M2)


def random_chain(rng: np.random.Generator, s: Semigroup, length: int) -> ChainCertificate:
    """A decreasing chain with shifts completed by search (may still be invalid)."""
    levels = [random_set(rng, s, 0.3)]
    for _ in range(length - 1):
        prev = levels[-1].mask
        keep = prev & (rng.random(s.size) < 0.6)
        levels.append(GroundSet.from_mask(s, keep))
    return complete_shifts(ChainCertificate(s, tuple(levels)))


def _subgroup_chain(rng: np.random.Generator, m: int, length: int) -> ChainCertificate:
    divisors = [d for d in range(1, m + 1) if m % d == 0]
    chain, d = [], 1
    for _ in range(length):
        chain.append(d)
        bigger = [e for e in divisors if e % d == 0 and e > d]
        if bigger and rng.random() < 0.7:
            d = int(rng.choice(bigger))
    s = cyclic(m)
    levels = tuple(GroundSet(s, [x for x in range(m) if x % step == 0]) for step in chain)
    return complete_shifts(ChainCertificate(s, levels))


def random_valid_chain(rng: np.random.Generator, max_order: int = 8, max_length: int = 4) -> ChainCertificate:
    """A chain certificate whose decrease and shift conditions hold exactly."""
    while True:
        length = int(rng.integers(1, max_length + 1))
        if rng.random() < 0.3:
            cert = _subgroup_chain(rng, int(rng.integers(2, max_order + 1)), length)
        else:
            cert = random_chain(rng, random_finite_semigroup(rng, max_order), length)
        report = validate_chain(cert, GroundSet.universe(cert.semigroup))
        if report.structural_ok:
            return cert


def fuzz_transfer(seed: int = DEFAULT_SEED, count: int = 500) -> FuzzTally:
    """Lifted witnesses over Z_m, m in 4..12, r <= 4, n <= 3, L <= 3."""
    rng = np.random.default_rng(seed)
    tally = FuzzTally("transfer")
    for _ in range(count):
        m = int(rng.integers(4, 13))
        S = cyclic(m)
        A = random_set(rng, S, 1 / 3)
        r, n, L = (int(rng.integers(1, 5)), int(rng.integers(1, 4)), int(rng.integers(1, 4)))
        Mp = random_pair_matrix(rng, S, r, n)
        s = int(rng.integers(0, m))
        tally.instances += 1
        base = find_cr_witness(A, build_lifted_matrix(Mp, s, L))
        if base is None:
            continue
        pair = lift_witness(Mp, s, L, base, A)
        tally.record(validate_cr_witness(ap_pair_set(A, L), Mp, pair), (m, A.members(), Mp.entries, s, L, base))
    return tally


def _random_universe(rng: np.random.Generator) -> Semigroup:
    kind = rng.integers(0, 4)
    if kind == 0:
        return cyclic(int(rng.integers(2, 13)))
    if kind == 1:
        return random_finite_semigroup(rng)
    if kind == 2:
        lo = int(rng.integers(0, 2))
        return NatWindow(lo, int(rng.integers(lo + 8, 60)))
    return Product(cyclic(int(rng.integers(2, 5))), cyclic(int(rng.integers(2, 5))))


def fuzz_witnesses(seed: int = DEFAULT_SEED, count: int = 1000) -> FuzzTally:
    """Every searcher, every semigroup class, every witness replayed."""
    rng = np.random.default_rng(seed)
    tally = FuzzTally("witness")
    searchers: list[Callable] = [_try_syndetic, _try_thick, _try_pws, _try_j, _try_cr]
    for i in range(count):
        s = _random_universe(rng)
        A = random_set(rng, s, float(rng.choice([0.3, 0.6, 0.9])))
        tally.instances += 1
        searchers[i % len(searchers)](rng, s, A, tally)
    return tally


def _probe(rng, s, k):
    return [s.element(int(i)) for i in rng.choice(s.size, size=min(k, s.size), replace=False)]


def _try_syndetic(rng, s, A, tally):
    w = find_syndetic_witness(A, int(rng.integers(1, 5)))
    if w is not None:
        tally.record(validate_syndetic(A, w), ("syndetic", s, A.members(), w))


def _try_thick(rng, s, A, tally):
    E = _probe(rng, s, int(rng.integers(1, 4)))
    w = find_thick_witness(A, E)
    if w is not None:
        tally.record(validate_thick(A, w), ("thick", s, A.members(), w))


def _try_pws(rng, s, A, tally):
    E = _probe(rng, s, int(rng.integers(1, 4)))
    w = find_pws_witness(A, int(rng.integers(1, 3)), E)
    if w is not None:
        tally.record(validate_pws(A, w), ("pws", s, A.members(), w))


def _try_j(rng, s, A, tally):
    horizon = int(rng.integers(1, 6))
    fam = SeqFamily(s, tuple(
        tuple(random_matrix(rng, s, 1, horizon, pool=6).entries[0]) for _ in range(int(rng.integers(1, 4)))
    ))
    w = find_j_witness(A, fam)
    if w is not None:
        tally.record(validate_j_witness(A, fam, w), ("j", s, A.members(), fam.sequences, w))


def _try_cr(rng, s, A, tally):
    M = random_matrix(rng, s, int(rng.integers(1, 5)), int(rng.integers(1, 4)), pool=8)
    w = find_cr_witness(A, M)
    if w is not None:
        tally.record(validate_cr_witness(A, M, w), ("cr", s, A.members(), M.entries, w))


def fuzz_chains(seed: int = DEFAULT_SEED, count: int = 100) -> FuzzTally:
    """Valid chains over finite semigroups (m <= 8, length <= 4) lifted with L <= 2."""
    rng = np.random.default_rng(seed)
    tally = FuzzTally("chain")
    for _ in range(count):
        cert = random_valid_chain(rng)
        L = int(rng.integers(1, 3))
        lifted = lift_chain(cert, L)
        B = ap_pair_set(cert.sets[0], L)
        report = validate_chain(lifted.certificate, B)
        tally.instances += 1
        tally.record(lifted.ok and report.structural_ok, (cert.to_json(), L))
    return tally


def fuzz_translate(seed: int = DEFAULT_SEED, count: int = 200) -> FuzzTally:
    """Witnesses on Z_m moved by a random translation and replayed against ``t + A``."""
    rng = np.random.default_rng(seed)
    tally = FuzzTally("translate")
    while tally.emitted < count:
        m = int(rng.integers(2, 13))
        S = cyclic(m)
        A = random_set(rng, S, 0.3)
        M = random_matrix(rng, S, int(rng.integers(1, 5)), int(rng.integers(1, 4)))
        w = find_cr_witness(A, M)
        tally.instances += 1
        if w is None:
            continue
        t = int(rng.integers(0, m))
        moved = translate_witness(w, t, M, A)
        tally.record(validate_cr_witness(translate(A, t), M, moved), (m, A.members(), M.entries, w, t))
    return tally


SWEEPS = {
    "witness": fuzz_witnesses,
    "transfer": fuzz_transfer,
    "chain": fuzz_chains,
    "translate": fuzz_translate,
}
