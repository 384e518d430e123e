"""Decreasing-chain certificates for essential CR-sets, and their lift to pair sets.

A certificate is a finite chain ``C_1 >= C_2 >= ... >= C_N`` inside A with a
shift map ``(n, x) -> m`` claiming ``C_m`` is contained in ``-x + C_n`` for
every ``x`` in ``C_n``.  Chain positions ``n`` and ``m`` are 1-based.

On windows, ``-x + C_n`` is only observable where ``x + y`` is defined (and,
for truncated pair sets, where the whole progression stays in the window);
inclusions are checked on that part and the report counts what was skipped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import UsageError
from .lift import TruncatedPairSet, ap_pair_set
from .matrix import Matrix
from .search import check_cr_full, find_cr_witness
from .semigroup import Element, GroundSet, Product, Semigroup, same_semigroup


@dataclass(frozen=True)
class ChainCertificate:
    semigroup: Semigroup
    sets: tuple[GroundSet, ...]
    shift_map: dict = field(default_factory=dict)
    cr_params: dict | None = None

    def __post_init__(self):
        if not self.sets:
            raise UsageError("a chain needs at least one set")
        for C in self.sets:
            same_semigroup(self.semigroup, C.semigroup)
        object.__setattr__(self, "sets", tuple(self.sets))

    @property
    def length(self) -> int:
        return len(self.sets)

    def level(self, n: int) -> GroundSet:
        return self.sets[n - 1]

    def to_json(self) -> dict:
        el = self.semigroup.element_to_json
        out = {
            "semigroup": self.semigroup.to_json(),
            "sets": [C.members_json() for C in self.sets],
            "shift_map": [
                {"n": n, "x": el(x), "m": m}
                for (n, x), m in sorted(self.shift_map.items(), key=lambda kv: (kv[0][0], self.semigroup.index(kv[0][1])))
            ],
        }
        if self.cr_params is not None:
            out["cr_params"] = self.cr_params
        steps = getattr(self.sets[0], "steps", None)
        if steps is not None:
            out["ap_steps"] = steps
        return out


@dataclass
class ShiftCheck:
    n: int
    x: Element
    m: int | None
    ok: bool
    checked: int = 0
    skipped: int = 0
    failure: Element | None = None
    searched: bool = False


@dataclass
class ChainReport:
    horizon: int
    containment: list[int]
    decrease: list[int]
    shifts: list[ShiftCheck]
    cr: list[dict]
    cr_mode: str
    window_relative: bool

    @property
    def missing(self) -> list[ShiftCheck]:
        return [c for c in self.shifts if c.m is None]

    @property
    def shift_ok(self) -> bool:
        return all(c.ok for c in self.shifts)

    @property
    def structural_ok(self) -> bool:
        return not self.containment and not self.decrease and self.shift_ok

    @property
    def cr_ok(self) -> bool | None:
        if self.cr_mode == "unchecked":
            return None
        return all(entry["ok"] for entry in self.cr)

    @property
    def passed(self) -> bool:
        return self.structural_ok and self.cr_ok is not False

    def completed_shift_map(self) -> dict:
        return {(c.n, c.x): c.m for c in self.shifts if c.ok and c.m is not None}

    def to_json(self, semigroup: Semigroup) -> dict:
        el = semigroup.element_to_json
        return {
            "horizon": self.horizon,
            "window_relative": self.window_relative,
            "containment_violations": self.containment,
            "decrease_violations": self.decrease,
            "shift": {
                "ok": self.shift_ok,
                "checked_pairs": len(self.shifts),
                "missing": [{"n": c.n, "x": el(c.x)} for c in self.missing],
                "failures": [
                    {"n": c.n, "x": el(c.x), "m": c.m, "y": el(c.failure)}
                    for c in self.shifts
                    if not c.ok and c.m is not None
                ],
                "skipped_window_checks": sum(c.skipped for c in self.shifts),
            },
            "cr": {"mode": self.cr_mode, "ok": self.cr_ok, "levels": self.cr},
            "passed": self.passed,
        }


def inclusion_failure(Cm: GroundSet, x: Element, Cn: GroundSet) -> tuple[Element | None, int, int]:
    """First ``y`` in ``Cm`` with ``x + y`` observable but outside ``Cn``.

    Returns ``(failure, checked, skipped)``; ``failure`` is ``None`` when the
    inclusion holds on the observable part.
    """
    s = Cn.semigroup
    checked = skipped = 0
    for y in Cm.members():
        z = s.add(x, y)
        if z is None or not Cn.observable(z):
            skipped += 1
            continue
        checked += 1
        if not Cn.contains(z):
            return y, checked, skipped
    return None, checked, skipped


def _shift_check(cert: ChainCertificate, n: int, x: Element, search: bool) -> ShiftCheck:
    Cn = cert.level(n)
    m = cert.shift_map.get((n, x))
    if m is not None:
        in_range = 1 <= m <= cert.length
        failure, checked, skipped = inclusion_failure(cert.level(m), x, Cn) if in_range else (None, 0, 0)
        ok = in_range and failure is None
        if ok or not search:
            return ShiftCheck(n, x, m, ok, checked, skipped, failure)
    if not search:
        return ShiftCheck(n, x, None, False)
    for cand in range(1, cert.length + 1):
        failure, checked, skipped = inclusion_failure(cert.level(cand), x, Cn)
        if failure is None:
            return ShiftCheck(n, x, cand, True, checked, skipped, searched=True)
    return ShiftCheck(n, x, None, False, searched=True)


def _cr_levels(cert: ChainCertificate, panel: Sequence[Matrix] | None, workers: int) -> tuple[str, list[dict]]:
    params = cert.cr_params or {}
    s = cert.semigroup
    if panel:
        levels = []
        for i, C in enumerate(cert.sets, start=1):
            found = [find_cr_witness(C, M) for M in panel]
            levels.append({"level": i, "ok": all(w is not None for w in found), "matrices": len(panel),
                           "witnessed": sum(w is not None for w in found)})
        return "sampled", levels
    if "n" in params and "r" in params and s.is_total:
        levels = []
        for i, C in enumerate(cert.sets, start=1):
            v = check_cr_full(C, int(params["n"]), int(params["r"]), workers=workers)
            levels.append({"level": i, "ok": v.holds, "n": int(params["n"]), "r": int(params["r"])})
        return "exact", levels
    return "unchecked", []


def validate_chain(
    cert: ChainCertificate,
    A: GroundSet,
    *,
    search_shifts: bool = False,
    cr_panel: Sequence[Matrix] | None = None,
    workers: int = 1,
) -> ChainReport:
    """Check containment in A, monotone decrease, the shift map, and CR evidence.

    CR-ness is exact (``check_cr_full`` at ``cr_params``) only on finite
    semigroups without a panel; with a matrix panel it is sampled.
    """
    same_semigroup(A.semigroup, cert.semigroup)
    containment = [i for i, C in enumerate(cert.sets, start=1) if not C.issubset(A)]
    decrease = [i for i in range(2, cert.length + 1) if not cert.level(i).issubset(cert.level(i - 1))]
    shifts = [
        _shift_check(cert, n, x, search_shifts)
        for n in range(1, cert.length + 1)
        for x in cert.level(n).members()
    ]
    mode, levels = _cr_levels(cert, cr_panel, workers)
    return ChainReport(
        horizon=cert.length,
        containment=containment,
        decrease=decrease,
        shifts=shifts,
        cr=levels,
        cr_mode=mode,
        window_relative=not cert.semigroup.is_total,
    )


def complete_shifts(cert: ChainCertificate) -> ChainCertificate:
    """Fill missing or wrong shift entries by scanning ``m`` ascending."""
    report = validate_chain(cert, GroundSet.universe(cert.semigroup), search_shifts=True)
    return ChainCertificate(cert.semigroup, cert.sets, report.completed_shift_map(), cert.cr_params)


@dataclass
class LiftCheck:
    n: int
    pair: tuple
    N: int | None
    ok: bool
    gap: Element | None = None
    failure: tuple | None = None


@dataclass
class LiftedChain:
    certificate: ChainCertificate
    checks: list[LiftCheck]

    @property
    def gaps(self) -> list[LiftCheck]:
        return [c for c in self.checks if c.N is None]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def lift_chain(cert: ChainCertificate, L: int, box: Product | None = None) -> LiftedChain:
    """Chain of progression-pair sets ``B_i`` with shift index ``N = max_i m(n, a + i b)``.

    Each lifted inclusion ``B_N <= -(a, b) + B_n`` is verified element by
    element over the box before it enters the new certificate.
    """
    S = cert.semigroup
    B = tuple(ap_pair_set(C, L, box) for C in cert.sets)
    P = B[0].semigroup
    checks, shift_map = [], {}
    for n in range(1, cert.length + 1):
        for pair in B[n - 1].members():
            a, b = pair
            terms, x = [a], a
            for _ in range(L):
                x = S.add(x, b)
                terms.append(x)
            levels = [cert.shift_map.get((n, t)) for t in terms]
            gap = next((t for t, m in zip(terms, levels) if m is None), None)
            if gap is not None:
                checks.append(LiftCheck(n, pair, None, False, gap=gap))
                continue
            N = max(levels)
            failure, _, _ = inclusion_failure(B[N - 1], pair, B[n - 1])
            checks.append(LiftCheck(n, pair, N, failure is None, failure=failure))
            if failure is None:
                shift_map[(n, pair)] = N
    out = ChainCertificate(P, B, shift_map, cert.cr_params)
    return LiftedChain(out, checks)


def chain_from_sets(semigroup: Semigroup, sets: Sequence[Sequence[Element]], shift_map: dict | None = None,
                    cr_params: dict | None = None, ap_steps: int | None = None) -> ChainCertificate:
    if ap_steps is not None:
        if not isinstance(semigroup, Product):
            raise UsageError("ap_steps needs a product semigroup")
        levels = tuple(TruncatedPairSet.from_members(semigroup, members, ap_steps) for members in sets)
    else:
        levels = tuple(GroundSet(semigroup, members) for members in sets)
    return ChainCertificate(semigroup, levels, dict(shift_map or {}), cr_params)
