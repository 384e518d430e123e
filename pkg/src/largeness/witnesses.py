"""Witness records returned by the searchers and replayed by the validators."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import UsageError
from .matrix import Matrix, mask_rows
from .semigroup import Element, Semigroup


@dataclass(frozen=True)
class CrWitness:
    """Row subset ``alpha`` (bit mask) and shift ``s`` with ``s + M[alpha, j]`` in A."""

    alpha: int
    s: Element

    def __post_init__(self):
        if self.alpha <= 0:
            raise UsageError("CR witness needs a non-empty row subset")

    @property
    def rows(self) -> list[int]:
        return mask_rows(self.alpha)

    @property
    def size(self) -> int:
        return bin(self.alpha).count("1")

    def to_json(self, semigroup: Semigroup) -> dict:
        return {"alpha": self.rows, "alpha_mask": self.alpha, "s": semigroup.element_to_json(self.s)}


@dataclass(frozen=True)
class SeqFamily:
    """Finite truncations of sequences, all cut to the common horizon."""

    semigroup: Semigroup
    sequences: tuple[tuple[Element, ...], ...]
    horizon: int = field(default=0)

    def __post_init__(self):
        if not self.sequences:
            raise UsageError("sequence family must be non-empty")
        horizon = self.horizon or min(len(f) for f in self.sequences)
        if horizon < 1 or any(len(f) < horizon for f in self.sequences):
            raise UsageError(f"every sequence needs at least {max(horizon, 1)} entries")
        seqs = tuple(tuple(self.semigroup.coerce(x) for x in f[:horizon]) for f in self.sequences)
        object.__setattr__(self, "sequences", seqs)
        object.__setattr__(self, "horizon", horizon)

    def to_json(self) -> dict:
        el = self.semigroup.element_to_json
        return {
            "semigroup": self.semigroup.to_json(),
            "horizon": self.horizon,
            "sequences": [[el(x) for x in f] for f in self.sequences],
        }


@dataclass(frozen=True)
class JWitness:
    """Shift ``a`` and position set ``H`` (bit mask, bit 0 = position 1)."""

    a: Element
    H: int

    def __post_init__(self):
        if self.H <= 0:
            raise UsageError("J witness needs a non-empty position set")

    @property
    def positions(self) -> list[int]:
        return mask_rows(self.H)

    def to_json(self, semigroup: Semigroup) -> dict:
        return {"a": semigroup.element_to_json(self.a), "H": self.positions, "H_mask": self.H}


@dataclass(frozen=True)
class SyndeticWitness:
    """Shift set ``F`` covering ``target``; ``target`` is the universe on total semigroups.

    On a window, ``target`` is the initial sub-window on which every candidate
    shift is defined and ``uncovered_tail`` lists the elements past it that
    ``F`` fails to reach.
    """

    F: tuple
    target: tuple
    covered: tuple[bool, ...]
    uncovered_tail: tuple = ()

    def to_json(self, semigroup: Semigroup) -> dict:
        el = semigroup.element_to_json
        out = {"F": [el(t) for t in self.F], "size": len(self.F), "uncovered_tail": [el(y) for y in self.uncovered_tail]}
        if self.target:
            out["covered_range"] = [el(self.target[0]), el(self.target[-1])]
        return out


@dataclass(frozen=True)
class ThickWitness:
    E: tuple
    x: Element

    def to_json(self, semigroup: Semigroup) -> dict:
        el = semigroup.element_to_json
        return {"E": [el(e) for e in self.E], "x": el(self.x)}


@dataclass(frozen=True)
class PwsWitness:
    F: tuple
    inner: ThickWitness

    def to_json(self, semigroup: Semigroup) -> dict:
        el = semigroup.element_to_json
        return {"F": [el(t) for t in self.F], "inner": self.inner.to_json(semigroup)}


@dataclass(frozen=True)
class Verdict:
    """Outcome of a universal check; ``counterexample`` is set when it fails."""

    holds: bool
    counterexample: Matrix | Sequence | None = None
    checked: int = 0

    def __bool__(self) -> bool:
        return self.holds
