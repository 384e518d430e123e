"""Subcommand handlers working on resolved JSON documents.

A handler receives the parsed options and a dict of input documents (already
self-contained, see :func:`largeness.io.resolve`) and returns an
:class:`Outcome`.  Keeping file access out of the handlers lets the demo
suite and ``validate --record`` rebuild any run from its embedded inputs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Callable

from . import io
from .chains import complete_shifts, lift_chain, validate_chain
from .checks import cover_target, default_shifts, find_pws_witness, find_syndetic_witness, find_thick_witness, max_gap
from .errors import StructuralError, UsageError
from .fuzz import DEFAULT_SEED, SWEEPS
from .lift import ap_pair_set, build_lifted_matrix, certified_memberships, lift_end_to_end
from .matrix import Matrix, PairMatrix, concat, rows_mask
from .search import (
    candidate_mask,
    check_cr_full,
    covers_universe,
    cr_degree,
    extract_ap,
    find_cr_witness,
    find_j_witness,
    generator_matrix,
)
from .semigroup import GroundSet, NatWindow, Product, Semigroup
from .validate import (
    validate_cr_witness,
    validate_j_witness,
    validate_pws,
    validate_syndetic,
    validate_thick,
)
from .vdw import has_mono_ap, vdw_demo
from .witnesses import CrWitness, JWitness, PwsWitness, SyndeticWitness, ThickWitness

EXIT_OK, EXIT_PROVEN_NEGATIVE, EXIT_WINDOW_NEGATIVE, EXIT_ERROR = 0, 1, 2, 3


@dataclass
class Outcome:
    result: dict
    exit_code: int
    validated: bool | None = None
    bounds: dict = field(default_factory=dict)


Handler = Callable[[Any, dict], Outcome]


def window_of(s: Semigroup) -> Any:
    """JSON description of the truncation a result is relative to (``None`` if exact)."""
    if isinstance(s, NatWindow):
        return [s.lo, s.hi]
    if isinstance(s, Product) and not s.is_total:
        return [window_of(s.left), window_of(s.right)]
    return None


def not_found(s: Semigroup, exact: bool, **extra) -> Outcome:
    scope = "universe" if exact else "window"
    return Outcome({"result": "not_found", "scope": scope, **extra},
                   EXIT_PROVEN_NEGATIVE if exact else EXIT_WINDOW_NEGATIVE)


def parse_range(text: str | None, s: Semigroup) -> list | None:
    """``"lo:hi"`` (inclusive) over integer values, or canonical indices for products."""
    if text is None:
        return None
    try:
        lo, hi = (int(v) for v in text.split(":"))
    except ValueError:
        raise UsageError(f"range must look like lo:hi, got {text!r}") from None
    if isinstance(s, Product):
        return [s.element(i) for i in range(max(lo, 0), min(hi, s.size - 1) + 1)]
    return [x for x in s.elements if lo <= x <= hi]


def _set(docs: dict) -> GroundSet:
    return io.set_from_json(docs["set"])


def default_probe(s: Semigroup, length: int) -> list:
    if s.is_total:
        return list(s.elements)
    if isinstance(s, NatWindow):
        start = max(s.lo, 1)
        if start + length - 1 > s.hi:
            raise UsageError(f"probe 1..{length} does not fit in {s.describe()}")
        return list(range(start, start + length))
    raise UsageError("give --probe for partial product semigroups")


def _probe(args, docs: dict, s: Semigroup) -> list:
    if "probe" in docs:
        return io.elements_from_json(docs["probe"], s)
    return default_probe(s, args.probe_len)


def _shift_candidates(docs: dict, s: Semigroup) -> list | None:
    return io.elements_from_json(docs["shifts"], s) if "shifts" in docs else None


# -- largeness checks ---------------------------------------------------------


def run_syndetic(args, docs) -> Outcome:
    A = _set(docs)
    s = A.semigroup
    shifts = _shift_candidates(docs, s)
    bounds = {"max_card": args.max_card, "window": window_of(s),
              "shifts": "default" if shifts is None else [s.element_to_json(t) for t in shifts]}
    w = find_syndetic_witness(A, args.max_card, shifts, force=args.force)
    if w is None:
        out = not_found(s, s.is_total)
    else:
        result = {"kind": "syndetic", **w.to_json(s)}
        if isinstance(s, NatWindow):
            result["max_gap"] = max_gap(A)
        out = Outcome(result, EXIT_OK, validate_syndetic(A, w))
    out.bounds = bounds
    return out


def run_thick(args, docs) -> Outcome:
    A = _set(docs)
    s = A.semigroup
    E = _probe(args, docs, s)
    w = find_thick_witness(A, E)
    bounds = {"probe": [s.element_to_json(e) for e in E], "window": window_of(s)}
    if w is None:
        out = not_found(s, s.is_total)
    else:
        out = Outcome({"kind": "thick", **w.to_json(s)}, EXIT_OK, validate_thick(A, w))
    out.bounds = bounds
    return out


def run_pws(args, docs) -> Outcome:
    A = _set(docs)
    s = A.semigroup
    E = _probe(args, docs, s)
    shifts = _shift_candidates(docs, s)
    w = find_pws_witness(A, args.max_card, E, shifts, force=args.force)
    bounds = {"probe": [s.element_to_json(e) for e in E], "max_card": args.max_card, "window": window_of(s),
              "shifts": "all" if shifts is None else [s.element_to_json(t) for t in shifts]}
    if w is None:
        out = not_found(s, s.is_total and shifts is None)
    else:
        out = Outcome({"kind": "pws", **w.to_json(s)}, EXIT_OK, validate_pws(A, w))
    out.bounds = bounds
    return out


# -- witness search -----------------------------------------------------------


def run_j_witness(args, docs) -> Outcome:
    A = _set(docs)
    s = A.semigroup
    fam = io.family_from_json(docs["family"], s)
    cands = parse_range(args.a_range, s)
    w = find_j_witness(A, fam, cands)
    bounds = {"horizon": fam.horizon, "a_range": args.a_range, "window": window_of(s)}
    if w is None:
        out = not_found(s, covers_universe(s, cands))
    else:
        out = Outcome({"kind": "j", **w.to_json(s)}, EXIT_OK, validate_j_witness(A, fam, w))
    out.bounds = bounds
    return out


def run_cr_witness(args, docs) -> Outcome:
    A = _set(docs)
    s = A.semigroup
    M = io.matrix_from_json(docs["matrix"], s)
    cands = parse_range(args.s_range, s)
    w = find_cr_witness(A, M, cands)
    bounds = {"rows": M.r, "cols": M.n, "s_range": args.s_range, "window": window_of(s)}
    if w is None:
        out = not_found(s, covers_universe(s, cands))
    else:
        out = Outcome({"kind": "cr", **w.to_json(s)}, EXIT_OK, validate_cr_witness(A, M, w))
    out.bounds = bounds
    return out


def run_cr_check(args, docs) -> Outcome:
    A = _set(docs)
    v = check_cr_full(A, args.n, args.r, force=args.force, workers=args.workers)
    bounds = {"n": args.n, "r": args.r}
    if v.holds:
        return Outcome({"verdict": "holds", "matrices": v.checked}, EXIT_OK, None, bounds)
    M = v.counterexample
    return Outcome(
        {"verdict": "fails", "counterexample": M.to_json()["entries"], "matrices_scanned": v.checked},
        EXIT_PROVEN_NEGATIVE, _no_witness_anywhere(A, M), bounds,
    )


def _no_witness_anywhere(A: GroundSet, M: Matrix) -> bool:
    """Scalar replay: no (alpha, s) validates for M."""
    return not any(
        validate_cr_witness(A, M, CrWitness(alpha, x))
        for alpha in range(1, 1 << M.r)
        for x in A.semigroup.elements
    )


def run_cr_degree(args, docs) -> Outcome:
    A = _set(docs)
    r = cr_degree(A, args.n, args.r_max, force=args.force, workers=args.workers)
    bounds = {"n": args.n, "r_max": args.r_max}
    if r is None:
        return Outcome({"result": "not_found_up_to", "r_max": args.r_max, "scope": "bounds"},
                       EXIT_WINDOW_NEGATIVE, None, bounds)
    return Outcome({"r": r}, EXIT_OK, None, bounds)


def run_extract_ap(args, docs) -> Outcome:
    A = _set(docs)
    s = A.semigroup
    cands = parse_range(args.s_range, s)
    ap = extract_ap(A, args.n, args.r, cands)
    bounds = {"n": args.n, "r": args.r, "s_range": args.s_range, "window": window_of(s)}
    if ap is None:
        out = not_found(s, covers_universe(s, cands))
    else:
        el = s.element_to_json
        ok = validate_cr_witness(A, generator_matrix(s, args.n, args.r), ap.witness) and all(A.contains(t) for t in ap.terms)
        out = Outcome({"kind": "ap", "s": el(ap.s), "d": ap.d, "alpha": ap.witness.rows,
                       "terms": [el(t) for t in ap.terms]}, EXIT_OK, ok)
    out.bounds = bounds
    return out


# -- lifting ------------------------------------------------------------------


def run_concat(args, docs) -> Outcome:
    mats = [io.matrix_from_json(d) for d in docs["inputs"]]
    C = concat(*mats)
    return Outcome({"rows": C.r, "cols": C.n, "entries": C.to_json()["entries"]}, EXIT_OK, None,
                   {"pieces": [M.n for M in mats]})


def _pair_matrix(docs: dict, S: Semigroup) -> PairMatrix:
    M = io.matrix_from_json(docs["pair_matrix"], Product(S, S))
    if not isinstance(M, PairMatrix):
        raise StructuralError("pair matrix must live over S x S")
    return M


def run_lift(args, docs) -> Outcome:
    A = _set(docs)
    S = A.semigroup
    Mp = _pair_matrix(docs, S)
    L = args.steps
    s_cands = [S.element_from_json(args.s)] if args.s is not None else parse_range(args.s_range, S)
    base_cands = parse_range(args.base_s_range, S)
    bounds = {"steps": L, "s": args.s, "s_range": args.s_range, "base_s_range": args.base_s_range,
              "window": window_of(S)}
    got = lift_end_to_end(A, Mp, L, s_cands, base_cands)
    if got is None:
        exact = covers_universe(S, s_cands) and covers_universe(S, base_cands)
        out = not_found(S, exact)
        out.bounds = bounds
        return out
    P = Mp.semigroup
    members = certified_memberships(A, Mp, L, got.pair)
    base_ok = validate_cr_witness(A, got.lifted, got.base)
    result = {
        "kind": "lift",
        "s": S.element_to_json(got.s),
        "lifted_matrix": got.lifted.to_json()["entries"],
        "base_witness": got.base.to_json(S),
        "pair_witness": got.pair.to_json(P),
        "certified": [
            {"column": m.column + 1, "k": m.k, "value": S.element_to_json(m.value)} for m in members
        ],
    }
    return Outcome(result, EXIT_OK, base_ok and got.validated, bounds)


def run_ap_pairs(args, docs) -> Outcome:
    A = _set(docs)
    C = ap_pair_set(A, args.steps)
    return Outcome({"steps": args.steps, "count": len(C), "members": C.members_json()}, EXIT_OK, None,
                   {"steps": args.steps, "box": window_of(C.semigroup)})


# -- chains -------------------------------------------------------------------


def _panel(docs: dict, s: Semigroup) -> list[Matrix] | None:
    if "panel" not in docs:
        return None
    raw = docs["panel"]
    mats = raw.get("matrices") if isinstance(raw, dict) else raw
    return [io.matrix_from_json(m, s) for m in mats]


def run_chain_validate(args, docs) -> Outcome:
    A = _set(docs)
    cert = io.chain_from_json(docs["cert"], A.semigroup)
    report = validate_chain(cert, A, search_shifts=args.search_shifts, cr_panel=_panel(docs, A.semigroup),
                            workers=args.workers)
    result = report.to_json(cert.semigroup)
    if args.search_shifts:
        result["completed_shift_map"] = [
            {"n": n, "x": cert.semigroup.element_to_json(x), "m": m}
            for (n, x), m in sorted(report.completed_shift_map().items(), key=lambda kv: (kv[0][0], cert.semigroup.index(kv[0][1])))
        ]
    return Outcome(result, EXIT_OK if report.passed else EXIT_PROVEN_NEGATIVE, report.structural_ok,
                   {"horizon": cert.length, "search_shifts": args.search_shifts, "window": window_of(cert.semigroup)})


def run_chain_lift(args, docs) -> Outcome:
    A = _set(docs)
    cert = io.chain_from_json(docs["cert"], A.semigroup)
    if args.search_shifts:
        cert = complete_shifts(cert)
    lifted = lift_chain(cert, args.steps)
    B = ap_pair_set(A, args.steps)
    report = validate_chain(lifted.certificate, B)
    P = lifted.certificate.semigroup
    el = P.element_to_json
    result = {
        "certificate": lifted.certificate.to_json(),
        "lift_checks": len(lifted.checks),
        "gaps": [{"n": c.n, "pair": el(c.pair), "missing_x": cert.semigroup.element_to_json(c.gap)} for c in lifted.gaps],
        "failures": [{"n": c.n, "pair": el(c.pair), "N": c.N, "y": el(c.failure)}
                     for c in lifted.checks if c.N is not None and not c.ok],
        "report": report.to_json(P),
    }
    ok = lifted.ok and report.structural_ok
    return Outcome(result, EXIT_OK if ok else EXIT_PROVEN_NEGATIVE, ok,
                   {"steps": args.steps, "horizon": cert.length, "window": window_of(cert.semigroup)})


# -- demos and tooling --------------------------------------------------------


def run_vdw(args, docs) -> Outcome:
    v = vdw_demo(args.terms, args.colors, args.upto, force=args.force, workers=args.workers)
    bounds = {"terms": args.terms, "colors": args.colors, "upto": args.upto}
    if v.holds:
        msg = f"all colorings contain mono {args.terms}-AP"
        return Outcome({"verdict": "holds", "message": msg, "colorings": v.checked}, EXIT_OK, None, bounds)
    col = list(v.counterexample)
    return Outcome({"verdict": "fails", "counterexample": col}, EXIT_PROVEN_NEGATIVE,
                   not has_mono_ap(col, args.terms), bounds)


def run_fuzz(args, docs) -> Outcome:
    kinds = list(SWEEPS) if args.kind == "all" else [args.kind]
    tallies = []
    for kind in kinds:
        fn = SWEEPS[kind]
        tallies.append(fn(args.seed, args.count) if args.count else fn(args.seed))
    ok = all(t.ok for t in tallies)
    return Outcome({"sweeps": [t.to_json() for t in tallies]}, EXIT_OK if ok else EXIT_PROVEN_NEGATIVE, ok,
                   {"seed": args.seed, "count": args.count})


HANDLERS: dict[str, Handler] = {
    "syndetic": run_syndetic,
    "thick": run_thick,
    "pws": run_pws,
    "j-witness": run_j_witness,
    "cr-witness": run_cr_witness,
    "cr-check": run_cr_check,
    "cr-degree": run_cr_degree,
    "extract-ap": run_extract_ap,
    "concat": run_concat,
    "lift": run_lift,
    "ap-pairs": run_ap_pairs,
    "chain-validate": run_chain_validate,
    "chain-lift": run_chain_lift,
    "vdw": run_vdw,
    "fuzz": run_fuzz,
}


# -- record replay ------------------------------------------------------------


def replay_record(record: dict) -> bool:
    """Re-check a run record's result from its embedded inputs, on the validator path."""
    sub = record.get("subcommand")
    docs = record.get("inputs", {})
    result = record.get("result", {})
    bounds = record.get("bounds", {})
    if result.get("result") in ("not_found", "not_found_up_to"):
        return _rerun_matches(record)
    if sub == "syndetic":
        A = _set(docs)
        s = A.semigroup
        shifts = bounds.get("shifts")
        cand = default_shifts(s) if shifts == "default" else candidate_mask(s, [s.element_from_json(t) for t in shifts])
        target = cover_target(s, cand)
        el = s.elements
        F = tuple(s.element_from_json(t) for t in result["F"])
        w = SyndeticWitness(F, tuple(el[i] for i in range(s.size) if target[i]), ())
        return validate_syndetic(A, w)
    if sub == "thick":
        A = _set(docs)
        s = A.semigroup
        return validate_thick(A, ThickWitness(tuple(s.element_from_json(e) for e in result["E"]), s.element_from_json(result["x"])))
    if sub == "pws":
        A = _set(docs)
        s = A.semigroup
        inner = result["inner"]
        w = PwsWitness(tuple(s.element_from_json(t) for t in result["F"]),
                       ThickWitness(tuple(s.element_from_json(e) for e in inner["E"]), s.element_from_json(inner["x"])))
        return validate_pws(A, w)
    if sub == "j-witness":
        A = _set(docs)
        fam = io.family_from_json(docs["family"], A.semigroup)
        return validate_j_witness(A, fam, JWitness(A.semigroup.element_from_json(result["a"]), rows_mask(result["H"])))
    if sub == "cr-witness":
        A = _set(docs)
        M = io.matrix_from_json(docs["matrix"], A.semigroup)
        return validate_cr_witness(A, M, CrWitness(rows_mask(result["alpha"]), A.semigroup.element_from_json(result["s"])))
    if sub == "extract-ap":
        A = _set(docs)
        s = A.semigroup
        M = generator_matrix(s, bounds["n"], bounds["r"])
        w = CrWitness(rows_mask(result["alpha"]), s.element_from_json(result["s"]))
        return validate_cr_witness(A, M, w) and all(A.contains(s.element_from_json(t)) for t in result["terms"])
    if sub == "lift":
        A = _set(docs)
        S = A.semigroup
        Mp = _pair_matrix(docs, S)
        L = bounds["steps"]
        lifted = build_lifted_matrix(Mp, S.element_from_json(result["s"]), L)
        base = CrWitness(rows_mask(result["base_witness"]["alpha"]), S.element_from_json(result["base_witness"]["s"]))
        pw = result["pair_witness"]
        pair = CrWitness(rows_mask(pw["alpha"]), Mp.semigroup.element_from_json(pw["s"]))
        return validate_cr_witness(A, lifted, base) and validate_cr_witness(ap_pair_set(A, L), Mp, pair)
    if sub == "cr-check" and result.get("verdict") == "fails":
        A = _set(docs)
        M = Matrix(A.semigroup, tuple(tuple(A.semigroup.element_from_json(x) for x in row) for row in result["counterexample"]))
        return _no_witness_anywhere(A, M)
    if sub == "vdw" and result.get("verdict") == "fails":
        return not has_mono_ap(result["counterexample"], bounds["terms"])
    return _rerun_matches(record)


def _rerun_matches(record: dict) -> bool:
    """Universal verdicts and negatives: recompute and compare the result payload."""
    from .cli import _json_default, rebuild_args

    sub = record["subcommand"]
    args = rebuild_args(record)
    again = HANDLERS[sub](args, record.get("inputs", {}))
    return json.loads(json.dumps(again.result, default=_json_default)) == record["result"]
