"""``largeness`` command-line entry point.

Exit codes: 0 witness found / check holds, 1 proven negative on a finite
universe, 2 negative relative to a window or search bound, 3 usage or
structural error.  Every run prints a JSON run record (or a short text
summary with ``--format text``); the record embeds its inputs so that
``largeness validate --record FILE`` can replay it.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import shlex
import sys
import time
from pathlib import Path
from typing import Sequence

import numpy as np

from . import io
from .commands import EXIT_ERROR, EXIT_OK, EXIT_PROVEN_NEGATIVE, HANDLERS, Outcome, replay_record
from .errors import LargenessError, UsageError
from .fuzz import DEFAULT_SEED
from .semigroup import cyclic

# options that never influence a result; they are kept out of records
VOLATILE = ("workers", "out", "format", "timing", "command")

# file-valued options and the input name each one is stored under
FILE_OPTIONS = {
    "set": "set",
    "matrix": "matrix",
    "pair_matrix": "pair_matrix",
    "family": "family",
    "probe": "probe",
    "shifts": "shifts",
    "cert": "cert",
    "panel": "panel",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the run record here instead of stdout")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--workers", type=int, default=1, help="parallel search fan-out")
    common.add_argument("--force", action="store_true", help="ignore enumeration cost guards")
    common.add_argument("--timing", action="store_true", help="add wall time to the record")

    parser = _Parser(prog="largeness", description="Witness search for largeness notions in semigroups.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def cmd(name: str, help: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, help=help, parents=[common])

    p = cmd("syndetic", "finite shift set whose preimages cover the universe")
    p.add_argument("--set", required=True)
    p.add_argument("--max-card", type=int, default=4)
    p.add_argument("--shifts", help="JSON list of candidate shifts")

    p = cmd("thick", "translate of a probe set inside A")
    p.add_argument("--set", required=True)
    p.add_argument("--probe", help="JSON list of probe elements")
    p.add_argument("--probe-len", type=int, default=3)

    p = cmd("pws", "piecewise syndetic witness")
    p.add_argument("--set", required=True)
    p.add_argument("--max-card", type=int, default=2)
    p.add_argument("--probe")
    p.add_argument("--probe-len", type=int, default=3)
    p.add_argument("--shifts")

    p = cmd("j-witness", "J-set witness for a finite family of sequences")
    p.add_argument("--set", required=True)
    p.add_argument("--family", required=True)
    p.add_argument("--a-range")

    p = cmd("cr-witness", "CR witness (alpha, s) for one matrix")
    p.add_argument("--set", required=True)
    p.add_argument("--matrix", required=True)
    p.add_argument("--s-range")

    p = cmd("cr-check", "exhaustive CR check over all r x n matrices")
    p.add_argument("--set", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)

    p = cmd("cr-degree", "least r for which the CR check holds")
    p.add_argument("--set", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r-max", type=int, default=4)

    p = cmd("extract-ap", "arithmetic progression from the generator matrix")
    p.add_argument("--set", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s-range")

    p = cmd("concat", "concatenate matrices side by side")
    p.add_argument("--inputs", nargs="+", required=True)

    p = cmd("lift", "lift a CR witness to the progression-pair set")
    p.add_argument("--set", required=True)
    p.add_argument("--pair-matrix", required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--s", type=int, help="fix the free element s instead of sweeping")
    p.add_argument("--s-range")
    p.add_argument("--base-s-range")

    p = cmd("ap-pairs", "pairs (a, b) whose progression lies in A")
    p.add_argument("--set", required=True)
    p.add_argument("--steps", type=int, required=True)

    for name, help in (("chain-validate", "check a decreasing-chain certificate"),
                       ("chain-lift", "lift a chain certificate to progression pairs")):
        p = cmd(name, help)
        p.add_argument("--set", required=True)
        p.add_argument("--cert", required=True)
        p.add_argument("--search-shifts", action="store_true")
        if name == "chain-validate":
            p.add_argument("--panel", help="JSON list of matrices for sampled CR evidence")
        else:
            p.add_argument("--steps", type=int, required=True)

    p = cmd("vdw", "exhaustive van der Waerden check")
    p.add_argument("--terms", type=int, required=True)
    p.add_argument("--colors", type=int, required=True)
    p.add_argument("--upto", type=int, required=True)

    p = cmd("validate", "replay a run record on the validator path")
    p.add_argument("--record", required=True)

    p = cmd("fuzz", "seeded soundness sweeps")
    p.add_argument("--kind", choices=("witness", "transfer", "chain", "translate", "all"), default="all")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--count", type=int, default=0, help="instances per sweep (0 = sweep default)")

    p = cmd("demo", "run the built-in demo suite")
    p.add_argument("--only", help="run a single demo case")
    return parser


def _json_default(x):
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, tuple):
        return list(x)
    raise TypeError(f"not JSON serializable: {type(x).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=_json_default) + "\n"


def digest(inputs: dict) -> str:
    blob = json.dumps(inputs, sort_keys=True, separators=(",", ":"), default=_json_default)
    return "sha256:" + hashlib.sha256(blob.encode()).hexdigest()


def _options(ns: argparse.Namespace) -> dict:
    return {k: v for k, v in sorted(vars(ns).items()) if k not in VOLATILE and k not in FILE_OPTIONS and k != "inputs"}


def replay_line(argv: Sequence[str]) -> str:
    """The invocation minus options that cannot change the result."""
    kept, skip = [], False
    for tok in argv:
        if skip:
            skip = False
            continue
        if tok in ("--workers", "--out", "--format"):
            skip = True
            continue
        if tok.startswith(("--workers=", "--out=", "--format=")) or tok == "--timing":
            continue
        kept.append(tok)
    return shlex.join(["largeness", *kept])


def make_record(sub: str, options: dict, docs: dict, outcome: Outcome, replay: str, elapsed: float | None = None) -> dict:
    record = {
        "subcommand": sub,
        "options": options,
        "inputs": docs,
        "input_digest": digest(docs),
        "bounds": outcome.bounds,
        "result": outcome.result,
        "validated": outcome.validated,
        "exit_code": outcome.exit_code,
        "replay": replay,
    }
    if elapsed is not None:
        record["wall_time_s"] = round(elapsed, 6)
    return record


def rebuild_args(record: dict) -> argparse.Namespace:
    return argparse.Namespace(**record.get("options", {}), workers=1)


def load_inputs(ns: argparse.Namespace) -> dict:
    docs = {}
    for opt, name in FILE_OPTIONS.items():
        path = getattr(ns, opt, None)
        if path is not None:
            docs[name] = io.load_document(path)
    if getattr(ns, "inputs", None):
        docs["inputs"] = [io.load_document(p) for p in ns.inputs]
    return docs


def text_summary(record: dict) -> str:
    lines = [f"{record['subcommand']}: exit {record['exit_code']}, validated={record['validated']}"]
    for key, value in record["result"].items():
        shown = json.dumps(value, default=_json_default)
        if len(shown) > 200:
            shown = shown[:197] + "..."
        lines.append(f"  {key}: {shown}")
    for key, value in record["bounds"].items():
        if value is not None:
            lines.append(f"  [bound] {key}: {json.dumps(value, default=_json_default)}")
    return "\n".join(lines) + "\n"


def emit(ns: argparse.Namespace, payload, text: str | None = None) -> None:
    body = text if (ns.format == "text" and text is not None) else dumps(payload)
    if ns.out:
        Path(ns.out).write_text(body)
    else:
        sys.stdout.write(body)


# -- demo suite ---------------------------------------------------------------


def _z(m: int) -> dict:
    return cyclic(m).to_json()


def _window(lo: int, hi: int) -> dict:
    return {"kind": "nat_window", "lo": lo, "hi": hi}


def _set_doc(sg: dict, members) -> dict:
    return {"semigroup": sg, "members": list(members)}


CONCAT_BLOCKS = [
    [[3, 6], [7, 4], [1, 3]],
    [[5, 8, 9, 1], [6, 8, 3, 5], [7, 9, 2, 1]],
    [[6], [9], [8]],
]


def demo_cases() -> list[tuple[str, str, dict, dict, int]]:
    """(name, subcommand, options, inputs, expected exit code)."""
    w30 = _window(1, 30)
    w100 = _window(1, 100)
    z9 = _z(9)
    pair_z9 = {"kind": "product", "left": z9, "right": z9}
    return [
        ("concat-three-blocks", "concat", {},
         {"inputs": [{"semigroup": w100, "entries": m} for m in CONCAT_BLOCKS]}, 0),
        ("vdw-3-2-9", "vdw", {"terms": 3, "colors": 2, "upto": 9, "force": False}, {}, 0),
        ("vdw-3-2-8", "vdw", {"terms": 3, "colors": 2, "upto": 8, "force": False}, {}, 1),
        ("cr-check-z4-evens-r1", "cr-check", {"n": 2, "r": 1, "force": False},
         {"set": _set_doc(_z(4), [0, 2])}, 1),
        ("cr-check-z3-full", "cr-check", {"n": 3, "r": 1, "force": False},
         {"set": _set_doc(_z(3), [0, 1, 2])}, 0),
        ("cr-check-z2-empty", "cr-check", {"n": 2, "r": 1, "force": False},
         {"set": _set_doc(_z(2), [])}, 1),
        ("cr-degree-z6-evens", "cr-degree", {"n": 2, "r_max": 4, "force": False},
         {"set": _set_doc(_z(6), [0, 2, 4])}, 0),
        ("cr-degree-z4-zero", "cr-degree", {"n": 2, "r_max": 4, "force": False},
         {"set": _set_doc(_z(4), [0])}, 0),
        ("cr-witness-z9", "cr-witness", {"s_range": None},
         {"set": _set_doc(z9, [0, 3, 6]), "matrix": {"semigroup": z9, "entries": [[1, 2], [2, 4]]}}, 0),
        ("extract-ap-multiples-of-4", "extract-ap", {"n": 3, "r": 4, "s_range": None},
         {"set": _set_doc(w100, range(4, 101, 4))}, 0),
        ("syndetic-multiples-of-3", "syndetic", {"max_card": 4, "force": False},
         {"set": _set_doc(w30, range(3, 31, 3))}, 0),
        ("thick-interval", "thick", {"probe_len": 3},
         {"set": _set_doc(w100, range(40, 61)), "probe": [1, 2, 3]}, 0),
        ("pws-runs-of-three", "pws", {"max_card": 2, "probe_len": 5, "force": False},
         {"set": _set_doc(_window(1, 60), [n for n in range(1, 61) if n % 6 in (0, 1, 2)])}, 0),
        ("j-witness-evens", "j-witness", {"a_range": None},
         {"set": _set_doc(w100, range(2, 101, 2)),
          "family": {"sequences": [[1, 2, 3, 4, 5], [2, 4, 6, 8, 10]]}}, 0),
        ("ap-pairs-multiples-of-3", "ap-pairs", {"steps": 2},
         {"set": _set_doc(_window(1, 20), range(3, 21, 3))}, 0),
        ("lift-z9", "lift", {"steps": 2, "s": None, "s_range": None, "base_s_range": None},
         {"set": _set_doc(z9, [0, 3, 6]),
          "pair_matrix": {"semigroup": pair_z9,
                          "entries": [[[1, 2], [2, 1]], [[2, 1], [1, 2]]]}}, 0),
        ("chain-validate-z6", "chain-validate", {"search_shifts": False},
         {"set": _set_doc(_z(6), [0, 2, 4]),
          "cert": {"sets": [[0, 2, 4], [0]],
                   "shift_map": [{"n": 1, "x": 0, "m": 1}, {"n": 1, "x": 2, "m": 1},
                                 {"n": 1, "x": 4, "m": 1}, {"n": 2, "x": 0, "m": 2}]}}, 0),
        ("chain-lift-window", "chain-lift", {"steps": 1, "search_shifts": True},
         {"set": _set_doc(_window(1, 40), range(2, 41, 2)),
          "cert": {"sets": [list(range(2, 41, 2)), list(range(4, 41, 4))]}}, 0),
    ]


def run_demo(ns: argparse.Namespace) -> tuple[list[dict], int]:
    records, code = [], EXIT_OK
    cases = demo_cases()
    if ns.only:
        cases = [c for c in cases if c[0] == ns.only]
        if not cases:
            raise UsageError(f"unknown demo case {ns.only!r}")
    for name, sub, options, docs, expected in cases:
        args = argparse.Namespace(**options, workers=ns.workers)
        args.force = getattr(args, "force", False) or ns.force
        outcome = HANDLERS[sub](args, docs)
        record = make_record(sub, _options(args), docs, outcome, f"largeness demo --only {name}")
        record["demo"] = {"name": name, "expected_exit": expected}
        records.append(record)
        if outcome.exit_code != expected or outcome.validated is False:
            code = EXIT_PROVEN_NEGATIVE
    return records, code


# -- entry points -------------------------------------------------------------


def run(argv: Sequence[str]) -> int:
    parser = build_parser()
    argv = list(argv)
    try:
        ns = parser.parse_args(argv)
        if ns.command is None:
            parser.print_help(sys.stderr)
            return EXIT_ERROR
        start = time.perf_counter()
        if ns.command == "demo":
            records, code = run_demo(ns)
            text = "".join(text_summary(r) for r in records)
            emit(ns, records, text)
            return code
        if ns.command == "validate":
            doc = io.read_json(ns.record)
            records = doc if isinstance(doc, list) else [doc]
            verdicts = [{"subcommand": r.get("subcommand"), "demo": r.get("demo", {}).get("name"),
                         "valid": replay_record(r)} for r in records]
            ok = all(v["valid"] for v in verdicts)
            emit(ns, {"validate": verdicts, "valid": ok},
                 "".join(f"{v['subcommand']} {v['demo'] or ''}: {'valid' if v['valid'] else 'INVALID'}\n" for v in verdicts))
            return EXIT_OK if ok else EXIT_PROVEN_NEGATIVE
        docs = load_inputs(ns)
        outcome = HANDLERS[ns.command](ns, docs)
        elapsed = time.perf_counter() - start if ns.timing else None
        record = make_record(ns.command, _options(ns), docs, outcome, replay_line(argv), elapsed)
        emit(ns, record, text_summary(record))
        return outcome.exit_code
    except LargenessError as exc:
        print(f"largeness: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
