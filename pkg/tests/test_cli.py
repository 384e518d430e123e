import json
from pathlib import Path

import pytest

from largeness.cli import demo_cases, run

DATA = Path(__file__).resolve().parent.parent / "data"


def invoke(capsys, *argv):
    code = run([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def record_of(capsys, *argv):
    code, out, _ = invoke(capsys, *argv)
    return code, json.loads(out)


def test_concat_golden(capsys):
    code, rec = record_of(capsys, "concat", "--inputs", DATA / "concat_A.json", DATA / "concat_B.json", DATA / "concat_C.json")
    assert code == 0
    assert rec["result"]["entries"] == [[3, 6, 5, 8, 9, 1, 6], [7, 4, 6, 8, 3, 5, 9], [1, 3, 7, 9, 2, 1, 8]]
    assert rec["inputs"]["inputs"][0]["semigroup"] == {"kind": "nat_window", "lo": 1, "hi": 100}
    assert rec["input_digest"].startswith("sha256:")


def test_cr_witness_record(capsys):
    code, rec = record_of(capsys, "cr-witness", "--set", DATA / "z9_A.json", "--matrix", DATA / "z9_matrix.json")
    assert code == 0 and rec["validated"] is True
    assert rec["result"]["alpha"] == [1, 2] and rec["result"]["s"] == 0


def test_vdw_exit_codes(capsys):
    assert invoke(capsys, "vdw", "--terms", 3, "--colors", 2, "--upto", 9)[0] == 0
    code, rec = record_of(capsys, "vdw", "--terms", 3, "--colors", 2, "--upto", 8)
    assert code == 1 and rec["validated"] is True


def test_window_negative_is_exit_2(capsys):
    code, rec = record_of(capsys, "syndetic", "--set", DATA / "mult3_window30.json", "--max-card", 2)
    assert code == 2
    assert rec["result"]["scope"] == "window"


def test_bound_negative_is_exit_2(capsys):
    code, rec = record_of(capsys, "cr-degree", "--set", DATA / "z4_evens.json", "--n", 2, "--r-max", 1)
    assert code == 2 and rec["result"]["result"] == "not_found_up_to"


def test_finite_negative_is_exit_1(capsys):
    code, rec = record_of(capsys, "cr-check", "--set", DATA / "z4_evens.json", "--n", 2, "--r", 1)
    assert code == 1 and rec["result"]["counterexample"] == [[0, 1]]


@pytest.mark.parametrize("argv", [
    ["bogus"],
    [],
    ["vdw", "--terms", "3"],
    ["cr-check", "--set", "does-not-exist.json", "--n", "1", "--r", "1"],
])
def test_usage_errors_exit_3(capsys, argv):
    assert invoke(capsys, *argv)[0] == 3


def test_structural_error_exit_3(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"semigroup": {"kind": "finite_table", "table": [[0, 2], [1, 0]]}, "members": [0]}))
    code, _, err = invoke(capsys, "syndetic", "--set", bad)
    assert code == 3 and "error" in err


def test_cr_check_on_window_is_refused(capsys):
    code, _, err = invoke(capsys, "cr-check", "--set", DATA / "evens100.json", "--n", 1, "--r", 1)
    assert code == 3


def test_cost_guard_and_force(capsys, monkeypatch):
    monkeypatch.setenv("LARGENESS_COST_GUARD", "100")
    argv = ["cr-check", "--set", DATA / "z4_evens.json", "--n", 2, "--r", 2]
    assert invoke(capsys, *argv)[0] == 3
    assert invoke(capsys, *argv, "--force")[0] == 0


def test_replay_line_drops_volatile_options(capsys, tmp_path):
    out = tmp_path / "rec.json"
    code = run(["vdw", "--terms", "3", "--colors", "2", "--upto", "9", "--workers", "4", "--out", str(out)])
    rec = json.loads(out.read_text())
    assert code == 0
    assert rec["replay"] == "largeness vdw --terms 3 --colors 2 --upto 9"
    assert "wall_time_s" not in rec


def test_timing_flag(capsys):
    _, rec = record_of(capsys, "vdw", "--terms", 3, "--colors", 2, "--upto", 5, "--timing")
    assert rec["wall_time_s"] >= 0


def test_validate_record_round_trip(tmp_path, capsys):
    out = tmp_path / "rec.json"
    run(["lift", "--set", str(DATA / "z9_A.json"), "--pair-matrix", str(DATA / "z9_pair_matrix.json"),
         "--steps", "2", "--out", str(out)])
    code, rep = record_of(capsys, "validate", "--record", out)
    assert code == 0 and rep["valid"]

    rec = json.loads(out.read_text())
    rec["result"]["pair_witness"]["s"] = [1, 0]
    out.write_text(json.dumps(rec))
    code, rep = record_of(capsys, "validate", "--record", out)
    assert code == 1 and not rep["valid"]


def test_validate_replays_negatives(tmp_path, capsys):
    out = tmp_path / "rec.json"
    run(["cr-degree", "--set", str(DATA / "z4_evens.json"), "--n", "2", "--r-max", "1", "--out", str(out)])
    assert record_of(capsys, "validate", "--record", out)[1]["valid"]


def test_text_format(capsys):
    code, out, _ = invoke(capsys, "thick", "--set", DATA / "interval40_60.json", "--format", "text")
    assert code == 0 and "x: 39" in out


def test_chain_commands(capsys):
    code, rec = record_of(capsys, "chain-validate", "--set", DATA / "z6_evens.json", "--cert", DATA / "z6_chain.json")
    assert code == 0 and rec["result"]["passed"]
    code, rec = record_of(capsys, "chain-lift", "--set", DATA / "evens40.json", "--cert", DATA / "window40_chain.json",
                          "--steps", 1, "--search-shifts")
    assert code == 0 and rec["result"]["lift_checks"] == 235


def test_fuzz_small(capsys):
    code, rec = record_of(capsys, "fuzz", "--kind", "translate", "--count", 20)
    assert code == 0 and rec["result"]["sweeps"][0]["validated"] == 20


def test_demo_single_case(capsys):
    code, recs = record_of(capsys, "demo", "--only", "vdw-3-2-8")
    assert code == 0 and len(recs) == 1 and recs[0]["exit_code"] == 1


def test_demo_suite_expectations_and_replay(tmp_path, capsys):
    out = tmp_path / "demo.json"
    assert run(["demo", "--out", str(out)]) == 0
    recs = json.loads(out.read_text())
    assert [r["demo"]["name"] for r in recs] == [c[0] for c in demo_cases()]
    code, rep = record_of(capsys, "validate", "--record", out)
    assert code == 0 and rep["valid"]
