from largeness.chains import chain_from_sets, complete_shifts, inclusion_failure, lift_chain, validate_chain
from largeness.lift import ap_pair_set
from largeness.semigroup import GroundSet, NatWindow, cyclic

Z6 = cyclic(6)


def z6_chain(**extra):
    return chain_from_sets(Z6, [[0, 2, 4], [0]], {(1, 0): 1, (1, 2): 1, (1, 4): 1, (2, 0): 2}, **extra)


def test_z6_chain_passes():
    report = validate_chain(z6_chain(), GroundSet(Z6, [0, 2, 4]))
    assert report.passed
    assert report.cr_ok is None


def test_z6_chain_exact_cr_levels():
    report = validate_chain(z6_chain(cr_params={"n": 2, "r": 2}), GroundSet(Z6, [0, 2, 4]))
    # {0, 2, 4} is CR at (2, 2); {0} needs six rows in Z_6
    assert [lvl["ok"] for lvl in report.cr] == [True, False]
    assert not report.passed


def test_wrong_shift_entry_is_reported_and_repaired():
    # C_1 = {0, 2, 4} is not inside -0 + C_2 = {0}
    cert = chain_from_sets(Z6, [[0, 2, 4], [0]], {(1, 0): 1, (1, 2): 1, (1, 4): 1, (2, 0): 1})
    report = validate_chain(cert, GroundSet(Z6, [0, 2, 4]))
    assert not report.shift_ok
    fixed = complete_shifts(cert)
    assert fixed.shift_map[(2, 0)] == 2
    assert validate_chain(fixed, GroundSet(Z6, [0, 2, 4])).passed


def test_missing_shift_needs_search():
    cert = chain_from_sets(Z6, [[0, 2, 4], [0]], {})
    assert [(c.n, c.x) for c in validate_chain(cert, GroundSet.universe(Z6)).missing] == [(1, 0), (1, 2), (1, 4), (2, 0)]
    assert validate_chain(cert, GroundSet.universe(Z6), search_shifts=True).shift_ok


def test_increasing_chain_fails_decrease():
    cert = chain_from_sets(Z6, [[0], [0, 3]], {})
    assert validate_chain(cert, GroundSet.universe(Z6), search_shifts=True).decrease == [2]


def test_constant_universe_chain():
    members = list(range(6))
    identity = {(n, x): n for n in (1, 2, 3) for x in members}
    cert = chain_from_sets(Z6, [members] * 3, identity)
    assert validate_chain(cert, GroundSet.universe(Z6)).passed
    lifted = lift_chain(cert, 2)
    assert lifted.ok
    assert all(len(B) == 36 for B in lifted.certificate.sets)


def test_inclusion_failure_reports_first_bad_element():
    C1, C2 = GroundSet(Z6, [0, 2, 4]), GroundSet(Z6, [0])
    failure, checked, skipped = inclusion_failure(C1, 0, C2)
    assert failure == 2 and skipped == 0


def test_window_chain_lift():
    s = NatWindow(1, 40)
    cert = complete_shifts(chain_from_sets(s, [range(2, 41, 2), range(4, 41, 4)]))
    assert validate_chain(cert, GroundSet(s, range(2, 41, 2))).passed
    lifted = lift_chain(cert, 1)
    assert lifted.ok and len(lifted.checks) == 235
    B = ap_pair_set(GroundSet(s, range(2, 41, 2)), 1)
    report = validate_chain(lifted.certificate, B)
    assert report.structural_ok
    assert report.window_relative


def test_lifted_chain_to_json_round_trip():
    from largeness.io import chain_from_json

    lifted = lift_chain(complete_shifts(z6_chain()), 1)
    doc = lifted.certificate.to_json()
    back = chain_from_json(doc)
    assert back.sets == lifted.certificate.sets
    assert back.shift_map == lifted.certificate.shift_map
