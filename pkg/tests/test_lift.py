import numpy as np
import pytest

import brute
from largeness.errors import UsageError, WindowOverflow
from largeness.lift import ap_pair_set, build_lifted_matrix, certified_memberships, lift_end_to_end, lift_witness
from largeness.matrix import Matrix, PairMatrix
from largeness.search import find_cr_witness
from largeness.semigroup import GroundSet, NatWindow, Product, cyclic
from largeness.validate import validate_cr_witness
from largeness.witnesses import CrWitness

Z9 = cyclic(9)
A9 = GroundSet(Z9, [0, 3, 6])


def pair(first, second):
    return PairMatrix.from_components(Matrix(Z9, first), Matrix(Z9, second))


def test_lifted_matrix_blocks():
    Mp = pair(((1, 2), (2, 4)), ((1, 1), (2, 1)))
    lifted = build_lifted_matrix(Mp, 0, 1)
    assert lifted.entries == ((1, 2, 2, 3), (2, 4, 4, 5))


def test_lifted_matrix_with_shift():
    Mp = pair(((1, 2), (2, 4)), ((1, 1), (2, 1)))
    assert build_lifted_matrix(Mp, 1, 1).entries == ((1, 2, 3, 4), (2, 4, 5, 6))


def test_lift_z9_success():
    Mp = pair(((1, 2), (2, 4)), ((2, 1), (1, 2)))
    got = lift_end_to_end(A9, Mp, 2)
    assert got.s == 0
    assert (got.base.alpha, got.base.s) == (0b11, 0)
    assert (got.pair.alpha, got.pair.s) == (0b11, (0, 0))
    assert got.validated


def test_lift_z9_can_fail_for_other_matrices():
    Mp = pair(((1, 2), (2, 4)), ((1, 1), (2, 1)))
    assert lift_end_to_end(A9, Mp, 2) is None


def test_lift_witness_scales_shift_by_alpha_size():
    Mp = pair(((1, 2), (2, 4)), ((2, 1), (1, 2)))
    for s in range(9):
        lifted = build_lifted_matrix(Mp, s, 2)
        base = find_cr_witness(A9, lifted)
        if base is None:
            continue
        out = lift_witness(Mp, s, 2, base, A9)
        assert out.alpha == base.alpha
        assert out.s == (base.s, (base.size * s) % 9)
        assert validate_cr_witness(ap_pair_set(A9, 2), Mp, out)


def test_lift_witness_rejects_bad_base():
    Mp = pair(((1,),), ((1,),))
    with pytest.raises(UsageError):
        lift_witness(Mp, 0, 1, CrWitness(1, 1), A9)


def test_certified_memberships_count():
    Mp = pair(((1, 2), (2, 4)), ((2, 1), (1, 2)))
    got = lift_end_to_end(A9, Mp, 2)
    members = certified_memberships(A9, Mp, 2, got.pair)
    assert len(members) == 2 * 3
    assert all(m.value in (0, 3, 6) for m in members)


def test_ap_pair_set_window_matches_oracle():
    s = NatWindow(1, 20)
    C = ap_pair_set(GroundSet(s, range(3, 21, 3)), 2)
    assert set(C.members()) == brute.ap_pairs_window(1, 20, range(3, 21, 3), 2)
    assert (3, 3) in C and (3, 2) not in C
    assert len(C) == 6


def test_ap_pair_set_observability():
    C = ap_pair_set(GroundSet(NatWindow(1, 20), range(3, 21, 3)), 2)
    assert C.observable((2, 3))
    assert not C.observable((15, 3))


def test_ap_pair_set_cyclic_matches_direct_enumeration():
    rng = np.random.default_rng(11)
    for _ in range(20):
        m = int(rng.integers(2, 9))
        members = set(rng.integers(0, m, size=m).tolist())
        L = int(rng.integers(1, 4))
        C = ap_pair_set(GroundSet(cyclic(m), members), L)
        want = {(a, b) for a in range(m) for b in range(m) if all((a + i * b) % m in members for i in range(L + 1))}
        assert set(C.members()) == want


def test_build_lifted_matrix_window_overflow():
    s = NatWindow(1, 9)
    Mp = PairMatrix.from_components(Matrix(s, ((5,),)), Matrix(s, ((4,),)))
    with pytest.raises(WindowOverflow):
        build_lifted_matrix(Mp, 1, 1)


def test_box_must_sit_inside_base():
    with pytest.raises(UsageError):
        ap_pair_set(GroundSet(NatWindow(1, 10), [2]), 1, Product(NatWindow(1, 20), NatWindow(1, 20)))


def test_steps_must_be_positive():
    with pytest.raises(UsageError):
        ap_pair_set(A9, 0)
