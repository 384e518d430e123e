import pytest

import brute
from largeness.errors import CostGuardExceeded
from largeness.vdw import has_mono_ap, progressions, vdw_demo


def test_w32_is_nine():
    assert vdw_demo(3, 2, 9).holds
    v = vdw_demo(3, 2, 8)
    assert not v.holds
    assert not has_mono_ap(list(v.counterexample), 3)


def test_counterexample_is_first_in_lex_order():
    assert vdw_demo(3, 2, 8).counterexample == (0, 0, 1, 1, 0, 0, 1, 1)


@pytest.mark.parametrize("k,c,N", [(3, 2, 6), (3, 2, 8), (3, 3, 7), (4, 2, 10)])
def test_free_coloring_existence_matches_oracle(k, c, N):
    assert vdw_demo(k, c, N).holds == (brute.mono_ap_free_colorings(k, c, N) == 0)


def test_progression_count():
    # 3-APs in [1, 9]: sum over d of (9 - 2d)
    assert len(progressions(3, 9)) == 7 + 5 + 3 + 1


def test_parallel_matches_sequential():
    assert vdw_demo(3, 2, 8, workers=4).counterexample == vdw_demo(3, 2, 8).counterexample


def test_guard():
    with pytest.raises(CostGuardExceeded):
        vdw_demo(3, 3, 27)
