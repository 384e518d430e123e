"""Algebraic invariants checked with hypothesis."""

from hypothesis import given, settings, strategies as st

from largeness.checks import find_pws_witness, find_syndetic_witness, find_thick_witness
from largeness.matrix import Matrix, PairMatrix, concat
from largeness.search import find_cr_witness
from largeness.semigroup import GroundSet, NatWindow, cyclic, preimage_shift, repeat_add
from largeness.validate import validate_cr_witness, validate_pws

orders = st.integers(min_value=2, max_value=9)


@st.composite
def cyclic_set(draw, min_size=0):
    m = draw(orders)
    members = draw(st.sets(st.integers(0, m - 1), min_size=min_size, max_size=m))
    return GroundSet(cyclic(m), members)


@st.composite
def cyclic_matrix(draw, m, max_r=3, max_n=3):
    r = draw(st.integers(1, max_r))
    n = draw(st.integers(1, max_n))
    rows = draw(st.lists(st.lists(st.integers(0, m - 1), min_size=n, max_size=n), min_size=r, max_size=r))
    return Matrix(cyclic(m), tuple(map(tuple, rows)))


@given(cyclic_set(), st.data())
def test_preimage_round_trip(A, data):
    s = A.semigroup
    t = data.draw(st.integers(0, s.size - 1))
    pre = preimage_shift(A, t)
    assert all((x in pre) == (s.add(t, x) in A) for x in s.elements)


@given(st.integers(0, 12), st.integers(1, 20), st.integers(1, 8))
def test_window_preimage_skips_undefined(lo, width, t):
    s = NatWindow(lo, lo + width)
    A = GroundSet.from_predicate(s, lambda x: x % 2 == 0)
    tt = min(t + lo, s.hi)
    pre = preimage_shift(A, tt)
    for x in s.elements:
        y = s.add(tt, x)
        assert (x in pre) == (y is not None and y in A)


@given(orders, st.integers(1, 10), st.data())
def test_repeat_add_recursion(m, k, data):
    s = cyclic(m)
    x = data.draw(st.integers(0, m - 1))
    assert repeat_add(s, k + 1, x) == s.add(repeat_add(s, k, x), x)
    assert repeat_add(s, k, x) == (k * x) % m


@given(cyclic_set(min_size=1), st.data())
def test_cr_witness_survives_supersets(A, data):
    s = A.semigroup
    M = data.draw(cyclic_matrix(s.size))
    extra = data.draw(st.sets(st.integers(0, s.size - 1)))
    B = A.union(GroundSet(s, extra))
    w = find_cr_witness(A, M)
    if w is not None:
        assert validate_cr_witness(B, M, w)
    else:
        assert find_cr_witness(GroundSet(s, []), M) is None


@given(cyclic_set(min_size=1), st.data())
def test_cr_row_and_column_monotone(A, data):
    s = A.semigroup
    M = data.draw(cyclic_matrix(s.size, max_r=3, max_n=3))
    w = find_cr_witness(A, M)
    extra_row = tuple(data.draw(st.lists(st.integers(0, s.size - 1), min_size=M.n, max_size=M.n)))
    taller = Matrix(s, M.entries + (extra_row,))
    if w is not None:
        assert validate_cr_witness(A, taller, w)
        if M.n > 1:
            narrower = Matrix(s, tuple(row[:-1] for row in M.entries))
            assert validate_cr_witness(A, narrower, w)


@given(orders, st.data())
def test_concat_associative(m, data):
    s = cyclic(m)
    r = data.draw(st.integers(1, 3))
    mats = []
    for _ in range(3):
        n = data.draw(st.integers(1, 3))
        rows = data.draw(st.lists(st.lists(st.integers(0, m - 1), min_size=n, max_size=n), min_size=r, max_size=r))
        mats.append(Matrix(s, tuple(map(tuple, rows))))
    A, B, C = mats
    assert concat(concat(A, B), C) == concat(A, concat(B, C)) == concat(A, B, C)
    assert concat(A, B, C).n == A.n + B.n + C.n


@given(orders, st.data())
def test_pair_matrix_decomposition_round_trip(m, data):
    first = data.draw(cyclic_matrix(m))
    rows = data.draw(st.lists(st.lists(st.integers(0, m - 1), min_size=first.n, max_size=first.n),
                              min_size=first.r, max_size=first.r))
    second = Matrix(first.semigroup, tuple(map(tuple, rows)))
    P = PairMatrix.from_components(first, second)
    assert P.components() == (first, second)


@settings(max_examples=60)
@given(cyclic_set(min_size=1), cyclic_set())
def test_syndetic_meets_thick(A, B):
    s = A.semigroup
    B = GroundSet(s, [x for x in B.members() if x < s.size])
    w = find_syndetic_witness(A, s.size)
    thick = find_thick_witness(B, list(w.F))
    if thick is not None:
        assert any(s.add(t, thick.x) in A and s.add(t, thick.x) in B for t in w.F)


@settings(max_examples=60)
@given(cyclic_set(min_size=1), st.data())
def test_syndetic_implies_piecewise_syndetic(A, data):
    s = A.semigroup
    w = find_syndetic_witness(A, s.size)
    E = data.draw(st.lists(st.integers(0, s.size - 1), min_size=1, max_size=3, unique=True))
    p = find_pws_witness(A, len(w.F), E)
    assert p is not None and validate_pws(A, p)
