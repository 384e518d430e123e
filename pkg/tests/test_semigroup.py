import numpy as np
import pytest

from largeness.errors import StructuralError, UsageError
from largeness.semigroup import (
    FiniteTable,
    GroundSet,
    NatWindow,
    Product,
    all_subsets,
    cyclic,
    preimage_shift,
    repeat_add,
    translate,
    validate_semigroup,
)


def test_cyclic_table_and_report():
    z = cyclic(5)
    assert z.add(3, 4) == 2
    assert z.is_total and z.is_cyclic_group
    assert validate_semigroup(z).ok


def test_non_commutative_table_reports_failure():
    # left projection x*y = x is associative but not commutative
    t = FiniteTable(((0, 0), (1, 1)))
    rep = validate_semigroup(t)
    assert not rep.ok
    assert (0, 1) in rep.commutativity
    assert rep.associativity == ()


def test_non_associative_table_reports_failure():
    t = FiniteTable(((1, 0, 2), (0, 2, 1), (2, 1, 0)))
    rep = validate_semigroup(t)
    assert rep.commutativity == ()
    assert (0, 0, 1) in rep.associativity


@pytest.mark.parametrize("rows", [((0, 2), (1, 0)), ((0, 1),), ((0, 1), (1,))])
def test_malformed_tables_are_structural_errors(rows):
    with pytest.raises(StructuralError):
        FiniteTable(rows)


def test_nat_window_partial_addition():
    w = NatWindow(1, 10)
    assert w.add(4, 6) == 10
    assert w.add(5, 6) is None
    assert not w.is_total
    assert list(w.row(w.index(9))[:3]) == [w.index(10), -1, -1]


def test_product_is_lexicographic_and_componentwise():
    p = Product(cyclic(2), cyclic(3))
    assert p.elements[:4] == ((0, 0), (0, 1), (0, 2), (1, 0))
    assert p.add((1, 2), (1, 2)) == (0, 1)
    assert p.index((1, 1)) == 4


def test_repeat_add_matches_multiplication_and_overflow():
    assert repeat_add(cyclic(7), 4, 3) == 5
    assert repeat_add(NatWindow(1, 10), 3, 3) == 9
    assert repeat_add(NatWindow(1, 10), 4, 3) is None
    with pytest.raises(UsageError):
        repeat_add(cyclic(3), 0, 1)


def test_preimage_shift_on_z6():
    A = GroundSet(cyclic(6), [0, 2, 4])
    assert preimage_shift(A, 1).members() == [1, 3, 5]
    assert translate(A, 1).members() == [1, 3, 5]


def test_translate_drops_overflowing_sums():
    A = GroundSet(NatWindow(1, 10), [2, 8, 9])
    assert translate(A, 2).members() == [4, 10]


def test_ground_set_algebra():
    s = cyclic(6)
    A, B = GroundSet(s, [0, 1, 2]), GroundSet(s, [2, 3])
    assert A.union(B).members() == [0, 1, 2, 3]
    assert A.intersection(B).members() == [2]
    assert A.difference(B).members() == [0, 1]
    assert GroundSet(s, [2]).issubset(A)
    assert 1 in A and 5 not in A
    assert A == GroundSet.from_mask(s, np.array([1, 1, 1, 0, 0, 0], dtype=bool))


def test_ground_set_rejects_foreign_elements():
    with pytest.raises((StructuralError, UsageError)):
        GroundSet(NatWindow(1, 5), [7])


def test_all_subsets_count():
    assert sum(1 for _ in all_subsets(cyclic(3))) == 8
