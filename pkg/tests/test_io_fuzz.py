import pytest

from largeness import io
from largeness.errors import StructuralError
from largeness.fuzz import SWEEPS, capped, semilattice
from largeness.matrix import PairMatrix
from largeness.semigroup import NatWindow, Product, cyclic, validate_semigroup


def test_semigroup_kinds():
    assert io.semigroup_from_json({"kind": "cyclic", "order": 4}) == cyclic(4)
    assert io.semigroup_from_json({"kind": "nat_window", "lo": 0, "hi": 5}) == NatWindow(0, 5)
    p = io.semigroup_from_json({"kind": "product", "left": {"kind": "cyclic", "order": 2},
                                "right": {"kind": "cyclic", "order": 3}})
    assert p == Product(cyclic(2), cyclic(3))


@pytest.mark.parametrize("doc", [
    {"kind": "mystery"},
    {"kind": "finite_table", "order": 3, "table": [[0, 1], [1, 0]]},
    {"kind": "finite_table", "table": "nope"},
    {"kind": "nat_window", "lo": 1},
])
def test_bad_semigroups(doc):
    with pytest.raises(StructuralError):
        io.semigroup_from_json(doc)


def test_pair_matrix_detection():
    doc = {"semigroup": {"kind": "product", "left": {"kind": "cyclic", "order": 3},
                         "right": {"kind": "cyclic", "order": 3}},
           "entries": [[[1, 2]]]}
    assert isinstance(io.matrix_from_json(doc), PairMatrix)


def test_declared_shape_is_checked():
    with pytest.raises(StructuralError):
        io.matrix_from_json({"semigroup": {"kind": "cyclic", "order": 3}, "rows": 2, "entries": [[1]]})


def test_path_references_are_inlined(tmp_path):
    (tmp_path / "s.json").write_text('{"kind": "cyclic", "order": 5}')
    (tmp_path / "a.json").write_text('{"semigroup": "s.json", "members": [1, 2]}')
    doc = io.load_document(tmp_path / "a.json")
    assert doc["semigroup"] == {"kind": "cyclic", "order": 5}
    assert io.set_from_json(doc).members() == [1, 2]


def test_invalid_json(tmp_path):
    p = tmp_path / "x.json"
    p.write_text("{nope")
    with pytest.raises(StructuralError):
        io.read_json(p)


def test_fuzz_semigroups_are_valid():
    for m in range(2, 9):
        assert validate_semigroup(capped(m)).ok
        assert validate_semigroup(semilattice(m)).ok


@pytest.mark.parametrize("kind", sorted(SWEEPS))
def test_short_sweeps_are_clean(kind):
    tally = SWEEPS[kind](seed=5, count=30)
    assert tally.ok, tally.failures[:3]
    assert tally.instances >= 1


def test_sweeps_are_seeded():
    a, b = SWEEPS["witness"](seed=9, count=40), SWEEPS["witness"](seed=9, count=40)
    assert a.to_json() == b.to_json()
