"""Computational largeness notions in commutative semigroups.

Syndetic, thick and piecewise syndetic sets, J-sets and CR-sets over finite
tables and integer windows, plus the lift of CR witnesses from a set to its
set of arithmetic-progression pairs and the matching lift of decreasing-chain
certificates.
"""

from .chains import ChainCertificate, complete_shifts, lift_chain, validate_chain
from .checks import find_pws_witness, find_syndetic_witness, find_thick_witness
from .errors import (
    CostGuardExceeded,
    LargenessError,
    StructuralError,
    UnsupportedOperation,
    UsageError,
    WindowOverflow,
)
from .lift import ap_pair_set, build_lifted_matrix, lift_end_to_end, lift_witness
from .matrix import Matrix, PairMatrix, concat, row_sum
from .search import check_cr_full, cr_degree, extract_ap, find_cr_witness, find_j_witness, translate_witness
from .semigroup import (
    FiniteTable,
    GroundSet,
    NatWindow,
    Product,
    add,
    cyclic,
    preimage_shift,
    repeat_add,
    translate,
    validate_semigroup,
)
from .vdw import vdw_demo
from .witnesses import CrWitness, JWitness, SeqFamily, Verdict

__all__ = [
    "ChainCertificate", "CostGuardExceeded", "CrWitness", "FiniteTable", "GroundSet", "JWitness",
    "LargenessError", "Matrix", "NatWindow", "PairMatrix", "Product", "SeqFamily", "StructuralError",
    "UnsupportedOperation", "UsageError", "Verdict", "WindowOverflow", "add", "ap_pair_set",
    "build_lifted_matrix", "check_cr_full", "complete_shifts", "concat", "cr_degree", "cyclic",
    "extract_ap", "find_cr_witness", "find_j_witness", "find_pws_witness", "find_syndetic_witness",
    "find_thick_witness", "lift_chain", "lift_end_to_end", "lift_witness", "preimage_shift",
    "repeat_add", "row_sum", "translate", "translate_witness", "validate_chain", "validate_semigroup",
    "vdw_demo",
]
