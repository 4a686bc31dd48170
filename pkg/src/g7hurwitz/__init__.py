"""Hurwitz orbits of reflection factorizations in the complex reflection group G7.

The group is built exactly over Q(zeta_12) from three 2x2 matrices; from there
the package enumerates its reflection subgroups, acts on reflection tuples by
Hurwitz moves, decides orbit equality by invariants, checks that decision
exhaustively on small lengths, and computes standard orbit representatives in
the two copies of G4.
"""

from .cyclo import CycNum
from .decider import EquivalenceVerdict, VerificationReport, decide, decide_by_bfs, verify_class_searchable, verify_theorem
from .hurwitz import Factorization, hurwitz_move, hurwitz_move_inverse, invariants_of, orbit
from .matgroup import GroupTable, Mat2, SubgroupRecord, build_g7, closure, lattice, parse_factorization, parse_word, subgroup_census
from .normform import NormalForm, normalize

__all__ = [
    "CycNum",
    "Mat2",
    "GroupTable",
    "SubgroupRecord",
    "build_g7",
    "closure",
    "subgroup_census",
    "lattice",
    "parse_word",
    "parse_factorization",
    "Factorization",
    "hurwitz_move",
    "hurwitz_move_inverse",
    "orbit",
    "invariants_of",
    "decide",
    "decide_by_bfs",
    "EquivalenceVerdict",
    "VerificationReport",
    "verify_theorem",
    "verify_class_searchable",
    "normalize",
    "NormalForm",
]

__version__ = "0.1.0"
