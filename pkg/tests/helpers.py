"""Shared small lattices for the tests."""

import random

from artifact.codes import Code, c_of, e8_klein_code, k_word, repetition_z3, tetracode
from artifact.lattice import GluedLattice


def even_lattices():
    """Even glued lattices of length 1 to 4 built from tau-invariant even C and self-orthogonal D."""
    return [
        GluedLattice(Code.zero("K", 1), Code.zero("Z3", 1)),
        GluedLattice(c_of(k_word("cc")), Code.zero("Z3", 2)),
        GluedLattice(c_of(k_word("cc0")), repetition_z3(3)),
        GluedLattice(e8_klein_code(), tetracode()),
    ]


def rng(seed=0):
    return random.Random(seed)
