import itertools
import random

import pytest

from artifact.characters import ModuleLabel, catalog_count_formula, parse_label
from artifact.codes import Code, repetition_z3
from artifact.fusion import (
    UNDEFINED,
    FusionVector,
    SubalgebraLabel,
    compare_rings,
    fuse_D,
    fuse_Ll,
    fuse_Mk,
    fuse_Mt,
    fuse_VL,
    ring_D,
    ring_Ll,
    ring_Mk,
    ring_Mt,
    ring_VL,
)

L = parse_label


def test_untwisted_products():
    assert fuse_VL(L("V(0,1)[1]"), L("V(0,1)[2]")) == FusionVector({L("V(0,2)[0]"): 1})
    assert fuse_VL(L("V(0,1)[1]"), L("V(c,1)")) == FusionVector({L("V(c,2)"): 1})
    expected = FusionVector({L("V(0,0)[0]"): 1, L("V(0,0)[1]"): 1, L("V(0,0)[2]"): 1, L("V(c,0)"): 2})
    assert fuse_VL(L("V(c,1)"), L("V(c,2)")) == expected


def test_untwisted_times_twisted():
    assert fuse_VL(L("V(0,1)[2]"), L("T(0,1)[1]")) == FusionVector({L("T(2,1)[0]"): 1})
    assert fuse_VL(L("V(0,1)[2]"), L("T(0,2)[1]")) == FusionVector({L("T(1,2)[2]"): 1})
    spread = fuse_VL(L("V(c,1)"), L("T(0,2)[1]"))
    assert spread == FusionVector({L(f"T(1,2)[{e}]"): 1 for e in range(3)})


def test_twisted_times_twisted_is_undefined():
    assert fuse_VL(L("T(0,1)[0]"), L("T(0,2)[0]")) is UNDEFINED
    assert not UNDEFINED


def test_length_checked():
    with pytest.raises(ValueError):
        fuse_VL(L("V(00,00)[0]"), L("V(0,0)[0]"))


def test_thirty_label_ring():
    ring = ring_VL()
    assert len(ring.labels) == 30
    assert ring.check_commutativity().ok
    report = ring.check_associativity()
    assert report.ok and report.instances_checked > 9000
    assert ring.check_identity(L("V(0,0)[0]")).ok


def test_single_site_orbifold_ring_equals_thirty_label_ring():
    report = compare_rings(ring_Ll(1), ring_VL())
    assert report.ok and report.instances_checked == 900


def test_ring_rejects_foreign_labels():
    with pytest.raises(ValueError):
        ring_VL().multiply(L("V(00,00)[0]"), L("V(0,0)[0]"))


@pytest.mark.parametrize("ell", [1, 2])
def test_label_counts(ell):
    assert len(ring_Ll(ell).labels) == catalog_count_formula(ell)


def test_length_two_ring_samples():
    ring = ring_Ll(2)
    assert ring.check_commutativity().ok
    assert ring.check_identity(L("V(00,00)[0]")).ok
    rng = random.Random(2)
    triples = [tuple(rng.choice(ring.labels) for _ in range(3)) for _ in range(4000)]
    report = ring.check_associativity(triples)
    assert report.ok and report.instances_checked > 1000


def test_length_zero_code_is_the_lattice_case():
    a, b = L("V(c0,12)"), L("T(21,1)[2]")
    assert fuse_Ll(2, a, b) == fuse_D(Code.zero("Z3", 2), a, b)


def test_repetition_code_ring():
    D = repetition_z3(3)
    ring = ring_D(D)
    assert len(ring.labels) == 90
    assert ring.check_commutativity().ok
    rng = random.Random(3)
    triples = [tuple(rng.choice(ring.labels) for _ in range(3)) for _ in range(2000)]
    assert ring.check_associativity(triples).ok


def test_repetition_code_labels_reduce_mod_code():
    D = repetition_z3(3)
    a = ModuleLabel.untwisted((0, 0, 0), (1, 1, 1), 0)
    b = ModuleLabel.untwisted((0, 0, 0), (0, 0, 0), 1)
    assert fuse_D(D, a, b) == FusionVector({ModuleLabel.untwisted((0, 0, 0), (0, 0, 0), 1): 1})


def test_mt_ring_exhaustive():
    ring = ring_Mt()
    assert len(ring.labels) == 6
    assert ring.check_commutativity().ok
    assert ring.check_associativity().instances_checked == 216
    assert ring.check_associativity().ok
    assert ring.check_identity(SubalgebraLabel("M_t", 0)).ok
    w1, w2 = SubalgebraLabel("W_t", 1), SubalgebraLabel("W_t", 2)
    assert fuse_Mt(w1, w2) == FusionVector({SubalgebraLabel("M_t", 0): 1, SubalgebraLabel("W_t", 0): 1})


def test_mk_partial_ring():
    ring = ring_Mk()
    assert len(ring.labels) == 20
    assert ring.check_commutativity().ok
    assert ring.check_associativity().ok
    unit = SubalgebraLabel("M_k0", 0, 0)
    for lab in ring.labels:
        if lab.family.startswith("M"):
            assert fuse_Mk(unit, lab) == FusionVector({lab: 1})
        else:
            assert fuse_Mk(unit, lab) is UNDEFINED
    twisted = SubalgebraLabel("M_T", 1, 0)
    assert fuse_Mk(twisted, twisted) is UNDEFINED


def test_table_lines():
    lines = ring_Mt().table()
    assert len(lines) == 21
    assert "M_t^1 x M_t^2 = M_t^0" in lines
