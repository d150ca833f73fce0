import itertools

import pytest

from artifact.codes import Code, c_of, k_word, repetition_z3, tetracode
from artifact.groups import TWISTED, GroupElement, mult
from artifact.lattice import GluedLattice, LatticeVector, beta
from artifact.scalars import ONE, cyc_root, zeta3
from artifact.twisted_rep import (
    Psi,
    TModule,
    decompose,
    equivalence_classes,
    g_of,
    k1_generators,
    kappa3_e_beta,
    subgroup_member,
    t_action,
    twisted_catalog,
)

from helpers import rng


def site_root(s, length):
    return GroupElement.e(beta(1, s, length))


@pytest.mark.parametrize("power", [1, 2])
@pytest.mark.parametrize("eta", [(0, 0, 0), (1, 1, 1), (2, 2, 2), (1, 2, 0), (0, 2, 1)])
def test_action_scalars_on_each_site(eta, power):
    D = repetition_z3(3)
    mod = TModule(D, eta, power)
    sign = 1 if power == 1 else -1
    for gamma in D.words():
        for s in range(3):
            target, scalar = t_action(mod, kappa3_e_beta(s, 3), gamma)
            assert target == tuple(gamma)
            assert scalar == zeta3(eta[s] - sign * gamma[s])
            if power == 1:
                target, scalar = t_action(mod, site_root(s, 3), gamma)
                assert target == tuple(gamma)
                assert scalar == zeta3(-1 + eta[s] - gamma[s])


def test_all_nine_residue_pairs_at_one_site():
    seen = set()
    for eta in itertools.product(range(3), repeat=3):
        D = repetition_z3(3)
        if eta not in D.dual():
            continue
        mod = TModule(D, eta)
        for gamma in D.words():
            _, scalar = t_action(mod, site_root(0, 3), gamma)
            assert scalar == zeta3(-1 + eta[0] - gamma[0])
            seen.add((eta[0], gamma[0]))
    assert len(seen) == 9


def test_psi_values():
    psi = Psi((1,))
    assert psi(kappa3_e_beta(0, 1)) == zeta3(1)
    assert psi(GroupElement(1, LatticeVector.zero(1))) == cyc_root(24)
    assert Psi((0,))(kappa3_e_beta(0, 1)) == ONE


def test_subgroup_examples():
    lat = GluedLattice(Code.zero("K", 1), Code.zero("Z3", 1))
    assert subgroup_member("K0", GroupElement.e(3 * beta(2, 0, 1)), lat)
    assert not subgroup_member("K", GroupElement(1, LatticeVector.zero(1)), lat)
    assert subgroup_member("LC0", GroupElement.e(beta(1, 0, 1)), lat)
    with pytest.raises(ValueError):
        subgroup_member("Q", GroupElement.e(beta(1, 0, 1)), lat)


def test_decompose_round_trip():
    r, gamma, _ = decompose(GroupElement(5, LatticeVector.zero(1)))
    assert r == 5 and not any(gamma)
    r, gamma, _ = decompose(g_of((1,)))
    assert r == 0 and gamma == (1,)


@pytest.mark.parametrize("D,count", [
    (Code.zero("Z3", 1), 3),
    (repetition_z3(3), 3),
    (tetracode(), 1),
])
def test_class_count_is_discriminant(D, count):
    classes = equivalence_classes(D)
    assert len(classes) == count
    assert len(classes) == len(D.dual()) // len(D)
    assert sum(len(c) for c in classes) == len(D.dual())
    assert all(dim == len(D) for _, dim in twisted_catalog(D))


def test_eta_outside_dual_rejected():
    with pytest.raises(ValueError):
        equivalence_classes(repetition_z3(3), [(1, 0, 0)])


@pytest.mark.parametrize("power", [1, 2])
def test_module_is_a_representation(power):
    D = repetition_z3(3)
    lat = GluedLattice(c_of(k_word("cc0")), D)
    mod = TModule(D, (1, 2, 0), power)
    r = rng(17)
    for _ in range(40):
        x = GroupElement(r.randrange(24), lat.random_vector(r))
        y = GroupElement(r.randrange(24), lat.random_vector(r))
        for gamma in D.words():
            vec = {tuple(gamma): ONE}
            assert mod.act(x, mod.act(y, vec)) == mod.act(mult(TWISTED, x, y, power), vec)


@pytest.mark.parametrize("D", [repetition_z3(3), tetracode()], ids=["rep3", "tetracode"])
def test_subgroup_k_acts_trivially(D):
    lat = GluedLattice(Code.zero("K", D.length), D)
    for eta in D.dual().words():
        mod = TModule(D, eta)
        for d in D.words():
            x = g_of(d)
            assert subgroup_member("K", x, lat)
            for gamma in D.words():
                assert t_action(mod, x, gamma) == (tuple(gamma), ONE)


def test_k1_generators_lie_in_k1():
    D = repetition_z3(3)
    lat = GluedLattice(Code.zero("K", 3), D)
    for x in k1_generators(D):
        assert subgroup_member("K1", x, lat)
