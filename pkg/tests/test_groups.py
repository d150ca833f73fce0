import pytest

from artifact.groups import (
    TWISTED,
    UNTWISTED,
    GroupElement,
    c0,
    c0_tau,
    commutator,
    eps0,
    eps1,
    gpow,
    inverse,
    mult,
    tau_lift,
    theta_lift,
    theta_lift_via_inverse,
)
from artifact.lattice import LatticeVector, inner_product, tau_vec
from artifact.twisted_rep import kappa3_e_beta

from helpers import even_lattices, rng

BT1, BT2 = LatticeVector((1, 0)), LatticeVector((0, 1))
B1, B2 = LatticeVector((2, 0)), LatticeVector((2, -6))


def kappa(p, length=1):
    return GroupElement(p, LatticeVector.zero(length))


def test_eps1_examples():
    assert eps1(BT2, BT1) == 18
    assert eps1(BT1, BT2) == 0
    assert eps1(B1, B2) == 0


def test_c0_formula():
    r = rng(1)
    for lat in even_lattices():
        for _ in range(50):
            u, v = lat.random_vector(r), lat.random_vector(r)
            direct = 6 * sum(m1 * n2 - m2 * n1 for (m1, m2), (n1, n2) in zip(u.pairs(), v.pairs()))
            assert c0(u, v) == direct % 24
            assert c0(u, v) == (12 * inner_product(u, v) + 24 * inner_product(u, tau_vec(v))) % 24


def test_untwisted_roots_commute():
    x, y = GroupElement.e(B1), GroupElement.e(B2)
    assert mult(UNTWISTED, x, y) == mult(UNTWISTED, y, x)


def test_twisted_root_times_negative_root():
    assert mult(TWISTED, GroupElement.e(B1), GroupElement.e(-B1)) == kappa(8)


def test_twisted_cube_of_kappa3_root():
    assert gpow(TWISTED, kappa3_e_beta(0, 1), 3) == GroupElement.e(3 * B1)


def test_tau_lift_examples():
    assert tau_lift(GroupElement.e(BT1)) == GroupElement(3, BT1 - 3 * BT2)
    assert tau_lift(GroupElement.e(B1)) == GroupElement.e(B2)


def test_theta_lift_examples():
    assert theta_lift(kappa(1)) == kappa(1)
    d = LatticeVector((0, -6))
    assert theta_lift(GroupElement.e(d)) == GroupElement.e(-d)


def test_literal_inverse_formula_inverts_centre():
    assert theta_lift_via_inverse(kappa(1)) == kappa(-1)


@pytest.mark.parametrize("kind", [UNTWISTED, TWISTED])
@pytest.mark.parametrize("power", [1, 2])
def test_group_laws_on_random_samples(kind, power):
    r = rng(11)
    for lat in even_lattices()[:3]:
        for _ in range(40):
            x, y, z = (GroupElement(r.randrange(24), lat.random_vector(r)) for _ in range(3))
            assert mult(kind, mult(kind, x, y, power), z, power) == mult(kind, x, mult(kind, y, z, power), power)
            assert mult(kind, x, inverse(kind, x, power), power).is_identity()
            assert tau_lift(x, 3) == x
            assert theta_lift(theta_lift(x)) == x
            assert theta_lift(tau_lift(x)) == tau_lift(theta_lift(x))
            for f in (lambda g: tau_lift(g), theta_lift):
                assert f(mult(kind, x, y, power)) == mult(kind, f(x), f(y), power)


def test_commutators_and_compatibility():
    r = rng(13)
    for lat in even_lattices()[:3]:
        n = lat.length
        for _ in range(60):
            x, y = GroupElement(r.randrange(24), lat.random_vector(r)), GroupElement(r.randrange(24), lat.random_vector(r))
            a, b = x.bar, y.bar
            assert commutator(UNTWISTED, x, y) == kappa(12 * inner_product(a, b), n)
            for power in (1, 2):
                assert commutator(TWISTED, x, y, power) == kappa(c0_tau(a, b, power), n)
                lhs = eps0(a, b, power) - eps0(b, a, power)
                assert (lhs - c0(a, b) + c0_tau(a, b, power)) % 24 == 0
