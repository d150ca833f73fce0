"""The twisted-sector subgroups, the characters psi_eta and the modules T_eta.

Inside the twisted extension over L_{C x D} (twisting automorphism
t = tau^power) we use:

* K0 = {a t(a)^-1 : a over L_{C x 0}}, whose image is M0 = (1 - t) L_{C x 0};
* g(gamma) = prod_s (kappa_3 e^{b1 at site s})^{gamma_s};
* K2 = union of g(gamma) K0 over all gamma, K1 over gamma in D^perp and
  K over gamma in D.

Every element x over L_{C x 0} factors uniquely as kappa^r g(gamma) k with
gamma = varphi(bar x) and k in K0, which makes membership tests and the
character psi_eta(x) = zeta_24^r zeta_3^{<gamma, eta>} computable.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from dataclasses import dataclass
from typing import Dict, Iterable, List, Tuple

from .codes import Code, Z3Word, z3_add, z3_inner, z3_sub, z3_word
from .groups import TWISTED, GroupElement, gpow, inverse, mult, product, tau_lift
from .lattice import (
    GluedLattice,
    LatticeVector,
    a_of,
    beta,
    coset_of,
    one_minus_tau_inverse,
    radical_member,
    varphi,
)
from .scalars import Cyclotomic, cyc_root, zeta3

SUBGROUP_LABELS = ("M0", "M", "R", "LC0", "K0", "K", "K1", "K2")


def _tmul(x, y, power):
    return mult(TWISTED, x, y, power)


def _tinv(x, power):
    return inverse(TWISTED, x, power)


def kappa3_e_beta(s: int, length: int, sign: int = 1, i: int = 1) -> GroupElement:
    """kappa_3 e^{+-b_i at site s}."""
    return GroupElement(8, beta(i, s, length) * sign)


def g_of(gamma, power: int = 1, i: int = 1) -> GroupElement:
    """prod_s (kappa_3 e^{b_i at s})^{gamma_s} in the twisted extension."""
    return _g_of(z3_word(gamma), power % 3, i)


@lru_cache(maxsize=65536)
def _g_of(gamma: Z3Word, power: int, i: int) -> GroupElement:
    n = len(gamma)
    out = GroupElement(0, LatticeVector.zero(n))
    for s, g in enumerate(gamma):
        out = _tmul(out, gpow(TWISTED, kappa3_e_beta(s, n, 1, i), g, power), power)
    return out


def k0_element(a_bar: LatticeVector, power: int = 1) -> GroupElement:
    """e^a t(e^a)^-1 in the twisted extension."""
    ea = GroupElement(0, a_bar)
    return _tmul(ea, _tinv(tau_lift(ea, power), power), power)


def decompose(x: GroupElement, power: int = 1) -> Tuple[int, Z3Word, LatticeVector]:
    """Write x = kappa^r g(gamma) k with k in K0; returns (r, gamma, preimage of bar k).

    Requires bar x in L_{C x 0} for some tau-invariant C (a zero Z3 label).
    """
    lam, gam, _ = coset_of(x.bar)
    if any(gam):
        raise ValueError("element does not lie over L_{C x 0}")
    gamma = varphi(x.bar)
    y = _tmul(x, _tinv(g_of(gamma, power), power), power)
    a_bar = one_minus_tau_inverse(y.bar, power)
    if a_bar is None or any(coset_of(a_bar)[1]):
        raise ArithmeticError("K0 preimage is not over L_{C x 0}")
    k = k0_element(a_bar, power)
    assert k.bar == y.bar
    return (y.kappa_exp - k.kappa_exp) % 24, gamma, a_bar


def subgroup_member(label: str, x: GroupElement, lat: GluedLattice, power: int = 1) -> bool:
    """Membership of x in one of the subgroups of the twisted extension over lat."""
    if label not in SUBGROUP_LABELS:
        raise ValueError(f"unknown subgroup label {label!r}")
    v = x.bar
    if v not in lat:
        return False
    lam, gam, _ = coset_of(v)
    over_c0 = not any(gam)
    if label == "LC0":
        return over_c0
    if label == "R":
        return radical_member(lat, v)
    if label in ("M0", "M"):
        pre = one_minus_tau_inverse(v, power)
        if pre is None:
            return False
        host = GluedLattice(lat.C, Code.zero("Z3", lat.length)) if label == "M0" else lat
        return pre in host
    if not over_c0:
        return False
    r, gamma, a_bar = decompose(x, power)
    if r != 0:
        return False
    if label == "K0":
        return not any(gamma) and a_bar in lat
    if a_bar not in lat:
        return False
    if label == "K2":
        return True
    if label == "K1":
        return gamma in lat.D.dual()
    return gamma in lat.D  # K


@dataclass(frozen=True)
class Psi:
    """The character psi_eta of the twisted extension over L_{C x 0}."""

    eta: Z3Word
    power: int = 1

    def __call__(self, x: GroupElement) -> Cyclotomic:
        return psi_eval(self, x)


def psi_eval(psi: Psi, x: GroupElement) -> Cyclotomic:
    """psi_eta(kappa^r g(gamma) k) = zeta_24^r zeta_3^{<gamma, eta>}."""
    r, gamma, _ = decompose(x, psi.power)
    return cyc_root(24) ** r * zeta3(z3_inner(gamma, psi.eta))


@dataclass(frozen=True)
class TModule:
    """The induced module T_eta with basis e^{a(gamma)} (x) 1, gamma in D."""

    D: Code
    eta: Z3Word
    power: int = 1

    @property
    def basis(self) -> List[Z3Word]:
        return list(self.D.words())

    @property
    def dimension(self) -> int:
        return len(self.D)

    @property
    def psi(self) -> Psi:
        return Psi(z3_word(self.eta), self.power)

    def act(self, x: GroupElement, vec: Dict[Z3Word, Cyclotomic]) -> Dict[Z3Word, Cyclotomic]:
        out: Dict[Z3Word, Cyclotomic] = {}
        for g, c in vec.items():
            g2, sc = t_action(self, x, g)
            out[g2] = out.get(g2, Cyclotomic()) + c * sc
        return {k: v for k, v in out.items() if v}


def t_action(mod: TModule, x: GroupElement, gamma) -> Tuple[Z3Word, Cyclotomic]:
    """x . (e^{a(gamma)} (x) 1) = scalar e^{a(gamma')} (x) 1.

    Writes x e^{a(gamma)} = e^{a(gamma')} b with b over L_{C x 0}; the scalar
    is psi_eta(b).
    """
    p = mod.power
    gamma = z3_word(gamma)
    z = _tmul(x, GroupElement(0, a_of(gamma)), p)
    lam, target, _ = coset_of(z.bar)
    target = tuple(target)
    if target not in mod.D:
        raise ValueError("element does not lie over L_{C x D}")
    b = _tmul(_tinv(GroupElement(0, a_of(target)), p), z, p)
    return target, psi_eval(mod.psi, b)


def k1_generators(D: Code, power: int = 1) -> List[GroupElement]:
    return [g_of(d, power) for d in D.dual().basis()]


def _class_signature(D: Code, eta: Z3Word, power: int):
    mod = TModule(D, eta, power)
    gens = k1_generators(D, power)
    rows = []
    for g in mod.basis:
        rows.append(tuple(t_action(mod, x, g)[1] for x in gens))
    return frozenset(Counter(rows).items())


def equivalence_classes(D: Code, candidates: Iterable = None, power: int = 1) -> List[List[Z3Word]]:
    """Partition candidate eta in D^perp by the K1-character multiset of T_eta."""
    dual = D.dual()
    if candidates is None:
        candidates = dual.words()
    classes: Dict[frozenset, List[Z3Word]] = {}
    for eta in candidates:
        eta = z3_word(eta)
        if eta not in dual:
            raise ValueError(f"{eta} is not in D^perp")
        classes.setdefault(_class_signature(D, eta, power), []).append(eta)
    return sorted((sorted(v) for v in classes.values()), key=lambda c: c[0])


def twisted_catalog(D: Code, power: int = 1) -> List[Tuple[Z3Word, int]]:
    """One representative eta per class with the module dimension |D|."""
    return [(cls[0], len(D)) for cls in equivalence_classes(D, power=power)]
