"""Central extensions of L_{C x D} by the cyclic group of order 24.

An element is kappa^p e^alpha with p taken mod 24, where kappa is a fixed
generator of the centre acting as the primitive 24th root of unity.  Two
multiplications share the same carrier:

* untwisted: e^a e^b = kappa^{eps1(a, b)} e^{a + b} with eps1 = sum -6 m2 n1;
* twisted:   e^a x e^b = kappa^{eps1(a, b) - eps0(a, b)} e^{a + b} with
  eps0(a, b) = 20 <t^2 a, b>, where t is the twisting automorphism.

The twisting automorphism is tau (``power=1``) or tau^2 (``power=2``); all
formulas for tau^2 are obtained by substituting tau -> tau^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .lattice import LatticeVector, inner_product, norm, tau_vec

UNTWISTED = "untwisted"
TWISTED = "twisted"
ExtensionKind = Literal["untwisted", "twisted"]

ORDER = 24


@dataclass(frozen=True)
class GroupElement:
    """kappa^kappa_exp e^bar, with kappa_exp reduced mod 24."""

    kappa_exp: int
    bar: LatticeVector

    def __post_init__(self):
        object.__setattr__(self, "kappa_exp", self.kappa_exp % ORDER)

    @classmethod
    def e(cls, v: LatticeVector) -> "GroupElement":
        return cls(0, v)

    @classmethod
    def kappa(cls, length: int, power: int = 1) -> "GroupElement":
        return cls(power, LatticeVector.zero(length))

    @classmethod
    def kappa_n(cls, n: int, length: int, power: int = 1) -> "GroupElement":
        """kappa_n = kappa_24^(24/n)."""
        if ORDER % n:
            raise ValueError(f"{n} does not divide 24")
        return cls(power * (ORDER // n), LatticeVector.zero(length))

    @property
    def length(self) -> int:
        return self.bar.length

    def is_identity(self) -> bool:
        return self.kappa_exp == 0 and self.bar.is_zero()

    def __str__(self):
        v = " ".join(f"({a},{b})" for a, b in self.bar.pairs())
        return f"k^{self.kappa_exp} * e({v})"


def eps1(alpha: LatticeVector, beta: LatticeVector) -> int:
    """The untwisted bilinear cocycle sum_s -6 m2 n1 mod 24."""
    a, b = alpha.coords, beta.coords
    return sum(-6 * a[i + 1] * b[i] for i in range(0, len(a), 2)) % ORDER


def c0(alpha: LatticeVector, beta: LatticeVector) -> int:
    """Commutator exponent eps1(a, b) - eps1(b, a) of the untwisted extension."""
    return (eps1(alpha, beta) - eps1(beta, alpha)) % ORDER


def eps0(alpha: LatticeVector, beta: LatticeVector, power: int = 1) -> int:
    """20 <t^2 a, b> mod 24 for t = tau^power; the pairing must be integral."""
    val = inner_product(tau_vec(alpha, 2 * power), beta)
    if val.denominator != 1:
        raise ValueError("twisted multiplication needs <t^2 a, b> integral")
    return (20 * int(val)) % ORDER


def c0_tau(alpha: LatticeVector, beta: LatticeVector, power: int = 1) -> int:
    """Commutator exponent 8 <t a + 2 t^2 a, b> mod 24 of the twisted extension."""
    val = 8 * (
        inner_product(tau_vec(alpha, power), beta)
        + 2 * inner_product(tau_vec(alpha, 2 * power), beta)
    )
    if val.denominator != 1:
        raise ValueError("twisted commutator needs 8 <., .> integral")
    return int(val) % ORDER


def _cocycle(kind: str, alpha, beta, power: int) -> int:
    if kind == UNTWISTED:
        return eps1(alpha, beta)
    if kind == TWISTED:
        return eps1(alpha, beta) - eps0(alpha, beta, power)
    raise ValueError(f"unknown extension kind {kind!r}")


def mult(kind: ExtensionKind, x: GroupElement, y: GroupElement, power: int = 1) -> GroupElement:
    return GroupElement(x.kappa_exp + y.kappa_exp + _cocycle(kind, x.bar, y.bar, power), x.bar + y.bar)


def inverse(kind: ExtensionKind, x: GroupElement, power: int = 1) -> GroupElement:
    """(kappa^p e^a)^-1 = kappa^(-p + cocycle(a, a)) e^-a."""
    return GroupElement(-x.kappa_exp + _cocycle(kind, x.bar, x.bar, power), -x.bar)


def gpow(kind: ExtensionKind, x: GroupElement, n: int, power: int = 1) -> GroupElement:
    base = x if n >= 0 else inverse(kind, x, power)
    out = GroupElement(0, LatticeVector.zero(x.length))
    for _ in range(abs(n)):
        out = mult(kind, out, base, power)
    return out


def product(kind: ExtensionKind, elements, power: int = 1) -> GroupElement:
    it = iter(elements)
    out = next(it)
    for e in it:
        out = mult(kind, out, e, power)
    return out


def commutator(kind: ExtensionKind, x: GroupElement, y: GroupElement, power: int = 1) -> GroupElement:
    """x y x^-1 y^-1."""
    return product(kind, [x, y, inverse(kind, x, power), inverse(kind, y, power)], power)


def _tau_exponent(alpha: LatticeVector) -> int:
    """kappa_24-exponent of tau(e^alpha): sitewise 3 (3 m1^2 + 2 m2^2 + 6 m1 m2 - 2 m1)."""
    total = 0
    for m1, m2 in alpha.pairs():
        total += 3 * m1 * m1 + 2 * m2 * m2 + 6 * m1 * m2 - 2 * m1
    return 3 * total


def tau_lift(x: GroupElement, power: int = 1) -> GroupElement:
    """The lift of tau: kappa^p e^a -> kappa^(p + tau-exponent(a)) e^(tau a), applied ``power`` times.

    The same map is an automorphism of both extensions, since eps0 is
    tau-invariant.
    """
    for _ in range(power % 3):
        x = GroupElement(x.kappa_exp + _tau_exponent(x.bar), tau_vec(x.bar))
    return x


def theta_lift(x: GroupElement) -> GroupElement:
    """The lift of -1: kappa^p e^a -> kappa^(p + 12 sum_s (m1 + m2)) e^-a.

    It fixes the centre, is an involution, commutes with tau_lift and is an
    automorphism of both extensions.  On L_{0 x D} it sends e^a to e^-a.
    Defined for even-norm vectors.
    """
    n = norm(x.bar)
    if n.denominator != 1 or n % 2:
        raise ValueError("theta lift needs an even-norm vector")
    shift = 12 * sum(m1 + m2 for m1, m2 in x.bar.pairs())
    return GroupElement(x.kappa_exp + shift, -x.bar)


def theta_lift_via_inverse(x: GroupElement) -> GroupElement:
    """a -> a^-1 kappa_2^(<a,a>/2) taken literally in the untwisted extension.

    This inverts the centre, so it is not the lift used by theta_lift; it is
    kept for comparison in tests.
    """
    n = norm(x.bar)
    if n.denominator != 1 or n % 2:
        raise ValueError("theta lift needs an even-norm vector")
    return GroupElement(-x.kappa_exp + eps1(x.bar, x.bar) + 6 * int(n), -x.bar)
