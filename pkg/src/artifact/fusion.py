"""Fusion-rule tables as label rings.

Products are finitely supported maps label -> multiplicity (FusionVector).
Only products given by the tables are defined; every other product returns
the distinguished value UNDEFINED (for instance twisted x twisted).
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .characters import ModuleLabel, catalog_D, catalog_VL
from .codes import Code, orbit_rep, tau_word, z3_add, z3_scale, z3_sub, k_neg_free_sum


class _Undefined:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNDEFINED"

    def __bool__(self):
        return False


UNDEFINED = _Undefined()


class FusionVector(Counter):
    """label -> nonnegative multiplicity."""

    def __str__(self):
        if not self:
            return "0"
        parts = []
        for lab in sorted(self, key=str):
            m = self[lab]
            parts.append(str(lab) if m == 1 else f"{m}{lab}")
        return " + ".join(parts)

    def canonical(self) -> Tuple:
        return tuple(sorted((str(k), v) for k, v in self.items() if v))


def _vec(*pairs) -> FusionVector:
    out = FusionVector()
    for lab, m in pairs:
        out[lab] += m
    return out


# ---------------------------------------------------------------------------
# V_L^{tau_1}: the 30-label ring (l = 1)
# ---------------------------------------------------------------------------


def _lam0(lab: ModuleLabel) -> bool:
    return not any(lab.lam)


def fuse_VL(a: ModuleLabel, b: ModuleLabel):
    """Fusion products among the 30 irreducible V_L^{tau_1}-modules."""
    for lab in (a, b):
        if lab.length != 1:
            raise ValueError("fuse_VL takes length-1 labels")
    if a.is_twisted and b.is_twisted:
        return UNDEFINED
    if a.is_twisted:
        a, b = b, a
    j1 = a.gamma[0]
    if b.is_twisted:
        i, k, e2 = b.twist, b.eta[0], b.eps
        new_k = (k - i * j1) % 3
        if _lam0(a):
            return _vec((ModuleLabel.twisted((new_k,), i, i * a.eps + e2), 1))
        return _vec(*[(ModuleLabel.twisted((new_k,), i, e), 1) for e in range(3)])
    j = (j1 + b.gamma[0]) % 3
    if _lam0(a) and _lam0(b):
        return _vec((ModuleLabel.untwisted((0,), (j,), a.eps + b.eps), 1))
    if _lam0(a) or _lam0(b):
        lam = b.lam if _lam0(a) else a.lam
        return _vec((ModuleLabel.untwisted(lam, (j,)), 1))
    out = _vec(*[(ModuleLabel.untwisted((0,), (j,), e), 1) for e in range(3)])
    out[ModuleLabel.untwisted(a.lam, (j,))] += 2
    return out


# ---------------------------------------------------------------------------
# V_{L_{0 x D}}^tau (and V_{L^{(+) l}}^tau for D = 0)
# ---------------------------------------------------------------------------


def normalize_label(D: Code, lab: ModuleLabel) -> ModuleLabel:
    """Reduce gamma (or eta) to its coset representative mod D."""
    if lab.is_twisted:
        return ModuleLabel.twisted(D.coset_rep(lab.eta), lab.twist, lab.eps)
    return ModuleLabel.untwisted(lab.lam, D.coset_rep(lab.gamma), lab.eps)


def fuse_D(D: Code, a: ModuleLabel, b: ModuleLabel):
    """Fusion products for the tau-orbifold of V_{L_{0 x D}}; labels are normalized mod D."""
    for lab in (a, b):
        if lab.length != D.length:
            raise ValueError("label length does not match the code")
    a, b = normalize_label(D, a), normalize_label(D, b)
    if a.is_twisted and b.is_twisted:
        return UNDEFINED
    if a.is_twisted:
        a, b = b, a
    ell = D.length
    zero = (0,) * ell
    if b.is_twisted:
        i = b.twist
        new_eta = D.coset_rep(z3_sub(b.eta, z3_scale(i, a.gamma)))
        if _lam0(a):
            return _vec((ModuleLabel.twisted(new_eta, i, i * a.eps + b.eps), 1))
        return _vec(*[(ModuleLabel.twisted(new_eta, i, e), 1) for e in range(3)])
    g = D.coset_rep(z3_add(a.gamma, b.gamma))
    if _lam0(a) and _lam0(b):
        return _vec((ModuleLabel.untwisted(zero, g, a.eps + b.eps), 1))
    if _lam0(a) or _lam0(b):
        lam = b.lam if _lam0(a) else a.lam
        return _vec((ModuleLabel.untwisted(lam, g), 1))
    if orbit_rep(a.lam) == orbit_rep(b.lam):
        out = _vec(*[(ModuleLabel.untwisted(zero, g, e), 1) for e in range(3)])
        out[ModuleLabel.untwisted(a.lam, g)] += 2
        return out
    out = FusionVector()
    for j in range(3):
        out[ModuleLabel.untwisted(k_neg_free_sum(a.lam, tau_word(b.lam, j)), g)] += 1
    return out


def fuse_Ll(ell: int, a: ModuleLabel, b: ModuleLabel):
    """Fusion products for the tau-orbifold of V_{L^{(+) l}}."""
    return fuse_D(Code.zero("Z3", ell), a, b)


# ---------------------------------------------------------------------------
# subalgebra rings
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class SubalgebraLabel:
    """M_t^j / W_t^j, M_k^0(eps) / W_k^0(eps), M_k^c / W_k^c, M_T(i)(eps) / W_T(i)(eps)."""

    family: str
    i: int = 0
    eps: int = 0

    def __post_init__(self):
        object.__setattr__(self, "i", self.i % 3)
        object.__setattr__(self, "eps", self.eps % 3)

    def __str__(self):
        f = self.family
        if f in ("M_t", "W_t"):
            return f"{f}^{self.i}"
        if f in ("M_k0", "W_k0"):
            return f"{f[0]}_k^0({self.eps})"
        if f in ("M_kc", "W_kc"):
            return f"{f[0]}_k^c"
        return f"{f}(tau^{self.i})({self.eps})"


def mt_labels() -> List[SubalgebraLabel]:
    return [SubalgebraLabel(f, j) for f in ("M_t", "W_t") for j in range(3)]


def fuse_Mt(a: SubalgebraLabel, b: SubalgebraLabel):
    """M^i x M^j = M^{i+j}, M^i x W^j = W^{i+j}, W^i x W^j = M^{i+j} + W^{i+j}."""
    k = (a.i + b.i) % 3
    if a.family == "M_t" and b.family == "M_t":
        return _vec((SubalgebraLabel("M_t", k), 1))
    if a.family == "W_t" and b.family == "W_t":
        return _vec((SubalgebraLabel("M_t", k), 1), (SubalgebraLabel("W_t", k), 1))
    return _vec((SubalgebraLabel("W_t", k), 1))


def mk_labels() -> List[SubalgebraLabel]:
    out = []
    for f in ("M_k0", "W_k0"):
        out += [SubalgebraLabel(f, 0, e) for e in range(3)]
    out += [SubalgebraLabel("M_kc"), SubalgebraLabel("W_kc")]
    for f in ("M_T", "W_T"):
        out += [SubalgebraLabel(f, i, e) for i in (1, 2) for e in range(3)]
    return out


def fuse_Mk(a: SubalgebraLabel, b: SubalgebraLabel):
    """Partial fusion table of M_k^0(0): products among M_k^0(eps), M_k^c and M_T."""
    order = {"M_k0": 0, "M_kc": 1, "M_T": 2}
    if a.family not in order or b.family not in order:
        return UNDEFINED
    if order[a.family] > order[b.family]:
        a, b = b, a
    if a.family == "M_T":
        return UNDEFINED
    if b.family == "M_T":
        if a.family == "M_k0":
            return _vec((SubalgebraLabel("M_T", b.i, b.i * a.eps + b.eps), 1))
        return _vec(*[(SubalgebraLabel("M_T", b.i, e), 1) for e in range(3)])
    if a.family == "M_k0" and b.family == "M_k0":
        return _vec((SubalgebraLabel("M_k0", 0, a.eps + b.eps), 1))
    if a.family == "M_k0":
        return _vec((SubalgebraLabel("M_kc"), 1))
    out = _vec(*[(SubalgebraLabel("M_k0", 0, e), 1) for e in range(3)])
    out[SubalgebraLabel("M_kc")] += 2
    return out


# ---------------------------------------------------------------------------
# rings and consistency checks
# ---------------------------------------------------------------------------


@dataclass
class FusionCheckReport:
    name: str
    instances_checked: int = 0
    failures: List = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __str__(self):
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: {self.instances_checked} instances, {len(self.failures)} failures"


@dataclass
class FusionRing:
    name: str
    labels: List
    rule: Callable

    def multiply(self, a, b):
        if a not in self._label_set or b not in self._label_set:
            raise ValueError(f"{a} or {b} is not a label of the ring {self.name}")
        return self.rule(a, b)

    @property
    def _label_set(self):
        cache = self.__dict__.get("_labels_cached")
        if cache is None:
            cache = frozenset(self.labels)
            self.__dict__["_labels_cached"] = cache
        return cache

    def extend(self, vec: FusionVector, c):
        """(sum m_x x) * c, or UNDEFINED if any term is undefined."""
        out = FusionVector()
        for x, m in vec.items():
            p = self.multiply(x, c)
            if p is UNDEFINED:
                return UNDEFINED
            for y, n in p.items():
                out[y] += m * n
        return out

    def extend_left(self, a, vec: FusionVector):
        out = FusionVector()
        for x, m in vec.items():
            p = self.multiply(a, x)
            if p is UNDEFINED:
                return UNDEFINED
            for y, n in p.items():
                out[y] += m * n
        return out

    def table(self) -> List[str]:
        """One line per unordered pair: "a x b = ..." (UNDEFINED where not given)."""
        lines = []
        for a, b in itertools.combinations_with_replacement(self.labels, 2):
            p = self.multiply(a, b)
            lines.append(f"{a} x {b} = {p if p is not UNDEFINED else 'UNDEFINED'}")
        return lines

    def check_commutativity(self) -> FusionCheckReport:
        rep = FusionCheckReport(f"{self.name}: commutativity")
        for a, b in itertools.combinations(self.labels, 2):
            p, q = self.multiply(a, b), self.multiply(b, a)
            if p is UNDEFINED and q is UNDEFINED:
                continue
            rep.instances_checked += 1
            if p is UNDEFINED or q is UNDEFINED or p.canonical() != q.canonical():
                rep.failures.append((a, b))
        return rep

    def check_associativity(self, triples: Optional[Iterable] = None) -> FusionCheckReport:
        """(a x b) x c = a x (b x c) wherever both sides are fully defined."""
        rep = FusionCheckReport(f"{self.name}: associativity")
        if triples is None:
            triples = itertools.product(self.labels, repeat=3)
        for a, b, c in triples:
            ab = self.multiply(a, b)
            if ab is UNDEFINED:
                continue
            left = self.extend(ab, c)
            if left is UNDEFINED:
                continue
            bc = self.multiply(b, c)
            if bc is UNDEFINED:
                continue
            right = self.extend_left(a, bc)
            if right is UNDEFINED:
                continue
            rep.instances_checked += 1
            if left.canonical() != right.canonical():
                rep.failures.append((a, b, c))
        return rep

    def check_identity(self, unit) -> FusionCheckReport:
        rep = FusionCheckReport(f"{self.name}: unit {unit}")
        for m in self.labels:
            rep.instances_checked += 1
            p = self.multiply(unit, m)
            if p is UNDEFINED or p.canonical() != _vec((m, 1)).canonical():
                rep.failures.append(m)
        return rep


def ring_VL() -> FusionRing:
    return FusionRing("V_L^tau1 (30 labels)", catalog_VL(), fuse_VL)


def ring_Ll(ell: int) -> FusionRing:
    D = Code.zero("Z3", ell)
    return FusionRing(f"V_(L^l)^tau, l={ell}", catalog_D(D), lambda a, b: fuse_D(D, a, b))


def ring_D(D: Code) -> FusionRing:
    return FusionRing(f"V_(L_0xD)^tau, D={D.describe()}", catalog_D(D), lambda a, b: fuse_D(D, a, b))


def ring_Mt() -> FusionRing:
    return FusionRing("M_t^0 (6 labels)", mt_labels(), fuse_Mt)


def ring_Mk() -> FusionRing:
    return FusionRing("M_k^0(0) (20 labels)", mk_labels(), fuse_Mk)


def compare_rings(r1: FusionRing, r2: FusionRing) -> FusionCheckReport:
    """Label-for-label agreement of two rings on the same label set."""
    rep = FusionCheckReport(f"{r1.name} vs {r2.name}")
    if set(r1.labels) != set(r2.labels):
        rep.failures.append(("label sets differ",))
        return rep
    for a, b in itertools.product(r1.labels, repeat=2):
        rep.instances_checked += 1
        p, q = r1.multiply(a, b), r2.multiply(a, b)
        if (p is UNDEFINED) != (q is UNDEFINED) or (p is not UNDEFINED and p.canonical() != q.canonical()):
            rep.failures.append((a, b))
    return rep
