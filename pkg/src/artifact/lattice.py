"""The glued lattices L_{C x D} inside the l-fold dual of L = sqrt(2) A2.

Vectors are stored in integral coordinates: per site a pair (m1, m2) in the
basis bt1 = b1/2, bt2 = (b1 - b2)/6, where b1, b2 are the simple roots of
L with <b1,b1> = <b2,b2> = 4 and <b1,b2> = -2.  Every vector of the dual
lattice L^perp has integer coordinates in this basis, so membership tests
are exact integer arithmetic.  Useful values:

    b1 = (2, 0),  b2 = (2, -6),  b0 = -b1 - b2 = (-4, 6)
    beta(a) = b2/2 = (1, -3), beta(b) = b0/2 = (-2, 3), beta(c) = b1/2 = (1, 0)
    (-b1 + b2)/3 = (0, -2)

and the Gram form is <u, v> = m1 m1' + (m1 m2' + m2 m1')/2 + m2 m2'/3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .codes import A, B, C, Code, KWord, Z3Word, k_word, z3_word
from .scalars import EXP_DEN, QSeries, exponent_key

SITE_B1 = (2, 0)
SITE_B2 = (2, -6)
SITE_B0 = (-4, 6)
SITE_BETAS = {0: SITE_B0, 1: SITE_B1, 2: SITE_B2}
SITE_BETA_OF = {0: (0, 0), A: (1, -3), B: (-2, 3), C: (1, 0)}
SITE_GLUE3 = (0, -2)  # (-b1 + b2)/3


class LatticeVector:
    """A vector of (L^perp)^l given by l integer pairs (m1, m2)."""

    __slots__ = ("coords", "_hash")

    def __init__(self, coords: Iterable[int]):
        c = tuple(int(x) for x in coords)
        if len(c) % 2:
            raise ValueError("coordinate list must have even length")
        self.coords = c
        self._hash = None

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[int]]) -> "LatticeVector":
        flat = []
        for p in pairs:
            flat.extend(p)
        return cls(flat)

    @classmethod
    def zero(cls, length: int) -> "LatticeVector":
        return cls((0,) * (2 * length))

    @property
    def length(self) -> int:
        return len(self.coords) // 2

    def pairs(self) -> List[Tuple[int, int]]:
        c = self.coords
        return [(c[2 * s], c[2 * s + 1]) for s in range(len(c) // 2)]

    def site(self, s: int) -> Tuple[int, int]:
        return self.coords[2 * s], self.coords[2 * s + 1]

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        _check_len(self, other)
        return LatticeVector(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: "LatticeVector") -> "LatticeVector":
        _check_len(self, other)
        return LatticeVector(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(-a for a in self.coords)

    def __mul__(self, k: int) -> "LatticeVector":
        return LatticeVector(k * a for a in self.coords)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __eq__(self, other):
        return isinstance(other, LatticeVector) and self.coords == other.coords

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coords)
        return self._hash

    def __repr__(self):
        return "LatticeVector(" + " ".join(f"({a},{b})" for a, b in self.pairs()) + ")"


def _check_len(u: LatticeVector, v: LatticeVector):
    if len(u.coords) != len(v.coords):
        raise ValueError(f"length mismatch: {u.length} vs {v.length}")


# ---------------------------------------------------------------------------
# basic vectors
# ---------------------------------------------------------------------------


def site_vector(length: int, s: int, pair: Sequence[int]) -> LatticeVector:
    c = [0] * (2 * length)
    c[2 * s], c[2 * s + 1] = pair
    return LatticeVector(c)


def beta(i: int, s: int, length: int) -> LatticeVector:
    """The root b_i placed at site s (i = 0, 1, 2)."""
    return site_vector(length, s, SITE_BETAS[i % 3])


def beta_tilde(j: int, s: int, length: int) -> LatticeVector:
    return site_vector(length, s, (1, 0) if j == 1 else (0, 1))


def beta_of(word) -> LatticeVector:
    """beta(lambda) = sum_s beta(lambda_s) at site s."""
    w = k_word(word)
    return LatticeVector.from_pairs(SITE_BETA_OF[x] for x in w)


def a_of(gamma) -> LatticeVector:
    """a(gamma) = sum_s gamma_s (-b1 + b2)/3 at site s, with gamma_s in {0,1,2}."""
    g = z3_word(gamma)
    return LatticeVector.from_pairs((0, -2 * x) for x in g)


def inner_product(u: LatticeVector, v: LatticeVector) -> Fraction:
    _check_len(u, v)
    a = u.coords
    b = v.coords
    s11 = s12 = s22 = 0
    for i in range(0, len(a), 2):
        m1, m2, n1, n2 = a[i], a[i + 1], b[i], b[i + 1]
        s11 += m1 * n1
        s12 += m1 * n2 + m2 * n1
        s22 += m2 * n2
    return Fraction(6 * s11 + 3 * s12 + 2 * s22, 6)


def norm(u: LatticeVector) -> Fraction:
    return inner_product(u, u)


def _tau_pair(m1: int, m2: int) -> Tuple[int, int]:
    return m1 + m2, -3 * m1 - 2 * m2


def tau_vec(v: LatticeVector, power: int = 1) -> LatticeVector:
    """The fixed-point-free isometry b1 -> b2 -> b0 -> b1, applied at every site."""
    c = list(v.coords)
    for _ in range(power % 3):
        for i in range(0, len(c), 2):
            c[i], c[i + 1] = _tau_pair(c[i], c[i + 1])
    return LatticeVector(c)


def one_minus_tau_inverse(v: LatticeVector, power: int = 1) -> Optional[LatticeVector]:
    """Return w with (1 - tau^power) w = v if w has integral coordinates, else None.

    Per site 1 - tau is the integer matrix [[0, -1], [3, 3]] on (m1, m2) with
    determinant 3 (similarly for tau^2), so the preimage is solved exactly.
    """
    out = []
    for m1, m2 in v.pairs():
        # (1 - tau^p)(x, y) = (m1, m2); tau matrix on column vectors
        if power % 3 == 1:
            # (x, y) - (x + y, -3x - 2y) = (-y, 3x + 3y)
            y = -m1
            num = m2 - 3 * y
            if num % 3:
                return None
            x = num // 3
        else:
            # tau^2 (x, y) = (-2x - y, 3x + y); (1 - tau^2)(x, y) = (3x + y, -3x)
            if m2 % 3:
                return None
            x = -m2 // 3
            y = m1 - 3 * x
        out.append((x, y))
    return LatticeVector.from_pairs(out)


# ---------------------------------------------------------------------------
# cosets of L in L^perp and coset vectors
# ---------------------------------------------------------------------------


def _in_L_pair(n1: int, n2: int) -> bool:
    return n2 % 6 == 0 and n1 % 2 == 0


@lru_cache(maxsize=None)
def site_coset(n1: int, n2: int) -> Tuple[int, int, int, int]:
    """Decompose (n1, n2) = beta(x) + (-i/3 + m1) b1 + (i/3 + m2) b2.

    Returns (x, i, m1, m2).
    """
    for x, (bx1, bx2) in SITE_BETA_OF.items():
        for i in range(3):
            w1, w2 = n1 - bx1, n2 - bx2
            r1, r2 = w1 - i * SITE_GLUE3[0], w2 - i * SITE_GLUE3[1]
            if _in_L_pair(r1, r2):
                bcoef = Fraction(-w2, 6)
                acoef = Fraction(w1, 2) - bcoef
                m1 = acoef + Fraction(i, 3)
                m2 = bcoef - Fraction(i, 3)
                assert m1.denominator == 1 and m2.denominator == 1
                return x, i, int(m1), int(m2)
    raise ValueError(f"({n1},{n2}) is not in the dual lattice")


def coset_of(v: LatticeVector) -> Tuple[KWord, Z3Word, Tuple[Tuple[int, int], ...]]:
    """Left inverse of coset_vector: returns (lambda, gamma, offsets)."""
    lam, gam, offs = [], [], []
    for n1, n2 in v.pairs():
        x, i, m1, m2 = site_coset(n1, n2)
        lam.append(x)
        gam.append(i)
        offs.append((m1, m2))
    return tuple(lam), tuple(gam), tuple(offs)


def coset_label(v: LatticeVector) -> Tuple[KWord, Z3Word]:
    lam, gam, _ = coset_of(v)
    return lam, gam


def coset_vector(lam, gamma, offsets: Optional[Sequence[Sequence[int]]] = None) -> LatticeVector:
    """beta(lam_s) + (-gamma_s/3 + m1) b1 + (gamma_s/3 + m2) b2 summed over sites."""
    lam = k_word(lam)
    gamma = z3_word(gamma)
    if len(lam) != len(gamma):
        raise ValueError("lambda and gamma must have the same length")
    if offsets is None:
        offsets = [(0, 0)] * len(lam)
    pairs = []
    for x, i, (m1, m2) in zip(lam, gamma, offsets):
        bx = SITE_BETA_OF[x]
        p1 = bx[0] + i * SITE_GLUE3[0] + m1 * SITE_B1[0] + m2 * SITE_B2[0]
        p2 = bx[1] + i * SITE_GLUE3[1] + m1 * SITE_B1[1] + m2 * SITE_B2[1]
        pairs.append((p1, p2))
    return LatticeVector.from_pairs(pairs)


# ---------------------------------------------------------------------------
# P, Q and the map to Z3^l
# ---------------------------------------------------------------------------


def pq_values(x, y) -> Tuple[int, int]:
    """(P(x), Q(x, y)) from the Klein-symbol tables."""
    from .codes import k_symbol, tau_symbol

    x, y = k_symbol(x), k_symbol(y)
    p = 1 if x else 0
    if x == 0 or y == 0:
        q = 0
    elif x == y or tau_symbol(x, 2) == y:
        q = 1
    else:
        q = 0
    return p, q


def varphi(v: LatticeVector) -> Z3Word:
    """Per site -P(x) + m1 + m2 mod 3 for v written in coset form."""
    out = []
    for n1, n2 in v.pairs():
        x, i, m1, m2 = site_coset(n1, n2)
        out.append((-(1 if x else 0) + m1 + m2) % 3)
    return tuple(out)


def c0_tau(alpha: LatticeVector, beta_: LatticeVector, power: int = 1) -> int:
    """8 <t a + 2 t^2 a, b> mod 24 with t = tau^power (needs an integral pairing)."""
    t1 = tau_vec(alpha, power)
    t2 = tau_vec(alpha, 2 * power)
    val = 8 * (inner_product(t1, beta_) + 2 * inner_product(t2, beta_))
    if val.denominator != 1:
        raise ValueError("twisted commutator needs 8<., .> integral")
    return int(val) % 24


def c0_tau_explicit(alpha: LatticeVector, beta_: LatticeVector) -> int:
    """The coset-coordinate form 8 sum_s (g_s(-P(mu_s)+n1+n2) + d_s(P(lam_s)-m1-m2))."""
    la, ga, oa = coset_of(alpha)
    lb, gb, ob = coset_of(beta_)
    total = 0
    for s in range(alpha.length):
        p_l = 1 if la[s] else 0
        p_m = 1 if lb[s] else 0
        m1, m2 = oa[s]
        n1, n2 = ob[s]
        total += ga[s] * (-p_m + n1 + n2) + gb[s] * (p_l - m1 - m2)
    return (8 * total) % 24


# ---------------------------------------------------------------------------
# integer lattice helpers
# ---------------------------------------------------------------------------


def hermite_basis(vectors: Iterable[Sequence[int]], dim: int) -> List[List[int]]:
    """Row-style Hermite normal form basis of the Z-span of the vectors."""
    rows = [list(v) for v in vectors if any(v)]
    basis: List[List[int]] = []
    col = 0
    while rows and col < dim:
        nz = [r for r in rows if r[col] != 0]
        zero = [r for r in rows if r[col] == 0]
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            new = [piv]
            for r in nz[1:]:
                q = r[col] // piv[col]
                r2 = [a - q * b for a, b in zip(r, piv)]
                (new if r2[col] != 0 else zero).append(r2)
            nz = new
        if nz:
            piv = nz[0]
            if piv[col] < 0:
                piv = [-a for a in piv]
            basis.append(piv)
        rows = [r for r in zero if any(r)]
        col += 1
    return basis


def _det_int(mat: List[List[int]]) -> int:
    n = len(mat)
    m = [[Fraction(x) for x in row] for row in mat]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] / m[c][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return int(det)


# ---------------------------------------------------------------------------
# theta series of the twelve cosets of L in L^perp
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def site_theta(x: int, i: int, max_key: int) -> Tuple[int, ...]:
    """Counts of vectors of L^{(x,i)} by key 9*<v,v> (= 18 * norm/2), up to max_key.

    Enumerates base + a b1 + b b2 over a box: |a b1 + b b2|^2 >= 2(a^2 + b^2)
    since the Gram matrix [[4,-2],[-2,4]] has smallest eigenvalue 2.
    """
    base = coset_vector((x,), (i,))
    b1, b2 = base.coords
    max_norm = Fraction(max_key, 9)
    base_len = math.sqrt(float(norm(base)))
    radius = int(math.ceil((math.sqrt(float(max_norm)) + base_len) / math.sqrt(2))) + 1
    counts = [0] * (max_key + 1)
    for a in range(-radius, radius + 1):
        for b in range(-radius, radius + 1):
            n1 = b1 + 2 * a + 2 * b
            n2 = b2 - 6 * b
            key = 9 * n1 * n1 + 9 * n1 * n2 + 3 * n2 * n2  # 9 * norm
            if key <= max_key:
                counts[key] += 1
    return tuple(counts)


def _k_index(x: int) -> int:
    return {0: 0, A: 1, B: 2, C: 3}[x]


_K_FROM_INDEX = (0, A, B, C)


def _conv(a: List[int], b: List[int], n: int) -> List[int]:
    out = [0] * (n + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(0, n + 1 - i):
                y = b[j]
                if y:
                    out[i + j] += x * y
    return out


# ---------------------------------------------------------------------------
# glued lattices
# ---------------------------------------------------------------------------


@dataclass
class GluedLattice:
    """L_{C x D}: the union of cosets L_{(lam, gamma)} over lam in C, gamma in D."""

    C: Code
    D: Code
    _cache: Dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.C.kind != "K" or self.D.kind != "Z3":
            raise ValueError("GluedLattice needs a K-code C and a Z3-code D")
        if self.C.length != self.D.length:
            raise ValueError("C and D must have the same length")

    @classmethod
    def standard(cls, length: int) -> "GluedLattice":
        """L^{+l}: both codes zero."""
        return cls(Code.zero("K", length), Code.zero("Z3", length))

    @property
    def length(self) -> int:
        return self.C.length

    @property
    def rank(self) -> int:
        return 2 * self.length

    def generators(self) -> List[LatticeVector]:
        n = self.length
        gens = []
        for s in range(n):
            gens.append(beta(1, s, n))
            gens.append(beta(2, s, n))
        zero_g = (0,) * n
        zero_l = (0,) * n
        for lam in self.C.basis():
            gens.append(coset_vector(lam, zero_g))
        for g in self.D.basis():
            gens.append(coset_vector(zero_l, g))
        return gens

    def basis(self) -> List[LatticeVector]:
        if "basis" not in self._cache:
            rows = hermite_basis((g.coords for g in self.generators()), self.rank)
            self._cache["basis"] = [LatticeVector(r) for r in rows]
        return self._cache["basis"]

    def gram_matrix(self) -> List[List[Fraction]]:
        b = self.basis()
        return [[inner_product(u, v) for v in b] for u in b]

    def determinant(self) -> Fraction:
        """Gram determinant; equals det(basis)^2 / 12^l."""
        b = self.basis()
        d = _det_int([list(v.coords) for v in b])
        return Fraction(d * d, 12 ** self.length)

    def is_integral(self) -> bool:
        g = self.gram_matrix()
        return all(x.denominator == 1 for row in g for x in row)

    def is_even(self) -> bool:
        g = self.gram_matrix()
        return self.is_integral() and all(g[i][i] % 2 == 0 for i in range(len(g)))

    def is_unimodular(self) -> bool:
        return self.is_integral() and self.determinant() == 1

    def __contains__(self, v: LatticeVector) -> bool:
        if v.length != self.length:
            return False
        try:
            lam, gam = coset_label(v)
        except ValueError:
            return False
        return lam in self.C and gam in self.D

    def dual(self) -> "GluedLattice":
        return GluedLattice(self.C.dual(), self.D.dual())

    def random_vector(self, rng, spread: int = 2) -> LatticeVector:
        lam = self.C.words()[rng.randrange(len(self.C))]
        gam = self.D.words()[rng.randrange(len(self.D))]
        offs = [(rng.randint(-spread, spread), rng.randint(-spread, spread)) for _ in lam]
        return coset_vector(lam, gam, offs)

    # theta series -----------------------------------------------------------
    def _composition_counts(self) -> Dict[Tuple[int, ...], int]:
        """Multiset of per-site coset labels 3*kindex + gamma over all (lam, gamma)."""
        if "compositions" in self._cache:
            return self._cache["compositions"]
        cw = np.array([[_k_index(x) for x in w] for w in self.C.words()], dtype=np.int64)
        dw = np.array(self.D.words(), dtype=np.int64).reshape(len(self.D), self.length)
        comp: Dict[Tuple[int, ...], int] = {}
        labels = np.arange(12)
        for row in cw:
            lab = 3 * row[None, :] + dw  # |D| x l
            counts = (lab[:, :, None] == labels[None, None, :]).sum(axis=1)
            uniq, mult = np.unique(counts, axis=0, return_counts=True)
            for u, m in zip(uniq, mult):
                key = tuple(int(t) for t in u)
                comp[key] = comp.get(key, 0) + int(m)
        self._cache["compositions"] = comp
        return comp

    def theta_series(self, order) -> QSeries:
        """sum over lattice vectors of q^(<v,v>/2), truncated at exponent ``order``."""
        max_key = exponent_key(order)
        if max_key < 0:
            raise ValueError("order must be nonnegative")
        # site_theta keys are 9 * norm = 18 * (norm/2): same grid as QSeries.
        site = [list(site_theta(_K_FROM_INDEX[k // 3], k % 3, max_key)) for k in range(12)]
        total = [0] * (max_key + 1)
        powers: Dict[Tuple[int, int], List[int]] = {}

        def power(k: int, e: int) -> List[int]:
            if e == 0:
                return [1] + [0] * max_key
            if (k, e) not in powers:
                powers[(k, e)] = _conv(power(k, e - 1), site[k], max_key)
            return powers[(k, e)]

        for comp, mult in self._composition_counts().items():
            prod = [1] + [0] * max_key
            for k, e in enumerate(comp):
                if e:
                    prod = _conv(prod, power(k, e), max_key)
            for i, x in enumerate(prod):
                if x:
                    total[i] += mult * x
        return QSeries({i: x for i, x in enumerate(total) if x}, max_key)

    def theta_bruteforce(self, order) -> QSeries:
        """Independent oracle: enumerate all coset vectors and count norms directly."""
        max_key = exponent_key(order)
        counts = [0] * (max_key + 1)
        n = self.length
        max_norm = Fraction(max_key, 9)
        radius = int(math.ceil(math.sqrt(float(max_norm)) + 3))
        import itertools

        per_site = {}
        for x in (0, A, B, C):
            for i in range(3):
                vecs = []
                for m1 in range(-radius, radius + 1):
                    for m2 in range(-radius, radius + 1):
                        v = coset_vector((x,), (i,), [(m1, m2)])
                        nv = norm(v)
                        if nv <= max_norm:
                            vecs.append(nv)
                per_site[(x, i)] = vecs
        for lam in self.C.words():
            for gam in self.D.words():
                lists = [per_site[(lam[s], gam[s])] for s in range(n)]
                for combo in itertools.product(*lists):
                    tot = sum(combo)
                    if tot <= max_norm:
                        counts[int(tot * 9)] += 1
        return QSeries({i: x for i, x in enumerate(counts) if x}, max_key)


def one_minus_tau_image_check(max_norm: int = 24) -> bool:
    """Check (1 - tau) L^perp = union of L^{(x,0)}, x in K, on a norm-bounded slice (l = 1).

    Every vector of L^perp with norm <= max_norm is tested: it lies in the image
    of 1 - tau exactly when its Z3 label is 0, and the four K-labels partition it.
    """
    radius = int(math.isqrt(max_norm)) + 4
    for m1 in range(-3 * radius, 3 * radius + 1):
        for m2 in range(-3 * radius, 3 * radius + 1):
            v = LatticeVector((m1, m2))
            if norm(v) > max_norm:
                continue
            in_image = one_minus_tau_inverse(v) is not None
            _, gam = coset_label(v)
            if in_image != (gam == (0,)):
                return False
    return True


def radical_member(lat: GluedLattice, v: LatticeVector) -> bool:
    """Whether v lies in the radical R of the twisted commutator form on lat.

    R consists of the v in L_{C x 0} with sum_s d_s (P(lam_s) - m1 - m2) = 0
    mod 3 for every d in D, which is the condition varphi(v) in D^perp.
    """
    if v not in lat:
        raise ValueError("vector is not in the lattice")
    lam, gam, _ = coset_of(v)
    if any(gam):
        return False
    return varphi(v) in lat.D.dual()


def radical_member_bruteforce(lat: GluedLattice, v: LatticeVector) -> bool:
    """Oracle: c0^tau(v, g) = 0 mod 24 for every generator g of lat."""
    if v not in lat:
        raise ValueError("vector is not in the lattice")
    return all(c0_tau(v, g) == 0 for g in lat.generators())
