"""Module labels, graded characters and tau-traces as QSeries.

A twisted module V^{T,eta}(t)[eps] (t = tau^i) is the zeta_3^eps-eigenspace
of t on S[t] (x) T_eta.  The variable X(s, w) of S[t] (mode -w/3) has
t-eigenvalue zeta_3^{-w}, and t acts on T_eta by the scalar
zeta_3^{2 wt(eta)}, where wt is the Hamming weight.

An untwisted module V_{L_(lam, gamma)} has character
Theta_{(lam, gamma)}(q) prod_n (1 - q^n)^{-2l}.  For lam = 0 it splits into
three tau-eigenspaces V_{L_(0,gamma)}(eps), using the tau-trace in which only
tau-fixed lattice vectors contribute.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .codes import (
    C as K_C,
    Code,
    k_str,
    k_word,
    orbit_rep,
    orbit_representatives,
    weight,
    z3_add,
    z3_str,
    z3_sub,
    z3_word,
)
from .lattice import site_theta
from .scalars import ONE, QSeries, exponent_key, geometric_inverse, zeta3

# ---------------------------------------------------------------------------
# labels
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class ModuleLabel:
    """An irreducible module of a tau-orbifold, up to equivalence.

    untwisted: V(lam, gamma)[eps] with eps given exactly when lam = 0;
    twisted:   T(eta, i)[eps] for the tau^i-twisted sector.
    lam is stored as its tau-orbit representative.
    """

    kind: str
    lam: Tuple[int, ...] = ()
    gamma: Tuple[int, ...] = ()
    eps: Optional[int] = None
    eta: Tuple[int, ...] = ()
    twist: int = 0

    @classmethod
    def untwisted(cls, lam, gamma, eps: Optional[int] = None) -> "ModuleLabel":
        lam, gamma = k_word(lam), z3_word(gamma)
        if len(lam) != len(gamma):
            raise ValueError("lam and gamma must have the same length")
        lam = orbit_rep(lam)
        if any(lam):
            if eps is not None:
                raise ValueError("eps is only attached when lam = 0")
        elif eps is None:
            raise ValueError("lam = 0 needs an eps in Z3")
        return cls("untwisted", lam, gamma, None if eps is None else eps % 3)

    @classmethod
    def twisted(cls, eta, i: int, eps: int) -> "ModuleLabel":
        if i % 3 not in (1, 2):
            raise ValueError("twist must be 1 or 2")
        return cls("twisted", eta=z3_word(eta), twist=i % 3, eps=eps % 3)

    @property
    def length(self) -> int:
        return len(self.gamma) if self.kind == "untwisted" else len(self.eta)

    @property
    def is_twisted(self) -> bool:
        return self.kind == "twisted"

    def __str__(self):
        if self.kind == "untwisted":
            s = f"V({k_str(self.lam)},{z3_str(self.gamma)})"
            return s if self.eps is None else f"{s}[{self.eps}]"
        return f"T({z3_str(self.eta)},{self.twist})[{self.eps}]"


def parse_label(text: str) -> ModuleLabel:
    """Parse "V(lam,gamma)[eps]", "V(lam,gamma)" or "T(eta,i)[eps]"."""
    t = text.strip().replace(" ", "")
    try:
        head, rest = t[0], t[1:]
        inner, tail = rest[1:].split(")", 1)
        a, b = inner.split(",")
        eps = None
        if tail:
            if not (tail.startswith("[") and tail.endswith("]")):
                raise ValueError
            eps = int(tail[1:-1])
        if head == "V" and rest[0] == "(":
            return ModuleLabel.untwisted(a, b, eps)
        if head == "T" and rest[0] == "(" and eps is not None:
            return ModuleLabel.twisted(b_to_word(a), int(b), eps)
    except (ValueError, IndexError, KeyError):
        pass
    raise ValueError(f"cannot parse module label {text!r}; expected V(lam,gamma)[eps] or T(eta,i)[eps]")


def b_to_word(s: str) -> Tuple[int, ...]:
    return tuple(int(ch) for ch in s)


# ---------------------------------------------------------------------------
# catalogs
# ---------------------------------------------------------------------------


def catalog_D(D: Code) -> List[ModuleLabel]:
    """Irreducible modules of the tau-orbifold of V_{L_{0 x D}}: three families.

    gamma and eta run over representatives of D^perp / D.
    """
    if not D.is_self_orthogonal():
        raise ValueError("D must be self-orthogonal")
    ell = D.length
    reps = D.coset_reps_in(D.dual())
    out = []
    for g in reps:
        for e in range(3):
            out.append(ModuleLabel.untwisted((0,) * ell, g, e))
    for lam in orbit_representatives(ell):
        if any(lam):
            for g in reps:
                out.append(ModuleLabel.untwisted(lam, g))
    for i in (1, 2):
        for g in reps:
            for e in range(3):
                out.append(ModuleLabel.twisted(g, i, e))
    return out


def catalog_Ll(ell: int) -> List[ModuleLabel]:
    """Irreducible modules of the tau-orbifold of V_{L^{(+) l}} (D = 0)."""
    return catalog_D(Code.zero("Z3", ell))


def catalog_VL() -> List[ModuleLabel]:
    """The 30 irreducible modules of V_L^{tau_1} (l = 1)."""
    return catalog_Ll(1)


def catalog_count_formula(ell: int) -> int:
    """3 * 3^l + ((4^l - 1)/3) * 3^l + 6 * 3^l."""
    return 3 * 3 ** ell + (4 ** ell - 1) // 3 * 3 ** ell + 6 * 3 ** ell


def catalog_CD(C: Code, D: Code) -> List[ModuleLabel]:
    """Irreducible modules of V_{L_{C x D}}^tau for self-dual C (tau-invariant,
    minimum weight >= 4) and self-dual D.

    The untwisted part is V_{L_{C x D}}(eps); the twisted part has one class
    per inequivalent T_eta, eta in D^perp / D.
    """
    from .twisted_rep import equivalence_classes

    if C.kind != "K" or D.kind != "Z3" or C.length != D.length:
        raise ValueError("need a K-code and a Z3-code of the same length")
    if not (C.is_tau_invariant() and C.is_self_dual() and C.min_weight() >= 4):
        raise ValueError("C must be tau-invariant, self-dual and of minimum weight >= 4")
    if not D.is_self_dual():
        raise ValueError("D must be self-dual")
    ell = C.length
    zero = (0,) * ell
    out = [ModuleLabel.untwisted(zero, zero, e) for e in range(3)]
    reps = D.coset_reps_in(D.dual())
    for i in (1, 2):
        for cls in equivalence_classes(D, candidates=reps, power=i):
            for e in range(3):
                out.append(ModuleLabel.twisted(cls[0], i, e))
    return out


# ---------------------------------------------------------------------------
# twisted characters
# ---------------------------------------------------------------------------


def trace_tau_S(ell: int, i: int, j: int, order) -> QSeries:
    """Graded trace of t^j on S[t], t = tau^i, including the factor q^{l/9}.

    prod over w > 0, 3 not dividing w, of (1 - zeta_3^{-j w} q^{w/3})^{-l}.
    The charges are the same for i = 1 and i = 2.
    """
    if i % 3 not in (1, 2):
        raise ValueError("twist must be 1 or 2")
    order = Fraction(order)
    base = Fraction(ell, 9)
    rest = order - base
    out = QSeries.one(rest) if rest >= 0 else QSeries({}, exponent_key(max(order, 0)))
    if rest < 0:
        return QSeries({}, exponent_key(order))
    w = 1
    while Fraction(w, 3) <= rest:
        if w % 3:
            g = geometric_inverse(Fraction(w, 3), zeta3(-j * w), rest)
            for _ in range(ell):
                out = out * g
        w += 1
    return out.shift(base)


def char_S_tau(ell: int, i: int, order) -> QSeries:
    """q^{l/9} prod_n [(1 - q^{n+1/3})(1 - q^{n+2/3})]^{-l}."""
    return trace_tau_S(ell, i, 0, order)


def eigen_S_tau(ell: int, i: int, eps: int, order) -> QSeries:
    """Character of the zeta_3^eps-eigenspace of t on S[t]: (1/3) sum_j zeta^{-eps j} tr(t^j)."""
    out = None
    for j in range(3):
        term = trace_tau_S(ell, i, j, order).scale(zeta3(-eps * j) * Fraction(1, 3))
        out = term if out is None else out + term
    return out


def t_scalar_exponent(eta) -> int:
    """t acts on T_eta as zeta_3 to this power."""
    return 2 * weight(z3_word(eta)) % 3


def char_twisted(eta, i: int, eps: int, order, dim_T: int = 1) -> QSeries:
    """Character of V^{T,eta}(tau^i)[eps] with dim T_eta = dim_T."""
    e = (eps - t_scalar_exponent(eta)) % 3
    return eigen_S_tau(len(z3_word(eta)), i, e, order).scale(dim_T)


# ---------------------------------------------------------------------------
# untwisted characters
# ---------------------------------------------------------------------------


def coset_theta(lam, gamma, order) -> QSeries:
    """Theta series of L_(lam, gamma) = prod_s L^{(lam_s, gamma_s)} in q^{<v,v>/2}."""
    lam, gamma = k_word(lam), z3_word(gamma)
    t = exponent_key(order)
    out = QSeries.one(order)
    for x, g in zip(lam, gamma):
        counts = site_theta(x, g, t)
        out = out * QSeries({k: c for k, c in enumerate(counts) if c}, t)
    return out


def heisenberg_trace(ell: int, j: int, order) -> QSeries:
    """Graded trace of tau^j on M(1)^{(x) l}: prod_n prod over the two eigenvalues."""
    out = QSeries.one(order)
    order = Fraction(order)
    n = 1
    while n <= order:
        if j % 3 == 0:
            g = geometric_inverse(n, 1, order)
            g = g * g
        else:
            g = geometric_inverse(n, zeta3(1), order) * geometric_inverse(n, zeta3(2), order)
        for _ in range(ell):
            out = out * g
        n += 1
    return out


def trace_tau_untwisted(lam, gamma, j: int, order) -> QSeries:
    """Graded trace of tau^j on V_{L_(lam, gamma)}.

    For j != 0 only tau-fixed lattice vectors contribute and the only one is 0,
    which lies in the coset exactly when lam = 0 and gamma = 0.
    """
    lam, gamma = k_word(lam), z3_word(gamma)
    ell = len(lam)
    if j % 3 == 0:
        return coset_theta(lam, gamma, order) * heisenberg_trace(ell, 0, order)
    if any(lam) or any(gamma):
        return QSeries({}, exponent_key(order))
    return heisenberg_trace(ell, j, order)


def char_untwisted(lam, gamma, eps: Optional[int], order) -> QSeries:
    """Character of V_{L_(lam,gamma)} (lam != 0) or V_{L_(0,gamma)}(eps)."""
    lam, gamma = k_word(lam), z3_word(gamma)
    if eps is None:
        if not any(lam):
            raise ValueError("lam = 0 needs eps")
        return trace_tau_untwisted(lam, gamma, 0, order)
    if any(lam):
        raise ValueError("eps is only defined for lam = 0")
    out = None
    for j in range(3):
        term = trace_tau_untwisted(lam, gamma, j, order).scale(zeta3(-eps * j) * Fraction(1, 3))
        out = term if out is None else out + term
    return out


def char_module(label: ModuleLabel, order, D: Optional[Code] = None) -> QSeries:
    """Character of a labelled module; with D, untwisted gamma means gamma + D."""
    if label.is_twisted:
        dim = 1 if D is None else len(D)
        return char_twisted(label.eta, label.twist, label.eps, order, dim)
    if D is None:
        return char_untwisted(label.lam, label.gamma, label.eps, order)
    out = None
    for d in D.words():
        term = char_untwisted(label.lam, z3_add(label.gamma, d), label.eps, order)
        out = term if out is None else out + term
    return out


@dataclass
class CharReport:
    label: ModuleLabel
    series: QSeries
    trace_tau: Optional[QSeries] = None

    @property
    def lowest_weight(self) -> Optional[Fraction]:
        return self.series.lowest_exponent()

    def __str__(self):
        head = f"{self.label}: lowest weight {self.lowest_weight}"
        return f"{head}\n  {self.series}"


def char_report(label: ModuleLabel, order, D: Optional[Code] = None) -> CharReport:
    tr = None
    if not label.is_twisted and not any(label.lam) and D is None:
        tr = trace_tau_untwisted(label.lam, label.gamma, 1, order)
    return CharReport(label, char_module(label, order, D), tr)


# ---------------------------------------------------------------------------
# the decomposition of twisted modules over (V_L^{tau_1})^{(x) l}
# ---------------------------------------------------------------------------


@dataclass
class DecompositionReport:
    ok: bool
    checks: List[Tuple[str, bool]] = field(default_factory=list)
    mismatches: List[Tuple[str, Fraction, object, object]] = field(default_factory=list)

    def __str__(self):
        lines = [f"{'PASS' if ok else 'FAIL'} {name}" for name, ok in self.checks]
        for name, e, a, b in self.mismatches:
            lines.append(f"  {name}: first mismatch at q^{e}: {a} != {b}")
        return "\n".join(lines)


def verify_twisted_decomposition(D: Code, eta, i: int, order) -> DecompositionReport:
    """Compare the character of V^{T,eta}(tau^i) with the sum over gamma in D
    and eps in Z3^l of products of single-site characters V^{T, eta_s - gamma_s}[eps_s],
    both in total and restricted to eps_1 + ... + eps_l = r.
    """
    eta = z3_word(eta)
    ell = D.length
    if not D.is_self_orthogonal():
        raise ValueError("D must be self-orthogonal")
    if eta not in D.dual():
        raise ValueError("eta must lie in D^perp")
    order = Fraction(order)
    dim = len(D)

    # left side: eigenspaces of t on S[t] (x) T_eta with t acting on T_eta by a scalar
    traces = [trace_tau_S(ell, i, j, order) for j in range(3)]
    te = t_scalar_exponent(eta)
    lhs_r = []
    for r in range(3):
        acc = None
        for j in range(3):
            term = traces[j].scale(zeta3((te - r) * j) * Fraction(dim, 3))
            acc = term if acc is None else acc + term
        lhs_r.append(acc)
    lhs_total = traces[0].scale(dim)

    # right side: single-site twisted characters
    site = {(k, e): char_twisted((k,), i, e, order) for k in range(3) for e in range(3)}
    rhs_r = [QSeries({}, exponent_key(order)) for _ in range(3)]
    for g in D.words():
        diff = z3_sub(eta, g)
        # distribution over r of products of single-site characters
        dist = {0: QSeries.one(order)}
        for s in range(ell):
            new: Dict[int, QSeries] = {}
            for r0, ser in dist.items():
                for e in range(3):
                    prod = ser * site[(diff[s], e)]
                    key = (r0 + e) % 3
                    new[key] = new[key] + prod if key in new else prod
            dist = new
        for r in range(3):
            if r in dist:
                rhs_r[r] = rhs_r[r] + dist[r]
    rhs_total = rhs_r[0] + rhs_r[1] + rhs_r[2]

    report = DecompositionReport(True)
    pairs = [("total", lhs_total, rhs_total)] + [(f"eps sum = {r}", lhs_r[r], rhs_r[r]) for r in range(3)]
    for name, a, b in pairs:
        ok = a == b
        report.checks.append((name, ok))
        if not ok:
            report.ok = False
            report.mismatches.append((name,) + a.first_mismatch(b))
    return report


# ---------------------------------------------------------------------------
# brute-force oracles
# ---------------------------------------------------------------------------


def twisted_char_bruteforce(D: Code, eta, i: int, eps: int, order) -> QSeries:
    """Count monomials X(s1,w1)...(x) v_gamma by weight with t-eigenvalue zeta^eps."""
    from .fock import TwistedEngine, t_weight

    eng = TwistedEngine(D, eta, i, max_weight=order)
    counts: Dict[int, int] = {}
    target = zeta3(eps)
    for key in eng.basis(order):
        if eng.tau_scalar(key) == target:
            k = exponent_key(t_weight(key, D.length))
            counts[k] = counts.get(k, 0) + 1
    return QSeries(counts, exponent_key(order))


def untwisted_trace_bruteforce(lam, gamma, j: int, order) -> QSeries:
    """tau^j-trace on V_{L_(lam,gamma)} by enumerating monomial states (l = 1 scale).

    Builds every b_k1(-n1)...e^beta of weight <= order, applies the lifted
    tau^j with the Fock engine and sums the diagonal coefficients.
    """
    from .fock import UntwistedState, u_weight
    from .lattice import LatticeVector, coset_vector, norm

    lam, gamma = k_word(lam), z3_word(gamma)
    ell = len(lam)
    order = Fraction(order)
    base = coset_vector(lam, gamma)
    radius = int(2 * order + 4)
    vectors = []
    # L^{(+) l} is generated by (2,0) and (2,-6) at each site
    steps = [(a, b) for a in range(-radius, radius + 1) for b in range(-radius, radius + 1)]
    site_vecs = []
    for s in range(ell):
        opts = []
        for a, b in steps:
            v = (base.coords[2 * s] + 2 * a + 2 * b, base.coords[2 * s + 1] - 6 * b)
            n = Fraction(v[0] * v[0]) + Fraction(v[0] * v[1]) + Fraction(v[1] * v[1], 3)
            if n / 2 <= order:
                opts.append((v, n))
        site_vecs.append(opts)
    for combo in itertools.product(*site_vecs):
        if sum(n for _, n in combo) / 2 <= order:
            vectors.append(LatticeVector([c for v, _ in combo for c in v]))
    # Heisenberg monomials: multisets of (k, n) with total depth <= order - norm/2
    variables_by_budget = lambda budget: [(k, n) for n in range(1, budget + 1) for k in range(2 * ell)]
    counts: Dict[int, object] = {}
    for beta in vectors:
        budget = order - norm(beta) / 2
        if budget < 0:
            continue
        variables = variables_by_budget(int(budget))
        monos = []

        def rec(start, remaining, cur):
            monos.append(tuple(cur))
            for idx in range(start, len(variables)):
                k, n = variables[idx]
                if n <= remaining:
                    cur.append((k, n))
                    rec(idx, remaining - n, cur)
                    cur.pop()

        rec(0, budget, [])
        for mono in monos:
            key = (tuple(sorted(mono)), beta)
            st = UntwistedState({key: ONE}, ell)
            image = st.tau(j) if j % 3 else st
            diag = image.coefficient(key)
            if diag:
                k = exponent_key(u_weight(key))
                counts[k] = counts[k] + diag if k in counts else diag
    return QSeries(counts, exponent_key(order))


# weights of the top levels of the 30 irreducible V_L^{tau_1}-modules
def top_weight_table() -> Dict[ModuleLabel, Fraction]:
    F = Fraction
    table: Dict[ModuleLabel, Fraction] = {}
    table[ModuleLabel.untwisted((0,), (0,), 0)] = F(0)
    for e in (1, 2):
        table[ModuleLabel.untwisted((0,), (0,), e)] = F(1)
    for j in (1, 2):
        for e in range(3):
            table[ModuleLabel.untwisted((0,), (j,), e)] = F(2, 3)
    table[ModuleLabel.untwisted((K_C,), (0,))] = F(1, 2)
    for j in (1, 2):
        table[ModuleLabel.untwisted((K_C,), (j,))] = F(1, 6)
    for i in (1, 2):
        table[ModuleLabel.twisted((0,), i, 0)] = F(1, 9)
        table[ModuleLabel.twisted((0,), i, 2)] = F(4, 9)
        table[ModuleLabel.twisted((0,), i, 1)] = F(7, 9)
        for j in (1, 2):
            table[ModuleLabel.twisted((j,), i, 2)] = F(1, 9)
            table[ModuleLabel.twisted((j,), i, 1)] = F(4, 9)
            table[ModuleLabel.twisted((j,), i, 0)] = F(7, 9)
    return table
