"""Brute-force checks of the combinatorial statements behind the orbifold construction.

Each check enumerates its whole domain and returns a :class:`CheckReport`
listing every failing instance (smallest witness first).  ``run_suite`` runs
the default collection, which is expected to pass.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .codes import (
    A,
    B,
    C,
    Code,
    c_of,
    e8_klein_code,
    k_inner,
    k_neg_free_sum,
    k_str,
    k_word,
    repetition_z3,
    support,
    tau_symbol,
    tau_word,
    tetracode,
    weight,
    z3_sub,
)
from .fock import binom
from .lattice import pq_values

SYMBOLS = (A, B, C)


@dataclass
class CheckReport:
    """Outcome of one exhaustive check; it passes exactly when ``failures`` is empty."""

    name: str
    anchor: str
    instances_checked: int = 0
    failures: List = field(default_factory=list)
    notes: Dict[str, object] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def header(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name} [{self.anchor}]"

    def __str__(self) -> str:
        text = f"{self.header()}: {self.instances_checked} instances, {len(self.failures)} failures"
        if self.failures:
            text += f"; first witness {self.failures[0]}"
        return text


# ---------------------------------------------------------------------------
# code-level identities
# ---------------------------------------------------------------------------


def default_codes() -> List[Code]:
    """Small named codes used by the default suite."""
    return [
        Code.zero("K", 3),
        Code.k_code(3, ["a00"]),
        e8_klein_code(),
        c_of((C,) * 4),
        Code.zero("Z3", 2),
        repetition_z3(3),
        tetracode(),
    ]


def check_dual_sizes(codes: Optional[Iterable[Code]] = None) -> CheckReport:
    """|C| |C^perp| equals 4^l for K-codes and 3^l for Z3-codes."""
    report = CheckReport("code size times dual size", "dual-size identity")
    for code in codes if codes is not None else default_codes():
        report.instances_checked += 1
        expected = (4 if code.kind == "K" else 3) ** code.length
        if len(code) * len(code.dual()) != expected:
            report.failures.append(code.describe())
    return report


def check_weight_shift(codes: Optional[Iterable[Code]] = None) -> CheckReport:
    """For self-orthogonal Z3-codes D: wt(delta - gamma) = wt(delta) mod 3 on D x D^perp."""
    report = CheckReport("ternary weight shift", "weights mod 3 on dual cosets")
    if codes is None:
        codes = [Code.zero("Z3", 2), repetition_z3(3), tetracode()]
    for D in codes:
        if not D.is_self_orthogonal():
            raise ValueError(f"{D.describe()} is not self-orthogonal")
        dual = D.dual().words()
        for gamma in D.words():
            for delta in dual:
                report.instances_checked += 1
                if (weight(z3_sub(delta, gamma)) - weight(delta)) % 3:
                    report.failures.append((gamma, delta))
    report.failures.sort()
    return report


def _k_codes_from_pairs(length: int) -> List[Code]:
    """Every K-code of the given length generated by at most two words (deduplicated)."""
    words = list(itertools.product(range(4), repeat=length))
    seen = set()
    out = []
    for u, v in itertools.combinations_with_replacement(words, 2):
        code = Code.k_code(length, [u, v])
        key = frozenset(code.words())
        if key not in seen:
            seen.add(key)
            out.append(code)
    return out


def self_orthogonal_not_even_code(length: int = 2) -> Code:
    """{0, (a,0,...,0)}: self-orthogonal, not even, not tau-invariant."""
    return Code.k_code(length, [(A,) + (0,) * (length - 1)])


def default_k_sample() -> List[Code]:
    sample = []
    for length in (1, 2, 3):
        sample.extend(_k_codes_from_pairs(length))
    sample.append(e8_klein_code())
    return sample


def check_even_self_orthogonal(sample: Optional[Iterable[Code]] = None) -> CheckReport:
    """Even K-codes are self-orthogonal; for tau-invariant codes the converse holds too.

    The witness code {0, (a,0,...)} must be self-orthogonal but neither even
    nor tau-invariant, otherwise the converse would be vacuous.
    """
    report = CheckReport("even versus self-orthogonal K-codes", "even implies self-orthogonal")
    codes = list(sample) if sample is not None else default_k_sample()
    for code in codes:
        even, so, inv = code.is_even(), code.is_self_orthogonal(), code.is_tau_invariant()
        report.instances_checked += 1
        if even and not so:
            report.failures.append(("even but not self-orthogonal", code.describe()))
        if inv and even != so:
            report.failures.append(("tau-invariant with even != self-orthogonal", code.describe()))
    witness = self_orthogonal_not_even_code()
    report.instances_checked += 1
    if not (witness.is_self_orthogonal() and not witness.is_even() and not witness.is_tau_invariant()):
        report.failures.append(("witness code does not separate the notions", witness.describe()))
    report.notes["codes"] = len(codes)
    return report


def q_sum(lam, mu) -> int:
    """Sum over sites of Q(lam_s, mu_s)."""
    return sum(pq_values(x, y)[1] for x, y in zip(k_word(lam), k_word(mu)))


def q_parity_counterexample() -> Tuple[Code, Tuple, Tuple, int]:
    """The non-tau-invariant code {0,(a,b),(b,a),(c,c)} with lam=(a,b), mu=(b,a): odd sum 1."""
    code = Code.k_code(2, ["ab", "ba"])
    lam, mu = k_word("ab"), k_word("ba")
    return code, lam, mu, q_sum(lam, mu)


def check_q_parity(code: Code) -> CheckReport:
    """Sum_s Q(lam_s, mu_s) is even for all lam, mu in a tau-invariant even K-code."""
    report = CheckReport(f"Q-parity on {code.describe()}", "Q-sum parity")
    words = code.words()
    for lam in words:
        for mu in words:
            report.instances_checked += 1
            if q_sum(lam, mu) % 2:
                report.failures.append((k_str(lam), k_str(mu)))
    report.failures.sort()
    report.notes["tau_invariant"] = code.is_tau_invariant()
    report.notes["even"] = code.is_even()
    report.notes["counterexample_sum"] = q_parity_counterexample()[3]
    return report


# ---------------------------------------------------------------------------
# binomial identities on top levels
# ---------------------------------------------------------------------------
#
# Inner products <beta(x), beta(y)> between single sites are 1 (same nonzero
# symbol), -1/2 (distinct nonzero symbols) or 0; they are stored doubled so the
# enumeration runs on small integers.


def _site_ip2(x: int, y: int) -> int:
    if x == 0 or y == 0:
        return 0
    return 2 if x == y else -1


def nonzero_words(length: int) -> List[Tuple[int, ...]]:
    return [w for w in itertools.product((0, A, C, B), repeat=length) if any(w)]


def is_tau_constant(lam: Sequence[int]) -> bool:
    """lam is in the tau-orbit of (c,...,c)."""
    return len(set(lam)) == 1 and lam[0] != 0


def occurs_on_top(lam: Sequence[int]) -> bool:
    """Whether V_{L(lam,0)} can sit in the lowest level of a module it generates.

    The ambient algebra is the tau-fixed part of the lattice algebra on the
    code C = {0,(a)_l,(b)_l,(c)_l}.  Untwisted modules containing V_{L(lam,0)}
    are assembled from the cosets lam + C, so lam must lie in C^perp.  Its
    lowest weight wt(lam)/2 must not exceed that of the other cosets in the
    same module.  For lam in C the competing piece is a nontrivial eigenspace
    of the zero coset, whose lowest weight is 1.
    """
    lam = tuple(lam)
    length = len(lam)
    if not any(lam):
        return False
    code_words = [(0,) * length] + [(j,) * length for j in SYMBOLS]
    if any(k_inner(lam, x) for x in code_words):
        return False
    if is_tau_constant(lam):
        return Fraction(length, 2) <= 1
    return all(weight(lam) <= weight(k_neg_free_sum(lam, x)) for x in code_words)


def _subsets(length: int) -> List[Tuple[int, ...]]:
    return [S for r in range(1, length // 2 + 1) for S in itertools.combinations(range(length), r)]


@lru_cache(maxsize=None)
def _binom_half(top2: int, k: int) -> Fraction:
    """binom(top2/2, k)."""
    return binom(Fraction(top2, 2), k)


@dataclass(frozen=True)
class BinomialFailure:
    """A nonvanishing instance; ``subset`` is None for the three-term sum."""

    lam: Tuple[int, ...]
    eps: Tuple[int, ...]
    symbol: Optional[int]
    subset: Optional[Tuple[int, ...]]
    value: Fraction

    def __str__(self):
        where = f", j={k_str((self.symbol,))}, S={self.subset}" if self.subset is not None else ""
        return f"lam={k_str(self.lam)}, eps={self.eps}{where}: {self.value}"


@lru_cache(maxsize=None)
def binomial_table(length: int) -> Dict[Tuple[int, ...], Tuple[Optional[BinomialFailure], Optional[BinomialFailure]]]:
    """For every nonzero lam, the first nonvanishing instance of each identity.

    The first entry scans delta(<beta((0)_Sbar (j)_S; eps), beta(lam)> = -|S|) *
    binom(<beta((j)_l; eps), beta(lam)> + l/2, l - 2|S| + 1) over j, eps and
    1 <= |S| <= l/2.  The second scans sum_j binom(<beta((j)_l; eps),
    beta(lam)> + l/2, l + 1) over eps.  None means the identity vanishes on
    its whole range.
    """
    if length % 2:
        raise ValueError("length must be even")
    lams = nonzero_words(length)
    lam_arr = np.array(lams, dtype=np.int64)
    eps_list = list(itertools.product((1, -1), repeat=length))
    eps_arr = np.array(eps_list, dtype=np.int64)
    half = length // 2
    first_one: Dict[int, BinomialFailure] = {}
    totals = []
    for j in SYMBOLS:
        ip2 = np.vectorize(lambda x: _site_ip2(j, x))(lam_arr) if lams else lam_arr
        terms = ip2[:, None, :] * eps_arr[None, :, :]
        full = terms.sum(axis=-1)
        totals.append(full)
        for S in _subsets(length):
            r = len(S)
            hit = terms[:, :, list(S)].sum(axis=-1) == -2 * r
            if not hit.any():
                continue
            k = length - 2 * r + 1
            for top2 in np.unique(full[hit]):
                value = _binom_half(int(top2) + length, k)
                if value == 0:
                    continue
                for li, ei in zip(*np.nonzero(hit & (full == top2))):
                    cand = BinomialFailure(lams[li], eps_list[ei], j, S, value)
                    prev = first_one.get(li)
                    if prev is None or _order_key(cand) < _order_key(prev):
                        first_one[li] = cand
    first_two: Dict[int, BinomialFailure] = {}
    stacked = np.stack(totals)  # (3, N, E)
    k = length + 1
    values = {int(t): _binom_half(int(t) + length, k) for t in np.unique(stacked)}
    for li in range(len(lams)):
        for ei in range(len(eps_list)):
            s = sum(values[int(stacked[jj, li, ei])] for jj in range(3))
            if s != 0:
                first_two[li] = BinomialFailure(lams[li], eps_list[ei], None, None, s)
                break
    return {lam: (first_one.get(i), first_two.get(i)) for i, lam in enumerate(lams)}


def _order_key(f: BinomialFailure):
    return (tuple(-e for e in f.eps), SYMBOLS.index(f.symbol), len(f.subset), f.subset)


def three_term_sum(lam, eps) -> Fraction:
    """sum_j binom(<beta((j)_l; eps), beta(lam)> + l/2, l + 1)."""
    lam = k_word(lam)
    length = len(lam)
    total = Fraction(0)
    for j in SYMBOLS:
        top2 = sum(e * _site_ip2(j, x) for e, x in zip(eps, lam)) + length
        total += _binom_half(top2, length + 1)
    return total


def delta_binomial(lam, eps, j: int, S: Sequence[int]) -> Fraction:
    """The single-subset term of the first identity."""
    lam = k_word(lam)
    length = len(lam)
    partial = sum(eps[s] * _site_ip2(j, lam[s]) for s in S)
    if partial != -2 * len(S):
        return Fraction(0)
    top2 = sum(e * _site_ip2(j, x) for e, x in zip(eps, lam)) + length
    return _binom_half(top2, length - 2 * len(S) + 1)


def check_binomial_identities(length: int, restrict: Callable = occurs_on_top) -> CheckReport:
    """Both binomial identities over every (lam, eps, S) inside their hypotheses.

    ``restrict`` selects the lam considered; by default these are the lam whose
    module occurs on a top level, the standing assumption of the statement.
    The first identity additionally excludes the tau-orbit of (c)_l; the
    second excludes it only when l = 2.
    """
    report = CheckReport(f"binomial identities, l={length}", "top-level binomial vanishing")
    table = binomial_table(length)
    n_eps = 2 ** length
    n_sub = len(_subsets(length))
    for lam, (one, two) in table.items():
        if not restrict(lam):
            continue
        const = is_tau_constant(lam)
        if not const:
            report.instances_checked += 3 * n_eps * n_sub
            if one is not None:
                report.failures.append(one)
        if not const or length >= 4:
            report.instances_checked += n_eps
            if two is not None:
                report.failures.append(two)
    report.notes["length_two_constant_sum"] = three_term_sum((C, C), (1, 1))
    report.notes["unrestricted_failures"] = sum(
        1 for lam, pair in table.items() if any(pair) and not (is_tau_constant(lam) and length == 2)
    )
    return report


def check_excluded_constant_sum() -> CheckReport:
    """At l = 2 the three-term sum on lam = (c,c), eps = (1,1) is 1, not 0.

    This instance lies outside the hypothesis of the second identity; the
    module V_{L((c,c),0)} genuinely occurs on a top level, so the exclusion
    is necessary.
    """
    report = CheckReport("excluded instance at l=2", "three-term sum on the constant orbit")
    value = three_term_sum((C, C), (1, 1))
    report.instances_checked = 1
    report.notes["value"] = value
    if value != 1:
        report.failures.append(("(c,c)", (1, 1), value))
    return report


def survivors(length: int) -> List[Tuple[int, ...]]:
    """Nonzero lam on which both identities vanish wherever their hypotheses apply."""
    out = []
    for lam, (one, two) in binomial_table(length).items():
        const = is_tau_constant(lam)
        if one is not None and not const:
            continue
        if two is not None and (not const or length >= 4):
            continue
        out.append(lam)
    return out


def symbol_counts(lam) -> Dict[int, int]:
    return {j: sum(1 for x in lam if x == j) for j in SYMBOLS}


def _restriction_failures(lam) -> List[str]:
    """Consequences of the identities for lam outside the tau-orbit of (c)_l."""
    length = len(lam)
    counts = symbol_counts(lam)
    out = []
    for j in SYMBOLS:
        others = sum(counts[k] for k in SYMBOLS if k != j)
        if 2 * counts[j] >= length:
            if not (2 * counts[j] == length and others == 0 and counts[j] % 2 == 0):
                out.append(f"|S_{k_str((j,))}| >= l/2 forces |S_j| = l/2 even and other symbols absent")
        if 1 <= counts[j] and 2 * counts[j] <= length and others % 2:
            out.append(f"1 <= |S_{k_str((j,))}| <= l/2 forces an even count of other symbols")
    return out


def g_reduce(mu) -> Tuple[Tuple[int, ...], Callable]:
    """An element g of (sitewise tau powers) x (permutations) with g(mu) = ((c)_r (0)_{l-r}).

    Returns g(mu) and g as a function on K-words.
    """
    mu = k_word(mu)
    supp = list(support(mu))
    order = supp + [s for s in range(len(mu)) if s not in supp]
    powers = {}
    for s in supp:
        powers[s] = next(p for p in range(3) if tau_symbol(mu[s], p) == C)

    def g(word):
        word = k_word(word)
        return tuple(tau_symbol(word[s], powers.get(s, 0)) for s in order)

    return g(mu), g


def check_support_constraints(length: int, reduction_weights: Optional[Iterable[int]] = None) -> CheckReport:
    """Every survivor of the binomial identities is orthogonal to (c)_l and has weight < l.

    Also checks the per-symbol restrictions on survivors outside the orbit of
    (c)_l, and the reduction of a general mu to ((c)_r (0)_{l-r}): for every
    nonzero mu of even weight r in ``reduction_weights`` (default 4..l) and
    every lam whose first r coordinates after reduction survive at length r,
    <mu, lam>_K = 0 and fewer than r sites of supp(mu) meet supp(lam).
    Weight-two mu are excluded by default because the underlying identities
    do not apply to the orbit of (c,c) at length 2.
    """
    report = CheckReport(f"support constraints, l={length}", "survivor orthogonality and weight")
    cvec = (C,) * length
    surv = survivors(length)
    for lam in surv:
        report.instances_checked += 1
        if k_inner(cvec, lam):
            report.failures.append((k_str(lam), "<(c)_l, lam>_K = 1"))
        if weight(lam) >= length:
            report.failures.append((k_str(lam), "wt_K(lam) = l"))
        if not is_tau_constant(lam):
            for msg in _restriction_failures(lam):
                report.failures.append((k_str(lam), msg))
    report.notes["survivors"] = len(surv)

    weights = list(reduction_weights) if reduction_weights is not None else list(range(4, length + 1, 2))
    surv_by_r = {r: set(survivors(r)) for r in weights}
    words = list(itertools.product((0, A, C, B), repeat=length))
    reductions = 0
    for mu in words:
        r = weight(mu)
        if r not in surv_by_r:
            continue
        gmu, g = g_reduce(mu)
        if gmu != (C,) * r + (0,) * (length - r):
            report.failures.append((k_str(mu), "reduction did not reach ((c)_r (0)_{l-r})"))
            continue
        for lam in words:
            if not any(lam):
                continue
            glam = g(lam)
            if k_inner(gmu, glam) != k_inner(mu, lam):
                report.failures.append((k_str(mu), k_str(lam), "reduction changed <,>_K"))
            head = glam[:r]
            if not any(head) or head not in surv_by_r[r]:
                continue
            reductions += 1
            overlap = sum(1 for x, y in zip(mu, lam) if x and y)
            if k_inner(mu, lam) or overlap >= r:
                report.failures.append((k_str(mu), k_str(lam), "reduced survivor violates the bound"))
    report.instances_checked += reductions
    report.notes["reductions"] = reductions
    return report


def weight_two_exceptions(length: int = 2) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Pairs (mu, lam) with wt(mu) = 2 where the reduced lam survives but meets all of supp(mu).

    At length 2 these come from the tau-orbit of (c,c), on which the identities
    carry no constraint; the corresponding modules genuinely occur.
    """
    surv2 = set(survivors(2))
    out = []
    words = list(itertools.product((0, A, C, B), repeat=length))
    for mu in words:
        if weight(mu) != 2:
            continue
        _, g = g_reduce(mu)
        for lam in words:
            if not any(lam):
                continue
            head = g(lam)[:2]
            overlap = sum(1 for x, y in zip(mu, lam) if x and y)
            if any(head) and head in surv2 and overlap >= 2:
                out.append((mu, lam))
    return out


# ---------------------------------------------------------------------------
# Zhu-product cross-check of the binomial closed form
# ---------------------------------------------------------------------------


def check_zhu_closed_form(length: int = 2, lams: Optional[Iterable] = None) -> CheckReport:
    """Zero modes of e((c)_l) o e((-c)_Sbar (c)_S) against the closed form.

    On e(lam; eps) the zero mode equals delta * binom(<beta((c)_l; eps),
    beta(lam)> + l/2, l - 2|S| + 1) times the lattice product
    e((c)_l) e((-c)_Sbar (c)_S) e(lam; eps).  Computed with the untwisted
    vertex-operator engine for every S with 1 <= |S| <= l/2 and every eps.
    """
    from .fock import UntwistedState, untwisted_coeff, zero_mode, zhu_circ
    from .lattice import LatticeVector, beta_of, inner_product

    report = CheckReport(f"Zhu zero modes, l={length}", "binomial closed form from vertex operators")
    if lams is None:
        lams = [(C,) * length, (A,) * length, (C, C) + (0,) * (length - 2),
                (A, B) + (0,) * (length - 2), (A, A) + (0,) * (length - 2)]
    cl = beta_of((C,) * length)

    def signed(word, eps):
        return LatticeVector.from_pairs(tuple(e * x for x in p) for p, e in zip(beta_of(word).pairs(), eps))

    def leading(x, y):
        n = -int(inner_product(x, y)) - 1
        return untwisted_coeff(UntwistedState.e(x), n, UntwistedState.e(y), max_weight=8 * length)

    for S in _subsets(length):
        r = len(S)
        vb = LatticeVector.from_pairs(p if s in S else (-p[0], -p[1]) for s, p in enumerate(cl.pairs()))
        circ = zhu_circ(UntwistedState.e(cl), UntwistedState.e(vb))
        (_, scalar), = leading(cl, vb).terms.items()
        half_c = LatticeVector.from_pairs(p if s in S else (0, 0) for s, p in enumerate(cl.pairs()))
        for lam in lams:
            for eps in itertools.product((1, -1), repeat=length):
                bl = signed(k_word(lam), eps)
                lhs = zero_mode(circ, UntwistedState.e(bl))
                value = Fraction(0)
                if inner_product(half_c, bl) == -r:
                    value = binom(inner_product(cl, bl) + Fraction(length, 2), length - 2 * r + 1)
                rhs = leading(cl + vb, bl).scale(scalar).scale(value)
                report.instances_checked += 1
                if not (lhs - rhs).is_zero():
                    report.failures.append((k_str(k_word(lam)), eps, S))
    return report


def length_two_projected_zero_mode():
    """Zero mode of the projected tau-symmetrised product at l = 2 on e((c,c)).

    Returns (result state, e((c,c)) state); the three-term sum predicts the
    result equals 1 times e((c,c)).
    """
    from .fock import UntwistedState, project_to_lattice, zero_mode, zhu_circ
    from .lattice import beta_of, coset_label

    def in_lattice(b):
        lam, gamma = coset_label(b)
        return not any(lam) and not any(gamma)

    u = UntwistedState.e(beta_of((C, C))).tau_symmetrize()
    v = UntwistedState.e(-beta_of((C, C))).tau_symmetrize()
    w = project_to_lattice(zhu_circ(u, v), in_lattice)
    target = UntwistedState.e(beta_of((C, C)))
    return zero_mode(w, target), target


# ---------------------------------------------------------------------------
# suite
# ---------------------------------------------------------------------------


def run_suite(ell: int = 4, engine: bool = True) -> List[CheckReport]:
    """The default collection of checks; every report is expected to pass.

    ``ell`` is the even length used for the binomial identities and the
    support analysis (6 is slow but supported).
    """
    reports = [
        check_dual_sizes(),
        check_weight_shift(),
        check_even_self_orthogonal(),
        check_q_parity(e8_klein_code()),
        check_q_parity(c_of((C,) * 4)),
        check_excluded_constant_sum(),
        check_binomial_identities(ell),
        check_support_constraints(ell),
    ]
    if engine:
        reports.append(check_zhu_closed_form(2))
    return reports
