import itertools
import os
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from artifact.codes import A, B, C, e8_klein_code, c_of, k_inner, weight
from artifact.verify import (
    binomial_table,
    check_binomial_identities,
    check_dual_sizes,
    check_even_self_orthogonal,
    check_excluded_constant_sum,
    check_q_parity,
    check_support_constraints,
    check_weight_shift,
    check_zhu_closed_form,
    delta_binomial,
    g_reduce,
    is_tau_constant,
    length_two_projected_zero_mode,
    nonzero_words,
    occurs_on_top,
    q_parity_counterexample,
    run_suite,
    survivors,
    three_term_sum,
    weight_two_exceptions,
)

SLOW = os.environ.get("ARTIFACT_SLOW") == "1"


def test_code_level_checks():
    assert check_dual_sizes().ok
    assert check_weight_shift().ok
    report = check_even_self_orthogonal()
    assert report.ok and report.instances_checked > 700


def test_q_parity_on_invariant_even_codes():
    assert check_q_parity(e8_klein_code()).ok
    assert check_q_parity(c_of((C,) * 4)).ok


def test_q_parity_needs_tau_invariance():
    code, lam, mu, value = q_parity_counterexample()
    assert value == 1
    assert not code.is_tau_invariant()
    report = check_q_parity(code)
    assert ("ab", "ba") in report.failures


def test_constant_orbit_sum_at_length_two_is_one():
    assert three_term_sum((C, C), (1, 1)) == 1
    report = check_excluded_constant_sum()
    assert report.ok and report.notes["value"] == 1


def test_binomial_identities_length_four():
    report = check_binomial_identities(4)
    assert report.ok, report.failures[:3]
    assert report.instances_checked == 20832
    assert report.notes["unrestricted_failures"] == 213


def test_unrestricted_instance_fails():
    lam = (A, B, 0, 0)
    assert not occurs_on_top(lam)
    assert delta_binomial(lam, (1, -1, 1, 1), B, (1,)) == Fraction(1, 16)
    assert three_term_sum(lam, (1, 1, 1, 1)) == Fraction(3, 128)
    assert binomial_table(4)[lam][0].value == Fraction(1, 16)


def test_repeated_symbol_sum_vanishes():
    for eps in itertools.product((1, -1), repeat=4):
        assert three_term_sum((A, A, 0, 0), eps) == 0


def test_survivors_are_the_top_level_words():
    surv = survivors(4)
    assert len(surv) == 42
    assert set(surv) == {lam for lam in nonzero_words(4) if occurs_on_top(lam)}


def test_support_constraints_length_four():
    report = check_support_constraints(4)
    assert report.ok, report.failures[:3]
    assert all(weight(lam) < 4 and k_inner((C,) * 4, lam) == 0 for lam in survivors(4))


def test_length_two_survivors_are_the_constant_orbit():
    assert sorted(survivors(2)) == [(A, A), (C, C), (B, B)]
    report = check_support_constraints(2)
    assert sorted(report.failures) == sorted((w, "wt_K(lam) = l") for w in ("aa", "bb", "cc"))


def test_weight_two_reduction_exceptions():
    exceptions = weight_two_exceptions()
    assert len(exceptions) == 27
    assert all(weight(mu) == 2 for mu, _ in exceptions)


@given(st.lists(st.sampled_from([0, A, C, B]), min_size=4, max_size=4).filter(any))
def test_g_reduce_preserves_pairing(mu):
    mu = tuple(mu)
    gmu, g = g_reduce(mu)
    r = weight(mu)
    assert gmu == (C,) * r + (0,) * (4 - r)
    for lam in [(A, 0, B, C), (C, C, 0, 0), (B, A, A, 0)]:
        assert k_inner(g(lam), gmu) == k_inner(lam, mu)


@given(st.lists(st.sampled_from([A, C, B]), min_size=1, max_size=6))
def test_tau_constant_words(word):
    assert is_tau_constant(word) == (len(set(word)) == 1)


def test_zhu_closed_form_length_two():
    report = check_zhu_closed_form(2)
    assert report.ok and report.instances_checked == 40


def test_projected_zero_mode_is_one():
    result, target = length_two_projected_zero_mode()
    assert result == target


def test_default_suite_passes():
    reports = run_suite(4, engine=False)
    assert all(r.ok for r in reports), [str(r) for r in reports if not r.ok]


@pytest.mark.skipif(not SLOW, reason="set ARTIFACT_SLOW=1 for length six")
def test_binomial_identities_length_six():
    assert check_binomial_identities(6).ok
    assert len(survivors(6)) == 435
    assert check_support_constraints(6).ok
