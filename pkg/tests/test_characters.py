from fractions import Fraction

import pytest

from artifact.characters import (
    ModuleLabel,
    catalog_CD,
    catalog_count_formula,
    catalog_D,
    catalog_Ll,
    catalog_VL,
    char_module,
    char_twisted,
    parse_label,
    top_weight_table,
    trace_tau_untwisted,
    twisted_char_bruteforce,
    untwisted_trace_bruteforce,
    verify_twisted_decomposition,
)
from artifact.codes import Code, bundled_code, e8_klein_code, repetition_z3, tetracode
from artifact.scalars import QSeries


def test_catalog_sizes():
    assert len(catalog_VL()) == 30
    assert len(set(catalog_VL())) == 30
    for ell in (1, 2, 3):
        assert len(catalog_Ll(ell)) == catalog_count_formula(ell)
    assert catalog_count_formula(1) == 30
    assert catalog_count_formula(2) == 126


def test_catalog_with_nonzero_code():
    D = repetition_z3(3)
    labels = catalog_D(D)
    assert len(labels) == 3 * 3 + 21 * 3 + 6 * 3


def test_catalog_rejects_non_self_orthogonal():
    bad = Code.z3_code(2, [(1, 0)])
    with pytest.raises(ValueError):
        catalog_D(bad)


def test_self_dual_catalog_needs_minimum_weight_four():
    assert e8_klein_code().min_weight() == 2
    with pytest.raises(ValueError):
        catalog_CD(e8_klein_code(), tetracode())


def test_self_dual_catalog_leech_codes():
    C = bundled_code("hexacode_pair")
    D = bundled_code("ternary_golay")
    labels = catalog_CD(C, D)
    assert len(labels) == 9
    assert sum(lab.is_twisted for lab in labels) == 6


@pytest.mark.parametrize("text", ["V(0,0)[1]", "V(c,2)", "T(1,2)[0]", "V(ab,12)", "T(120,1)[2]"])
def test_label_round_trip(text):
    if "ab" not in text:
        assert str(parse_label(text)) == text
    assert parse_label(str(parse_label(text))) == parse_label(text)


@pytest.mark.parametrize("text", ["V(0,0)", "V(c,0)[1]", "T(0,0)[0]", "X(0,0)", "T(0,1)"])
def test_bad_labels(text):
    with pytest.raises(ValueError):
        parse_label(text)


def test_top_weights_of_the_thirty_modules():
    table = top_weight_table()
    assert set(table) == set(catalog_VL())
    for label, weight in table.items():
        assert char_module(label, 2).lowest_exponent() == weight


def test_vacuum_character_start():
    ch = char_module(ModuleLabel.untwisted((0,), (0,), 0), 2)
    assert ch.coefficient(0).to_rational() == 1
    assert ch.coefficient(1).to_rational() == 0


@pytest.mark.parametrize("i", [1, 2])
@pytest.mark.parametrize("eta", [0, 1, 2])
def test_twisted_characters_match_enumeration(eta, i):
    for eps in range(3):
        assert twisted_char_bruteforce(Code.zero("Z3", 1), (eta,), i, eps, 3) == char_twisted((eta,), i, eps, 3)


@pytest.mark.parametrize("gamma", [0, 1, 2])
@pytest.mark.parametrize("j", [0, 1, 2])
def test_untwisted_traces_match_enumeration(gamma, j):
    assert untwisted_trace_bruteforce((0,), (gamma,), j, 2) == trace_tau_untwisted((0,), (gamma,), j, 2)


def test_untwisted_trace_nonzero_lambda():
    assert untwisted_trace_bruteforce((2,), (0,), 0, 2) == trace_tau_untwisted((2,), (0,), 0, 2)


@pytest.mark.parametrize("i", [1, 2])
@pytest.mark.parametrize("D,eta", [(Code.zero("Z3", 1), (0,)), (Code.zero("Z3", 1), (2,)),
                                   (repetition_z3(3), (1, 2, 0)), (repetition_z3(3), (0, 0, 0))])
def test_twisted_decomposition(D, eta, i):
    report = verify_twisted_decomposition(D, eta, i, Fraction(D.length, 9) + 4)
    assert report.ok, str(report)
    assert [name for name, _ in report.checks] == ["total", "eps sum = 0", "eps sum = 1", "eps sum = 2"]


def test_decomposition_rejects_eta_outside_dual():
    with pytest.raises(ValueError):
        verify_twisted_decomposition(repetition_z3(3), (1, 0, 0), 1, 1)
