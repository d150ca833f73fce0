import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from artifact.codes import (
    A,
    B,
    C,
    bundled_code,
    INFINITE_WEIGHT,
    Code,
    CodeFormatError,
    c_of,
    e8_klein_code,
    format_code,
    k_pair,
    k_word,
    orbit_rep,
    orbit_representatives,
    parse_code,
    repetition_z3,
    tau_word,
    tetracode,
    weight,
    z3_sub,
)


def test_k_pair_table():
    assert k_pair("a", "a") == (Fraction(1), 0)
    assert k_pair("a", "b") == (Fraction(-1, 2), 1)
    assert k_pair("0", "c") == (Fraction(0), 0)


def test_dot_is_bilinear_and_matches_circ():
    for x, y, z in itertools.product(range(4), repeat=3):
        assert k_pair(x, y ^ z)[1] == (k_pair(x, y)[1] + k_pair(x, z)[1]) % 2
        assert (2 * k_pair(x, y)[0] - k_pair(x, y)[1]) % 2 == 0


def test_dual_of_zero_code_is_ambient():
    assert len(Code.zero("K", 3).dual()) == 64
    assert len(Code.zero("Z3", 3).dual()) == 27


def test_tetracode_is_self_dual():
    D = tetracode()
    assert len(D) == 9
    assert D.dual().same_code(D)


def test_e8_klein_code_is_self_dual_and_tau_invariant():
    C_ = e8_klein_code()
    assert len(C_) == 16
    assert C_.dual().same_code(C_)
    assert C_.is_tau_invariant()


def test_tau_word():
    assert tau_word(k_word("aa00")) == k_word("bb00")
    assert tau_word((0, 0, 0)) == (0, 0, 0)
    w = (C,) * 3
    assert len({w, tau_word(w), tau_word(w, 2)}) == 3
    for x in itertools.product(range(4), repeat=2):
        assert tau_word(x, 3) == x


def test_min_weights():
    assert Code.zero("K", 3).min_weight() == INFINITE_WEIGHT
    assert e8_klein_code().min_weight() == 2
    assert tetracode().min_weight() == 3


@pytest.mark.parametrize("length, count", [(1, 2), (2, 6), (4, 86)])
def test_orbit_representative_counts(length, count):
    reps = orbit_representatives(length)
    assert len(reps) == count == 1 + (4 ** length - 1) // 3
    assert len(set(reps)) == len(reps)


def test_length_one_orbit_reps():
    assert set(orbit_representatives(1)) == {(0,), (C,)}
    assert orbit_rep((A,)) == orbit_rep((B,)) == (C,)


def test_c_of_is_generated_by_orbit():
    code = c_of(k_word("ca"))
    assert code.is_tau_invariant()
    assert set(code.words()) >= {k_word("ca"), tau_word(k_word("ca"))}
    assert len(code) == 4


k_codes = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.tuples(*[st.integers(0, 3)] * n), min_size=0, max_size=3).map(
        lambda gens: Code.k_code(n, gens) if gens else Code.zero("K", n)
    )
)
z3_codes = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.tuples(*[st.integers(0, 2)] * n), min_size=0, max_size=3).map(
        lambda gens: Code.z3_code(n, gens) if gens else Code.zero("Z3", n)
    )
)


@given(st.one_of(k_codes, z3_codes))
def test_code_times_dual_size(code):
    q = 4 if code.kind == "K" else 3
    assert len(code) * len(code.dual()) == q ** code.length
    assert code.dual().dual().same_code(code)


@given(k_codes)
def test_even_implies_self_orthogonal(code):
    if code.is_even():
        assert code.is_self_orthogonal()
    if code.is_tau_invariant():
        assert code.is_even() == code.is_self_orthogonal()


def test_self_orthogonal_but_not_even_witness():
    code = Code.k_code(3, ["a00"])
    assert code.is_self_orthogonal()
    assert not code.is_even()
    assert not code.is_tau_invariant()


@given(z3_codes)
def test_weight_shift_mod_three(D):
    if not D.is_self_orthogonal():
        return
    for g in D.words():
        for d in D.dual().words():
            assert (weight(z3_sub(d, g)) - weight(d)) % 3 == 0


def test_code_file_round_trip():
    for code in (e8_klein_code(), tetracode(), repetition_z3(3)):
        assert parse_code(format_code(code)).same_code(code)


def test_code_file_diagnostics():
    with pytest.raises(CodeFormatError) as err:
        parse_code("kind: K\nlength: 2\ngenerators:\na x\n")
    assert (err.value.line, err.value.column) == (4, 3)
    with pytest.raises(CodeFormatError):
        parse_code("kind: Q\nlength: 2\ngenerators:\n")


def test_bundled_length_twelve_codes():
    C = bundled_code("hexacode_pair")
    D = bundled_code("ternary_golay")
    assert C.kind == "K" and D.kind == "Z3"
    assert C.is_self_dual() and C.is_tau_invariant() and C.is_even()
    assert C.min_weight() == 4
    assert D.is_self_dual() and D.min_weight() == 6 and len(D) == 729
    with pytest.raises(ValueError):
        bundled_code("golay24")
