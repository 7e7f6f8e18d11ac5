from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from btl import fourier, oracles
from btl.core import EXTENDED_INT, PM_ONE, BFunc, build_generalized_character, character, PointIndex

from conftest import pm_functions


def _majority3():
    return BFunc.from_callable(3, lambda x: 1 if bin(x).count("1") >= 2 else -1)


def test_majority_spectrum_frozen():
    # Maj3 = (x1 + x2 + x3 - x1 x2 x3) / 2, scaled by 2^3
    s = fourier.wht(_majority3())
    assert s.coeffs.tolist() == [0, 4, 4, 0, 4, 0, 0, -4]
    assert s.coefficient(7) == Fraction(-1, 2)
    assert fourier.fourier_degree(s) == 3


def test_dictator_and_parity():
    f = BFunc.from_callable(4, lambda x: character(0b0100, PointIndex(x, 4)))
    s = fourier.wht(f)
    assert s.support().tolist() == [0b0100]
    assert s.coefficient(0b0100) == 1
    full = BFunc.from_callable(5, lambda x: character(0b11111, PointIndex(x, 5)))
    assert fourier.fourier_degree(fourier.wht(full)) == 5


@given(pm_functions(max_n=5))
def test_wht_matches_brute_force(f):
    assert np.array_equal(fourier.wht(f).coeffs, oracles.brute_spectrum(f))


@given(pm_functions(max_n=8))
def test_parseval_and_roundtrip(f):
    s = fourier.wht(f)
    assert s.square_sum() == 4 ** f.n
    assert fourier.tail_mass(s, 0) == 1
    assert fourier.inverse_wht(s) == f


def test_inverse_rejects_non_integer():
    s = fourier.Spectrum(2, [1, 0, 0, 0])
    with pytest.raises(ValueError):
        fourier.inverse_wht(s)


def test_wht_rejects_extended():
    with pytest.raises(ValueError):
        fourier.wht(BFunc(1, EXTENDED_INT, [0, 3]))


def test_degree_of_zero_spectrum():
    with pytest.raises(ValueError):
        fourier.fourier_degree(fourier.Spectrum(2, np.zeros(4)))


def test_tail_mass_levels():
    s = fourier.wht(_majority3())
    assert fourier.tail_mass(s, 1) == 1
    assert fourier.tail_mass(s, 2) == Fraction(1, 4)
    assert fourier.tail_mass(s, 4) == 0
    with pytest.raises(ValueError):
        fourier.tail_mass(s, 5)


def test_distance_normalisations():
    s = fourier.wht(_majority3())
    assert fourier.distance_lb_low_degree(s, 2) == Fraction(1, 16)
    assert fourier.distance_lb_low_degree(s, 2, "half_l2") == Fraction(1, 8)
    with pytest.raises(ValueError):
        fourier.distance_lb_low_degree(s, 2, "l1")


def test_disagreement_bound_holds_against_degree_one_functions():
    # every +-1 function of degree <= 1 on 3 bits is a signed dictator or constant
    maj = _majority3()
    bound = fourier.distance_lb_low_degree(fourier.wht(maj), 2)
    for S in (0, 1, 2, 4):
        for sign in (1, -1):
            g = BFunc.from_callable(3, lambda x: sign * character(S, PointIndex(x, 3)))
            assert Fraction(int(np.sum(g.values != maj.values)), 8) >= bound


def test_dyadic():
    assert fourier.dyadic(Fraction(3, 8)) == (3, 3)
    assert fourier.dyadic(Fraction(5)) == (5, 0)
    with pytest.raises(ValueError):
        fourier.dyadic(Fraction(1, 3))


def test_spectrum_csv():
    text = fourier.wht(_majority3()).to_csv()
    assert text.splitlines() == [
        "mask,setsize,coeff_numerator", "1,1,4", "2,1,4", "4,1,4", "7,3,-4",
    ]
    assert len(fourier.wht(_majority3()).to_csv(include_zeros=True).splitlines()) == 9


@given(pm_functions(max_n=4), pm_functions(max_n=4))
def test_product_spectrum_is_dyadic_convolution(f, g):
    if f.n != g.n:
        return
    h = BFunc(f.n, PM_ONE, f.values * g.values)
    conv = fourier.dyadic_convolution(fourier.wht(f).coeffs, fourier.wht(g).coeffs)
    assert [int(c) for c in conv] == [int(c) << f.n for c in fourier.wht(h).coeffs]


@given(st.integers(0, 3).flatmap(lambda lb: st.tuples(
    st.just(lb), st.integers(1, 4).flatmap(lambda m: st.tuples(
        st.just(m), st.lists(st.integers(0, (1 << m) - 1), min_size=1 << lb, max_size=1 << lb))))))
def test_generalized_character_spectrum(args):
    ell_bits, (m, blocks) = args
    f = build_generalized_character(blocks, m)
    coeffs = fourier.wht(f).coeffs
    expected = np.zeros(1 << f.n, dtype=np.int64)
    for B in set(blocks):
        for U in range(1 << ell_bits):
            same = [t for t, b in enumerate(blocks) if b == B]
            expected[U | (B << ell_bits)] = (1 << m) * sum(character(U, PointIndex(t, ell_bits)) for t in same)
    assert np.array_equal(coeffs, expected)


def test_product_law_spot_check_n10():
    rng = np.random.default_rng(10)
    f = BFunc(10, PM_ONE, rng.choice(np.array([-1, 1]), size=1024))
    g = BFunc(10, PM_ONE, rng.choice(np.array([-1, 1]), size=1024))
    h = BFunc(10, PM_ONE, f.values * g.values)
    conv = fourier.dyadic_convolution(fourier.wht(f).coeffs, fourier.wht(g).coeffs)
    assert [int(c) for c in conv] == [int(c) << 10 for c in fourier.wht(h).coeffs]
