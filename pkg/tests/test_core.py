import numpy as np
import pytest
from hypothesis import given, strategies as st

from btl import core
from btl.core import (
    EXTENDED_INT, HI_SENTINEL, LO_SENTINEL, PM_ONE, BFunc, PointIndex,
    build_generalized_character, character, coords_to_mask, flip, hamming_weight,
    join_point, loads_truth_table, dumps_truth_table, mask_to_coords, split_point,
)

from conftest import int_functions, pm_functions


def test_point_from_signs_roundtrip():
    x = PointIndex.from_signs([1, -1, 1, 1])
    assert x.bits == 0b1101
    assert x.signs() == (1, -1, 1, 1)
    assert x.coordinate(2) == -1 and x.coordinate(4) == 1
    assert hamming_weight(x) == 3


def test_point_rejects_out_of_range():
    with pytest.raises(ValueError):
        PointIndex(16, 4)
    with pytest.raises(ValueError):
        PointIndex(0, core.MAX_N + 1)


def test_flip():
    x = PointIndex(0b0101, 4)
    assert flip(x, 2, "+").bits == 0b0111
    assert flip(x, 1, "-").bits == 0b0100
    assert flip(x, 1, 1).bits == 0b0101
    with pytest.raises(ValueError):
        flip(x, 5, "+")
    with pytest.raises(ValueError):
        flip(x, 1, 0)


def test_character_frozen_values():
    # chi_{1,2} at (+1, -1, +1) is -1; chi_{} is 1; chi_{3} at x3=+1 is 1
    x = PointIndex.from_signs([1, -1, 1])
    assert character(0b011, x) == -1
    assert character(0, x) == 1
    assert character(0b100, x) == 1
    assert character(0b111, PointIndex(0, 3)) == -1
    with pytest.raises(ValueError):
        character(0b1000, x)


@given(st.integers(1, 8).flatmap(lambda n: st.tuples(
    st.just(n), st.integers(0, (1 << n) - 1), st.integers(0, (1 << n) - 1))))
def test_character_is_product_of_coordinates(args):
    n, S, xb = args
    x = PointIndex(xb, n)
    prod = 1
    for i in mask_to_coords(S):
        prod *= x.coordinate(i)
    assert character(S, x) == prod


def test_coords_masks():
    assert coords_to_mask([1, 3]) == 0b101
    assert mask_to_coords(0b1010) == [2, 4]
    with pytest.raises(ValueError):
        coords_to_mask([0])
    with pytest.raises(ValueError):
        coords_to_mask([5], n=4)


@given(st.integers(0, 10).flatmap(lambda n: st.tuples(
    st.just(n), st.integers(0, n), st.integers(0, (1 << n) - 1))))
def test_split_join_roundtrip(args):
    n, ell_bits, xb = args
    s = split_point(PointIndex(xb, n), ell_bits)
    assert s.t < 1 << ell_bits
    assert join_point(s).bits == xb


def test_bfunc_validation():
    with pytest.raises(ValueError):
        BFunc(2, PM_ONE, [1, 0, 1, -1])
    with pytest.raises(ValueError):
        BFunc(2, PM_ONE, [1, 1, 1])
    with pytest.raises(ValueError):
        BFunc(1, EXTENDED_INT, [0, HI_SENTINEL + 1])
    with pytest.raises(ValueError):
        BFunc(1, "real", [0, 1])
    f = BFunc(1, EXTENDED_INT, [LO_SENTINEL, HI_SENTINEL])
    assert f(PointIndex(1, 1)) == HI_SENTINEL


def test_bfunc_values_are_read_only():
    src = np.array([1, -1])
    f = BFunc(1, PM_ONE, src)
    src[0] = -1
    assert f.values[0] == 1
    with pytest.raises(ValueError):
        f.values[0] = -1


def test_from_callable_and_equality():
    f = BFunc.from_callable(3, lambda x: 1 if x & 1 else -1)
    g = BFunc(3, PM_ONE, [-1, 1] * 4)
    assert f == g
    assert f != BFunc(3, EXTENDED_INT, [-1, 1] * 4)


@given(pm_functions(max_n=7), st.booleans())
def test_truth_table_roundtrip_pm(f, packed):
    assert loads_truth_table(dumps_truth_table(f, packed=packed)) == f


@given(int_functions(max_n=6, lo=LO_SENTINEL, hi=HI_SENTINEL))
def test_truth_table_roundtrip_int(f):
    assert loads_truth_table(dumps_truth_table(f)) == f


def test_truth_table_frozen_text():
    f = BFunc(2, PM_ONE, [1, -1, -1, 1])
    assert dumps_truth_table(f) == "n=2 range=pm_one\n1 -1 -1 1\n"
    # +1 at x = 0 and 3 -> bits 1001 -> 0x09
    assert dumps_truth_table(f, packed=True) == "n=2 range=pm_one packing=hex\n09\n"


def test_truth_table_rejects_bad_input():
    with pytest.raises(ValueError):
        loads_truth_table("n=2\n1 1 1 1\n")
    with pytest.raises(ValueError):
        loads_truth_table("n=2 range=pm_one\n1 1 1\n")
    with pytest.raises(ValueError):
        loads_truth_table("n=2 range=extended_int packing=hex\n00\n")


def test_file_io(tmp_path):
    f = BFunc(3, EXTENDED_INT, range(8))
    path = tmp_path / "f.tt"
    core.write_truth_table(f, path)
    assert core.read_truth_table(path) == f


@given(st.integers(0, 3).flatmap(lambda lb: st.tuples(
    st.just(lb), st.integers(1, 5).flatmap(lambda m: st.tuples(
        st.just(m), st.lists(st.integers(0, (1 << m) - 1), min_size=1 << lb, max_size=1 << lb))))))
def test_generalized_character_pointwise(args):
    ell_bits, (m, blocks) = args
    f = build_generalized_character(blocks, m)
    assert f.n == ell_bits + m
    for xb in range(1 << f.n):
        s = split_point(PointIndex(xb, f.n), ell_bits)
        assert f(xb) == character(blocks[s.t], PointIndex(s.z, m))


def test_generalized_character_rejects():
    with pytest.raises(ValueError):
        build_generalized_character([0, 1, 2], 3)
    with pytest.raises(ValueError):
        build_generalized_character([0b1000], 3)


def _chi_table(n):
    # chi[S, x], computed from the encoding directly rather than through core
    idx = np.arange(1 << n, dtype=np.int64)
    odd = np.bitwise_count(idx[:, None] & ~idx[None, :]).astype(np.int64) & 1
    return 1 - 2 * odd


def test_chi_table_agrees_with_character():
    chi = _chi_table(4)
    for S in range(16):
        for x in range(16):
            assert chi[S, x] == character(S, PointIndex(x, 4))


@pytest.mark.parametrize("n", range(1, 11))
def test_flip_changes_character_iff_coordinate_in_set(n):
    chi = _chi_table(n)
    idx = np.arange(1 << n)
    for i in range(n):
        bit = 1 << i
        same = chi[:, idx | bit] == chi[:, idx & ~bit]
        in_set = (idx & bit) != 0
        assert np.array_equal(same, np.broadcast_to(~in_set[:, None], same.shape))


@pytest.mark.parametrize("n", range(1, 7))
def test_four_term_character_sum(n):
    chi = _chi_table(n)
    idx = np.arange(1 << n)
    for i in range(n):
        bit = 1 << i
        up, down = chi[:, idx | bit], chi[:, idx & ~bit]          # (S, x)
        diff = up - down
        total = diff[:, None, :] + diff[None, :, :]               # (S, T, x)
        in_both = ((idx[:, None] & idx[None, :]) & bit) != 0
        cond = in_both[:, :, None] & (up[:, None, :] == -1) & (up[None, :, :] == -1)
        assert np.all(total[cond] == -4)
        assert np.all(total[~cond] >= -2)


@pytest.mark.parametrize("n", range(1, 9))
def test_character_multiplicative(n):
    chi = _chi_table(n)
    idx = np.arange(1 << n)
    for S in range(1 << n):
        assert np.array_equal(chi[S][None, :] * chi, chi[S ^ idx])


def test_generalized_character_small_examples():
    assert np.all(build_generalized_character([0], 3).values == 1)
    f = build_generalized_character([0b01, 0b10], 2)
    for xb in range(8):
        t, z = xb & 1, PointIndex(xb >> 1, 2)
        assert f(xb) == z.coordinate(1 if t == 0 else 2)


@given(st.integers(0, 3).flatmap(lambda lb: st.tuples(
    st.just(lb), st.integers(1, 10 - lb).flatmap(lambda m: st.tuples(
        st.just(m),
        st.lists(st.integers(0, (1 << m) - 1), min_size=1 << lb, max_size=1 << lb),
        st.lists(st.integers(0, (1 << m) - 1), min_size=1 << lb, max_size=1 << lb))))))
def test_generalized_character_edge_fact(args):
    # over every point and coordinate: index directions move f + g by >= -4, and
    # suffix directions give exactly -4 iff the coordinate is shared by x_t, y_t
    # and both characters are -1 at the upper endpoint
    lb, (m, xs, ys) = args
    f = build_generalized_character(xs, m).values
    g = build_generalized_character(ys, m).values
    n = lb + m
    idx = np.arange(1 << n)
    t = idx & ((1 << lb) - 1)
    shared = np.array(xs)[t] & np.array(ys)[t]
    for i in range(n):
        bit = 1 << i
        up, down = idx | bit, idx & ~bit
        total = f[up] + g[up] - f[down] - g[down]
        if i < lb:
            assert np.all(total >= -4)
        else:
            cond = ((shared >> (i - lb)) & 1 == 1) & (f[up] == -1) & (g[up] == -1)
            assert np.all(total[cond] == -4)
            assert np.all(total[~cond] >= -2)
