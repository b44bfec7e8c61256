import numpy as np
import pytest
from conftest import rating_matrices
from hypothesis import given, settings

from dsrating import recode
from dsrating.errors import InvalidInput, MismatchedRecodings, RatingOutOfRange
from dsrating.recode import Kind, RatingMatrix

T_TOY = [[1, 3, 4], [2, 2, 0], [1, 0, 3], [0, 4, 2]]
S_TOY = [[3, 1, 0], [2, 2, 4], [3, 4, 1], [4, 0, 2]]
TSTAR_TOY = [[0, 1, 2], [1.5, 1.5, 0], [1, 0, 2], [0, 2, 1]]
SSTAR_TOY = [[2, 1, 0], [0.5, 0.5, 2], [1, 2, 0], [2, 0, 1]]
# T* - S* of the rows above; respondent 4 (1, 5, 3) dominates as (-2, 2, 0)
E_TOY = [[-2, 0, 2], [1, 1, -2], [0, -2, 2], [-2, 2, 0]]
RSCD_TOY = [[2, 5, 7, 1, 3, 4, 6], [4.5, 4.5, 1, 2, 3, 6, 7], [3, 1, 6, 2, 4, 5, 7], [1, 7, 4, 2, 3, 5, 6]]


def test_rating_matrix_validation():
    with pytest.raises(RatingOutOfRange) as info:
        RatingMatrix(np.array([[1, 2], [3, 6]]), 5)
    assert (info.value.row, info.value.col, info.value.value) == (1, 1, 6)
    with pytest.raises(InvalidInput):
        RatingMatrix(np.array([[1, 2]]), 5)
    with pytest.raises(InvalidInput):
        RatingMatrix(np.array([[1], [2]]), 5)
    with pytest.raises(InvalidInput):
        RatingMatrix(np.array([[1, 1], [1, 1]]), 1)
    with pytest.raises(InvalidInput):
        RatingMatrix(np.array([[1, 1.5], [1, 1]]), 3)


def test_shift_counts(toy, crimes):
    t = recode.shift_counts(toy)
    assert t.kind is Kind.SHIFTED_COUNTS
    np.testing.assert_array_equal(t.data, T_TOY)
    ones = RatingMatrix(np.ones((2, 2), dtype=int), 3)
    np.testing.assert_array_equal(recode.shift_counts(ones).data, np.zeros((2, 2)))
    np.testing.assert_array_equal(recode.shift_counts(crimes).data[0], [3, 1, 1, 1, 3, 2, 2, 0])


def test_reverse_counts(toy):
    t = recode.shift_counts(toy)
    s = recode.reverse_counts(t)
    assert s.kind is Kind.REVERSED_COUNTS
    np.testing.assert_array_equal(s.data, S_TOY)
    back = recode.reverse_counts(s)
    np.testing.assert_array_equal(back.data, t.data)
    zeros = recode.shift_counts(RatingMatrix(np.ones((2, 2), dtype=int), 3))
    np.testing.assert_array_equal(recode.reverse_counts(zeros).data, np.full((2, 2), 2.0))


def test_double_columns(toy, crimes7):
    t = recode.shift_counts(toy)
    f = recode.double_columns(t, recode.reverse_counts(t))
    np.testing.assert_array_equal(f.data, np.hstack([T_TOY, S_TOY]))
    assert f.col_labels == ("obj_1+", "obj_2+", "obj_3+", "obj_1-", "obj_2-", "obj_3-")

    lowest = recode.shift_counts(RatingMatrix(np.ones((3, 2), dtype=int), 2))
    f2 = recode.double_columns(lowest, recode.reverse_counts(lowest)).data
    np.testing.assert_array_equal(f2[:, :2], 0)
    np.testing.assert_array_equal(f2[:, 2:], 1)

    tc = recode.shift_counts(crimes7)
    fc = recode.double_columns(tc, recode.reverse_counts(tc))
    assert fc.shape == (17, 14)
    # Arson ratings sum to 64 over 17 respondents
    assert fc.data[:, fc.col_labels.index("Arson+")].sum() == 64 - 17


def test_double_columns_rejects_mismatch(toy, crimes):
    t = recode.shift_counts(toy)
    other = recode.reverse_counts(recode.shift_counts(crimes))
    with pytest.raises(MismatchedRecodings):
        recode.double_columns(t, other)
    with pytest.raises(MismatchedRecodings):
        recode.double_columns(t, t)


def test_double_rows(toy):
    tstar, sstar = recode.rank_rows(toy)
    f = recode.double_rows(tstar, sstar)
    np.testing.assert_array_equal(f.data, np.vstack([TSTAR_TOY, SSTAR_TOY]))
    assert f.row_labels[:4] == ("ind_1+", "ind_2+", "ind_3+", "ind_4+")
    assert f.row_labels[4:] == ("ind_1-", "ind_2-", "ind_3-", "ind_4-")

    t = recode.shift_counts(toy)
    f3 = recode.double_rows(t, recode.reverse_counts(t))
    np.testing.assert_array_equal(f3.data, np.vstack([T_TOY, S_TOY]))
    np.testing.assert_array_equal(f3.data.sum(axis=0), [toy.n * (toy.q - 1)] * 3)


def test_double_rows_rejects_wrong_pairs(toy):
    tstar, sstar = recode.rank_rows(toy)
    t = recode.shift_counts(toy)
    with pytest.raises(MismatchedRecodings):
        recode.double_rows(tstar, recode.reverse_counts(t))
    with pytest.raises(MismatchedRecodings):
        recode.double_rows(sstar, tstar)


def test_rank_rows(toy):
    tstar, sstar = recode.rank_rows(toy)
    np.testing.assert_array_equal(tstar.data, TSTAR_TOY)
    np.testing.assert_array_equal(sstar.data, SSTAR_TOY)
    flat = RatingMatrix(np.array([[4, 4, 4], [1, 2, 3]]), 5)
    np.testing.assert_array_equal(recode.rank_rows(flat)[0].data[0], [1, 1, 1])


def test_dominance(toy):
    tstar, sstar = recode.rank_rows(toy)
    e = recode.dominance(tstar, sstar)
    np.testing.assert_array_equal(e.data, E_TOY)
    np.testing.assert_array_equal(e.data, 2 * tstar.data - (toy.p - 1))
    flat = RatingMatrix(np.array([[4, 4, 4], [1, 2, 3]]), 5)
    np.testing.assert_array_equal(recode.dominance(*recode.rank_rows(flat)).data[0], 0)
    with pytest.raises(MismatchedRecodings):
        recode.dominance(sstar, tstar)


def test_successive_categories(toy):
    scd = recode.successive_categories(toy)
    np.testing.assert_array_equal(scd.data, RSCD_TOY)
    assert scd.col_labels[3:] == ("b1.5", "b2.5", "b3.5", "b4.5")


def test_scd_to_rank_pair(toy):
    tstar, sstar = recode.scd_to_rank_pair(recode.successive_categories(toy))
    np.testing.assert_array_equal(tstar.data[0], [1, 4, 6, 0, 2, 3, 5])
    np.testing.assert_array_equal(tstar.data.sum(axis=1), [21] * 4)
    # (m-1) - (R_SCD - 1) by hand for row 2: 6 - (3.5, 3.5, 0, 1, 2, 5, 6)
    np.testing.assert_array_equal(sstar.data[1], [2.5, 2.5, 6, 5, 4, 1, 0])
    f = recode.double_rows(tstar, sstar)
    assert f.shape == (8, 7)


def test_reverse_scale(toy, crimes):
    rev = recode.reverse_scale(toy)
    np.testing.assert_array_equal(rev.ratings[0], [4, 2, 1])
    assert recode.reverse_scale(rev) == toy
    np.testing.assert_array_equal(recode.reverse_scale(crimes).ratings[0], [1, 3, 3, 3, 1, 2, 2, 4])


@settings(max_examples=200, deadline=None)
@given(rating_matrices())
def test_recode_properties(r):
    n, p, q = r.n, r.p, r.q
    t = recode.shift_counts(r)
    s = recode.reverse_counts(t)
    np.testing.assert_array_equal(recode.shift_counts(recode.reverse_scale(r)).data, s.data)

    tstar, sstar = recode.rank_rows(r)
    np.testing.assert_array_equal(tstar.data.sum(axis=1), np.full(n, p * (p - 1) / 2))
    e = recode.dominance(tstar, sstar)
    np.testing.assert_array_equal(e.data.sum(axis=1), 0)

    fc = recode.double_columns(t, s).data
    np.testing.assert_array_equal(fc[:, :p] + fc[:, p:], q - 1)

    fr = recode.double_rows(t, s).data
    np.testing.assert_array_equal(fr[:n] + fr[n:], q - 1)

    scd = recode.successive_categories(r).data
    m = p + q - 1
    assert scd.shape == (n, m)
    assert np.all(np.diff(scd[:, p:], axis=1) > 0)
    for row, ratings in zip(scd, r.ratings):
        # sorted ranks equal the midranks of 1..m under the row's tie pattern
        values = np.concatenate([ratings, np.arange(1, q) + 0.5])
        order = np.argsort(values, kind="stable")
        expect = np.empty(m)
        sv = values[order]
        i = 0
        while i < m:
            j = i
            while j + 1 < m and sv[j + 1] == sv[i]:
                j += 1
            expect[i:j + 1] = (i + j) / 2 + 1
            i = j + 1
        np.testing.assert_array_equal(np.sort(row), expect)
