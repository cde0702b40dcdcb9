import numpy as np
import pandas as pd
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from brui.econ.correlation import CorrelationError, align, compare, pearson_correlation
from brui.synthetic import month_range

finite = st.floats(-1e6, 1e6, allow_nan=False)


def nonconstant(x):
    return np.ptp(x) > 1e-6 * max(1.0, np.abs(x).max())


@given(arrays(float, st.integers(2, 60), elements=finite).filter(nonconstant))
def test_self_and_affine_negation(x):
    assert abs(pearson_correlation(x, x) - 1.0) <= 1e-12
    assert abs(pearson_correlation(x, -x) + 1.0) <= 1e-12
    assert abs(pearson_correlation(x, -2 * x + 7) + 1.0) <= 1e-9


@given(arrays(float, 20, elements=finite), arrays(float, 20, elements=finite))
def test_bounded_and_symmetric(x, y):
    if not (nonconstant(x) and nonconstant(y)):
        return
    r = pearson_correlation(x, y)
    assert -1.0 <= r <= 1.0
    assert r == pytest.approx(pearson_correlation(y, x), abs=1e-12)
    assert r == pytest.approx(np.corrcoef(x, y)[0, 1], abs=1e-9)


def test_overlap_of_offset_ranges():
    rng = np.random.default_rng(0)
    long = pd.Series(rng.standard_normal(153), index=month_range("2012-05", "2025-01"))
    short = pd.Series(rng.standard_normal(120), index=month_range("2013-01", "2022-12"))
    res = compare(long, short)
    assert (res.start, res.end, res.n) == ("2013-01", "2022-12", 120)
    expected = np.corrcoef(long.loc["2013-01":"2022-12"], short)[0, 1]
    assert res.r == pytest.approx(expected, abs=1e-12)
    assert pearson_correlation(long, short) == res.r


def test_alignment_ignores_input_order():
    a = pd.Series([1.0, 2.0, 4.0], index=["2020-03", "2020-01", "2020-02"])
    b = pd.Series([3.0, 1.0, 2.0, 9.0], index=["2020-02", "2020-01", "2020-03", "2020-04"])
    xa, xb = align(a, b)
    assert list(xa.index) == ["2020-01", "2020-02", "2020-03"]
    assert list(xa) == [2.0, 4.0, 1.0] and list(xb) == [1.0, 3.0, 2.0]


def test_errors():
    with pytest.raises(CorrelationError, match="constant"):
        pearson_correlation([1.0, 1.0, 1.0], [1.0, 2.0, 3.0])
    with pytest.raises(CorrelationError, match="no months"):
        compare(pd.Series([1.0, 2.0], index=["2020-01", "2020-02"]),
                pd.Series([1.0, 2.0], index=["2021-01", "2021-02"]))
    with pytest.raises(CorrelationError, match="at least 2"):
        pearson_correlation([1.0], [2.0])
    with pytest.raises(CorrelationError, match="differ"):
        pearson_correlation([1.0, 2.0], [1.0, 2.0, 3.0])
