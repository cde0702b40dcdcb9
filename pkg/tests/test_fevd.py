import numpy as np
import pytest
from hypothesis import given, strategies as st

from brui.econ.fevd import fevd
from brui.econ.irf import NotPositiveDefiniteError, cholesky_factor
from brui.econ.var import VarModel

from models import random_stable_model
from oracles import fevd_extended, fevd_simulated


def bivariate():
    A = np.array([[[0.5, 0.2], [-0.1, 0.4]]])
    sigma = np.array([[1.0, 0.3], [0.3, 0.5]])
    return VarModel(1, np.zeros(2), A, sigma, np.zeros((10, 2)), 10, ["a", "b"])


@given(st.integers(0, 2**32 - 1), st.integers(1, 6), st.integers(1, 3), st.integers(1, 12))
def test_rows_sum_to_100_and_first_period_is_pure(seed, k, p, H):
    model = random_stable_model(np.random.default_rng(seed), k, p)
    table = fevd(model, H)
    assert table.shares.shape == (H, k, k)
    np.testing.assert_allclose(table.shares.sum(axis=2), 100.0, atol=1e-6)
    assert table.shares[0, 0, 0] == 100.0
    assert np.all(table.shares[0, 0, 1:] == 0.0)
    assert np.all(table.shares >= 0)


def test_diagonal_sigma_without_dynamics_keeps_own_shares():
    model = VarModel(2, np.zeros(3), np.zeros((2, 3, 3)), np.diag([1.0, 4.0, 0.25]),
                     np.zeros((10, 3)), 10, ["x", "y", "z"])
    shares = fevd(model, 8).shares
    for h in range(8):
        np.testing.assert_array_equal(shares[h], 100 * np.eye(3))


def test_matches_extended_precision_oracle():
    model = bivariate()
    expected = fevd_extended(model.coefs, model.sigma, 5)
    np.testing.assert_allclose(fevd(model, 5).shares, expected, rtol=0, atol=1e-10)


@given(st.integers(0, 2**32 - 1), st.integers(1, 4), st.integers(1, 3))
def test_random_models_match_extended_precision_oracle(seed, k, p):
    model = random_stable_model(np.random.default_rng(seed), k, p)
    expected = fevd_extended(model.coefs, model.sigma, 6, dps=30)
    np.testing.assert_allclose(fevd(model, 6).shares, expected, rtol=0, atol=1e-8)


def test_matches_simulated_forecast_errors():
    model = bivariate()
    sim = fevd_simulated(model.coefs, cholesky_factor(model.sigma), 6, 50_000, np.random.default_rng(0))
    assert np.abs(fevd(model, 6).shares - sim).max() < 1.0


def test_ordering_changes_shares_but_not_the_first_period_rule():
    model = bivariate()
    swapped = VarModel(1, np.zeros(2), model.coefs[:, ::-1, ::-1].copy(), model.sigma[::-1, ::-1].copy(),
                       np.zeros((10, 2)), 10, ["b", "a"])
    orig, perm = fevd(model, 4).shares, fevd(swapped, 4).shares
    assert perm[0, 0, 0] == 100.0
    # "a" explains all of its own period-1 variance only when ordered first
    assert orig[0, 0, 0] == 100.0 and perm[0, 1, 1] < 100.0


def test_for_response_and_horizons():
    table = fevd(bivariate(), 3)
    np.testing.assert_array_equal(table.horizons, [1, 2, 3])
    np.testing.assert_array_equal(table.for_response("b"), table.shares[:, 1, :])


def test_singular_covariance_and_bad_horizon_raise():
    model = bivariate()
    model.sigma = np.zeros((2, 2))
    with pytest.raises(NotPositiveDefiniteError):
        fevd(model, 3)
    with pytest.raises(ValueError):
        fevd(bivariate(), 0)

