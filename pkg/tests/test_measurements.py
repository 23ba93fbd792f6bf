import math

import numpy as np
import pytest

import gaussian_qi as gqi
from gaussian_qi import ValidationError

from conftest import random_state


def _condition_by_hand(state, mode, outcome, pick):
    """Schur-complement update in the q (pick=0) or p (pick=1) quadrature,
    with the singular direction projected out by a pseudoinverse."""
    n = state.num_modes
    idx = [2 * mode, 2 * mode + 1]
    keep = [i for i in range(2 * n) if i not in idx]
    a = state.cov[np.ix_(keep, keep)]
    c = state.cov[np.ix_(keep, idx)]
    b = state.cov[np.ix_(idx, idx)]
    pi = np.zeros((2, 2))
    pi[pick, pick] = 1.0
    inv = np.linalg.pinv(pi @ b @ pi)
    cov = a - c @ inv @ c.T
    gain = c @ inv
    delta = np.zeros(2)
    delta[pick] = outcome - state.mean[idx[pick]]
    mean = state.mean[keep] + gain @ delta
    return mean, cov


def test_homodyne_matches_schur_complement(rng):
    for _ in range(10):
        st = random_state(3, rng)
        mode = int(rng.integers(0, 3))
        outcome = float(rng.normal())
        out = gqi.homodyne(st, mode, outcome)
        mean, cov = _condition_by_hand(st, mode, outcome, pick=0)
        assert np.allclose(out.cov, cov, atol=1e-10)
        assert np.allclose(out.mean, mean, atol=1e-10)


def test_homodyne_p_quadrature_angle(rng):
    st = random_state(2, rng)
    out = gqi.homodyne(st, 1, 0.25, angle=np.pi / 2)
    mean, cov = _condition_by_hand(st, 1, 0.25, pick=1)
    assert np.allclose(out.cov, cov, atol=1e-10)
    assert np.allclose(out.mean, mean, atol=1e-10)


def test_homodyne_removes_mode_and_epr_steering():
    r = 1.0
    out = gqi.homodyne(gqi.epr_state(r), 0, 1.5)
    assert out.num_modes == 1
    # conditional variance of the kept q is 1/cosh(2r); its mean follows the
    # outcome with gain tanh(2r)
    nu = math.cosh(2 * r)
    assert np.isclose(out.cov[0, 0], 1.0 / nu)
    assert np.isclose(out.mean[0], math.tanh(2 * r) * 1.5)


def test_heterodyne_adds_vacuum_unit():
    r = 0.9
    nu = math.cosh(2 * r)
    out = gqi.heterodyne(gqi.epr_state(r), 0, 0j)
    z2 = math.sinh(2 * r) ** 2
    expected = nu - z2 / (nu + 1.0)
    assert np.allclose(out.cov, expected * np.eye(2), atol=1e-10)


def test_heterodyne_on_product_leaves_partner_alone(rng):
    partner = random_state(1, rng)
    joint = gqi.tensor(gqi.coherent_state(0.7 - 0.2j), partner)
    out = gqi.heterodyne(joint, 0, 0.3 + 0.1j)
    assert np.allclose(out.cov, partner.cov)
    assert np.allclose(out.mean, partner.mean)


def test_homodyne_distribution_moments():
    r = 0.8
    mean, var = gqi.homodyne_distribution(gqi.epr_state(r), 0)
    assert mean == 0.0
    assert np.isclose(var, math.cosh(2 * r))
    st = gqi.coherent_state(1.0 + 2.0j)
    mean_q, var_q = gqi.homodyne_distribution(st, 0)
    mean_p, var_p = gqi.homodyne_distribution(st, 0, angle=np.pi / 2)
    assert np.isclose(mean_q, 2.0) and np.isclose(var_q, 1.0)
    assert np.isclose(mean_p, 4.0) and np.isclose(var_p, 1.0)


def test_homodyne_distribution_angle_tracks_squeezing():
    r = 0.7
    st = gqi.squeezed_vacuum_state(r, theta=0.6)
    _, var = gqi.homodyne_distribution(st, 0, angle=0.6)
    assert np.isclose(var, math.exp(-2 * r))
    _, var_anti = gqi.homodyne_distribution(st, 0, angle=0.6 + np.pi / 2)
    assert np.isclose(var_anti, math.exp(2 * r))


def test_sample_homodyne_moments(rng):
    st = gqi.squeezed_vacuum_state(0.5)
    draws = gqi.sample_homodyne(st, 0, shots=40000, rng=rng)
    assert draws.shape == (40000,)
    var = math.exp(-1.0)
    assert abs(np.mean(draws)) < 5.0 * math.sqrt(var / 40000)
    assert abs(np.var(draws) - var) < 5.0 * var * math.sqrt(2.0 / 40000)


def test_sample_heterodyne_moments(rng):
    st = gqi.coherent_state(1.0)
    draws = gqi.sample_heterodyne(st, 0, shots=40000, rng=rng)
    assert draws.shape == (40000, 2)
    # heterodyne outcomes carry the state variance plus one unit of vacuum
    assert abs(np.mean(draws[:, 0]) - 2.0) < 5.0 * math.sqrt(2.0 / 40000)
    assert abs(np.var(draws[:, 0]) - 2.0) < 5.0 * 2.0 * math.sqrt(2.0 / 40000)


def test_sampling_is_seeded():
    st = gqi.epr_state(0.5)
    a = gqi.sample_homodyne(st, 0, shots=5, rng=np.random.default_rng(11))
    b = gqi.sample_homodyne(st, 0, shots=5, rng=np.random.default_rng(11))
    assert np.array_equal(a, b)


def test_law_of_total_covariance_homodyne(rng):
    # E[cov_cond] + cov(E[mean_cond]) reproduces the unconditioned marginal
    st = gqi.epr_state(0.8)
    outcomes = gqi.sample_homodyne(st, 0, shots=20000, rng=rng)
    conditional_means = np.array([gqi.homodyne(st, 0, float(u)).mean for u in outcomes[:200]])
    cond_cov = gqi.homodyne(st, 0, 0.0).cov
    explained = np.cov(conditional_means.T, bias=False)
    marginal = gqi.partial_trace(st, [1]).cov
    assert np.allclose(cond_cov + explained, marginal, atol=0.4)


def test_measurement_rejects_out_of_range_mode():
    with pytest.raises(ValidationError):
        gqi.homodyne(gqi.vacuum_state(1), 1, 0.0)
    with pytest.raises(ValidationError):
        gqi.heterodyne(gqi.vacuum_state(1), -1, 0j)
