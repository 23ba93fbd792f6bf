import json
import math

import numpy as np
import pytest

import gaussian_qi as gqi
from gaussian_qi import ValidationError

from conftest import random_cov, random_state, random_symplectic


def test_vacuum_is_identity_cov():
    st = gqi.vacuum_state(3)
    assert st.num_modes == 3
    assert np.array_equal(st.mean, np.zeros(6))
    assert np.array_equal(st.cov, np.eye(6))


def test_thermal_state_moments():
    st = gqi.thermal_state(0.75)
    assert np.allclose(st.cov, 2.5 * np.eye(2))
    multi = gqi.thermal_state([0.0, 1.0])
    assert np.allclose(multi.cov, np.diag([1.0, 1.0, 3.0, 3.0]))


def test_coherent_state_mean_convention():
    st = gqi.coherent_state(1.0 + 0.5j)
    assert np.allclose(st.mean, [2.0, 1.0])
    assert np.array_equal(st.cov, np.eye(2))


def test_squeezed_vacuum_variances():
    r = 0.8
    st = gqi.squeezed_vacuum_state(r)
    assert np.isclose(st.cov[0, 0], math.exp(-2 * r))
    assert np.isclose(st.cov[1, 1], math.exp(2 * r))
    rotated = gqi.squeezed_vacuum_state(r, theta=np.pi / 2)
    assert np.isclose(rotated.cov[0, 0], math.exp(2 * r))


def test_epr_state_blocks():
    r = 0.6
    st = gqi.epr_state(r)
    nu = math.cosh(2 * r)
    z = math.sinh(2 * r) * np.diag([1.0, -1.0])
    assert np.allclose(st.cov[:2, :2], nu * np.eye(2))
    assert np.allclose(st.cov[2:, 2:], nu * np.eye(2))
    assert np.allclose(st.cov[:2, 2:], z)


def test_epr_partial_trace_is_thermal():
    r = 1.1
    reduced = gqi.partial_trace(gqi.epr_state(r), [0])
    expected = gqi.thermal_state(math.sinh(r) ** 2)
    assert np.allclose(reduced.cov, expected.cov)
    assert np.allclose(reduced.mean, expected.mean)


def test_make_state_dispatch():
    assert np.allclose(gqi.make_state("coherent", alpha=1j).mean, [0.0, 2.0])
    assert gqi.make_state("vacuum", num_modes=2).num_modes == 2
    with pytest.raises(ValidationError):
        gqi.make_state("cat")


def test_symplectic_form_squares_to_minus_identity():
    omega = gqi.symplectic_form(3)
    assert np.array_equal(omega @ omega, -np.eye(6))


def test_validate_state_accepts_random_valid(rng):
    for _ in range(20):
        n = rng.integers(1, 4)
        report = gqi.validate_state(gqi.GaussianState(np.zeros(2 * n), random_cov(n, rng)))
        assert report["symmetric_ok"] and report["uncertainty_ok"]
        assert report["min_symplectic_eigenvalue"] >= 1.0 - 1e-9


def test_validate_state_flags_uncertainty_violation():
    bad = gqi.GaussianState(np.zeros(2), 0.5 * np.eye(2))
    report = gqi.validate_state(bad)
    assert not report["uncertainty_ok"]
    assert report["min_symplectic_eigenvalue"] < 1.0


def test_state_rejects_malformed_cov():
    with pytest.raises(ValidationError):
        gqi.GaussianState(np.zeros(2), np.eye(3))
    with pytest.raises(ValidationError):
        gqi.GaussianState(np.zeros(4), np.eye(2))


def test_symplectic_eigenvalues_thermal():
    cov = np.diag([3.0, 3.0, 1.0, 1.0])
    assert np.allclose(sorted(gqi.symplectic_eigenvalues(cov)), [1.0, 3.0])


def test_williamson_random(rng):
    for _ in range(30):
        n = int(rng.integers(1, 5))
        cov = random_cov(n, rng)
        w = gqi.williamson(cov)
        d = np.kron(np.diag(w.spectrum), np.eye(2))
        assert np.max(np.abs(w.symplectic @ d @ w.symplectic.T - cov)) < 1e-9
        assert gqi.is_symplectic(w.symplectic)
        assert np.allclose(np.sort(w.spectrum), np.sort(gqi.symplectic_eigenvalues(cov)))


def test_euler_random(rng):
    for _ in range(30):
        n = int(rng.integers(1, 5))
        s = random_symplectic(n, rng)
        e = gqi.euler(s)
        mid = gqi.compose(*[gqi.embed(gqi.squeezer(r), [k], n)
                            for k, r in enumerate(e.squeezings)])
        assert np.max(np.abs(e.passive_left @ mid @ e.passive_right - s)) < 1e-9
        for passive in (e.passive_left, e.passive_right):
            assert gqi.is_symplectic(passive)
            assert np.allclose(passive @ passive.T, np.eye(2 * n), atol=1e-9)
        assert np.all(e.squeezings >= 0.0)


def test_purify_doubles_modes_and_restores(rng):
    st = random_state(2, rng)
    pure = gqi.purify(st)
    assert pure.num_modes == 4
    assert gqi.is_pure(pure)
    back = gqi.partial_trace(pure, [0, 1])
    assert np.allclose(back.cov, st.cov, atol=1e-9)
    assert np.allclose(back.mean, st.mean)


def test_tensor_and_permute(rng):
    a = random_state(1, rng)
    b = random_state(2, rng)
    joint = gqi.tensor(a, b)
    assert joint.num_modes == 3
    swapped = gqi.permute_modes(joint, [1, 2, 0])
    assert np.allclose(gqi.partial_trace(swapped, [2]).cov, a.cov)
    assert np.allclose(gqi.partial_trace(swapped, [0, 1]).cov, b.cov)


def test_partial_trace_keeps_order():
    joint = gqi.tensor(gqi.coherent_state(1.0), gqi.coherent_state(2.0), gqi.coherent_state(3.0))
    kept = gqi.partial_trace(joint, [2, 0])
    assert np.allclose(kept.mean, [6.0, 0.0, 2.0, 0.0])


def test_entropy_vacuum_zero_and_thermal_value():
    assert gqi.von_neumann_entropy(gqi.vacuum_state(2)) == 0.0
    nbar = 1.0
    expected = (nbar + 1) * math.log2(nbar + 1) - nbar * math.log2(nbar)
    assert np.isclose(gqi.von_neumann_entropy(gqi.thermal_state(nbar)), expected)


def test_entropy_base_ratio():
    st = gqi.thermal_state(0.7)
    bits = gqi.von_neumann_entropy(st, base=2)
    nats = gqi.von_neumann_entropy(st, base=math.e)
    assert np.isclose(nats, bits * math.log(2.0))


def test_g_function_edges():
    assert gqi.g_function(1.0) == 0.0
    x = 5.0
    n = (x - 1) / 2
    assert np.isclose(gqi.g_function(x), (n + 1) * math.log2(n + 1) - n * math.log2(n))


def test_entropy_invariant_under_symplectic(rng):
    st = random_state(2, rng)
    s = random_symplectic(2, rng)
    rotated = gqi.apply_symplectic(st, s)
    assert np.isclose(gqi.von_neumann_entropy(st), gqi.von_neumann_entropy(rotated), atol=1e-9)


def test_wigner_normalization_peak():
    st = gqi.coherent_state(0.5 + 0.25j)
    peak = gqi.wigner_at(st, st.mean)
    assert np.isclose(peak, 1.0 / (2.0 * np.pi))
    away = gqi.wigner_at(st, st.mean + [2.0, 0.0])
    assert away < peak


def test_char_fn_at_origin_is_one(rng):
    st = random_state(2, rng)
    assert np.isclose(gqi.char_fn_at(st, np.zeros(4)), 1.0)


def test_serialization_round_trip(rng):
    st = random_state(2, rng)
    again = gqi.state_from_json(gqi.state_to_json(st))
    assert np.array_equal(again.mean, st.mean)
    assert np.array_equal(again.cov, st.cov)
    payload = json.loads(gqi.state_to_json(st))
    assert payload["hbar"] == 2.0


def test_state_from_dict_rejects_wrong_hbar():
    with pytest.raises(ValidationError):
        gqi.state_from_dict({"hbar": 1.0, "mean": [0.0, 0.0], "cov": [[1.0, 0.0], [0.0, 1.0]]})


def test_mode_indices():
    st = gqi.vacuum_state(3)
    assert list(st.mode_indices([1])) == [2, 3]
    assert list(st.mode_indices([0, 2])) == [0, 1, 4, 5]
