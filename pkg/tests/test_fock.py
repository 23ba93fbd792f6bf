import math

import numpy as np
import pytest
import scipy.special

import gaussian_qi as gqi
from gaussian_qi import NumericalError, fock


def test_destroy_ladder_structure():
    a = fock.destroy(5)
    assert a[0, 1] == pytest.approx(1.0)
    assert a[2, 3] == pytest.approx(math.sqrt(3.0))
    # canonical commutator holds away from the truncation corner
    comm = a @ a.conj().T - a.conj().T @ a
    assert np.allclose(np.diag(comm)[:-1], 1.0)


def test_quadrature_ops_hermitian():
    q, p = fock.quadrature_ops(12)
    assert np.allclose(q, q.conj().T)
    assert np.allclose(p, p.conj().T)
    # [q, p] = 2i away from the truncation corner
    comm = q @ p - p @ q
    assert np.allclose(np.diag(comm)[:-1], 2j)


def test_coherent_ket_poisson_statistics():
    alpha = 0.8
    ket = fock.coherent_ket(alpha, cutoff=30)
    probs = np.abs(ket) ** 2
    n = np.arange(30)
    log_expected = -alpha**2 + 2 * n * math.log(alpha) - scipy.special.gammaln(n + 1)
    assert np.allclose(probs, np.exp(log_expected), atol=1e-12)


def test_coherent_ket_norm_guard():
    with pytest.raises(NumericalError):
        fock.coherent_ket(6.0, cutoff=12)


def test_moments_of_gaussian_kets_and_dms():
    cases = [
        (fock.dm(fock.coherent_ket(0.7 + 0.3j)), gqi.coherent_state(0.7 + 0.3j)),
        (fock.dm(fock.squeezed_vacuum_ket(0.6)), gqi.squeezed_vacuum_state(0.6)),
        (fock.thermal_dm(0.8), gqi.thermal_state(0.8)),
    ]
    for rho, state in cases:
        mean, cov = fock.moments(rho)
        assert np.max(np.abs(mean - state.mean)) < 1e-8
        assert np.max(np.abs(cov - state.cov)) < 1e-7


def test_epr_ket_moments():
    r = 0.5
    rho = fock.dm(fock.epr_ket(r, cutoff=24))
    mean, cov = fock.moments(rho, num_modes=2)
    assert np.max(np.abs(cov - gqi.epr_state(r).cov)) < 1e-6
    assert np.max(np.abs(mean)) < 1e-10


def test_one_mode_gaussian_dm_composite():
    rho = fock.one_mode_gaussian_dm(nbar=0.4, r=0.3, theta=0.5, alpha=0.4 - 0.1j)
    state = gqi.apply_symplectic(
        gqi.thermal_state(0.4),
        gqi.rotation(0.5) @ gqi.squeezer(0.3) @ gqi.rotation(-0.5),
    )
    state = gqi.displace(state, gqi.coherent_state(0.4 - 0.1j).mean)
    mean, cov = fock.moments(rho)
    assert np.max(np.abs(mean - state.mean)) < 1e-7
    assert np.max(np.abs(cov - state.cov)) < 1e-6


def test_displacement_and_squeeze_ops_unitary():
    d = fock.displacement_op(0.4 + 0.2j, cutoff=40)
    s = fock.squeeze_op(0.5, cutoff=40)
    for u in (d, s):
        block = u.conj().T @ u
        assert np.allclose(np.diag(block)[:20], 1.0, atol=1e-8)


def test_fidelity_against_gaussian_formula():
    pairs = [
        (gqi.coherent_state(0.4), gqi.coherent_state(-0.2 + 0.3j)),
        (gqi.squeezed_vacuum_state(0.5), gqi.coherent_state(0.3)),
        (gqi.thermal_state(0.6), gqi.squeezed_vacuum_state(-0.4)),
    ]
    builders = [
        fock.one_mode_gaussian_dm(alpha=0.4),
        fock.one_mode_gaussian_dm(alpha=-0.2 + 0.3j),
        fock.one_mode_gaussian_dm(r=0.5),
        fock.one_mode_gaussian_dm(alpha=0.3),
        fock.one_mode_gaussian_dm(nbar=0.6),
        fock.one_mode_gaussian_dm(r=-0.4),
    ]
    rhos = [(builders[0], builders[1]), (builders[2], builders[3]), (builders[4], builders[5])]
    for (s0, s1), (r0, r1) in zip(pairs, rhos):
        assert fock.fidelity(r0, r1) == pytest.approx(gqi.fidelity_gaussian(s0, s1), abs=1e-7)


def test_trace_distance_and_helstrom():
    rho0 = fock.one_mode_gaussian_dm(alpha=0.5)
    rho1 = fock.one_mode_gaussian_dm(alpha=-0.5)
    t = fock.trace_distance(rho0, rho1)
    assert 0.0 < t < 1.0
    # Helstrom error from the trace distance, and the coherent closed form
    assert fock.helstrom_error(rho0, rho1) == pytest.approx(0.5 * (1.0 - t), abs=1e-12)
    assert fock.helstrom_error(rho0, rho1) == pytest.approx(
        gqi.helstrom_two_coherent(0.5, -0.5), abs=1e-8)


def test_overlap_cs_interpolates():
    rho0 = fock.one_mode_gaussian_dm(nbar=0.3)
    rho1 = fock.one_mode_gaussian_dm(r=0.4)
    half = fock.overlap_cs(rho0, rho1, 0.5)
    assert 0.0 < half <= 1.0
    # symmetric at s = 1/2
    assert half == pytest.approx(fock.overlap_cs(rho1, rho0, 0.5), abs=1e-10)
    # matches the phase-space formula
    assert half == pytest.approx(
        gqi.qcb_coefficient(gqi.thermal_state(0.3), gqi.squeezed_vacuum_state(0.4), 0.5),
        abs=1e-7)


def test_identical_dm_metrics():
    rho = fock.one_mode_gaussian_dm(nbar=0.5, alpha=0.2)
    assert fock.fidelity(rho, rho) == pytest.approx(1.0, abs=1e-10)
    assert fock.trace_distance(rho, rho) == pytest.approx(0.0, abs=1e-10)
