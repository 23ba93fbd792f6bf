import math

import numpy as np
import pytest

import gaussian_qi as gqi
from gaussian_qi import ValidationError

from conftest import random_state, random_symplectic


@pytest.mark.parametrize("gate", [
    gqi.rotation(0.3),
    gqi.squeezer(-0.7),
    gqi.two_mode_squeezer(0.5),
    gqi.beam_splitter(0.3),
    gqi.beam_splitter(0.3, complementary=True),
    gqi.identity(3),
])
def test_gates_are_symplectic(gate):
    assert gqi.is_symplectic(gate)


def test_rotation_angle_addition():
    assert np.allclose(gqi.rotation(0.3) @ gqi.rotation(0.5), gqi.rotation(0.8))
    assert np.allclose(gqi.rotation(2 * np.pi), np.eye(2))


def test_squeezer_on_vacuum_matches_factory():
    out = gqi.apply_symplectic(gqi.vacuum_state(1), gqi.squeezer(0.9))
    assert np.allclose(out.cov, gqi.squeezed_vacuum_state(0.9).cov)


def test_two_mode_squeezer_makes_epr():
    out = gqi.apply_symplectic(gqi.vacuum_state(2), gqi.two_mode_squeezer(0.8))
    assert np.allclose(out.cov, gqi.epr_state(0.8).cov, atol=1e-12)


def test_beam_splitter_mixes_means():
    st = gqi.tensor(gqi.coherent_state(1.0), gqi.vacuum_state(1))
    tau = 0.36
    out = gqi.apply_symplectic(st, gqi.beam_splitter(tau))
    assert np.isclose(out.mean[0], math.sqrt(tau) * 2.0)
    # photon number is conserved across the two output ports
    assert np.isclose(np.dot(out.mean, out.mean), np.dot(st.mean, st.mean))


def test_beam_splitter_complementary_swaps_roles():
    st = gqi.tensor(gqi.coherent_state(1.0), gqi.vacuum_state(1))
    out = gqi.apply_symplectic(st, gqi.beam_splitter(0.36, complementary=True))
    assert np.isclose(abs(out.mean[2]), math.sqrt(0.36) * 2.0)


def test_embed_matches_full_apply(rng):
    st = random_state(3, rng)
    gate = gqi.two_mode_squeezer(0.4)
    via_embed = gqi.apply_symplectic(st, gqi.embed(gate, [2, 0], 3))
    via_modes = gqi.apply_symplectic(st, gate, modes=[2, 0])
    assert np.allclose(via_embed.cov, via_modes.cov, atol=1e-12)
    assert np.allclose(via_embed.mean, via_modes.mean, atol=1e-12)


def test_compose_is_circuit_order():
    # compose(A, B) applies A first, so the matrix product is B @ A
    s = gqi.compose(gqi.squeezer(0.3), gqi.rotation(0.7))
    assert np.allclose(s, gqi.rotation(0.7) @ gqi.squeezer(0.3))


def test_displace_shifts_mean_only(rng):
    st = random_state(2, rng)
    shifted = gqi.displace(st, [1.0, -2.0, 0.5, 0.0])
    assert np.allclose(shifted.mean, st.mean + [1.0, -2.0, 0.5, 0.0])
    assert np.array_equal(shifted.cov, st.cov)


def test_apply_symplectic_rejects_bad_matrix(rng):
    st = random_state(1, rng)
    with pytest.raises(ValidationError):
        gqi.apply_symplectic(st, 2.0 * np.eye(2))


def test_apply_symplectic_displacement_argument(rng):
    st = random_state(1, rng)
    out = gqi.apply_symplectic(st, gqi.rotation(0.2), d=[0.3, 0.4])
    assert np.allclose(out.mean, gqi.rotation(0.2) @ st.mean + [0.3, 0.4])


def test_random_symplectic_preserves_purity(rng):
    st = gqi.vacuum_state(3)
    out = gqi.apply_symplectic(st, random_symplectic(3, rng))
    assert gqi.is_pure(out)
