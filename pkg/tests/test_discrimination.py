import math

import numpy as np
import pytest

import gaussian_qi as gqi

from conftest import random_state


def test_binary_entropy_values():
    assert gqi.binary_entropy(0.5) == pytest.approx(1.0)
    assert gqi.binary_entropy(0.0) == 0.0
    assert gqi.binary_entropy(1.0) == 0.0
    assert gqi.binary_entropy(0.11, base=math.e) == pytest.approx(
        -0.11 * math.log(0.11) - 0.89 * math.log(0.89))


def test_helstrom_pure_closed_form():
    assert gqi.helstrom_pure(0.0) == pytest.approx(0.0)
    assert gqi.helstrom_pure(1.0) == pytest.approx(0.5)
    overlap_sq = 0.36
    assert gqi.helstrom_pure(overlap_sq) == pytest.approx(0.5 * (1 - math.sqrt(1 - 0.36)))


def test_helstrom_two_coherent_matches_pure():
    a0, a1 = 0.4 + 0.1j, -0.3 + 0.5j
    overlap_sq = math.exp(-abs(a0 - a1) ** 2)
    assert gqi.helstrom_two_coherent(a0, a1) == pytest.approx(gqi.helstrom_pure(overlap_sq))


def test_fidelity_identical_and_orthogonal(rng):
    st = random_state(1, rng)
    assert gqi.fidelity_gaussian(st, st) == pytest.approx(1.0, abs=1e-9)
    far = gqi.coherent_state(20.0)
    assert gqi.fidelity_gaussian(gqi.vacuum_state(1), far) < 1e-12


def test_fidelity_coherent_pair_closed_form():
    a0, a1 = 0.7 + 0.2j, -0.1 + 0.9j
    expected = math.exp(-abs(a0 - a1) ** 2)
    value = gqi.fidelity_gaussian(gqi.coherent_state(a0), gqi.coherent_state(a1))
    assert value == pytest.approx(expected, abs=1e-12)


def test_fidelity_symmetric(rng):
    s0, s1 = random_state(1, rng), random_state(1, rng)
    assert gqi.fidelity_gaussian(s0, s1) == pytest.approx(gqi.fidelity_gaussian(s1, s0), abs=1e-10)


def test_qcb_identical_states_is_half(rng):
    st = random_state(1, rng)
    assert gqi.qcb(st, st)["p_qcb"] == pytest.approx(0.5, abs=1e-7)


def test_qcb_coefficient_endpoints_monotone():
    s0 = gqi.coherent_state(0.0)
    s1 = gqi.thermal_state(0.8)
    values = [gqi.qcb_coefficient(s0, s1, s) for s in (0.2, 0.5, 0.8)]
    assert all(0.0 < v <= 1.0 for v in values)
    # s = 1/2 gives the Bhattacharyya overlap
    assert gqi.bhattacharyya_error(s0, s1) == pytest.approx(0.5 * values[1])


def test_bounds_chain_order(rng):
    for _ in range(40):
        s0, s1 = random_state(1, rng), random_state(1, rng)
        b = gqi.bounds_chain(s0, s1)
        assert b["f_lower"] <= b["p_qcb"] + 1e-12
        assert b["p_qcb"] <= b["p_bhattacharyya"] + 1e-12
        assert b["p_bhattacharyya"] <= b["f_upper"] + 1e-12
        assert 0.0 < b["s_star"] < 1.0


def test_fidelity_error_bounds_formula():
    fid = 0.42
    lo, hi = gqi.fidelity_error_bounds(fid)
    assert lo == pytest.approx(0.5 * (1 - math.sqrt(1 - fid)))
    assert hi == pytest.approx(0.5 * math.sqrt(fid))
    assert lo <= hi


def test_multicopy_error_decays(rng):
    s0 = gqi.coherent_state(0.3)
    s1 = gqi.coherent_state(-0.3)
    one = gqi.multicopy_error(s0, s1, 1)
    ten = gqi.multicopy_error(s0, s1, 10)
    assert ten["p_error"] < one["p_error"]
    assert ten["copies"] == 10
    # exponential decay at the single-copy Chernoff rate
    assert ten["p_error"] == pytest.approx(0.5 * (2 * one["p_error"]) ** 10, rel=1e-6)


def test_receiver_hierarchy(rng):
    for alpha_sq in rng.uniform(0.01, 2.0, size=50):
        alpha = math.sqrt(alpha_sq)
        hel = gqi.helstrom_bpsk_pe(alpha)
        odr = gqi.odr_optimize(alpha)["p_error"]
        ken = gqi.kennedy_pe(alpha)
        hom = gqi.homodyne_pe(alpha)
        assert hel <= odr + 1e-12
        assert odr <= min(ken, hom) + 1e-12


def test_kennedy_homodyne_crossover_location():
    # homodyne beats Kennedy only for weak signals
    lo, hi = 0.05, 1.5

    def gap(alpha_sq):
        a = math.sqrt(alpha_sq)
        return gqi.kennedy_pe(a) - gqi.homodyne_pe(a)

    assert gap(lo) > 0.0
    assert gap(hi) < 0.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if gap(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    assert abs(0.5 * (lo + hi) - 0.4) < 0.1


def test_odr_pe_reduces_to_kennedy_at_zero_beta():
    alpha = 0.6
    assert gqi.odr_pe(alpha, 0.0) == pytest.approx(0.5)
    assert gqi.odr_optimize(alpha)["beta"] > 0.0


def test_helstrom_bpsk_matches_two_coherent():
    alpha = 0.8
    assert gqi.helstrom_bpsk_pe(alpha) == pytest.approx(
        gqi.helstrom_two_coherent(alpha, -alpha))
