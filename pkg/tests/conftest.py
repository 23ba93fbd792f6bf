"""Shared helpers: seeded RNG and random state/symplectic generators.

Random objects are built from the package's own gate set so the generators
double as an exercise of compose/embed.
"""

import numpy as np
import pytest

import gaussian_qi as gqi


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_symplectic(num_modes, rng, layers=3, max_squeeze=1.2):
    s = gqi.identity(num_modes)
    for _ in range(layers):
        for mode in range(num_modes):
            local = gqi.compose(
                gqi.rotation(rng.uniform(0.0, 2.0 * np.pi)),
                gqi.squeezer(rng.uniform(-max_squeeze, max_squeeze)),
                gqi.rotation(rng.uniform(0.0, 2.0 * np.pi)),
            )
            s = gqi.embed(local, [mode], num_modes) @ s
        for mode in range(num_modes - 1):
            s = gqi.embed(gqi.beam_splitter(rng.uniform(0.05, 0.95)), [mode, mode + 1], num_modes) @ s
    return s


def random_cov(num_modes, rng, mixed=True, layers=3, max_squeeze=1.2):
    if mixed:
        nu = 1.0 + rng.uniform(0.0, 2.0, size=num_modes)
    else:
        nu = np.ones(num_modes)
    s = random_symplectic(num_modes, rng, layers=layers, max_squeeze=max_squeeze)
    return s @ np.kron(np.diag(nu), np.eye(2)) @ s.T


def random_state(num_modes, rng, mixed=True, displaced=True, layers=3, max_squeeze=1.2):
    mean = rng.normal(scale=2.0, size=2 * num_modes) if displaced else np.zeros(2 * num_modes)
    return gqi.GaussianState(mean, random_cov(num_modes, rng, mixed=mixed, layers=layers,
                                              max_squeeze=max_squeeze))
