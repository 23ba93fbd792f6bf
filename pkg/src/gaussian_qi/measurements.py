"""Gaussian measurements: homodyne and heterodyne conditioning and sampling.

Conditioning a Gaussian state on the outcome of a Gaussian measurement of one
mode leaves the remaining modes Gaussian. Partitioning the covariance as
``[[A, C], [C.T, B]]`` (kept block A, measured mode B):

- homodyne of the q quadrature:  ``A -> A - C (Pi B Pi)^+ C.T`` with
  ``Pi = diag(1, 0)`` and ``(Pi B Pi)^+ = Pi / B[0,0]``;
- heterodyne: ``A -> A - C (B + I)^-1 C.T``.

The conditioned covariance never depends on the outcome; the mean is updated
by the standard Gaussian conditioning rule. Homodyne at angle ``theta``
(measuring cos(theta) q + sin(theta) p) is realized by pre-rotating the
measured mode by R(-theta).
"""

from __future__ import annotations

import numpy as np
import scipy.linalg as la

from .errors import ValidationError
from .phase_space import GaussianState
from .unitaries import apply_symplectic, rotation

__all__ = [
    "homodyne",
    "heterodyne",
    "homodyne_distribution",
    "heterodyne_distribution",
    "sample_homodyne",
    "sample_heterodyne",
]


def _split(state: GaussianState, mode: int):
    """Partition (mean, cov) into kept block and measured-mode block."""
    n = state.num_modes
    mode = int(mode)
    if not 0 <= mode < n:
        raise ValidationError(f"mode {mode} out of range for {n}-mode state")
    keep = [m for m in range(n) if m != mode]
    ia = state.mode_indices(keep)
    ib = state.mode_indices([mode])
    a = state.cov[np.ix_(ia, ia)]
    b = state.cov[np.ix_(ib, ib)]
    c = state.cov[np.ix_(ia, ib)]
    return state.mean[ia], state.mean[ib], a, b, c


def _require_remaining(state: GaussianState):
    if state.num_modes < 2:
        raise ValidationError(
            "conditioning requires at least one unmeasured mode"
        )


def _coerce_heterodyne_outcome(outcome) -> np.ndarray:
    """Accept a complex amplitude alpha or a length-2 quadrature vector."""
    if np.isscalar(outcome) or isinstance(outcome, complex):
        z = complex(outcome)
        return np.array([2.0 * z.real, 2.0 * z.imag])
    out = np.asarray(outcome, dtype=float)
    if out.shape != (2,):
        raise ValidationError(
            f"heterodyne outcome must be complex or length-2, got {outcome!r}"
        )
    return out


def homodyne(
    state: GaussianState, mode: int, outcome: float, angle: float = 0.0
) -> GaussianState:
    """Condition on a homodyne outcome for one mode.

    Args:
        state: input state (at least two modes).
        mode: measured mode index; it is removed from the register.
        outcome: measured value of the rotated q quadrature.
        angle: measured quadrature is cos(angle) q + sin(angle) p.

    Returns:
        The conditioned state on the remaining modes (original order).
    """
    _require_remaining(state)
    if angle != 0.0:
        state = apply_symplectic(state, rotation(-angle), modes=[mode], check=False)
    mean_a, mean_b, a, b, c = _split(state, mode)
    b_qq = b[0, 0]
    if b_qq <= 0:
        raise ValidationError("measured quadrature has non-positive variance")
    cq = c[:, 0]
    cov = a - np.outer(cq, cq) / b_qq
    mean = mean_a + cq * (float(outcome) - mean_b[0]) / b_qq
    return GaussianState(mean, cov)


def heterodyne(state: GaussianState, mode: int, outcome) -> GaussianState:
    """Condition on a heterodyne outcome (complex alpha or 2-vector) for one mode."""
    _require_remaining(state)
    m = _coerce_heterodyne_outcome(outcome)
    mean_a, mean_b, a, b, c = _split(state, mode)
    mat = b + np.eye(2)
    sol = la.solve(mat, c.T, assume_a="sym")
    cov = a - c @ sol
    mean = mean_a + c @ la.solve(mat, m - mean_b, assume_a="sym")
    return GaussianState(mean, cov)


def homodyne_distribution(
    state: GaussianState, mode: int, angle: float = 0.0
) -> tuple[float, float]:
    """Normal (mean, variance) of the homodyne outcome for one mode."""
    if angle != 0.0:
        state = apply_symplectic(state, rotation(-angle), modes=[mode], check=False)
    ib = state.mode_indices([mode])
    return float(state.mean[ib][0]), float(state.cov[np.ix_(ib, ib)][0, 0])


def heterodyne_distribution(
    state: GaussianState, mode: int
) -> tuple[np.ndarray, np.ndarray]:
    """Normal (mean 2-vector, 2x2 covariance B + I) of the heterodyne outcome."""
    ib = state.mode_indices([mode])
    return state.mean[ib].copy(), state.cov[np.ix_(ib, ib)] + np.eye(2)


def _as_rng(rng) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def sample_homodyne(
    state: GaussianState,
    mode: int,
    shots: int = 1,
    angle: float = 0.0,
    rng=None,
) -> np.ndarray:
    """Draw homodyne outcomes (marginal Normal) for one mode.

    ``rng`` may be a numpy Generator or an integer seed.
    """
    mean, var = homodyne_distribution(state, mode, angle)
    return _as_rng(rng).normal(mean, np.sqrt(var), size=int(shots))


def sample_heterodyne(
    state: GaussianState, mode: int, shots: int = 1, rng=None
) -> np.ndarray:
    """Draw heterodyne outcomes, shape (shots, 2), Normal(mean_B, B + I)."""
    mean, cov = heterodyne_distribution(state, mode)
    return _as_rng(rng).multivariate_normal(mean, cov, size=int(shots))
