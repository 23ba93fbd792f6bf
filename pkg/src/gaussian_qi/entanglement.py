"""Entanglement tests and measures for Gaussian states.

Bipartitions are specified by the set of modes on the B side. The partial
transpose acts in phase space as p -> -p on every B mode; a state is PPT when
the partially transposed covariance still satisfies the uncertainty relation
(all symplectic eigenvalues >= 1). For 1xN bipartitions PPT is necessary and
sufficient for separability, which is the regime the boolean verdict covers.
"""

from __future__ import annotations

import numpy as np

from .config import resolve_base
from .errors import ValidationError
from .phase_space import (
    GaussianState,
    is_pure,
    partial_trace,
    symplectic_eigenvalues,
    von_neumann_entropy,
)

__all__ = [
    "partial_transpose",
    "ppt_test",
    "log_negativity",
    "entropy_of_entanglement",
    "two_mode_symplectic_spectrum",
    "epr_correlations",
]


def _b_modes(state: GaussianState, modes_b) -> np.ndarray:
    modes = np.atleast_1d(np.asarray(modes_b, dtype=int))
    if modes.size == 0:
        raise ValidationError("bipartition needs at least one B mode")
    if np.unique(modes).size != modes.size:
        raise ValidationError(f"B modes contain duplicates: {modes_b}")
    if modes.min() < 0 or modes.max() >= state.num_modes:
        raise ValidationError(f"B mode out of range: {modes_b}")
    if modes.size == state.num_modes:
        raise ValidationError("B side must be a proper subset of the modes")
    return modes


def partial_transpose(state: GaussianState, modes_b) -> GaussianState:
    """Partial transpose on the B modes: p -> -p there.

    The result is returned as a GaussianState container even though it may
    violate the uncertainty relation - that violation is what
    :func:`ppt_test` detects.
    """
    modes = _b_modes(state, modes_b)
    signs = np.ones(2 * state.num_modes)
    signs[2 * modes + 1] = -1.0
    return GaussianState(signs * state.mean, state.cov * np.outer(signs, signs))


def ppt_test(state: GaussianState, modes_b) -> dict:
    """PPT entanglement test for the A|B bipartition.

    Returns a dict with the partially transposed symplectic spectrum
    (``nu_tilde``, ascending), ``ppt`` (spectrum >= 1), and ``separable``,
    which equals ``ppt`` and is a decision only for 1xN bipartitions (the
    test is necessary and sufficient there); for larger bipartitions
    ``decision_valid`` is False and PPT failure still certifies entanglement.
    """
    modes = _b_modes(state, modes_b)
    nu = symplectic_eigenvalues(partial_transpose(state, modes).cov)
    ppt = bool(nu.min() >= 1.0 - 1e-10)
    one_sided = min(modes.size, state.num_modes - modes.size) == 1
    return {
        "nu_tilde": nu,
        "ppt": ppt,
        "separable": ppt,
        "decision_valid": one_sided,
    }


def log_negativity(state: GaussianState, modes_b, base=None) -> float:
    """Logarithmic negativity: sum of -log(nu_tilde) over nu_tilde < 1."""
    b = resolve_base(base)
    nu = symplectic_eigenvalues(partial_transpose(state, _b_modes(state, modes_b)).cov)
    neg = -np.log(nu[nu < 1.0])
    return float(np.sum(neg) / np.log(b)) if neg.size else 0.0


def entropy_of_entanglement(
    state: GaussianState, modes_b, base=None, purity_tol: float = 1e-6
) -> float:
    """Entropy of entanglement S(rho_A) for a globally pure state.

    Raises:
        ValidationError: if the global state is not pure to ``purity_tol``
            (the measure is only defined for pure states).
    """
    modes = _b_modes(state, modes_b)
    if not is_pure(state, tol=purity_tol):
        raise ValidationError(
            "entropy of entanglement requires a pure global state"
        )
    keep = [m for m in range(state.num_modes) if m not in set(modes.tolist())]
    return von_neumann_entropy(partial_trace(state, keep), base=base)


def two_mode_symplectic_spectrum(cov: np.ndarray) -> tuple[float, float]:
    """(nu_minus, nu_plus) of a two-mode covariance via the Delta invariant.

    With blocks [[A, C], [C.T, B]]: Delta = det A + det B + 2 det C and
    2 nu_{-/+}^2 = Delta -/+ sqrt(Delta^2 - 4 det V).
    """
    cov = np.asarray(cov, dtype=float)
    if cov.shape != (4, 4):
        raise ValidationError(f"expected a 4x4 covariance, got {cov.shape}")
    a = np.linalg.det(cov[:2, :2])
    b = np.linalg.det(cov[2:, 2:])
    c = np.linalg.det(cov[:2, 2:])
    delta = a + b + 2.0 * c
    disc = delta**2 - 4.0 * np.linalg.det(cov)
    disc = max(disc, 0.0)
    nu_minus = np.sqrt(max((delta - np.sqrt(disc)) / 2.0, 0.0))
    nu_plus = np.sqrt((delta + np.sqrt(disc)) / 2.0)
    return float(nu_minus), float(nu_plus)


def epr_correlations(state: GaussianState, pair=(0, 1)) -> dict:
    """Variances of the EPR combinations (q_i - q_j)/sqrt(2), (p_i + p_j)/sqrt(2).

    For the two-mode squeezed vacuum with squeezing r both equal exp(-2r).
    """
    i, j = int(pair[0]), int(pair[1])
    if i == j:
        raise ValidationError("pair must name two distinct modes")
    iq, ip = 2 * i, 2 * i + 1
    jq, jp = 2 * j, 2 * j + 1
    v = state.cov
    var_q_minus = 0.5 * (v[iq, iq] + v[jq, jq] - 2.0 * v[iq, jq])
    var_p_plus = 0.5 * (v[ip, ip] + v[jp, jp] + 2.0 * v[ip, jp])
    return {"var_q_minus": float(var_q_minus), "var_p_plus": float(var_p_plus)}
