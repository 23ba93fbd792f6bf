"""Gaussian unitaries: symplectic matrices, displacements, and application.

A Gaussian unitary acts on a state as ``mean -> S @ mean + d`` and
``cov -> S @ cov @ S.T``. This module provides the standard gate matrices
(rotation, one- and two-mode squeezers, beam splitter), helpers to embed a
gate into a larger register, and :func:`apply_symplectic` /
:func:`displace` to apply them to states.
"""

from __future__ import annotations

import numpy as np

from .errors import ValidationError
from .phase_space import GaussianState, is_symplectic

__all__ = [
    "rotation",
    "squeezer",
    "two_mode_squeezer",
    "beam_splitter",
    "identity",
    "embed",
    "compose",
    "displace",
    "apply_symplectic",
]

_Z = np.array([[1.0, 0.0], [0.0, -1.0]])


# ===== gate matrices =====


def rotation(theta: float) -> np.ndarray:
    """One-mode phase rotation R(theta) = [[cos, -sin], [sin, cos]]."""
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def squeezer(r: float) -> np.ndarray:
    """One-mode squeezer S(r) = diag(e^-r, e^r): r > 0 squeezes q."""
    return np.diag([np.exp(-r), np.exp(r)])


def two_mode_squeezer(r: float) -> np.ndarray:
    """Two-mode squeezer S2(r) = [[cosh r I, sinh r Z], [sinh r Z, cosh r I]].

    Applied to two vacua this produces the EPR state with
    Var(q1 - q2) = Var(p1 + p2) = 2 exp(-2r).
    """
    ch, sh = np.cosh(r), np.sinh(r)
    return np.block([[ch * np.eye(2), sh * _Z], [sh * _Z, ch * np.eye(2)]])


def beam_splitter(tau: float, complementary: bool = False) -> np.ndarray:
    """Beam splitter of transmissivity ``tau`` on two modes.

    Default convention puts sqrt(tau) on the diagonal blocks,

        B(tau) = [[sqrt(tau) I,      sqrt(1-tau) I],
                  [-sqrt(1-tau) I,   sqrt(tau) I]],

    so the first output keeps amplitude sqrt(tau) of the first input. The
    literature also uses the complementary port labeling with sqrt(1-tau) on
    the diagonal; pass ``complementary=True`` for that form (equivalent to
    swapping tau <-> 1-tau). Both conventions coincide at tau = 1/2.
    """
    tau = float(tau)
    if not 0.0 <= tau <= 1.0:
        raise ValidationError(f"tau must be in [0, 1], got {tau}")
    if complementary:
        tau = 1.0 - tau
    t, r = np.sqrt(tau), np.sqrt(1.0 - tau)
    eye = np.eye(2)
    return np.block([[t * eye, r * eye], [-r * eye, t * eye]])


def identity(num_modes: int) -> np.ndarray:
    return np.eye(2 * num_modes)


# ===== composition and embedding =====


def embed(gate: np.ndarray, modes, num_modes: int) -> np.ndarray:
    """Embed a k-mode gate into an ``num_modes``-register symplectic matrix.

    Args:
        gate: 2k x 2k symplectic matrix.
        modes: the k register modes the gate acts on, in gate order.
        num_modes: total register size.
    """
    gate = np.asarray(gate, dtype=float)
    modes = np.atleast_1d(np.asarray(modes, dtype=int))
    k = modes.size
    if gate.shape != (2 * k, 2 * k):
        raise ValidationError(
            f"gate shape {gate.shape} does not match {k} target modes"
        )
    if np.unique(modes).size != k:
        raise ValidationError(f"target modes contain duplicates: {modes}")
    if modes.min() < 0 or modes.max() >= num_modes:
        raise ValidationError(f"target modes out of range: {modes}")
    idx = np.concatenate([[2 * m, 2 * m + 1] for m in modes])
    full = np.eye(2 * num_modes)
    full[np.ix_(idx, idx)] = gate
    return full


def compose(*gates: np.ndarray) -> np.ndarray:
    """Product of symplectic matrices, first argument applied first.

    ``compose(A, B)`` returns ``B @ A`` so that gates are listed in circuit
    order.
    """
    if not gates:
        raise ValidationError("compose requires at least one gate")
    out = np.asarray(gates[0], dtype=float)
    for g in gates[1:]:
        out = np.asarray(g, dtype=float) @ out
    return out


# ===== application to states =====


def displace(state: GaussianState, d) -> GaussianState:
    """Displace the mean by the quadrature vector ``d`` (covariance unchanged)."""
    d = np.asarray(d, dtype=float)
    if d.shape != state.mean.shape:
        raise ValidationError(
            f"displacement has shape {d.shape}, expected {state.mean.shape}"
        )
    return GaussianState(state.mean + d, state.cov)


def apply_symplectic(
    state: GaussianState,
    gate: np.ndarray,
    modes=None,
    d=None,
    check: bool = True,
) -> GaussianState:
    """Apply a Gaussian unitary: mean -> S mean + d, cov -> S cov S^T.

    Args:
        state: input state.
        gate: symplectic matrix for the targeted modes (or the full register
            when ``modes`` is None).
        modes: register modes the gate acts on; None means all modes in order.
        d: optional displacement added after the symplectic action (full
            register length).
        check: verify the gate is symplectic before applying.
    """
    gate = np.asarray(gate, dtype=float)
    if modes is not None:
        gate = embed(gate, modes, state.num_modes)
    if gate.shape != (state.mean.size, state.mean.size):
        raise ValidationError(
            f"gate shape {gate.shape} does not match register of "
            f"{state.num_modes} modes"
        )
    if check and not is_symplectic(gate, atol=1e-8):
        raise ValidationError("gate is not symplectic")
    mean = gate @ state.mean
    if d is not None:
        d = np.asarray(d, dtype=float)
        if d.shape != mean.shape:
            raise ValidationError(f"displacement has shape {d.shape}")
        mean = mean + d
    return GaussianState(mean, gate @ state.cov @ gate.T)
