"""Binary discrimination of Gaussian states: bounds and practical receivers.

Equiprobable hypotheses throughout. The quantum Chernoff bound (QCB) is
computed from the closed-form Gaussian overlap

    C_s = 2^N sqrt(det Pi_s / det Sigma_s) exp(-d^T Sigma_s^-1 d / 2),

built from the Williamson forms V_i = S_i D_i S_i^T of the two covariance
matrices:

    Pi_s     = G_s(D_0) G_(1-s)(D_1)            (only its determinant enters)
    Sigma_s  = S_0 Lam_s(D_0) S_0^T + S_1 Lam_(1-s)(D_1) S_1^T
    G_s(x)   = 2^s / ((x+1)^s - (x-1)^s)
    Lam_s(x) = ((x+1)^s + (x-1)^s) / ((x+1)^s - (x-1)^s)

with d the mean difference. For pure states Pi_s = I and the QCB is tight at
s = 1/2... the Bhattacharyya value. Receiver formulas are for binary phase
shift keying of coherent states |+alpha>, |-alpha> with alpha > 0 real.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg as la
from scipy.optimize import minimize_scalar
from scipy.special import erfc

from .errors import ValidationError
from .phase_space import GaussianState, williamson

__all__ = [
    "binary_entropy",
    "helstrom_pure",
    "helstrom_two_coherent",
    "qcb_coefficient",
    "qcb",
    "bhattacharyya_error",
    "fidelity_gaussian",
    "fidelity_error_bounds",
    "bounds_chain",
    "multicopy_error",
    "kennedy_pe",
    "helstrom_bpsk_pe",
    "homodyne_pe",
    "odr_pe",
    "odr_optimize",
]

_S_EDGE = 1e-6


def binary_entropy(p, base=None) -> float:
    """Entropy of a binary outcome in the configured (or given) base."""
    from . import config

    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"probability must be in [0, 1], got {p}")
    if p in (0.0, 1.0):
        return 0.0
    return float(-p * config.log(p, base) - (1.0 - p) * config.log(1.0 - p, base))


# ===== bounds =====


def helstrom_pure(overlap_sq: float) -> float:
    """Helstrom error for equiprobable pure states with |<psi0|psi1>|^2 = overlap_sq."""
    if not 0.0 <= overlap_sq <= 1.0 + 1e-12:
        raise ValidationError(f"overlap_sq must be in [0, 1], got {overlap_sq}")
    return 0.5 * (1.0 - np.sqrt(max(1.0 - overlap_sq, 0.0)))


def helstrom_two_coherent(alpha0: complex, alpha1: complex) -> float:
    """Helstrom error for two coherent states: overlap^2 = exp(-|alpha0-alpha1|^2...).

    In quadrature units the mean difference is d = 2(Re, Im)(alpha0 - alpha1)
    and |<alpha0|alpha1>|^2 = exp(-|d|^2 / 4).
    """
    diff = complex(alpha0) - complex(alpha1)
    d_sq = 4.0 * abs(diff) ** 2
    return helstrom_pure(np.exp(-d_sq / 4.0))


def _log_g(nu: np.ndarray, s: float) -> np.ndarray:
    """log G_s(nu) elementwise, stable for nu >= 1."""
    plus = (nu + 1.0) ** s
    minus = np.maximum(nu - 1.0, 0.0) ** s
    return s * np.log(2.0) - np.log(plus - minus)


def _lam(nu: np.ndarray, s: float) -> np.ndarray:
    """Lam_s(nu) elementwise (equals 1 at nu = 1)."""
    plus = (nu + 1.0) ** s
    minus = np.maximum(nu - 1.0, 0.0) ** s
    return (plus + minus) / (plus - minus)


def _check_pair(state0: GaussianState, state1: GaussianState):
    if state0.num_modes != state1.num_modes:
        raise ValidationError(
            f"states have {state0.num_modes} and {state1.num_modes} modes"
        )


def log_qcb_coefficient(state0: GaussianState, state1: GaussianState, s: float) -> float:
    """ln C_s (natural log), the numerically safe form of the overlap."""
    _check_pair(state0, state1)
    if not 0.0 < s < 1.0:
        raise ValidationError(f"s must be in (0, 1), got {s}")
    w0 = williamson(state0.cov)
    w1 = williamson(state1.cov)
    n = state0.num_modes
    nu0, nu1 = w0.spectrum, w1.spectrum

    log_det_pi = 2.0 * (np.sum(_log_g(nu0, s)) + np.sum(_log_g(nu1, 1.0 - s)))
    lam0 = np.repeat(_lam(nu0, s), 2)
    lam1 = np.repeat(_lam(nu1, 1.0 - s), 2)
    sigma = (w0.symplectic * lam0) @ w0.symplectic.T + (
        w1.symplectic * lam1
    ) @ w1.symplectic.T
    sign, log_det_sigma = np.linalg.slogdet(sigma)
    if sign <= 0:
        raise ValidationError("Sigma_s is not positive definite")
    d = state1.mean - state0.mean
    quad = d @ la.solve(sigma, d, assume_a="pos")
    return float(n * np.log(2.0) + 0.5 * (log_det_pi - log_det_sigma) - 0.5 * quad)


def qcb_coefficient(state0: GaussianState, state1: GaussianState, s: float) -> float:
    """C_s = Tr(rho0^s rho1^(1-s)) for two Gaussian states."""
    return float(np.exp(log_qcb_coefficient(state0, state1, s)))


def qcb(state0: GaussianState, state1: GaussianState) -> dict:
    """Quantum Chernoff bound: p_err <= (1/2) inf_s C_s.

    Minimizes ln C_s over s in [1e-6, 1 - 1e-6] with bounded Brent search
    (200 iterations) and checks the interval edges.

    Returns:
        dict with ``p_qcb``, ``s_star``, and ``log_cs_min`` (natural log).
    """

    def objective(s):
        return log_qcb_coefficient(state0, state1, s)

    res = minimize_scalar(
        objective,
        bounds=(_S_EDGE, 1.0 - _S_EDGE),
        method="bounded",
        options={"maxiter": 200, "xatol": 1e-10},
    )
    candidates = [(float(res.fun), float(res.x))]
    for s_edge in (_S_EDGE, 1.0 - _S_EDGE):
        candidates.append((objective(s_edge), s_edge))
    log_min, s_star = min(candidates, key=lambda t: t[0])
    return {
        "p_qcb": 0.5 * float(np.exp(log_min)),
        "s_star": s_star,
        "log_cs_min": log_min,
    }


def bhattacharyya_error(state0: GaussianState, state1: GaussianState) -> float:
    """Bhattacharyya upper bound C_(1/2) / 2 on the error probability."""
    return 0.5 * qcb_coefficient(state0, state1, 0.5)


def fidelity_gaussian(state0: GaussianState, state1: GaussianState) -> float:
    """Uhlmann fidelity of two one-mode Gaussian states (closed form).

    F = 2 / (sqrt(Delta + delta) - sqrt(delta)) * exp(-d^T (V0+V1)^-1 d / 2)
    with Delta = det(V0 + V1), delta = (det V0 - 1)(det V1 - 1).
    """
    _check_pair(state0, state1)
    if state0.num_modes != 1:
        raise ValidationError("closed-form fidelity implemented for one mode")
    v_sum = state0.cov + state1.cov
    big = la.det(v_sum)
    small = (la.det(state0.cov) - 1.0) * (la.det(state1.cov) - 1.0)
    small = max(small, 0.0)
    d = state1.mean - state0.mean
    quad = d @ la.solve(v_sum, d, assume_a="pos")
    return float(2.0 / (np.sqrt(big + small) - np.sqrt(small)) * np.exp(-0.5 * quad))


def fidelity_error_bounds(fid: float) -> tuple[float, float]:
    """(lower, upper) bounds on the Helstrom error from the fidelity:

    (1 - sqrt(1 - F)) / 2  <=  p_err  <=  sqrt(F) / 2.
    """
    if not 0.0 <= fid <= 1.0 + 1e-12:
        raise ValidationError(f"fidelity must be in [0, 1], got {fid}")
    fid = min(fid, 1.0)
    return 0.5 * (1.0 - np.sqrt(1.0 - fid)), 0.5 * np.sqrt(fid)


def bounds_chain(state0: GaussianState, state1: GaussianState) -> dict:
    """All discrimination bounds for a pair of one-mode Gaussian states.

    Returns F_lower <= p_qcb <= p_bhattacharyya <= F_upper along with the
    fidelity and the QCB minimizer; the Helstrom error itself sits between
    F_lower and p_qcb.
    """
    fid = fidelity_gaussian(state0, state1)
    f_lo, f_hi = fidelity_error_bounds(fid)
    chern = qcb(state0, state1)
    return {
        "fidelity": fid,
        "f_lower": f_lo,
        "p_qcb": chern["p_qcb"],
        "s_star": chern["s_star"],
        "p_bhattacharyya": bhattacharyya_error(state0, state1),
        "f_upper": f_hi,
    }


def multicopy_error(state0: GaussianState, state1: GaussianState, copies: int) -> dict:
    """QCB for M iid copies: p_M <= (1/2) (2 p_qcb)^M = (1/2) e^(-M kappa).

    Returns ``p_error`` (the M-copy bound) and the error exponent ``kappa``
    = -ln(inf_s C_s) per copy.
    """
    if copies < 1:
        raise ValidationError(f"copies must be >= 1, got {copies}")
    chern = qcb(state0, state1)
    kappa = -chern["log_cs_min"]
    return {
        "p_error": 0.5 * float(np.exp(-copies * kappa)),
        "kappa": float(kappa),
        "copies": int(copies),
    }


# ===== BPSK receivers =====


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if alpha < 0:
        raise ValidationError(f"alpha must be >= 0, got {alpha}")
    return alpha


def helstrom_bpsk_pe(alpha: float) -> float:
    """Optimal (Helstrom) error for |alpha> vs |-alpha>: (1 - sqrt(1 - e^-4a^2))/2."""
    alpha = _check_alpha(alpha)
    return helstrom_pure(np.exp(-4.0 * alpha**2))


def kennedy_pe(alpha: float) -> float:
    """Kennedy receiver (exact nulling + on/off detection): e^(-4 a^2) / 2."""
    alpha = _check_alpha(alpha)
    return 0.5 * np.exp(-4.0 * alpha**2)


def homodyne_pe(alpha: float) -> float:
    """Homodyne receiver: sign of the measured q quadrature.

    The q marginal of |+/-alpha> is Normal(+/-2 alpha, 1), so
    p_err = erfc(sqrt(2) alpha) / 2.
    """
    alpha = _check_alpha(alpha)
    return 0.5 * erfc(np.sqrt(2.0) * alpha)


def odr_pe(alpha: float, beta: float, tau: float = 1.0) -> float:
    """Displacement receiver error (1/2) - exp(-(tau a^2 + b^2)) sinh(2 sqrt(tau) a b).

    ``beta`` is the displacement applied before on/off detection; ``tau`` the
    transmissivity of the tap. ``beta = sqrt(tau) alpha`` recovers the Kennedy
    receiver at tau = 1.
    """
    alpha = _check_alpha(alpha)
    if not 0.0 < tau <= 1.0:
        raise ValidationError(f"tau must be in (0, 1], got {tau}")
    return float(
        0.5
        - np.exp(-(tau * alpha**2 + beta**2))
        * np.sinh(2.0 * np.sqrt(tau) * alpha * beta)
    )


def odr_optimize(alpha: float, tau: float = 1.0) -> dict:
    """Optimized displacement receiver: minimize odr_pe over the displacement.

    Returns ``p_error`` and the optimal ``beta``.
    """
    alpha = _check_alpha(alpha)
    hi = np.sqrt(tau) * alpha + 6.0
    res = minimize_scalar(
        lambda b: odr_pe(alpha, b, tau),
        bounds=(0.0, hi),
        method="bounded",
        options={"maxiter": 200, "xatol": 1e-12},
    )
    return {"p_error": float(res.fun), "beta": float(res.x)}
