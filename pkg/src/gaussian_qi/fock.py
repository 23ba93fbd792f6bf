"""Dense Fock-space oracle for cross-checking phase-space results.

Everything here works with explicit (truncated) number-basis matrices so it
shares no code path with the covariance-matrix algebra it is used to verify.
Quadratures follow the package convention (hbar = 2): q = a + a^dag,
p = i (a^dag - a), so the vacuum has unit quadrature variance.

States whose truncated norm falls below the guard (default 1 - 1e-8) raise
:class:`NumericalError` - results at that cutoff would not be trustworthy.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg as la
from scipy.special import gammaln

from .errors import NumericalError, ValidationError

__all__ = [
    "DEFAULT_CUTOFF",
    "destroy",
    "quadrature_ops",
    "coherent_ket",
    "squeezed_vacuum_ket",
    "epr_ket",
    "thermal_dm",
    "dm",
    "displacement_op",
    "squeeze_op",
    "one_mode_gaussian_dm",
    "fidelity",
    "trace_distance",
    "helstrom_error",
    "overlap_cs",
    "moments",
]

DEFAULT_CUTOFF = 40
_NORM_GUARD = 1.0 - 1e-8


def destroy(cutoff: int = DEFAULT_CUTOFF) -> np.ndarray:
    """Annihilation operator truncated to ``cutoff`` Fock levels."""
    return np.diag(np.sqrt(np.arange(1.0, cutoff)), k=1)


def quadrature_ops(cutoff: int = DEFAULT_CUTOFF) -> tuple[np.ndarray, np.ndarray]:
    """(q, p) matrices with q = a + a^dag, p = i(a^dag - a)."""
    a = destroy(cutoff)
    return a + a.T, 1j * (a.T - a)


def _guard_norm(weight: float, what: str):
    if weight < _NORM_GUARD:
        raise NumericalError(
            f"{what}: truncated norm {weight:.12f} below guard {_NORM_GUARD}; "
            "increase the cutoff"
        )


def coherent_ket(alpha: complex, cutoff: int = DEFAULT_CUTOFF) -> np.ndarray:
    """|alpha> = exp(-|alpha|^2/2) sum alpha^n / sqrt(n!) |n>."""
    n = np.arange(cutoff)
    log_mag = -0.5 * abs(alpha) ** 2 + n * np.log(abs(alpha) + 1e-300) - 0.5 * gammaln(n + 1)
    phase = np.exp(1j * n * np.angle(alpha)) if alpha != 0 else np.ones(cutoff)
    ket = np.exp(log_mag) * phase
    if alpha == 0:
        ket = np.zeros(cutoff, dtype=complex)
        ket[0] = 1.0
    _guard_norm(float(np.vdot(ket, ket).real), "coherent_ket")
    return ket


def squeezed_vacuum_ket(r: float, cutoff: int = DEFAULT_CUTOFF) -> np.ndarray:
    """Squeezed vacuum with Var(q) = exp(-2r): only even Fock levels.

    Coefficients c_{2n} = sqrt(sech r) * sqrt((2n)!)/(2^n n!) * (-tanh r)^n,
    matching the covariance-matrix convention diag(e^-2r, e^2r).
    """
    ket = np.zeros(cutoff, dtype=complex)
    t = -np.tanh(r)
    n_max = (cutoff - 1) // 2
    n = np.arange(n_max + 1)
    log_mag = (
        0.5 * np.log(1.0 / np.cosh(r))
        + 0.5 * gammaln(2 * n + 1)
        - n * np.log(2.0)
        - gammaln(n + 1)
        + n * np.log(abs(t) + 1e-300)
    )
    signs = np.sign(t) ** n if t != 0 else (n == 0).astype(float)
    ket[2 * n] = signs * np.exp(log_mag)
    if t == 0:
        ket[:] = 0.0
        ket[0] = 1.0
    _guard_norm(float(np.vdot(ket, ket).real), "squeezed_vacuum_ket")
    return ket


def epr_ket(r: float, cutoff: int = DEFAULT_CUTOFF) -> np.ndarray:
    """Two-mode squeezed vacuum sqrt(1-lam^2) sum lam^n |n,n>, lam = tanh r.

    The + sign on lam matches the covariance convention with +sinh(2r) Z
    off-diagonal blocks (positive q-q correlations for r > 0). Returned as a
    length-cutoff^2 vector in the kron basis |n> x |m>.
    """
    lam = np.tanh(r)
    n = np.arange(cutoff)
    coeffs = np.sqrt(1.0 - lam**2) * lam**n
    ket = np.zeros(cutoff * cutoff, dtype=complex)
    ket[n * cutoff + n] = coeffs
    _guard_norm(float(np.vdot(ket, ket).real), "epr_ket")
    return ket


def thermal_dm(nbar: float, cutoff: int = DEFAULT_CUTOFF) -> np.ndarray:
    """Thermal state: populations nbar^n / (nbar+1)^(n+1)."""
    if nbar < 0:
        raise ValidationError(f"nbar must be >= 0, got {nbar}")
    if nbar == 0:
        pops = np.zeros(cutoff)
        pops[0] = 1.0
    else:
        n = np.arange(cutoff)
        pops = np.exp(n * np.log(nbar) - (n + 1) * np.log(nbar + 1.0))
    _guard_norm(float(pops.sum()), "thermal_dm")
    return np.diag(pops).astype(complex)


def dm(ket: np.ndarray) -> np.ndarray:
    """Density matrix of a ket."""
    ket = np.asarray(ket, dtype=complex)
    return np.outer(ket, ket.conj())


def displacement_op(alpha: complex, cutoff: int = DEFAULT_CUTOFF) -> np.ndarray:
    """D(alpha) = expm(alpha a^dag - alpha* a), unitary in the truncated space."""
    a = destroy(cutoff)
    return la.expm(alpha * a.T - np.conj(alpha) * a)


def squeeze_op(r: float, theta: float = 0.0, cutoff: int = DEFAULT_CUTOFF) -> np.ndarray:
    """S = expm((z* a^2 - z a^dag^2)/2) with z = r e^{2 i theta}.

    ``theta`` is the phase-space rotation of the squeezing axis, matching the
    covariance-matrix factory: S|0> has covariance
    R(theta) diag(e^-2r, e^2r) R(theta)^T.
    """
    a = destroy(cutoff)
    z = r * np.exp(2j * theta)
    gen = 0.5 * (np.conj(z) * (a @ a) - z * (a.T @ a.T))
    return la.expm(gen)


def one_mode_gaussian_dm(
    nbar: float = 0.0,
    r: float = 0.0,
    theta: float = 0.0,
    alpha: complex = 0.0,
    cutoff: int = DEFAULT_CUTOFF,
) -> np.ndarray:
    """Displaced squeezed thermal state D S rho_th S^dag D^dag."""
    rho = thermal_dm(nbar, cutoff)
    if r != 0.0:
        s = squeeze_op(r, theta, cutoff)
        rho = s @ rho @ s.conj().T
    if alpha != 0:
        d = displacement_op(alpha, cutoff)
        rho = d @ rho @ d.conj().T
    _guard_norm(float(np.trace(rho).real), "one_mode_gaussian_dm")
    return rho


# ===== metrics (dense Hermitian eigendecompositions) =====


def _eigh_psd(rho: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    evals, evecs = la.eigh(0.5 * (rho + rho.conj().T))
    return np.clip(evals, 0.0, None), evecs


def _psd_power(rho: np.ndarray, power: float) -> np.ndarray:
    evals, evecs = _eigh_psd(rho)
    return (evecs * evals**power) @ evecs.conj().T


def fidelity(rho0: np.ndarray, rho1: np.ndarray) -> float:
    """F = (Tr sqrt(sqrt(rho0) rho1 sqrt(rho0)))^2; equals |<psi0|psi1>|^2 for pure states."""
    root0 = _psd_power(rho0, 0.5)
    inner = root0 @ rho1 @ root0
    evals, _ = _eigh_psd(inner)
    return float(np.sum(np.sqrt(evals)) ** 2)


def trace_distance(rho0: np.ndarray, rho1: np.ndarray) -> float:
    """D = ||rho0 - rho1||_1 / 2."""
    diff = rho0 - rho1
    evals = la.eigvalsh(0.5 * (diff + diff.conj().T))
    return float(0.5 * np.sum(np.abs(evals)))


def helstrom_error(rho0: np.ndarray, rho1: np.ndarray) -> float:
    """Minimum error probability (1 - D)/2 for equiprobable hypotheses."""
    return 0.5 * (1.0 - trace_distance(rho0, rho1))


def overlap_cs(rho0: np.ndarray, rho1: np.ndarray, s: float) -> float:
    """C_s = Tr(rho0^s rho1^(1-s)) for s in (0, 1)."""
    if not 0.0 < s < 1.0:
        raise ValidationError(f"s must be in (0, 1), got {s}")
    return float(np.trace(_psd_power(rho0, s) @ _psd_power(rho1, 1.0 - s)).real)


def moments(rho: np.ndarray, num_modes: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """Quadrature mean vector and covariance matrix of a Fock-basis state.

    Uses the symmetrized second moments
    V_ij = <{Delta x_i, Delta x_j}> / 2 in interleaved ordering.
    """
    dim = rho.shape[0]
    cutoff = round(dim ** (1.0 / num_modes))
    if cutoff**num_modes != dim:
        raise ValidationError(
            f"state dimension {dim} is not a {num_modes}-mode kron power"
        )
    q1, p1 = quadrature_ops(cutoff)
    ops = []
    for m in range(num_modes):
        for op in (q1, p1):
            full = np.eye(1, dtype=complex)
            for k in range(num_modes):
                full = np.kron(full, op if k == m else np.eye(cutoff))
            ops.append(full)
    mean = np.array([np.trace(rho @ op).real for op in ops])
    n = len(ops)
    cov = np.empty((n, n))
    for i in range(n):
        di = ops[i] - mean[i] * np.eye(dim)
        for j in range(i, n):
            dj = ops[j] - mean[j] * np.eye(dim)
            cov[i, j] = cov[j, i] = 0.5 * np.trace(rho @ (di @ dj + dj @ di)).real
    return mean, cov
