"""Phase-space core: Gaussian states, symplectic algebra, decompositions.

Everything here uses hbar = 2 (vacuum covariance = identity) and the
interleaved quadrature ordering ``x = (q1, p1, ..., qN, pN)``. A matrix ``S``
is symplectic when ``S @ Omega @ S.T == Omega`` with ``Omega`` the interleaved
symplectic form, and a symmetric matrix ``V`` is a valid covariance matrix
when ``V + i*Omega >= 0``, equivalently when every symplectic eigenvalue is
>= 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
import scipy.linalg as la

from .config import HBAR, resolve_base
from .errors import ValidationError, NumericalError

__all__ = [
    "GaussianState",
    "WilliamsonDecomposition",
    "EulerDecomposition",
    "symplectic_form",
    "is_symplectic",
    "vacuum_state",
    "thermal_state",
    "coherent_state",
    "squeezed_vacuum_state",
    "epr_state",
    "make_state",
    "validate_state",
    "symplectic_eigenvalues",
    "williamson",
    "euler",
    "purify",
    "tensor",
    "partial_trace",
    "permute_modes",
    "g_function",
    "von_neumann_entropy",
    "is_pure",
    "wigner_at",
    "char_fn_at",
    "state_to_dict",
    "state_from_dict",
    "state_to_json",
    "state_from_json",
]

# Tolerances for structural checks. Physicality uses a small negative slack so
# that states produced by exact algebra but touched by round-off still pass.
_SYMMETRY_ATOL = 1e-8
_PHYSICALITY_SLACK = 1e-9
_DECOMP_RTOL = 1e-9
# Wider clip for entropy evaluation only: conditioning covariances with very
# large entries can push a unit symplectic eigenvalue a few 1e-9 below 1, and
# g is continuous with g(1) = 0, so clipping is exact where it matters.
_ENTROPY_CLIP = 1e-6

_OMEGA_1 = np.array([[0.0, 1.0], [-1.0, 0.0]])
_Z = np.array([[1.0, 0.0], [0.0, -1.0]])


def symplectic_form(num_modes: int) -> np.ndarray:
    """Interleaved symplectic form, the direct sum of [[0, 1], [-1, 0]]."""
    if num_modes < 1:
        raise ValidationError(f"num_modes must be >= 1, got {num_modes}")
    return np.kron(np.eye(num_modes), _OMEGA_1)


def is_symplectic(s: np.ndarray, atol: float = 1e-10) -> bool:
    """Check ``S @ Omega @ S.T == Omega`` to absolute tolerance ``atol``."""
    s = np.asarray(s, dtype=float)
    if s.ndim != 2 or s.shape[0] != s.shape[1] or s.shape[0] % 2:
        return False
    omega = symplectic_form(s.shape[0] // 2)
    return bool(np.allclose(s @ omega @ s.T, omega, atol=atol))


# ===========================================================================
# Gaussian states
# ===========================================================================


@dataclass(frozen=True)
class GaussianState:
    """An N-mode Gaussian state: mean vector and covariance matrix.

    Attributes:
        mean: length-2N quadrature mean, interleaved ordering.
        cov: 2N x 2N covariance matrix (symmetrized on construction).
    """

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = np.atleast_1d(np.asarray(self.mean, dtype=float))
        cov = np.asarray(self.cov, dtype=float)
        if mean.ndim != 1:
            raise ValidationError("mean must be a vector")
        if not np.all(np.isfinite(mean)):
            raise ValidationError("mean contains non-finite entries")
        if cov.ndim != 2 or cov.shape[0] != cov.shape[1]:
            raise ValidationError(f"cov must be square, got shape {cov.shape}")
        if not np.all(np.isfinite(cov)):
            raise ValidationError("cov contains non-finite entries")
        dim = mean.shape[0]
        if dim % 2 or dim == 0:
            raise ValidationError(f"mean length must be even and > 0, got {dim}")
        if cov.shape[0] != dim:
            raise ValidationError(
                f"cov shape {cov.shape} does not match mean length {dim}"
            )
        if not np.allclose(cov, cov.T, atol=_SYMMETRY_ATOL):
            raise ValidationError("cov is not symmetric")
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", 0.5 * (cov + cov.T))

    @property
    def num_modes(self) -> int:
        return self.mean.shape[0] // 2

    def mode_indices(self, modes) -> np.ndarray:
        """Quadrature indices (interleaved) for the given mode numbers."""
        modes = np.atleast_1d(np.asarray(modes, dtype=int))
        if modes.size == 0:
            return np.empty(0, dtype=int)
        if modes.min() < 0 or modes.max() >= self.num_modes:
            raise ValidationError(f"mode index out of range: {modes}")
        return np.concatenate([[2 * m, 2 * m + 1] for m in modes]).astype(int)


def _check_nonneg(name: str, value: float) -> float:
    value = float(value)
    if value < 0:
        raise ValidationError(f"{name} must be >= 0, got {value}")
    return value


def vacuum_state(num_modes: int = 1) -> GaussianState:
    """N-mode vacuum: zero mean, identity covariance."""
    return GaussianState(np.zeros(2 * num_modes), np.eye(2 * num_modes))


def thermal_state(nbar, num_modes: int | None = None) -> GaussianState:
    """Thermal state(s) with mean photon number ``nbar`` per mode.

    ``nbar`` may be a scalar (optionally with ``num_modes`` copies) or a
    sequence giving one occupation per mode. Covariance is (2*nbar + 1) * I
    per mode.
    """
    nbars = np.atleast_1d(np.asarray(nbar, dtype=float))
    if num_modes is not None:
        if nbars.size != 1:
            raise ValidationError("num_modes only applies to scalar nbar")
        nbars = np.repeat(nbars, num_modes)
    for n in nbars:
        _check_nonneg("nbar", n)
    diag = np.repeat(2.0 * nbars + 1.0, 2)
    return GaussianState(np.zeros(2 * nbars.size), np.diag(diag))


def coherent_state(alpha) -> GaussianState:
    """Coherent state |alpha> (one mode per entry of ``alpha``).

    With hbar = 2 the mean quadratures are (2 Re alpha, 2 Im alpha) and the
    covariance is the identity.
    """
    alphas = np.atleast_1d(np.asarray(alpha, dtype=complex))
    mean = np.empty(2 * alphas.size)
    mean[0::2] = 2.0 * alphas.real
    mean[1::2] = 2.0 * alphas.imag
    return GaussianState(mean, np.eye(2 * alphas.size))


def _rotation2(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def squeezed_vacuum_state(r: float, theta: float = 0.0) -> GaussianState:
    """One-mode squeezed vacuum: Var(q) = exp(-2r) at theta = 0.

    Args:
        r: squeezing parameter (r > 0 squeezes q, anti-squeezes p).
        theta: rotation of the squeezing axis in phase space.
    """
    rot = _rotation2(theta)
    cov = rot @ np.diag([np.exp(-2.0 * r), np.exp(2.0 * r)]) @ rot.T
    return GaussianState(np.zeros(2), cov)


def epr_state(r: float) -> GaussianState:
    """Two-mode squeezed vacuum (EPR state) with squeezing ``r``.

    Covariance blocks: diagonal nu*I with nu = cosh(2r), off-diagonal
    sqrt(nu^2 - 1) * Z = sinh(2r) * Z. EPR correlations:
    Var(q1 - q2) = Var(p1 + p2) = 2 exp(-2r).
    """
    nu = np.cosh(2.0 * r)
    c = np.sinh(2.0 * r)
    cov = np.block([[nu * np.eye(2), c * _Z], [c * _Z, nu * np.eye(2)]])
    return GaussianState(np.zeros(4), cov)


_STATE_KINDS = ("vacuum", "thermal", "coherent", "squeezed", "epr")


def make_state(kind: str, **params) -> GaussianState:
    """Dispatch to a state factory by name.

    Supported kinds: ``vacuum`` (num_modes), ``thermal`` (nbar, [num_modes]),
    ``coherent`` (alpha or re/im), ``squeezed`` (r, [theta]), ``epr`` (r).
    """
    if kind == "vacuum":
        return vacuum_state(int(params.pop("num_modes", 1)))
    if kind == "thermal":
        if "nbar" not in params:
            raise ValidationError("thermal state requires nbar")
        return thermal_state(params.pop("nbar"), params.pop("num_modes", None))
    if kind == "coherent":
        if "alpha" in params:
            alpha = complex(params.pop("alpha"))
        else:
            alpha = complex(params.pop("re", 0.0)) + 1j * float(params.pop("im", 0.0))
        return coherent_state(alpha)
    if kind == "squeezed":
        if "r" not in params:
            raise ValidationError("squeezed state requires r")
        return squeezed_vacuum_state(float(params.pop("r")), float(params.pop("theta", 0.0)))
    if kind == "epr":
        if "r" not in params:
            raise ValidationError("epr state requires r")
        return epr_state(float(params.pop("r")))
    raise ValidationError(f"unknown state kind {kind!r}; expected one of {_STATE_KINDS}")


# ===========================================================================
# Spectra, validation, entropy
# ===========================================================================


def symplectic_eigenvalues(cov: np.ndarray) -> np.ndarray:
    """Symplectic spectrum of a covariance matrix, sorted ascending.

    Computed as the moduli of the eigenvalues of i*Omega*V, which come in
    +/- pairs; one representative per pair is returned.
    """
    cov = np.asarray(cov, dtype=float)
    n = cov.shape[0] // 2
    omega = symplectic_form(n)
    eigs = np.abs(la.eigvals(1j * omega @ cov))
    eigs.sort()
    return 0.5 * (eigs[0::2] + eigs[1::2])


def validate_state(state: GaussianState) -> dict:
    """Diagnostics for a Gaussian state.

    Returns a dict with ``symmetric_ok``, ``uncertainty_ok`` (V + i*Omega
    positive semidefinite, i.e. min symplectic eigenvalue >= 1 up to a small
    slack), and ``min_symplectic_eigenvalue``.
    """
    nu = symplectic_eigenvalues(state.cov)
    nu_min = float(nu.min())
    return {
        "symmetric_ok": bool(np.allclose(state.cov, state.cov.T, atol=_SYMMETRY_ATOL)),
        "uncertainty_ok": bool(nu_min >= 1.0 - _PHYSICALITY_SLACK),
        "min_symplectic_eigenvalue": nu_min,
    }


def g_function(x, base=None):
    """Entropy of a thermal mode with symplectic eigenvalue ``x``.

    g(x) = ((x+1)/2) log((x+1)/2) - ((x-1)/2) log((x-1)/2), with g(1) = 0.
    Defined for x >= 1; values within 1e-6 below 1 are clipped to 1.
    """
    b = resolve_base(base)
    x = np.asarray(x, dtype=float)
    if np.any(x < 1.0 - _ENTROPY_CLIP):
        raise ValidationError(f"g_function requires x >= 1, got min {x.min()}")
    x = np.maximum(x, 1.0)
    plus = (x + 1.0) / 2.0
    minus = (x - 1.0) / 2.0
    out = plus * np.log(plus)
    nz = minus > 0
    out = np.where(nz, out - minus * np.log(np.where(nz, minus, 1.0)), out)
    out = out / np.log(b)
    return float(out) if out.ndim == 0 else out


def von_neumann_entropy(state: GaussianState, base=None) -> float:
    """Von Neumann entropy, sum of g(nu_k) over the symplectic spectrum."""
    nu = symplectic_eigenvalues(state.cov)
    return float(np.sum(g_function(nu, base=base)))


def is_pure(state: GaussianState, tol: float = 1e-8) -> bool:
    """True when every symplectic eigenvalue is 1 to tolerance ``tol``."""
    return bool(np.max(np.abs(symplectic_eigenvalues(state.cov) - 1.0)) <= tol)


# ===========================================================================
# Williamson and Euler decompositions
# ===========================================================================


@dataclass(frozen=True)
class WilliamsonDecomposition:
    """V = S @ D @ S.T with S symplectic, D = diag(nu_1, nu_1, ..., nu_N, nu_N)."""

    symplectic: np.ndarray
    spectrum: np.ndarray

    @property
    def diagonal(self) -> np.ndarray:
        return np.diag(np.repeat(self.spectrum, 2))


@dataclass(frozen=True)
class EulerDecomposition:
    """S = K @ (direct sum of diag(e^-r, e^r)) @ L with K, L orthogonal symplectic."""

    passive_left: np.ndarray
    squeezings: np.ndarray
    passive_right: np.ndarray

    @property
    def diagonal(self) -> np.ndarray:
        d = np.empty(2 * self.squeezings.size)
        d[0::2] = np.exp(-self.squeezings)
        d[1::2] = np.exp(self.squeezings)
        return np.diag(d)


def _sqrtm_psd(a: np.ndarray) -> np.ndarray:
    """Symmetric PSD square root via eigendecomposition."""
    evals, evecs = la.eigh(a)
    if evals[0] < -1e-10 * max(1.0, abs(evals[-1])):
        raise ValidationError(f"matrix is not PSD (min eigenvalue {evals[0]})")
    return (evecs * np.sqrt(np.clip(evals, 0.0, None))) @ evecs.T


def _resymplectify(s: np.ndarray, omega: np.ndarray) -> np.ndarray:
    """One averaging step toward the symplectic manifold.

    Uses the identity S = -Omega @ S^-T @ Omega for exactly symplectic S.
    """
    return 0.5 * (s - omega @ la.inv(s).T @ omega)


def williamson(cov: np.ndarray) -> WilliamsonDecomposition:
    """Williamson normal form of a (strictly positive) covariance matrix.

    Builds S from the eigenvectors of the Hermitian matrix
    V^(1/2) (i Omega) V^(1/2), polishes with one resymplectification step,
    and keeps whichever candidate has the smaller reconstruction residual.

    Raises:
        NumericalError: if the relative residual ||S D S^T - V|| / ||V||
            exceeds 1e-9.
    """
    cov = np.asarray(cov, dtype=float)
    if cov.ndim != 2 or cov.shape[0] != cov.shape[1] or cov.shape[0] % 2:
        raise ValidationError(f"cov must be square with even dimension, got {cov.shape}")
    if not np.allclose(cov, cov.T, atol=_SYMMETRY_ATOL):
        raise ValidationError("cov is not symmetric")
    cov = 0.5 * (cov + cov.T)
    n = cov.shape[0] // 2
    omega = symplectic_form(n)

    evals_v, evecs_v = la.eigh(cov)
    if evals_v[0] <= 0:
        raise ValidationError("cov must be positive definite for williamson()")
    root = (evecs_v * np.sqrt(evals_v)) @ evecs_v.T
    m = root @ (1j * omega) @ root
    evals, evecs = la.eigh(m)  # ascending; spectrum is symmetric +/- nu
    nu = evals[n:]
    if nu[0] <= 0:
        raise NumericalError("symplectic spectrum not strictly positive")
    c = (root @ evecs[:, n:]) / np.sqrt(nu)
    s = np.empty((2 * n, 2 * n))
    s[:, 0::2] = np.sqrt(2.0) * c.real
    s[:, 1::2] = -np.sqrt(2.0) * c.imag

    d = np.diag(np.repeat(nu, 2))
    norm_v = la.norm(cov)

    def residual(cand):
        return la.norm(cand @ d @ cand.T - cov) / norm_v

    polished = _resymplectify(s, omega)
    res_raw, res_pol = residual(s), residual(polished)
    if res_pol < res_raw:
        s, best = polished, res_pol
    else:
        best = res_raw
    if best > _DECOMP_RTOL:
        raise NumericalError(
            f"williamson reconstruction residual {best:.3e} exceeds {_DECOMP_RTOL:.0e} "
            f"(cond(V) = {np.linalg.cond(cov):.3e})"
        )
    return WilliamsonDecomposition(symplectic=s, spectrum=np.asarray(nu))


def _symplectic_pairs_unit_eigenspace(basis: np.ndarray, omega: np.ndarray) -> np.ndarray:
    """Orthonormal symplectic pairs (v, -Omega v) spanning an Omega-invariant space."""
    cols = []
    work = basis.copy()
    while work.shape[1] > 0:
        v = work[:, 0]
        v = v / la.norm(v)
        w = -omega @ v
        # Project w back onto the working span to scrub round-off leakage.
        w = work @ (work.T @ w)
        w = w - v * (v @ w)
        norm_w = la.norm(w)
        if norm_w < 1e-8:
            raise NumericalError("failed to pair a passive direction in euler()")
        w = w / norm_w
        cols.extend([v, w])
        # Deflate: keep an orthonormal basis of the complement within work.
        proj = work - np.outer(v, v @ work) - np.outer(w, w @ work)
        q, r, _ = la.qr(proj, mode="economic", pivoting=True)
        keep = np.abs(np.diag(r)) > 1e-8
        work = q[:, keep]
    return np.column_stack(cols) if cols else np.zeros((omega.shape[0], 0))


def euler(s: np.ndarray) -> EulerDecomposition:
    """Euler (Bloch-Messiah) decomposition of a symplectic matrix.

    Returns K, r, L with S = K @ (direct sum of diag(e^-r_k, e^r_k)) @ L,
    where K and L are orthogonal symplectic and r_k >= 0 sorted descending.

    Raises:
        NumericalError: if the relative reconstruction residual exceeds 1e-9.
    """
    s = np.asarray(s, dtype=float)
    if s.ndim != 2 or s.shape[0] != s.shape[1] or s.shape[0] % 2:
        raise ValidationError(f"S must be square with even dimension, got {s.shape}")
    n = s.shape[0] // 2
    omega = symplectic_form(n)
    if not is_symplectic(s, atol=1e-8):
        raise ValidationError("S is not symplectic")

    # Polar part: S = O1 @ P with O1 orthogonal symplectic, P = (S^T S)^(1/2).
    o1, p = la.polar(s, side="right")

    # Diagonalize P: eigenvalues pair as (mu, 1/mu) with partners (v, -Omega v).
    # Classify by symmetric counting so a borderline pair is never split: the
    # k most-contracted directions are squeezed, the middle block is passive.
    evals, evecs = la.eigh(p)  # ascending
    log_mu = np.log(evals)
    k = min(int(np.sum(log_mu < -1e-10)), int(np.sum(log_mu > 1e-10)))

    pair_cols = []
    for j in range(k):  # most negative log first => r sorted descending
        v = evecs[:, j]
        pair_cols.extend([v, -omega @ v])
    r_vals = -log_mu[:k]
    if k < n:
        unit = _symplectic_pairs_unit_eigenspace(evecs[:, k : 2 * n - k], omega)
        for j in range(unit.shape[1]):
            pair_cols.append(unit[:, j])
    c = np.column_stack(pair_cols)
    r_full = np.concatenate([r_vals, np.zeros(n - k)])

    k_mat = o1 @ c
    l_mat = c.T
    lam = np.empty(2 * n)
    lam[0::2] = np.exp(-r_full)
    lam[1::2] = np.exp(r_full)
    recon = k_mat @ (lam[:, None] * l_mat)
    res = la.norm(recon - s) / max(la.norm(s), 1.0)
    if res > _DECOMP_RTOL:
        raise NumericalError(
            f"euler reconstruction residual {res:.3e} exceeds {_DECOMP_RTOL:.0e}"
        )
    return EulerDecomposition(
        passive_left=k_mat, squeezings=r_full, passive_right=l_mat
    )


def purify(state: GaussianState) -> GaussianState:
    """Purification: append N reference modes so the 2N-mode state is pure.

    With V = S D S^T (Williamson), the output covariance is
    [[V, S C], [C S^T, D]] with C the direct sum of sqrt(nu_k^2 - 1) Z.
    Tracing out the reference modes returns the original state exactly.
    """
    w = williamson(state.cov)
    n = state.num_modes
    c = np.zeros((2 * n, 2 * n))
    for k, nu in enumerate(w.spectrum):
        c[2 * k : 2 * k + 2, 2 * k : 2 * k + 2] = np.sqrt(max(nu**2 - 1.0, 0.0)) * _Z
    sc = w.symplectic @ c
    cov = np.block([[state.cov, sc], [sc.T, w.diagonal]])
    mean = np.concatenate([state.mean, np.zeros(2 * n)])
    return GaussianState(mean, cov)


# ===========================================================================
# Mode-wise composition
# ===========================================================================


def tensor(*states: GaussianState) -> GaussianState:
    """Tensor product: block-diagonal covariance, concatenated means."""
    if not states:
        raise ValidationError("tensor needs at least one state")
    return GaussianState(
        np.concatenate([s.mean for s in states]),
        la.block_diag(*(s.cov for s in states)),
    )


def partial_trace(state: GaussianState, keep) -> GaussianState:
    """Reduced state on the listed modes (in the order given)."""
    idx = state.mode_indices(keep)
    if idx.size == 0:
        raise ValidationError("keep must name at least one mode")
    modes = np.atleast_1d(np.asarray(keep, dtype=int))
    if np.unique(modes).size != modes.size:
        raise ValidationError(f"keep contains duplicates: {keep}")
    return GaussianState(state.mean[idx], state.cov[np.ix_(idx, idx)])


def permute_modes(state: GaussianState, order) -> GaussianState:
    """Reorder modes; ``order[i]`` is the old index placed at new position i."""
    order = np.atleast_1d(np.asarray(order, dtype=int))
    if sorted(order.tolist()) != list(range(state.num_modes)):
        raise ValidationError(f"order must be a permutation of all modes, got {order}")
    idx = state.mode_indices(order)
    return GaussianState(state.mean[idx], state.cov[np.ix_(idx, idx)])


# ===========================================================================
# Phase-space functions and serialization
# ===========================================================================


def wigner_at(state: GaussianState, point) -> float:
    """Wigner function W(x) at a phase-space point (length-2N vector)."""
    x = np.asarray(point, dtype=float)
    if x.shape != state.mean.shape:
        raise ValidationError(
            f"point has shape {x.shape}, expected {state.mean.shape}"
        )
    delta = x - state.mean
    n = state.num_modes
    det = la.det(state.cov)
    if det <= 0:
        raise ValidationError("cov must be positive definite for wigner_at")
    quad = delta @ la.solve(state.cov, delta, assume_a="sym")
    return float(np.exp(-0.5 * quad) / ((2.0 * np.pi) ** n * np.sqrt(det)))


def char_fn_at(state: GaussianState, xi) -> complex:
    """Characteristic function chi(xi) = exp(-xi^T Omega V Omega^T xi / 2 - i (Omega mean)^T xi)."""
    xi = np.asarray(xi, dtype=float)
    if xi.shape != state.mean.shape:
        raise ValidationError(f"xi has shape {xi.shape}, expected {state.mean.shape}")
    omega = symplectic_form(state.num_modes)
    quad = xi @ (omega @ state.cov @ omega.T) @ xi
    return complex(np.exp(-0.5 * quad - 1j * (omega @ state.mean) @ xi))


def state_to_dict(state: GaussianState) -> dict:
    """JSON-ready dict: {"hbar": 2, "mean": [...], "cov": [[...]]}."""
    return {
        "hbar": HBAR,
        "mean": state.mean.tolist(),
        "cov": state.cov.tolist(),
    }


def state_from_dict(payload: dict) -> GaussianState:
    """Inverse of :func:`state_to_dict`; rejects hbar != 2."""
    if not isinstance(payload, dict):
        raise ValidationError("state payload must be a JSON object")
    hbar = payload.get("hbar", HBAR)
    if not np.isclose(float(hbar), HBAR):
        raise ValidationError(f"hbar: this toolkit fixes hbar = 2, got {hbar}")
    if "mean" not in payload or "cov" not in payload:
        raise ValidationError("state payload requires 'mean' and 'cov'")
    return GaussianState(np.asarray(payload["mean"], dtype=float),
                         np.asarray(payload["cov"], dtype=float))


def state_to_json(state: GaussianState) -> str:
    return json.dumps(state_to_dict(state))


def state_from_json(text: str) -> GaussianState:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON for state: {exc}") from exc
    return state_from_dict(payload)
