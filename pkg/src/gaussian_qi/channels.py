"""One-mode Gaussian channels.

Validation, canonical classification, Stinespring-type dilations, capacity
formulas, and the channel-discrimination applications (target detection in
bright thermal noise and readout of reflective memory cells).

A channel acts on moments as ``x -> T x + d`` and ``V -> T V T^T + N``.
Complete positivity for one mode requires ``N = N^T >= 0`` and
``det N >= (det T - 1)^2``.
"""

from __future__ import annotations

import dataclasses
import math
import warnings

import numpy as np
import scipy.integrate
import scipy.linalg as la

from . import config
from .errors import ValidationError
from .phase_space import (
    GaussianState,
    g_function,
    partial_trace,
    symplectic_eigenvalues,
    tensor,
    thermal_state,
    vacuum_state,
    von_neumann_entropy,
)
from .unitaries import apply_symplectic

__all__ = [
    "GaussianChannel",
    "CanonicalForm",
    "Dilation",
    "identity_channel",
    "canonical_channel",
    "loss_channel",
    "apply_channel",
    "invariants_of",
    "classify",
    "dilate",
    "degradability",
    "capacities",
    "broadband_capacity",
    "coherent_info",
    "illumination_error_bounds",
    "reading_error",
    "channel_to_dict",
    "channel_from_dict",
]

_I2 = np.eye(2)
_Z = np.diag([1.0, -1.0])
_CLASS_LABELS = ("A1", "A2", "B1", "B2", "B2_Id", "C_Loss", "C_Amp", "D")


@dataclasses.dataclass(frozen=True)
class GaussianChannel:
    """One-mode Gaussian channel ``(T, N, d)``.

    ``t`` is the 2x2 transmission matrix, ``n`` the 2x2 symmetric noise
    matrix and ``d`` an optional displacement (defaults to zero).
    """

    t: np.ndarray
    n: np.ndarray
    d: np.ndarray = None

    def __post_init__(self):
        t = np.atleast_2d(np.asarray(self.t, dtype=float))
        n = np.atleast_2d(np.asarray(self.n, dtype=float))
        d = np.zeros(2) if self.d is None else np.asarray(self.d, dtype=float).ravel()
        if t.shape != (2, 2) or n.shape != (2, 2):
            raise ValidationError(
                f"t and n must be 2x2, got {t.shape} and {n.shape}"
            )
        if d.shape != (2,):
            raise ValidationError(f"d must be a 2-vector, got shape {d.shape}")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(n)) and np.all(np.isfinite(d))):
            raise ValidationError("channel matrices must be finite")
        if not np.allclose(n, n.T, atol=1e-8):
            raise ValidationError("noise matrix n must be symmetric")
        n = 0.5 * (n + n.T)
        scale = max(1.0, float(np.max(np.abs(n))))
        if np.min(la.eigvalsh(n)) < -1e-10 * scale:
            raise ValidationError("noise matrix n must be positive semidefinite")
        lhs = np.linalg.det(n)
        rhs = (np.linalg.det(t) - 1.0) ** 2
        if lhs < rhs - 1e-9 * max(1.0, abs(rhs)):
            raise ValidationError(
                f"channel is not completely positive: det N = {lhs:.6g} < "
                f"(det T - 1)^2 = {rhs:.6g}"
            )
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "d", d)

    @property
    def transmissivity(self) -> float:
        """Generalized transmissivity ``tau = det T``."""
        return float(np.linalg.det(self.t))


@dataclasses.dataclass(frozen=True)
class CanonicalForm:
    """Classification of a channel: invariants plus the Table-of-forms label."""

    class_label: str
    tau: float
    rank: int
    n_bar: float


def identity_channel() -> GaussianChannel:
    return GaussianChannel(t=_I2, n=np.zeros((2, 2)))


def channel_to_dict(channel: GaussianChannel) -> dict:
    return {
        "T": channel.t.tolist(),
        "N": channel.n.tolist(),
        "d": channel.d.tolist(),
    }


def channel_from_dict(data: dict) -> GaussianChannel:
    try:
        t = data["T"]
        n = data["N"]
    except KeyError as exc:
        raise ValidationError(f"channel dict missing field {exc}") from exc
    return GaussianChannel(t=t, n=n, d=data.get("d"))


# ---------------------------------------------------------------------------
# Application and invariants
# ---------------------------------------------------------------------------


def apply_channel(channel: GaussianChannel, state: GaussianState, mode=0) -> GaussianState:
    """Send one mode of ``state`` through the channel (identity elsewhere).

    Cross-correlations with the other modes are updated by the same linear
    map: the full-register transmission is ``T_full = I ⊕ T ⊕ I``.
    """
    n_modes = state.num_modes
    if not 0 <= mode < n_modes:
        raise ValidationError(f"mode {mode} out of range for {n_modes} modes")
    t_full = np.eye(2 * n_modes)
    n_full = np.zeros((2 * n_modes, 2 * n_modes))
    d_full = np.zeros(2 * n_modes)
    sl = slice(2 * mode, 2 * mode + 2)
    t_full[sl, sl] = channel.t
    n_full[sl, sl] = channel.n
    d_full[2 * mode : 2 * mode + 2] = channel.d
    return GaussianState(
        mean=t_full @ state.mean + d_full,
        cov=t_full @ state.cov @ t_full.T + n_full,
    )


def _numerical_rank(m) -> int:
    s = la.svdvals(m)
    smax = float(s.max(initial=0.0))
    if smax == 0.0:
        return 0
    return int(np.count_nonzero(s >= 1e-10 * smax))


def invariants_of(channel: GaussianChannel) -> dict:
    """Unitarily invariant data: ``tau = det T``, rank, and thermal number.

    ``rank`` is ``min(rank T, rank N)``.  The thermal number uses the
    ``sqrt(det N)`` branch at ``tau = 1`` (within 1e-12) and
    ``sqrt(det N) / (2|1 - tau|) - 1/2`` otherwise.
    """
    tau = channel.transmissivity
    rank = min(_numerical_rank(channel.t), _numerical_rank(channel.n))
    det_n = max(np.linalg.det(channel.n), 0.0)
    if abs(1.0 - tau) < 1e-12:
        n_bar = math.sqrt(det_n)
    else:
        n_bar = math.sqrt(det_n) / (2.0 * abs(1.0 - tau)) - 0.5
    # CP-valid channels cannot go below n_bar = 0; clip the numerical dust.
    n_bar = max(n_bar, 0.0)
    return {"tau": tau, "rank": rank, "n_bar": n_bar}


def classify(channel: GaussianChannel) -> CanonicalForm:
    """Canonical class of the channel (stable under unitary dressing)."""
    inv = invariants_of(channel)
    tau, rank, n_bar = inv["tau"], inv["rank"], inv["n_bar"]
    if abs(tau) < 1e-12:
        label = "A1" if _numerical_rank(channel.t) == 0 else "A2"
    elif abs(tau - 1.0) < 1e-12:
        rank_n = _numerical_rank(channel.n)
        label = {0: "B2_Id", 1: "B1"}.get(rank_n, "B2")
    elif 0.0 < tau < 1.0:
        label = "C_Loss"
    elif tau > 1.0:
        label = "C_Amp"
    else:
        label = "D"
    return CanonicalForm(class_label=label, tau=tau, rank=rank, n_bar=n_bar)


def canonical_channel(class_label, tau=None, n_bar=0.0) -> GaussianChannel:
    """Construct the canonical representative of a class.

    ``tau`` is required (and meaningful) only for the C and D classes;
    ``n_bar`` is the thermal number for the classes that carry one.
    """
    if n_bar < 0:
        raise ValidationError(f"n_bar must be >= 0, got {n_bar}")
    nu = 2.0 * n_bar + 1.0
    zeros = np.zeros((2, 2))
    if class_label == "A1":
        return GaussianChannel(t=zeros, n=nu * _I2)
    if class_label == "A2":
        return GaussianChannel(t=0.5 * (_I2 + _Z), n=nu * _I2)
    if class_label == "B1":
        if n_bar != 0.0:
            raise ValidationError("class B1 has no thermal number")
        return GaussianChannel(t=_I2, n=0.5 * (_I2 - _Z))
    if class_label == "B2":
        if n_bar <= 0.0:
            raise ValidationError("class B2 needs n_bar > 0 (n_bar = 0 is B2_Id)")
        return GaussianChannel(t=_I2, n=n_bar * _I2)
    if class_label == "B2_Id":
        if n_bar != 0.0:
            raise ValidationError("the identity class has no thermal number")
        return identity_channel()
    if class_label == "C_Loss":
        if tau is None or not 0.0 < tau < 1.0:
            raise ValidationError(f"C_Loss needs 0 < tau < 1, got {tau}")
        return GaussianChannel(t=math.sqrt(tau) * _I2, n=(1.0 - tau) * nu * _I2)
    if class_label == "C_Amp":
        if tau is None or tau <= 1.0:
            raise ValidationError(f"C_Amp needs tau > 1, got {tau}")
        return GaussianChannel(t=math.sqrt(tau) * _I2, n=(tau - 1.0) * nu * _I2)
    if class_label == "D":
        if tau is None or tau >= 0.0:
            raise ValidationError(f"class D needs tau < 0, got {tau}")
        return GaussianChannel(
            t=math.sqrt(-tau) * _Z, n=(1.0 - tau) * nu * _I2
        )
    raise ValidationError(
        f"unknown class label {class_label!r}; expected one of {_CLASS_LABELS}"
    )


def loss_channel(tau, n_bar=0.0) -> GaussianChannel:
    """Attenuation with transmissivity ``tau`` in [0, 1] and thermal noise.

    Unlike :func:`canonical_channel` this accepts the boundary values
    ``tau = 0`` (complete replacement) and ``tau = 1`` (identity at
    ``n_bar = 0``), which is convenient for parameter sweeps.
    """
    if not 0.0 <= tau <= 1.0:
        raise ValidationError(f"loss channel needs 0 <= tau <= 1, got {tau}")
    if n_bar < 0:
        raise ValidationError(f"n_bar must be >= 0, got {n_bar}")
    nu = 2.0 * n_bar + 1.0
    return GaussianChannel(
        t=math.sqrt(tau) * _I2, n=(1.0 - tau) * nu * _I2
    )


# ---------------------------------------------------------------------------
# Dilations
# ---------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class Dilation:
    """Unitary dilation of a canonical form.

    ``coupling`` is a 4x4 symplectic acting on (system, environment-1); the
    two-mode ``environment`` purifies the thermal environment state, with
    its second mode a spectator.  Tracing the environment out of the dilated
    circuit reproduces the channel.
    """

    coupling: np.ndarray
    environment: GaussianState
    displacement: np.ndarray

    def _dilated(self, state: GaussianState) -> GaussianState:
        if state.num_modes != 1:
            raise ValidationError("dilation applies to one-mode states")
        reg = tensor(state, self.environment)
        reg = apply_symplectic(reg, self.coupling, modes=(0, 1))
        mean = reg.mean.copy()
        mean[:2] += self.displacement
        return GaussianState(mean=mean, cov=reg.cov)

    def apply(self, state: GaussianState) -> GaussianState:
        """Channel output: dilate, then trace out the environment."""
        return partial_trace(self._dilated(state), keep=[0])

    def complementary(self, state: GaussianState) -> GaussianState:
        """Environment output (both environment modes)."""
        return partial_trace(self._dilated(state), keep=[1, 2])


def _coupling_block(label, tau):
    if label == "A1":
        return np.block([[np.zeros((2, 2)), _I2], [_I2, np.zeros((2, 2))]])
    if label == "A2":
        return np.block([[0.5 * (_I2 + _Z), _I2], [_I2, 0.5 * (_Z - _I2)]])
    if label == "B1":
        raw = np.block([[_I2, 0.5 * (_I2 + _Z)], [0.5 * (_I2 - _Z), -_I2]])
        rot = np.array([[0.0, 1.0], [-1.0, 0.0]])
        conj = la.block_diag(rot, _I2)
        return conj @ raw @ conj.T
    if label == "B2_Id":
        return np.eye(4)
    if label == "C_Loss":
        c, s = math.sqrt(tau), math.sqrt(1.0 - tau)
        return np.block([[c * _I2, s * _I2], [-s * _I2, c * _I2]])
    if label == "C_Amp":
        c, s = math.sqrt(tau), math.sqrt(tau - 1.0)
        return np.block([[c * _I2, s * _Z], [s * _Z, c * _I2]])
    if label == "D":
        c, s = math.sqrt(-tau), math.sqrt(1.0 - tau)
        return np.block([[c * _Z, s * _I2], [-s * _I2, -c * _Z]])
    raise ValidationError(
        "class B2 has no simple two-mode dilation; it is unsupported"
    )


def dilate(channel: GaussianChannel) -> Dilation:
    """Dilation of the channel's canonical form.

    The environment is the two-mode purification of a thermal state with
    symplectic eigenvalue ``nu = 2 n_bar + 1`` (for ``n_bar = 0`` it
    degenerates to a two-mode vacuum and the coupling alone realizes the
    channel).  Class B2 is rejected.
    """
    form = classify(channel)
    block = _coupling_block(form.class_label, form.tau)
    nu = 2.0 * form.n_bar + 1.0
    c = math.sqrt(max(nu * nu - 1.0, 0.0))
    env_cov = np.block(
        [[nu * _I2, c * _Z], [c * _Z, nu * _I2]]
    )
    env = GaussianState(mean=np.zeros(4), cov=env_cov)
    return Dilation(coupling=block, environment=env, displacement=channel.d.copy())


# ---------------------------------------------------------------------------
# Degradability and capacities
# ---------------------------------------------------------------------------


def degradability(channel: GaussianChannel) -> dict:
    """Degradability verdicts: True/False where known, None where open.

    Every one-mode Gaussian channel with ``tau <= 1/2`` is antidegradable;
    pure-loss channels with ``tau >= 1/2`` and ideal amplifiers are
    degradable.
    """
    form = classify(channel)
    tau, n_bar = form.tau, form.n_bar
    pure = n_bar <= 1e-12
    if tau <= 0.5:
        return {"antidegradable": True, "degradable": None}
    if pure and (form.class_label == "C_Amp" or 0.5 <= tau <= 1.0):
        return {"antidegradable": False, "degradable": True}
    if pure and form.class_label == "B2_Id":
        return {"antidegradable": False, "degradable": True}
    return {"antidegradable": None, "degradable": None}


def _entry(value, status):
    return {"value": float(value), "status": status}


def capacities(channel: GaussianChannel, m_bar=None, base=None) -> dict:
    """Capacity record for the channel's canonical form.

    Always contains ``Q_lower`` and ``E_R`` when ``tau != 1`` (they have no
    closed form at ``tau = 1``).  With an input photon budget ``m_bar`` the
    classical-capacity fields that apply to the form are added:
    ``C_pure_loss`` and ``C_E`` (exact, pure-loss/identity only) and
    ``C_lower`` (coherent-state lower bound for lossy channels, believed
    tight).  Each field carries a ``status`` tag.
    """
    form = classify(channel)
    tau, n_bar = form.tau, form.n_bar
    nu = 2.0 * n_bar + 1.0
    pure = n_bar <= 1e-12
    rec = {"form": form}
    if abs(tau - 1.0) >= 1e-12:
        if tau == 0.0:
            q = 0.0
        else:
            q = max(
                0.0,
                config.log(abs(tau / (1.0 - tau)), base) - g_function(nu, base=base),
            )
        deg = degradability(channel)
        q_status = "exact" if (deg["degradable"] or deg["antidegradable"]) else "lower_bound"
        rec["Q_lower"] = _entry(q, q_status)
        e_r = max(
            0.0,
            config.log(abs(1.0 / (1.0 - tau)), base) - g_function(nu, base=base),
        )
        rec["E_R"] = _entry(e_r, "exact")
    if m_bar is not None:
        if m_bar < 0:
            raise ValidationError(f"m_bar must be >= 0, got {m_bar}")
        mu = 2.0 * m_bar + 1.0
        if form.class_label == "C_Loss":
            c_low = g_function(tau * mu + (1.0 - tau) * nu, base=base) - g_function(
                tau + (1.0 - tau) * nu, base=base
            )
            rec["C_lower"] = _entry(c_low, "conjectured_tight")
            if pure:
                rec["C_pure_loss"] = _entry(
                    g_function(tau * mu + 1.0 - tau, base=base), "exact"
                )
                rec["C_E"] = _entry(
                    _entanglement_assisted_pure_loss(tau, m_bar, base), "exact"
                )
        elif form.class_label == "B2_Id":
            rec["C_pure_loss"] = _entry(g_function(mu, base=base), "exact")
            rec["C_E"] = _entry(2.0 * g_function(mu, base=base), "exact")
    return rec


def _entanglement_assisted_pure_loss(tau, m_bar, base):
    mu = 2.0 * m_bar + 1.0
    disc = (1.0 + m_bar * (tau + 1.0)) ** 2 - 4.0 * tau * m_bar * (m_bar + 1.0)
    d = math.sqrt(max(disc, 0.0))
    lam_minus = d - m_bar * (1.0 - tau)
    lam_plus = d + m_bar * (1.0 - tau)
    return (
        g_function(mu, base=base)
        + g_function(tau * mu + 1.0 - tau, base=base)
        - g_function(lam_minus, base=base)
        - g_function(lam_plus, base=base)
    )


def broadband_capacity(y0, omega_c_t=2.0 * math.pi, base=None) -> float:
    """Far-field broadband capacity of a pure-loss line.

    Evaluates ``(omega_c_t / (2 pi y0)) * Int_0^y0 g[(e^{1/x} - 1)^{-1}] dx``
    by adaptive quadrature, where the integrand argument is the Planck
    photon number at scaled frequency ``1/x``.  ``y0`` encodes the energy
    constraint and is taken directly as input; ``omega_c_t`` is the product
    of the cutoff frequency and the transmission time.
    """
    if y0 <= 0:
        raise ValidationError(f"y0 must be > 0, got {y0}")

    def integrand(x):
        if x <= 0.0:
            return 0.0
        expo = 1.0 / x
        if expo > 700.0:
            return 0.0
        n_planck = 1.0 / math.expm1(expo)
        return g_function(2.0 * n_planck + 1.0, base=base)

    value, _ = scipy.integrate.quad(integrand, 0.0, y0, limit=200)
    return omega_c_t / (2.0 * math.pi * y0) * value


def coherent_info(channel: GaussianChannel, mu, base=None) -> dict:
    """Coherent and reverse coherent information for an EPR input.

    Sends arm B of a two-mode squeezed state with variance ``mu`` through
    the channel and returns ``J = S(B) - S(RB)`` and
    ``J_R = S(R) - S(RB)``.
    """
    if mu < 1.0:
        raise ValidationError(f"mu must be >= 1, got {mu}")
    c = math.sqrt(mu * mu - 1.0)
    cov = np.block([[mu * _I2, c * _Z], [c * _Z, mu * _I2]])
    source = GaussianState(mean=np.zeros(4), cov=cov)
    out = apply_channel(channel, source, mode=1)
    s_joint = von_neumann_entropy(out, base=base)
    s_b = von_neumann_entropy(partial_trace(out, keep=[1]), base=base)
    s_r = von_neumann_entropy(partial_trace(out, keep=[0]), base=base)
    return {"J": s_b - s_joint, "J_R": s_r - s_joint}


# ---------------------------------------------------------------------------
# Channel discrimination: illumination and reading
# ---------------------------------------------------------------------------


def _epr_probe(m_bar) -> GaussianState:
    nu = 2.0 * m_bar + 1.0
    c = math.sqrt(max(nu * nu - 1.0, 0.0))
    cov = np.block([[nu * _I2, c * _Z], [c * _Z, nu * _I2]])
    return GaussianState(mean=np.zeros(4), cov=cov)


def _coherent_probe(m_bar) -> GaussianState:
    from .phase_space import coherent_state

    return coherent_state(math.sqrt(m_bar))


def illumination_error_bounds(num_copies, kappa, n_bar, m_bar) -> dict:
    """Target-detection error bounds for EPR and coherent transmitters.

    The target region either replaces the signal with a thermal background
    of ``n_bar`` photons (absent) or reflects a fraction ``kappa`` of it
    back over the same background (present).  Returns the M-copy Chernoff
    bounds for both transmitters, the numerically computed error exponents,
    their ratio, and the asymptotic estimates ``kappa m_bar / n_bar`` and
    ``kappa m_bar / (4 n_bar)`` valid for ``kappa << 1``, ``n_bar >> 1``
    and ``m_bar << 1``.
    """
    from .discrimination import multicopy_error

    if not 0.0 <= kappa < 1.0:
        raise ValidationError(f"kappa must be in [0, 1), got {kappa}")
    if n_bar <= 0 or m_bar < 0:
        raise ValidationError("need n_bar > 0 and m_bar >= 0")
    if num_copies < 1:
        raise ValidationError(f"num_copies must be >= 1, got {num_copies}")
    if kappa > 0.1 or n_bar < 10.0 or m_bar > 0.1:
        warnings.warn(
            "outside the kappa << 1, n_bar >> 1, m_bar << 1 regime; the "
            "asymptotic exponents are unreliable there",
            stacklevel=2,
        )
    absent = GaussianChannel(t=np.zeros((2, 2)), n=(2.0 * n_bar + 1.0) * _I2)
    present = GaussianChannel(
        t=math.sqrt(kappa) * _I2, n=(2.0 * n_bar + 1.0 - kappa) * _I2
    )
    results = {}
    for name, probe, signal_mode in (
        ("epr", _epr_probe(m_bar), 0),
        ("coherent", _coherent_probe(m_bar), 0),
    ):
        sigma0 = apply_channel(absent, probe, mode=signal_mode)
        sigma1 = apply_channel(present, probe, mode=signal_mode)
        rec = multicopy_error(sigma0, sigma1, copies=num_copies)
        results[f"p_{name}"] = rec["p_error"]
        results[f"kappa_{name}"] = rec["kappa"]
    ratio = (
        results["kappa_epr"] / results["kappa_coherent"]
        if results["kappa_coherent"] > 0
        else math.inf if results["kappa_epr"] > 0 else 1.0
    )
    results["exponent_ratio"] = ratio
    results["asymptotic_kappa_epr"] = kappa * m_bar / n_bar
    results["asymptotic_kappa_coherent"] = kappa * m_bar / (4.0 * n_bar)
    results["num_copies"] = num_copies
    return results


def reading_error(kappa0, kappa1, n_bar, m_bar, num_copies=1, transmitter="epr", base=None) -> dict:
    """Readout error bound for a two-reflectivity memory cell.

    The cell applies a lossy channel of reflectivity ``kappa0`` or
    ``kappa1`` (equal thermal number ``n_bar``); the transmitter irradiates
    ``m_bar`` photons per signal mode, either as one arm of an EPR pair
    (``"epr"``) or as a coherent state (``"coherent"``).  Returns the
    M-copy Chernoff bound and the information retrieved per cell,
    ``1 - h2(p_err)``, in the configured log base.
    """
    from .discrimination import binary_entropy, multicopy_error

    for name, k in (("kappa0", kappa0), ("kappa1", kappa1)):
        if not 0.0 < k <= 1.0:
            raise ValidationError(f"{name} must be in (0, 1], got {k}")
    if kappa0 == kappa1:
        raise ValidationError("degenerate cell: kappa0 == kappa1")
    if transmitter not in ("epr", "coherent"):
        raise ValidationError(f"unknown transmitter {transmitter!r}")
    probe = _epr_probe(m_bar) if transmitter == "epr" else _coherent_probe(m_bar)
    outs = []
    for k in (kappa0, kappa1):
        nu = 2.0 * n_bar + 1.0
        ch = GaussianChannel(t=math.sqrt(k) * _I2, n=(1.0 - k) * nu * _I2)
        outs.append(apply_channel(ch, probe, mode=0))
    rec = multicopy_error(outs[0], outs[1], copies=num_copies)
    p = rec["p_error"]
    return {
        "p_error": p,
        "kappa": rec["kappa"],
        "information_per_cell": 1.0 - binary_entropy(p, base=base),
        "num_copies": num_copies,
        "transmitter": transmitter,
    }
