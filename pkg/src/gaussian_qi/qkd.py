"""Secret-key rates for one-way Gaussian protocols on thermal-loss channels.

The protocol family is fixed by the signal alphabet (coherent or squeezed
states), Bob's detection (homodyne or heterodyne) and the reconciliation
direction. Security is evaluated against collective attacks in the
entanglement-based picture: Eve holds a purification of the shared state,
so her Holevo information follows from two symplectic spectra. An explicit
entangling-cloner construction of Eve's modes is provided as an independent
cross-check, alongside postselection rates, security thresholds, a
finite-size shell and the source parameters of the entanglement-based
representation.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq
from scipy.special import expit, roots_hermite, xlogy

from . import config
from .errors import NumericalError, ValidationError
from .measurements import heterodyne, homodyne
from .phase_space import (
    GaussianState,
    epr_state,
    partial_trace,
    symplectic_eigenvalues,
    tensor,
    vacuum_state,
    von_neumann_entropy,
)
from .unitaries import apply_symplectic, beam_splitter

__all__ = [
    "QkdScenario",
    "KeyRateResult",
    "MutualInformation",
    "scenario_from_dict",
    "scenario_to_dict",
    "shared_cm",
    "mutual_information",
    "eve_holevo",
    "entangling_cloner_holevo",
    "key_rate",
    "security_threshold",
    "postselection_rate",
    "finite_size_rate",
    "eb_source_params",
]

_STATES = ("coherent", "squeezed")
_DETECTIONS = ("homodyne", "heterodyne")
_RECONCILIATIONS = ("direct", "reverse")


@dataclass(frozen=True)
class QkdScenario:
    """Parameters of a one-way Gaussian protocol over a noisy lossy channel.

    ``v`` is the modulation variance, i.e. the quadrature variance of the
    equivalent two-mode squeezed source (v = 1 means no modulation).
    ``tau`` is the channel transmissivity and ``chi`` the excess noise
    referred to the input: a thermal environment with mean photon number
    n gives chi = 2 n (1 - tau) / tau. ``sifting`` defaults to 1 when Bob
    heterodynes (no data are discarded) and 1/2 when he switches between
    homodyne quadratures. ``beta`` is the reconciliation efficiency.
    ``n_env`` may be given redundantly; it is checked against ``chi``.
    """

    states: str
    detection: str
    reconciliation: str
    v: float
    tau: float
    chi: float = 0.0
    sifting: float | None = None
    beta: float = 1.0
    n_env: float | None = None

    def __post_init__(self):
        if self.states not in _STATES:
            raise ValidationError(f"states must be one of {_STATES}, got {self.states!r}")
        if self.detection not in _DETECTIONS:
            raise ValidationError(
                f"detection must be one of {_DETECTIONS}, got {self.detection!r}"
            )
        if self.reconciliation not in _RECONCILIATIONS:
            raise ValidationError(
                f"reconciliation must be one of {_RECONCILIATIONS}, "
                f"got {self.reconciliation!r}"
            )
        for name in ("v", "tau", "chi", "beta"):
            value = getattr(self, name)
            if not math.isfinite(float(value)):
                raise ValidationError(f"{name} must be finite, got {value}")
            object.__setattr__(self, name, float(value))
        if self.v < 1.0:
            raise ValidationError(f"v must be >= 1 (vacuum unit), got {self.v}")
        if not 0.0 < self.tau <= 1.0:
            raise ValidationError(f"tau must be in (0, 1], got {self.tau}")
        if self.chi < 0.0:
            raise ValidationError(f"chi must be >= 0, got {self.chi}")
        if self.sifting is not None:
            sifting = float(self.sifting)
            if not 0.0 < sifting <= 1.0:
                raise ValidationError(f"sifting must be in (0, 1], got {self.sifting}")
            object.__setattr__(self, "sifting", sifting)
        if not 0.0 <= self.beta <= 1.0:
            raise ValidationError(f"beta must be in [0, 1], got {self.beta}")
        if self.n_env is not None:
            n_env = float(self.n_env)
            if n_env < 0.0:
                raise ValidationError(f"n_env must be >= 0, got {self.n_env}")
            implied = 2.0 * n_env * (1.0 - self.tau) / self.tau
            if abs(implied - self.chi) > 1e-9 * max(1.0, self.chi):
                raise ValidationError(
                    f"n_env={n_env} implies chi={implied}, inconsistent with "
                    f"chi={self.chi}"
                )
            object.__setattr__(self, "n_env", n_env)

    @property
    def phi(self) -> float:
        """Sifting factor: the explicit value, or the protocol default."""
        if self.sifting is not None:
            return self.sifting
        return 1.0 if self.detection == "heterodyne" else 0.5

    @property
    def environment_nbar(self) -> float:
        """Mean photon number of the thermal environment realizing ``chi``."""
        if self.n_env is not None:
            return self.n_env
        if self.tau == 1.0:
            if self.chi > 0.0:
                raise ValidationError(
                    "chi > 0 at tau = 1 has no finite environment photon number"
                )
            return 0.0
        return self.chi * self.tau / (2.0 * (1.0 - self.tau))


@dataclass(frozen=True)
class MutualInformation:
    """Alice-Bob mutual information, by two routes.

    ``derived`` conditions the shared Gaussian state on the sending side's
    measurement and compares Bob's outcome variance before and after; it is
    the value used in key rates. ``printed`` is the compact closed form
    (w/2) log[(V + X) / (X + lambda/V)] with X the total input-referred
    noise; it omits the detection vacuum unit, so for heterodyne scenarios
    the two differ and the gap is visible here rather than hidden.
    """

    derived: float
    printed: float

    def __float__(self) -> float:
        return self.derived


@dataclass(frozen=True)
class KeyRateResult:
    """Asymptotic collective-attack rate K = phi (beta I_ab - S_eve)."""

    i_ab: float
    s_eve: float
    key: float
    diagnostics: dict


def scenario_to_dict(scenario: QkdScenario) -> dict:
    """JSON-ready mapping for a scenario."""
    payload = {
        "states": scenario.states,
        "detection": scenario.detection,
        "reconciliation": scenario.reconciliation,
        "V": scenario.v,
        "tau": scenario.tau,
        "chi": scenario.chi,
        "beta": scenario.beta,
    }
    if scenario.sifting is not None:
        payload["sifting"] = scenario.sifting
    if scenario.n_env is not None:
        payload["n_env"] = scenario.n_env
    return payload


def scenario_from_dict(payload: dict) -> QkdScenario:
    """Build a scenario from a mapping with keys as in ``scenario_to_dict``."""
    required = {"states", "detection", "reconciliation", "V", "tau", "chi"}
    optional = {"sifting", "beta", "n_env"}
    missing = required - payload.keys()
    if missing:
        raise ValidationError(f"scenario is missing fields: {sorted(missing)}")
    unknown = payload.keys() - required - optional
    if unknown:
        raise ValidationError(f"scenario has unknown fields: {sorted(unknown)}")
    return QkdScenario(
        states=payload["states"],
        detection=payload["detection"],
        reconciliation=payload["reconciliation"],
        v=payload["V"],
        tau=payload["tau"],
        chi=payload["chi"],
        sifting=payload.get("sifting"),
        beta=payload.get("beta", 1.0),
        n_env=payload.get("n_env"),
    )


def shared_cm(scenario: QkdScenario) -> np.ndarray:
    """Covariance of the two-mode state Alice and Bob share after the channel.

    Blocks x I, y I, z Z with x = V, z = sqrt(tau (V^2 - 1)) and
    y = tau (V + chi) + (1 - tau): the transmitted arm keeps the vacuum
    unit of the loss port on top of the transmitted noise, which is what
    keeps the matrix a valid covariance for every chi >= 0.
    """
    v, tau, chi = scenario.v, scenario.tau, scenario.chi
    x = v
    y = tau * (v + chi) + (1.0 - tau)
    z = math.sqrt(tau * (v * v - 1.0))
    eye = np.eye(2)
    zmat = np.diag([z, -z])
    return np.block([[x * eye, zmat], [zmat, y * eye]])


def _shared_state(scenario: QkdScenario) -> GaussianState:
    return GaussianState(np.zeros(4), shared_cm(scenario))


def _alice_detection(scenario: QkdScenario) -> str:
    """Alice's measurement in the entanglement-based picture.

    Heterodyning her arm of the two-mode squeezed source prepares coherent
    states remotely; homodyning prepares squeezed states.
    """
    return "heterodyne" if scenario.states == "coherent" else "homodyne"


def _condition(state: GaussianState, mode: int, kind: str) -> GaussianState:
    """Condition on the key variable measured on ``mode``.

    ``homodyne`` and ``heterodyne`` are the rank-one Gaussian measurements;
    ``noisy_q`` is the q-component of a heterodyne outcome alone (the other
    component is not part of the key and must not be conditioned on). It is
    realized as a vacuum ancilla, a balanced beam splitter and a rank-one
    homodyne of one port, so the returned state keeps the unmeasured port
    as a trailing mode and conditional entropies can still use purity.
    """
    if kind == "heterodyne":
        return heterodyne(state, mode, (0.0, 0.0))
    if kind == "noisy_q":
        enlarged = tensor(state, vacuum_state(1))
        port = enlarged.num_modes - 1
        enlarged = apply_symplectic(enlarged, beam_splitter(0.5), modes=[mode, port])
        return homodyne(enlarged, mode, 0.0)
    return homodyne(state, mode, 0.0)


def _quadrature_weight(scenario: QkdScenario) -> float:
    """Number of quadratures carrying key data (2 only for no-switching)."""
    if scenario.states == "coherent" and scenario.detection == "heterodyne":
        return 2.0
    return 1.0


def mutual_information(scenario: QkdScenario, base=None) -> MutualInformation:
    """Alice-Bob mutual information per channel use.

    The derived route conditions the shared state on Alice's effective
    measurement and reads Bob's outcome variance before and after; the
    printed compact form is reported alongside (see MutualInformation).
    """
    state = _shared_state(scenario)
    het_unit = 1.0 if scenario.detection == "heterodyne" else 0.0
    var_b = state.cov[2, 2] + het_unit
    conditioned = _condition(state, 0, _alice_detection(scenario))
    var_b_given_a = conditioned.cov[0, 0] + het_unit
    w = _quadrature_weight(scenario)
    derived = 0.5 * w * float(config.log(var_b / var_b_given_a, base))

    v, tau, chi = scenario.v, scenario.tau, scenario.chi
    chi_tot = chi + (1.0 - tau) / tau
    lam = v if scenario.states == "coherent" else 1.0
    printed = 0.5 * w * float(config.log((v + chi_tot) / (chi_tot + lam / v), base))
    return MutualInformation(derived=derived, printed=printed)


def _key_conditioning(scenario: QkdScenario) -> tuple[int, str]:
    """Mode index and conditioning kind for the reconciliation reference.

    Eve is conditioned on exactly the classical data the key is distilled
    from. A homodyning side reveals its single outcome. A heterodyning
    side reveals both outcomes only when both quadratures carry key data
    (coherent states with heterodyne detection); when only one quadrature
    is keyed -- Alice's side of a switching coherent protocol, or Bob's
    side of the squeezed/heterodyne protocol -- the key variable is the
    matching component of the heterodyne outcome alone.
    """
    if scenario.reconciliation == "reverse":
        mode, detection = 1, scenario.detection
    else:
        mode, detection = 0, _alice_detection(scenario)
    if detection == "homodyne":
        return mode, "homodyne"
    if _quadrature_weight(scenario) == 2.0:
        return mode, "heterodyne"
    return mode, "noisy_q"


def eve_holevo(scenario: QkdScenario, base=None) -> float:
    """Eve's Holevo information on the reconciliation reference.

    Eve purifies the shared state, so S(E) = S(AB); after the rank-one
    homodyne underlying the reference side's conditioning, everything Eve
    does not hold (the other arm, plus the unmeasured port when only one
    heterodyne component is keyed) is jointly pure with her system, so
    S(E|.) is the conditional entropy of that remainder. Both terms come
    from symplectic spectra.
    """
    joint = _shared_state(scenario)
    mode, kind = _key_conditioning(scenario)
    conditioned = _condition(joint, mode, kind)
    return von_neumann_entropy(joint, base) - von_neumann_entropy(conditioned, base)


def _cloner_register(scenario: QkdScenario) -> GaussianState:
    """Four-mode state (A, B, e1, e2) after the entangling-cloner coupling."""
    nu_env = 2.0 * scenario.environment_nbar + 1.0
    r_source = 0.5 * math.acosh(scenario.v)
    r_env = 0.5 * math.acosh(nu_env)
    register = tensor(epr_state(r_source), epr_state(r_env))
    return apply_symplectic(register, beam_splitter(scenario.tau), modes=[1, 2])


def entangling_cloner_holevo(scenario: QkdScenario, base=None) -> float:
    """Eve's Holevo information from her explicitly constructed modes.

    The attack couples Bob's arm to one half of Eve's two-mode squeezed
    environment on a beam splitter of transmissivity tau; Eve keeps both
    environment modes. Computed without the purification shortcut, this is
    an independent construction against which ``eve_holevo`` is checked.
    """
    register = _cloner_register(scenario)
    eve = partial_trace(register, keep=[2, 3])
    mode, kind = _key_conditioning(scenario)
    conditioned = _condition(register, mode, kind)
    # the measured mode is removed, so Eve's modes sit at the tail either way
    eve_conditioned = partial_trace(conditioned, keep=[1, 2])
    return von_neumann_entropy(eve, base) - von_neumann_entropy(eve_conditioned, base)


def key_rate(scenario: QkdScenario, base=None) -> KeyRateResult:
    """Asymptotic secret-key rate K = phi (beta I_ab - S_eve)."""
    info = mutual_information(scenario, base)
    joint = _shared_state(scenario)
    mode, kind = _key_conditioning(scenario)
    conditioned = _condition(joint, mode, kind)
    s_eve = von_neumann_entropy(joint, base) - von_neumann_entropy(conditioned, base)
    key = scenario.phi * (scenario.beta * info.derived - s_eve)
    diagnostics = {
        "joint_spectrum": tuple(symplectic_eigenvalues(joint.cov)),
        "conditional_spectrum": tuple(symplectic_eigenvalues(conditioned.cov)),
        "i_ab_printed": info.printed,
    }
    return KeyRateResult(i_ab=info.derived, s_eve=s_eve, key=key, diagnostics=diagnostics)


def _rate_at_chi(scenario: QkdScenario, chi: float, base) -> float:
    trial = dataclasses.replace(scenario, chi=float(chi), n_env=None)
    return key_rate(trial, base).key


def security_threshold(scenario: QkdScenario, tol: float = 1e-8, base=None) -> float:
    """Largest tolerable excess noise: the root of K(chi) = 0.

    The scenario's own ``chi`` is ignored. Returns 0 when the protocol is
    already insecure at chi = 0. The bracket is grown geometrically, K is
    checked to be decreasing across it, and the root is polished until the
    residual key rate is below ``tol``.
    """
    rate = lambda chi: _rate_at_chi(scenario, chi, base)  # noqa: E731
    k0 = rate(0.0)
    if k0 <= 0.0:
        return 0.0
    hi = 0.1
    while rate(hi) > 0.0:
        hi *= 2.0
        if hi > 1e6:
            raise NumericalError(
                f"key rate still positive at chi={hi / 2}; no threshold bracket"
            )
    grid = np.linspace(0.0, hi, 9)
    values = [rate(c) for c in grid]
    slack = 1e-10 * max(1.0, abs(k0))
    for (c0, k_left), (c1, k_right) in zip(
        zip(grid, values), zip(grid[1:], values[1:])
    ):
        if k_right > k_left + slack:
            trace = ", ".join(f"K({c:.6g})={k:.6g}" for c, k in zip(grid, values))
            raise NumericalError(
                f"key rate not monotone in chi on [0, {hi:.6g}] "
                f"(rises between chi={c0:.6g} and chi={c1:.6g}): {trace}"
            )
    root = brentq(rate, 0.0, hi, xtol=1e-14, rtol=8.9e-16)
    residual = rate(root)
    if abs(residual) > tol:
        raise NumericalError(
            f"threshold residual |K({root})| = {abs(residual)} exceeds tol={tol}"
        )
    return float(root)


def _slice_holevo(
    a_mag: float, tau: float, chi: float, detection: str, base
) -> float:
    """Gaussian upper bound on Eve's information about one sign bit.

    For a fixed revealed amplitude ``a_mag``, the sub-channel carries a
    binary alphabet of coherent states displaced by +-a_mag in the key
    quadrature. Eve's two conditional states (given the receiver's outcome)
    share a covariance V_E and differ by mean separation 2m; the bound is
    the entropy gap S(V_E + m m^T) - S(V_E), the Gaussian maximum-entropy
    bound on the equal mixture.
    """
    if tau == 1.0 or a_mag == 0.0:
        return 0.0
    nu_env = 1.0 + chi * tau / (1.0 - tau)
    env = epr_state(0.5 * math.acosh(nu_env))
    means = []
    cov = None
    for sign in (1.0, -1.0):
        signal = GaussianState(np.array([sign * a_mag, 0.0]), np.eye(2))
        register = tensor(signal, env)
        register = apply_symplectic(register, beam_splitter(tau), modes=[0, 1])
        conditioned = _condition(register, 0, detection)
        means.append(conditioned.mean)
        cov = conditioned.cov
    m = 0.5 * (means[0] - means[1])
    bumped = GaussianState(np.zeros(4), cov + np.outer(m, m))
    return von_neumann_entropy(bumped, base) - von_neumann_entropy(
        GaussianState(np.zeros(4), cov), base
    )


def _postselection_quadrature(
    nodes: int,
    tau: float,
    chi: float,
    v_a: float,
    detection: str,
    beta: float,
    phi: float,
    base,
) -> float:
    x_nodes, x_weights = roots_hermite(nodes)
    ln_base = math.log(config.resolve_base(base))
    # Alice's key-quadrature displacement and Bob's matching outcome
    a = math.sqrt(2.0 * v_a) * x_nodes
    sigma_b2 = 1.0 + tau * chi + (1.0 if detection == "heterodyne" else 0.0)
    b = math.sqrt(tau) * a[:, None] + math.sqrt(2.0 * sigma_b2) * x_nodes[None, :]
    # sign-decision error from the log-likelihood ratio of the two displacements
    llr = 2.0 * math.sqrt(tau) * np.abs(a[:, None] * b) / sigma_b2
    p_err = expit(-llr)
    i_ab = (math.log(2.0) + xlogy(p_err, p_err) + xlogy(1.0 - p_err, 1.0 - p_err)) / ln_base
    s_slice = np.array(
        [_slice_holevo(abs(ai), tau, chi, detection, base) for ai in a]
    )
    delta_k = np.maximum(beta * i_ab - s_slice[:, None], 0.0)
    weights = x_weights / math.sqrt(math.pi)
    rate = float(weights @ delta_k @ weights)
    if detection == "heterodyne":
        rate *= 2.0  # two parallel sign channels, one per quadrature
    return phi * rate


def postselection_rate(
    tau: float,
    chi: float,
    v_a: float,
    detection: str = "homodyne",
    beta: float = 1.0,
    sifting: float | None = None,
    nodes: int | None = None,
    base=None,
) -> float:
    """Key rate of the postselected coherent-state protocol.

    Every revealed pair (|a|, |b|) defines a binary sub-channel; its
    contribution max(beta I(a:b) - S(E), 0) is kept only when positive and
    averaged over the Gaussian joint density of (a, b) by Gauss-Hermite
    quadrature (``nodes`` per axis, default from config). The result is
    checked against a half-resolution pass and a disagreement raises; the
    clipping kink limits the default resolution to roughly 1e-3 absolute
    accuracy, so raise ``nodes`` when resolving rates near extinction.
    """
    tau = float(tau)
    chi = float(chi)
    v_a = float(v_a)
    if not 0.0 < tau <= 1.0:
        raise ValidationError(f"tau must be in (0, 1], got {tau}")
    if chi < 0.0:
        raise ValidationError(f"chi must be >= 0, got {chi}")
    if tau == 1.0 and chi > 0.0:
        raise ValidationError("chi > 0 at tau = 1 has no environment mode to trace")
    if v_a < 0.0:
        raise ValidationError(f"v_a must be >= 0, got {v_a}")
    if detection not in _DETECTIONS:
        raise ValidationError(f"detection must be one of {_DETECTIONS}, got {detection!r}")
    if not 0.0 <= beta <= 1.0:
        raise ValidationError(f"beta must be in [0, 1], got {beta}")
    if sifting is None:
        phi = 1.0 if detection == "heterodyne" else 0.5
    else:
        phi = float(sifting)
        if not 0.0 < phi <= 1.0:
            raise ValidationError(f"sifting must be in (0, 1], got {sifting}")
    if v_a == 0.0:
        return 0.0
    n = int(nodes) if nodes is not None else int(config.postselection_nodes)
    if n < 8:
        raise ValidationError(f"nodes must be >= 8, got {n}")
    fine = _postselection_quadrature(n, tau, chi, v_a, detection, beta, phi, base)
    coarse = _postselection_quadrature(
        max(n // 2, 8), tau, chi, v_a, detection, beta, phi, base
    )
    # the clipped integrand has a kink, so node doubling gains polynomial,
    # not spectral, accuracy; the tolerance reflects what 200 nodes deliver
    if abs(fine - coarse) > max(1e-3, 2e-2 * abs(fine)):
        raise NumericalError(
            f"postselection quadrature has not converged: {coarse} at "
            f"{max(n // 2, 8)} nodes vs {fine} at {n}; increase nodes"
        )
    return fine


def _penalty(model, n: int) -> float:
    if model is None:
        return 0.0
    if callable(model):
        return float(model(n))
    return float(model)


def _corner_values(point: float, interval) -> tuple[float, ...]:
    if interval is None:
        return (float(point),)
    lo, hi = (float(interval[0]), float(interval[1]))
    if lo > hi:
        raise ValidationError(f"interval must be ordered, got ({lo}, {hi})")
    return (lo, hi)


def finite_size_rate(
    scenario: QkdScenario,
    n_total: int,
    n_key: int,
    delta=None,
    d_term=None,
    tau_interval=None,
    chi_interval=None,
    base=None,
) -> float:
    """Finite-size rate K = (phi n/N) [beta I - S_worst - Delta(n) - D(n)].

    ``delta`` and ``d_term`` are caller-supplied penalty models (constants
    or callables of the key block size n). Eve's term is evaluated at the
    worst corner of the parameter-estimation confidence rectangle
    ``tau_interval`` x ``chi_interval``; omitted intervals collapse to the
    scenario's point estimate, and with no penalties, n = N and point
    intervals this reduces to ``key_rate``.
    """
    n_total = int(n_total)
    n_key = int(n_key)
    if n_total <= 0:
        raise ValidationError(f"n_total must be positive, got {n_total}")
    if n_key <= 0:
        raise ValidationError(f"n_key must be positive, got {n_key}")
    if n_key > n_total:
        raise ValidationError(f"n_key={n_key} exceeds n_total={n_total}")
    info = mutual_information(scenario, base).derived
    s_worst = -math.inf
    for tau in _corner_values(scenario.tau, tau_interval):
        for chi in _corner_values(scenario.chi, chi_interval):
            corner = dataclasses.replace(scenario, tau=tau, chi=chi, n_env=None)
            s_worst = max(s_worst, eve_holevo(corner, base))
    usable = (
        scenario.beta * info - s_worst - _penalty(delta, n_key) - _penalty(d_term, n_key)
    )
    return scenario.phi * (n_key / n_total) * usable


def eb_source_params(v: float, tau_a: float) -> dict:
    """Source parameters of the entanglement-based representation.

    Alice splits her arm of a two-mode squeezed source of variance ``v``
    on a beam splitter of transmissivity ``tau_a`` and homodynes both
    outputs (q on the kept port, p on the tapped port). The remote mode
    collapses to covariance diag(1/x, x) displaced by (gamma_q q_A,
    gamma_p p_C): tau_a = 1/2 prepares coherent states (x = 1), tau_a = 1
    squeezed states (x = 1/V).
    """
    v = float(v)
    tau_a = float(tau_a)
    if v < 1.0:
        raise ValidationError(f"v must be >= 1, got {v}")
    if not 0.0 < tau_a <= 1.0:
        raise ValidationError(f"tau_a must be in (0, 1], got {tau_a}")
    mu = (1.0 - tau_a) / tau_a
    x = (mu * v + 1.0) / (v + mu)
    gamma_q = math.sqrt(tau_a * (v * v - 1.0)) / (tau_a * v + (1.0 - tau_a))
    gamma_p = math.sqrt((1.0 - tau_a) * (v * v - 1.0)) / ((1.0 - tau_a) * v + tau_a)
    return {"gamma_q": gamma_q, "gamma_p": gamma_p, "x": x}
