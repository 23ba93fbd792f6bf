"""Continuous-variable protocol calculators.

Teleportation of one-mode Gaussian states through a two-mode resource,
Bell detection and the associated feed-forward displacement, entanglement
swapping, Gaussian cloning of coherent states, and the dense-coding rate.

Conventions match the rest of the package: quadrature vectors are ordered
``(q_1, p_1, q_2, p_2, ...)``, the vacuum covariance is the identity, and a
coherent amplitude ``alpha`` sits at mean ``(2 Re alpha, 2 Im alpha)``.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from . import config
from .errors import ValidationError
from .measurements import homodyne
from .phase_space import GaussianState, tensor, vacuum_state
from .unitaries import apply_symplectic, beam_splitter, displace, two_mode_squeezer

__all__ = [
    "BellRecord",
    "TeleportRecord",
    "CloneRecord",
    "SwapRecord",
    "bell_measurement",
    "bell_displacement",
    "teleport_output",
    "teleport_fidelity",
    "classify_teleport_fidelity",
    "teleport",
    "entanglement_swap",
    "clone_coherent",
    "mn_clone_fidelity",
    "dense_coding_rate",
]

_Z = np.diag([1.0, -1.0])


def _split_two_mode(cov):
    a = cov[:2, :2]
    b = cov[2:, 2:]
    c = cov[:2, 2:]
    return a, b, c


def _require_modes(state, n, who):
    if state.num_modes != n:
        raise ValidationError(f"{who} must have {n} mode(s), got {state.num_modes}")


# ---------------------------------------------------------------------------
# Bell detection
# ---------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class BellRecord:
    """Result of a CV Bell measurement on two modes.

    ``q_minus`` is the outcome of the q-homodyne, distributed as
    ``(q_j - q_i) / sqrt(2)`` for input modes ``(i, j)``; ``p_plus`` is the
    p-homodyne outcome, distributed as ``(p_i + p_j) / sqrt(2)``.
    ``state`` is the conditional state of the unmeasured modes and
    ``gamma`` the complex amplitude ``(q_minus - i p_plus) / 2`` used for
    feed-forward.
    """

    state: GaussianState
    q_minus: float
    p_plus: float

    @property
    def gamma(self) -> complex:
        return 0.5 * (self.q_minus - 1j * self.p_plus)


def bell_measurement(state, modes, outcomes=None, rng=None):
    """Mix ``modes = (i, j)`` on a balanced beam splitter and homodyne both.

    The p quadrature is detected on the first output port (giving
    ``(p_i + p_j)/sqrt(2)``) and the q quadrature on the second (giving
    ``(q_j - q_i)/sqrt(2)``).  If ``outcomes`` is None the pair is sampled
    from the joint marginal using ``rng``; otherwise it must be the pair
    ``(q_minus, p_plus)`` to condition on.
    """
    i, j = modes
    if i == j:
        raise ValidationError("Bell measurement needs two distinct modes")
    mixed = apply_symplectic(state, beam_splitter(0.5), modes=(i, j))
    # Mode indices shift as the register shrinks: measuring i first leaves
    # j at position j-1 when i < j.
    j_after = j - 1 if i < j else j
    if outcomes is None:
        rng = np.random.default_rng(rng)
        idx = mixed.mode_indices([i])
        p_mean = mixed.mean[idx[1]]
        p_var = mixed.cov[idx[1], idx[1]]
        p_plus = rng.normal(p_mean, math.sqrt(p_var))
        after_p = homodyne(mixed, i, p_plus, angle=math.pi / 2)
        idx = after_p.mode_indices([j_after])
        q_mean = after_p.mean[idx[0]]
        q_var = after_p.cov[idx[0], idx[0]]
        q_minus = rng.normal(q_mean, math.sqrt(q_var))
    else:
        q_minus, p_plus = (float(v) for v in outcomes)
        after_p = homodyne(mixed, i, p_plus, angle=math.pi / 2)
    final = homodyne(after_p, j_after, q_minus, angle=0.0)
    return BellRecord(state=final, q_minus=q_minus, p_plus=p_plus)


def bell_displacement(q_minus, p_plus, gain=1.0):
    """Feed-forward quadrature displacement for the receiver mode.

    For a resource whose kept arm is q-correlated / p-anticorrelated with
    the arm consumed by the Bell measurement (as produced by
    :func:`~gaussian_qi.phase_space.epr_state`), unit gain restores the
    input mean exactly in the strong-squeezing limit.
    """
    return gain * math.sqrt(2.0) * np.array([-q_minus, p_plus])


# ---------------------------------------------------------------------------
# Teleportation
# ---------------------------------------------------------------------------


def teleport_output(input_state, resource):
    """Covariance-level output of unit-gain teleportation.

    ``resource`` holds Alice's arm first and Bob's arm second.  The output
    state has the input mean and covariance
    ``V_in + Z A Z + B - Z C - C^T Z`` where ``[[A, C], [C^T, B]]`` is the
    resource covariance.
    """
    _require_modes(input_state, 1, "input_state")
    _require_modes(resource, 2, "resource")
    a, b, c = _split_two_mode(resource.cov)
    cov = input_state.cov + _Z @ a @ _Z + b - _Z @ c - c.T @ _Z
    return GaussianState(mean=input_state.mean.copy(), cov=cov)


def teleport_fidelity(resource, input_state=None):
    """Fidelity of unit-gain teleportation for a pure one-mode input.

    Defaults to a coherent-state input.  Returns ``2 / sqrt(det Gamma)``
    with ``Gamma = 2 V_in + Z A Z + B - Z C - C^T Z``; the input must be
    pure (the formula does not hold for mixed inputs).
    """
    _require_modes(resource, 2, "resource")
    if input_state is None:
        input_state = vacuum_state(1)
    _require_modes(input_state, 1, "input_state")
    if abs(np.linalg.det(input_state.cov) - 1.0) > 1e-8:
        raise ValidationError("teleport_fidelity requires a pure input state")
    a, b, c = _split_two_mode(resource.cov)
    gamma = 2.0 * input_state.cov + _Z @ a @ _Z + b - _Z @ c - c.T @ _Z
    # 2x2 determinant in closed form: LU-based det drops an ulp even on
    # diagonal matrices, which matters at the F = 1/2 benchmark point
    det = gamma[0, 0] * gamma[1, 1] - gamma[0, 1] * gamma[1, 0]
    return 2.0 / math.sqrt(det)


def classify_teleport_fidelity(fidelity):
    """Benchmark band for a coherent-state teleportation fidelity.

    ``"classical"`` is achievable without entanglement (F <= 1/2),
    ``"quantum"`` certifies entanglement, and ``"no_cloning"`` (F > 2/3)
    additionally certifies that Bob holds the best copy of the input.
    """
    if not 0.0 <= fidelity <= 1.0:
        raise ValidationError(f"fidelity must be in [0, 1], got {fidelity}")
    if fidelity > 2.0 / 3.0:
        return "no_cloning"
    if fidelity > 0.5:
        return "quantum"
    return "classical"


@dataclasses.dataclass(frozen=True)
class TeleportRecord:
    """Operational teleportation result: output state plus the record."""

    state: GaussianState
    q_minus: float
    p_plus: float
    displacement: np.ndarray


def teleport(input_state, resource, outcomes=(0.0, 0.0), gain=1.0, rng=None):
    """Run the teleportation circuit explicitly.

    The input mode and Alice's resource arm are Bell-measured and Bob's arm
    is displaced by :func:`bell_displacement`.  ``outcomes=None`` samples
    the Bell record.  The conditional covariance is outcome-independent but
    smaller than :func:`teleport_output`: at unit gain the Bell-averaged
    output (conditional covariance plus the scatter of the corrected means)
    reproduces that formula.
    """
    _require_modes(input_state, 1, "input_state")
    _require_modes(resource, 2, "resource")
    joint = tensor(input_state, resource)
    record = bell_measurement(joint, (0, 1), outcomes=outcomes, rng=rng)
    d = bell_displacement(record.q_minus, record.p_plus, gain=gain)
    out = displace(record.state, d)
    return TeleportRecord(
        state=out, q_minus=record.q_minus, p_plus=record.p_plus, displacement=d
    )


# ---------------------------------------------------------------------------
# Entanglement swapping
# ---------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class SwapRecord:
    """Entanglement-swapping result for the kept pair of modes."""

    state: GaussianState
    q_minus: float
    p_plus: float
    log_negativity: float


def entanglement_swap(state_ab, state_cd, outcomes=(0.0, 0.0), rng=None):
    """Swap entanglement by Bell-measuring the inner arms of two pairs.

    Modes are ``(a, b)`` from the first pair and ``(c, d)`` from the
    second; the Bell measurement consumes ``(b, c)`` and the surviving
    ``(a, d)`` pair is returned together with its log-negativity (in the
    configured log base).
    """
    from .entanglement import log_negativity

    _require_modes(state_ab, 2, "state_ab")
    _require_modes(state_cd, 2, "state_cd")
    joint = tensor(state_ab, state_cd)
    record = bell_measurement(joint, (1, 2), outcomes=outcomes, rng=rng)
    d = bell_displacement(record.q_minus, record.p_plus)
    full = np.zeros(4)
    full[2:] = d
    out = displace(record.state, full)
    return SwapRecord(
        state=out,
        q_minus=record.q_minus,
        p_plus=record.p_plus,
        log_negativity=log_negativity(out, modes_b=[1]),
    )


# ---------------------------------------------------------------------------
# Gaussian cloning
# ---------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class CloneRecord:
    """Output of the symmetric 1-to-2 Gaussian cloner.

    ``state`` holds clone 1, clone 2 and the anticlone on modes 0..2.
    Fidelities are quoted against the input (clones) and against its phase
    conjugate (anticlone) and equal 2/3 and 1/2 for any coherent input.
    """

    state: GaussianState
    clone_fidelity: float
    anticlone_fidelity: float

    def clone(self, which=0) -> GaussianState:
        from .phase_space import partial_trace

        if which not in (0, 1):
            raise ValidationError("clone index must be 0 or 1")
        return partial_trace(self.state, keep=[which])

    @property
    def anticlone(self) -> GaussianState:
        from .phase_space import partial_trace

        return partial_trace(self.state, keep=[2])


def clone_coherent(input_state):
    """Clone a one-mode state with the symmetric coherent-state cloner.

    The circuit feeds the input and a vacuum through a two-mode squeezer
    with ``cosh r = sqrt(2)`` (a phase-insensitive amplifier of gain 2) and
    splits the amplified mode on a balanced beam splitter.  For input
    covariance ``V`` the clones have covariance ``V + I`` and the input
    mean, while the anticlone has covariance ``Z V Z + 2 I`` and the
    conjugated mean.
    """
    _require_modes(input_state, 1, "input_state")
    reg = tensor(vacuum_state(1), input_state, vacuum_state(1))
    r_amp = math.acosh(math.sqrt(2.0))
    reg = apply_symplectic(reg, two_mode_squeezer(r_amp), modes=(1, 2))
    reg = apply_symplectic(reg, beam_splitter(0.5), modes=(0, 1))
    from .discrimination import fidelity_gaussian
    from .phase_space import partial_trace

    clone = partial_trace(reg, keep=[0])
    anticlone = partial_trace(reg, keep=[2])
    conj_input = GaussianState(
        mean=_Z @ input_state.mean, cov=_Z @ input_state.cov @ _Z
    )
    return CloneRecord(
        state=reg,
        clone_fidelity=fidelity_gaussian(input_state, clone),
        anticlone_fidelity=fidelity_gaussian(conj_input, anticlone),
    )


def mn_clone_fidelity(n_in, m_out):
    """Optimal Gaussian N-to-M cloning fidelity for coherent states."""
    n_in = int(n_in)
    m_out = int(m_out)
    if not 1 <= n_in <= m_out:
        raise ValidationError("need 1 <= n_in <= m_out")
    return (m_out * n_in) / (m_out * n_in + m_out - n_in)


# ---------------------------------------------------------------------------
# Dense coding
# ---------------------------------------------------------------------------


def dense_coding_rate(m_bar, v_sq=1.0, eta=1.0, base=None):
    """Achievable rate of CV dense coding over a lossy channel.

    ``m_bar`` is the mean photon number spent per use, ``v_sq`` the
    squeezed-quadrature variance of the pre-shared two-mode resource
    (``1`` for no squeezing) and ``eta`` the channel transmissivity.  With
    ``v_sq = 1`` and ``eta = 1`` the rate reduces to ``log(1 + m_bar)``.
    """
    if m_bar < 0:
        raise ValidationError(f"m_bar must be >= 0, got {m_bar}")
    if v_sq <= 0:
        raise ValidationError(f"v_sq must be > 0, got {v_sq}")
    if not 0 < eta <= 1:
        raise ValidationError(f"eta must be in (0, 1], got {eta}")
    signal = 4.0 * m_bar - v_sq - 1.0 / v_sq + 2.0
    if signal < 0:
        raise ValidationError(
            "m_bar too small to support the requested squeezing"
        )
    snr = eta * signal / (4.0 * (eta * v_sq + 1.0 - eta))
    return config.log(1.0 + snr, base)
