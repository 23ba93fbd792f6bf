"""Command-line front end: JSON in, JSON (or CSV sweep rows) out.

Every subcommand is a thin wrapper over the library with the same defaults,
so results are bit-identical to direct calls. Exit codes: 0 on success, 2
when the input fails validation, 3 when a computation fails numerically;
the error message names the offending field. Data goes to stdout,
diagnostics to stderr.
"""

from __future__ import annotations

import dataclasses
import itertools
import json
import math
import sys

import click
import numpy as np

from . import fock
from .channels import (
    capacities,
    channel_from_dict,
    classify,
    degradability,
    illumination_error_bounds,
)
from .cluster import ClusterGraph, compile_graph, measure_node, nullifier_means, nullifier_variances
from .discrimination import (
    bounds_chain,
    fidelity_gaussian,
    helstrom_bpsk_pe,
    homodyne_pe,
    kennedy_pe,
    multicopy_error,
    odr_optimize,
)
from .entanglement import log_negativity, ppt_test
from .errors import NumericalError, ValidationError
from .measurements import heterodyne, homodyne, sample_heterodyne, sample_homodyne
from .phase_space import (
    epr_state,
    coherent_state,
    make_state,
    state_from_dict,
    state_to_dict,
    symplectic_eigenvalues,
    validate_state,
    von_neumann_entropy,
)
from .protocols import (
    classify_teleport_fidelity,
    clone_coherent,
    dense_coding_rate,
    entanglement_swap,
    mn_clone_fidelity,
    teleport,
    teleport_fidelity,
)
from .qkd import (
    QkdScenario,
    finite_size_rate,
    key_rate,
    postselection_rate,
    security_threshold,
)
from .unitaries import apply_symplectic, beam_splitter, displace, rotation, squeezer, two_mode_squeezer

CSV_HEADER = "# gaussian-qi v0.1.0"


class _Cli(click.Group):
    """Group that maps library errors onto the documented exit codes."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except ValidationError as exc:
            click.echo(f"validation error: {exc}", err=True)
            sys.exit(2)
        except NumericalError as exc:
            click.echo(f"numerical error: {exc}", err=True)
            sys.exit(3)


def _jsonable(value):
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, (np.integer, int)):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, complex):
        return [value.real, value.imag]
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _emit(payload):
    click.echo(json.dumps(payload, default=_jsonable, indent=2))


def _load_json(text: str, field: str) -> dict:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{field} is not valid JSON: {exc}") from exc


def _state_arg(text: str, field: str):
    return state_from_dict(_load_json(text, field))


def _parse_complex(text: str, field: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise ValidationError(f"{field} must be 're' or 're,im', got {text!r}")


def _parse_floats(text: str, field: str) -> list:
    try:
        return [float(x) for x in text.split(",") if x.strip() != ""]
    except ValueError as exc:
        raise ValidationError(f"{field} must be comma-separated numbers, got {text!r}") from exc


def _parse_ints(text: str, field: str) -> list:
    values = _parse_floats(text, field)
    out = [int(v) for v in values]
    if any(v != int(v) for v in values):
        raise ValidationError(f"{field} must be integers, got {text!r}")
    return out


def _check_hbar(ctx, param, value):
    if value != 2.0:
        raise click.BadParameter("the package convention fixes hbar at 2")
    return value


@click.group(cls=_Cli)
@click.option("--log-base", type=click.Choice(["2", "e"]), default="2", show_default=True,
              help="Base for every entropy/information quantity.")
@click.option("--hbar", type=float, default=2.0, callback=_check_hbar,
              help="Quadrature convention; fixed at 2.")
@click.option("--seed", type=int, default=None, help="Seed for sampling subcommands.")
@click.pass_context
def main(ctx, log_base, hbar, seed):
    """Gaussian quantum information toolkit."""
    ctx.ensure_object(dict)
    ctx.obj["base"] = 2.0 if log_base == "2" else math.e
    ctx.obj["rng"] = np.random.default_rng(seed)


# ---------------------------------------------------------------------------
# state
# ---------------------------------------------------------------------------


@main.group()
def state():
    """Construct and inspect Gaussian states."""


@state.command("make")
@click.option("--kind", required=True,
              type=click.Choice(["vacuum", "thermal", "coherent", "squeezed", "epr"]))
@click.option("--alpha", default=None, help="Coherent amplitude 're,im'.")
@click.option("--nbar", type=float, default=None)
@click.option("--r", type=float, default=None)
@click.option("--theta", type=float, default=None)
@click.option("--num-modes", type=int, default=None)
def state_make(kind, alpha, nbar, r, theta, num_modes):
    """Print the JSON form of a named state."""
    params = {}
    if alpha is not None:
        params["alpha"] = _parse_complex(alpha, "--alpha")
    if nbar is not None:
        params["nbar"] = nbar
    if r is not None:
        params["r"] = r
    if theta is not None:
        params["theta"] = theta
    if num_modes is not None:
        params["num_modes"] = num_modes
    _emit(state_to_dict(make_state(kind, **params)))


@state.command("validate")
@click.option("--json", "payload", required=True, help="State JSON.")
def state_validate(payload):
    """Physicality report for a state."""
    st = _state_arg(payload, "--json")
    report = validate_state(st)
    report["symplectic_eigenvalues"] = symplectic_eigenvalues(st.cov)
    _emit(report)


@state.command("entropy")
@click.option("--json", "payload", required=True, help="State JSON.")
@click.pass_context
def state_entropy(ctx, payload):
    """Von Neumann entropy in the selected log base."""
    st = _state_arg(payload, "--json")
    _emit({
        "entropy": von_neumann_entropy(st, base=ctx.obj["base"]),
        "symplectic_eigenvalues": symplectic_eigenvalues(st.cov),
    })


# ---------------------------------------------------------------------------
# unitary / measure
# ---------------------------------------------------------------------------

_GATES = {
    "rotation": rotation,
    "squeezer": squeezer,
    "two_mode_squeezer": two_mode_squeezer,
    "beam_splitter": beam_splitter,
}


@main.group()
def unitary():
    """Apply Gaussian unitaries."""


@unitary.command("apply")
@click.option("--gate", required=True,
              type=click.Choice(sorted(_GATES) + ["displace"]))
@click.option("--json", "payload", required=True, help="State JSON.")
@click.option("--param", default=None,
              help="Gate parameter: angle/r/tau, or the displacement vector for displace.")
@click.option("--modes", default=None, help="Target modes, e.g. '0' or '0,1'.")
def unitary_apply(payload, gate, param, modes):
    """Apply one gate and print the resulting state."""
    st = _state_arg(payload, "--json")
    if gate == "displace":
        if param is None:
            raise ValidationError("--param is required for displace (displacement vector)")
        st = displace(st, _parse_floats(param, "--param"))
    else:
        if param is None:
            raise ValidationError(f"--param is required for {gate}")
        mat = _GATES[gate](float(param))
        target = _parse_ints(modes, "--modes") if modes is not None else None
        st = apply_symplectic(st, mat, modes=target)
    _emit(state_to_dict(st))


@main.command("measure")
@click.option("--json", "payload", required=True, help="State JSON.")
@click.option("--kind", type=click.Choice(["homodyne", "heterodyne"]), default="homodyne",
              show_default=True)
@click.option("--mode", type=int, default=0, show_default=True)
@click.option("--angle", type=float, default=0.0, show_default=True,
              help="Homodyne quadrature angle: cos(a) q + sin(a) p.")
@click.option("--outcome", default=None, help="Measured value ('v' or 're,im').")
@click.option("--sample", is_flag=True, help="Draw the outcome instead (uses --seed).")
@click.pass_context
def measure(ctx, payload, kind, mode, angle, outcome, sample):
    """Condition a state on one measurement outcome."""
    st = _state_arg(payload, "--json")
    if sample and outcome is not None:
        raise ValidationError("--outcome and --sample are mutually exclusive")
    if kind == "homodyne":
        if sample:
            value = float(sample_homodyne(st, mode, angle=angle, rng=ctx.obj["rng"])[0])
        else:
            value = float(outcome) if outcome is not None else 0.0
        out = homodyne(st, mode, value, angle=angle)
        _emit({"outcome": value, "state": state_to_dict(out)})
    else:
        if sample:
            draw = sample_heterodyne(st, mode, rng=ctx.obj["rng"])[0]
            value = complex(draw[0], draw[1])
        else:
            value = _parse_complex(outcome, "--outcome") if outcome is not None else 0j
        out = heterodyne(st, mode, value)
        _emit({"outcome": value, "state": state_to_dict(out)})


# ---------------------------------------------------------------------------
# entangle / discriminate
# ---------------------------------------------------------------------------


@main.group()
def entangle():
    """Entanglement criteria and measures."""


@entangle.command("test")
@click.option("--json", "payload", required=True, help="State JSON.")
@click.option("--modes-b", default="1", show_default=True,
              help="Modes forming the transposed subsystem B.")
@click.pass_context
def entangle_test(ctx, payload, modes_b):
    """PPT criterion and logarithmic negativity across a bipartition."""
    st = _state_arg(payload, "--json")
    modes = _parse_ints(modes_b, "--modes-b")
    report = ppt_test(st, modes)
    report["log_negativity"] = log_negativity(st, modes, base=ctx.obj["base"])
    _emit(report)


@main.group()
def discriminate():
    """Binary state discrimination."""


@discriminate.command("bounds")
@click.option("--json0", required=True, help="First state JSON.")
@click.option("--json1", required=True, help="Second state JSON.")
@click.option("--copies", type=int, default=1, show_default=True)
def discriminate_bounds(json0, json1, copies):
    """Fidelity/Chernoff error-probability bounds for a state pair."""
    s0 = _state_arg(json0, "--json0")
    s1 = _state_arg(json1, "--json1")
    report = bounds_chain(s0, s1)
    if copies != 1:
        report["multicopy"] = multicopy_error(s0, s1, copies)
    _emit(report)


@discriminate.command("receivers")
@click.option("--alpha", type=float, required=True, help="Coherent amplitude (real).")
@click.option("--tau", type=float, default=1.0, show_default=True,
              help="Transmissivity of the displaced-vacuum tap in the optimized receiver.")
def discriminate_receivers(alpha, tau):
    """Error probabilities of standard BPSK coherent-state receivers."""
    _emit({
        "helstrom": helstrom_bpsk_pe(alpha),
        "kennedy": kennedy_pe(alpha),
        "homodyne": homodyne_pe(alpha),
        "odr": odr_optimize(alpha, tau),
    })


# ---------------------------------------------------------------------------
# channel
# ---------------------------------------------------------------------------


@main.group()
def channel():
    """One-mode Gaussian channels."""


@channel.command("classify")
@click.option("--json", "payload", required=True, help='Channel JSON {"T":..,"N":..,"d":..}.')
def channel_classify(payload):
    """Canonical class, transmissivity, rank, and added noise."""
    form = classify(channel_from_dict(_load_json(payload, "--json")))
    _emit(dataclasses.asdict(form))


@channel.command("capacity")
@click.option("--json", "payload", required=True, help="Channel JSON.")
@click.option("--mbar", type=float, default=None, help="Mean photon constraint for C_E.")
@click.pass_context
def channel_capacity(ctx, payload, mbar):
    """Capacity records plus degradability classification."""
    ch = channel_from_dict(_load_json(payload, "--json"))
    report = capacities(ch, m_bar=mbar, base=ctx.obj["base"])
    report["form"] = dataclasses.asdict(report["form"])
    report["degradability"] = degradability(ch)
    _emit(report)


@channel.command("illumination")
@click.option("--copies", type=float, required=True, help="Number of probe copies M.")
@click.option("--kappa", type=float, required=True)
@click.option("--nbar", type=float, required=True, help="Background thermal photons.")
@click.option("--mbar", type=float, required=True, help="Probe mean photons.")
def channel_illumination(copies, kappa, nbar, mbar):
    """Quantum-illumination error exponents for EPR vs coherent probes."""
    _emit(illumination_error_bounds(copies, kappa, nbar, mbar))


# ---------------------------------------------------------------------------
# protocol
# ---------------------------------------------------------------------------


@main.group()
def protocol():
    """Teleportation, cloning, swapping, dense coding."""


@protocol.command("teleport")
@click.option("--r", type=float, required=True, help="EPR resource squeezing.")
@click.option("--alpha", default="0,0", show_default=True, help="Input coherent amplitude.")
@click.option("--gain", type=float, default=1.0, show_default=True)
def protocol_teleport(r, alpha, gain):
    """Teleport a coherent state through an EPR resource."""
    resource = epr_state(r)
    fid = teleport_fidelity(resource)
    record = teleport(coherent_state(_parse_complex(alpha, "--alpha")), resource, gain=gain)
    _emit({
        "fidelity": fid,
        "band": classify_teleport_fidelity(fid),
        "output_state": state_to_dict(record.state),
    })


@protocol.command("clone")
@click.option("--input", "kind", type=click.Choice(["coherent"]), default="coherent",
              show_default=True)
@click.option("--alpha", default="0,0", show_default=True)
@click.option("--n-in", type=int, default=None, help="Optional N->M cloning: input copies.")
@click.option("--m-out", type=int, default=None, help="Optional N->M cloning: output copies.")
def protocol_clone(kind, alpha, n_in, m_out):
    """Symmetric Gaussian cloning fidelities."""
    record = clone_coherent(coherent_state(_parse_complex(alpha, "--alpha")))
    report = {
        "clone_fidelity": record.clone_fidelity,
        "anticlone_fidelity": record.anticlone_fidelity,
        "clone_state": state_to_dict(record.state),
    }
    if (n_in is None) != (m_out is None):
        raise ValidationError("--n-in and --m-out must be given together")
    if n_in is not None:
        report["mn_fidelity"] = mn_clone_fidelity(n_in, m_out)
    _emit(report)


@protocol.command("swap")
@click.option("--r0", type=float, required=True, help="First EPR squeezing.")
@click.option("--r1", type=float, required=True, help="Second EPR squeezing.")
def protocol_swap(r0, r1):
    """Entanglement swapping of two EPR pairs via Bell detection."""
    record = entanglement_swap(epr_state(r0), epr_state(r1))
    _emit({
        "log_negativity": record.log_negativity,
        "state": state_to_dict(record.state),
    })


@protocol.command("densecode")
@click.option("--mbar", type=float, required=True, help="Mean photons in the modulation.")
@click.option("--vsq", type=float, default=1.0, show_default=True)
@click.option("--eta", type=float, default=1.0, show_default=True)
@click.pass_context
def protocol_densecode(ctx, mbar, vsq, eta):
    """Dense-coding information rate."""
    _emit({"rate": dense_coding_rate(mbar, v_sq=vsq, eta=eta, base=ctx.obj["base"])})


# ---------------------------------------------------------------------------
# qkd
# ---------------------------------------------------------------------------


def _scenario_options(fn):
    for deco in (
        click.option("--states", type=click.Choice(["coherent", "squeezed"]), required=True),
        click.option("--detection", type=click.Choice(["homodyne", "heterodyne"]), required=True),
        click.option("--rec", type=click.Choice(["direct", "reverse"]), required=True,
                     help="Reconciliation direction."),
        click.option("--beta", type=float, default=1.0, show_default=True,
                     help="Reconciliation efficiency."),
        click.option("--sifting", type=float, default=None,
                     help="Sifting fraction override."),
    ):
        fn = deco(fn)
    return fn


@main.group()
def qkd():
    """One-way Gaussian QKD rates on thermal-loss channels."""


@qkd.command("rate")
@_scenario_options
@click.option("--V", "v", required=True, help="Modulation variance (value or comma list).")
@click.option("--tau", required=True, help="Transmissivity (value or comma list).")
@click.option("--chi", required=True, help="Excess noise (value or comma list).")
@click.option("--csv", "as_csv", is_flag=True, help="Stream sweep rows as CSV.")
@click.pass_context
def qkd_rate(ctx, states, detection, rec, beta, sifting, v, tau, chi, as_csv):
    """Asymptotic secret-key rate; comma lists sweep a grid."""
    taus = _parse_floats(tau, "--tau")
    chis = _parse_floats(chi, "--chi")
    vs = _parse_floats(v, "--V")
    rows = []
    for t, x, vv in itertools.product(taus, chis, vs):
        scenario = QkdScenario(states=states, detection=detection, reconciliation=rec,
                               v=vv, tau=t, chi=x, beta=beta, sifting=sifting)
        result = key_rate(scenario, base=ctx.obj["base"])
        rows.append({
            "states": states, "detection": detection, "reconciliation": rec,
            "tau": t, "chi": x, "V": vv, "beta": beta,
            "I_ab": float(result.i_ab), "S_eve": result.s_eve, "K": result.key,
        })
    if as_csv:
        click.echo(CSV_HEADER)
        click.echo("tau,chi,V,beta,I_ab,S_eve,K")
        for row in rows:
            click.echo(",".join(
                format(row[k], ".12g") for k in ("tau", "chi", "V", "beta", "I_ab", "S_eve", "K")
            ))
    elif len(rows) == 1:
        _emit(rows[0])
    else:
        _emit(rows)


@qkd.command("threshold")
@_scenario_options
@click.option("--V", "v", type=float, required=True)
@click.option("--tau", type=float, required=True)
@click.option("--tol", type=float, default=1e-8, show_default=True)
@click.pass_context
def qkd_threshold(ctx, states, detection, rec, beta, sifting, v, tau, tol):
    """Largest excess noise with a positive key rate."""
    scenario = QkdScenario(states=states, detection=detection, reconciliation=rec,
                           v=v, tau=tau, chi=0.0, beta=beta, sifting=sifting)
    _emit({"chi_max": security_threshold(scenario, tol=tol, base=ctx.obj["base"])})


@qkd.command("postselect")
@click.option("--tau", type=float, required=True)
@click.option("--chi", type=float, required=True)
@click.option("--va", type=float, required=True, help="Modulation variance of the displacement.")
@click.option("--detection", type=click.Choice(["homodyne", "heterodyne"]), default="homodyne",
              show_default=True)
@click.option("--beta", type=float, default=1.0, show_default=True)
@click.option("--sifting", type=float, default=None)
@click.option("--nodes", type=int, default=None, help="Quadrature nodes per axis.")
@click.pass_context
def qkd_postselect(ctx, tau, chi, va, detection, beta, sifting, nodes):
    """Postselected key rate for binary modulation."""
    key = postselection_rate(tau, chi, va, detection=detection, beta=beta,
                             sifting=sifting, nodes=nodes, base=ctx.obj["base"])
    _emit({"key": key})


@qkd.command("finite")
@_scenario_options
@click.option("--V", "v", type=float, required=True)
@click.option("--tau", type=float, required=True)
@click.option("--chi", type=float, required=True)
@click.option("--n-total", type=int, required=True)
@click.option("--n-key", type=int, required=True)
@click.option("--delta", type=float, default=None, help="Security-parameter penalty.")
@click.option("--d-term", type=float, default=None, help="Additional correction term.")
@click.option("--tau-interval", default=None, help="Worst-case interval 'lo,hi'.")
@click.option("--chi-interval", default=None, help="Worst-case interval 'lo,hi'.")
@click.pass_context
def qkd_finite(ctx, states, detection, rec, beta, sifting, v, tau, chi,
               n_total, n_key, delta, d_term, tau_interval, chi_interval):
    """Finite-size key rate with worst-case parameter intervals."""
    scenario = QkdScenario(states=states, detection=detection, reconciliation=rec,
                           v=v, tau=tau, chi=chi, beta=beta, sifting=sifting)

    def interval(text, field):
        if text is None:
            return None
        values = _parse_floats(text, field)
        if len(values) != 2:
            raise ValidationError(f"{field} must be 'lo,hi', got {text!r}")
        return tuple(values)

    key = finite_size_rate(
        scenario, n_total, n_key, delta=delta, d_term=d_term,
        tau_interval=interval(tau_interval, "--tau-interval"),
        chi_interval=interval(chi_interval, "--chi-interval"),
        base=ctx.obj["base"],
    )
    _emit({"key": key})


# ---------------------------------------------------------------------------
# cluster
# ---------------------------------------------------------------------------


def _cluster_payload(cluster):
    return {
        "graph": cluster.graph.to_dict(),
        "state": state_to_dict(cluster.state),
        "local_gaussian_equivalent": cluster.local_gaussian_equivalent,
        "nullifier_variances": nullifier_variances(cluster),
    }


@main.group()
def cluster():
    """Gaussian cluster states from graph JSON."""


@cluster.command("build")
@click.option("--json", "payload", required=True,
              help='Graph JSON {"vertices":[{"r":..}],"edges":[[i,j,g]]}.')
def cluster_build(payload):
    """Compile a graph into a Gaussian register."""
    graph = ClusterGraph.from_dict(_load_json(payload, "--json"))
    _emit(_cluster_payload(compile_graph(graph)))


@cluster.command("measure")
@click.option("--json", "payload", required=True, help="Graph JSON.")
@click.option("--measure", "ops", multiple=True, required=True,
              help="vertex:basis[:outcome], e.g. '1:p' or '0:q:0.5'; basis may be an angle. "
                   "Vertices refer to the register as it stands when the step runs.")
def cluster_measure(payload, ops):
    """Compile a graph, then apply homodyne shaping steps in order."""
    graph = ClusterGraph.from_dict(_load_json(payload, "--json"))
    current = compile_graph(graph)
    applied = []
    for op in ops:
        parts = op.split(":")
        if len(parts) not in (2, 3):
            raise ValidationError(f"--measure must be vertex:basis[:outcome], got {op!r}")
        vertex = int(parts[0])
        basis = parts[1] if parts[1] in ("q", "p") else float(parts[1])
        outcome = float(parts[2]) if len(parts) == 3 else 0.0
        current = measure_node(current, vertex, basis, outcome=outcome)
        applied.append({"vertex": vertex, "basis": parts[1], "outcome": outcome})
    report = _cluster_payload(current)
    report["applied"] = applied
    _emit(report)


@cluster.command("nullifiers")
@click.option("--json", "payload", required=True, help="Graph JSON.")
def cluster_nullifiers(payload):
    """Nullifier variances and means of the compiled graph."""
    graph = ClusterGraph.from_dict(_load_json(payload, "--json"))
    compiled = compile_graph(graph)
    _emit({
        "variances": nullifier_variances(compiled),
        "means": nullifier_means(compiled),
    })


# ---------------------------------------------------------------------------
# oracle
# ---------------------------------------------------------------------------

_ORACLE_KINDS = ("vacuum", "coherent", "squeezed", "thermal")


def _oracle_pair(kind, alpha, r, theta, nbar, cutoff, which):
    if kind not in _ORACLE_KINDS:
        raise ValidationError(f"--kind{which} must be one of {_ORACLE_KINDS}, got {kind!r}")
    amp = _parse_complex(alpha, f"--alpha{which}") if alpha is not None else 0j
    params = {"alpha": amp, "r": r, "theta": theta, "nbar": nbar}
    if kind == "vacuum":
        gaussian = make_state("vacuum")
    elif kind == "coherent":
        gaussian = make_state("coherent", alpha=amp)
    elif kind == "squeezed":
        gaussian = make_state("squeezed", r=r, theta=theta)
    else:
        gaussian = make_state("thermal", nbar=nbar)
    defaults = {"coherent": {"r", "theta", "nbar"}, "squeezed": {"alpha", "nbar"},
                "thermal": {"alpha", "r", "theta"}, "vacuum": {"alpha", "r", "theta", "nbar"}}
    kwargs = {k: v for k, v in params.items() if k not in defaults[kind]}
    rho = fock.one_mode_gaussian_dm(cutoff=cutoff, **kwargs)
    return gaussian, rho


@main.group()
def oracle():
    """Truncated-Fock cross-checks of the phase-space formulas."""


@oracle.command("compare")
@click.option("--kind0", required=True, type=click.Choice(list(_ORACLE_KINDS)))
@click.option("--kind1", required=True, type=click.Choice(list(_ORACLE_KINDS)))
@click.option("--alpha0", default=None)
@click.option("--alpha1", default=None)
@click.option("--r0", type=float, default=0.0)
@click.option("--r1", type=float, default=0.0)
@click.option("--theta0", type=float, default=0.0)
@click.option("--theta1", type=float, default=0.0)
@click.option("--nbar0", type=float, default=0.0)
@click.option("--nbar1", type=float, default=0.0)
@click.option("--cutoff", type=int, default=fock.DEFAULT_CUTOFF, show_default=True)
def oracle_compare(kind0, kind1, alpha0, alpha1, r0, r1, theta0, theta1, nbar0, nbar1, cutoff):
    """Compare Fock-basis metrics against the covariance-matrix formulas."""
    s0, rho0 = _oracle_pair(kind0, alpha0, r0, theta0, nbar0, cutoff, "0")
    s1, rho1 = _oracle_pair(kind1, alpha1, r1, theta1, nbar1, cutoff, "1")
    mean0, cov0 = fock.moments(rho0)
    mean1, cov1 = fock.moments(rho1)
    _emit({
        "fock": {
            "fidelity": fock.fidelity(rho0, rho1),
            "trace_distance": fock.trace_distance(rho0, rho1),
            "helstrom": fock.helstrom_error(rho0, rho1),
        },
        "gaussian": {
            "fidelity": fidelity_gaussian(s0, s1),
            "bounds": bounds_chain(s0, s1),
        },
        "moment_gap": {
            "state0": max(float(np.max(np.abs(mean0 - s0.mean))),
                          float(np.max(np.abs(cov0 - s0.cov)))),
            "state1": max(float(np.max(np.abs(mean1 - s1.mean))),
                          float(np.max(np.abs(cov1 - s1.cov)))),
        },
    })


if __name__ == "__main__":
    main()
