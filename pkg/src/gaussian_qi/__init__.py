"""Numerical toolkit for Gaussian quantum information.

Phase-space states and symplectic algebra, Gaussian unitaries, measurements,
entanglement metrics, state discrimination, protocol calculators, bosonic
channels, CV-QKD rates, cluster states, and a dense Fock-space oracle for
cross-checking the phase-space results.

Conventions used throughout:

- ``hbar = 2``; the vacuum covariance matrix is the identity.
- Quadratures are interleaved, ``x = (q1, p1, ..., qN, pN)``.
- The symplectic form is ``Omega = direct_sum([[0, 1], [-1, 0]], ...)``.
- Logarithms in entropies, capacities and rates honor the global log base
  (:func:`gaussian_qi.config.set_log_base`), base 2 by default.

The headline API is lifted to the package root; everything else lives in the
submodules (``gaussian_qi.fock`` stays namespaced — it is the slow cross-check
oracle, not part of the fast path).
"""

__version__ = "0.1.0"

from . import (
    channels,
    cluster,
    config,
    discrimination,
    entanglement,
    fock,
    measurements,
    phase_space,
    protocols,
    qkd,
    unitaries,
)
from .errors import ValidationError, NumericalError
from .phase_space import (
    GaussianState,
    WilliamsonDecomposition,
    EulerDecomposition,
    symplectic_form,
    is_symplectic,
    vacuum_state,
    thermal_state,
    coherent_state,
    squeezed_vacuum_state,
    epr_state,
    make_state,
    validate_state,
    symplectic_eigenvalues,
    williamson,
    euler,
    purify,
    tensor,
    partial_trace,
    permute_modes,
    g_function,
    von_neumann_entropy,
    is_pure,
    wigner_at,
    char_fn_at,
    state_to_dict,
    state_from_dict,
    state_to_json,
    state_from_json,
)
from .unitaries import (
    rotation,
    squeezer,
    two_mode_squeezer,
    beam_splitter,
    identity,
    embed,
    compose,
    displace,
    apply_symplectic,
)
from .measurements import (
    homodyne,
    heterodyne,
    homodyne_distribution,
    heterodyne_distribution,
    sample_homodyne,
    sample_heterodyne,
)
from .entanglement import (
    partial_transpose,
    ppt_test,
    log_negativity,
    entropy_of_entanglement,
    two_mode_symplectic_spectrum,
    epr_correlations,
)
from .discrimination import (
    binary_entropy,
    helstrom_pure,
    helstrom_two_coherent,
    qcb_coefficient,
    qcb,
    bhattacharyya_error,
    fidelity_gaussian,
    fidelity_error_bounds,
    bounds_chain,
    multicopy_error,
    kennedy_pe,
    helstrom_bpsk_pe,
    homodyne_pe,
    odr_pe,
    odr_optimize,
)
from .protocols import (
    BellRecord,
    TeleportRecord,
    CloneRecord,
    SwapRecord,
    bell_measurement,
    bell_displacement,
    teleport_output,
    teleport_fidelity,
    classify_teleport_fidelity,
    teleport,
    entanglement_swap,
    clone_coherent,
    mn_clone_fidelity,
    dense_coding_rate,
)
from .channels import (
    GaussianChannel,
    CanonicalForm,
    Dilation,
    identity_channel,
    canonical_channel,
    loss_channel,
    apply_channel,
    invariants_of,
    classify,
    dilate,
    degradability,
    capacities,
    broadband_capacity,
    coherent_info,
    illumination_error_bounds,
    reading_error,
    channel_to_dict,
    channel_from_dict,
)
from .qkd import (
    QkdScenario,
    KeyRateResult,
    MutualInformation,
    scenario_from_dict,
    scenario_to_dict,
    shared_cm,
    mutual_information,
    eve_holevo,
    entangling_cloner_holevo,
    key_rate,
    security_threshold,
    postselection_rate,
    finite_size_rate,
    eb_source_params,
)
from .cluster import (
    ClusterGraph,
    ClusterState,
    StabilizerCheck,
    WireTeleportRecord,
    cz_gate,
    compile_graph,
    nullifier_forms,
    nullifier_variances,
    nullifier_means,
    stabilizer_check,
    measure_node,
    wire_teleport_step,
    line_graph,
    star_graph,
    lattice_graph,
)

__all__ = [
    "__version__",
    # submodules
    "channels",
    "cluster",
    "config",
    "discrimination",
    "entanglement",
    "fock",
    "measurements",
    "phase_space",
    "protocols",
    "qkd",
    "unitaries",
    # errors
    "ValidationError",
    "NumericalError",
    # phase space
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
    # unitaries
    "rotation",
    "squeezer",
    "two_mode_squeezer",
    "beam_splitter",
    "identity",
    "embed",
    "compose",
    "displace",
    "apply_symplectic",
    # measurements
    "homodyne",
    "heterodyne",
    "homodyne_distribution",
    "heterodyne_distribution",
    "sample_homodyne",
    "sample_heterodyne",
    # entanglement
    "partial_transpose",
    "ppt_test",
    "log_negativity",
    "entropy_of_entanglement",
    "two_mode_symplectic_spectrum",
    "epr_correlations",
    # discrimination
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
    # protocols
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
    # channels
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
    # qkd
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
    # cluster
    "ClusterGraph",
    "ClusterState",
    "StabilizerCheck",
    "WireTeleportRecord",
    "cz_gate",
    "compile_graph",
    "nullifier_forms",
    "nullifier_variances",
    "nullifier_means",
    "stabilizer_check",
    "measure_node",
    "wire_teleport_step",
    "line_graph",
    "star_graph",
    "lattice_graph",
]
