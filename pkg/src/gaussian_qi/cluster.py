"""Gaussian cluster states on weighted graphs.

A cluster is compiled from finitely squeezed momentum eigenstates -- one
p-squeezed vacuum per vertex with Var(p) = exp(-2r), Var(q) = exp(+2r) --
entangled by a CZ gate per weighted edge. Diagnostics are phrased through
the nullifiers H_i = p_i - sum_j g_ij q_j, whose variances on the compiled
state equal exp(-2 r_i) exactly and vanish only in the infinite-squeezing
limit. Quadrature measurements shape the cluster: a q measurement deletes
the vertex exactly (up to displacements on its neighbours), while a p
measurement shortens wires. The p rule recorded in the graph metadata is
exact for chain interiors; for vertices whose neighbourhood carries extra
edges the reduction rewires them (the state is corrected with a Fourier
gate on one designated neighbour plus shears on common neighbours, and the
result is flagged local-Gaussian-equivalent).

Single teleportation steps through a finitely squeezed wire are provided
separately: the output covariance is the exact Gaussian conditional, it
approaches X(m) F (optionally composed with the shear P(eta)) as the wire
squeezing V_S -> 0, and the residual against the ideal action is reported
as a distortion. In wavefunction language the residual is a damping
envelope exp(-q^2 V_S / 2) applied after the ideal gate.
"""

from __future__ import annotations

import dataclasses
import json
import math

import numpy as np
import scipy.linalg as la

from .errors import ValidationError
from .measurements import homodyne
from .phase_space import GaussianState, tensor
from .unitaries import apply_symplectic, rotation

__all__ = [
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


# ---------------------------------------------------------------------------
# Graphs
# ---------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class ClusterGraph:
    """Weighted simple graph with a squeezing parameter per vertex.

    Attributes:
        squeezings: per-vertex squeezing r (vertex i is a p-squeezed vacuum
            with Var(p) = exp(-2 r_i) before the edges are applied).
        edges: (i, j, weight) triples, stored with i < j and sorted.
    """

    squeezings: tuple
    edges: tuple

    def __post_init__(self):
        rs = tuple(float(r) for r in self.squeezings)
        if not rs:
            raise ValidationError("graph needs at least one vertex")
        if not all(math.isfinite(r) for r in rs):
            raise ValidationError("vertex squeezings must be finite")
        n = len(rs)
        seen = set()
        normalized = []
        for edge in self.edges:
            if len(edge) != 3:
                raise ValidationError(f"edge must be (i, j, weight), got {edge}")
            i, j, g = int(edge[0]), int(edge[1]), float(edge[2])
            if i == j:
                raise ValidationError(f"self-loop on vertex {i}")
            if not 0 <= i < n or not 0 <= j < n:
                raise ValidationError(f"edge ({i}, {j}) outside 0..{n - 1}")
            if not math.isfinite(g):
                raise ValidationError(f"edge ({i}, {j}) has non-finite weight")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise ValidationError(f"duplicate edge {key}")
            seen.add(key)
            normalized.append((key[0], key[1], g))
        object.__setattr__(self, "squeezings", rs)
        object.__setattr__(self, "edges", tuple(sorted(normalized)))

    @property
    def num_vertices(self) -> int:
        return len(self.squeezings)

    def neighbors(self, vertex: int) -> dict:
        """Map neighbour index -> edge weight for one vertex."""
        if not 0 <= vertex < self.num_vertices:
            raise ValidationError(f"vertex {vertex} outside 0..{self.num_vertices - 1}")
        out = {}
        for i, j, g in self.edges:
            if i == vertex:
                out[j] = g
            elif j == vertex:
                out[i] = g
        return out

    def adjacency(self) -> np.ndarray:
        """Symmetric weight matrix (zero diagonal)."""
        n = self.num_vertices
        a = np.zeros((n, n))
        for i, j, g in self.edges:
            a[i, j] = a[j, i] = g
        return a

    def to_dict(self) -> dict:
        return {
            "vertices": [{"r": r} for r in self.squeezings],
            "edges": [[i, j, g] for i, j, g in self.edges],
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "ClusterGraph":
        if not isinstance(payload, dict):
            raise ValidationError("graph payload must be an object")
        missing = {"vertices", "edges"} - set(payload)
        if missing:
            raise ValidationError(f"graph payload missing keys: {sorted(missing)}")
        vertices = payload["vertices"]
        if not isinstance(vertices, list):
            raise ValidationError("'vertices' must be a list of {'r': ...} entries")
        rs = []
        for k, entry in enumerate(vertices):
            if not isinstance(entry, dict) or "r" not in entry:
                raise ValidationError(f"vertex {k} must be an object with an 'r' key")
            rs.append(entry["r"])
        edges = payload["edges"]
        if not isinstance(edges, list):
            raise ValidationError("'edges' must be a list of [i, j, weight] triples")
        triples = []
        for edge in edges:
            if len(edge) == 2:
                triples.append((edge[0], edge[1], 1.0))
            else:
                triples.append(tuple(edge))
        return cls(tuple(rs), tuple(triples))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "ClusterGraph":
        return cls.from_dict(json.loads(text))


def line_graph(n: int, r, weight: float = 1.0) -> ClusterGraph:
    """Chain 0-1-...-(n-1) with uniform edge weight."""
    rs = _broadcast_r(r, n)
    return ClusterGraph(rs, tuple((k, k + 1, weight) for k in range(n - 1)))


def star_graph(leaves: int, r, weight: float = 1.0) -> ClusterGraph:
    """Central vertex 0 connected to ``leaves`` outer vertices."""
    if leaves < 1:
        raise ValidationError(f"star needs at least one leaf, got {leaves}")
    rs = _broadcast_r(r, leaves + 1)
    return ClusterGraph(rs, tuple((0, k, weight) for k in range(1, leaves + 1)))


def lattice_graph(rows: int, cols: int, r, weight: float = 1.0) -> ClusterGraph:
    """Rectangular grid, row-major vertex numbering."""
    if rows < 1 or cols < 1:
        raise ValidationError(f"lattice needs positive dimensions, got {rows}x{cols}")
    rs = _broadcast_r(r, rows * cols)
    edges = []
    for row in range(rows):
        for col in range(cols):
            k = row * cols + col
            if col + 1 < cols:
                edges.append((k, k + 1, weight))
            if row + 1 < rows:
                edges.append((k, k + cols, weight))
    return ClusterGraph(rs, tuple(edges))


def _broadcast_r(r, n: int) -> tuple:
    if n < 1:
        raise ValidationError(f"graph needs at least one vertex, got {n}")
    if np.ndim(r) == 0:
        return (float(r),) * n
    rs = tuple(float(x) for x in r)
    if len(rs) != n:
        raise ValidationError(f"expected {n} squeezing values, got {len(rs)}")
    return rs


# ---------------------------------------------------------------------------
# Compilation
# ---------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class ClusterState:
    """A graph together with the Gaussian register realizing it.

    ``local_gaussian_equivalent`` is False while the state equals the
    compiled graph (up to measurement-outcome displacements and finite
    squeezing); it turns True once a shaping step had to rewire edges
    beyond plain wire-shortening, in which case conclusions should be
    drawn from the state, not from the recorded edges.
    """

    graph: ClusterGraph
    state: GaussianState
    local_gaussian_equivalent: bool = False

    def __post_init__(self):
        if self.graph.num_vertices != self.state.num_modes:
            raise ValidationError(
                f"graph has {self.graph.num_vertices} vertices but state has "
                f"{self.state.num_modes} modes"
            )


def cz_gate(weight: float = 1.0) -> np.ndarray:
    """Two-mode CZ symplectic: p_1 += g q_2, p_2 += g q_1."""
    g = float(weight)
    if not math.isfinite(g):
        raise ValidationError("CZ weight must be finite")
    s = np.eye(4)
    s[1, 2] = g
    s[3, 0] = g
    return s


def _p_squeezed_vacuum(r: float) -> GaussianState:
    return GaussianState(np.zeros(2), np.diag([np.exp(2.0 * r), np.exp(-2.0 * r)]))


def compile_graph(graph: ClusterGraph) -> ClusterState:
    """Build the register: squeezed vacua, then one CZ per edge.

    The edges commute (each only adds position information to momenta), so
    the result does not depend on application order; edges are applied in
    their stored sorted order to keep the output bit-for-bit deterministic.
    """
    state = tensor(*(_p_squeezed_vacuum(r) for r in graph.squeezings))
    for i, j, g in graph.edges:
        state = apply_symplectic(state, cz_gate(g), modes=[i, j], check=False)
    return ClusterState(graph=graph, state=state)


# ---------------------------------------------------------------------------
# Nullifiers and stabilizers
# ---------------------------------------------------------------------------


def nullifier_forms(graph: ClusterGraph) -> np.ndarray:
    """Rows of H_i = p_i - sum_j g_ij q_j as quadrature coefficient vectors.

    Uses the interleaved ordering (q_1, p_1, ...). With weighted edges the
    position terms carry the edge weights, which keeps Var(H_i) equal to
    the vertex squeezing exp(-2 r_i) on the compiled state for any graph.
    """
    n = graph.num_vertices
    forms = np.zeros((n, 2 * n))
    forms[np.arange(n), 2 * np.arange(n) + 1] = 1.0
    for i, j, g in graph.edges:
        forms[i, 2 * j] = -g
        forms[j, 2 * i] = -g
    return forms


def nullifier_variances(cluster: ClusterState) -> np.ndarray:
    """Var(H_i) for every vertex, from the quadratic form on the covariance."""
    forms = nullifier_forms(cluster.graph)
    return np.einsum("ik,kl,il->i", forms, cluster.state.cov, forms)


def nullifier_means(cluster: ClusterState) -> np.ndarray:
    """<H_i> for every vertex (zero for a freshly compiled cluster)."""
    return nullifier_forms(cluster.graph) @ cluster.state.mean


@dataclasses.dataclass(frozen=True)
class StabilizerCheck:
    """Residuals of the stabilizer displacements K_i(s) = X_i(s) prod_j Z_j(g_ij s).

    Attributes:
        mean_shifts: per-vertex max change of the nullifier means under the
            K_i(s) displacement; identically zero because the displacement
            lies in the kernel of the nullifier forms.
        log_infidelities: per-vertex -ln F between the displaced and the
            original state (equal covariances, so F = exp(-d V^{-1} d / 4));
            scales like exp(-2r), vanishing only for ideal clusters.
    """

    mean_shifts: np.ndarray
    log_infidelities: np.ndarray

    @property
    def nullifier_residual(self) -> float:
        return float(np.max(self.mean_shifts))

    @property
    def state_residual(self) -> float:
        return float(np.max(self.log_infidelities))


def stabilizer_check(cluster: ClusterState, s: float) -> StabilizerCheck:
    """Check how well the displacement pattern of each K_i(s) stabilizes."""
    s = float(s)
    if not math.isfinite(s):
        raise ValidationError("stabilizer argument must be finite")
    graph = cluster.graph
    n = graph.num_vertices
    forms = nullifier_forms(graph)
    adj = graph.adjacency()
    shifts = np.zeros(n)
    infid = np.zeros(n)
    for i in range(n):
        d = np.zeros(2 * n)
        d[2 * i] = s
        d[2 * np.arange(n) + 1] += adj[i] * s
        shifts[i] = np.max(np.abs(forms @ d))
        infid[i] = 0.25 * float(d @ la.solve(cluster.state.cov, d, assume_a="pos"))
    return StabilizerCheck(mean_shifts=shifts, log_infidelities=infid)


# ---------------------------------------------------------------------------
# Measurement-based shaping
# ---------------------------------------------------------------------------


def measure_node(cluster: ClusterState, vertex: int, basis="q", outcome: float = 0.0) -> ClusterState:
    """Homodyne one vertex and update graph metadata.

    Args:
        cluster: compiled (or previously shaped) cluster.
        vertex: vertex to measure.
        basis: "q", "p", or a float angle theta measuring
            cos(theta) q + sin(theta) p.
        outcome: measured value; it displaces the neighbours' means and is
            otherwise immaterial (Gaussian conditioning never changes the
            covariance with the outcome).

    A q measurement removes the vertex and its edges; the remaining
    covariance equals the recompiled reduced graph exactly. A p measurement
    removes the vertex and shortens the wire through it: with designated
    neighbour d (the highest-indexed one) the new weights are
    A'_id = A_iv / A_dv and A'_ik = A_ik - (A_iv A_dk + A_id A_vk) / A_dv,
    and the state is corrected with an inverse Fourier gate on d plus
    shears on common neighbours of v and d so that it matches the recorded
    graph up to finite-squeezing error. When that reduction rewires any
    edge beyond plain chain shortening -- or for a rotated basis, where no
    graph rule is recorded at all -- the result is flagged
    local-Gaussian-equivalent.
    """
    graph = cluster.graph
    n = graph.num_vertices
    if not 0 <= vertex < n:
        raise ValidationError(f"vertex {vertex} outside 0..{n - 1}")
    if n == 1:
        raise ValidationError("measuring the last vertex leaves an empty register")
    if basis == "q":
        angle = 0.0
    elif basis == "p":
        angle = 0.5 * math.pi
    else:
        angle = float(basis)
        if not math.isfinite(angle):
            raise ValidationError("rotated basis angle must be finite")
    state = homodyne(cluster.state, vertex, outcome, angle=angle)
    rs = tuple(r for k, r in enumerate(graph.squeezings) if k != vertex)
    keep = [k for k in range(n) if k != vertex]
    adj = graph.adjacency()
    flagged = cluster.local_gaussian_equivalent

    if basis == "p" and np.any(adj[:, vertex] != 0.0):
        neighbours = np.flatnonzero(adj[:, vertex])
        d = int(neighbours[-1])
        others = [k for k in neighbours[:-1]]
        common = [k for k in others if adj[k, d] != 0.0]
        rewired = bool(np.any(np.delete(adj[:, d], [vertex, d]) != 0.0)) or bool(common)
        flagged = flagged or rewired or len(neighbours) > 2
        col = adj[:, vertex] / adj[d, vertex]
        col[d] = 0.0
        reduced = adj - (
            np.outer(adj[:, vertex], adj[d, :]) + np.outer(adj[:, d], adj[vertex, :])
        ) / adj[d, vertex]
        reduced[:, d] = col
        reduced[d, :] = col
        shears = -np.diag(reduced).copy()
        np.fill_diagonal(reduced, 0.0)
        new_adj = reduced[np.ix_(keep, keep)]
        # Local corrections aligning the state with the recorded graph:
        # inverse Fourier on the designated neighbour, then the shears
        # absorbing the self-terms of the reduction.
        state = apply_symplectic(
            state, rotation(-0.5 * math.pi), modes=[keep.index(d)], check=False
        )
        for k in np.flatnonzero(shears):
            if k == vertex:
                continue
            shear = np.array([[1.0, 0.0], [shears[k], 1.0]])
            state = apply_symplectic(state, shear, modes=[keep.index(int(k))], check=False)
    else:
        new_adj = adj[np.ix_(keep, keep)]
        if basis not in ("q", "p"):
            flagged = True

    edges = tuple(
        (i, j, new_adj[i, j])
        for i in range(len(keep))
        for j in range(i + 1, len(keep))
        if new_adj[i, j] != 0.0
    )
    return ClusterState(
        graph=ClusterGraph(rs, edges),
        state=state,
        local_gaussian_equivalent=flagged,
    )


# ---------------------------------------------------------------------------
# Wire teleportation
# ---------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class WireTeleportRecord:
    """One teleportation step through a finitely squeezed wire.

    Attributes:
        state: conditional output state.
        ideal_cov / ideal_mean: X(m sqrt(1+eta^2)) F P(eta) applied to the
            input, the exact result for an ideally squeezed wire.
        distortion: max-abs deviation of the output covariance from
            ideal_cov; the finite-squeezing damping envelope
            exp(-q^2 V_S/2) in wavefunction language.
        v_s: wire squeezing (ancilla Var(p)).
        eta: shear parameter selected by the measured quadrature.
        outcome: homodyne outcome.
    """

    state: GaussianState
    ideal_cov: np.ndarray
    ideal_mean: np.ndarray
    distortion: float
    v_s: float
    eta: float
    outcome: float


def wire_teleport_step(
    input_state: GaussianState, v_s: float, outcome: float = 0.0, eta: float = 0.0
) -> WireTeleportRecord:
    """Teleport one mode across a CZ link onto a p-squeezed wire mode.

    The wire mode has Var(p) = ``v_s`` (and Var(q) = 1/v_s); after the CZ
    the input mode is homodyned along (eta q + p)/sqrt(1 + eta^2). With
    eta = 0 this is the plain p measurement whose ideal limit is X(m) F;
    nonzero eta additionally applies the shear P(eta): p -> p + eta q.

    Returns the conditional output together with the ideal-wire action and
    the covariance distortion caused by finite squeezing.
    """
    if input_state.num_modes != 1:
        raise ValidationError(
            f"wire teleportation takes a one-mode input, got {input_state.num_modes}"
        )
    v_s = float(v_s)
    if not 0.0 < v_s <= 1.0:
        raise ValidationError(f"wire squeezing must be in (0, 1], got {v_s}")
    eta = float(eta)
    if not math.isfinite(eta):
        raise ValidationError("shear parameter must be finite")
    wire = GaussianState(np.zeros(2), np.diag([1.0 / v_s, v_s]))
    joint = tensor(input_state, wire)
    joint = apply_symplectic(joint, cz_gate(1.0), modes=[0, 1], check=False)
    angle = math.atan2(1.0, eta)
    out = homodyne(joint, 0, outcome, angle=angle)

    ideal_gate = rotation(0.5 * math.pi) @ np.array([[1.0, 0.0], [eta, 1.0]])
    ideal_cov = ideal_gate @ input_state.cov @ ideal_gate.T
    ideal_mean = ideal_gate @ input_state.mean
    ideal_mean = ideal_mean + np.array([float(outcome) * math.hypot(1.0, eta), 0.0])
    distortion = float(np.max(np.abs(out.cov - ideal_cov)))
    return WireTeleportRecord(
        state=out,
        ideal_cov=ideal_cov,
        ideal_mean=ideal_mean,
        distortion=distortion,
        v_s=v_s,
        eta=eta,
        outcome=float(outcome),
    )
