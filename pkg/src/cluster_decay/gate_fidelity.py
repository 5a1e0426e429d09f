"""Gate teleportation on (noisy) cluster states.

A GateSpec bundles a cluster graph, an ordered single-qubit measurement
pattern, the outcome-dependent Pauli byproduct corrections, and the ideal
teleportation resource state the pattern is meant to produce.  Gate fidelity
is the overlap of the actually-produced resource (after measuring, applying
byproducts, and tracing out the measured qubits) with the ideal one.

Measurement bases live in the XY plane: angle 0 is the X basis, angle pi/2
the Y basis, and a step may flip the sign of its angle conditioned on an
earlier outcome (the adaptive basis used by the Z-rotation pattern).

Every spec is validated at construction: outcome completeness, stabilizer
consistency of the resource, and the self-consistency requirement that a
perfect cluster state yields fidelity 1.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from functools import cached_property
from itertools import product

import numpy as np

from .cluster import ClusterGraph, chain, cluster_state
from .quantum_core import PauliString, fidelity_pure, tensor

PLUS = np.array([1, 1], dtype=complex) / np.sqrt(2)
MINUS = np.array([1, -1], dtype=complex) / np.sqrt(2)
BELL = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)

SELF_CONSISTENCY_TOL = 1e-10
PATH_AGREEMENT_TOL = 1e-10


@dataclass(frozen=True)
class MeasurementStep:
    """One single-qubit measurement: site, XY-plane angle, optional sign condition.

    condition_on names an earlier measured site; when that outcome is 1 the
    effective angle flips sign.  angle 0 with no condition is a plain X
    measurement.
    """

    site: int
    angle: float = 0.0
    condition_on: int | None = None

    def effective_angle(self, earlier_outcomes: dict) -> float:
        if self.condition_on is None:
            return self.angle
        if self.condition_on not in earlier_outcomes:
            raise ValueError(
                f"step at site {self.site} conditions on site {self.condition_on}, "
                "which is not measured earlier"
            )
        return self.angle if earlier_outcomes[self.condition_on] == 0 else -self.angle


def xy_basis_state(outcome: int, angle: float) -> np.ndarray:
    """Eigenvectors of cos(angle) X + sin(angle) Y for outcomes 0 (+1) and 1 (-1)."""
    c, s = np.cos(angle / 2), np.sin(angle / 2)
    if outcome == 0:
        return c * PLUS - 1j * s * MINUS
    return c * MINUS - 1j * s * PLUS


@dataclass
class FidelitySeries:
    """A fidelity curve sampled over one scan parameter."""

    parameter: str
    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        self.grid = np.asarray(self.grid, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.grid.ndim != 1 or self.grid.shape != self.values.shape:
            raise ValueError("grid and values must be 1-D arrays of equal length")
        if self.grid.size > 1 and np.any(np.diff(self.grid) <= 0):
            raise ValueError("grid must be strictly ascending")
        if self.values.min() < -1e-9 or self.values.max() > 1 + 1e-9:
            raise ValueError("fidelity values outside [0, 1] beyond tolerance")

    def __len__(self) -> int:
        return self.grid.size


class GateSpec:
    """Measurement pattern + byproduct rules + ideal resource for one gate.

    byproducts maps each outcome tuple (bit per measurement step, in step
    order) to a PauliString on the output sites.  resource_stabilizers are
    dense involutions whose joint +1 eigenspace is spanned by resource_state
    alone (the Z-rotation resource needs a non-Pauli generator, so dense
    matrices rather than PauliStrings are stored).
    """

    def __init__(self, name, graph: ClusterGraph, steps, output_sites,
                 resource_state, resource_stabilizers, byproducts=None):
        self.name = name
        self.graph = graph
        self.steps = tuple(steps)
        self.output_sites = tuple(output_sites)
        self.resource_state = np.asarray(resource_state, dtype=complex)
        self.resource_stabilizers = tuple(np.asarray(s, dtype=complex)
                                          for s in resource_stabilizers)
        self._validate_layout()
        self._validate_resource()
        if byproducts is None:
            byproducts = solve_byproducts(self)
        self.byproducts = dict(byproducts)
        self._validate_self_consistency()

    # -- layout ------------------------------------------------------------

    @property
    def measured_sites(self) -> tuple:
        return tuple(s.site for s in self.steps)

    @property
    def n_outputs(self) -> int:
        return len(self.output_sites)

    def _validate_layout(self):
        n = self.graph.n
        measured = self.measured_sites
        if len(set(measured)) != len(measured):
            raise ValueError("a site is measured twice")
        overlap = set(measured) & set(self.output_sites)
        if overlap:
            raise ValueError(f"sites {overlap} are both measured and kept")
        if set(measured) | set(self.output_sites) != set(range(1, n + 1)):
            raise ValueError("measured and output sites must partition the graph")
        seen = set()
        for step in self.steps:
            if step.condition_on is not None and step.condition_on not in seen:
                raise ValueError(
                    f"step at site {step.site} conditions on a later or unmeasured site")
            seen.add(step.site)
        if self.resource_state.shape != (2 ** self.n_outputs,):
            raise ValueError("resource state dimension does not match output count")

    def _validate_resource(self):
        proj = resource_projector(self.resource_stabilizers)
        target = np.outer(self.resource_state, self.resource_state.conj())
        if abs(np.trace(proj).real - 1.0) > 1e-9:
            raise ValueError("stabilizers do not single out a one-dimensional +1 eigenspace")
        if np.max(np.abs(proj - target)) > 1e-9:
            raise ValueError("resource state is not the joint +1 eigenvector of its stabilizers")

    def _validate_self_consistency(self):
        rho = np.outer(cluster_state(self.graph), cluster_state(self.graph).conj())
        f = gate_fidelity(rho, self)
        if abs(f - 1.0) > SELF_CONSISTENCY_TOL:
            raise ValueError(
                f"gate {self.name!r} fails self-consistency: perfect-cluster fidelity {f}")

    # -- outcome machinery ---------------------------------------------------

    def outcomes(self):
        return product((0, 1), repeat=len(self.steps))

    def outcome_vectors(self, m) -> list:
        """Per-step single-qubit basis vectors for outcome tuple m."""
        if len(m) != len(self.steps):
            raise ValueError("outcome bit count does not match measurement steps")
        earlier = {}
        vecs = []
        for step, bit in zip(self.steps, m):
            ang = step.effective_angle(earlier)
            vecs.append(xy_basis_state(bit, ang))
            earlier[step.site] = bit
        return vecs

    @cached_property
    def _collapse_maps(self) -> dict:
        """Outcome -> matrix A_m with A_m rho A_m^dag the (byproduct-corrected,
        unnormalized) output branch; shape (2^outputs, 2^n)."""
        n = self.graph.n
        letters = string.ascii_lowercase[:n]
        out_letters = "".join(letters[s - 1] for s in self.output_sites)
        eye = np.eye(2 ** n, dtype=complex).reshape([2] * n + [2 ** n])
        maps = {}
        for m in self.outcomes():
            vecs = self.outcome_vectors(m)
            operands = [eye] + [v.conj() for v in vecs]
            subs = [letters + "q"] + [letters[s.site - 1] for s in self.steps]
            a = np.einsum(",".join(subs) + "->" + out_letters + "q",
                          *operands).reshape(2 ** self.n_outputs, 2 ** n)
            maps[m] = self.byproducts[m].matrix() @ a
        return maps

    @cached_property
    def effect_operator(self) -> np.ndarray:
        """Heisenberg-picture observable G with F_U(rho) = Tr(rho G).

        G = sum_m A_m^dag |res><res| A_m; gate fidelity is linear in the
        input state, so scans evaluate a single trace per point.
        """
        target = np.outer(self.resource_state, self.resource_state.conj())
        g = np.zeros((self.graph.dim, self.graph.dim), dtype=complex)
        for a in self._collapse_maps.values():
            g += a.conj().T @ target @ a
        return g


def resource_projector(stabilizers) -> np.ndarray:
    """prod_i (S_i + 1)/2 over the full generating set."""
    mats = [np.asarray(s, dtype=complex) for s in stabilizers]
    dim = mats[0].shape[0]
    proj = np.eye(dim, dtype=complex)
    for s in mats:
        proj = proj @ (s + np.eye(dim)) / 2
    return proj


def solve_byproducts(spec: GateSpec) -> dict:
    """Find, per outcome, a Pauli correction mapping the collapsed output onto
    the resource state.  Raises if any outcome admits none (wrong pattern)."""
    n = spec.graph.n
    psi = cluster_state(spec.graph)
    letters = string.ascii_lowercase[:n]
    out_letters = "".join(letters[s - 1] for s in spec.output_sites)
    psi_t = psi.reshape([2] * n)
    target = spec.resource_state
    no = spec.n_outputs
    byproducts = {}
    for m in spec.outcomes():
        vecs = spec.outcome_vectors(m)
        operands = [psi_t] + [v.conj() for v in vecs]
        subs = [letters] + [letters[s.site - 1] for s in spec.steps]
        v = np.einsum(",".join(subs) + "->" + out_letters, *operands).reshape(-1)
        norm = np.linalg.norm(v)
        if norm < 1e-12:
            raise ValueError(f"outcome {m} has zero probability on the perfect cluster")
        v = v / norm
        found = None
        for combo in product("IXYZ", repeat=no):
            b = PauliString(1, "".join(combo))
            if abs(abs(np.vdot(target, b.matrix() @ v)) - 1.0) < 1e-9:
                found = b
                break
        if found is None:
            raise ValueError(
                f"no Pauli byproduct maps outcome {m} onto the resource state")
        byproducts[m] = found
    return byproducts


# -- operations --------------------------------------------------------------


def measurement_projector(spec: GateSpec, m) -> np.ndarray:
    """Full-dimension projector P_m (rank 2^outputs) for outcome tuple m."""
    vecs = dict(zip(spec.measured_sites, spec.outcome_vectors(m)))
    factors = []
    for site in range(1, spec.graph.n + 1):
        if site in vecs:
            v = vecs[site]
            factors.append(np.outer(v, v.conj()))
        else:
            factors.append(np.eye(2, dtype=complex))
    return tensor(*factors)


def gate_output_state(rho: np.ndarray, spec: GateSpec) -> np.ndarray:
    """Exact outcome sum: trace out measured qubits of sum_m B_m P_m rho P_m B_m."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (spec.graph.dim, spec.graph.dim):
        raise ValueError("state dimension does not match the gate's graph")
    out = np.zeros((2 ** spec.n_outputs,) * 2, dtype=complex)
    for a in spec._collapse_maps.values():
        out += a @ rho @ a.conj().T
    return out


def gate_fidelity(rho: np.ndarray, spec: GateSpec) -> float:
    """Overlap of the produced resource with the ideal one.

    Evaluated through the resource-state overlap and cross-checked against
    the stabilizer-projector form; the two must agree to PATH_AGREEMENT_TOL.
    """
    rho_u = gate_output_state(rho, spec)
    f_state = fidelity_pure(rho_u, spec.resource_state)
    f_stab = float(np.real(np.trace(rho_u @ resource_projector(spec.resource_stabilizers))))
    if abs(f_state - f_stab) > PATH_AGREEMENT_TOL:
        raise AssertionError(
            f"fidelity evaluation paths disagree: {f_state} vs {f_stab}")
    return f_state


# -- builtin gates ------------------------------------------------------------


def rotation_matrix(zeta: float) -> np.ndarray:
    """diag(e^{i zeta/2}, e^{-i zeta/2}): rotation about Z by -zeta."""
    return np.diag([np.exp(1j * zeta / 2), np.exp(-1j * zeta / 2)])


def _zrot_byproducts() -> dict:
    xs = PauliString(1, "IX")
    zs = PauliString(1, "IZ")
    ident = PauliString(1, "II")
    out = {}
    for m2, m3, m4 in product((0, 1), repeat=3):
        b = ident
        if m2:
            b = b * xs
        if m3:
            b = b * zs
        if m4:
            b = b * xs
        out[(m2, m3, m4)] = PauliString(1, b.letters)  # phase washes out under conjugation
    return out


def zrot_spec(zeta: float, name: str | None = None) -> GateSpec:
    """Z-rotation teleported from a 5-site chain.

    Sites 2 and 4 are measured in X; site 3 in the XY basis at angle zeta
    with its sign conditioned on the site-2 outcome.  The byproduct on output
    site 5 is X^{m2} Z^{m3} X^{m4}; zeta = 0 is the identity gate.
    """
    rot = rotation_matrix(zeta)
    resource = tensor(np.eye(2), rot) @ BELL
    x_rot = rot @ np.array([[0, 1], [1, 0]], dtype=complex) @ rot.conj().T
    stabilizers = (
        tensor(np.array([[0, 1], [1, 0]], dtype=complex), x_rot),
        tensor(np.diag([1, -1]).astype(complex), np.diag([1, -1]).astype(complex)),
    )
    steps = (
        MeasurementStep(2),
        MeasurementStep(3, angle=zeta, condition_on=2),
        MeasurementStep(4),
    )
    return GateSpec(
        name if name is not None else "zrot5",
        chain(5), steps, (1, 5), resource, stabilizers, _zrot_byproducts(),
    )


def _hadamard_spec() -> GateSpec:
    """Hadamard teleported from an 8-site chain.

    Interior sites are measured in X except sites 2 and 4, measured in Y.
    The all-X interior pattern also teleports H, but its fidelity envelope
    under collective dephasing revives at half the collective-phase period;
    the Y pair restores the single late revival shared by the other gates.
    Byproducts are solved mechanically at construction.
    """
    h = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
    resource = tensor(np.eye(2), h) @ BELL
    stabilizers = (
        PauliString(1, "XZ").matrix(),
        PauliString(1, "ZX").matrix(),
    )
    steps = (
        MeasurementStep(2, angle=np.pi / 2),
        MeasurementStep(3),
        MeasurementStep(4, angle=np.pi / 2),
        MeasurementStep(5),
        MeasurementStep(6),
        MeasurementStep(7),
    )
    return GateSpec("hadamard8", chain(8), steps, (1, 8), resource, stabilizers)


def _cz_spec() -> GateSpec:
    """Controlled-Z teleported from two 3-site wires bridged on the output side.

    Wires 1-2-3 and 4-5-6 carry the two logical qubits; edge 3-6 applies the
    CZ between the wire outputs.  Measuring the wire middles (2 and 5) in X
    leaves the four-qubit resource on sites (1, 4, 3, 6) = (in_a, in_b,
    out_a, out_b).
    """
    graph = ClusterGraph(6, frozenset({(1, 2), (2, 3), (4, 5), (5, 6), (3, 6)}))
    # (I x CZ) on |Phi+>_{13} |Phi+>_{24} in slot order (in_a, in_b, out_a, out_b)
    resource = np.zeros(16, dtype=complex)
    for a in (0, 1):
        for b in (0, 1):
            resource[(a << 3) | (b << 2) | (a << 1) | b] = 0.5
    resource[0b1111] *= -1
    stabilizers = (
        PauliString(1, "XIXZ").matrix(),
        PauliString(1, "ZIZI").matrix(),
        PauliString(1, "IXZX").matrix(),
        PauliString(1, "IZIZ").matrix(),
    )
    steps = (MeasurementStep(2), MeasurementStep(5))
    return GateSpec("cz", graph, steps, (1, 4, 3, 6), resource, stabilizers)


def builtin_specs(zeta: float = np.pi / 8) -> dict:
    """The four stock gates: identity5, zrot5(zeta), hadamard8, cz."""
    return {
        "identity5": zrot_spec(0.0, name="identity5"),
        "zrot5": zrot_spec(zeta),
        "hadamard8": _hadamard_spec(),
        "cz": _cz_spec(),
    }


def _completion_stabilizers(psi: np.ndarray) -> tuple:
    """Involutions U Z_i U^dag for a unitary U with U|0..0> = psi.

    Their joint +1 eigenspace is exactly span{psi}, which is all the
    stabilizer-projector fidelity route needs.
    """
    dim = psi.size
    n = int(np.log2(dim))
    cols = np.eye(dim, dtype=complex)
    cols[:, 0] = psi
    q, _ = np.linalg.qr(cols)
    # qr fixes column phases only up to the sign of the diagonal; re-anchor
    # the first column on psi itself
    phase = np.vdot(q[:, 0], psi)
    q[:, 0] *= phase / abs(phase)
    stabs = []
    for site in range(1, n + 1):
        z = tensor(*[(np.diag([1, -1]).astype(complex) if k == site else np.eye(2))
                     for k in range(1, n + 1)])
        stabs.append(q @ z @ q.conj().T)
    return tuple(stabs)


def custom_spec(name: str, graph: ClusterGraph, steps, output_sites) -> GateSpec:
    """Build a gate from (graph, measurement steps, outputs) alone.

    The resource state is the (normalized) output collapse of the perfect
    cluster at the all-zeros outcome; byproducts for every other outcome are
    solved mechanically.  A pattern whose outcomes are not all Pauli-related
    to that reference collapse is rejected.
    """
    steps = tuple(steps)
    output_sites = tuple(output_sites)
    n = graph.n
    psi = cluster_state(graph)
    letters = string.ascii_lowercase[:n]
    out_letters = "".join(letters[s - 1] for s in output_sites)
    psi_t = psi.reshape([2] * n)
    # reference collapse at outcome (0, ..., 0)
    earlier: dict = {}
    vecs = []
    for step in steps:
        vecs.append(xy_basis_state(0, step.effective_angle(earlier)))
        earlier[step.site] = 0
    operands = [psi_t] + [v.conj() for v in vecs]
    subs = [letters] + [letters[s.site - 1] for s in steps]
    resource = np.einsum(",".join(subs) + "->" + out_letters, *operands).reshape(-1)
    norm = np.linalg.norm(resource)
    if norm < 1e-12:
        raise ValueError("the all-zeros outcome has zero probability; pattern rejected")
    resource = resource / norm
    return GateSpec(name, graph, steps, output_sites, resource,
                    _completion_stabilizers(resource))
