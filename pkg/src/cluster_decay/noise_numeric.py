"""Dense numerics for mixed phase/amplitude noise with one truncated boson mode.

Two Hamiltonian families share the coupling
g (a + a^dag) sum_n (cos(theta) sigma_z^n - sin(theta) sigma_x^n):

  * the resonant qubit model  eps sum_n sigma_z^n + 2 eps a^dag a + coupling,
    used for time evolution of a CZ-prepared cluster state, and
  * the cluster-Hamiltonian model  -J sum_i K_i + 2J a^dag a + coupling,
    whose thermal states model Hamiltonian-cooled preparation.

Everything is exact diagonalization: diagonalize once per Hamiltonian, then
time points (phases) and temperatures (Boltzmann weights) are cheap.
The boson mode is always the least significant tensor slot.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cluster import ClusterGraph, cluster_hamiltonian, cluster_state
from .gate_fidelity import GateSpec
from .quantum_core import hermitian_eig, partial_trace, pauli, tensor


@dataclass(frozen=True)
class BosonMode:
    """Single truncated boson mode and its qubit coupling.

    omega is overridden by the resonance condition when a Hamiltonian is
    built (2*eps or 2*J); it still fixes the thermal occupation of the
    initial state.  cutoff is the maximum boson number N_max.
    """

    omega: float
    g: float
    theta: float = 0.0
    cutoff: int = 20

    def __post_init__(self):
        if self.omega <= 0:
            raise ValueError("mode frequency must be positive")
        if self.g < 0:
            raise ValueError("coupling g must be >= 0")
        if not 0 <= self.theta <= np.pi / 2:
            raise ValueError("mixing angle theta must lie in [0, pi/2]")
        if self.cutoff < 1:
            raise ValueError("Fock cutoff must be >= 1")

    @property
    def levels(self) -> int:
        return self.cutoff + 1


def lowering_operator(cutoff: int) -> np.ndarray:
    """Truncated annihilation operator, <m|a|m+1> = sqrt(m+1)."""
    return np.diag(np.sqrt(np.arange(1, cutoff + 1)), 1).astype(complex)


def collective_coupling(n: int, theta: float) -> np.ndarray:
    """cos(theta) sum_n sigma_z^n - sin(theta) sum_n sigma_x^n, dense on n qubits."""
    dim = 2 ** n
    total = np.zeros((dim, dim), dtype=complex)
    for site in range(1, n + 1):
        factors = [pauli("I")] * n
        factors[site - 1] = pauli("Z")
        term = np.cos(theta) * tensor(*factors)
        factors[site - 1] = pauli("X")
        term -= np.sin(theta) * tensor(*factors)
        total += term
    return total


def _joint(h_qubits: np.ndarray, omega: float, mode: BosonMode) -> np.ndarray:
    nq = int(np.log2(h_qubits.shape[0]))
    a = lowering_operator(mode.cutoff)
    number = np.diag(np.arange(mode.levels)).astype(complex)
    h = np.kron(h_qubits, np.eye(mode.levels)) \
        + omega * np.kron(np.eye(h_qubits.shape[0]), number) \
        + mode.g * np.kron(collective_coupling(nq, mode.theta), a + a.conj().T)
    return h


def build_resonant_hamiltonian(n: int, eps: float, mode: BosonMode) -> np.ndarray:
    """Resonant single-mode model; the mode frequency is forced to 2*eps.

    eps = 0 is rejected: a zero-energy boson has no meaning in the resonant
    construction.
    """
    if eps <= 0:
        raise ValueError("qubit energy eps must be positive")
    sz = collective_coupling(n, 0.0)  # sum sigma_z
    return _joint(eps * sz, 2 * eps, mode)


def build_cluster_env_hamiltonian(g: ClusterGraph, j: float, mode: BosonMode) -> np.ndarray:
    """Cluster Hamiltonian plus resonant mode; frequency forced to 2*J."""
    return _joint(cluster_hamiltonian(g, j), 2 * j, mode)


def truncated_thermal_boson(omega: float, beta: float, cutoff: int) -> np.ndarray:
    """Gibbs state of the truncated mode, renormalized after truncation."""
    if not (beta > 0 or np.isinf(beta)):
        raise ValueError("inverse temperature must be positive or +inf")
    m = np.arange(cutoff + 1)
    if np.isinf(beta):
        p = np.zeros(cutoff + 1)
        p[0] = 1.0
    else:
        p = np.exp(-beta * omega * m)
        p /= p.sum()
    return np.diag(p).astype(complex)


def initial_joint_state(g: ClusterGraph, mode: BosonMode, beta: float) -> np.ndarray:
    """Perfect cluster state tensor a thermal boson mode."""
    psi = cluster_state(g)
    return np.kron(np.outer(psi, psi.conj()),
                   truncated_thermal_boson(mode.omega, beta, mode.cutoff))


def reduced_qubit_state(rho: np.ndarray, n: int, cutoff: int) -> np.ndarray:
    """Trace out the boson slot."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape[0] != 2 ** n * (cutoff + 1):
        raise ValueError("state dimension does not match qubit count and cutoff")
    return partial_trace(rho, [2] * n + [cutoff + 1], keep=range(1, n + 1))


class SpectralEvolution:
    """Diagonalize H once; reuse for every time point and observable.

    State and observables are rotated into the eigenbasis so that evolution
    is an elementwise phase and expectation values are single contractions.
    """

    def __init__(self, h: np.ndarray, rho0: np.ndarray):
        self.energies, self.basis = hermitian_eig(h)
        self.rho0_eig = self.basis.conj().T @ rho0 @ self.basis

    def state_at(self, t: float) -> np.ndarray:
        phases = np.exp(-1j * self.energies * t)
        rho_eig = self.rho0_eig * np.outer(phases, phases.conj())
        return self.basis @ rho_eig @ self.basis.conj().T

    def expectation_series(self, observable: np.ndarray, times) -> np.ndarray:
        """Tr(rho(t) O) for each t, evaluated in the eigenbasis."""
        obs_eig = self.basis.conj().T @ observable @ self.basis
        kernel = self.rho0_eig * obs_eig.T
        del obs_eig
        times = np.atleast_1d(np.asarray(times, dtype=float))
        dw = self.energies[:, None] - self.energies[None, :]
        out = np.empty(times.size)
        for k, t in enumerate(times):
            out[k] = float(np.real(np.sum(kernel * np.exp(-1j * dw * t))))
        return out

    def energy_expectation(self) -> float:
        return float(np.real(np.sum(self.energies * np.diag(self.rho0_eig))))


def gate_fidelity_time_series(spec: GateSpec, eps: float, mode: BosonMode,
                              beta: float, times) -> np.ndarray:
    """F_U(t) for a cluster state evolving under the resonant model."""
    n = spec.graph.n
    resonant_mode = BosonMode(2 * eps, mode.g, mode.theta, mode.cutoff)
    h = build_resonant_hamiltonian(n, eps, resonant_mode)
    rho0 = initial_joint_state(spec.graph, resonant_mode, beta)
    evo = SpectralEvolution(h, rho0)
    del h, rho0  # joint-space matrices dominate memory at large cutoffs
    effect = np.kron(spec.effect_operator, np.eye(mode.cutoff + 1))
    return np.clip(evo.expectation_series(effect, times), 0.0, 1.0)


def cluster_fidelity_time_series(g: ClusterGraph, eps: float, mode: BosonMode,
                                 beta: float, times) -> np.ndarray:
    """Cluster-state fidelity under the resonant model."""
    n = g.n
    resonant_mode = BosonMode(2 * eps, mode.g, mode.theta, mode.cutoff)
    h = build_resonant_hamiltonian(n, eps, resonant_mode)
    rho0 = initial_joint_state(g, resonant_mode, beta)
    evo = SpectralEvolution(h, rho0)
    del h, rho0
    psi = cluster_state(g)
    effect = np.kron(np.outer(psi, psi.conj()), np.eye(mode.cutoff + 1))
    return np.clip(evo.expectation_series(effect, times), 0.0, 1.0)


def thermal_gate_fidelity(spec: GateSpec, j: float, theta: float, g_coupling: float,
                          temperature: float, cutoff: int) -> float:
    """F_U of the thermal state of the boson-coupled cluster Hamiltonian."""
    mode = BosonMode(2 * j, g_coupling, theta, cutoff)
    h = build_cluster_env_hamiltonian(spec.graph, j, mode)
    energies, basis = hermitian_eig(h)
    weights = _boltzmann(energies, 1.0 / temperature)
    effect = np.kron(spec.effect_operator, np.eye(cutoff + 1))
    # one BLAS product then an elementwise reduce (see grid variant)
    diag = np.real(np.einsum("ia,ia->a", basis.conj(), effect @ basis))
    return float(np.clip(np.sum(weights * diag), 0.0, 1.0))


def _boltzmann(energies: np.ndarray, beta: float) -> np.ndarray:
    if np.isinf(beta):
        p = (energies <= energies[0] + 1e-9 * max(1.0, abs(energies[0]))).astype(float)
    else:
        p = np.exp(-beta * (energies - energies[0]))
    return p / p.sum()


def thermal_gate_fidelity_grid(g: ClusterGraph, spec: GateSpec, j: float, theta: float,
                               g_grid, t_grid, cutoff: int) -> np.ndarray:
    """F_U over a (coupling, temperature) grid; one diagonalization per coupling.

    Returns an array of shape (len(g_grid), len(t_grid)).
    """
    if spec.graph != g:
        raise ValueError("gate spec graph differs from the requested graph")
    g_grid = np.asarray(g_grid, dtype=float)
    t_grid = np.asarray(t_grid, dtype=float)
    if np.any(np.diff(g_grid) <= 0) or np.any(np.diff(t_grid) <= 0):
        raise ValueError("grids must be strictly ascending")
    effect = np.kron(spec.effect_operator, np.eye(cutoff + 1))
    out = np.empty((g_grid.size, t_grid.size))
    for gi, gval in enumerate(g_grid):
        mode = BosonMode(2 * j, float(gval), theta, cutoff)
        h = build_cluster_env_hamiltonian(g, j, mode)
        energies, basis = hermitian_eig(h)
        # one BLAS product then an elementwise reduce; a naive triple einsum
        # here costs O(dim^3) scalar ops outside BLAS
        diag = np.real(np.einsum("ia,ia->a", basis.conj(), effect @ basis))
        for ti, tval in enumerate(t_grid):
            weights = _boltzmann(energies, 1.0 / tval)
            out[gi, ti] = np.clip(np.sum(weights * diag), 0.0, 1.0)
    return out


def cutoff_convergence_gap(builder, fidelity_eval, cutoff: int) -> float:
    """Max |F(cutoff) - F(2*cutoff)| over whatever fidelity_eval reports.

    builder(cutoff) -> arbitrary handle; fidelity_eval(handle) -> array of
    fidelities.  Used to verify that a Fock truncation is converged.
    """
    f1 = np.atleast_1d(fidelity_eval(builder(cutoff)))
    f2 = np.atleast_1d(fidelity_eval(builder(2 * cutoff)))
    return float(np.max(np.abs(f1 - f2)))
