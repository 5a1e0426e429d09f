"""Fidelity of measurement-based quantum computation under boson environments.

Dense, desk-scale simulation of cluster-state decoherence: the exactly
solvable collective dephasing channel, numerical phase/amplitude noise with
a truncated resonant boson mode, thermal states of boson-coupled cluster
Hamiltonians, and gate fidelity through simulated gate teleportation.
"""

from .analysis import (NoPeakError, PeakList, ScalingFit, drop_rate, envelope_peak,
                       find_peaks, size_scaling_fit, threshold_scan)
from .cluster import (ClusterGraph, chain, cluster_hamiltonian, cluster_state,
                      graph_literal, ladder, parse_graph, stabilizer)
from .gate_fidelity import (FidelitySeries, GateSpec, MeasurementStep, builtin_specs,
                            gate_fidelity, gate_output_state, measurement_projector,
                            zrot_spec)
from .noise_exact import (DephasingKernel, DiscreteSpectrum, OhmicSpectrum,
                          dephasing_fidelity_series, dephasing_gate_fidelity_series,
                          evolve_dephasing, gamma_ohmic, kernel_discrete, theta_ohmic)
from .noise_numeric import (BosonMode, build_cluster_env_hamiltonian,
                            build_resonant_hamiltonian, cluster_fidelity_time_series,
                            gate_fidelity_time_series, initial_joint_state,
                            reduced_qubit_state, thermal_gate_fidelity,
                            thermal_gate_fidelity_grid)
from .quantum_core import (PauliString, evolve_unitary, fidelity_pure, hermitian_eig,
                           partial_trace, tensor, thermal_state, trace_distance)

__version__ = "0.1.0"

__all__ = [
    "BosonMode", "ClusterGraph", "DephasingKernel", "DiscreteSpectrum",
    "FidelitySeries", "GateSpec", "MeasurementStep", "NoPeakError", "OhmicSpectrum",
    "PauliString", "PeakList", "ScalingFit",
    "builtin_specs", "build_cluster_env_hamiltonian", "build_resonant_hamiltonian",
    "chain", "cluster_fidelity_time_series", "cluster_hamiltonian", "cluster_state",
    "dephasing_fidelity_series", "dephasing_gate_fidelity_series", "drop_rate",
    "envelope_peak", "evolve_dephasing", "evolve_unitary", "fidelity_pure",
    "find_peaks", "gamma_ohmic", "gate_fidelity", "gate_fidelity_time_series",
    "gate_output_state", "graph_literal", "hermitian_eig", "initial_joint_state",
    "kernel_discrete", "ladder", "measurement_projector", "parse_graph",
    "partial_trace", "reduced_qubit_state", "size_scaling_fit", "stabilizer",
    "tensor", "thermal_gate_fidelity", "thermal_gate_fidelity_grid", "thermal_state",
    "theta_ohmic", "threshold_scan", "trace_distance", "zrot_spec",
]
