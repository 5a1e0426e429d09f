"""Independent numerical oracles for the closed-form kernels and exact dynamics.

These deliberately avoid the closed forms they check: the kernel integrals
are evaluated by adaptive quadrature, and the dephasing channel is checked
against dense propagation of the full qubit+boson Hamiltonian.
"""

from __future__ import annotations

import numpy as np
from scipy.integrate import quad

from .cluster import ClusterGraph, cluster_state
from .noise_exact import DiscreteSpectrum, OhmicSpectrum, evolve_dephasing, kernel_discrete
from .noise_numeric import (BosonMode, SpectralEvolution, build_resonant_hamiltonian,
                            initial_joint_state, reduced_qubit_state)
from .quantum_core import trace_distance


def gamma_ohmic_quadrature(t: float, beta: float, spec: OhmicSpectrum,
                           upper: float | None = None) -> float:
    """Adaptive quadrature of int dw I(w) (1-cos wt)/w^2 coth(w beta / 2).

    The integrand is finite at w -> 0 (limit eta t^2 / beta); the oscillatory
    tail is handled by quad's cosine-weight rule after splitting off a small
    head interval.
    """
    if t == 0:
        return 0.0
    eta, wc = spec.eta, spec.omega_c
    if upper is None:
        upper = 40.0 * wc
    a = min(0.1 / t, 0.1 * wc)

    def head(w):
        x = w * t
        if x < 1e-4:
            c = t * t / 2 * (1 - x * x / 12)
        else:
            c = (1 - np.cos(x)) / w ** 2
        y = w * beta / 2
        coth = 1 / np.tanh(y) if y > 1e-8 else 1 / y
        return eta * w * np.exp(-w / wc) * c * coth

    def smooth(w):
        return eta * np.exp(-w / wc) / np.tanh(w * beta / 2) / w

    head_val, _ = quad(head, 0, a, limit=200)
    flat_val, _ = quad(smooth, a, upper, limit=400)
    osc_val, _ = quad(smooth, a, upper, weight="cos", wvar=t, limit=4000)
    return head_val + flat_val - osc_val


def theta_ohmic_quadrature(t: float, spec: OhmicSpectrum,
                           upper: float | None = None) -> float:
    """Adaptive quadrature of int dw I(w) (wt - sin wt)/w^2."""
    if t == 0:
        return 0.0
    eta, wc = spec.eta, spec.omega_c
    if upper is None:
        upper = 40.0 * wc
    a = min(0.1 / t, 0.1 * wc)

    def head(w):
        x = w * t
        if x < 1e-4:
            s = w * t ** 3 / 6 * (1 - x * x / 20)
        else:
            s = (w * t - np.sin(x)) / w ** 2
        return eta * w * np.exp(-w / wc) * s

    head_val, _ = quad(head, 0, a, limit=200)
    linear = eta * t * wc * (np.exp(-a / wc) - np.exp(-upper / wc))
    osc_val, _ = quad(lambda w: eta * np.exp(-w / wc) / w, a, upper,
                      weight="sin", wvar=t, limit=4000)
    return head_val + linear - osc_val


def dephasing_vs_dense_gap(graph: ClusterGraph, omega: float, g: float, beta: float,
                           cutoff: int, times) -> float:
    """Max trace distance between the closed-form dephasing channel and dense
    qubit+boson propagation (pure phase coupling, thermal mode).

    The dense side evolves the joint state and traces out the boson; the
    closed-form side applies the discrete kernel and the free qubit rotation.
    The resonance condition ties the qubit energy to omega/2 on both sides.
    """
    n = graph.n
    mode = BosonMode(omega, g, theta=0.0, cutoff=cutoff)
    h = build_resonant_hamiltonian(n, omega / 2, mode)
    rho0 = initial_joint_state(graph, mode, beta)
    evo = SpectralEvolution(h, rho0)
    psi = cluster_state(graph)
    rho_q0 = np.outer(psi, psi.conj())
    spec = DiscreteSpectrum(((omega, g),))
    eps_list = [omega / 2] * n
    worst = 0.0
    for t in np.atleast_1d(times):
        dense = reduced_qubit_state(evo.state_at(float(t)), n, cutoff)
        kernel = kernel_discrete(spec, float(t), beta)
        closed = evolve_dephasing(rho_q0, eps_list, kernel, float(t))
        worst = max(worst, trace_distance(dense, closed))
    return worst
