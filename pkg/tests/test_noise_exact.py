import numpy as np
import pytest

from cluster_decay.cluster import chain, cluster_state
from cluster_decay.noise_exact import (DephasingKernel, DiscreteSpectrum, OhmicSpectrum,
                                       dephasing_fidelity_series, evolve_dephasing,
                                       gamma_ohmic, kernel_discrete, theta_ohmic)
from cluster_decay.oracles import (dephasing_vs_dense_gap, gamma_ohmic_quadrature,
                                   theta_ohmic_quadrature)
from cluster_decay.quantum_core import fidelity_pure
from conftest import random_density_matrix

SPECTRUM = OhmicSpectrum(1e-3, 100.0)


class TestOhmicKernels:
    def test_gamma_vanishes_at_zero_time(self):
        assert gamma_ohmic(0.0, np.pi, SPECTRUM) == 0.0

    def test_gamma_vanishes_without_coupling(self):
        flat = OhmicSpectrum(0.0, 100.0)
        assert gamma_ohmic(2.5, 1.0, flat) == 0.0

    def test_gamma_matches_quadrature(self):
        closed = gamma_ohmic(1.0, np.pi, SPECTRUM)
        ref = gamma_ohmic_quadrature(1.0, np.pi, SPECTRUM)
        assert abs(closed - ref) / ref < 1e-6

    def test_gamma_monotone_in_temperature(self):
        t = 1.7
        betas = np.array([0.2, 0.5, 1.0, 2.0, 5.0, 20.0])  # descending temperature
        values = [gamma_ohmic(t, b, SPECTRUM) for b in betas]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_gamma_input_validation(self):
        with pytest.raises(ValueError):
            gamma_ohmic(-1.0, 1.0, SPECTRUM)
        with pytest.raises(ValueError):
            gamma_ohmic(1.0, 0.0, SPECTRUM)

    def test_theta_vanishes_at_zero_time(self):
        assert theta_ohmic(0.0, SPECTRUM) == 0.0

    def test_theta_asymptote(self):
        t = 50.0
        expected = SPECTRUM.eta * (SPECTRUM.omega_c * t - np.pi / 2)
        assert theta_ohmic(t, SPECTRUM) == pytest.approx(expected, rel=1e-3)

    def test_theta_matches_quadrature(self):
        closed = theta_ohmic(1.0, SPECTRUM)
        ref = theta_ohmic_quadrature(1.0, SPECTRUM)
        assert abs(closed - ref) / ref < 1e-6

    def test_theta_rejects_negative_time(self):
        with pytest.raises(ValueError):
            theta_ohmic(-0.1, SPECTRUM)


class TestDiscreteKernel:
    def test_empty_mode_list(self):
        k = kernel_discrete(DiscreteSpectrum(()), 1.0, 1.0)
        assert k.gamma == 0.0 and k.theta == 0.0

    def test_single_mode_revival(self):
        w, g = 2.0, 0.3
        t = 2 * np.pi / w
        k = kernel_discrete(DiscreteSpectrum(((w, g),)), t, 1.0)
        assert k.gamma == pytest.approx(0.0, abs=1e-12)
        # (w t - sin w t)/w^2 at t = 2 pi / w is 2 pi / w^2
        assert k.theta == pytest.approx(abs(g) ** 2 * 2 * np.pi / w ** 2, abs=1e-12)

    def test_riemann_sum_converges_to_ohmic(self):
        # dense modes sampling the ohmic density approach the continuum kernels
        t, beta = 1.0, np.pi
        n_modes = 10_000
        w_max = 40 * SPECTRUM.omega_c
        dw = w_max / n_modes
        freqs = (np.arange(n_modes) + 0.5) * dw
        weights = SPECTRUM.density(freqs) * dw  # |g_k|^2 samples
        modes = tuple((float(w), complex(np.sqrt(gg))) for w, gg in zip(freqs, weights))
        k = kernel_discrete(DiscreteSpectrum(modes), t, beta)
        assert abs(k.gamma - gamma_ohmic(t, beta, SPECTRUM)) / gamma_ohmic(t, beta, SPECTRUM) < 1e-3
        assert abs(k.theta - theta_ohmic(t, SPECTRUM)) / theta_ohmic(t, SPECTRUM) < 1e-3

    def test_rejects_nonpositive_frequency(self):
        with pytest.raises(ValueError):
            DiscreteSpectrum(((0.0, 0.1),))

    def test_kernel_gamma_nonnegative(self):
        with pytest.raises(ValueError):
            DephasingKernel(-1e-3, 0.0)


class TestEvolveDephasing:
    def test_time_zero_is_identity(self, rng):
        rho = random_density_matrix(rng, 8)
        out = evolve_dephasing(rho, [1.0, 2.0, 3.0], DephasingKernel(0.0, 0.0), 0.0)
        assert np.max(np.abs(out - rho)) < 1e-14

    def test_diagonal_invariant(self, rng):
        rho = random_density_matrix(rng, 8)
        out = evolve_dephasing(rho, [0.3, 1.1, 0.9], DephasingKernel(0.4, 1.3), 2.1)
        assert np.allclose(np.diag(out), np.diag(rho), atol=1e-14)

    def test_single_qubit_closed_form(self):
        eps, beta = 0.7, np.pi
        times = np.linspace(0, 5, 101)
        series = dephasing_fidelity_series(chain(1), [eps], SPECTRUM, beta, times)
        gammas = gamma_ohmic(times, beta, SPECTRUM)
        # coherence of |+> decays as exp(-4 Gamma); the collective phase cancels
        expected = 0.5 * (1 + np.exp(-4 * gammas) * np.cos(2 * eps * times))
        assert np.max(np.abs(series.values - expected)) < 1e-12

    def test_theta_phase_cancels_for_opposite_spin_sums(self):
        # element between |01> and |10> has sum(i) = -sum(j): Theta must drop out
        rho = np.zeros((4, 4), dtype=complex)
        rho[1, 2] = 1.0
        big_theta = DephasingKernel(0.0, 2.37)
        out = evolve_dephasing(rho, [0.0, 0.0], big_theta, 0.0)
        assert out[1, 2] == pytest.approx(1.0, abs=1e-14)

    def test_rejects_bad_dimensions(self, rng):
        rho = random_density_matrix(rng, 6)
        with pytest.raises(ValueError):
            evolve_dephasing(rho, [1.0, 1.0], DephasingKernel(0.0, 0.0), 1.0)
        with pytest.raises(ValueError):
            evolve_dephasing(random_density_matrix(rng, 4), [1.0], DephasingKernel(0.0, 0.0), 1.0)


class TestFidelitySeries:
    def test_starts_at_one(self):
        times = np.linspace(0, 2, 41)
        series = dephasing_fidelity_series(chain(3), [3.0] * 3, SPECTRUM, np.pi, times)
        assert series.values[0] == pytest.approx(1.0, abs=1e-12)

    def test_fast_path_matches_elementwise_map(self):
        graph = chain(4)
        eps = [0.0, 0.9, 3.0, 1.5]
        beta = np.pi
        times = np.array([0.0, 0.7, 1.9, 3.3])
        series = dephasing_fidelity_series(graph, eps, SPECTRUM, beta, times)
        psi = cluster_state(graph)
        rho0 = np.outer(psi, psi.conj())
        spec_modes = None
        for idx, t in enumerate(times):
            kernel = DephasingKernel(gamma_ohmic(float(t), beta, SPECTRUM),
                                     theta_ohmic(float(t), SPECTRUM))
            rho_t = evolve_dephasing(rho0, eps, kernel, float(t))
            assert series.values[idx] == pytest.approx(
                fidelity_pure(rho_t, psi), abs=1e-12)

    def test_zero_temperature_limit_still_drops(self):
        # pointwise limit of large beta exists and stays below 1 at the revival
        t_probe = np.pi / 3.0  # first free-rotation revival for eps = 3
        times = np.array([0.0, t_probe])
        values = []
        for beta in (10.0, 100.0, 1000.0, 10000.0):
            s = dephasing_fidelity_series(chain(5), [3.0] * 5, SPECTRUM, beta, times)
            values.append(s.values[1])
        assert abs(values[-1] - values[-2]) < 1e-6  # converged in beta
        assert values[-1] < 1.0 - 1e-4  # vacuum contribution alone already bites

    def test_grid_must_start_at_zero(self):
        with pytest.raises(ValueError):
            dephasing_fidelity_series(chain(2), [1.0] * 2, SPECTRUM, 1.0,
                                      np.array([0.5, 1.0]))

    def test_qualitative_energy_regimes(self):
        # 7-qubit chain at the stock bath parameters: eps = 0 gives a slow
        # collective-phase pattern, eps = 3 a fast carrier with revivals
        from cluster_decay.analysis import find_peaks
        times = np.arange(0, 2001) * 0.005
        graph = chain(7)
        slow = dephasing_fidelity_series(graph, [0.0] * 7, SPECTRUM, np.pi, times)
        fast = dephasing_fidelity_series(graph, [3.0] * 7, SPECTRUM, np.pi, times)
        n_slow = len(find_peaks(slow))
        n_fast = len(find_peaks(fast))
        assert n_slow < 10 < n_fast
        # eps = 0 drifts slowly (collective phase only); eps = 3 carries a
        # fast carrier and a distinct revival cluster past the phase period
        assert np.max(np.abs(np.diff(slow.values))) < np.max(np.abs(np.diff(fast.values))) / 5
        revival = (times > 7) & (times < 9)
        assert fast.values[revival].max() > 0.7


class TestDenseOracle:
    def test_single_mode_matches_dense_small(self):
        gap = dephasing_vs_dense_gap(chain(2), omega=3.0, g=0.2, beta=0.5,
                                     cutoff=30, times=np.linspace(0, 5, 11))
        assert gap < 1e-6
