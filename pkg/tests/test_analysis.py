import numpy as np
import pytest

from cluster_decay.analysis import (NoPeakError, drop_rate, envelope_peak, find_peaks,
                                    size_scaling_fit, threshold_scan)
from cluster_decay.gate_fidelity import FidelitySeries


def series(grid, values, name="t"):
    return FidelitySeries(name, np.asarray(grid, float), np.asarray(values, float))


class TestFindPeaks:
    def test_monotone_has_no_peaks(self):
        s = series(np.linspace(0, 1, 20), np.linspace(1, 0.5, 20))
        assert len(find_peaks(s)) == 0

    def test_constant_has_no_peaks(self):
        s = series(np.linspace(0, 1, 20), np.full(20, 0.5))
        assert len(find_peaks(s)) == 0

    def test_sine_peaks_near_quarter_period(self):
        t = np.linspace(0, 20, 4001)
        s = series(t, (1 + np.sin(t)) / 2)
        peaks = find_peaks(s)
        expected = np.pi / 2 + 2 * np.pi * np.arange(3)
        assert len(peaks) == 3
        assert np.max(np.abs(peaks.times - expected)) <= t[1] - t[0]

    def test_plateau_reports_first_index(self):
        v = [0.0, 0.5, 0.9, 0.9, 0.9, 0.4, 0.2]
        s = series(np.arange(7.0), v)
        peaks = find_peaks(s)
        assert len(peaks) == 1
        assert peaks.times[0] == 2.0

    def test_needs_three_samples(self):
        with pytest.raises(ValueError):
            find_peaks(series([0.0, 1.0], [1.0, 0.5]))

    def test_affine_rescaling_invariance(self):
        t = np.linspace(0, 10, 501)
        v = (1 + np.sin(3 * t) * np.exp(-0.1 * t)) / 2
        base = find_peaks(series(t, v))
        scaled = find_peaks(series(t, 0.5 * v + 0.1))
        assert np.array_equal(base.times, scaled.times)


class TestDropRate:
    def test_flat_peaks_give_zero(self):
        # grid commensurate with the period, so samples land on the maxima
        t = np.linspace(0, 4, 801)
        v = (1 + np.cos(np.pi * t)) / 2
        s = series(t, v)
        assert abs(drop_rate(s)) < 1e-12

    def test_linear_decay_rate(self):
        c = 0.17
        t = np.linspace(0, 2, 201)
        v = 1 - c * t
        v[120:] = v[120] - 0.3 * (t[120:] - t[120])  # keep decreasing after
        v[100] = v[99] + 0.001  # carve a peak at t[100]
        s = series(t, np.clip(v, 0, 1))
        rate = drop_rate(s)
        expected = (s.values[100] - 1.0) / t[100]
        assert rate == pytest.approx(expected, rel=1e-12)
        assert rate < 0

    def test_no_peak_raises(self):
        s = series(np.linspace(0, 1, 30), np.linspace(1, 0.2, 30))
        with pytest.raises(NoPeakError):
            drop_rate(s)

    def test_requires_zero_start(self):
        with pytest.raises(ValueError):
            drop_rate(series([1.0, 2.0, 3.0], [1.0, 0.5, 0.6]))


class TestEnvelopePeak:
    def test_single_peak_window(self):
        t = np.linspace(0, 10, 1001)
        v = np.exp(-((t - 4.0) ** 2))
        s = series(t, v)
        t_star, f_star = envelope_peak(s, window=(2.0, 6.0))
        assert t_star == pytest.approx(4.0, abs=0.02)
        assert f_star == pytest.approx(1.0, abs=1e-6)

    def test_tie_breaks_to_smallest_time(self):
        t = np.arange(9.0)
        v = np.array([0.0, 0.6, 0.0, 0.6, 0.0, 0.0, 0.0, 0.0, 0.0])
        t_star, _ = envelope_peak(series(t, v), window=(0.0, 8.0))
        assert t_star == 1.0

    def test_default_window_finds_revival(self):
        # collapse-and-revival shape: fast carrier, envelope dips then returns
        t = np.linspace(0, 20, 8001)
        envelope = 0.55 + 0.45 * np.cos(2 * np.pi * t / 16)  # min at t = 8, back up at 16
        v = envelope * (1 + np.cos(12 * t)) / 2
        v[0] = 1.0
        t_star, f_star = envelope_peak(series(t, np.clip(v, 0, 1)))
        assert 12.0 < t_star < 20.0

    def test_no_peak_in_window(self):
        t = np.linspace(0, 10, 101)
        s = series(t, np.linspace(1, 0.3, 101))
        with pytest.raises(NoPeakError):
            envelope_peak(s, window=(2.0, 6.0))

    def test_window_outside_range(self):
        t = np.linspace(0, 10, 101)
        s = series(t, np.linspace(1, 0.3, 101))
        with pytest.raises(ValueError):
            envelope_peak(s, window=(5.0, 30.0))


class TestThresholdScan:
    def test_gentle_linear_decline_is_none(self):
        g = np.linspace(0, 4, 41)
        s = series(g, 1 - 0.05 * g, name="g")
        assert threshold_scan(s) is None

    def test_smooth_monotone_bounded_curvature_is_none(self):
        g = np.linspace(0, 4, 81)
        s = series(g, 1 / (1 + 0.2 * g ** 2), name="g")
        assert threshold_scan(s) is None

    def test_synthetic_sigmoid(self):
        g = np.linspace(0, 5, 51)
        s = series(g, 1 / (1 + np.exp((g - 2.5) / 0.08)), name="g")
        gc = threshold_scan(s)
        assert gc is not None
        assert abs(gc - 2.5) <= g[1] - g[0]

    def test_needs_ten_points(self):
        with pytest.raises(ValueError):
            threshold_scan(series(np.linspace(0, 1, 5), np.linspace(1, 0, 5), name="g"))


class TestSizeScalingFit:
    def test_exact_linear(self):
        pts = [(n, 1 - 0.03 * n) for n in range(3, 9)]
        fit = size_scaling_fit(pts)
        assert fit.linear_residual == pytest.approx(0.0, abs=1e-12)
        assert fit.slope == pytest.approx(-0.03, abs=1e-12)
        assert fit.exponential_residual > fit.linear_residual

    def test_exact_exponential(self):
        pts = [(n, 0.99 * np.exp(-0.21 * n)) for n in range(3, 9)]
        fit = size_scaling_fit(pts)
        assert fit.exponential_residual == pytest.approx(0.0, abs=1e-12)
        assert fit.linear_residual > fit.exponential_residual

    def test_degenerate_constant(self):
        fit = size_scaling_fit([(n, 0.8) for n in range(3, 8)])
        assert fit.slope == 0.0
        assert fit.linear_residual == 0.0
        assert fit.exponential_residual == 0.0

    def test_needs_four_sizes(self):
        with pytest.raises(ValueError):
            size_scaling_fit([(3, 0.9), (4, 0.8), (5, 0.7)])
