"""Curve analytics for fidelity series: peaks, drop rates, thresholds, fits."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gate_fidelity import FidelitySeries


class NoPeakError(RuntimeError):
    """A peak-based statistic was requested on a series with no usable peak."""


@dataclass(frozen=True)
class PeakList:
    """Local maxima of a sampled series, in ascending parameter order."""

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "times", np.asarray(self.times, dtype=float))
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        if self.times.size > 1 and np.any(np.diff(self.times) <= 0):
            raise ValueError("peak times must be strictly ascending")

    def __len__(self) -> int:
        return self.times.size


def find_peaks(series: FidelitySeries) -> PeakList:
    """Strict 3-point local maxima; a flat run that forms a maximum reports
    its first index.  Needs at least 3 samples."""
    v = series.values
    if v.size < 3:
        raise ValueError("need at least 3 samples to detect peaks")
    idx = []
    i = 1
    n = v.size
    while i < n - 1:
        if v[i] > v[i - 1]:
            j = i
            while j < n - 1 and v[j + 1] == v[j]:
                j += 1
            if j < n - 1 and v[j + 1] < v[i]:
                idx.append(i)
            i = j + 1
        else:
            i += 1
    idx = np.array(idx, dtype=int)
    return PeakList(series.grid[idx], v[idx])


def drop_rate(series: FidelitySeries) -> float:
    """(F(t1) - F(0)) / t1 with t1 the first detected peak; negative on decay.

    The series must start at t = 0.
    """
    if series.grid[0] != 0:
        raise ValueError("drop rate needs a series starting at t = 0")
    peaks = find_peaks(series)
    if len(peaks) == 0:
        raise NoPeakError("series has no peak after t = 0")
    t1 = peaks.times[0]
    return float((peaks.values[0] - series.values[0]) / t1)


def moving_max(values: np.ndarray, half_width: int) -> np.ndarray:
    """Running maximum over a centered window of 2*half_width + 1 samples."""
    v = np.asarray(values, dtype=float)
    out = np.empty_like(v)
    n = v.size
    for i in range(n):
        out[i] = v[max(0, i - half_width):min(n, i + half_width + 1)].max()
    return out


def default_envelope_window(series: FidelitySeries, smooth_half_width: int | None = None):
    """Window [0.5, 1.5] * t_env around the revival of the coarse envelope.

    The envelope is the moving maximum of the series; its global maximum sits
    at t = 0 (fidelity starts at its ceiling), so t_env is taken as the
    envelope's global maximum after its first strict local minimum.  The
    smoothing window must exceed the carrier oscillation period or the early
    shoulder of the decay masquerades as the revival; 2.5% of the series
    covers the carrier for all scans emitted here.
    """
    v = series.values
    if smooth_half_width is None:
        smooth_half_width = max(1, v.size // 40)
    env = moving_max(v, smooth_half_width)
    # cross the envelope's first valley: wait for a strict fall, then for the
    # first strict rise after it, and take the global maximum from there on.
    # Taking the maximum any earlier would catch the shoulder of the initial
    # decay, which can sit slightly above the revival.
    n = env.size
    fell = False
    rise_at = None
    for i in range(1, n):
        if env[i] < env[i - 1]:
            fell = True
        elif fell and env[i] > env[i - 1]:
            rise_at = i
            break
    if rise_at is None:
        raise NoPeakError("envelope never revives; no revival window exists")
    t_env = series.grid[rise_at + int(np.argmax(env[rise_at:]))]
    return 0.5 * t_env, 1.5 * t_env


def envelope_peak(series: FidelitySeries, window=None, smooth_half_width: int | None = None):
    """Highest peak (t*, F*) inside the window; ties resolve to smallest t.

    window defaults to the first revival window of the coarse envelope.
    """
    if window is None:
        lo, hi = default_envelope_window(series, smooth_half_width)
        lo = max(lo, float(series.grid[0]))
        hi = min(hi, float(series.grid[-1]))
        window = (lo, hi)
    lo, hi = window
    if lo < series.grid[0] or hi > series.grid[-1]:
        raise ValueError("window extends outside the series range")
    peaks = find_peaks(series)
    mask = (peaks.times >= lo) & (peaks.times <= hi)
    if not np.any(mask):
        raise NoPeakError(f"no peak inside window [{lo}, {hi}]")
    times = peaks.times[mask]
    values = peaks.values[mask]
    best = int(np.argmax(values))  # argmax returns the first of equal values
    return float(times[best]), float(values[best])


def threshold_scan(series: FidelitySeries, significance: float = 5.0):
    """Coupling g_c of the sudden fidelity drop, or None if no drop stands out.

    g_c is the grid point with the largest |dF/dg| (central differences),
    reported only when that slope exceeds `significance` times the median
    slope magnitude.
    """
    if series.grid.size < 10:
        raise ValueError("threshold scan needs at least 10 grid points")
    slopes = np.abs(np.gradient(series.values, series.grid))
    peak = float(slopes.max())
    med = float(np.median(slopes))
    if med == 0.0:
        return float(series.grid[int(np.argmax(slopes))]) if peak > 0 else None
    if peak <= significance * med:
        return None
    return float(series.grid[int(np.argmax(slopes))])


@dataclass(frozen=True)
class ScalingFit:
    """Linear and exponential least-squares fits of peak fidelity vs size.

    Both residuals are root-mean-square errors in fidelity space, so they
    are directly comparable.
    """

    slope: float
    intercept: float
    linear_residual: float
    exponential_residual: float


def size_scaling_fit(points) -> ScalingFit:
    """Fit F vs n linearly and ln F vs n (exponential model F = A e^{b n})."""
    pts = sorted((int(n), float(f)) for n, f in points)
    if len(pts) < 4:
        raise ValueError("need at least 4 sizes to compare scaling laws")
    n = np.array([p[0] for p in pts], dtype=float)
    f = np.array([p[1] for p in pts], dtype=float)
    if np.all(f == f[0]):
        return ScalingFit(0.0, float(f[0]), 0.0, 0.0)
    slope, intercept = np.polyfit(n, f, 1)
    lin_pred = slope * n + intercept
    lin_res = float(np.sqrt(np.mean((f - lin_pred) ** 2)))
    if np.any(f <= 0):
        raise ValueError("exponential fit needs positive fidelities")
    b, log_a = np.polyfit(n, np.log(f), 1)
    exp_pred = np.exp(log_a + b * n)
    exp_res = float(np.sqrt(np.mean((f - exp_pred) ** 2)))
    return ScalingFit(float(slope), float(intercept), lin_res, exp_res)
