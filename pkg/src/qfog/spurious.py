"""Accidental-coincidence phase errors and safe phase-bias windows.

Uncorrelated single photons that happen to arrive at all N detectors
within one jitter window mimic genuine N-fold coincidences.  This module
computes the expected accidental count, converts it into the equivalent
shift of the inferred interferometer phase, maps out the cusps where that
shift blows up, and finds the bias windows where it stays below a chosen
noise floor.

Phase conventions: ``phase_total_rad`` is always the combined rotation
plus bias phase.  The fringe has period ``2*pi/N``; the error magnitude
peaks in sharp cusps at multiples of ``pi/N``.  Around the cusps where the
coincidence count is maximal there is a finite interval in which no real
phase shift can reproduce the accidental count at all; such points are
reported as undefined, never clamped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import DetectionSpec, _require, _require_finite

# Residual (in phase-shift radians) below which a threshold crossing from
# bisection is accepted.
CROSSING_RESIDUAL_RAD = 1e-9

# Minimum scan density accepted by bias_zone_scan, in points per pi of range.
MIN_RESOLUTION_PER_PI = 1000


@dataclass(frozen=True)
class SpuriousCount:
    """Expected accidental coincidences over one measurement interval."""

    delta_pcc: float
    rate_hz: float

    def __post_init__(self) -> None:
        _require_finite(self.delta_pcc, "delta_pcc")
        _require(self.delta_pcc >= 0.0, "delta_pcc", "must be >= 0")
        _require_finite(self.rate_hz, "rate_hz")
        _require(self.rate_hz >= 0.0, "rate_hz", "must be >= 0")

    @classmethod
    def from_count(cls, delta_pcc: float, measurement_time_s: float) -> "SpuriousCount":
        return cls(delta_pcc, delta_pcc / measurement_time_s)


@dataclass(frozen=True)
class PhaseShiftSolution:
    """One branch solution of the accidental-count -> phase-shift inversion.

    ``value_rad`` is the signed shift; ``branch_sign`` is the sign applied
    to the arccosine and ``branch_index`` the fringe index n in
    ``(sign*acos(...) + 2*pi*n)/N - phase``.  When ``defined`` is False the
    accidental count exceeds what any real shift could add at this bias
    and ``value_rad`` is NaN.
    """

    value_rad: float
    branch_sign: int
    branch_index: int
    defined: bool


@dataclass(frozen=True)
class BiasZoneReport:
    """Landscape of the accidental-count phase error over a bias range.

    All intervals are sorted, disjoint and clipped to the scanned range.
    ``above_shot_noise_intervals`` are the neighborhoods of each cusp where
    the error magnitude exceeds the shot noise (undefined cores included);
    ``safe_windows`` is the complement of the undefined and
    above-safe-threshold regions.  ``crossings_rad`` lists the bisected
    shot-noise crossing points themselves.
    """

    cusp_locations: tuple[float, ...]
    undefined_intervals: tuple[tuple[float, float], ...]
    above_shot_noise_intervals: tuple[tuple[float, float], ...]
    safe_windows: tuple[tuple[float, float], ...]
    optimal_bias_points: tuple[float, ...]
    shot_noise_rad: float
    safe_threshold_rad: float
    crossings_rad: tuple[float, ...]


def spurious_coincidences(singles_total: float, order: int, det: DetectionSpec,
                          dark_rate_hz: float = 0.0) -> SpuriousCount:
    """Expected accidental N-fold coincidences from uncorrelated photons.

    Parameters
    ----------
    singles_total : float
        Uncorrelated photon count over the measurement time, summed across
        all N detectors; each detector sees ``singles_total / N``.
    order : int
        Entangled order N, equal to the number of detectors.
    det : DetectionSpec
        Supplies the jitter window and measurement time.
    dark_rate_hz : float
        Background rate per detector, added to each detector's count.

    Returns
    -------
    SpuriousCount
        ``(m_1 * ... * m_N) * (jitter / t_meas)**(N-1)`` with per-detector
        counts ``m_i = singles_total/N + dark_rate_hz * t_meas``.  For two
        detectors and no dark counts this is ``f**2 * jitter / 4 * t_meas``
        in terms of the total singles rate f.
    """
    _require_finite(singles_total, "singles_total")
    _require(singles_total >= 0.0, "singles_total", "must be >= 0")
    _require(order >= 2, "order", f"must be >= 2, got {order}")
    _require_finite(dark_rate_hz, "dark_rate_hz")
    _require(dark_rate_hz >= 0.0, "dark_rate_hz", "must be >= 0")
    per_detector = singles_total / order + dark_rate_hz * det.measurement_time_s
    count = (per_detector ** order) * (det.jitter_s / det.measurement_time_s) ** (order - 1)
    return SpuriousCount.from_count(count, det.measurement_time_s)


def spurious_coincidences_per_detector(counts, det: DetectionSpec) -> SpuriousCount:
    """Generalized accidental count for unequal per-detector counts."""
    _require(len(counts) >= 2, "counts", "need at least two detectors")
    product = 1.0
    for i, m in enumerate(counts):
        _require_finite(m, f"counts[{i}]")
        _require(m >= 0.0, f"counts[{i}]", "must be >= 0")
        product *= m
    count = product * (det.jitter_s / det.measurement_time_s) ** (len(counts) - 1)
    return SpuriousCount.from_count(count, det.measurement_time_s)


def coincidence_shift_forward(pairs: float, phase_total_rad: float, order: int,
                              dphi_rad: float) -> float:
    """Change in the expected coincidence count under a phase shift.

    Evaluates ``(pairs/2) * {cos(N*phi)(cos(N*dphi) - 1) - sin(N*phi)sin(N*dphi)}``
    via the cancellation-free product form
    ``-pairs * sin(N*phi + N*dphi/2) * sin(N*dphi/2)``.  This is the exact
    forward map inverted by :func:`phase_shift_spurious` and serves as its
    round-trip oracle.
    """
    half = 0.5 * order * dphi_rad
    return -pairs * math.sin(order * phase_total_rad + half) * math.sin(half)


def _shift_candidates(phase_total_rad: float, order: int, acos_arg: float):
    """All (value, sign, n) branch solutions near the operating fringe."""
    theta = math.acos(acos_arg)
    scaled = order * phase_total_rad
    base = round(scaled / (2.0 * math.pi))
    out = []
    for sign in (1, -1):
        for n in range(base - 2, base + 3):
            value = (sign * theta + 2.0 * math.pi * n) / order - phase_total_rad
            out.append((value, sign, n))
    return out


def phase_shift_spurious(pairs: float, phase_total_rad: float, order: int,
                         count: SpuriousCount) -> PhaseShiftSolution:
    """Phase shift that reproduces an accidental-count excess.

    Solves ``delta_pcc = P_cc(phi + dphi) - P_cc(phi)`` for ``dphi``:
    ``dphi = (sign*acos(2*dpcc/pairs + cos(N*phi)) + 2*pi*n)/N - phi``.
    Both arccosine signs and fringe indices n are enumerated and the
    smallest-magnitude solution that round-trips through
    :func:`coincidence_shift_forward` is returned.  When the arccosine
    argument exceeds one (near a coincidence-maximum cusp) no real solution
    exists and the result carries ``defined=False``.
    """
    _require_finite(pairs, "pairs")
    _require(pairs > 0.0, "pairs", "must be > 0")
    _require_finite(phase_total_rad, "phase_total_rad")
    _require(order >= 1, "order", f"must be >= 1, got {order}")
    acos_arg = 2.0 * count.delta_pcc / pairs + math.cos(order * phase_total_rad)
    if acos_arg > 1.0:
        return PhaseShiftSolution(math.nan, 0, 0, False)
    acos_arg = max(acos_arg, -1.0)

    tol = 1e-9 * count.delta_pcc + 1e-13 * pairs
    best = None
    for value, sign, n in _shift_candidates(phase_total_rad, order, acos_arg):
        if abs(coincidence_shift_forward(pairs, phase_total_rad, order, value)
               - count.delta_pcc) > tol:
            continue
        if best is None or abs(value) < abs(best[0]):
            best = (value, sign, n)
    if best is None:  # float pathology; should not happen for valid inputs
        raise ArithmeticError("no phase-shift branch reproduces the accidental count")
    return PhaseShiftSolution(best[0], best[1], best[2], True)


def phase_shift_cusp(pairs: float, order: int, count: SpuriousCount) -> float:
    """Peak phase error at a cusp, ``(2/N) * sqrt(delta_pcc / pairs)``.

    Small-shift limit of the inversion at the cusps; also equals (to second
    order) the half-width of the undefined interval around a
    coincidence-maximum cusp.
    """
    _require_finite(pairs, "pairs")
    _require(pairs > 0.0, "pairs", "must be > 0")
    return 2.0 / order * math.sqrt(count.delta_pcc / pairs)


def undefined_half_width(pairs: float, order: int, count: SpuriousCount) -> float:
    """Half-width of the no-solution interval around coincidence maxima.

    Exact arccosine-domain boundary: ``acos(1 - 2*dpcc/pairs) / N``, or the
    full half-period ``pi/N`` once the accidental count exceeds the pair
    count (no bias angle can absorb it anywhere).
    """
    _require(pairs > 0.0, "pairs", "must be > 0")
    a2 = 2.0 * count.delta_pcc / pairs
    if a2 >= 2.0:
        return math.pi / order
    return math.acos(1.0 - a2) / order


def phase_shift_profile(pairs: float, phase_total_rad, order: int,
                        count: SpuriousCount):
    """Vectorized smallest-magnitude phase shift over a grid of bias points.

    Returns ``(signed, defined)`` arrays: the signed minimal solution (NaN
    where undefined) and a boolean mask of where a real solution exists.
    Matches :func:`phase_shift_spurious` pointwise.
    """
    _require(pairs > 0.0, "pairs", "must be > 0")
    phases = np.asarray(phase_total_rad, dtype=float)
    scaled = order * phases
    acos_arg = 2.0 * count.delta_pcc / pairs + np.cos(scaled)
    defined = acos_arg <= 1.0
    theta = np.arccos(np.clip(acos_arg, -1.0, 1.0))

    two_pi = 2.0 * math.pi
    plus = np.mod(theta - scaled + math.pi, two_pi) - math.pi
    minus = np.mod(-theta - scaled + math.pi, two_pi) - math.pi
    signed = np.where(np.abs(plus) <= np.abs(minus), plus, minus) / order
    signed = np.where(defined, signed, np.nan)
    return signed, defined


def _abs_shift_or_inf(pairs: float, phase: float, order: int, count: SpuriousCount) -> float:
    """|dphi| for bracketing: undefined points rank above any threshold."""
    solution = phase_shift_spurious(pairs, phase, order, count)
    return abs(solution.value_rad) if solution.defined else math.inf


def _bisect_crossing(objective, lo: float, hi: float, f_lo: float,
                     residual: float = CROSSING_RESIDUAL_RAD, max_iter: int = 200) -> tuple[float, float]:
    """Bracketing bisection; returns (root, objective_at_root)."""
    sign_lo = f_lo > 0.0
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        f_mid = objective(mid)
        if math.isfinite(f_mid) and abs(f_mid) < residual:
            return mid, f_mid
        if (f_mid > 0.0) == sign_lo:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15 * max(1.0, abs(hi)):
            break
    mid = 0.5 * (lo + hi)
    return mid, objective(mid)


def _merge_intervals(intervals):
    out = []
    for lo, hi in sorted(intervals):
        if out and lo <= out[-1][1] + 1e-15:
            out[-1] = (out[-1][0], max(out[-1][1], hi))
        else:
            out.append((lo, hi))
    return out


def _hot_intervals(pairs, order, count, threshold, lo, hi, grid, values, defined):
    """Maximal intervals where |dphi| > threshold or no solution exists.

    Interval edges interior to the range are refined by bisection; edges
    that land on an undefined-region boundary are snapped to the analytic
    boundary.  Returns (intervals, crossing_points).
    """
    hot = ~defined | (np.abs(np.where(defined, values, np.inf)) > threshold)
    if not hot.any():
        return [], []
    # Runs of consecutive hot grid points.
    idx = np.flatnonzero(hot)
    breaks = np.flatnonzero(np.diff(idx) > 1)
    starts = np.concatenate(([0], breaks + 1))
    ends = np.concatenate((breaks, [idx.size - 1]))

    def objective(phi):
        return _abs_shift_or_inf(pairs, phi, order, count) - threshold

    boundaries = _undefined_boundaries(pairs, order, count, lo, hi)
    intervals = []
    crossings = []
    for s, e in zip(starts, ends):
        left_i, right_i = idx[s], idx[e]
        if left_i == 0:
            left = lo
        else:
            left, resid = _bisect_crossing(objective, grid[left_i - 1], grid[left_i],
                                           objective(grid[left_i - 1]))
            if abs(resid) < CROSSING_RESIDUAL_RAD:
                crossings.append(left)
            else:
                left = _snap_to_boundary(left, boundaries)
        if right_i == grid.size - 1:
            right = hi
        else:
            right, resid = _bisect_crossing(objective, grid[right_i], grid[right_i + 1],
                                            objective(grid[right_i]))
            if abs(resid) < CROSSING_RESIDUAL_RAD:
                crossings.append(right)
            else:
                right = _snap_to_boundary(right, boundaries)
        intervals.append((left, right))
    return _merge_intervals(intervals), sorted(crossings)


def _undefined_boundaries(pairs, order, count, lo, hi):
    width = undefined_half_width(pairs, order, count)
    if count.delta_pcc == 0.0 or width == 0.0:
        return []
    cell = math.pi / order
    out = []
    k = math.floor(lo / (2.0 * cell)) - 1
    while 2.0 * cell * k - width <= hi + cell:
        center = 2.0 * cell * k
        out.extend([center - width, center + width])
        k += 1
    return out


def _snap_to_boundary(phi, boundaries):
    if not boundaries:
        return phi
    return min(boundaries, key=lambda b: abs(b - phi))


def _complement(intervals, lo, hi):
    out = []
    cursor = lo
    for a, b in intervals:
        a, b = max(a, lo), min(b, hi)
        if a > cursor:
            out.append((cursor, a))
        cursor = max(cursor, b)
    if cursor < hi:
        out.append((cursor, hi))
    return [(a, b) for a, b in out if b - a > 1e-14]


def bias_zone_scan(pairs: float, order: int, count: SpuriousCount,
                   shot_noise_rad: float, phase_range: tuple[float, float] = (0.0, math.pi),
                   resolution: int = 4096,
                   safe_threshold_rad: float | None = None) -> BiasZoneReport:
    """Map cusps, undefined zones, noisy zones and safe bias windows.

    Parameters
    ----------
    pairs, order, count :
        Entangled-pair count over the measurement interval, entangled
        order, and the accidental-coincidence count to absorb.
    shot_noise_rad : float
        Quantum phase noise used for the above-shot-noise intervals.
    phase_range : (float, float)
        Total-phase range to scan.
    resolution : int
        Grid points per pi of range; at least ``MIN_RESOLUTION_PER_PI``.
    safe_threshold_rad : float, optional
        Threshold defining the safe windows; defaults to the shot noise.
        Pass a tenth of the shot noise for the stricter landscape.

    The threshold crossings bounding each noisy interval are refined by
    bisection to a residual below ``CROSSING_RESIDUAL_RAD``.
    """
    lo, hi = phase_range
    _require(hi > lo, "phase_range", "must be an increasing (lo, hi) pair")
    _require(resolution >= MIN_RESOLUTION_PER_PI, "resolution",
             f"need at least {MIN_RESOLUTION_PER_PI} points per pi interval")
    _require_finite(shot_noise_rad, "shot_noise_rad")
    _require(shot_noise_rad > 0.0, "shot_noise_rad", "must be > 0")
    if safe_threshold_rad is None:
        safe_threshold_rad = shot_noise_rad
    _require(safe_threshold_rad > 0.0, "safe_threshold_rad", "must be > 0")

    n_points = max(2, int(math.ceil((hi - lo) / math.pi * resolution)) + 1)
    grid = np.linspace(lo, hi, n_points)
    values, defined = phase_shift_profile(pairs, grid, order, count)

    cell = math.pi / order
    cusps = [k * cell for k in range(math.ceil(lo / cell - 1e-12), math.floor(hi / cell + 1e-12) + 1)]
    optimal = [0.5 * cell + k * cell
               for k in range(math.ceil((lo - 0.5 * cell) / cell - 1e-12),
                              math.floor((hi - 0.5 * cell) / cell + 1e-12) + 1)]

    width = undefined_half_width(pairs, order, count) if count.delta_pcc > 0.0 else 0.0
    undefined = []
    if width > 0.0:
        if 2.0 * count.delta_pcc / pairs >= 2.0:
            undefined = [(lo, hi)]
        else:
            for k in range(math.floor(lo / (2.0 * cell)) - 1, math.ceil(hi / (2.0 * cell)) + 2):
                center = 2.0 * cell * k
                a, b = center - width, center + width
                if b > lo and a < hi:
                    undefined.append((max(a, lo), min(b, hi)))

    above_shot, crossings = _hot_intervals(pairs, order, count, shot_noise_rad,
                                           lo, hi, grid, values, defined)
    if safe_threshold_rad == shot_noise_rad:
        above_safe = above_shot
    else:
        above_safe, _ = _hot_intervals(pairs, order, count, safe_threshold_rad,
                                       lo, hi, grid, values, defined)
    safe = _complement(_merge_intervals(above_safe + undefined), lo, hi)

    return BiasZoneReport(
        cusp_locations=tuple(cusps),
        undefined_intervals=tuple(undefined),
        above_shot_noise_intervals=tuple(above_shot),
        safe_windows=tuple(safe),
        optimal_bias_points=tuple(optimal),
        shot_noise_rad=float(shot_noise_rad),
        safe_threshold_rad=float(safe_threshold_rad),
        crossings_rad=tuple(crossings),
    )


def max_singles_flux(pairs_rate_hz: float, order: int, det: DetectionSpec,
                     safety_margin: float = 1.0) -> float:
    """Largest uncorrelated flux tolerable at the optimal bias points.

    At the optimal bias (quadrature, where the fringe slope is maximal)
    the accidental count maps to a phase shift of magnitude
    ``asin(2*dpcc/pairs)/N``.  This solves
    ``|dphi| = safety_margin * shot_noise`` for the total singles rate, so
    running below the returned rate keeps the accidental-count error under
    the (scaled) quantum noise at those bias points.  Grows as the jitter
    shrinks.
    """
    _require_finite(pairs_rate_hz, "pairs_rate_hz")
    _require(pairs_rate_hz >= 0.0, "pairs_rate_hz", "must be >= 0")
    _require(order >= 2, "order", f"must be >= 2, got {order}")
    _require_finite(safety_margin, "safety_margin")
    _require(safety_margin > 0.0, "safety_margin", "must be > 0")
    if pairs_rate_hz == 0.0:
        return 0.0
    t = det.measurement_time_s
    pairs = pairs_rate_hz * t
    target_shift = safety_margin / math.sqrt(order * order * pairs)
    # Exact inversion at quadrature; saturates at the largest reachable shift.
    target_count = 0.5 * pairs * math.sin(min(order * target_shift, 0.5 * math.pi))
    per_detector = (target_count * (t / det.jitter_s) ** (order - 1)) ** (1.0 / order)
    return order * per_detector / t
