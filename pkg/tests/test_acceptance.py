"""Acceptance gate: every release criterion at its pinned tolerance.

Each test prints one ``criterion NN PASS|FAIL`` line (run with ``-s`` to
see them live) and then asserts, so the suite both reports and enforces.
Tolerances live here, not in helper code, and are never loosened at run
time.
"""

import math
import subprocess
import sys
import time
from pathlib import Path

import numpy as np

from qfog import (
    DetectionSpec,
    GyroGeometry,
    McConfig,
    PhotonPopulations,
    SpectralSpec,
    SpuriousCount,
    bias_zone_scan,
    chromatic_delay,
    coherence_factor,
    coherence_time,
    coincidence_shift_forward,
    noon_ratio,
    omega_min,
    phase_shift_cusp,
    phase_shift_spurious,
    propagate_populations,
    pump_drift_phase_error,
    shot_noise,
    simulate_uncorrelated,
    spurious_coincidences,
    undefined_half_width,
)
from qfog.dispersion import DispersionSpec

REPO = Path(__file__).resolve().parents[1]
BENCH_CONFIG = REPO / "configs" / "silvestri2024.json"

# Canonical two-photon benchmark: 4 kHz pairs / 38 kHz singles at the
# detectors, 156 ps jitter, half-hour records.
BENCH_PAIRS = 7.2e6
BENCH_COUNT = SpuriousCount.from_count(101.3, 1800.0)
BENCH_DET = DetectionSpec(jitter_s=156e-12, measurement_time_s=1800.0)
BENCH_SHOT = shot_noise(2, noon_pairs=BENCH_PAIRS)


def _report(number: int, ok: bool, detail: str) -> None:
    print(f"criterion {number:02d} {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, detail


def test_criterion_01_rotation_floor():
    geom = GyroGeometry(1000.0, 0.4, 1550e-9)
    value = omega_min(geom, 2, 1e6)
    ok = abs(value / 6.5e-5 - 1.0) <= 0.02
    _report(1, ok, f"rotation floor {value:.4e} rad/s vs 6.5e-05 within 2%")


def test_criterion_02_detected_pair_fraction():
    ten_db = noon_ratio(propagate_populations(PhotonPopulations(0.95, 0.05), 0.1))
    projected = noon_ratio(propagate_populations(PhotonPopulations(0.95, 0.05), 0.216))
    ok = abs(ten_db - 0.095) <= 1e-3 and abs(projected - 0.205) <= 0.005
    _report(2, ok, f"pair fraction {ten_db:.6f} vs 0.095 (1e-3), "
                   f"{projected:.6f} vs 0.205 (0.005)")


def test_criterion_03_accidental_rates():
    rate_bench = spurious_coincidences(38.1e3 * 1800.0, 2, BENCH_DET).rate_hz
    det_projected = DetectionSpec(jitter_s=200e-12, measurement_time_s=1800.0)
    rate_projected = spurious_coincidences(40e3 * 1800.0, 2, det_projected).rate_hz
    half_hour = rate_bench * 1800.0
    ok = (abs(rate_bench / 0.0566 - 1.0) <= 0.05
          and abs(rate_projected / 0.08 - 1.0) <= 0.02
          and 10.0 ** 1.5 < half_hour < 10.0 ** 2.5)
    _report(3, ok, f"accidental rates {rate_bench:.4f} Hz (0.0566, rounds to 0.06), "
                   f"{rate_projected:.4f} Hz (0.08); half-hour count {half_hour:.1f} ~ 1e2")


def test_criterion_04_shot_noise():
    value = shot_noise(2, 1.44e7)
    ok = abs(value / 0.19e-3 - 1.0) <= 0.02
    _report(4, ok, f"shot noise {value:.4e} rad vs 1.9e-04 within 2%")


def test_criterion_05_low_flux_cusp_error():
    det = DetectionSpec(jitter_s=100e-12, measurement_time_s=0.02)
    count = spurious_coincidences(16000.0, 2, det)
    peak = phase_shift_cusp(1956.0, 2, count)
    ok = abs(peak / 0.013 - 1.0) <= 0.05 and peak < 0.0207
    _report(5, ok, f"cusp error {peak:.4e} rad vs 0.013 within 5% and below 0.0207")


def test_criterion_06_inversion_round_trip():
    rng = np.random.default_rng(2024)
    worst = 0.0
    n_samples = 0
    while n_samples < 10_000:
        order = int(rng.choice([2, 3, 4, 6]))
        pairs = float(10.0 ** rng.uniform(2.0, 8.0))
        fraction = float(10.0 ** rng.uniform(-5.0, math.log10(0.25)))
        phi = float(rng.uniform(0.0, 2.0 * math.pi / order))
        if 2.0 * fraction + math.cos(order * phi) > 1.0 - 1e-9:
            continue
        n_samples += 1
        count = SpuriousCount.from_count(fraction * pairs, 1.0)
        solution = phase_shift_spurious(pairs, phi, order, count)
        recovered = coincidence_shift_forward(pairs, phi, order, solution.value_rad)
        worst = max(worst, abs(recovered - count.delta_pcc) / count.delta_pcc)
    ok = worst <= 1e-9
    _report(6, ok, f"round trip over 10^4 samples, worst relative error {worst:.2e} <= 1e-9")


def test_criterion_07_undefined_width_equals_cusp_formula():
    rng = np.random.default_rng(777)
    worst = 0.0
    for _ in range(500):
        pairs = float(10.0 ** rng.uniform(2.0, 8.0))
        fraction = float(10.0 ** rng.uniform(-8.0, math.log10(0.05)))
        order = int(rng.choice([2, 3, 4, 6]))
        count = SpuriousCount.from_count(fraction * pairs, 1.0)
        width = undefined_half_width(pairs, order, count)
        cusp = phase_shift_cusp(pairs, order, count)
        worst = max(worst, abs(width / cusp - 1.0))
    bench_width = undefined_half_width(BENCH_PAIRS, 2, BENCH_COUNT)
    ok = worst <= 0.01 and abs(bench_width / 3.75e-3 - 1.0) <= 0.01
    _report(7, ok, f"undefined half-width == cusp formula within 1% (worst {worst:.2e}); "
                   f"benchmark width {bench_width * 1e3:.3f} mrad (documented discrepancy: "
                   "a ~1 mrad figure has been quoted for this setup; not asserted)")


def test_criterion_08_shot_noise_crossings():
    report = bias_zone_scan(BENCH_PAIRS, 2, BENCH_COUNT, BENCH_SHOT,
                            phase_range=(-0.5, math.pi + 0.5))
    residuals = []
    for phi in report.crossings_rad:
        solution = phase_shift_spurious(BENCH_PAIRS, phi, 2, BENCH_COUNT)
        residuals.append(abs(abs(solution.value_rad) - BENCH_SHOT))
    offsets = {}
    for phi in report.crossings_rad:
        cusp = min(report.cusp_locations, key=lambda c: abs(c - phi))
        offsets.setdefault(round(cusp, 9), []).append(abs(phi - cusp))
    asymmetry = max(abs(two[0] - two[1]) for two in offsets.values())
    mean_offset = np.mean([off for two in offsets.values() for off in two])
    ok = (len(report.crossings_rad) >= 6
          and max(residuals) < 1e-9
          and all(len(two) == 2 for two in offsets.values())
          and asymmetry <= 1e-6)
    _report(8, ok, f"{len(residuals)} crossings, worst residual {max(residuals):.2e} rad, "
                   f"cusp asymmetry {asymmetry:.2e} rad; computed offset "
                   f"{mean_offset * 1e3:.2f} mrad vs quoted 14 mrad (comparison only, "
                   "agreement not required)")


def test_criterion_09_error_falls_linearly_in_order():
    rng = np.random.default_rng(909)
    worst = 0.0
    for _ in range(200):
        fraction = float(10.0 ** rng.uniform(-6.0, -2.0))
        scaled_phi = float(rng.uniform(0.3, math.pi - 0.3))
        products = []
        for order in (2, 3, 4, 6):
            count = SpuriousCount.from_count(fraction * 1e6, 1.0)
            solution = phase_shift_spurious(1e6, scaled_phi / order, order, count)
            products.append(order * abs(solution.value_rad))
        worst = max(worst, max(products) / min(products) - 1.0)
    ok = worst <= 1e-3
    _report(9, ok, f"N*|dphi| constant across N in (2,3,4,6); worst spread {worst:.2e} <= 0.1%")


def test_criterion_10_monte_carlo_validates_count_model():
    started = time.perf_counter()
    per_detector = 38.1e3 / 2.0
    det = DetectionSpec(jitter_s=156e-12, measurement_time_s=18.0)
    mc = McConfig(seed=20240901, trials=200)
    base = simulate_uncorrelated([per_detector, per_detector], det, mc)
    doubled = simulate_uncorrelated([per_detector, per_detector],
                                    DetectionSpec(jitter_s=312e-12, measurement_time_s=18.0), mc)
    elapsed = time.perf_counter() - started
    n = mc.trials
    se_diff = math.sqrt(doubled.variance / n + 4.0 * base.variance / n)
    doubling_gap = abs(doubled.mean_coincidences - 2.0 * base.mean_coincidences)
    ok = (abs(base.z_score) < 3.0
          and doubling_gap < 3.0 * se_diff
          and elapsed < 300.0)
    _report(10, ok, f"mean {base.mean_coincidences:.3f} vs prediction "
                    f"{base.analytic_prediction:.3f} (z={base.z_score:+.2f}); "
                    f"jitter doubling gap {doubling_gap:.3f} < 3sigma={3 * se_diff:.3f}; "
                    f"runtime {elapsed:.1f}s < 300s")


def test_criterion_11_dispersion_and_drift():
    spectrum = SpectralSpec(1550e-9, 1e-9)
    tau = coherence_time(spectrum)
    chromatic = coherence_factor(chromatic_delay(DispersionSpec(), 2000.0, spectrum), tau)
    measured = 0.96
    relative, _ = pump_drift_phase_error(0.2, 0.01, spectrum, 5.5e-3)
    ok = (abs(tau / 8e-12 - 1.0) <= 0.02
          and chromatic >= 0.9999
          and measured * chromatic > 0.9599
          and 1e-6 <= relative <= 2e-6)
    _report(11, ok, f"coherence time {tau * 1e12:.3f} ps (8 ps, 2%); chromatic factor "
                    f"{chromatic:.6f} >= 0.9999 (measured 0.96 stays dominant); "
                    f"pump drift {relative:.3e} in [1e-6, 2e-6]")


def test_criterion_12_byte_identical_outputs(tmp_path):
    def run(argv):
        proc = subprocess.run([sys.executable, "-m", "qfog.cli", *argv],
                              capture_output=True, cwd=REPO)
        assert proc.returncode == 0, proc.stderr.decode()
        return proc.stdout

    mc_args = ["mc", "--config", str(BENCH_CONFIG), "--trials", "30",
               "--seed", "4242", "--scale", "0.001"]
    serial = run(mc_args + ["--workers", "1"])
    parallel = run(mc_args + ["--workers", "3"])

    csvs = []
    for name in ("one.csv", "two.csv"):
        path = tmp_path / name
        run(["sweep", "--config", str(BENCH_CONFIG), "--from", "0.0",
             "--to", "3.14159", "--points", "513", "--out", str(path)])
        csvs.append(path.read_bytes())

    ok = serial == parallel and csvs[0] == csvs[1]
    _report(12, ok, "MC stdout identical for 1 vs 3 workers; sweep CSV identical across runs")
