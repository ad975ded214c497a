#!/usr/bin/env python3
"""How far down can an entangled-photon gyro see?

Walks the ideal-instrument chain: the rotation-to-phase scale factor of a
fiber coil, the quantum phase noise for an order-N entangled source, and
the resulting minimum resolvable rotation rate.  The table at the end
shows how the floor moves with photon budget and entangled order, with the
earth rotation rate as the yardstick.
"""

import math

from qfog import EARTH_RATE_RAD_PER_S, GyroGeometry, omega_min, sagnac_phase, shot_noise

geom = GyroGeometry(fiber_length_m=1000.0, coil_radius_m=0.4, wavelength_m=1550e-9)

print("coil: 1 km fiber, 0.4 m radius, 1550 nm")
phase_at_earth_rate = sagnac_phase(EARTH_RATE_RAD_PER_S, geom)
print(f"phase at the earth rotation rate: {phase_at_earth_rate:.3e} rad")
print(f"scale factor: {phase_at_earth_rate / EARTH_RATE_RAD_PER_S:.3f} rad per rad/s")
print()

print("quantum phase noise 1/sqrt(N*M) and the rotation floor it implies:")
print(f"{'N':>3} {'photons M':>12} {'noise [rad]':>12} {'floor [rad/s]':>14} {'vs earth':>9}")
for order in (1, 2, 4, 6):
    for photons in (1e4, 1e6, 1e8):
        noise = shot_noise(order, photons)
        floor = omega_min(geom, order, photons)
        marker = "below" if floor < EARTH_RATE_RAD_PER_S else "above"
        print(f"{order:>3} {photons:>12.1e} {noise:>12.3e} {floor:>14.3e} {marker:>9}")
print()

# The floor falls as 1/sqrt(M): quadrupling the budget buys a factor two.
assert math.isclose(omega_min(geom, 2, 4e6), 0.5 * omega_min(geom, 2, 1e6), rel_tol=1e-12)
print("check: quadrupling M halves the floor (exact)")
print(f"reference point: N=2, M=1e6 gives {omega_min(geom, 2, 1e6):.2e} rad/s, "
      f"just below the earth rate of {EARTH_RATE_RAD_PER_S:.2e} rad/s")
