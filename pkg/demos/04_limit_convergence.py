"""
The exponential limit: unit phase autocorrelation approaching exp(-tau).

Under equilibrium second moments the expected autocorrelation of p_0 is a
Riemann sum over the mode frequencies.  With the tangent law that sum is a
quadrature of the Lorentzian cosine transform, whose value is pi*exp(-tau),
so the normalized curves converge to exp(-tau) as the ring grows.  The
table tracks the sup distance on tau in [0, 5] shrinking with N.
"""

import numpy as np

from ringbath import (
    AssemblyConfig,
    TauGrid,
    build_spectrum,
    lorentzian_cosine_transform,
    phase_acf_analytic,
)

grid = TauGrid.spanning(5.0, 0.1)
target = np.exp(-grid.values)

print(f"{'N':>6} {'sup |unit - exp(-tau)|':>24}")
for n in (50, 200, 800, 3200):
    spectrum = build_spectrum(AssemblyConfig(half_size=n))
    unit = phase_acf_analytic(spectrum, 1.0, grid).unit_at_zero()
    print(f"{n:>6} {np.max(np.abs(unit.values - target)):>24.5f}")

print("\nindependent check of the limit itself (adaptive quadrature):")
print(f"{'tau':>5} {'integral':>14} {'pi*exp(-tau)':>14}")
for tau in (0.0, 1.0, 3.0):
    print(f"{tau:>5.1f} {lorentzian_cosine_transform(tau):>14.10f} "
          f"{np.pi * np.exp(-tau):>14.10f}")
