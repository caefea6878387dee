"""
Uniform sampling on a constant-energy surface, and when one coordinate
starts to look Gaussian.

The sampler works in rescaled coordinates where the surface is a sphere, so
every draw lands on the requested energy exactly.  A single momentum
coordinate of a uniform point on a high-dimensional sphere is close to
Gaussian (large rings) but measurably non-Gaussian on small ones; the
Kolmogorov-Smirnov distances below show both regimes.
"""

import numpy as np

from ringbath import (
    AssemblyConfig,
    build_spectrum,
    energy,
    mehler_marginal_statistic,
    sample_energy_shell,
    shell_dimension,
)

# exactness: the landed energy is the requested one to roundoff
spectrum = build_spectrum(AssemblyConfig(half_size=32))
target = spectrum.size * 1.0
state = sample_energy_shell(spectrum, target, seed=7)
print(f"requested energy {target}, landed on {energy(state, spectrum):.12f}")

# equipartition: E[p_0^2] = 2E/dim, close to kT at the default energy
draws = 3000
vals = np.array([
    sample_energy_shell(spectrum, target, 500 ^ i).momentum(0) ** 2
    for i in range(draws)
])
kt_eff = 2 * target / shell_dimension(spectrum)
print(f"mean p_0^2 over {draws} draws: {vals.mean():.4f} (exact {kt_eff:.4f})")

# marginal normality: KS distance of p_0 against its matched Gaussian.
# the true deviation shrinks like 1/dimension, so the tiniest ring needs
# many draws before its non-Gaussian shape rises above sampling noise
print(f"\n{'N':>6} {'draws':>6} {'KS distance':>12} {'1% critical':>12} {'gaussian?':>10}")
for n, draws in ((2, 16000), (10, 4000), (1000, 2000)):
    spec = build_spectrum(AssemblyConfig(half_size=n))
    e = spec.size * 1.0
    samples = [sample_energy_shell(spec, e, 900 ^ i) for i in range(draws)]
    ks = mehler_marginal_statistic(samples, 0, spec, e)
    critical = 1.63 / np.sqrt(draws)
    verdict = "yes" if ks < critical else "no"
    print(f"{n:>6} {draws:>6} {ks:>12.4f} {critical:>12.4f} {verdict:>10}")
print("only the tiniest ring is distinguishable from Gaussian at these sizes")
