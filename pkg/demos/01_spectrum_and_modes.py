"""
Spectrum of a small ring and the mode transform that diagonalizes it.

The ring of 2N+1 oscillators couples every pair through a cyclic matrix A,
so a discrete Fourier transform turns the dynamics into independent modes
with frequencies omega_k = tan(pi*|k|/(2N+1)).  This script prints the
spectrum, shows the coupling it induces between neighbours, and checks the
transform's norm identity on a random vector.
"""

import numpy as np

from ringbath import AssemblyConfig, build_spectrum, coupling_matrix, mode_transform, seeded_generator

N = 4
config = AssemblyConfig(half_size=N)
spectrum = build_spectrum(config)

print(f"ring of {spectrum.size} oscillators, tangent frequency law")
print(f"{'k':>4} {'omega_k':>12}")
for k, w in zip(spectrum.k_values, spectrum.frequencies):
    print(f"{k:>4} {w:>12.6f}")
print(f"zero mode at k=0, largest frequency {spectrum.omega_max:.4f}")

# the induced coupling: row of A for the center particle
A = coupling_matrix(spectrum)
print("\ncoupling of particle 0 to its neighbours (row of A):")
print(np.array2string(A[N], precision=4, suppress_small=True))

# unitarity up to the size factor: sum |v_hat|^2 = (2N+1) sum |v|^2
v = seeded_generator(3).standard_normal(spectrum.size)
v_hat = mode_transform(v, "forward")
lhs = np.sum(np.abs(v_hat) ** 2)
rhs = spectrum.size * (v @ v)
back = mode_transform(v_hat, "inverse").real
print(f"\nnorm identity: {lhs:.10f} vs {rhs:.10f} (gap {abs(lhs-rhs):.2e})")
print(f"round trip error: {np.max(np.abs(back - v)):.2e}")
