"""Mode spectrum and circulant-matrix machinery.

An assembly is a ring of 2N+1 identical particles whose coupling matrix A
is cyclic, so it is diagonalized by the discrete Fourier vectors built from
zeta = exp(2i*pi/(2N+1)).  Everything downstream (exact flow, trajectory
coefficients, autocorrelation identities) reduces to the eigenfrequencies
omega_k and this transform.  Dense matrix reconstruction exists only so
that small assemblies can be checked against generic linear algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConfigurationError, DimensionError, ParameterError

# Largest half_size for which dense O(n^3) reconstruction is permitted.
DENSE_BOUND = 64

# Tolerance for validating the omega_{-k} = omega_k symmetry of explicit
# frequency lists before they are symmetrized exactly.
SYMMETRY_TOL = 1e-12


@dataclass
class AssemblyConfig:
    """All parameters defining one finite assembly.

    half_size is N; the assembly has 2N+1 particles indexed -N..N.
    frequency_law is either the string "tangent" (omega_k = tan(pi*|k|/(2N+1)))
    or an explicit sequence of 2N+1 nonnegative frequencies ordered k = -N..N.
    cutoff_cap, when set, clips every frequency above it to the cap.
    """

    half_size: int
    mass: float = 1.0
    temperature: float = 1.0
    frequency_law: str | Sequence[float] = "tangent"
    cutoff_cap: float | None = None
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if not isinstance(self.half_size, (int, np.integer)) or self.half_size < 1:
            raise ConfigurationError(f"half_size must be an integer >= 1, got {self.half_size!r}")
        self.half_size = int(self.half_size)
        if not self.mass > 0:
            raise ConfigurationError(f"mass must be positive, got {self.mass!r}")
        if not self.temperature > 0:
            raise ConfigurationError(f"temperature must be positive, got {self.temperature!r}")
        if self.cutoff_cap is not None and not self.cutoff_cap > 0:
            raise ConfigurationError(f"cutoff_cap must be positive, got {self.cutoff_cap!r}")
        if not isinstance(self.rng_seed, (int, np.integer)):
            raise ConfigurationError(f"rng_seed must be an integer, got {self.rng_seed!r}")
        self.rng_seed = int(self.rng_seed)
        if isinstance(self.frequency_law, str):
            if self.frequency_law != "tangent":
                raise ConfigurationError(
                    f"frequency_law must be 'tangent' or an explicit list, got {self.frequency_law!r}"
                )
        else:
            self.frequency_law = tuple(float(w) for w in self.frequency_law)

    @property
    def size(self) -> int:
        return 2 * self.half_size + 1


@dataclass(frozen=True)
class Spectrum:
    """The 2N+1 mode frequencies omega_k, stored in k = -N..N order.

    root_of_unity_order is 2N+1 and fixes zeta = exp(2i*pi/(2N+1)).
    Symmetry omega_{-k} = omega_k holds exactly (bit-identical entries),
    which downstream code relies on when merging degenerate frequencies.
    """

    frequencies: np.ndarray
    root_of_unity_order: int

    def __post_init__(self) -> None:
        freqs = np.asarray(self.frequencies, dtype=float)
        if self.root_of_unity_order != len(freqs) or len(freqs) % 2 == 0 or len(freqs) < 3:
            raise DimensionError(
                f"spectrum needs an odd number 2N+1 >= 3 of frequencies matching "
                f"root_of_unity_order, got {len(freqs)} and {self.root_of_unity_order}"
            )
        if np.any(freqs < 0) or not np.all(np.isfinite(freqs)):
            raise ConfigurationError("frequencies must be finite and nonnegative")
        if np.any(freqs[::-1] != freqs):
            raise ConfigurationError("frequencies must satisfy omega_{-k} = omega_k exactly")
        freqs.flags.writeable = False
        object.__setattr__(self, "frequencies", freqs)

    @property
    def half_size(self) -> int:
        return (self.root_of_unity_order - 1) // 2

    @property
    def size(self) -> int:
        return self.root_of_unity_order

    @property
    def k_values(self) -> np.ndarray:
        n = self.half_size
        return np.arange(-n, n + 1)

    @property
    def omega_max(self) -> float:
        return float(self.frequencies.max())

    def omega(self, k: int) -> float:
        """Frequency of mode k, k in -N..N."""
        n = self.half_size
        if not -n <= k <= n:
            raise DimensionError(f"mode index {k} outside -{n}..{n}")
        return float(self.frequencies[k + n])


def build_spectrum(config: AssemblyConfig) -> Spectrum:
    """Construct the mode spectrum for one assembly.

    The tangent law evaluates tan at pi*|k|/(2N+1); using |k| makes the
    omega_{-k} = omega_k symmetry exact in floating point.  Explicit lists
    are validated against that symmetry (tolerance SYMMETRY_TOL) and then
    symmetrized by averaging so the equality holds exactly downstream.
    """
    n = config.half_size
    m = config.size
    if isinstance(config.frequency_law, str):
        k = np.arange(-n, n + 1)
        freqs = np.tan(np.pi * np.abs(k) / m)
    else:
        listed = np.asarray(config.frequency_law, dtype=float)
        if len(listed) != m:
            raise ConfigurationError(
                f"explicit frequency list has length {len(listed)}, expected {m}"
            )
        if np.any(listed < 0):
            raise ConfigurationError("explicit frequencies must be nonnegative")
        asym = np.max(np.abs(listed - listed[::-1]))
        if asym > SYMMETRY_TOL * max(1.0, float(np.max(np.abs(listed)))):
            raise ConfigurationError(
                f"explicit frequencies violate omega_-k = omega_k (max asymmetry {asym:.3e})"
            )
        freqs = 0.5 * (listed + listed[::-1])
    if config.cutoff_cap is not None:
        freqs = np.minimum(freqs, config.cutoff_cap)
    return Spectrum(frequencies=freqs, root_of_unity_order=m)


def coupling_matrix(spectrum: Spectrum, dense_bound: int = DENSE_BOUND) -> np.ndarray:
    """Dense cyclic coupling matrix A with eigenvalues omega_k^2.

    A_{ml} = (1/(2N+1)) * sum_k omega_k^2 zeta^{k(m-l)}; the imaginary parts
    cancel by the spectrum's symmetry, so the sum is evaluated as a real
    cosine series.  Intended for small-assembly cross-checks only, hence the
    refusal above dense_bound.
    """
    n = spectrum.half_size
    if n > dense_bound:
        raise ParameterError(
            f"dense reconstruction is gated to half_size <= {dense_bound}, got {n}"
        )
    m = spectrum.size
    k = spectrum.k_values
    w2 = spectrum.frequencies**2
    shifts = np.arange(m)
    # first row of the circulant: c(d) = (1/m) sum_k w_k^2 cos(2 pi k d / m)
    row = np.cos(2 * np.pi * np.outer(shifts, k) / m) @ w2 / m
    # enforce the d <-> m-d evenness exactly so A is symmetric to the bit
    row = 0.5 * (row + row[(-shifts) % m])
    idx = np.arange(m)
    return row[(idx[:, None] - idx[None, :]) % m]


def mode_transform(v: np.ndarray, direction: str = "forward") -> np.ndarray:
    """DFT-like change of variables diagonalizing any cyclic coupling.

    Forward computes v_hat(k) = sum_i zeta^{-ik} v_i for i, k = -N..N, with
    zeta = exp(2i*pi/(2N+1)); inverse undoes it exactly.  Both directions
    are realized through the fast transform plus an index/phase shift that
    accounts for the symmetric (-N..N) labelling, and both match the naive
    O(n^2) sum to roundoff.  Parseval holds with the transform's scale:
    sum |v_hat|^2 = (2N+1) sum |v|^2.
    """
    v = np.asarray(v)
    m = len(v)
    if m % 2 == 0 or m < 3:
        raise DimensionError(f"vector length must be odd and >= 3, got {m}")
    if direction not in ("forward", "inverse"):
        raise ParameterError(f"direction must be 'forward' or 'inverse', got {direction!r}")
    n = (m - 1) // 2
    k = np.arange(m) - n
    if direction == "forward":
        # v_hat(k) = zeta^{kN} * FFT(v)[k mod m] when v is stored i = -N..N
        return np.exp(2j * np.pi * n * k / m) * np.fft.fft(v)[k % m]
    g = np.empty(m, dtype=complex)
    g[k % m] = v * np.exp(-2j * np.pi * n * k / m)
    return np.fft.ifft(g)


def propagator_entry(spectrum: Spectrum, kind: str, m: int, l: int, t: float) -> float:
    """Single entry of cos(sqrt(A) t) or sqrt(A) sin(sqrt(A) t).

    Evaluated as the O(n) spectral sum
    (1/(2N+1)) sum_k f(omega_k) zeta^{k(m-l)} with f = cos(omega t) or
    omega sin(omega t); the imaginary parts cancel by symmetry so only the
    cosine series is summed.
    """
    if kind not in ("cos", "omega-sin"):
        raise ParameterError(f"kind must be 'cos' or 'omega-sin', got {kind!r}")
    n = spectrum.half_size
    if not (-n <= m <= n and -n <= l <= n):
        raise DimensionError(f"indices ({m}, {l}) outside -{n}..{n}")
    w = spectrum.frequencies
    k = spectrum.k_values
    f = np.cos(w * t) if kind == "cos" else w * np.sin(w * t)
    return float(f @ np.cos(2 * np.pi * k * (m - l) / spectrum.size) / spectrum.size)
