"""Equilibrium and microcanonical initial conditions.

Both samplers work in rescaled mode coordinates y in which the energy is
H = (1/2) sum y_i^2 and the flow is a rotation: y collects the transformed
momenta and, for every mode with omega_k > 0, the frequency-weighted
transformed positions.  Modes with omega_k = 0 get q_hat frozen to zero:
they contribute no potential energy, would make the constant-energy
surface non-compact, and never influence p_0 because their position
coefficient there is omega itself.

In y, the Maxwell-Boltzmann measure is an isotropic Gaussian and the
constant-energy surface is the sphere of radius sqrt(2E), so uniform shell
sampling reduces to normalizing a Gaussian vector.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats

from .dynamics import PhaseState
from .errors import ParameterError
from .spectral import Spectrum, mode_transform

_MASK64 = (1 << 64) - 1


def seeded_generator(seed: int) -> np.random.Generator:
    """Counter-based generator for one 64-bit seed.

    Philox keys make nearby seeds fully independent streams, so ensembles
    can derive per-sample seeds as seed XOR index and stay order-free.
    """
    return np.random.Generator(np.random.Philox(key=seed & _MASK64))


def _positive_mode_mask(spectrum: Spectrum):
    """(omega_0 > 0, mask of omega_k > 0 for k = 1..N)."""
    n = spectrum.half_size
    w = spectrum.frequencies
    return bool(w[n] > 0), w[n + 1 :] > 0


def shell_dimension(spectrum: Spectrum) -> int:
    """Number of rescaled coordinates y carrying energy: 2N+1 momentum
    coordinates plus one per real position degree of freedom with
    omega_k > 0 (4N+1 under the tangent law)."""
    zero_mode_positive, mask = _positive_mode_mask(spectrum)
    return spectrum.size + int(zero_mode_positive) + 2 * int(mask.sum())


@dataclass(frozen=True)
class ShellSpec:
    """A constant-energy surface: its energy and the sphere dimension."""

    energy: float
    dimension: int

    def __post_init__(self) -> None:
        if not self.energy > 0:
            raise ParameterError(f"shell energy must be positive, got {self.energy!r}")
        if self.dimension < 1:
            raise ParameterError(f"shell dimension must be >= 1, got {self.dimension!r}")

    @classmethod
    def for_assembly(cls, spectrum: Spectrum, kT: float) -> "ShellSpec":
        """Default shell at the equilibrium energy scale E = (2N+1) kT."""
        if not kT > 0:
            raise ParameterError(f"kT must be positive, got {kT!r}")
        return cls(energy=spectrum.size * kT, dimension=shell_dimension(spectrum))


def _state_from_actions(y: np.ndarray, spectrum: Spectrum, mass: float) -> PhaseState:
    """Invert the y-coordinate packing back to a real phase state.

    Packing order: p_hat(0); Re p_hat(1..N); Im p_hat(1..N); then for the
    positive-frequency position modes: q_hat(0) if omega_0 > 0, Re q_hat,
    Im q_hat.  Scales are chosen so H = (1/2) sum y^2 exactly.
    """
    n = spectrum.half_size
    m = spectrum.size
    w = spectrum.frequencies
    zero_mode_positive, mask = _positive_mode_mask(spectrum)

    p_hat = np.zeros(m, dtype=complex)
    p_hat[n] = np.sqrt(mass * m) * y[0]
    p_hat[n + 1 :] = np.sqrt(mass * m / 2) * (y[1 : n + 1] + 1j * y[n + 1 : m])
    p_hat[:n] = np.conj(p_hat[n + 1 :][::-1])

    q_hat = np.zeros(m, dtype=complex)
    rest = y[m:]
    if zero_mode_positive:
        q_hat[n] = np.sqrt(m) * rest[0] / w[n]
        rest = rest[1:]
    n_pos = int(mask.sum())
    upper = np.zeros(n, dtype=complex)
    upper[mask] = (
        np.sqrt(m / 2) * (rest[:n_pos] + 1j * rest[n_pos : 2 * n_pos]) / w[n + 1 :][mask]
    )
    q_hat[n + 1 :] = upper
    q_hat[:n] = np.conj(upper[::-1])

    return PhaseState(
        p=mode_transform(p_hat, "inverse").real,
        q=mode_transform(q_hat, "inverse").real,
    )


def sample_maxwell_boltzmann(
    spectrum: Spectrum, kT: float, seed: int, mass: float = 1.0
) -> PhaseState:
    """One draw from the equilibrium Gaussian at temperature kT.

    Every energy-carrying coordinate y is i.i.d. normal with variance kT,
    equivalently: p_i i.i.d. normal with variance mass*kT, and each
    omega_k q_hat(k)/sqrt(2N+1) pair normal with variance kT per real part.
    Deterministic given the seed.
    """
    if not kT > 0:
        raise ParameterError(f"kT must be positive, got {kT!r}")
    rng = seeded_generator(seed)
    y = np.sqrt(kT) * rng.standard_normal(shell_dimension(spectrum))
    return _state_from_actions(y, spectrum, mass)


def sample_energy_shell(
    spectrum: Spectrum, energy: float, seed: int, mass: float = 1.0
) -> PhaseState:
    """One draw from the uniform measure on the surface H = energy.

    A Gaussian vector normalized to radius sqrt(2*energy) is uniform on the
    sphere in y, and the flow is a rotation there, so this is the
    flow-invariant surface measure.  The returned state's energy equals the
    requested one to roundoff.  Deterministic given the seed.
    """
    if not energy > 0:
        raise ParameterError(f"energy must be positive, got {energy!r}")
    rng = seeded_generator(seed)
    g = rng.standard_normal(shell_dimension(spectrum))
    y = np.sqrt(2.0 * energy) * g / np.linalg.norm(g)
    return _state_from_actions(y, spectrum, mass)


def mehler_marginal_statistic(
    samples,
    coordinate: int,
    spectrum: Spectrum,
    energy: float,
    mass: float = 1.0,
) -> float:
    """Kolmogorov-Smirnov distance of one momentum marginal from its
    matched Gaussian.

    A single coordinate of a uniform point on a high-dimensional sphere is
    asymptotically Gaussian; here the momentum of particle `coordinate`
    (indexed -N..N) is compared against the normal law with mean 0 and
    variance 2*mass*energy/dimension, the exact second moment on the shell.
    Small for large N; genuinely large for tiny assemblies.
    """
    if len(samples) < 1000:
        raise ParameterError(f"need at least 1000 samples, got {len(samples)}")
    values = np.array([state.momentum(coordinate) for state in samples])
    sigma = np.sqrt(2.0 * mass * energy / shell_dimension(spectrum))
    return float(stats.kstest(values, "norm", args=(0.0, sigma)).statistic)
