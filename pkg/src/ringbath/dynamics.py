"""Exact flow of an assembly and the distinguished momentum trajectory.

In mode coordinates every mode is an independent oscillator, so the flow
has a closed form and no time stepping is ever needed.  The trajectory of
the central momentum p_0(t) is carried around as a finite trigonometric
sum (a_j, b_j, omega_j), which is exact and makes autocorrelation
evaluation O(n) per lag.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .spectral import Spectrum, mode_transform

# Rows of t-points processed per matmul block when evaluating a signal on
# a long time grid; bounds transient memory at a few tens of MB.
_EVAL_BLOCK = 4096


def _check_lengths(n_state: int, spectrum: Spectrum) -> None:
    if n_state != spectrum.size:
        raise DimensionError(
            f"state has {n_state} particles but spectrum describes {spectrum.size}"
        )


@dataclass
class PhaseState:
    """One point (p, q) of phase space, particles indexed -N..N."""

    p: np.ndarray
    q: np.ndarray

    def __post_init__(self) -> None:
        p = np.asarray(self.p, dtype=float)
        q = np.asarray(self.q, dtype=float)
        if p.ndim != 1 or p.shape != q.shape:
            raise DimensionError(f"p and q must be 1-d and equal length, got {p.shape} and {q.shape}")
        if len(p) % 2 == 0 or len(p) < 3:
            raise DimensionError(f"state length must be odd and >= 3, got {len(p)}")
        self.p = p
        self.q = q

    @property
    def half_size(self) -> int:
        return (len(self.p) - 1) // 2

    def momentum(self, i: int) -> float:
        """Momentum of particle i, i in -N..N."""
        return float(self.p[i + self.half_size])


@dataclass
class ModeAmplitudes:
    """Forward-transformed state: p_hat(k), q_hat(k) for k = -N..N.

    Real states give Hermitian amplitudes, p_hat(-k) = conj(p_hat(k)), and
    the energy identity 2H = (1/(2N+1)) (sum |p_hat|^2 + sum omega^2 |q_hat|^2)
    (unit mass) carries the transform's (2N+1) Parseval factor.
    """

    p_hat: np.ndarray
    q_hat: np.ndarray

    def __post_init__(self) -> None:
        ph = np.asarray(self.p_hat, dtype=complex)
        qh = np.asarray(self.q_hat, dtype=complex)
        if ph.ndim != 1 or ph.shape != qh.shape:
            raise DimensionError("p_hat and q_hat must be 1-d and equal length")
        self.p_hat = ph
        self.q_hat = qh


def mode_amplitudes(state: PhaseState) -> ModeAmplitudes:
    return ModeAmplitudes(
        p_hat=mode_transform(state.p, "forward"),
        q_hat=mode_transform(state.q, "forward"),
    )


@dataclass
class HarmonicSignal:
    """A finite trigonometric sum f(t) = sum_j a_j cos(omega_j t) + b_j sin(omega_j t).

    Frequencies are nonnegative and, when produced by
    momentum_trajectory_coefficients, strictly distinct and sorted.
    """

    omega: np.ndarray
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self) -> None:
        om = np.asarray(self.omega, dtype=float)
        a = np.asarray(self.a, dtype=float)
        b = np.asarray(self.b, dtype=float)
        if not (om.shape == a.shape == b.shape) or om.ndim != 1:
            raise DimensionError("omega, a, b must be 1-d arrays of equal length")
        self.omega = om
        self.a = a
        self.b = b

    def __len__(self) -> int:
        return len(self.omega)

    def evaluate(self, t) -> np.ndarray:
        """f(t) for scalar or array t, blocked to keep memory bounded."""
        ts = np.atleast_1d(np.asarray(t, dtype=float))
        out = np.empty(len(ts))
        for lo in range(0, len(ts), _EVAL_BLOCK):
            block = ts[lo:lo + _EVAL_BLOCK]
            phases = np.outer(block, self.omega)
            out[lo:lo + _EVAL_BLOCK] = np.cos(phases) @ self.a + np.sin(phases) @ self.b
        return out if np.ndim(t) else float(out[0])


def energy(state: PhaseState, spectrum: Spectrum, mass: float = 1.0) -> float:
    """Total energy, computed in mode space without materializing A.

    H = sum p_i^2 / (2 mass) + (1/(2(2N+1))) sum_k omega_k^2 |q_hat(k)|^2.
    """
    _check_lengths(len(state.p), spectrum)
    q_hat = mode_transform(state.q, "forward")
    kinetic = float(state.p @ state.p) / (2.0 * mass)
    potential = float(spectrum.frequencies**2 @ np.abs(q_hat) ** 2) / (2.0 * spectrum.size)
    return kinetic + potential


def evolve(state: PhaseState, spectrum: Spectrum, t: float, mass: float = 1.0) -> PhaseState:
    """Exact state at time t.

    Each mode oscillates at nu_k = omega_k / sqrt(mass):
      p_hat(t) = p_hat cos(nu t) - sqrt(mass) omega q_hat sin(nu t)
      q_hat(t) = q_hat cos(nu t) + (t/mass) p_hat sinc(nu t)
    The sinc form covers the zero mode, whose q_hat drifts linearly while
    p_hat stays constant; that drift never enters p_0 because the q_hat(0)
    coefficient there is omega_0 itself.
    """
    _check_lengths(len(state.p), spectrum)
    w = spectrum.frequencies
    nu = w / np.sqrt(mass)
    p_hat = mode_transform(state.p, "forward")
    q_hat = mode_transform(state.q, "forward")
    c = np.cos(nu * t)
    s = np.sin(nu * t)
    p_new = p_hat * c - np.sqrt(mass) * w * q_hat * s
    q_new = q_hat * c + (t / mass) * p_hat * np.sinc(nu * t / np.pi)
    return PhaseState(
        p=mode_transform(p_new, "inverse").real,
        q=mode_transform(q_new, "inverse").real,
    )


def momentum_trajectory_coefficients(
    state: PhaseState, spectrum: Spectrum, mass: float = 1.0
) -> HarmonicSignal:
    """Exact trigonometric representation of t -> p_0(t).

    p_0(t) = (1/(2N+1)) sum_k [p_hat(k) cos(nu_k t) - sqrt(mass) omega_k q_hat(k) sin(nu_k t)].
    The +-k mode pairs share a frequency (and a cutoff cap can introduce
    further ties), while the autocorrelation identity downstream requires
    strictly distinct frequencies, so coefficients of equal nu are summed;
    the imaginary parts cancel pairwise in that merge and only the real
    parts are accumulated.  Emitted frequencies are the oscillation rates
    nu_k = omega_k / sqrt(mass), sorted ascending and strictly distinct.
    """
    _check_lengths(len(state.p), spectrum)
    m = spectrum.size
    w = spectrum.frequencies
    nu = w / np.sqrt(mass)
    p_hat = mode_transform(state.p, "forward")
    q_hat = mode_transform(state.q, "forward")
    distinct, idx = np.unique(nu, return_inverse=True)
    a = np.zeros(len(distinct))
    b = np.zeros(len(distinct))
    np.add.at(a, idx, p_hat.real / m)
    np.add.at(b, idx, -np.sqrt(mass) * w * q_hat.real / m)
    return HarmonicSignal(omega=distinct, a=a, b=b)
