"""Autocorrelation curves: exact per-trajectory, analytic, numeric, and limit.

Four kinds of curve share one value type here.  The closed form turns a
trajectory's trigonometric coefficients into its time autocorrelation
exactly; the numeric estimator integrates the same definition over a finite
horizon (used to validate the closed form, never needed in production);
the analytic phase curve is the ensemble expectation under equilibrium
second moments; and the limit curve is the exponential the finite
assemblies approach as N grows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import DimensionError, ParameterError
from .dynamics import HarmonicSignal
from .spectral import Spectrum

KINDS = ("time-closed-form", "time-numeric", "phase-analytic", "limit")
NORMALIZATIONS = ("raw", "unit")


@dataclass(frozen=True)
class TauGrid:
    """Uniform lag grid starting at tau = 0: values are step * (0..count-1)."""

    step: float
    count: int

    def __post_init__(self) -> None:
        if not self.step > 0:
            raise ParameterError(f"grid step must be positive, got {self.step!r}")
        if not isinstance(self.count, (int, np.integer)) or self.count < 1:
            raise ParameterError(f"grid count must be an integer >= 1, got {self.count!r}")
        object.__setattr__(self, "count", int(self.count))

    @classmethod
    def spanning(cls, tau_max: float, step: float) -> "TauGrid":
        """Smallest grid of the given step covering [0, tau_max]."""
        if not tau_max > 0:
            raise ParameterError(f"tau_max must be positive, got {tau_max!r}")
        count = int(math.ceil(tau_max / step - 1e-9)) + 1
        return cls(step=step, count=count)

    @property
    def values(self) -> np.ndarray:
        return self.step * np.arange(self.count)

    @property
    def max(self) -> float:
        return self.step * (self.count - 1)


@dataclass
class AcfCurve:
    """Values of an autocorrelation curve on a TauGrid.

    kind tags where the curve came from; normalization is "raw" (natural
    physical scale) or "unit" (divided by the value at tau = 0).
    """

    grid: TauGrid
    values: np.ndarray
    kind: str
    normalization: str = "raw"

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ParameterError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.normalization not in NORMALIZATIONS:
            raise ParameterError(
                f"normalization must be one of {NORMALIZATIONS}, got {self.normalization!r}"
            )
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1 or len(vals) != self.grid.count:
            raise DimensionError(
                f"values length {vals.shape} does not match grid count {self.grid.count}"
            )
        self.values = vals

    def unit_at_zero(self) -> "AcfCurve":
        """Copy rescaled so value(0) = 1; requires a positive value at 0."""
        if self.normalization == "unit":
            return self
        v0 = float(self.values[0])
        if not v0 > 0:
            raise ParameterError(f"cannot normalize: value at tau=0 is {v0!r}")
        return AcfCurve(self.grid, self.values / v0, self.kind, "unit")


def _closed_form_weights(signal: HarmonicSignal) -> np.ndarray:
    if np.any(signal.omega < 0):
        raise ParameterError("closed form requires nonnegative frequencies")
    if len(np.unique(signal.omega)) != len(signal.omega):
        raise ParameterError(
            "closed form requires strictly distinct frequencies; merge duplicates first"
        )
    zero = signal.omega == 0
    if np.any(signal.b[zero] != 0):
        raise ParameterError("a sine coefficient at omega = 0 is meaningless; set it to 0")
    # oscillating terms average to half their squared amplitude, but a
    # constant term keeps its full square: lim (1/T) int c^2 = c^2
    weights = 0.5 * (signal.a**2 + signal.b**2)
    weights[zero] = signal.a[zero] ** 2
    return weights


def time_acf_closed_form(signal: HarmonicSignal, grid: TauGrid) -> AcfCurve:
    """Exact time autocorrelation of a trigonometric sum.

    phi(tau) = lim_{T->inf} (1/T) int_0^T f(t) f(t+tau) dt reduces, for
    strictly distinct frequencies, to
    phi(tau) = a_0^2 + sum_{omega>0} (a^2 + b^2)/2 * cos(omega tau).
    """
    weights = _closed_form_weights(signal)
    values = np.cos(np.outer(grid.values, signal.omega)) @ weights
    return AcfCurve(grid, values, "time-closed-form")


def time_acf_numeric(
    signal: HarmonicSignal, grid: TauGrid, horizon: float, step: float
) -> AcfCurve:
    """Finite-horizon estimate (1/T) int_0^T f(t) f(t+tau) dt by trapezoid.

    The sampling step is snapped to an integer divisor of the lag step so
    every lag lands exactly on the sample lattice; the signal is evaluated
    once and lags become shifted dot products.  The omitted tail makes the
    deviation from the closed form an oscillatory boundary term with an
    O(1/T) envelope.
    """
    if not horizon > 0 or horizon < 100 * grid.max:
        raise ParameterError(
            f"horizon must be positive and at least 100x the largest lag "
            f"({100 * grid.max:g}), got {horizon!r}"
        )
    omega_max = float(signal.omega.max()) if len(signal) else 0.0
    bound = grid.step / 2 if omega_max == 0 else min(np.pi / (4 * omega_max), grid.step / 2)
    if not 0 < step <= bound:
        raise ParameterError(
            f"step must lie in (0, {bound:g}] to resolve the fastest mode and the lag grid, "
            f"got {step!r}"
        )
    per_lag = max(1, int(math.ceil(grid.step / step - 1e-9)))
    dt = grid.step / per_lag
    n_steps = int(math.floor(horizon / dt))
    max_shift = (grid.count - 1) * per_lag
    t = dt * np.arange(n_steps + max_shift + 1)
    f = signal.evaluate(t)
    base = f[: n_steps + 1].copy()
    base[0] *= 0.5
    base[-1] *= 0.5
    values = np.empty(grid.count)
    for j in range(grid.count):
        shift = j * per_lag
        values[j] = float(base @ f[shift : shift + n_steps + 1]) / n_steps
    return AcfCurve(grid, values, "time-numeric")


def phase_acf_analytic(
    spectrum: Spectrum, kT: float, grid: TauGrid, mass: float = 1.0
) -> AcfCurve:
    """Exact ensemble autocorrelation of p_0 under equilibrium moments.

    With E[p p^T] = mass*kT*I and E[p q^T] = 0 the sine terms vanish and
    R(tau) = mass*kT * (cos(sqrt(A/mass) tau))_{00}
           = (mass*kT/(2N+1)) sum_k cos(nu_k tau).
    """
    if not kT > 0:
        raise ParameterError(f"kT must be positive, got {kT!r}")
    nu = spectrum.frequencies / np.sqrt(mass)
    distinct, counts = np.unique(nu, return_counts=True)
    scale = mass * kT / spectrum.size
    values = np.cos(np.outer(grid.values, distinct)) @ (scale * counts)
    return AcfCurve(grid, values, "phase-analytic")


def ou_limit_curve(grid: TauGrid) -> AcfCurve:
    """Limit curve pi * exp(-|tau|) the unit phase curves approach as N grows.

    The raw scale carries the constant pi of the Lorentzian cosine
    transform; unit_at_zero() gives exp(-|tau|) for cross-comparisons.
    """
    values = np.pi * np.exp(-grid.values)
    return AcfCurve(grid, values, "limit")


def lorentzian_cosine_transform(tau: float) -> float:
    """Adaptive quadrature of integral cos(tau*u)/(1+u^2) du over the line.

    Reference evaluation used by the tests to confirm the closed form
    pi * exp(-|tau|) independently; not needed in production paths.
    """
    tau = abs(float(tau))
    if tau == 0:
        value, _ = integrate.quad(lambda u: 1.0 / (1.0 + u * u), 0, np.inf)
    else:
        value, _ = integrate.quad(
            lambda u: 1.0 / (1.0 + u * u), 0, np.inf, weight="cos", wvar=tau
        )
    return 2.0 * value
