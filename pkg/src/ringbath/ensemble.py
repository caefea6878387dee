"""Monte Carlo concentration experiments over sampled initial conditions.

Each experiment draws M initial conditions, turns every one into its exact
per-trajectory autocorrelation curve, and aggregates.  Per-sample seeds are
derived as seed XOR index, so the work is embarrassingly parallel and the
result depends only on (config, seed), never on worker count or completion
order: rows are materialized per index and reduced with fixed-order numpy
reductions.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np
from joblib import Parallel, delayed

from .acf import AcfCurve, TauGrid, phase_acf_analytic, time_acf_closed_form
from .dynamics import momentum_trajectory_coefficients
from .errors import DimensionError, ParameterError
from .sampling import sample_energy_shell, sample_maxwell_boltzmann, shell_dimension
from .spectral import AssemblyConfig, Spectrum, build_spectrum

WORKERS_ENV = "RINGBATH_WORKERS"

SAMPLERS = ("shell", "maxwell")


def resolve_workers(workers: int | None) -> int:
    """Explicit argument, else the RINGBATH_WORKERS variable, else 1."""
    if workers is None:
        raw = os.environ.get(WORKERS_ENV, "").strip()
        workers = int(raw) if raw else 1
    if workers < 1:
        raise ParameterError(f"worker count must be >= 1, got {workers!r}")
    return workers


@dataclass
class EnsembleStats:
    """Per-lag mean and unbiased variance of the sampled trajectory ACFs."""

    grid: TauGrid
    mean: np.ndarray
    variance: np.ndarray
    sample_count: int
    seed: int
    assembly: dict


@dataclass
class NormalCellReport:
    """Outcome of one deviation-fraction experiment on a lag mesh.

    deviating_fraction counts samples whose unit ACF leaves the epsilon
    tube around the finite-assembly phase curve anywhere on the mesh;
    limit_deviating_fraction uses the tube around exp(-tau) instead.
    chebyshev_bound is the union-bound reference number
    mesh_count / ((2N+1) * epsilon^2): per-mesh-point variance taken at its
    nominal 1/(2N+1) scale and summed as if independent.  It is reported
    for comparison only, never asserted, and can exceed 1 (vacuous).
    """

    epsilon: float
    window: float
    mesh_step: float
    grid: TauGrid
    deviating_fraction: float
    limit_deviating_fraction: float
    chebyshev_bound: float
    deviation_counts: np.ndarray
    limit_deviation_counts: np.ndarray
    sample_count: int
    seed: int
    half_size: int


@dataclass
class VarianceScalingResult:
    """Ensemble variance of the unit ACF at one lag across assembly sizes."""

    half_sizes: tuple
    variances: np.ndarray
    slope: float
    tau: float
    sample_count: int
    seed: int


def _sample_seeds(seed: int, count: int) -> list[int]:
    return [seed ^ i for i in range(count)]


def _acf_rows(
    config: AssemblyConfig,
    spectrum: Spectrum,
    sampler: str,
    energy: float | None,
    grid: TauGrid,
    seeds,
    workers: int | None,
) -> np.ndarray:
    """Raw closed-form ACF values, one row per sample seed, in seed order."""
    if sampler not in SAMPLERS:
        raise ParameterError(f"sampler must be one of {SAMPLERS}, got {sampler!r}")
    kT = config.temperature
    mass = config.mass

    def one_row(sample_seed: int) -> np.ndarray:
        if sampler == "shell":
            state = sample_energy_shell(spectrum, energy, sample_seed, mass)
        else:
            state = sample_maxwell_boltzmann(spectrum, kT, sample_seed, mass)
        signal = momentum_trajectory_coefficients(state, spectrum, mass)
        return time_acf_closed_form(signal, grid).values

    n_jobs = resolve_workers(workers)
    if n_jobs == 1:
        rows = [one_row(s) for s in seeds]
    else:
        # threads suffice: the per-sample work is numpy-bound, and results
        # come back in dispatch order so aggregation stays schedule-free
        rows = Parallel(n_jobs=n_jobs, prefer="threads")(
            delayed(one_row)(s) for s in seeds
        )
    return np.array(rows)


def default_shell_energy(config: AssemblyConfig) -> float:
    """Equilibrium energy scale (2N+1) kT used when none is given."""
    return config.size * config.temperature


def ensemble_acf(
    config: AssemblyConfig,
    sampler: str,
    sample_count: int,
    grid: TauGrid,
    seed: int | None = None,
    energy: float | None = None,
    workers: int | None = None,
    sample_seeds=None,
) -> EnsembleStats:
    """Mean and variance of the per-trajectory ACF over M sampled states.

    seed defaults to the assembly's rng_seed; per-sample seeds are
    seed XOR index unless an explicit sample_seeds sequence is given
    (testing aid, e.g. forcing duplicate draws).  energy applies to the
    shell sampler and defaults to (2N+1) kT.
    """
    if sample_count < 2:
        raise ParameterError(f"need at least 2 samples for a variance, got {sample_count}")
    seed = config.rng_seed if seed is None else seed
    spectrum = build_spectrum(config)
    if sampler == "shell" and energy is None:
        energy = default_shell_energy(config)
    if sample_seeds is None:
        sample_seeds = _sample_seeds(seed, sample_count)
    elif len(sample_seeds) != sample_count:
        raise ParameterError("sample_seeds length must equal sample_count")
    rows = _acf_rows(config, spectrum, sampler, energy, grid, sample_seeds, workers)
    return EnsembleStats(
        grid=grid,
        mean=rows.mean(axis=0),
        variance=rows.var(axis=0, ddof=1),
        sample_count=sample_count,
        seed=seed,
        assembly={
            "half_size": config.half_size,
            "frequency_law": "tangent" if isinstance(config.frequency_law, str) else "explicit",
            "temperature": config.temperature,
            "mass": config.mass,
            "energy": energy,
            "sampler": sampler,
        },
    )


def shell_effective_temperature(config: AssemblyConfig, energy: float | None = None) -> float:
    """Temperature whose equilibrium moments match a uniform shell exactly.

    On the surface H = E the coordinates carrying energy have second moment
    2E/dimension each, so the expected trajectory ACF equals the analytic
    phase curve evaluated at kT_eff = 2E/dimension.  At the default energy
    E = (2N+1) kT this is kT * (4N+2)/(4N+1), distinguishable from kT only
    at tiny sizes.
    """
    spectrum = build_spectrum(config)
    if energy is None:
        energy = default_shell_energy(config)
    return 2.0 * energy / shell_dimension(spectrum)


def khintchine_identity_check(stats: EnsembleStats, analytic: AcfCurve) -> np.ndarray:
    """Studentized gap between the ensemble mean and the analytic curve.

    Returns (mean(tau) - R(tau)) / (stddev(tau)/sqrt(M)) per lag; the
    expectation identity between time and phase autocorrelations holds iff
    these look standard normal.  Exact agreement gives zeros even where the
    sample variance vanishes.
    """
    if stats.grid.count != analytic.grid.count or stats.grid.step != analytic.grid.step:
        raise DimensionError("ensemble and analytic curves live on different grids")
    gap = stats.mean - analytic.values
    stderr = np.sqrt(stats.variance / stats.sample_count)
    with np.errstate(divide="ignore", invalid="ignore"):
        z = gap / stderr
    z[gap == 0] = 0.0
    return z


def fit_loglog_slope(sizes, variances) -> float:
    """Least-squares slope of log(variance) against log(size)."""
    sizes = np.asarray(sizes, dtype=float)
    variances = np.asarray(variances, dtype=float)
    if len(sizes) < 2 or np.any(sizes <= 0) or np.any(variances <= 0):
        raise ParameterError("need >= 2 positive (size, variance) pairs to fit a slope")
    return float(np.polyfit(np.log(sizes), np.log(variances), 1)[0])


def variance_scaling(
    configs,
    tau: float,
    sample_count: int,
    seed: int | None = None,
    sampler: str = "shell",
    workers: int | None = None,
) -> VarianceScalingResult:
    """Ensemble variance of the unit ACF at lag tau across assembly sizes.

    Uses paired per-sample seeds across the size family so size comparisons
    share their Monte Carlo noise.  The fitted log-log slope quantifies the
    1/n-type decay of the variance.
    """
    configs = list(configs)
    if len(configs) < 3:
        raise ParameterError(f"need at least 3 assembly sizes, got {len(configs)}")
    if any(c.half_size < 100 for c in configs):
        raise ParameterError("variance scaling is meaningful for half_size >= 100 only")
    if not tau > 0:
        raise ParameterError(f"tau must be positive, got {tau!r}")
    if sample_count < 2:
        raise ParameterError(f"need at least 2 samples, got {sample_count}")
    seed = configs[0].rng_seed if seed is None else seed
    grid = TauGrid(step=tau, count=2)
    seeds = _sample_seeds(seed, sample_count)
    variances = []
    for config in configs:
        spectrum = build_spectrum(config)
        energy = default_shell_energy(config) if sampler == "shell" else None
        rows = _acf_rows(config, spectrum, sampler, energy, grid, seeds, workers)
        unit = rows[:, 1] / rows[:, 0]
        variances.append(unit.var(ddof=1))
    variances = np.array(variances)
    sizes = [c.size for c in configs]
    return VarianceScalingResult(
        half_sizes=tuple(c.half_size for c in configs),
        variances=variances,
        slope=fit_loglog_slope(sizes, variances),
        tau=tau,
        sample_count=sample_count,
        seed=seed,
    )


def normal_cell_fraction(
    config: AssemblyConfig,
    epsilon: float,
    window: float,
    mesh_step: float,
    sample_count: int,
    seed: int | None = None,
    sampler: str = "shell",
    energy: float | None = None,
    workers: int | None = None,
) -> NormalCellReport:
    """Fraction of sampled states whose unit ACF strays from the target.

    Covers [0, window] with a uniform mesh, flags a sample as deviating if
    its unit closed-form ACF differs from the unit analytic phase curve by
    more than epsilon anywhere on the mesh, and reports the analogous
    fraction against the limit curve exp(-tau).  The supremum is taken over
    the mesh only; mesh_step <= epsilon/2 keeps the between-points wiggle
    subordinate to the tube width.
    """
    if not epsilon > 0:
        raise ParameterError(f"epsilon must be positive, got {epsilon!r}")
    if not window > 0:
        raise ParameterError(f"window must be positive, got {window!r}")
    if not 0 < mesh_step <= epsilon / 2:
        raise ParameterError(
            f"mesh_step must lie in (0, epsilon/2 = {epsilon / 2:g}], got {mesh_step!r}"
        )
    if sample_count < 1:
        raise ParameterError(f"need at least 1 sample, got {sample_count}")
    seed = config.rng_seed if seed is None else seed
    spectrum = build_spectrum(config)
    if sampler == "shell" and energy is None:
        energy = default_shell_energy(config)
    grid = TauGrid.spanning(window, mesh_step)
    target = phase_acf_analytic(spectrum, config.temperature, grid, config.mass)
    target_unit = target.unit_at_zero().values
    limit_unit = np.exp(-grid.values)

    seeds = _sample_seeds(seed, sample_count)
    rows = _acf_rows(config, spectrum, sampler, energy, grid, seeds, workers)
    unit_rows = rows / rows[:, :1]
    off_target = np.abs(unit_rows - target_unit) > epsilon
    off_limit = np.abs(unit_rows - limit_unit) > epsilon
    return NormalCellReport(
        epsilon=epsilon,
        window=window,
        mesh_step=mesh_step,
        grid=grid,
        deviating_fraction=float(off_target.any(axis=1).mean()),
        limit_deviating_fraction=float(off_limit.any(axis=1).mean()),
        chebyshev_bound=grid.count / (spectrum.size * epsilon**2),
        deviation_counts=off_target.sum(axis=0),
        limit_deviation_counts=off_limit.sum(axis=0),
        sample_count=sample_count,
        seed=seed,
        half_size=config.half_size,
    )
