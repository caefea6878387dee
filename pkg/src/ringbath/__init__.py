"""Numerical laboratory for rings of 2N+1 linearly coupled oscillators.

The coupling matrix is cyclic, so the dynamics decouples exactly in mode
coordinates; the package builds spectra, evolves states in closed form,
turns the central momentum's trajectory into exact autocorrelation curves,
samples equilibrium and constant-energy initial conditions, and measures
how those curves concentrate around the exponential decay exp(-|tau|) as
assemblies grow.
"""

from .acf import (
    AcfCurve,
    TauGrid,
    lorentzian_cosine_transform,
    ou_limit_curve,
    phase_acf_analytic,
    time_acf_closed_form,
    time_acf_numeric,
)
from .dynamics import (
    HarmonicSignal,
    ModeAmplitudes,
    PhaseState,
    energy,
    evolve,
    mode_amplitudes,
    momentum_trajectory_coefficients,
)
from .ensemble import (
    WORKERS_ENV,
    EnsembleStats,
    NormalCellReport,
    VarianceScalingResult,
    default_shell_energy,
    ensemble_acf,
    fit_loglog_slope,
    khintchine_identity_check,
    normal_cell_fraction,
    resolve_workers,
    shell_effective_temperature,
    variance_scaling,
)
from .errors import (
    ConfigurationError,
    DimensionError,
    ParameterError,
    RingbathError,
)
from .sampling import (
    ShellSpec,
    mehler_marginal_statistic,
    sample_energy_shell,
    sample_maxwell_boltzmann,
    seeded_generator,
    shell_dimension,
)
from .spectral import (
    AssemblyConfig,
    Spectrum,
    build_spectrum,
    coupling_matrix,
    mode_transform,
    propagator_entry,
)

__version__ = "0.1.0"

__all__ = [
    "AcfCurve",
    "AssemblyConfig",
    "ConfigurationError",
    "DimensionError",
    "EnsembleStats",
    "HarmonicSignal",
    "ModeAmplitudes",
    "NormalCellReport",
    "ParameterError",
    "PhaseState",
    "RingbathError",
    "ShellSpec",
    "Spectrum",
    "TauGrid",
    "VarianceScalingResult",
    "WORKERS_ENV",
    "build_spectrum",
    "coupling_matrix",
    "default_shell_energy",
    "energy",
    "ensemble_acf",
    "evolve",
    "fit_loglog_slope",
    "khintchine_identity_check",
    "lorentzian_cosine_transform",
    "mehler_marginal_statistic",
    "mode_amplitudes",
    "mode_transform",
    "momentum_trajectory_coefficients",
    "normal_cell_fraction",
    "ou_limit_curve",
    "phase_acf_analytic",
    "propagator_entry",
    "resolve_workers",
    "sample_energy_shell",
    "sample_maxwell_boltzmann",
    "seeded_generator",
    "shell_dimension",
    "shell_effective_temperature",
    "time_acf_closed_form",
    "time_acf_numeric",
    "variance_scaling",
]
