"""Command line front end.

Eight subcommands cover the library's experiments; every run resolves its
configuration from built-in defaults, an optional JSON config file, and
flags (flags win), echoes the resolved configuration to stderr, and writes
plot-ready CSV or JSON atomically.  Identical configuration and seed give
byte-identical output at any worker count; the only varying content is the
timestamp, isolated on its own header line (CSV) or top-level key (JSON).

Exit codes: 0 success, 2 configuration or precondition error, 3 numeric
contract failure (an oracle check out of tolerance).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import dataclass
from datetime import datetime, timezone

import numpy as np

from .acf import (
    TauGrid,
    ou_limit_curve,
    phase_acf_analytic,
    time_acf_closed_form,
    time_acf_numeric,
)
from .dynamics import PhaseState, energy, evolve, momentum_trajectory_coefficients
from .ensemble import (
    ensemble_acf,
    khintchine_identity_check,
    normal_cell_fraction,
    shell_effective_temperature,
    variance_scaling,
)
from .errors import ConfigurationError, DimensionError, ParameterError, RingbathError
from .sampling import sample_energy_shell, sample_maxwell_boltzmann, seeded_generator
from .spectral import (
    AssemblyConfig,
    build_spectrum,
    coupling_matrix,
    mode_transform,
    propagator_entry,
)

# Tolerances the oracle-check experiment holds the fast paths to, keyed by
# check name.  Each check compares a production path against an independent
# dense or brute-force evaluation.
ORACLE_THRESHOLDS = {
    "propagator-cos": 1e-10,
    "propagator-omega-sin": 1e-10,
    "mode-roundtrip": 1e-12,
    "parseval": 1e-12,
    "energy": 1e-10,
    "trajectory-coefficients": 1e-10,
}

_BASE_KEYS = (
    "half_size",
    "mass",
    "temperature",
    "frequency_law",
    "cutoff_cap",
    "rng_seed",
    "workers",
    "out",
    "format",
)

_GRID_KEYS = ("tau_max", "tau_step")

# Config keys each experiment accepts (file keys and flag destinations).
EXPERIMENT_KEYS = {
    "spectrum": _BASE_KEYS,
    "acf-phase": _BASE_KEYS + _GRID_KEYS,
    "limit": _BASE_KEYS + _GRID_KEYS,
    "acf-time": _BASE_KEYS + _GRID_KEYS + ("sampler", "energy", "horizon", "time_step"),
    "ensemble": _BASE_KEYS + _GRID_KEYS + ("sampler", "energy", "sample_count"),
    "normal-cell": _BASE_KEYS
    + ("sampler", "energy", "sample_count", "epsilon", "window", "mesh_step"),
    "variance-scaling": _BASE_KEYS + ("sampler", "sample_count", "half_sizes", "tau"),
    "oracle-check": _BASE_KEYS,
}

DEFAULTS = {
    "half_size": 1000,
    "mass": 1.0,
    "temperature": 1.0,
    "frequency_law": "tangent",
    "cutoff_cap": None,
    "rng_seed": 101,
    "workers": None,
    "out": None,
    "format": "csv",
    "tau_max": 5.0,
    "tau_step": 0.1,
    "sampler": "shell",
    "energy": None,
    "horizon": None,
    "time_step": None,
    "sample_count": 100,
    "epsilon": 0.05,
    "window": 5.0,
    "mesh_step": 0.025,
    "half_sizes": [250, 500, 1000, 2000],
    "tau": 1.0,
}

# Per-experiment default overrides.
_DEFAULT_OVERRIDES = {
    "oracle-check": {"half_size": 8},
}

_INT_KEYS = ("half_size", "rng_seed", "sample_count", "workers")
_FLOAT_KEYS = (
    "mass",
    "temperature",
    "cutoff_cap",
    "tau_max",
    "tau_step",
    "energy",
    "horizon",
    "time_step",
    "epsilon",
    "window",
    "mesh_step",
    "tau",
)


@dataclass
class RunConfig:
    """A fully resolved run: the experiment name plus every parameter."""

    experiment: str
    values: dict


def _coerce(key: str, value):
    if value is None:
        return None
    try:
        if key in _INT_KEYS:
            if isinstance(value, float) and not value.is_integer():
                raise ValueError(value)
            return int(value)
        if key in _FLOAT_KEYS:
            return float(value)
        if key == "half_sizes":
            if isinstance(value, str):
                value = [part for part in value.split(",") if part.strip()]
            return [int(n) for n in value]
        if key == "frequency_law":
            if isinstance(value, str):
                return value
            return [float(w) for w in value]
        if key in ("format", "sampler", "out"):
            if not isinstance(value, str):
                raise ValueError(value)
            return value
    except (TypeError, ValueError):
        raise ConfigurationError(f"config key {key!r} has invalid value {value!r}")
    raise ConfigurationError(f"unhandled config key {key!r}")


def _load_config_file(path: str, experiment: str) -> dict:
    allowed = set(EXPERIMENT_KEYS[experiment])
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except FileNotFoundError:
        raise ConfigurationError(f"config file not found: {path}")
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"config file {path} is not valid JSON: {exc}")
    if not isinstance(raw, dict):
        raise ConfigurationError(f"config file {path} must hold a JSON object")
    for key in raw:
        if key not in allowed:
            raise ConfigurationError(
                f"unknown config key {key!r} for experiment {experiment!r}; "
                f"allowed keys: {', '.join(sorted(allowed))}"
            )
    return raw


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON config file; flags override it")
    common.add_argument("--N", dest="half_size", type=int, help="assembly half size N (default 1000; 8 for oracle-check)")
    common.add_argument("--kT", dest="temperature", type=float, help="temperature (default 1.0)")
    common.add_argument("--mass", type=float, help="particle mass (default 1.0)")
    common.add_argument("--cutoff", dest="cutoff_cap", type=float, help="frequency cap (default none)")
    common.add_argument("--seed", dest="rng_seed", type=int, help="base RNG seed (default 101)")
    common.add_argument("--workers", type=int, help="parallel workers (default $RINGBATH_WORKERS or 1)")
    common.add_argument("--out", metavar="PATH", help="output file (default stdout)")
    common.add_argument("--format", choices=("csv", "json"), help="output format (default csv)")

    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument("--tau-max", dest="tau_max", type=float, help="largest lag (default 5.0)")
    grid.add_argument("--tau-step", dest="tau_step", type=float, help="lag step (default 0.1)")

    sampled = argparse.ArgumentParser(add_help=False)
    sampled.add_argument("--sampler", choices=("shell", "maxwell"), help="initial-condition sampler (default shell)")
    sampled.add_argument("--energy", type=float, help="shell energy (default (2N+1)*kT)")

    parser = argparse.ArgumentParser(
        prog="ringbath",
        description="Coupled-oscillator ring laboratory: spectra, exact dynamics, "
        "autocorrelation curves, and concentration experiments.",
        epilog="Exit codes: 0 ok, 2 configuration error, 3 numeric contract failure.",
    )
    sub = parser.add_subparsers(dest="experiment", required=True, metavar="EXPERIMENT")

    sub.add_parser("spectrum", parents=[common], help="mode frequencies; columns: k, omega")
    sub.add_parser(
        "acf-phase", parents=[common, grid],
        help="analytic phase autocorrelation; columns: tau, raw, unit",
    )
    sub.add_parser(
        "limit", parents=[common, grid],
        help="limit curve pi*exp(-tau); columns: tau, raw, unit",
    )
    p = sub.add_parser(
        "acf-time", parents=[common, grid, sampled],
        help="one sampled trajectory's exact time ACF; columns: tau, raw, unit[, numeric_raw]",
    )
    p.add_argument("--horizon", type=float, help="if set, add a finite-horizon numeric estimate column")
    p.add_argument("--dt", dest="time_step", type=float, help="numeric integration step (default: the precondition bound)")
    p = sub.add_parser(
        "ensemble", parents=[common, grid, sampled],
        help="ensemble mean/variance and studentized gap to the analytic curve; "
        "columns: tau, mean, variance, analytic, z",
    )
    p.add_argument("--samples", dest="sample_count", type=int, help="ensemble size (default 100)")
    p = sub.add_parser(
        "normal-cell", parents=[common, sampled],
        help="deviation fractions on a lag mesh; columns: tau, deviation_count, limit_deviation_count",
    )
    p.add_argument("--samples", dest="sample_count", type=int, help="ensemble size (default 100)")
    p.add_argument("--epsilon", type=float, help="tube half-width (default 0.05)")
    p.add_argument("--window", type=float, help="lag window [0, K] (default 5.0)")
    p.add_argument("--mesh-step", dest="mesh_step", type=float, help="mesh width, <= epsilon/2 (default 0.025)")
    p = sub.add_parser(
        "variance-scaling", parents=[common],
        help="unit-ACF variance across sizes; columns: half_size, size, variance",
    )
    p.add_argument("--samples", dest="sample_count", type=int, help="ensemble size per N (default 100)")
    p.add_argument("--sizes", dest="half_sizes", help="comma-separated half sizes (default 250,500,1000,2000)")
    p.add_argument("--tau", type=float, help="lag at which the variance is measured (default 1.0)")
    p.add_argument("--sampler", choices=("shell", "maxwell"), help="initial-condition sampler (default shell)")
    sub.add_parser(
        "oracle-check", parents=[common],
        help="fast paths vs dense/brute-force oracles; columns: check, value, threshold, status",
    )
    return parser


def parse_config(argv=None) -> RunConfig:
    """Resolve defaults, config file, and flags into one validated RunConfig.

    Precedence: defaults < config file < flags.  Unknown config-file keys
    are hard errors.  The resolved configuration is echoed to stderr as a
    single JSON line for provenance.
    """
    args = _build_parser().parse_args(argv)
    experiment = args.experiment
    allowed = EXPERIMENT_KEYS[experiment]

    values = {key: DEFAULTS[key] for key in allowed}
    values.update(_DEFAULT_OVERRIDES.get(experiment, {}))
    if args.config:
        for key, raw in _load_config_file(args.config, experiment).items():
            values[key] = _coerce(key, raw)
    for key in allowed:
        flag_value = getattr(args, key, None)
        if flag_value is not None:
            values[key] = _coerce(key, flag_value)

    # fail on bad assembly parameters before any compute starts
    _assembly_from(values)
    if values["format"] not in ("csv", "json"):
        raise ConfigurationError(f"format must be csv or json, got {values['format']!r}")
    config = RunConfig(experiment=experiment, values=values)
    print("config: " + json.dumps({"experiment": experiment, **values}, sort_keys=True), file=sys.stderr)
    return config


def _assembly_from(values: dict) -> AssemblyConfig:
    return AssemblyConfig(
        half_size=values["half_size"],
        mass=values["mass"],
        temperature=values["temperature"],
        frequency_law=values["frequency_law"],
        cutoff_cap=values["cutoff_cap"],
        rng_seed=values["rng_seed"],
    )


def _grid_from(values: dict) -> TauGrid:
    return TauGrid.spanning(values["tau_max"], values["tau_step"])


def _run_spectrum(values: dict):
    spectrum = build_spectrum(_assembly_from(values))
    rows = [(int(k), float(w)) for k, w in zip(spectrum.k_values, spectrum.frequencies)]
    return ["k", "omega"], rows, None, True


def _run_acf_phase(values: dict):
    config = _assembly_from(values)
    curve = phase_acf_analytic(build_spectrum(config), config.temperature, _grid_from(values), config.mass)
    unit = curve.unit_at_zero()
    rows = [
        (float(t), float(r), float(u))
        for t, r, u in zip(curve.grid.values, curve.values, unit.values)
    ]
    return ["tau", "raw", "unit"], rows, None, True


def _run_limit(values: dict):
    curve = ou_limit_curve(_grid_from(values))
    unit = curve.unit_at_zero()
    rows = [
        (float(t), float(r), float(u))
        for t, r, u in zip(curve.grid.values, curve.values, unit.values)
    ]
    return ["tau", "raw", "unit"], rows, None, True


def _sample_state(values: dict, config: AssemblyConfig, spectrum):
    if values["sampler"] == "shell":
        energy_level = values["energy"]
        if energy_level is None:
            energy_level = spectrum.size * config.temperature
        return sample_energy_shell(spectrum, energy_level, config.rng_seed, config.mass)
    return sample_maxwell_boltzmann(spectrum, config.temperature, config.rng_seed, config.mass)


def _run_acf_time(values: dict):
    config = _assembly_from(values)
    spectrum = build_spectrum(config)
    grid = _grid_from(values)
    state = _sample_state(values, config, spectrum)
    signal = momentum_trajectory_coefficients(state, spectrum, config.mass)
    curve = time_acf_closed_form(signal, grid)
    unit = curve.unit_at_zero()
    columns = ["tau", "raw", "unit"]
    series = [grid.values, curve.values, unit.values]
    if values["horizon"] is not None:
        omega_max = float(signal.omega.max())
        bound = grid.step / 2 if omega_max == 0 else min(np.pi / (4 * omega_max), grid.step / 2)
        step = values["time_step"] if values["time_step"] is not None else bound
        numeric = time_acf_numeric(signal, grid, float(values["horizon"]), step)
        columns.append("numeric_raw")
        series.append(numeric.values)
    rows = [tuple(float(col[i]) for col in series) for i in range(grid.count)]
    return columns, rows, None, True


def _run_ensemble(values: dict):
    config = _assembly_from(values)
    grid = _grid_from(values)
    stats = ensemble_acf(
        config,
        values["sampler"],
        values["sample_count"],
        grid,
        energy=values["energy"],
        workers=values["workers"],
    )
    if values["sampler"] == "shell":
        kt_eff = shell_effective_temperature(config, stats.assembly["energy"])
    else:
        kt_eff = config.temperature
    analytic = phase_acf_analytic(build_spectrum(config), kt_eff, grid, config.mass)
    z = khintchine_identity_check(stats, analytic)
    rows = [
        (float(t), float(m), float(v), float(a), float(zz))
        for t, m, v, a, zz in zip(grid.values, stats.mean, stats.variance, analytic.values, z)
    ]
    report = {
        "max_abs_z": float(np.max(np.abs(z))),
        "effective_temperature": float(kt_eff),
        "energy": stats.assembly["energy"],
        "sample_count": stats.sample_count,
    }
    return ["tau", "mean", "variance", "analytic", "z"], rows, report, True


def _run_normal_cell(values: dict):
    config = _assembly_from(values)
    report = normal_cell_fraction(
        config,
        values["epsilon"],
        values["window"],
        values["mesh_step"],
        values["sample_count"],
        sampler=values["sampler"],
        energy=values["energy"],
        workers=values["workers"],
    )
    rows = [
        (float(t), int(c), int(cl))
        for t, c, cl in zip(
            report.grid.values, report.deviation_counts, report.limit_deviation_counts
        )
    ]
    summary = {
        "deviating_fraction": report.deviating_fraction,
        "limit_deviating_fraction": report.limit_deviating_fraction,
        "chebyshev_bound": report.chebyshev_bound,
        "epsilon": report.epsilon,
        "window": report.window,
        "mesh_step": report.mesh_step,
        "sample_count": report.sample_count,
    }
    return ["tau", "deviation_count", "limit_deviation_count"], rows, summary, True


def _run_variance_scaling(values: dict):
    base = _assembly_from(values)
    configs = [
        AssemblyConfig(
            half_size=n,
            mass=base.mass,
            temperature=base.temperature,
            frequency_law=base.frequency_law,
            cutoff_cap=base.cutoff_cap,
            rng_seed=base.rng_seed,
        )
        for n in values["half_sizes"]
    ]
    result = variance_scaling(
        configs,
        values["tau"],
        values["sample_count"],
        sampler=values["sampler"],
        workers=values["workers"],
    )
    rows = [
        (int(n), int(2 * n + 1), float(v))
        for n, v in zip(result.half_sizes, result.variances)
    ]
    report = {
        "slope": result.slope,
        "tau": result.tau,
        "sample_count": result.sample_count,
    }
    return ["half_size", "size", "variance"], rows, report, True


def _run_oracle_check(values: dict):
    config = _assembly_from(values)
    spectrum = build_spectrum(config)
    n, m = spectrum.half_size, spectrum.size
    dense = coupling_matrix(spectrum)
    eigenvalues, eigenvectors = np.linalg.eigh(dense)
    roots = np.sqrt(np.clip(eigenvalues, 0.0, None))
    rng = seeded_generator(config.rng_seed)

    def dense_propagator(kind: str, t: float) -> np.ndarray:
        f = np.cos(roots * t) if kind == "cos" else roots * np.sin(roots * t)
        return (eigenvectors * f) @ eigenvectors.T

    def spectral_propagator(kind: str, t: float) -> np.ndarray:
        ks = range(-n, n + 1)
        return np.array([[propagator_entry(spectrum, kind, a, b, t) for b in ks] for a in ks])

    errors = {}
    errors["propagator-cos"] = max(
        float(np.max(np.abs(spectral_propagator("cos", t) - dense_propagator("cos", t))))
        for t in (0.1, 1.0, 10.0)
    )
    errors["propagator-omega-sin"] = max(
        float(np.max(np.abs(spectral_propagator("omega-sin", t) - dense_propagator("omega-sin", t))))
        for t in (0.1, 1.0, 10.0)
    )

    v = rng.standard_normal(m)
    v_hat = mode_transform(v, "forward")
    errors["mode-roundtrip"] = float(np.max(np.abs(mode_transform(v_hat, "inverse") - v)))
    norm = float(v @ v)
    errors["parseval"] = abs(float(np.sum(np.abs(v_hat) ** 2)) - m * norm) / (m * norm)

    state = PhaseState(p=rng.standard_normal(m), q=rng.standard_normal(m))
    h_fast = energy(state, spectrum, config.mass)
    h_dense = float(state.p @ state.p) / (2 * config.mass) + 0.5 * float(state.q @ dense @ state.q)
    errors["energy"] = abs(h_fast - h_dense) / abs(h_dense)

    signal = momentum_trajectory_coefficients(state, spectrum, config.mass)
    errors["trajectory-coefficients"] = max(
        abs(signal.evaluate(t) - evolve(state, spectrum, t, config.mass).momentum(0))
        for t in (0.0, 0.5, 2.0, 7.3)
    )

    rows = []
    all_pass = True
    for name in ORACLE_THRESHOLDS:
        ok = errors[name] < ORACLE_THRESHOLDS[name]
        all_pass &= ok
        rows.append((name, float(errors[name]), ORACLE_THRESHOLDS[name], "pass" if ok else "fail"))
    report = {"pass": bool(all_pass), "max_error": max(errors.values())}
    return ["check", "value", "threshold", "status"], rows, report, bool(all_pass)


_RUNNERS = {
    "spectrum": _run_spectrum,
    "acf-phase": _run_acf_phase,
    "limit": _run_limit,
    "acf-time": _run_acf_time,
    "ensemble": _run_ensemble,
    "normal-cell": _run_normal_cell,
    "variance-scaling": _run_variance_scaling,
    "oracle-check": _run_oracle_check,
}


def _format_cell(value) -> str:
    if isinstance(value, float):
        return "%.17g" % value
    return str(value)


# Execution-only keys: they steer where and how fast a run happens but have
# no influence on the data, so they stay out of the embedded config echo
# (reruns at another worker count or output path must match byte for byte).
_EXEC_KEYS = ("out", "workers")


def _embedded_config(config: RunConfig) -> dict:
    values = {k: v for k, v in config.values.items() if k not in _EXEC_KEYS}
    return {"experiment": config.experiment, **values}


def _render_csv(config: RunConfig, columns, rows, report) -> str:
    lines = [
        "# config: " + json.dumps(_embedded_config(config), sort_keys=True),
        "# timestamp: " + datetime.now(timezone.utc).isoformat(),
    ]
    if report is not None:
        lines.append("# report: " + json.dumps(report, sort_keys=True))
    lines.append(",".join(columns))
    lines.extend(",".join(_format_cell(cell) for cell in row) for row in rows)
    return "\n".join(lines) + "\n"


def _render_json(config: RunConfig, columns, rows, report) -> str:
    payload = {
        "config": _embedded_config(config),
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "columns": columns,
        "rows": [list(row) for row in rows],
    }
    if report is not None:
        payload["report"] = report
    return json.dumps(payload, sort_keys=True, indent=1) + "\n"


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    try:
        fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".ringbath-", suffix=".tmp")
    except OSError as exc:
        raise ConfigurationError(f"cannot write to {path}: {exc}")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp_path, path)
    finally:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)


def run(config: RunConfig) -> int:
    """Execute one resolved experiment and emit its artifact."""
    columns, rows, report, ok = _RUNNERS[config.experiment](config.values)
    render = _render_csv if config.values["format"] == "csv" else _render_json
    text = render(config, columns, rows, report)
    if config.values["out"] is None:
        sys.stdout.write(text)
    else:
        _write_atomic(config.values["out"], text)
    return 0 if ok else 3


def main(argv=None) -> int:
    try:
        config = parse_config(argv)
    except RingbathError as exc:
        print(f"error: config: {exc}", file=sys.stderr)
        return 2
    try:
        return run(config)
    except (ConfigurationError, ParameterError, DimensionError) as exc:
        print(f"error: config: {exc}", file=sys.stderr)
        return 2
    except FloatingPointError as exc:
        print(f"error: numeric: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
