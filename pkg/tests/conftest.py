"""Shared independent oracles for the test suite.

Everything here recomputes package results by a different route: direct
O(n^2) summation of the transform's definition, dense linear algebra via
eigendecomposition, and adaptive ODE integration of the equations of
motion.  Slow and obviously-correct beats fast here.
"""

from __future__ import annotations

import numpy as np
from scipy.integrate import solve_ivp


def naive_mode_transform(v):
    """The transform's definition as a double loop; O(n^2)."""
    m = len(v)
    n = (m - 1) // 2
    zeta = np.exp(2j * np.pi / m)
    out = np.empty(m, dtype=complex)
    for a, k in enumerate(range(-n, n + 1)):
        out[a] = sum(v[i + n] * zeta ** (-(i * k)) for i in range(-n, n + 1))
    return out


def dense_coupling_from_eigenvectors(spectrum):
    """A reconstructed as sum_k omega_k^2 e_k e_k^H / (2N+1) with the
    explicit Fourier eigenvectors; independent of the package's cosine-series
    construction."""
    m = spectrum.size
    n = spectrum.half_size
    idx = np.arange(-n, n + 1)
    basis = np.exp(2j * np.pi * np.outer(idx, idx) / m)
    dense = (basis * spectrum.frequencies**2) @ basis.conj().T / m
    return dense.real


def dense_propagator(spectrum, kind, t):
    """Functional calculus cos(sqrt(A) t) or sqrt(A) sin(sqrt(A) t) through
    a dense symmetric eigensolver."""
    dense = dense_coupling_from_eigenvectors(spectrum)
    lam, vec = np.linalg.eigh(dense)
    root = np.sqrt(np.clip(lam, 0.0, None))
    f = np.cos(root * t) if kind == "cos" else root * np.sin(root * t)
    return (vec * f) @ vec.T


def integrate_hamilton(state, dense_a, times, mass=1.0):
    """High-accuracy adaptive integration of qdot = p/mass, pdot = -A q.

    Returns (q_rows, p_rows), one row per requested time.
    """
    m = len(state.p)

    def rhs(_, y):
        return np.concatenate([y[m:] / mass, -dense_a @ y[:m]])

    sol = solve_ivp(
        rhs,
        (0.0, float(max(times))),
        np.concatenate([state.q, state.p]),
        t_eval=times,
        method="DOP853",
        rtol=1e-11,
        atol=1e-12,
    )
    assert sol.success
    return sol.y[:m].T, sol.y[m:].T
