import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import dense_coupling_from_eigenvectors, dense_propagator, naive_mode_transform
from ringbath import (
    AssemblyConfig,
    ConfigurationError,
    DimensionError,
    ParameterError,
    Spectrum,
    build_spectrum,
    coupling_matrix,
    mode_transform,
    propagator_entry,
)


def tangent_spectrum(n, **kwargs):
    return build_spectrum(AssemblyConfig(half_size=n, **kwargs))


class TestAssemblyConfig:
    def test_rejects_bad_parameters(self):
        with pytest.raises(ConfigurationError):
            AssemblyConfig(half_size=0)
        with pytest.raises(ConfigurationError):
            AssemblyConfig(half_size=3, mass=0.0)
        with pytest.raises(ConfigurationError):
            AssemblyConfig(half_size=3, temperature=-1.0)
        with pytest.raises(ConfigurationError):
            AssemblyConfig(half_size=3, cutoff_cap=0.0)
        with pytest.raises(ConfigurationError):
            AssemblyConfig(half_size=3, frequency_law="triangle")
        with pytest.raises(ConfigurationError):
            AssemblyConfig(half_size=3, rng_seed=1.5)


class TestBuildSpectrum:
    def test_tangent_n1(self):
        spec = tangent_spectrum(1)
        root3 = math.sqrt(3.0)
        assert spec.frequencies == pytest.approx([root3, 0.0, root3], abs=1e-12)

    def test_zero_mode(self):
        for n in (1, 5, 100):
            assert tangent_spectrum(n).omega(0) == 0.0

    def test_tangent_n2_k2(self):
        spec = tangent_spectrum(2)
        assert spec.omega(2) == pytest.approx(math.tan(2 * math.pi / 5), abs=1e-12)
        assert spec.omega(2) == pytest.approx(3.0777, abs=1e-4)

    def test_symmetry_is_exact(self):
        freqs = tangent_spectrum(64).frequencies
        assert np.array_equal(freqs, freqs[::-1])

    def test_cutoff_cap(self):
        spec = tangent_spectrum(10, cutoff_cap=1.0)
        assert spec.omega_max == 1.0
        assert np.array_equal(spec.frequencies, spec.frequencies[::-1])
        uncapped = tangent_spectrum(10).frequencies
        low = uncapped <= 1.0
        assert np.array_equal(spec.frequencies[low], uncapped[low])

    def test_explicit_list(self):
        spec = build_spectrum(
            AssemblyConfig(half_size=1, frequency_law=[2.0, 1.0, 2.0])
        )
        assert np.array_equal(spec.frequencies, [2.0, 1.0, 2.0])

    def test_explicit_wrong_length(self):
        with pytest.raises(ConfigurationError):
            build_spectrum(AssemblyConfig(half_size=2, frequency_law=[1.0, 2.0, 1.0]))

    def test_explicit_asymmetric(self):
        with pytest.raises(ConfigurationError):
            build_spectrum(AssemblyConfig(half_size=1, frequency_law=[1.0, 0.0, 2.0]))

    def test_explicit_negative(self):
        with pytest.raises(ConfigurationError):
            build_spectrum(AssemblyConfig(half_size=1, frequency_law=[-1.0, 0.0, -1.0]))

    def test_spectrum_type_validation(self):
        with pytest.raises(ConfigurationError):
            Spectrum(frequencies=np.array([1.0, 0.0, 2.0]), root_of_unity_order=3)
        with pytest.raises(DimensionError):
            Spectrum(frequencies=np.array([1.0, 0.0, 1.0]), root_of_unity_order=5)
        with pytest.raises(DimensionError):
            tangent_spectrum(2).omega(3)


class TestCouplingMatrix:
    def test_constant_spectrum_is_scalar(self):
        spec = build_spectrum(AssemblyConfig(half_size=2, frequency_law=[1.7] * 5))
        assert np.allclose(coupling_matrix(spec), 1.7**2 * np.eye(5), atol=1e-12)

    def test_n1_tangent_entries(self):
        a = coupling_matrix(tangent_spectrum(1))
        expected = np.array([[2.0, -1.0, -1.0], [-1.0, 2.0, -1.0], [-1.0, -1.0, 2.0]])
        assert np.allclose(a, expected, atol=1e-12)

    @pytest.mark.parametrize("n", [4, 16])
    def test_symmetry_and_eigenvalues(self, n):
        spec = tangent_spectrum(n)
        a = coupling_matrix(spec)
        assert np.max(np.abs(a - a.T)) <= 1e-12
        eigen = np.sort(np.linalg.eigvalsh(a))
        assert np.max(np.abs(eigen - np.sort(spec.frequencies**2))) <= 1e-8

    def test_matches_eigenvector_reconstruction(self):
        spec = tangent_spectrum(8)
        assert np.max(np.abs(coupling_matrix(spec) - dense_coupling_from_eigenvectors(spec))) <= 1e-12

    def test_dense_gate(self):
        with pytest.raises(ParameterError):
            coupling_matrix(tangent_spectrum(65))
        with pytest.raises(ParameterError):
            coupling_matrix(tangent_spectrum(10), dense_bound=5)


class TestModeTransform:
    def test_zero_vector(self):
        assert np.array_equal(mode_transform(np.zeros(7)), np.zeros(7))

    def test_center_impulse_gives_ones(self):
        v = np.zeros(17)
        v[8] = 1.0
        assert np.max(np.abs(mode_transform(v) - 1.0)) <= 1e-12

    def test_matches_naive_sum(self):
        rng = np.random.default_rng(3)
        v = rng.standard_normal(17)
        assert np.max(np.abs(mode_transform(v) - naive_mode_transform(v))) <= 1e-12

    @pytest.mark.parametrize("n", [8, 127, 512])
    def test_parseval_and_roundtrip(self, n):
        rng = np.random.default_rng(n)
        v = rng.standard_normal(2 * n + 1)
        v_hat = mode_transform(v, "forward")
        norm = (2 * n + 1) * float(v @ v)
        assert abs(float(np.sum(np.abs(v_hat) ** 2)) - norm) / norm <= 1e-12
        assert np.max(np.abs(mode_transform(v_hat, "inverse") - v)) <= 1e-12

    def test_even_length_rejected(self):
        with pytest.raises(DimensionError):
            mode_transform(np.zeros(4))

    def test_bad_direction(self):
        with pytest.raises(ParameterError):
            mode_transform(np.zeros(5), "sideways")

    @settings(max_examples=40, deadline=None)
    @given(
        n=st.integers(min_value=1, max_value=40),
        seed=st.integers(min_value=0, max_value=2**32 - 1),
    )
    def test_roundtrip_property(self, n, seed):
        v = np.random.default_rng(seed).uniform(-10, 10, 2 * n + 1)
        v_hat = mode_transform(v, "forward")
        assert np.max(np.abs(mode_transform(v_hat, "inverse") - v)) <= 1e-10
        scale = max(1.0, float(v @ v))
        assert abs(np.sum(np.abs(v_hat) ** 2) - (2 * n + 1) * (v @ v)) <= 1e-10 * (2 * n + 1) * scale


class TestPropagatorEntry:
    def test_time_zero_is_identity(self):
        spec = tangent_spectrum(3)
        assert propagator_entry(spec, "cos", 1, 1, 0.0) == pytest.approx(1.0, abs=1e-12)
        assert propagator_entry(spec, "cos", 1, -2, 0.0) == pytest.approx(0.0, abs=1e-12)
        for m, l in ((0, 0), (2, -1)):
            assert propagator_entry(spec, "omega-sin", m, l, 0.0) == pytest.approx(0.0, abs=1e-12)

    def test_center_entry_vs_dense(self):
        spec = tangent_spectrum(4)
        dense = dense_propagator(spec, "cos", 1.0)
        assert abs(propagator_entry(spec, "cos", 0, 0, 1.0) - dense[4, 4]) <= 1e-10

    @pytest.mark.parametrize("kind", ["cos", "omega-sin"])
    @pytest.mark.parametrize("t", [0.1, 1.0, 10.0])
    def test_full_matrix_vs_dense(self, kind, t):
        spec = tangent_spectrum(4)
        n = spec.half_size
        ks = range(-n, n + 1)
        fast = np.array([[propagator_entry(spec, kind, a, b, t) for b in ks] for a in ks])
        assert np.max(np.abs(fast - dense_propagator(spec, kind, t))) <= 1e-10

    def test_index_and_kind_validation(self):
        spec = tangent_spectrum(2)
        with pytest.raises(DimensionError):
            propagator_entry(spec, "cos", 3, 0, 1.0)
        with pytest.raises(ParameterError):
            propagator_entry(spec, "sin", 0, 0, 1.0)


@settings(max_examples=20, deadline=None)
@given(
    n=st.integers(min_value=1, max_value=12),
    seed=st.integers(min_value=0, max_value=2**32 - 1),
)
def test_symmetric_explicit_spectra_reconstruct(n, seed):
    """Any symmetric nonnegative frequency list gives a symmetric coupling
    whose eigenvalue multiset is the squared frequencies."""
    rng = np.random.default_rng(seed)
    half = rng.uniform(0.0, 5.0, n)
    law = list(half[::-1]) + [float(rng.uniform(0, 5))] + list(half)
    spec = build_spectrum(AssemblyConfig(half_size=n, frequency_law=law))
    a = coupling_matrix(spec)
    assert np.max(np.abs(a - a.T)) <= 1e-12
    eigen = np.sort(np.linalg.eigvalsh(a))
    assert np.max(np.abs(eigen - np.sort(spec.frequencies**2))) <= 1e-8
