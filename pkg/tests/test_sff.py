import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_spectrum
from sffbound.errors import DomainError, InvalidArgument
from sffbound.sff import (
    EnsembleModel,
    ProductHOModel,
    SpectrumModel,
    ensemble_sff,
    modified_sff,
    neighbor_decomposition,
    sff,
    sff_complex,
    sff_cs,
    sff_ho,
    sff_ho_log_derivative,
    sff_ho_rate,
    sff_series,
)
from sffbound.spectra import ThermalParams, cs_frequencies, explicit_spectrum, ho_levels_needed, ho_spectrum


def ho_auto(beta):
    return ho_spectrum(1.0, max(200, ho_levels_needed(beta, 1.0)))


def test_sff_t0_is_one(rng):
    spec = random_spectrum(rng, 20)
    assert sff(spec, ThermalParams(0.8), 0.0) == 1.0
    assert ProductHOModel([1.0, 2.0], ThermalParams(0.3)).sff(np.zeros(1))[0] == 1.0


def test_single_level_constant():
    s = sff(explicit_spectrum([1.7]), ThermalParams(1.0), np.linspace(0, 10, 5))
    assert np.all(s == 1.0)


def test_ho_closed_form_values():
    # (cosh x - 1)/(cosh x + 1) = tanh^2(x/2) at omega t = pi
    assert sff_ho(2.0, 1.0, 1.0, math.pi) == pytest.approx(math.tanh(1.0) ** 2, rel=1e-14)
    assert sff_ho(2.0, 1.0, 1.0, 2 * math.pi) == pytest.approx(1.0, rel=1e-14)


def test_ho_spectrum_matches_closed_form():
    t = np.linspace(0, 9, 200)
    for b in (0.1, 1.0, 3.0):
        num = sff(ho_auto(b), ThermalParams(b), t)
        assert np.allclose(num, sff_ho(b, 1.0, 1.0, t), rtol=1e-12, atol=1e-14)
        assert np.allclose(ProductHOModel([1.0], ThermalParams(b)).sff(t), sff_ho(b, 1.0, 1.0, t), rtol=1e-13)


def test_ho_log_derivative_and_rate():
    t = np.linspace(0.01, 6, 300)
    b = 0.7
    s, l1, _ = ProductHOModel([1.0], ThermalParams(b)).log_derivs(t)
    assert np.allclose(l1, sff_ho_log_derivative(b, 1.0, 1.0, t), rtol=1e-12)
    assert np.allclose(np.abs(s * l1), sff_ho_rate(b, 1.0, 1.0, t), rtol=1e-12)


def test_cs_is_product_of_oscillators():
    t = np.linspace(0, 7, 100)
    prod = np.prod([sff_ho(0.5, n, 1.0, t) for n in (1, 2, 3)], axis=0)
    assert np.allclose(sff_cs(0.5, 1.0, 1.0, 3, t), prod, rtol=1e-13)
    assert np.allclose(ProductHOModel(cs_frequencies(1.0, 3), ThermalParams(0.5)).sff(t), prod, rtol=1e-12)


def test_cs_periodic():
    t = np.linspace(0, 3, 20)
    assert np.allclose(sff_cs(0.5, 1.0, 1.0, 4, t), sff_cs(0.5, 1.0, 1.0, 4, t + 2 * math.pi), rtol=1e-11)


@pytest.mark.parametrize("kind", ["spectrum", "product", "ensemble"])
def test_log_derivs_match_finite_differences(kind, rng):
    params = ThermalParams(0.6)
    if kind == "spectrum":
        model = SpectrumModel(random_spectrum(rng, 15, 1.0), params)
    elif kind == "product":
        model = ProductHOModel([1.0, 1.7], params)
    else:
        model = EnsembleModel([random_spectrum(rng, 8, 1.0) for _ in range(3)], params)
    t = np.linspace(0.2, 2.0, 7)
    h = 1e-5
    s_p, l1_p, _ = model.log_derivs(t + h)
    s_m, l1_m, _ = model.log_derivs(t - h)
    s, l1, l2 = model.log_derivs(t)
    assert np.allclose(l1, (np.log(s_p) - np.log(s_m)) / (2 * h), rtol=1e-6, atol=1e-8)
    assert np.allclose(l2, (l1_p - l1_m) / (2 * h), rtol=1e-5, atol=1e-7)


def test_variance0(rng):
    spec = random_spectrum(rng, 12)
    params = ThermalParams(0.4)
    w = np.exp(-0.4 * spec.energies)
    w /= w.sum()
    var = np.dot(w, spec.energies**2) - np.dot(w, spec.energies) ** 2
    assert SpectrumModel(spec, params).variance0() == pytest.approx(var, rel=1e-10)


def test_sff_complex_properties(rng):
    spec = random_spectrum(rng, 10, 1.0)
    params = ThermalParams(0.9)
    t = np.linspace(0, 5, 11)
    assert np.allclose(sff_complex(spec, params, t, 0.0).imag, 0, atol=1e-13)
    assert np.allclose(sff_complex(spec, params, t, 0.0).real, sff(spec, params, t), rtol=1e-12)
    a = sff_complex(spec, params, t, 0.4)
    b = sff_complex(spec, params, t, -0.4)
    assert np.allclose(a, np.conj(b), rtol=1e-12)
    v = sff_complex(spec, params, 0.0, 0.6)
    assert abs(v.imag) < 1e-13 and v.real >= 1.0


def test_modified_sff(rng):
    spec = random_spectrum(rng, 10, 1.0)
    params = ThermalParams(0.9)
    assert np.allclose(modified_sff(spec, params, 0.0, np.linspace(-0.9, 0.9, 7)), 0, atol=1e-14)
    t = np.linspace(0, 4, 9)
    assert np.allclose(modified_sff(spec, params, t, 0.0), 1 - sff(spec, params, t), atol=1e-13)
    with pytest.raises(DomainError):
        modified_sff(spec, params, 1.0, 1.0)  # beta - tau < 0


def test_infinite_model_strip_domain():
    m = ProductHOModel([1.0], ThermalParams(1.0))
    with pytest.raises(DomainError):
        sff_complex(m, m.params, 1.0, 1.0)
    assert np.isfinite(sff_complex(m, m.params, 1.0, 0.99))


def test_modified_sff_ho_copies_strip():
    # N = 4 copies: bounded inside |tau| <= beta hbar / 4, exceeds 1 further out
    params = ThermalParams(1.0, 1.0, 4)
    m = ProductHOModel([1.0] * 4, params)
    t = np.linspace(-2 * math.pi, 2 * math.pi, 201)[None, :]
    inner = np.abs(modified_sff(m, params, t, np.linspace(-0.25, 0.25, 21)[:, None]))
    outer = np.abs(modified_sff(m, params, t, np.linspace(0.3, 0.999, 30)[:, None]))
    assert inner.max() <= 1 + 1e-9 and outer.max() > 1


def test_ensemble_modes(rng):
    spectra = [random_spectrum(rng, 6, 1.0) for _ in range(4)]
    params = ThermalParams(0.5)
    t = np.linspace(0, 6, 30)
    exact = ensemble_sff(spectra, params, t, "exact")
    assert np.allclose(exact.values, np.mean([sff(s, params, t) for s in spectra], axis=0), rtol=1e-12)
    ann = ensemble_sff(spectra, params, t, "annealed")
    z = [np.sum(np.exp(-0.5 * s.energies)) for s in spectra]
    num = np.mean([sff(s, params, t) * zz**2 for s, zz in zip(spectra, z)], axis=0)
    assert np.allclose(ann.values, num / np.mean(np.square(z)), rtol=1e-12)
    with pytest.raises(InvalidArgument):
        ensemble_sff(spectra, params, t, "quenched")


def test_sff_series_and_validation(rng):
    ser = sff_series(random_spectrum(rng, 5), ThermalParams(1.0), np.linspace(0, 1, 4))
    assert set(ser.columns()) == {"t", "S", "Sdot_over_S"}
    with pytest.raises(InvalidArgument):
        sff_series(random_spectrum(rng, 5), ThermalParams(1.0), np.array([0.0, 0.0]))


def test_plateau_is_long_time_average(rng):
    spec = random_spectrum(rng, 8, 1.0)
    params = ThermalParams(0.3)
    t = np.linspace(0, 4000, 400001)
    assert SpectrumModel(spec, params).plateau == pytest.approx(sff(spec, params, t).mean(), abs=2e-3)
    assert SpectrumModel(explicit_spectrum([0.0, 0.0]), params).plateau == 1.0


@settings(max_examples=30, deadline=None)
@given(st.lists(st.floats(-5, 5, allow_nan=False), min_size=2, max_size=25),
       st.floats(0.0, 3.0), st.integers(1, 24))
def test_neighbor_identity(values, beta, j_cap):
    spec = explicit_spectrum(values)
    j_max = min(j_cap, len(values) - 1)
    params = ThermalParams(beta)
    t = np.linspace(0, 20, 50)
    dec = neighbor_decomposition(spec, params, t, len(values) - 1)
    assert np.allclose(dec.total(), sff(spec, params, t), rtol=0, atol=1e-12)
    part = neighbor_decomposition(spec, params, t, j_max)
    assert part.contributions.shape == (j_max, t.size)


def test_neighbor_j_range(rng):
    with pytest.raises(InvalidArgument):
        neighbor_decomposition(random_spectrum(rng, 4), ThermalParams(1.0), [0.0, 1.0], 4)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.floats(-3, 3, allow_nan=False), min_size=1, max_size=20), st.floats(0, 2), st.floats(0, 50))
def test_sff_in_unit_interval(values, beta, t):
    s = sff(explicit_spectrum(values), ThermalParams(beta), t)
    assert -1e-15 <= s <= 1 + 1e-12
