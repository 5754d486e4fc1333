import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_spectrum
from sffbound.errors import InvalidArgument, NumericalFailure, SearchFailure
from sffbound.inflection import (
    analyticity_bound,
    energy_at_complex_beta,
    eta_cs,
    eta_ho,
    eta_scan,
    find_inflection,
    log_derivative,
)
from sffbound.sff import GUEAnnealedModel, ProductHOModel, SpectrumModel
from sffbound.spectra import ThermalParams, cs_frequencies, explicit_spectrum, ho_levels_needed, ho_spectrum


def ho_auto(beta, omega=1.0):
    return ho_spectrum(omega, max(200, ho_levels_needed(beta, omega)))


def test_bound_values():
    assert analyticity_bound(ThermalParams(2.0)) == pytest.approx(math.pi / 4)
    assert analyticity_bound(ThermalParams(1.0, 0.5, 3)) == pytest.approx(3 * math.pi)
    assert analyticity_bound(ThermalParams(0.0)) == math.inf


def test_eta_closed_forms():
    assert eta_ho(1.0, 1.0) == pytest.approx(1 / math.sinh(1.0))
    assert eta_cs(0.7, 1.3, 1.0, 1) == eta_ho(0.7, 1.3)
    assert eta_cs(0.5, 1.0, 1.0, 3) == pytest.approx(sum(n / math.sinh(0.5 * n) for n in (1, 2, 3)))
    with pytest.raises(InvalidArgument):
        eta_ho(0.0, 1.0)


def test_ho_inflection_time():
    # d/dt(Sdot/S) vanishes where cos(omega t) = 1/cosh(beta hbar omega)
    res = find_inflection(ProductHOModel([1.0], ThermalParams(1.0)))
    assert res.t0 == pytest.approx(math.acos(1 / math.cosh(1.0)), rel=1e-12)
    assert res.t0 == pytest.approx(0.8657694832396586, rel=1e-12)
    assert res.eta == pytest.approx(eta_ho(1.0, 1.0), rel=1e-12)
    assert res.method == "closed-form"


@pytest.mark.parametrize("x", [0.05, 0.3, 1.0, 2.5, 5.0])
def test_ho_numeric_pipeline(x):
    res = find_inflection(ho_auto(x), ThermalParams(x))
    assert res.eta == pytest.approx(eta_ho(x, 1.0), rel=1e-10)
    assert res.method == "spectral-exact"


def test_hbar_and_omega_scaling():
    a = find_inflection(ho_auto(0.8, 2.0), ThermalParams(0.8))
    assert a.eta == pytest.approx(eta_ho(0.8, 2.0), rel=1e-10)
    b = find_inflection(ProductHOModel([1.0], ThermalParams(0.5, 2.0)))
    assert b.eta == pytest.approx(eta_ho(0.5, 1.0, 2.0), rel=1e-10)


def test_cs_numeric_near_closed_form_at_high_temperature():
    res = find_inflection(ProductHOModel(cs_frequencies(1.0, 10), ThermalParams(0.1, 1.0, 10)))
    assert res.eta == pytest.approx(eta_cs(0.1, 1.0, 1.0, 10), rel=0.01)
    assert res.eta / 10 <= math.pi / (2 * 0.1)


def test_single_level_has_no_decay():
    res = find_inflection(explicit_spectrum([2.0]), ThermalParams(1.0))
    assert res.eta == 0.0 and res.t0 == math.inf


def test_two_level_infinite_temperature_fails_cleanly():
    # S = cos^2(t/2): ln S is concave until S vanishes
    with pytest.raises(SearchFailure):
        find_inflection(explicit_spectrum([0.0, 1.0]), ThermalParams(0.0))
    assert issubclass(SearchFailure, NumericalFailure)


def test_window_search():
    m = ProductHOModel([1.0], ThermalParams(1.0))
    assert find_inflection(m, window=(0.5, 1.5)).t0 == pytest.approx(math.acos(1 / math.cosh(1.0)))
    with pytest.raises(SearchFailure):
        find_inflection(m, window=(0.1, 0.5))
    with pytest.raises(InvalidArgument):
        find_inflection(m, window=(1.0, 0.5))


def test_log_derivative_matches_model(rng):
    spec = random_spectrum(rng, 9, 1.0)
    params = ThermalParams(0.5)
    t = np.linspace(0, 3, 7)
    assert np.allclose(log_derivative(spec, params, t), SpectrumModel(spec, params).log_derivs(t)[1])


@pytest.mark.parametrize("n,beta", [(6, 0.4), (20, 1.0), (40, 2.0)])
def test_energy_at_complex_beta_identity(n, beta, rng):
    spec = explicit_spectrum(np.sort(rng.uniform(0, 5, n)))
    params = ThermalParams(beta)
    res = find_inflection(spec, params)
    assert abs(energy_at_complex_beta(spec, params, res.t0)) == pytest.approx(res.eta, rel=1e-10)


def test_eta_scan_order():
    betas = [0.2, 1.0, 3.0]
    res = eta_scan(lambda b: ProductHOModel([1.0], ThermalParams(b)), betas)
    assert [r.beta for r in res] == betas
    assert all(r.ratio < 1 for r in res)


def test_gue_bound_holds():
    for dim in (2, 10):
        for b in (0.05, 0.5, 3.0):
            res = find_inflection(GUEAnnealedModel(dim, ThermalParams(b)))
            assert res.eta <= res.bound and res.method == "series-numeric"


@settings(max_examples=40, deadline=None)
@given(st.floats(0.02, 8.0))
def test_ho_eta_below_bound(x):
    res = find_inflection(ProductHOModel([1.0], ThermalParams(x)))
    assert res.eta == pytest.approx(eta_ho(x, 1.0), rel=1e-9)
    assert res.eta <= math.pi / (2 * x) * (1 + 1e-9)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.02, 5.0), st.integers(1, 12))
def test_cs_eta_over_d_below_bound(x, n):
    res = find_inflection(ProductHOModel(cs_frequencies(1.0, n), ThermalParams(x, 1.0, n)))
    assert res.eta <= res.bound * (1 + 1e-9)
