import math

import numpy as np
import pytest

from sffbound.errors import InvalidArgument
from sffbound.kickedtop import (
    CHAOTIC,
    REGULAR,
    KickedTopConfig,
    averaged_pseudo_sff,
    floquet_operator,
    kicked_top_ensemble,
    kz_values,
    pseudo_frequencies,
    pseudo_spectrum,
    spin_operators,
)
from sffbound.numerics import unitary_eigen
from sffbound.sff import EnsembleModel, dip_ramp_features
from sffbound.spectra import ThermalParams


def test_spin_half_is_pauli():
    sx, sy, sz = spin_operators(0.5)
    assert np.allclose(sx, 0.5 * np.array([[0, 1], [1, 0]]))
    assert np.allclose(sy, 0.5 * np.array([[0, -1j], [1j, 0]]))
    assert np.allclose(sz, 0.5 * np.diag([1, -1]))


@pytest.mark.parametrize("spin", [0.5, 1, 3.5, 10])
def test_spin_algebra(spin):
    hbar = 0.7
    sx, sy, sz = spin_operators(spin, hbar)
    assert np.max(np.abs(sx @ sy - sy @ sx - 1j * hbar * sz)) < 1e-12
    cas = sx @ sx + sy @ sy + sz @ sz
    assert np.max(np.abs(cas - hbar**2 * spin * (spin + 1) * np.eye(int(2 * spin + 1)))) < 1e-12 * max(1, spin**2)


def test_invalid_spin():
    with pytest.raises(InvalidArgument):
        spin_operators(0.3)
    with pytest.raises(InvalidArgument):
        KickedTopConfig(1.25)


def test_identity_for_zero_kicks():
    u = floquet_operator(KickedTopConfig(3))
    assert np.allclose(u, np.eye(7), atol=1e-13)


@pytest.mark.parametrize("spin", [1, 7.5, 30])
def test_integrable_diagonal_phases(spin):
    cfg = KickedTopConfig(spin, p=(0, 0, 10), k=(0, 0, 1))
    u = floquet_operator(cfg)
    m = spin - np.arange(int(2 * spin + 1))
    assert np.allclose(u, np.diag(np.exp(-1j * (10 * m + m * m / (2 * spin + 1)))), atol=1e-12)
    sz = spin_operators(spin)[2]
    assert np.max(np.abs(u @ sz - sz @ u)) < 1e-10
    expected = np.sort(np.mod(10 * m + m * m / (2 * spin + 1), 2 * math.pi))
    assert np.allclose(pseudo_frequencies(cfg), expected, atol=1e-9)


def test_chaotic_unitarity_and_residuals():
    cfg = KickedTopConfig(30, **CHAOTIC)
    u = floquet_operator(cfg)
    assert np.max(np.abs(u.conj().T @ u - np.eye(61))) < 1e-10
    lam, v = unitary_eigen(u)
    assert np.max(np.linalg.norm(u @ v - v * lam, axis=0)) < 1e-9


def test_kz_window():
    cfg = KickedTopConfig(2, k=(0, 0, 10), n_av=50, seed=4)
    k = kz_values(cfg)
    assert np.all(np.abs(k - 10) < 0.25) and np.array_equal(k, kz_values(cfg))
    strat = kz_values(KickedTopConfig(2, k=(0, 0, 10), n_av=4, sampling="stratified"))
    assert np.allclose(strat, 10 - 0.25 + 0.5 * (np.arange(4) + 0.5) / 4)


def test_pseudo_sff_normalization_and_single_realization():
    cfg = KickedTopConfig(5, n_av=3, **CHAOTIC)
    t = np.array([0.0, 0.5, 3.0])
    mean, rows = averaged_pseudo_sff(cfg, 0.5, t, return_realizations=True)
    assert mean.values[0] == 1.0 and np.all(rows[:, 0] == 1.0)
    assert np.allclose(mean.values, rows.mean(axis=0))
    one = KickedTopConfig(5, n_av=1, window_frac=0.0, **CHAOTIC)
    single = EnsembleModel([pseudo_spectrum(one)], ThermalParams(0.5)).sff(t)
    assert np.allclose(averaged_pseudo_sff(one, 0.5, t).values, single, rtol=1e-14)
    with pytest.raises(InvalidArgument):
        averaged_pseudo_sff(cfg, 0.0, t)


def test_branches_are_the_same_phases_mod_2pi():
    a = pseudo_frequencies(KickedTopConfig(4, **CHAOTIC))
    b = pseudo_frequencies(KickedTopConfig(4, branch="symmetric", **CHAOTIC))
    assert np.allclose(np.sort(np.mod(b, 2 * math.pi)), a, atol=1e-12)


def test_dip_ramp_regimes():
    t = np.geomspace(0.1, 1e4, 3000)
    out = {}
    for name, par in (("chaotic", CHAOTIC), ("regular", REGULAR)):
        cfg = KickedTopConfig(30, n_av=30, seed=1, **par)
        spectra = kicked_top_ensemble(cfg)
        s = averaged_pseudo_sff(cfg, 0.1, t, spectra=spectra).values
        out[name] = dip_ramp_features(t, s, EnsembleModel(spectra, ThermalParams(0.1)).plateau)
    assert out["chaotic"].has_dip_ramp and out["chaotic"].dip_ratio * 0.0169 < 1e-2
    assert not out["regular"].has_dip_ramp
