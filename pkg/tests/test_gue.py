import math

import numpy as np
import pytest

from sffbound.errors import InvalidArgument
from sffbound.sff import EnsembleModel, GUEAnnealedModel, avg_z_gue, gue_connected, sff_gue_annealed
from sffbound.spectra import GUEConfig, ThermalParams, gue_ensemble


def hermite_oracle(s, dim, size=160):
    """``<Z_s>`` and ``g_c`` from the position operator in a truncated oscillator basis:
    ``tr P e^{-sX}`` and ``-sum_{n,m<N} |(e^{-sX})_{nm}|^2``."""
    n = np.arange(size - 1)
    x = np.diag(np.sqrt((n + 1) / 2), 1)
    x = x + x.T
    lam, v = np.linalg.eigh(x)
    e = (v * np.exp(-s * lam)) @ v.T
    block = e[:dim, :dim]
    return np.trace(block), -np.sum(np.abs(block) ** 2)


# frozen from hermite_oracle
FROZEN = [
    (1 + 0.5j, 3, 4.253508209689648 + 3.1869220050301887j, -18.546966671850413),
    (0.3 + 2j, 5, -0.42159544518813186 - 0.4666715119818849j, -4.25564133931522),
    (1.5 - 1j, 5, -22.5452751038017 - 21.47061493993316j, -890.1677157742492),
]


@pytest.mark.parametrize("s,dim,z_ref,g_ref", FROZEN)
def test_frozen_oracle_values(s, dim, z_ref, g_ref):
    assert avg_z_gue(s, dim) == pytest.approx(z_ref, rel=1e-12)
    assert gue_connected(s, dim) == pytest.approx(g_ref, rel=1e-12)


@pytest.mark.parametrize("s,dim", [(0.7, 1), (2j, 8), (0.2 + 4j, 12), (1.0, 20)])
def test_live_hermite_oracle(s, dim):
    z, g = hermite_oracle(s, dim)
    assert avg_z_gue(s, dim) == pytest.approx(z, rel=1e-11, abs=1e-12)
    assert gue_connected(s, dim) == pytest.approx(g, rel=1e-11, abs=1e-12)


def test_connected_limits():
    for n in (1, 4, 9):
        assert gue_connected(0.0, n) == pytest.approx(-n, rel=1e-14)
        assert avg_z_gue(0.0, n) == pytest.approx(n)


def test_dim_one_closed_form():
    # one real Gaussian level with std sigma: <e^{-zE}> = e^{z^2 sigma^2/2}
    for sigma, z in ((1.0, 0.8), (0.5, 1 + 1j), (2.0, 0.3j)):
        assert avg_z_gue(math.sqrt(2) * sigma * z, 1) == pytest.approx(np.exp(z * z * sigma**2 / 2), rel=1e-13)


def test_avg_z_monte_carlo():
    sigma, z, dim = 0.5, 1 + 1j, 5
    spectra = gue_ensemble(GUEConfig(dim, sigma, 4000, seed=3))
    vals = np.array([np.sum(np.exp(-z * s.energies)) for s in spectra])
    se = np.std(vals) / math.sqrt(vals.size)
    assert abs(vals.mean() - avg_z_gue(math.sqrt(2) * sigma * z, dim)) < 4 * se


def test_annealed_second_moment_monte_carlo():
    # <|Z_{b+it}|^2> = <Z_2b> + |<Z_{b+it}>|^2 + g_c
    dim, beta, t = 4, 0.4, 1.3
    spectra = gue_ensemble(GUEConfig(dim, 1.0, 6000, seed=11))
    vals = np.array([abs(np.sum(np.exp(-(beta + 1j * t) * s.energies))) ** 2 for s in spectra])
    s = math.sqrt(2) * (beta + 1j * t)
    pred = avg_z_gue(2 * math.sqrt(2) * beta, dim).real + abs(avg_z_gue(s, dim)) ** 2 + gue_connected(s, dim)
    assert abs(vals.mean() - pred) < 4 * vals.std() / math.sqrt(vals.size)


def test_model_matches_scalar_assembly():
    for dim, beta in ((1, 0.5), (3, 0.0), (5, 2.0)):
        t = np.linspace(0, 6, 13)
        s = math.sqrt(2) * (beta + 1j * t)
        num = [avg_z_gue(2 * math.sqrt(2) * beta, dim).real + abs(avg_z_gue(x, dim)) ** 2 + gue_connected(x, dim) for x in s]
        num = np.array(num)
        assert np.allclose(GUEAnnealedModel(dim, ThermalParams(beta)).sff(t), num / num[0], rtol=1e-12)


def test_annealed_model_properties():
    m = GUEAnnealedModel(5, ThermalParams(0.0))
    assert m.sff(np.zeros(1))[0] == 1.0
    assert m.plateau == pytest.approx(0.2, rel=1e-12)
    assert m.sff(np.array([200.0]))[0] == pytest.approx(0.2, rel=1e-6)
    lit = GUEAnnealedModel(5, ThermalParams(1.0), denominator="mean_z_squared")
    ref = GUEAnnealedModel(5, ThermalParams(1.0))
    t = np.linspace(0, 3, 7)
    ratio = lit.sff(t) / ref.sff(t)
    assert np.allclose(ratio, ratio[0], rtol=1e-12)
    with pytest.raises(InvalidArgument):
        GUEAnnealedModel(0, ThermalParams(1.0))


def test_annealed_equals_exact_at_infinite_temperature():
    spectra = gue_ensemble(GUEConfig(5, 1.0, 300, 0))
    t = np.geomspace(0.05, 50, 25)
    mc = EnsembleModel(spectra, ThermalParams(0.0))
    per = np.array([EnsembleModel([s], ThermalParams(0.0)).sff(t) for s in spectra])
    se = per.std(axis=0) / math.sqrt(len(spectra))
    an = sff_gue_annealed(0.0, t, dim=5)
    assert np.all(np.abs(an - mc.sff(t)) < 4 * se)


def test_log_derivs_finite_differences():
    m = GUEAnnealedModel(6, ThermalParams(0.7), sigma=0.8)
    t = np.array([0.3, 1.1, 2.5])
    h = 1e-5
    s, l1, l2 = m.log_derivs(t)
    sp, l1p, _ = m.log_derivs(t + h)
    sm, l1m, _ = m.log_derivs(t - h)
    assert np.allclose(l1, (np.log(sp) - np.log(sm)) / (2 * h), rtol=1e-6)
    assert np.allclose(l2, (l1p - l1m) / (2 * h), rtol=1e-5)
