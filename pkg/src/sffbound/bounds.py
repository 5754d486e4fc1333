"""Competing bounds on the SFF decay: thermal energy moments, the
quantum-speed-limit rate bound, eta_QSL and the Bhattacharyya exponent."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgument, SingularPointError
from .inflection import analyticity_bound, find_inflection
from .sff.models import SpectrumModel
from .spectra import Spectrum, ThermalParams


@dataclass(frozen=True)
class ThermalMoments:
    mean_e: float
    mean_e2: float
    delta_e: float


def thermal_moments(spectrum: Spectrum, params: ThermalParams) -> ThermalMoments:
    """Thermal ``<H>``, ``<H^2>`` and ``Delta E``; the variance is taken about the mean
    (two passes) so that it does not cancel catastrophically."""
    e = spectrum.energies
    w = np.exp(-params.beta * (e - e[0]))
    w /= w.sum()
    mean = float(np.dot(w, e))
    var = float(np.dot(w, (e - mean) ** 2))
    return ThermalMoments(mean, var + mean * mean, math.sqrt(var))


def qsl_rate_bound(moments: ThermalMoments, hbar: float = 1.0) -> float:
    """``|dS/dt| <= sqrt(2) Delta E / hbar``."""
    return math.sqrt(2.0) * moments.delta_e / hbar


def eta_qsl(spectrum: Spectrum, params: ThermalParams, t0: float) -> float:
    """``sqrt(2) Delta E / (hbar S(t0))``."""
    s0 = float(SpectrumModel(spectrum, params).sff(np.array([t0]))[0])
    if s0 <= 0:
        raise SingularPointError(f"S vanishes at t0={t0:g}")
    return qsl_rate_bound(thermal_moments(spectrum, params), params.hbar) / s0


def eta_bhattacharyya(moments: ThermalMoments, hbar: float = 1.0) -> float:
    """Rate of the lower bound ``S >= exp(-2 Delta E t / hbar)``."""
    return 2.0 * moments.delta_e / hbar


def bhattacharyya_holds(spectrum: Spectrum, params: ThermalParams, times, tol=1e-12):
    """Check ``S >= exp(-2 Delta E t/hbar)`` where ``S >= 1/2``; returns (ok, n_checked)."""
    times = np.asarray(times, dtype=np.float64)
    s = SpectrumModel(spectrum, params).sff(times)
    rate = eta_bhattacharyya(thermal_moments(spectrum, params), params.hbar)
    mask = s >= 0.5
    ok = np.all(s[mask] >= np.exp(-rate * np.abs(times[mask])) - tol)
    return bool(ok), int(mask.sum())


def bound_row(spectrum: Spectrum, params: ThermalParams) -> dict:
    """One row of the bound comparison: eta and the three upper bounds at ``params.beta``."""
    res = find_inflection(spectrum, params)
    mom = thermal_moments(spectrum, params)
    qsl = eta_qsl(spectrum, params, res.t0) if math.isfinite(res.t0) else float("inf")
    return {
        "beta": params.beta,
        "eta": res.eta,
        "bound_analyticity": analyticity_bound(params),
        "eta_qsl": qsl,
        "eta_b": eta_bhattacharyya(mom, params.hbar),
    }


def bound_comparison(spectrum_factory, betas, hbar=1.0) -> list[dict]:
    """Rows for each beta; ``spectrum_factory(beta)`` returns the spectrum to use there."""
    if len(betas) == 0:
        raise InvalidArgument("need at least one beta")
    return [bound_row(spectrum_factory(b), ThermalParams(float(b), hbar)) for b in betas]
