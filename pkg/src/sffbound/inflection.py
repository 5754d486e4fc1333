"""Inflection time, inflection exponent and the analyticity bound."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import InvalidArgument, SearchFailure, SingularPointError
from .numerics import find_root_bracketed
from .parallel import ordered_map
from .sff.models import GUEAnnealedModel, ProductHOModel, SFFModel, SpectrumModel, as_model
from .spectra import Spectrum, ThermalParams


@dataclass(frozen=True)
class InflectionResult:
    t0: float
    eta: float
    bound: float
    ratio: float
    method: str
    beta: float = math.nan

    def as_row(self) -> dict:
        return {"beta": self.beta, "eta": self.eta, "bound": self.bound, "ratio": self.ratio, "t0": self.t0}


def analyticity_bound(params: ThermalParams) -> float:
    """``d * pi / (2 beta hbar)``; infinite at ``beta = 0``."""
    if params.beta == 0:
        return math.inf
    return params.d * math.pi / (2.0 * params.beta * params.hbar)


def eta_ho(beta, omega, hbar=1.0):
    """Oscillator inflection exponent ``omega / sinh(beta hbar omega)``."""
    if not (beta > 0 and omega > 0 and hbar > 0):
        raise InvalidArgument("beta, omega and hbar must be positive")
    return omega / math.sinh(beta * hbar * omega)


def eta_cs(beta, omega, hbar=1.0, n_particles=1):
    """Sum of oscillator exponents at frequencies ``n omega``."""
    if int(n_particles) != n_particles or n_particles < 1:
        raise InvalidArgument("n_particles must be a positive integer")
    return sum(eta_ho(beta, n * omega, hbar) for n in range(1, int(n_particles) + 1))


def log_derivative(spectrum: Spectrum, params: ThermalParams, t):
    """``Sdot/S = (2/hbar) Im <H>_{beta + i t/hbar}`` from exact spectral sums."""
    model = SpectrumModel(spectrum, params)
    tt = np.atleast_1d(np.asarray(t, dtype=np.float64))
    model.check_regular(tt)
    out = model.log_derivs(tt)[1]
    return out if np.ndim(t) else float(out[0])


def energy_at_complex_beta(spectrum: Spectrum, params: ThermalParams, t0: float) -> float:
    """``(2/hbar) Im <H>_{beta - i t0/hbar}``, the imaginary thermal energy at the
    complex inverse temperature fixed by the inflection time."""
    e = spectrum.energies
    w = np.exp(-params.beta * (e - e[0]))
    z0, z1, _ = _backend.thermal_sums(e - e[0], w, np.array([-t0 / params.hbar]))
    if abs(z0[0]) <= 1e-150 * w.sum():
        raise SingularPointError(f"<U_t> vanishes at t0={t0:g}")
    return 2.0 / params.hbar * float((z1[0] / z0[0]).imag)


def _method(model: SFFModel) -> str:
    if isinstance(model, ProductHOModel):
        return "closed-form"
    if isinstance(model, GUEAnnealedModel):
        return "series-numeric"
    return "spectral-exact"


def _first_upcrossing(x):
    """Index ``i`` of the first ``x[i] < 0 <= x[i+1]``, or ``None``."""
    hits = np.nonzero((x[:-1] < 0) & (x[1:] >= 0))[0]
    return int(hits[0]) if hits.size else None


def find_inflection(model_or_spectrum, params: ThermalParams | None = None, window=None,
                    n_scan: int = 200, max_doublings: int = 64) -> InflectionResult:
    """Locate ``t0``, the first maximum of ``|Sdot/S|`` after ``t = 0``, and return
    ``eta = |Sdot/S|(t0)`` with the analyticity bound.

    Without ``window`` the scan starts at a fraction of the model's intrinsic
    time scale and doubles until ``d/dt(Sdot/S)`` changes sign; the first SFF
    minimum ends the search.  With ``window=(a, b)`` a single 2000-point scan
    over that interval is used.
    """
    model = as_model(model_or_spectrum, params)
    params = model.params
    bound = analyticity_bound(params)
    method = _method(model)
    if model.variance0() == 0.0:
        # constant SFF (single level): nothing decays
        return InflectionResult(math.inf, 0.0, bound, 0.0, method, params.beta)

    def l2(t):
        return float(model.log_derivs(np.array([t]))[2][0])

    def scan(grid):
        s, l1, d = model.log_derivs(grid)
        i = _first_upcrossing(d)
        dip = _first_upcrossing(l1)
        if dip is not None and (i is None or dip < i):
            raise SearchFailure(f"SFF minimum at t~{grid[dip]:g} precedes any inflection", (grid, d))
        if np.any(s[: (i if i is not None else len(s))] <= 0):
            raise SearchFailure("SFF vanishes before the inflection point", (grid, d))
        return i

    bracket = None
    if window is not None:
        a, b = map(float, window)
        if not 0 <= a < b:
            raise InvalidArgument("window must satisfy 0 <= a < b")
        grid = np.linspace(a, b, 2000)
        i = scan(grid)
        if i is None:
            raise SearchFailure(f"no inflection in window [{a:g}, {b:g}]", (grid, model.log_derivs(grid)[2]))
        bracket = (grid[i], grid[i + 1])
    else:
        lo, hi = 0.0, 1e-3 * model.time_scale()
        for _ in range(max_doublings):
            grid = np.linspace(lo, hi, n_scan + 1)
            i = scan(grid)
            if i is not None:
                bracket = (grid[i], grid[i + 1])
                break
            lo, hi = hi, 2.0 * hi
        if bracket is None:
            raise SearchFailure(f"no inflection found up to t={hi:g}")
    a, b = bracket
    t0 = find_root_bracketed(l2, a, b, tol=1e-15 * max(b, 1e-300))
    eta = abs(float(model.log_derivs(np.array([t0]))[1][0]))
    return InflectionResult(t0, eta, bound, eta / bound if math.isfinite(bound) else 0.0, method, params.beta)


def eta_scan(model_factory, betas, **kwargs) -> list[InflectionResult]:
    """``find_inflection(model_factory(beta))`` for every beta, in order."""
    return ordered_map(lambda b: find_inflection(model_factory(float(b)), **kwargs), list(betas))
