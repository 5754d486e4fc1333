"""Form factors from spectra: real time, complex time, the modified SFF,
ensemble averages and the j-th neighbour decomposition."""
from __future__ import annotations

import numpy as np

from ..errors import DomainError, InvalidArgument
from ..numerics import log_partition
from ..spectra import Spectrum, ThermalParams
from .models import EnsembleModel, SFFModel, SpectrumModel, as_model
from .series import NeighborDecomposition, SFFSeries


def _scalar_or_array(value, like):
    return value if np.ndim(like) else value.reshape(()).item()


def sff(spectrum, params: ThermalParams, t):
    """``|Z_{beta + i t/hbar}|^2 / Z_beta^2``."""
    model = as_model(spectrum, params)
    out = model.sff(np.atleast_1d(np.asarray(t, dtype=np.float64)).ravel())
    return _scalar_or_array(out.reshape(np.shape(t)), t)


def sff_series(model_or_spectrum, params: ThermalParams | None, times, label="") -> SFFSeries:
    model = as_model(model_or_spectrum, params)
    s, l1, _ = model.log_derivs(times)
    return SFFSeries(times, s, l1, label or model.label)


def _log_z(model: SFFModel, z):
    return model.log_z(z)


def _check_strip(model: SFFModel, params: ThermalParams, tau, closed: bool):
    tau = np.asarray(tau, dtype=np.float64)
    lim = params.beta * params.hbar
    if model.finite:
        return
    if np.any(np.abs(tau) >= lim):
        raise DomainError(f"|tau| must be < beta*hbar = {lim:g} for an unbounded spectrum")


def _complex_numerator(model, params, t, tau):
    """``log(Z_{b - tau/h + i t/h} Z_{b + tau/h - i t/h})`` broadcast over ``t, tau``."""
    hbar = params.hbar
    t, tau = np.broadcast_arrays(np.asarray(t, dtype=np.float64), np.asarray(tau, dtype=np.float64))
    z1 = params.beta - tau / hbar + 1j * t / hbar
    z2 = params.beta + tau / hbar - 1j * t / hbar
    return _log_z(model, z1) + _log_z(model, z2), tau


def sff_complex(spectrum, params: ThermalParams, t, tau):
    """Complex-time continuation ``Z_{b-tau/h+it/h} Z_{b+tau/h-it/h} / Z_b^2``."""
    model = as_model(spectrum, params)
    _check_strip(model, params, tau, closed=False)
    lognum, _ = _complex_numerator(model, params, t, tau)
    logden = 2.0 * _log_z(model, np.array([params.beta + 0j]))[0].real
    out = np.exp(lognum - logden)
    return out if np.ndim(out) else complex(out)


def modified_sff(spectrum, params: ThermalParams, t, tau):
    """``1 - Z_{b-tau/h+it/h} Z_{b+tau/h-it/h} / (Z_{b-tau/h} Z_{b+tau/h})``."""
    model = as_model(spectrum, params)
    _check_strip(model, params, tau, closed=False)
    lognum, tau_b = _complex_numerator(model, params, t, tau)
    b_minus = params.beta - tau_b / params.hbar
    b_plus = params.beta + tau_b / params.hbar
    lo = min(b_minus.min(initial=np.inf), b_plus.min(initial=np.inf))
    if lo < 0 or (not model.finite and lo <= 0):
        raise DomainError("denominator inverse temperatures beta -+ tau/hbar must be positive")
    logden = _log_z(model, b_minus + 0j) + _log_z(model, b_plus + 0j)
    out = 1.0 - np.exp(lognum - logden.real)
    return out if np.ndim(out) else complex(out)


def ensemble_sff(spectra, params: ThermalParams, times, mode="exact") -> SFFSeries:
    """Exact (average of ratios) or annealed (ratio of averages) ensemble SFF."""
    if not spectra:
        raise InvalidArgument("ensemble needs at least one spectrum")
    model = EnsembleModel(list(spectra), params, mode=mode)
    s, l1, _ = model.log_derivs(times)
    return SFFSeries(times, s, l1, model.label, {"mode": mode, "n_realizations": len(spectra)})


def neighbor_decomposition(spectrum: Spectrum, params: ThermalParams, times, j_max: int) -> NeighborDecomposition:
    """Split the SFF into the diagonal term and contributions of j-th level neighbours."""
    e = spectrum.energies
    n = e.size
    if int(j_max) != j_max or not 1 <= j_max <= n - 1:
        raise InvalidArgument(f"j_max must lie in [1, {n - 1}]")
    times = np.asarray(times, dtype=np.float64)
    w = np.exp(-params.beta * (e - e[0]))
    z = w.sum()
    diag = float(np.dot(w, w) / z**2)
    rows = np.empty((int(j_max), times.size))
    for j in range(1, int(j_max) + 1):
        gaps = e[j:] - e[:-j]
        pair_w = w[:-j] * w[j:]
        rows[j - 1] = 2.0 / z**2 * (np.cos(np.multiply.outer(times, gaps) / params.hbar) @ pair_w)
    return NeighborDecomposition(times, diag, rows)


def ensemble_neighbor_decomposition(spectra, params, times, j_max) -> NeighborDecomposition:
    """Realization average (exact mode) of :func:`neighbor_decomposition`."""
    parts = [neighbor_decomposition(s, params, times, j_max) for s in spectra]
    return NeighborDecomposition(
        np.asarray(times, dtype=np.float64),
        float(np.mean([p.diagonal for p in parts])),
        np.mean([p.contributions for p in parts], axis=0),
    )
