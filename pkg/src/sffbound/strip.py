"""Analyticity strip: conformal map to the unit disk, scans of the modified
SFF over the strip, and Schwarz-Pick sampling along the real line."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgument
from .sff.models import SFFModel, as_model
from .sff.spectral import modified_sff
from .spectra import ThermalParams

VIOLATION_TOL = 1e-9
# open-strip edge for unbounded spectra, where Z_{beta - tau/hbar} diverges at |tau| = beta*hbar
EDGE_EPS = 1e-6


def conformal_map(t, tau, params: ThermalParams):
    """``(e^w - 1)/(e^w + 1) = tanh(w/2)`` with ``w = pi (t + i tau)/(2 beta hbar)``.

    ``tanh`` saturates to ``+-1`` for large ``|t|`` instead of overflowing.
    """
    if not params.beta > 0:
        raise InvalidArgument("the strip needs beta > 0")
    w = math.pi * (np.asarray(t) + 1j * np.asarray(tau)) / (2.0 * params.beta * params.hbar)
    out = np.tanh(w / 2.0)
    return out if np.ndim(out) else complex(out)


@dataclass(frozen=True)
class StripScan:
    t_grid: np.ndarray
    tau_grid: np.ndarray
    magnitudes: np.ndarray  # shape (len(tau_grid), len(t_grid))
    d: float
    beta_hbar: float
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        for g in (self.t_grid, self.tau_grid):
            if np.any(np.diff(g) <= 0):
                raise InvalidArgument("scan grids must be strictly increasing")
        if self.magnitudes.shape != (self.tau_grid.size, self.t_grid.size):
            raise InvalidArgument("magnitudes must have shape (len(tau), len(t))")

    def _max(self, mask):
        vals = self.magnitudes[mask]
        return float(vals.max()) if vals.size else float("nan")

    @property
    def renormalized_rows(self):
        # small slack so that a grid row placed exactly on beta*hbar/d counts as inside
        return np.abs(self.tau_grid) <= self.beta_hbar / self.d * (1 + 1e-12)

    @property
    def max_full_strip(self) -> float:
        return self._max(slice(None))

    @property
    def max_renormalized(self) -> float:
        return self._max(self.renormalized_rows)

    @property
    def violations_count(self) -> int:
        return int(np.count_nonzero(self.magnitudes > 1 + VIOLATION_TOL))

    def summary(self) -> dict:
        return {
            "max_full_strip": self.max_full_strip,
            "max_renormalized": self.max_renormalized,
            "violations_count": self.violations_count,
            "violations_renormalized": int(np.count_nonzero(
                self.magnitudes[self.renormalized_rows] > 1 + VIOLATION_TOL)),
            "d": self.d,
            "beta_hbar": self.beta_hbar,
        }

    def long_rows(self):
        tt, uu = np.meshgrid(self.t_grid, self.tau_grid)
        return np.column_stack([tt.ravel(), uu.ravel(), self.magnitudes.ravel()])


def strip_scan(model, params: ThermalParams, t_range=None, tau_range=None,
               resolution=(301, 201), d=None) -> StripScan:
    """``|modified_sff|`` on a ``t x tau`` grid covering the strip ``|tau| <= beta hbar``.

    Finite spectra are scanned on the closed strip. For unbounded spectra the
    two edge rows are pulled in to ``(1 - EDGE_EPS) beta hbar``.
    """
    n_t, n_tau = resolution
    if n_t < 2 or n_tau < 2:
        raise InvalidArgument("resolution must be at least 2 per axis")
    if not params.beta > 0:
        raise InvalidArgument("the strip needs beta > 0")
    model = as_model(model, params)
    bh = params.beta * params.hbar
    d = float(params.d if d is None else d)
    if t_range is None:
        t_range = (0.0, 2 * math.pi * params.hbar / model.spacing_hint())
    if tau_range is None:
        tau_range = (-bh, bh)
    t_grid = np.linspace(*t_range, n_t)
    tau_grid = np.linspace(*tau_range, n_tau)
    if not model.finite:
        lim = bh * (1 - EDGE_EPS)
        tau_grid = np.clip(tau_grid, -lim, lim)
        if np.any(np.diff(tau_grid) <= 0):
            raise InvalidArgument("tau_range collapses after clipping to the open strip")
    mags = np.abs(modified_sff(model, params, t_grid[None, :], tau_grid[:, None]))
    return StripScan(t_grid, tau_grid, mags, d, bh, {"model": model.label})


@dataclass(frozen=True)
class SchwarzPickSamples:
    t: np.ndarray
    lhs: np.ndarray
    rhs: float
    excluded: np.ndarray  # times where S vanishes and the left side is undefined

    @property
    def violations(self) -> int:
        return int(np.count_nonzero(self.lhs > self.rhs * (1 + VIOLATION_TOL)))

    def pairs(self):
        return [(float(a), self.rhs) for a in self.lhs]


def schwarz_pick_samples(model, params: ThermalParams, t_samples, d=None,
                         s_floor=1e-300) -> SchwarzPickSamples:
    """Real-line Schwarz-Pick check for ``f = 1 - S``.

    ``lhs = |df/dt|/(1 - f^2) = |Sdot|/(S(2 - S))`` from exact derivatives,
    ``rhs = d pi/(4 beta hbar)``.
    """
    if not params.beta > 0:
        raise InvalidArgument("Schwarz-Pick sampling needs beta > 0")
    model: SFFModel = as_model(model, params)
    d = float(params.d if d is None else d)
    t = np.asarray(t_samples, dtype=np.float64).ravel()
    s, l1, _ = model.log_derivs(t)
    ok = np.isfinite(l1) & (s > s_floor)
    lhs = np.abs(l1[ok]) / (2.0 - s[ok])
    rhs = d * math.pi / (4.0 * params.beta * params.hbar)
    return SchwarzPickSamples(t[ok], lhs, rhs, t[~ok])
