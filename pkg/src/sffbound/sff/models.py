"""SFF models evaluated with exact time derivatives.

Every model returns, on a time grid, the triple ``(S, Sdot/S, d/dt(Sdot/S))``.
The inflection search, the bound checks and the figure recipes only talk to
this interface, so a spectrum, a product of oscillators, an ensemble average
and the annealed GUE expression are interchangeable.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.special import gammaln

from .. import _backend
from ..errors import DomainError, InvalidArgument, SingularPointError
from ..numerics import laguerre_table, log_partition
from ..spectra import Spectrum, ThermalParams


class SFFModel:
    params: ThermalParams
    finite = True
    label = ""

    def log_derivs(self, t):
        """Return ``(S, Sdot/S, d/dt(Sdot/S))`` arrays for the times ``t``."""
        raise NotImplementedError

    def sff(self, t):
        return self.log_derivs(t)[0]

    def raw_derivs(self, t):
        s, l1, l2 = self.log_derivs(t)
        return s, s * l1, s * (l1 * l1 + l2)

    def variance0(self) -> float:
        """Thermal energy variance, read off ``d/dt(Sdot/S) = -2 Var/hbar^2`` at ``t = 0``."""
        l2 = self.log_derivs(np.zeros(1))[2][0]
        return max(0.0, -0.5 * l2 * self.params.hbar**2)

    def spacing_hint(self) -> float:
        """Typical level spacing (energy); sets the time scale for scans."""
        raise NotImplementedError

    def time_scale(self) -> float:
        return self.params.hbar / (math.sqrt(self.variance0()) + self.spacing_hint())

    def log_z(self, z):
        raise NotImplementedError(f"{type(self).__name__} has no complex partition function")


class SpectrumModel(SFFModel):
    """Exact spectral sums over a finite spectrum."""

    def __init__(self, spectrum: Spectrum, params: ThermalParams):
        self.spectrum = spectrum
        self.params = params
        self.label = spectrum.label
        e = spectrum.energies
        w = np.exp(-params.beta * (e - e[0]))
        self._weights = w
        self._z_beta = w.sum()
        mean = np.dot(w, e - e[0]) / self._z_beta
        self._centered = e - e[0] - mean

    def sums(self, t):
        t = np.atleast_1d(np.asarray(t, dtype=np.float64))
        return _backend.thermal_sums(self._centered, self._weights, t / self.params.hbar)

    def log_derivs(self, t):
        z0, z1, z2 = self.sums(t)
        hbar = self.params.hbar
        s = (z0.real**2 + z0.imag**2) / self._z_beta**2
        # the kernel and w.sum() may round differently; S(0) = 1 by definition
        s[np.asarray(t).ravel() == 0] = 1.0
        with np.errstate(divide="ignore", invalid="ignore"):
            m1 = z1 / z0
            var = z2 / z0 - m1 * m1
        return s, 2.0 / hbar * m1.imag, -2.0 / hbar**2 * var.real

    def check_regular(self, t, floor=1e-150):
        t = np.atleast_1d(t)
        s = self.sff(t)
        if np.any(s <= floor):
            bad = t[np.argmin(s)]
            raise SingularPointError(f"<U_t> vanishes at t={bad:g}; log-derivative undefined")

    def spacing_hint(self):
        e = self.spectrum.energies
        if e.size < 2 or e[-1] == e[0]:
            return math.sqrt(self.variance0()) or 1.0
        return (e[-1] - e[0]) / (e.size - 1)

    def log_z(self, z):
        return log_partition(self.spectrum.energies, z)

    @property
    def plateau(self) -> float:
        """Long-time average of the SFF; exactly degenerate levels are grouped."""
        _, inverse = np.unique(self.spectrum.energies, return_inverse=True)
        grouped = np.bincount(inverse, weights=self._weights)
        return float(np.sum(grouped**2) / self._z_beta**2)


class ProductHOModel(SFFModel):
    """Closed-form SFF of independent oscillators at the given frequencies.

    One frequency is the harmonic oscillator, ``[omega]*N`` is ``N`` copies,
    ``cs_frequencies(omega, N)`` the Calogero-Sutherland model.
    """

    finite = False

    def __init__(self, frequencies, params: ThermalParams, label="product-ho"):
        self.frequencies = np.asarray(frequencies, dtype=np.float64)
        if self.frequencies.size == 0 or np.any(self.frequencies <= 0):
            raise InvalidArgument("frequencies must be positive")
        if params.beta <= 0:
            raise InvalidArgument("oscillator models need beta > 0 (Z diverges at beta = 0)")
        self.params = params
        self.label = label
        # q = exp(-beta hbar omega) keeps every factor bounded
        self._q = np.exp(-params.beta * params.hbar * self.frequencies)

    def log_derivs(self, t):
        t = np.atleast_1d(np.asarray(t, dtype=np.float64))
        om = self.frequencies[:, None]
        q = self._q[:, None]
        c = np.cos(om * t)
        sn = np.sin(om * t)
        # 1 - 2q cos + q^2 written so that S(0) = 1 exactly
        half = 4.0 * q * np.sin(0.5 * om * t) ** 2
        den = (1.0 - q) ** 2 + half
        log_s = -np.sum(np.log1p(half / (1.0 - q) ** 2), axis=0)
        l1 = np.sum(-2.0 * om * q * sn / den, axis=0)
        l2 = np.sum(-2.0 * om**2 * q * ((1.0 + q * q) * c - 2.0 * q) / den**2, axis=0)
        return np.exp(log_s), l1, l2

    def variance0(self):
        q = self._q
        return float(np.sum((self.params.hbar * self.frequencies) ** 2 * q / (1.0 - q) ** 2))

    def spacing_hint(self):
        return self.params.hbar * float(self.frequencies.min())

    def log_z(self, z):
        z = np.asarray(z, dtype=np.complex128)
        if np.any(z.real <= 0):
            raise DomainError("oscillator partition function needs Re(beta) > 0")
        x = z[..., None] * (self.params.hbar * self.frequencies)
        return np.sum(-0.5 * x - np.log1p(-np.exp(-x)), axis=-1)


class EnsembleModel(SFFModel):
    """Average over spectra.

    ``mode="exact"`` averages ``|Z_{beta+it}|^2 / Z_beta^2`` realization by
    realization; ``mode="annealed"`` averages numerator and denominator
    separately, i.e. weights realization ``k`` by ``Z_beta,k^2``.
    """

    def __init__(self, spectra, params: ThermalParams, mode="exact"):
        if not spectra:
            raise InvalidArgument("ensemble needs at least one spectrum")
        if mode not in ("exact", "annealed"):
            raise InvalidArgument(f"unknown averaging mode {mode!r}")
        self.members = [SpectrumModel(s, params) for s in spectra]
        self.params = params
        self.mode = mode
        self.label = f"ensemble({len(spectra)}, {mode})"
        if mode == "exact":
            u = np.ones(len(spectra))
        else:
            logz = np.array([log_partition(s.energies, params.beta)[0].real for s in spectra])
            u = np.exp(2.0 * (logz - logz.max()))
        self._u = u / u.sum()

    def raw_derivs(self, t):
        t = np.atleast_1d(np.asarray(t, dtype=np.float64))
        s = np.zeros(t.shape)
        ds = np.zeros(t.shape)
        d2s = np.zeros(t.shape)
        total = 0.0
        for u, m in zip(self._u, self.members):
            sk, dk, d2k = SFFModel.raw_derivs(m, t)
            s += u * sk
            ds += u * dk
            d2s += u * d2k
            total += u
        # dividing by the accumulated weight keeps the mean of ones exactly one
        return s / total, ds / total, d2s / total

    def log_derivs(self, t):
        s, ds, d2s = self.raw_derivs(t)
        with np.errstate(divide="ignore", invalid="ignore"):
            l1 = ds / s
            return s, l1, d2s / s - l1 * l1

    def spacing_hint(self):
        return float(np.mean([m.spacing_hint() for m in self.members]))

    @property
    def plateau(self) -> float:
        # the mode is carried by the realization weights
        return float(sum(u * m.plateau for u, m in zip(self._u, self.members)))


class GUEAnnealedModel(SFFModel):
    """Annealed GUE form factor from the averaged partition function and the
    connected two-level term, with analytic time derivatives.

    ``sigma`` is the matrix-element standard deviation of the sampled ensemble
    (diagonal N(0, sigma^2), off-diagonal quadratures N(0, sigma^2/2)); the
    Laguerre expressions are written for ``sigma = 1/sqrt(2)``, so they are
    evaluated at ``sqrt(2)*sigma*(beta + i t/hbar)``.

    ``denominator="z_squared_mean"`` divides by ``<Z_beta^2>`` so that the
    value at ``t = 0`` is exactly 1; ``"mean_z_squared"`` divides by
    ``<Z_beta>^2``.  The two differ by a constant factor only.
    """

    _CHUNK = 256

    def __init__(self, dim: int, params: ThermalParams, sigma: float = 1.0,
                 denominator: str = "z_squared_mean"):
        if int(dim) != dim or dim < 1:
            raise InvalidArgument("GUE dim must be a positive integer")
        if not sigma > 0:
            raise InvalidArgument("sigma must be > 0")
        if denominator not in ("z_squared_mean", "mean_z_squared"):
            raise InvalidArgument(f"unknown denominator {denominator!r}")
        self.dim = int(dim)
        self.params = params
        self.sigma = float(sigma)
        self.scale = math.sqrt(2.0) * sigma
        self.label = f"gue-annealed(dim={dim})"
        n = self.dim
        k = np.arange(n)[:, None]
        p = np.arange(n)[None, :]
        valid = (k + p) <= n - 1
        self._mask = valid
        self._mult = np.where(k == 0, 1.0, 2.0) * valid
        kk = np.broadcast_to(k, (n, n)).astype(float)
        pp = np.broadcast_to(p, (n, n)).astype(float)
        self._logc = 0.5 * (gammaln(pp + 1) - gammaln(pp + kk + 1) - kk * math.log(2.0))
        self._k = kk
        beta = params.beta
        zb2 = self._avg_z(np.array([2.0 * self.scale * beta + 0j]))[0][0].real
        self._z2beta = zb2
        num0 = self._numerator(np.zeros(1))[0][0]
        if denominator == "z_squared_mean":
            self._den = num0
        else:
            self._den = abs(self._avg_z(np.array([self.scale * beta + 0j]))[0][0]) ** 2

    def _avg_z(self, vs):
        """``<Z>`` and its first two derivatives in the scaled variable ``vs``."""
        n = self.dim
        w = -0.5 * vs * vs
        tab = laguerre_table(max(n - 1, 0), 3, w)
        lag = tab[1, n - 1]
        lw = -tab[2, n - 2] if n >= 2 else np.zeros_like(vs)
        lww = tab[3, n - 3] if n >= 3 else np.zeros_like(vs)
        lv = -vs * lw
        lvv = vs * vs * lww - lw
        g = np.exp(0.25 * vs * vs)
        f0 = g * lag
        f1 = g * (0.5 * vs * lag + lv)
        f2 = g * ((0.5 + 0.25 * vs * vs) * lag + vs * lv + lvv)
        return f0, f1, f2

    def _connected(self, vs):
        """Sums over the ``(n, m)`` matrix elements ``F`` of the connected term:
        ``sum |F|^2``, ``sum conj(F) F'`` and ``sum |F'|^2 - Re(conj(F) F'')``,
        derivatives taken in the scaled variable."""
        n = self.dim
        k = self._k[:, :, None]
        w = -0.5 * vs * vs
        tab = laguerre_table(max(n - 1, 0), n + 1, w)  # [alpha, p, t]
        a_idx = np.arange(n)
        lag = tab[a_idx[:, None], a_idx[None, :]]  # L^k_p, shape (n, n, T)
        lw = np.zeros_like(lag)
        lww = np.zeros_like(lag)
        if n >= 2:
            lw[:, 1:] = -tab[a_idx[:, None] + 1, a_idx[None, :-1]]
        if n >= 3:
            lww[:, 2:] = tab[a_idx[:, None] + 2, a_idx[None, :-2]]
        v = vs[None, None, :]
        lv = -v * lw
        lvv = v * v * lww - lw
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            pk = np.power(v, k)
            pk1 = np.where(k >= 1, k * np.power(v, np.maximum(k - 1, 0)), 0.0)
            pk2 = np.where(k >= 2, k * (k - 1) * np.power(v, np.maximum(k - 2, 0)), 0.0)
            h0 = pk * lag
            h1 = pk1 * lag + pk * lv
            h2 = pk2 * lag + 2.0 * pk1 * lv + pk * lvv
            g = np.exp(self._logc[:, :, None] + 0.25 * v * v)
            f0 = g * h0
            f1 = g * (0.5 * v * h0 + h1)
            f2 = g * ((0.5 + 0.25 * v * v) * h0 + v * h1 + h2)
        bad = ~(np.isfinite(f0) & np.isfinite(f1) & np.isfinite(f2))
        if np.any(bad):
            # only reachable where the Gaussian factor has underflowed
            f0 = np.where(bad, 0, f0)
            f1 = np.where(bad, 0, f1)
            f2 = np.where(bad, 0, f2)
        mult = self._mult[:, :, None]
        a0 = np.sum(mult * np.abs(f0) ** 2, axis=(0, 1))
        a1 = np.sum(mult * (np.conj(f0) * f1), axis=(0, 1))
        a2 = np.sum(mult * (np.abs(f1) ** 2 - (np.conj(f0) * f2).real), axis=(0, 1))
        return a0, a1, a2

    def _numerator(self, t):
        """``<|Z_{beta+it}|^2>`` and its first two time derivatives."""
        t = np.atleast_1d(np.asarray(t, dtype=np.float64))
        hbar = self.params.hbar
        rate = self.scale / hbar  # d(vs)/dt = i * rate
        out = np.empty((3, t.size))
        for start in range(0, t.size, self._CHUNK):
            tt = t[start:start + self._CHUNK]
            vs = self.scale * (self.params.beta + 1j * tt / hbar)
            z0, z1, z2 = self._avg_z(vs)
            c0, c1, c2 = self._connected(vs)
            # d/dt |F|^2 = 2 Re(conj(F) F' i rate); d2/dt2 |F|^2 = 2 rate^2 (|F'|^2 - Re(conj(F) F''))
            n0 = self._z2beta + np.abs(z0) ** 2 - c0
            n1 = 2.0 * rate * (1j * np.conj(z0) * z1).real - 2.0 * rate * (1j * c1).real
            n2 = 2.0 * rate**2 * (np.abs(z1) ** 2 - (np.conj(z0) * z2).real) - 2.0 * rate**2 * c2
            out[:, start:start + tt.size] = n0, n1, n2
        return out

    def raw_derivs(self, t):
        n0, n1, n2 = self._numerator(t)
        return n0 / self._den, n1 / self._den, n2 / self._den

    def log_derivs(self, t):
        s, ds, d2s = self.raw_derivs(t)
        l1 = ds / s
        return s, l1, d2s / s - l1 * l1

    def spacing_hint(self):
        return 4.0 * self.sigma / math.sqrt(self.dim)

    @property
    def plateau(self) -> float:
        return self._z2beta / self._den


def as_model(obj, params: ThermalParams | None = None) -> SFFModel:
    """Wrap a spectrum (or list of spectra) into a model; models pass through."""
    if isinstance(obj, SFFModel):
        return obj
    if params is None:
        raise InvalidArgument("params are required to build a model from spectra")
    if isinstance(obj, Spectrum):
        return SpectrumModel(obj, params)
    if isinstance(obj, (list, tuple)) and obj and all(isinstance(s, Spectrum) for s in obj):
        return EnsembleModel(list(obj), params)
    raise InvalidArgument(f"cannot build an SFF model from {type(obj).__name__}")
