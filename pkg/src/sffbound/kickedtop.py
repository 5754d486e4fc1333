"""Generalized quantum kicked top: Floquet operator, pseudo-frequencies and
the parameter-window average of the pseudo-SFF."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import InvalidArgument, NumericalFailure
from .numerics import unitary_eigenphases
from .parallel import ordered_map
from .sff.models import EnsembleModel
from .sff.series import SFFSeries
from .spectra import Spectrum, ThermalParams, realization_rng

CHAOTIC = {"p": (1.1, 1.0, 1.0), "k": (4.0, 0.0, 10.0)}
REGULAR = {"p": (0.0, 0.0, 10.0), "k": (0.0, 0.0, 1.0)}


@dataclass(frozen=True)
class KickedTopConfig:
    spin: float
    p: tuple = (0.0, 0.0, 0.0)
    k: tuple = (0.0, 0.0, 0.0)
    tau_p: float = 1.0
    window_frac: float = 0.05
    n_av: int = 1
    seed: int = 0
    hbar: float = 1.0
    sampling: str = "random"
    branch: str = "positive"

    def __post_init__(self):
        _check_spin(self.spin)
        if len(self.p) != 3 or len(self.k) != 3:
            raise InvalidArgument("p and k must be 3-vectors")
        object.__setattr__(self, "p", tuple(float(x) for x in self.p))
        object.__setattr__(self, "k", tuple(float(x) for x in self.k))
        if self.n_av < 1:
            raise InvalidArgument("n_av must be >= 1")
        if not 0 <= self.window_frac < 1:
            raise InvalidArgument("window_frac must lie in [0, 1)")
        if not self.tau_p > 0:
            raise InvalidArgument("tau_p must be > 0")
        if self.sampling not in ("random", "stratified"):
            raise InvalidArgument(f"unknown sampling {self.sampling!r}")

    @property
    def dim(self) -> int:
        return int(round(2 * self.spin)) + 1


def _check_spin(spin):
    if not spin > 0 or abs(2 * spin - round(2 * spin)) > 1e-12:
        raise InvalidArgument(f"spin must be a positive half-integer, got {spin}")


def spin_operators(spin: float, hbar: float = 1.0):
    """``(S_x, S_y, S_z)`` in the ``S_z`` eigenbasis ordered ``m = S, S-1, ..., -S``."""
    _check_spin(spin)
    m = spin - np.arange(int(round(2 * spin)) + 1)
    # <m+1|S_+|m> = hbar sqrt(S(S+1) - m(m+1))
    ladder = hbar * np.sqrt(spin * (spin + 1) - m[1:] * (m[1:] + 1))
    s_plus = np.diag(ladder, 1).astype(np.complex128)
    s_minus = s_plus.conj().T
    sx = 0.5 * (s_plus + s_minus)
    sy = -0.5j * (s_plus - s_minus)
    sz = np.diag(hbar * m).astype(np.complex128)
    return sx, sy, sz


@lru_cache(maxsize=16)
def _eigenbases(spin: float):
    """Eigenvectors of ``S_x`` and ``S_y`` (unit hbar) with their exact eigenvalues ``m``."""
    sx, sy, _ = spin_operators(spin, 1.0)
    m_sorted = np.arange(int(round(2 * spin)) + 1) - spin
    out = []
    for op in (sx, sy):
        vals, vecs = np.linalg.eigh(op)
        if np.max(np.abs(vals - m_sorted)) > 1e-8:
            raise NumericalFailure("spin eigenvalues deviate from m = -S..S")
        vecs.setflags(write=False)
        out.append(vecs)
    return m_sorted, out[0], out[1]


def _kick_phases(m, p, k, dim):
    return p * m + k * m * m / dim


def axis_unitaries(spin: float, p, k):
    """``U_a = exp[-i (p_a S_a/hbar + k_a S_a^2/((2S+1) hbar^2))]`` for ``a = x, y, z``.

    Each exponent is a function of ``S_a`` alone, so it is exponentiated in the
    eigenbasis of ``S_a`` with exact eigenvalues ``hbar m``.
    """
    dim = int(round(2 * spin)) + 1
    m_sorted, vx, vy = _eigenbases(spin)
    ux = (vx * np.exp(-1j * _kick_phases(m_sorted, p[0], k[0], dim))) @ vx.conj().T
    uy = (vy * np.exp(-1j * _kick_phases(m_sorted, p[1], k[1], dim))) @ vy.conj().T
    m_z = spin - np.arange(dim)
    uz = np.diag(np.exp(-1j * _kick_phases(m_z, p[2], k[2], dim)))
    return ux, uy, uz


def floquet_operator(config: KickedTopConfig, kz_value: float | None = None) -> np.ndarray:
    """``U = U_z U_y U_x`` with ``k_z`` replaced by ``kz_value``."""
    k = list(config.k)
    if kz_value is not None:
        k[2] = float(kz_value)
    ux, uy, uz = axis_unitaries(config.spin, config.p, k)
    u = uz @ uy @ ux
    if np.max(np.abs(u.conj().T @ u - np.eye(config.dim))) > 1e-10:
        raise NumericalFailure("Floquet operator failed the unitarity check")
    return u


def kz_values(config: KickedTopConfig) -> np.ndarray:
    """``n_av`` kick strengths from the window ``(k_z - dk/2, k_z + dk/2)``, ``dk = window_frac*k_z``."""
    kz = config.k[2]
    width = config.window_frac * abs(kz)
    if config.sampling == "stratified":
        return kz - width / 2 + width * (np.arange(config.n_av) + 0.5) / config.n_av
    return np.array([realization_rng(config.seed, i).uniform(kz - width / 2, kz + width / 2)
                     for i in range(config.n_av)])


def pseudo_frequencies(config: KickedTopConfig, kz_value: float | None = None) -> np.ndarray:
    return unitary_eigenphases(floquet_operator(config, kz_value), config.tau_p, config.branch)


def pseudo_spectrum(config: KickedTopConfig, kz_value: float | None = None) -> Spectrum:
    """Pseudo-energies ``hbar omega_j``; their SFF is the pseudo-SFF."""
    om = pseudo_frequencies(config, kz_value)
    kz = config.k[2] if kz_value is None else kz_value
    return Spectrum(config.hbar * om, f"kicked-top(S={config.spin:g}, kz={kz:.6g})")


def kicked_top_ensemble(config: KickedTopConfig) -> list[Spectrum]:
    return ordered_map(lambda kz: pseudo_spectrum(config, kz), kz_values(config))


def averaged_pseudo_sff(config: KickedTopConfig, beta: float, times, spectra=None,
                        return_realizations=False):
    """Arithmetic mean over the ``k_z`` window of the pseudo-SFF at inverse temperature ``beta``."""
    if not beta > 0:
        raise InvalidArgument("beta must be > 0")
    if spectra is None:
        spectra = kicked_top_ensemble(config)
    params = ThermalParams(beta, config.hbar)
    model = EnsembleModel(spectra, params, mode="exact")
    times = np.asarray(times, dtype=np.float64)
    s, l1, _ = model.log_derivs(times)
    meta = {"model": "kicked-top", "spin": config.spin, "n_av": config.n_av, "branch": config.branch}
    mean = SFFSeries(times, s, l1, "kicked-top-average", meta)
    if not return_realizations:
        return mean
    rows = np.array([m.sff(times) for m in model.members])
    return mean, rows
