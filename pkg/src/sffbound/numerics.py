"""Shared numerical kernels: overflow-safe thermal sums at complex inverse
temperature, dense Hermitian/unitary eigensolvers, generalized Laguerre
polynomials and bracketed root finding."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import _backend
from .errors import BracketError, InvalidArgument, NumericalFailure

laguerre_table = _backend.laguerre_table

# generic mixing coefficient for jointly diagonalizing commuting cos/sin parts
_MIX = 0.6180339887498949


@dataclass(frozen=True)
class StabilizedSum:
    """``value = mantissa * exp(log_scale)`` with ``1 <= |mantissa| < e`` (or mantissa 0)."""

    log_scale: float
    mantissa: complex

    @classmethod
    def from_log(cls, log_value: complex) -> StabilizedSum:
        if log_value == -math.inf or (isinstance(log_value, complex) and log_value.real == -math.inf):
            return cls(0.0, 0j)
        k = math.floor(log_value.real)
        return cls(float(k), cmath.exp(complex(log_value.real - k, log_value.imag)))

    @property
    def value(self) -> complex:
        return self.mantissa * math.exp(self.log_scale)

    def log(self) -> complex:
        return self.log_scale + cmath.log(self.mantissa)

    def __truediv__(self, other: StabilizedSum) -> complex:
        return cmath.exp(self.log() - other.log())


def _reference_energy(energies: np.ndarray, re_beta: float) -> float:
    # largest Boltzmann weight sits at the bottom (re>=0) or top (re<0) of the spectrum
    return float(energies[0] if re_beta >= 0 else energies[-1])


def log_partition(energies, beta_complex) -> np.ndarray:
    """``log sum_n exp(-z E_n)`` for an array of complex ``z`` (principal branch of the
    mantissa log)."""
    e = np.asarray(energies, dtype=np.float64)
    z = np.atleast_1d(np.asarray(beta_complex, dtype=np.complex128))
    out = np.empty(z.shape, dtype=np.complex128)
    flat_z = z.ravel()
    flat_out = out.ravel()
    re_parts = flat_z.real
    for re in np.unique(re_parts):
        sel = np.nonzero(re_parts == re)[0]
        e_ref = _reference_energy(e, re)
        shifted = e - e_ref
        w = np.exp(-re * shifted)
        sums = _backend.thermal_sums(shifted, w, flat_z.imag[sel].copy())[0]
        with np.errstate(divide="ignore"):
            flat_out[sel] = -flat_z[sel] * e_ref + np.log(sums)
    return flat_out.reshape(z.shape)


def partition_function(spectrum, beta_complex) -> StabilizedSum:
    """``Z = sum_n exp(-beta E_n)`` at complex ``beta`` as a :class:`StabilizedSum`."""
    energies = getattr(spectrum, "energies", spectrum)
    logz = complex(log_partition(energies, complex(beta_complex))[0])
    return StabilizedSum.from_log(logz)


def hermitian_eigenvalues(matrix, return_residuals=False):
    """Ascending eigenvalues of a dense Hermitian matrix.

    With ``return_residuals`` the per-pair residuals ``|H v - lambda v|`` are
    returned too; a residual above ``1e-10 |H|`` raises :class:`NumericalFailure`.
    """
    h = np.asarray(matrix)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise InvalidArgument("matrix must be square")
    scale = float(np.max(np.abs(h))) if h.size else 0.0
    if np.max(np.abs(h - h.conj().T), initial=0.0) > 1e-12 * max(scale, 1e-300):
        raise InvalidArgument("matrix is not Hermitian")
    try:
        if not return_residuals:
            return np.linalg.eigvalsh(h)
        vals, vecs = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"Hermitian eigensolver did not converge: {exc}") from exc
    res = np.linalg.norm(h @ vecs - vecs * vals, axis=0)
    norm = np.linalg.norm(h, 2) if h.size else 0.0
    if np.any(res > 1e-10 * max(norm, 1e-300)):
        raise NumericalFailure(f"eigen-residual {res.max():.3e} exceeds 1e-10*|H|")
    return vals, res


def unitary_eigen(matrix, cluster_tol=1e-6):
    """Eigenvalues and eigenvectors of a unitary matrix via its Hermitian parts.

    ``(U + U^dag)/2`` is diagonalized first; eigenvalue clusters closer than
    ``cluster_tol`` are split using the commuting ``(U - U^dag)/(2i)``.
    """
    u = np.asarray(matrix, dtype=np.complex128)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise InvalidArgument("matrix must be square")
    n = u.shape[0]
    if np.max(np.abs(u.conj().T @ u - np.eye(n)), initial=0.0) > 1e-10:
        raise InvalidArgument("matrix is not unitary to 1e-10")
    a = 0.5 * (u + u.conj().T)
    b = -0.5j * (u - u.conj().T)
    c, v = np.linalg.eigh(a)
    breaks = np.nonzero(np.diff(c) > cluster_tol)[0] + 1
    for idx in np.split(np.arange(n), breaks):
        if idx.size < 2:
            continue
        vg = v[:, idx]
        sub = vg.conj().T @ (a + _MIX * b) @ vg
        _, w = np.linalg.eigh(0.5 * (sub + sub.conj().T))
        v[:, idx] = vg @ w
    lam = np.einsum("ij,ij->j", v.conj(), u @ v)
    lam /= np.abs(lam)
    res = np.linalg.norm(u @ v - v * lam, axis=0)
    if np.any(res > 1e-9):
        raise NumericalFailure(f"unitary eigen-residual {res.max():.3e} exceeds 1e-9")
    return lam, v


def unitary_eigenphases(matrix, tau_p=1.0, branch="positive"):
    """Pseudo-frequencies ``omega_j`` with eigenvalues ``exp(-i omega_j tau_p)``, ascending.

    ``branch="positive"`` puts ``omega_j tau_p`` in ``[0, 2 pi)``; ``"symmetric"`` in
    ``(-pi, pi]``.
    """
    if not tau_p > 0:
        raise InvalidArgument("tau_p must be > 0")
    lam, _ = unitary_eigen(matrix)
    theta = -np.angle(lam)  # (-pi, pi]
    if branch == "positive":
        theta = np.mod(theta, 2 * np.pi)
        theta[theta >= 2 * np.pi] = 0.0
    elif branch == "symmetric":
        theta[theta <= -np.pi] += 2 * np.pi
    else:
        raise InvalidArgument(f"unknown branch {branch!r}")
    return np.sort(theta / tau_p)


def laguerre(n: int, alpha, z) -> complex:
    """``L_n^alpha(z)`` by the three-term recurrence in ``n``."""
    if int(n) != n or n < 0:
        raise InvalidArgument("Laguerre degree must be a nonnegative integer")
    z = complex(z)
    prev, cur = 1.0 + 0j, 1.0 + alpha - z
    if n == 0:
        return prev
    for k in range(1, int(n)):
        prev, cur = cur, ((2 * k + 1 + alpha - z) * cur - (k + alpha) * prev) / (k + 1)
    return cur


def find_root_bracketed(f, a: float, b: float, tol: float = 1e-12) -> float:
    """Root of ``f`` in ``[a, b]`` by Brent's method (bisection-safeguarded)."""
    fa, fb = f(a), f(b)
    if fa == 0:
        return a
    if fb == 0:
        return b
    if not (np.isfinite(fa) and np.isfinite(fb)) or np.sign(fa) == np.sign(fb):
        raise BracketError(f"no sign change on [{a}, {b}]: f(a)={fa}, f(b)={fb}")
    rtol = max(tol, 4 * np.finfo(float).eps)
    return brentq(f, a, b, xtol=tol, rtol=rtol, maxiter=500)
