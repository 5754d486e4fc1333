"""Averaged GUE partition function and connected two-level term.

Arguments are in the dimensionless units of the Laguerre expressions
(matrix elements with variance 1/2 on the diagonal); see
:class:`~sffbound.sff.models.GUEAnnealedModel` for the mapping to a
sampled ensemble with standard deviation ``sigma``.
"""
import cmath
import math

import numpy as np

from ..errors import InvalidArgument
from ..numerics import laguerre
from ..spectra import ThermalParams
from .models import GUEAnnealedModel


def avg_z_gue(beta_complex, dim: int) -> complex:
    """``<Z_s> = exp(s^2/4) L^1_{N-1}(-s^2/2)``."""
    if int(dim) != dim or dim < 1:
        raise InvalidArgument("dim must be a positive integer")
    s = complex(beta_complex)
    return cmath.exp(s * s / 4) * laguerre(int(dim) - 1, 1, -s * s / 2)


def gue_connected(sigma, dim: int) -> float:
    """Connected term ``g_c(s, s*)`` by the explicit double sum over ``n, m < N``."""
    if int(dim) != dim or dim < 1:
        raise InvalidArgument("dim must be a positive integer")
    s = complex(sigma)
    a = abs(s) ** 2 / 2
    arg = -s * s / 2
    total = 0.0
    for n in range(int(dim)):
        for m in range(int(dim)):
            k = abs(n - m)
            p = min(n, m)
            ratio = math.exp(math.lgamma(p + 1) - math.lgamma(p + k + 1))
            total += ratio * a**k * abs(laguerre(p, k, arg)) ** 2
    return -math.exp(((s * s + (s * s).conjugate()) / 4).real) * total


def sff_gue_annealed(beta, t, hbar=1.0, dim=2, sigma=1.0, denominator="z_squared_mean"):
    """Annealed GUE form factor ``[<Z_2b> + |<Z_{b+it}>|^2 + g_c] / denominator``
    for a sampled ensemble with matrix-element standard deviation ``sigma``."""
    model = GUEAnnealedModel(dim, ThermalParams(beta, hbar), sigma=sigma, denominator=denominator)
    out = model.sff(np.atleast_1d(t))
    return out if np.ndim(t) else float(out[0])
