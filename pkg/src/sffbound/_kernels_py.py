"""Pure numpy implementations of the inner loops.

Used when the compiled ``_kernels`` extension is unavailable, or when
``SFFBOUND_PURE_PYTHON=1`` is set.
"""
import numpy as np

# rows of (times x levels) evaluated per block; bounds peak memory
_BLOCK_ELEMENTS = 2_000_000


def thermal_sums(energies, weights, omegas):
    """Return ``sums[k, j] = sum_n weights[n] * energies[n]**k * exp(-1j*omegas[j]*energies[n])``
    for ``k = 0, 1, 2``."""
    energies = np.ascontiguousarray(energies, dtype=np.float64)
    weights = np.ascontiguousarray(weights, dtype=np.float64)
    omegas = np.ascontiguousarray(omegas, dtype=np.float64)
    basis = np.stack([weights, weights * energies, weights * energies**2], axis=1)
    out = np.empty((3, omegas.size), dtype=np.complex128)
    step = max(1, _BLOCK_ELEMENTS // max(1, energies.size))
    for start in range(0, omegas.size, step):
        block = omegas[start:start + step]
        phase = np.exp(-1j * np.multiply.outer(block, energies))
        out[:, start:start + step] = (phase @ basis).T
    return out


def laguerre_table(n_max, alpha_max, z):
    """Generalized Laguerre polynomials ``L[alpha, n, j] = L_n^alpha(z[j])``.

    Forward three-term recurrence in ``n``, vectorized over ``alpha`` and ``z``.
    """
    z = np.ascontiguousarray(z, dtype=np.complex128)
    alphas = np.arange(alpha_max + 1, dtype=np.float64)[:, None]
    out = np.empty((alpha_max + 1, n_max + 1, z.size), dtype=np.complex128)
    out[:, 0, :] = 1.0
    if n_max >= 1:
        out[:, 1, :] = 1.0 + alphas - z[None, :]
    for n in range(1, n_max):
        out[:, n + 1, :] = (
            (2 * n + 1 + alphas - z[None, :]) * out[:, n, :] - (n + alphas) * out[:, n - 1, :]
        ) / (n + 1)
    return out
