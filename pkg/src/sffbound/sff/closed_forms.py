"""Closed-form form factors of the harmonic oscillator and the
Calogero-Sutherland model."""
import numpy as np

from ..errors import InvalidArgument


def _check(beta, omega, hbar):
    if not (beta > 0 and omega > 0 and hbar > 0):
        raise InvalidArgument("beta, omega and hbar must be positive")


def sff_ho(beta, omega, hbar, t):
    """``(cosh(b) - 1) / (cosh(b) - cos(omega t))`` with ``b = beta hbar omega``."""
    _check(beta, omega, hbar)
    c = np.cosh(beta * hbar * omega)
    return (c - 1.0) / (c - np.cos(omega * np.asarray(t, dtype=np.float64)))


def sff_ho_log_derivative(beta, omega, hbar, t):
    _check(beta, omega, hbar)
    t = np.asarray(t, dtype=np.float64)
    c = np.cosh(beta * hbar * omega)
    return -omega * np.sin(omega * t) / (c - np.cos(omega * t))


def sff_ho_rate(beta, omega, hbar, t):
    """``|dS/dt|`` of the oscillator form factor."""
    _check(beta, omega, hbar)
    t = np.asarray(t, dtype=np.float64)
    c = np.cosh(beta * hbar * omega)
    return np.abs(omega * np.sin(omega * t) * (1.0 - c)) / (c - np.cos(omega * t)) ** 2


def sff_cs(beta, omega, hbar, n_particles, t):
    """Product of oscillator form factors at frequencies ``n omega``, ``n = 1..N``."""
    if int(n_particles) != n_particles or n_particles < 1:
        raise InvalidArgument("n_particles must be a positive integer")
    t = np.asarray(t, dtype=np.float64)
    out = np.ones(t.shape)
    for n in range(1, int(n_particles) + 1):
        out = out * sff_ho(beta, n * omega, hbar, t)
    return out
