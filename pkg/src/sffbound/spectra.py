"""Spectra for the model families: explicit lists, harmonic oscillator,
Calogero-Sutherland frequencies and GUE samples."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgument, NumericalFailure


@dataclass(frozen=True)
class ThermalParams:
    """Inverse temperature, action scale and extensivity ``d``.

    ``beta = 0`` (infinite temperature) is accepted: every finite spectrum
    has a well defined SFF there.
    """

    beta: float
    hbar: float = 1.0
    d: int = 1

    def __post_init__(self):
        if not (math.isfinite(self.beta) and self.beta >= 0):
            raise InvalidArgument(f"beta must be finite and >= 0, got {self.beta}")
        if not (math.isfinite(self.hbar) and self.hbar > 0):
            raise InvalidArgument(f"hbar must be > 0, got {self.hbar}")
        if int(self.d) != self.d or self.d < 1:
            raise InvalidArgument(f"d must be a positive integer, got {self.d}")

    def replace(self, **changes) -> ThermalParams:
        kw = dict(beta=self.beta, hbar=self.hbar, d=self.d)
        kw.update(changes)
        return ThermalParams(**kw)


@dataclass(frozen=True)
class Spectrum:
    energies: np.ndarray
    label: str = ""

    def __post_init__(self):
        e = np.array(self.energies, dtype=np.float64).ravel()
        if e.size == 0:
            raise InvalidArgument("spectrum must be nonempty")
        if not np.all(np.isfinite(e)):
            raise InvalidArgument("spectrum energies must be finite")
        if np.any(np.diff(e) < 0):
            raise InvalidArgument("spectrum energies must be sorted ascending")
        e.setflags(write=False)
        object.__setattr__(self, "energies", e)

    def __len__(self):
        return self.energies.size

    def shifted(self, offset: float) -> Spectrum:
        return Spectrum(self.energies + offset, self.label)

    def scaled(self, factor: float) -> Spectrum:
        if factor <= 0:
            raise InvalidArgument("scale factor must be positive")
        return Spectrum(self.energies * factor, self.label)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["energy"])
        for e in self.energies:
            w.writerow([f"{e:.17g}"])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps({"label": self.label, "energies": [float(e) for e in self.energies]})

    @classmethod
    def from_csv(cls, text: str, label: str = "") -> Spectrum:
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or rows[0] != ["energy"]:
            raise InvalidArgument("spectrum CSV must start with header 'energy'")
        return explicit_spectrum([float(r[0]) for r in rows[1:] if r], label)

    @classmethod
    def from_json(cls, text: str) -> Spectrum:
        rec = json.loads(text)
        return explicit_spectrum(rec["energies"], rec.get("label", ""))


@dataclass(frozen=True)
class GUEConfig:
    dim: int
    sigma: float = 1.0
    n_realizations: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.dim < 1:
            raise InvalidArgument("GUE dim must be >= 1")
        if not self.sigma > 0:
            raise InvalidArgument("GUE sigma must be > 0")
        if self.n_realizations < 1:
            raise InvalidArgument("n_realizations must be >= 1")


def explicit_spectrum(values, label: str = "explicit") -> Spectrum:
    """Sorted copy of ``values`` as a spectrum; degeneracies are kept."""
    arr = np.asarray(values, dtype=np.float64).ravel()
    if arr.size == 0:
        raise InvalidArgument("spectrum must be nonempty")
    if not np.all(np.isfinite(arr)):
        raise InvalidArgument("spectrum energies must be finite")
    return Spectrum(np.sort(arr), label)


def ho_spectrum(omega: float, n_levels: int, hbar: float = 1.0) -> Spectrum:
    """``E_n = hbar*omega*(n + 1/2)`` for ``n = 0 .. n_levels-1``."""
    if not omega > 0:
        raise InvalidArgument("omega must be > 0")
    if int(n_levels) != n_levels or n_levels < 1:
        raise InvalidArgument("n_levels must be a positive integer")
    n = np.arange(int(n_levels), dtype=np.float64)
    return Spectrum(hbar * omega * (n + 0.5), f"ho(omega={omega:g})")


def ho_levels_needed(beta: float, omega: float, hbar: float = 1.0, tol: float = 1e-17) -> int:
    """Truncation at which the neglected tail of the second-moment sum
    ``sum_{m>=n} (m+1)^2 e^{-beta hbar omega m}`` is below ``tol`` relative to ``Z_beta``."""
    x = beta * hbar * omega
    if x <= 0:
        raise InvalidArgument("auto cutoff needs beta*hbar*omega > 0")
    n = 2.0
    for _ in range(4):
        n = (-math.log(tol) + 3.0 * math.log(n + 1.0) - math.log1p(-math.exp(-x))) / x
    return max(2, int(math.ceil(n)) + 1)


def cs_frequencies(omega: float, n_particles: int) -> list[float]:
    """Frequencies ``[omega, 2 omega, ..., N omega]`` whose HO form factors multiply to the
    Calogero-Sutherland one."""
    if not omega > 0:
        raise InvalidArgument("omega must be > 0")
    if int(n_particles) != n_particles or n_particles < 1:
        raise InvalidArgument("n_particles must be a positive integer")
    return [n * omega for n in range(1, int(n_particles) + 1)]


def realization_rng(seed: int, index: int) -> np.random.Generator:
    """Independent stream for realization ``index``; identical regardless of call order."""
    return np.random.default_rng(np.random.SeedSequence(int(seed) & (2**64 - 1), spawn_key=(int(index),)))


def gue_matrix(config: GUEConfig, index: int) -> np.ndarray:
    """Hermitian matrix with diagonal N(0, sigma^2) and off-diagonal real and imaginary parts
    each N(0, sigma^2/2)."""
    if not 0 <= index < config.n_realizations:
        raise InvalidArgument(f"realization index {index} outside [0, {config.n_realizations})")
    rng = realization_rng(config.seed, index)
    n = config.dim
    s = config.sigma
    diag = rng.normal(0.0, s, size=n)
    off = rng.normal(0.0, s / math.sqrt(2.0), size=(2, n, n))
    upper = np.triu(off[0] + 1j * off[1], 1)
    return upper + upper.conj().T + np.diag(diag)


def gue_sample(config: GUEConfig, index: int) -> Spectrum:
    from .numerics import hermitian_eigenvalues

    h = gue_matrix(config, index)
    try:
        ev = hermitian_eigenvalues(h)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NumericalFailure(f"GUE eigensolver failed for realization {index}: {exc}") from exc
    return Spectrum(ev, f"gue(dim={config.dim}, seed={config.seed}, index={index})")


def gue_ensemble(config: GUEConfig) -> list[Spectrum]:
    from .parallel import ordered_map

    return ordered_map(lambda i: gue_sample(config, i), range(config.n_realizations))
