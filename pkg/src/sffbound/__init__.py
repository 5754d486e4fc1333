"""Spectral form factors, their inflection exponent and the analyticity bound
``eta <= d pi / (2 beta hbar)``, with comparison bounds and figure recipes."""
from ._backend import BACKEND
from .errors import (
    BracketError,
    DomainError,
    InvalidArgument,
    NumericalFailure,
    SearchFailure,
    SFFError,
    SingularPointError,
)
from .inflection import InflectionResult, analyticity_bound, eta_ho, find_inflection
from .spectra import GUEConfig, Spectrum, ThermalParams, explicit_spectrum, gue_ensemble, ho_spectrum

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "BracketError", "DomainError", "InvalidArgument", "NumericalFailure", "SearchFailure",
    "SFFError", "SingularPointError", "InflectionResult", "analyticity_bound", "eta_ho", "find_inflection",
    "GUEConfig", "Spectrum", "ThermalParams", "explicit_spectrum", "gue_ensemble", "ho_spectrum",
]
