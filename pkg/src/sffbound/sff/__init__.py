"""Spectral form factors in all their forms."""
from .closed_forms import sff_cs, sff_ho, sff_ho_log_derivative, sff_ho_rate
from .gue import avg_z_gue, gue_connected, sff_gue_annealed
from .models import EnsembleModel, GUEAnnealedModel, ProductHOModel, SFFModel, SpectrumModel, as_model
from .features import DipRamp, dip_ramp_features, smooth_log_windows
from .series import NeighborDecomposition, SFFSeries
from .spectral import (
    ensemble_neighbor_decomposition,
    ensemble_sff,
    modified_sff,
    neighbor_decomposition,
    sff,
    sff_complex,
    sff_series,
)
