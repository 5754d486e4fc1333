"""Coarse shape features of a late-time SFF curve: dip depth and ramp."""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np
from scipy.stats import spearmanr

from ..errors import InvalidArgument


@dataclass(frozen=True)
class DipRamp:
    dip_time: float
    dip_ratio: float        # smoothed minimum divided by the plateau
    ramp_decades: float     # log10 span from the dip to the first return to ramp_target
    ramp_monotonicity: float  # rank correlation of the smoothed curve with log t along the ramp
    has_dip_ramp: bool

    def as_dict(self):
        return asdict(self)


def smooth_log_windows(times, values, width=0.125):
    """Average ``values`` over consecutive windows of ``width`` decades.

    Returns window centers (geometric) and means; empty windows are dropped.
    """
    times = np.asarray(times, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    if times.shape != values.shape or times.size == 0 or np.any(times <= 0):
        raise InvalidArgument("need matching, positive time and value arrays")
    lt = np.log10(times)
    edges = np.arange(lt[0], lt[-1] + width, width)
    idx = np.clip(np.digitize(lt, edges) - 1, 0, edges.size - 1)
    counts = np.bincount(idx, minlength=edges.size)
    sums = np.bincount(idx, weights=values, minlength=edges.size)
    keep = counts > 0
    centers = 10 ** (edges[keep] + width / 2)
    return centers, sums[keep] / counts[keep]


def dip_ramp_features(times, values, plateau, width=0.125, dip_max=0.3,
                      ramp_target=0.8, min_decades=0.5, min_monotonicity=0.7):
    """Locate the dip below the plateau and measure the ramp that follows.

    A dip-ramp is reported when the smoothed minimum lies below ``dip_max``
    times the plateau and the curve then climbs back to ``ramp_target`` times
    the plateau over at least ``min_decades`` with a rank correlation against
    ``log t`` of at least ``min_monotonicity``. Regular spectra show revivals
    instead: a shallow minimum followed by an abrupt return.
    """
    if not plateau > 0:
        raise InvalidArgument("plateau must be positive")
    centers, sm = smooth_log_windows(times, values, width)
    r = sm / plateau
    below = np.nonzero(r < 1.0)[0]
    if below.size == 0:
        return DipRamp(float("nan"), float(r.min()), 0.0, 0.0, False)
    start = below[0]
    i_dip = start + int(np.argmin(r[start:]))
    after = np.nonzero(r[i_dip:] >= ramp_target)[0]
    if after.size == 0:
        return DipRamp(float(centers[i_dip]), float(r[i_dip]), 0.0, 0.0, False)
    i_end = i_dip + int(after[0])
    decades = float(np.log10(centers[i_end] / centers[i_dip]))
    seg = r[i_dip:i_end + 1]
    mono = float(spearmanr(np.arange(seg.size), seg)[0]) if seg.size > 2 else 1.0
    ok = r[i_dip] <= dip_max and decades >= min_decades and mono >= min_monotonicity
    return DipRamp(float(centers[i_dip]), float(r[i_dip]), decades, mono, bool(ok))
