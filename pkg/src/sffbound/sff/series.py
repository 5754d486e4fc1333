from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import InvalidArgument


@dataclass
class SFFSeries:
    """SFF values on a time grid, optionally with ``Sdot/S`` at each point."""

    times: np.ndarray
    values: np.ndarray
    log_deriv: np.ndarray | None = None
    label: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=np.float64)
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.times.shape != self.values.shape:
            raise InvalidArgument("times and values must have equal length")
        if self.times.size > 1 and np.any(np.diff(self.times) <= 0):
            raise InvalidArgument("time grid must be strictly increasing")
        if self.log_deriv is not None:
            self.log_deriv = np.asarray(self.log_deriv, dtype=np.float64)
            if self.log_deriv.shape != self.times.shape:
                raise InvalidArgument("log_deriv length mismatch")

    def columns(self) -> dict:
        cols = {"t": self.times, "S": self.values}
        if self.log_deriv is not None:
            cols["Sdot_over_S"] = self.log_deriv
        return cols


@dataclass
class NeighborDecomposition:
    """``S(t) = diagonal + sum_j contributions[j-1](t)``."""

    times: np.ndarray
    diagonal: float
    contributions: np.ndarray  # shape (j_max, len(times))

    def total(self) -> np.ndarray:
        return self.diagonal + self.contributions.sum(axis=0)

    def columns(self) -> dict:
        cols = {"t": self.times, "S": self.total(), "diagonal": np.full(self.times.shape, self.diagonal)}
        for j, row in enumerate(self.contributions, start=1):
            cols[f"S_j{j}"] = row
        return cols
