"""Tabulated result series shared by the simulator, the analytics and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

SOURCES = frozenset(
    {"simulated", "analytic", "bound-lower", "bound-upper", "first-order", "grid-argmax"}
)


@dataclass
class Curve:
    """One plotted series: ``y`` against a strictly increasing ``x``.

    Step-indexed probability curves use ``x_name="k"`` and
    ``y_name="probability"``; width-indexed series (k_max against gamma,
    probability against alpha) rename the columns accordingly.
    """

    x: np.ndarray
    y: np.ndarray
    source: str
    x_name: str = "k"
    y_name: str = "probability"
    label: str = ""
    formula: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.x = np.asarray(self.x)
        self.y = np.asarray(self.y)
        if self.x.shape != self.y.shape or self.x.ndim != 1:
            raise ValueError("x and y must be 1-D arrays of equal length")
        if self.source not in SOURCES:
            raise ValueError(f"unknown source tag {self.source!r}")
        if len(self.x) > 1 and np.any(np.diff(self.x) <= 0):
            raise ValueError(f"{self.x_name} must be strictly increasing")
        if self.y_name == "probability" and np.any((self.y < -1e-12) | (self.y > 1 + 1e-12)):
            raise ValueError("probabilities must lie in [0, 1]")

    def __len__(self):
        return len(self.x)

    @property
    def k(self) -> np.ndarray:
        return self.x

    @property
    def probability(self) -> np.ndarray:
        return self.y

    def rows(self):
        for xv, yv in zip(self.x.tolist(), self.y.tolist()):
            yield xv, yv, self.source
