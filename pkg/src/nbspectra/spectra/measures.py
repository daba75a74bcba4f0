"""Discrete spectral measures of (colored) regular graphs."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..multigraph import MultiGraph, _require_regular
from ..nbmatrix import ColorAssignment, adjacency, colored_adjacency
from .eigen import eigenvalues_hermitian, eigenvalues_symmetric


class MeasureError(ValueError):
    """Invalid measure construction or query."""


@dataclass(frozen=True)
class DiscreteSpectralMeasure:
    """Uniform atomic measure on sorted points (normalized eigenvalues).

    ``q`` records the branching number used for the q^{-1/2} normalization;
    synthetic measures default to q = 1 (identity normalization).
    """

    points: np.ndarray
    q: float = 1.0

    def __post_init__(self):
        pts = np.sort(np.asarray(self.points, dtype=np.float64).ravel())
        if pts.size == 0:
            raise MeasureError("measure needs at least one point")
        if not np.isfinite(pts).all():
            raise MeasureError("measure points must be finite")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def size(self) -> int:
        return self.points.size

    def idf(self, p):
        """Generalized inverse distribution function, infimum convention.

        Returns points[k] for p in (k/size, (k+1)/size]; rejects p outside (0, 1).
        """
        ps = np.asarray(p, dtype=np.float64)
        if np.any(ps <= 0.0) or np.any(ps > 1.0):
            raise MeasureError("idf argument must lie in (0, 1]")
        idx = np.ceil(ps * self.size).astype(np.int64) - 1
        idx = np.clip(idx, 0, self.size - 1)
        out = self.points[idx]
        return out if out.ndim else float(out)

    def integrate(self, values: Callable[[np.ndarray], np.ndarray]) -> float:
        """Mean of a function over the atoms (the measure integral)."""
        return float(np.mean(values(self.points)))

    def to_csv(self) -> str:
        lines = ["index,point"]
        lines += [f"{i},{format(x, '.17g')}" for i, x in enumerate(self.points)]
        return "\n".join(lines) + "\n"


def idf_discrete(mu: DiscreteSpectralMeasure, p):
    return mu.idf(p)


def spectral_measure(g: MultiGraph) -> DiscreteSpectralMeasure:
    """Atoms at q^{-1/2} * eigenvalues of the adjacency matrix."""
    d = _require_regular(g, min_degree=2)
    q = d - 1
    eigs = eigenvalues_symmetric(adjacency(g).astype(np.float64))
    return DiscreteSpectralMeasure(points=eigs / math.sqrt(q), q=float(q))


def colored_spectral_measure(g: MultiGraph, color: ColorAssignment) -> DiscreteSpectralMeasure:
    """Atoms at q^{-1/2} * eigenvalues of the colored block adjacency."""
    d = _require_regular(g, min_degree=2)
    q = d - 1
    eigs = eigenvalues_hermitian(colored_adjacency(g, color))
    return DiscreteSpectralMeasure(points=eigs / math.sqrt(q), q=float(q))


def cycle_spectral_measure(m: int) -> DiscreteSpectralMeasure:
    """Closed-form spectral measure of the m-cycle: atoms 2 cos(2 pi k / m)."""
    if m < 3:
        raise MeasureError(f"cycle needs at least 3 vertices, got {m}")
    k = np.arange(m)
    return DiscreteSpectralMeasure(points=2.0 * np.cos(2.0 * np.pi * k / m), q=1.0)
