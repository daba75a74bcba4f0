"""Closed-form reference laws on [-2, 2] and their quadrature machinery.

Three laws cover the limits that sparse regular graphs converge to:

* Kesten-McKay with branching number q > 1 (any real q, not just integers),
* the arcsine law (the q = 1 member),
* the semicircle law (the q -> infinity member).

All quadrature substitutes x = 2 cos(theta), which removes the square-root
endpoint behavior of every density, and then applies fixed Gauss-Legendre
panels in the angle variable.  Inverse distribution functions come from
bisection on the quadrature CDF (the arcsine law uses its closed form).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from ..chebyshev import ExactPolynomial, eval_X_table
from .measures import DiscreteSpectralMeasure

IDF_TOL = 1e-10
_LOCAL_GL = 16  # nodes for within-cell CDF refinement


class LawError(ValueError):
    """Invalid law construction or query."""


@dataclass(frozen=True)
class QuadratureConfig:
    """Fixed Gauss-Legendre quadrature in the angle variable."""

    node_count: int = 4096
    method: str = "gauss-legendre-2cos-theta"

    def __post_init__(self):
        if self.node_count < 64:
            raise LawError(f"node_count must be at least 64, got {self.node_count}")


DEFAULT_QUADRATURE = QuadratureConfig()


@lru_cache(maxsize=32)
def _gl01(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(n)
    return (x + 1.0) / 2.0, w / 2.0


class ReferenceLaw:
    """Closed-form spectral law with density/CDF/IDF evaluators."""

    KINDS = ("kesten-mckay", "arcsine", "semicircle")

    def __init__(self, kind: str, q: float | None = None):
        if kind not in self.KINDS:
            raise LawError(f"unknown law kind {kind!r}")
        if kind == "kesten-mckay":
            if q is None or not (q > 1.0):
                raise LawError(f"Kesten-McKay needs real q > 1, got {q!r} "
                               "(the arcsine law covers q = 1)")
        elif q is not None:
            raise LawError(f"{kind} law takes no q parameter")
        self.kind = kind
        self.q = float(q) if q is not None else None
        self._tables: dict[int, tuple[np.ndarray, np.ndarray]] = {}

    def __repr__(self) -> str:
        return (f"ReferenceLaw({self.kind!r})" if self.q is None
                else f"ReferenceLaw({self.kind!r}, q={self.q:g})")

    def __eq__(self, other) -> bool:
        return (isinstance(other, ReferenceLaw)
                and self.kind == other.kind and self.q == other.q)

    def __hash__(self) -> int:
        return hash((self.kind, self.q))

    # -- density -----------------------------------------------------------

    def density(self, x) -> np.ndarray:
        xs = np.asarray(x, dtype=np.float64)
        inside = np.abs(xs) <= 2.0
        xc = np.where(inside, xs, 0.0)
        root = np.sqrt(np.maximum(4.0 - xc * xc, 0.0))
        if self.kind == "semicircle":
            vals = root / (2.0 * np.pi)
        elif self.kind == "arcsine":
            with np.errstate(divide="ignore"):
                vals = np.where(root > 0.0, 1.0 / (np.pi * root), np.inf)
        else:
            s2 = (self.q ** -0.5 + self.q ** 0.5) ** 2
            vals = (self.q + 1.0) * root / (2.0 * np.pi * (s2 - xc * xc))
        out = np.where(inside, vals, 0.0)
        return out if out.ndim else float(out)

    def _angle_weight(self, phi: np.ndarray) -> np.ndarray:
        """density(-2 cos phi) * 2 sin phi: the CDF integrand in the angle."""
        s = np.sin(phi)
        if self.kind == "semicircle":
            return (2.0 / np.pi) * s * s
        if self.kind == "arcsine":
            return np.full_like(phi, 1.0 / np.pi)
        s2 = (self.q ** -0.5 + self.q ** 0.5) ** 2
        c = np.cos(phi)
        return (self.q + 1.0) * 2.0 * s * s / (np.pi * (s2 - 4.0 * c * c))

    # -- moments -----------------------------------------------------------

    def moment_values(self, fn: Callable[[np.ndarray], np.ndarray],
                      quad: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
        """Integral of fn against the law by angle-substituted Gauss-Legendre."""
        nodes01, weights01 = _gl01(min(quad.node_count, 8192))
        phi = np.pi * nodes01
        x = -2.0 * np.cos(phi)
        return float(np.dot(fn(x) * self._angle_weight(phi), weights01) * np.pi)

    def moment(self, poly: ExactPolynomial,
               quad: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
        return self.moment_values(poly.eval_float, quad)

    # -- CDF / IDF ---------------------------------------------------------

    def _table(self, quad: QuadratureConfig) -> tuple[np.ndarray, np.ndarray]:
        """Cumulative CDF at the angle grid phi_j = j pi / M, M = node_count."""
        m = quad.node_count
        cached = self._tables.get(m)
        if cached is not None:
            return cached
        phi_edges = np.linspace(0.0, np.pi, m + 1)
        nodes01, weights01 = _gl01(_LOCAL_GL)
        width = np.pi / m
        inner = phi_edges[:-1, None] + width * nodes01[None, :]
        cell = (self._angle_weight(inner) @ weights01) * width
        table = np.concatenate(([0.0], np.cumsum(cell)))
        self._tables[m] = (phi_edges, table)
        return phi_edges, table

    def cdf(self, x, quad: QuadratureConfig = DEFAULT_QUADRATURE):
        if self.kind == "arcsine":
            xs = np.clip(np.asarray(x, dtype=np.float64), -2.0, 2.0)
            out = np.arccos(-xs / 2.0) / np.pi
            return out if out.ndim else float(out)
        xs = np.asarray(x, dtype=np.float64)
        phi_edges, table = self._table(quad)
        m = quad.node_count
        width = np.pi / m
        phi = np.arccos(np.clip(-np.clip(xs, -2.0, 2.0) / 2.0, -1.0, 1.0))
        out = self._cdf_from_angle(np.atleast_1d(phi), table, width)
        out = np.where(np.asarray(xs) <= -2.0, 0.0, out)
        out = np.where(np.asarray(xs) >= 2.0, table[-1], out)
        return out if np.ndim(x) else float(out[0] if out.ndim else out)

    def _cdf_from_angle(self, phi: np.ndarray, table: np.ndarray, width: float) -> np.ndarray:
        j = np.minimum((phi / width).astype(np.int64), table.size - 2)
        lo = j * width
        span = phi - lo
        nodes01, weights01 = _gl01(_LOCAL_GL)
        inner = lo[..., None] + span[..., None] * nodes01
        local = (self._angle_weight(inner) @ weights01) * span
        return table[j] + local

    def idf(self, p, quad: QuadratureConfig = DEFAULT_QUADRATURE):
        """Inverse CDF by bisection on the quadrature CDF, to IDF_TOL in x."""
        ps = np.asarray(p, dtype=np.float64)
        if np.any(ps <= 0.0) or np.any(ps >= 1.0):
            raise LawError("idf argument must lie strictly inside (0, 1)")
        if self.kind == "arcsine":
            out = -2.0 * np.cos(np.pi * ps)
            return out if out.ndim else float(out)
        flat = np.atleast_1d(ps)
        phi_edges, table = self._table(quad)
        width = np.pi / quad.node_count
        clipped = np.minimum(flat, table[-1])
        k = np.searchsorted(table, clipped)
        k = np.clip(k, 1, table.size - 1)
        lo = phi_edges[k - 1]
        hi = phi_edges[k]
        iters = max(1, int(math.ceil(math.log2(max(2.0 * width / IDF_TOL, 2.0)))))
        for _ in range(iters):
            mid = (lo + hi) / 2.0
            val = self._cdf_from_angle(mid, table, width)
            take_hi = val >= flat
            hi = np.where(take_hi, mid, hi)
            lo = np.where(take_hi, lo, mid)
        out = -2.0 * np.cos((lo + hi) / 2.0)
        return out if np.ndim(p) else float(out[0])

    def support(self) -> tuple[float, float]:
        return (-2.0, 2.0)


def kesten_mckay(q: float) -> ReferenceLaw:
    return ReferenceLaw("kesten-mckay", q)


def arcsine() -> ReferenceLaw:
    return ReferenceLaw("arcsine")


def semicircle() -> ReferenceLaw:
    return ReferenceLaw("semicircle")


def law_density(law: ReferenceLaw, x):
    return law.density(x)


def law_cdf(law: ReferenceLaw, x, quad: QuadratureConfig = DEFAULT_QUADRATURE):
    return law.cdf(x, quad)


def law_idf(law: ReferenceLaw, p, quad: QuadratureConfig = DEFAULT_QUADRATURE):
    return law.idf(p, quad)


def law_moment(law: ReferenceLaw, poly: ExactPolynomial,
               quad: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    return law.moment(poly, quad)


def law_table_csv(law: ReferenceLaw, grid: np.ndarray,
                  quad: QuadratureConfig = DEFAULT_QUADRATURE) -> str:
    xs = np.asarray(grid, dtype=np.float64)
    dens = np.asarray(law.density(xs))
    cdfs = np.atleast_1d(law.cdf(xs, quad))
    lines = ["x,density,cdf"]
    for x, d, c in zip(xs, dens, cdfs):
        lines.append(f"{format(x, '.17g')},{format(d, '.17g')},{format(c, '.17g')}")
    return "\n".join(lines) + "\n"


def orthogonality_check(q: float, n_max: int,
                        quad: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Max deviation of <X_{n,q}, X_{m,q}> under mu_q from {0, 1, 1 + 1/q}."""
    if not q > 1.0:
        raise LawError(f"orthogonality table needs q > 1, got {q}")
    law = kesten_mckay(q)
    nodes01, weights01 = _gl01(min(quad.node_count, 8192))
    phi = np.pi * nodes01
    x = -2.0 * np.cos(phi)
    table = eval_X_table(n_max, x)
    fam = table.copy()
    if n_max >= 2:
        fam[2:] = table[2:] - table[:-2] / q
    weights = law._angle_weight(phi) * weights01 * np.pi
    gram = (fam * weights) @ fam.T
    expected = np.zeros_like(gram)
    for n in range(n_max + 1):
        expected[n, n] = 1.0 if n == 0 else 1.0 + 1.0 / q
    return float(np.abs(gram - expected).max())


def moment_criterion_report(mu: DiscreteSpectralMeasure, target: ReferenceLaw,
                            r_max: int,
                            quad: QuadratureConfig = DEFAULT_QUADRATURE) -> np.ndarray:
    """Residuals of the test statistics that certify convergence to ``target``.

    For a Kesten-McKay target the statistics are the X_{r,q} moments (these
    equal q^{-r/2} f_r / |V| on a graph measure); for arcsine and semicircle
    targets they are the Y_r moments (the circuit statistics).  Entry r-1 of
    the result is the difference of the r-th statistic between ``mu`` and the
    target law, for r = 1..r_max.
    """
    if r_max < 1:
        raise LawError("r_max must be at least 1")
    if target.kind == "kesten-mckay":
        if abs(mu.q - target.q) > 1e-12:
            raise LawError(
                f"measure normalization q={mu.q:g} does not match target q={target.q:g}")
        qval = target.q
    elif target.kind == "arcsine":
        if abs(mu.q - 1.0) > 1e-12:
            raise LawError("arcsine target expects a q = 1 normalized measure")
        qval = 1.0
    else:
        qval = 1.0  # Y_r family; measure q only affects its own normalization

    def family(xs: np.ndarray) -> np.ndarray:
        table = eval_X_table(r_max, xs)
        out = table.copy()
        if r_max >= 2:
            out[2:] = table[2:] - table[:-2] / qval
        return out

    mu_stats = family(mu.points).mean(axis=1)
    nodes01, weights01 = _gl01(min(quad.node_count, 8192))
    phi = np.pi * nodes01
    x = -2.0 * np.cos(phi)
    w = target._angle_weight(phi) * weights01 * np.pi
    law_stats = family(x) @ w
    return (mu_stats - law_stats)[1:]
