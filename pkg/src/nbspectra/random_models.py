"""Seeded samplers: uniform simple regular graphs, random lifts, unitary colors,
and the Monte-Carlo estimators behind the convergence experiments.

Every sampler is a pure function of its inputs and an :class:`RngStream`;
identical (seed, stream_id) pairs reproduce identical output on every platform
(the streams are PCG64 generators keyed by a SeedSequence spawn key).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from math import fsum
from typing import Sequence

import numpy as np

from .multigraph import MultiGraph, build_from_edge_list, regular_degree
from .nbmatrix import ColorAssignment

DEFAULT_RETRY_BUDGET = 1_000_000

#: How experiment streams are derived; recorded in experiment manifests.
STREAM_POLICY = ("pcg64 seeded by SeedSequence(seed, spawn_key=(stream_id,)); "
                 "cells derive children by splitmix64(stream_id, key), "
                 "trials use child(trial_index)")

logger = logging.getLogger(__name__)


class SamplerError(ValueError):
    """Invalid sampler parameters."""


class RetryBudgetError(RuntimeError):
    """Whole-sample rejection exhausted its retry budget."""

    def __init__(self, attempts: int, context: str):
        super().__init__(
            f"rejection sampling gave up after {attempts} attempts ({context})")
        self.attempts = attempts


def _mix64(a: int, b: int) -> int:
    """SplitMix64-style combination of two 64-bit values (platform independent)."""
    x = (a * 0x9E3779B97F4A7C15 + b) & 0xFFFFFFFFFFFFFFFF
    x ^= x >> 30
    x = (x * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    x ^= x >> 27
    x = (x * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return x ^ (x >> 31)


@dataclass(frozen=True)
class RngStream:
    """Deterministic random stream keyed by (seed, stream_id)."""

    seed: int
    stream_id: int = 0

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(entropy=self.seed,
                                    spawn_key=(self.stream_id,))
        return np.random.Generator(np.random.PCG64(ss))

    def child(self, index: int) -> "RngStream":
        return RngStream(seed=self.seed, stream_id=_mix64(self.stream_id, index))


def sample_regular_graph(n: int, degree: int, rng: RngStream,
                         retry_budget: int = DEFAULT_RETRY_BUDGET) -> MultiGraph:
    """Uniform simple degree-regular graph via the pairing model.

    Stubs are paired by a uniform random permutation; any pairing containing a
    loop or a repeated edge is rejected wholesale, which leaves exactly the
    uniform distribution on simple regular graphs.  Practical for degree <= 6;
    the acceptance probability decays like exp(-(d^2 - 1)/4).
    """
    if degree < 1:
        raise SamplerError(f"degree must be positive, got {degree}")
    if degree >= n:
        raise SamplerError(f"need degree < n for a simple graph, got d={degree}, n={n}")
    if (n * degree) % 2 != 0:
        raise SamplerError(f"n * degree must be even, got n={n}, d={degree}")
    gen = rng.generator()
    stubs = np.repeat(np.arange(n, dtype=np.int64), degree)
    for attempt in range(1, retry_budget + 1):
        paired = stubs[gen.permutation(stubs.size)]
        u = paired[0::2]
        v = paired[1::2]
        if (u == v).any():
            continue
        codes = np.minimum(u, v) * n + np.maximum(u, v)
        codes.sort()
        if (codes[1:] == codes[:-1]).any():
            continue
        g = build_from_edge_list(list(zip(u.tolist(), v.tolist())), n)
        assert regular_degree(g) == degree
        logger.debug("pairing model accepted after %d attempt(s) (n=%d, d=%d)",
                     attempt, n, degree)
        return g
    raise RetryBudgetError(retry_budget, f"n={n}, degree={degree}")


@dataclass(frozen=True)
class LiftSpec:
    """An N-lift: one permutation of {0..N-1} per undirected base edge."""

    base: MultiGraph
    fold: int
    permutations: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.fold < 1:
            raise SamplerError(f"fold must be >= 1, got {self.fold}")
        if len(self.permutations) != self.base.n_edges:
            raise SamplerError("need one permutation per base edge")


def lift_graph(spec: LiftSpec) -> MultiGraph:
    """Explicit covering graph: fiber vertex (u, i) is index u * N + i."""
    base, n_fold = spec.base, spec.fold
    edges = []
    for k, (u, v) in enumerate(base.edge_list()):
        pi = spec.permutations[k]
        for i in range(n_fold):
            edges.append((u * n_fold + i, v * n_fold + pi[i]))
    return build_from_edge_list(edges, base.n_vertices * n_fold)


def sample_lift(base: MultiGraph, n_fold: int, rng: RngStream) -> tuple[LiftSpec, MultiGraph]:
    """Uniform random N-lift: independent uniform permutation per base edge."""
    if base.n_edges < 1:
        raise SamplerError("base graph needs at least one edge")
    if n_fold < 1:
        raise SamplerError(f"fold must be >= 1, got {n_fold}")
    gen = rng.generator()
    perms = tuple(tuple(int(x) for x in gen.permutation(n_fold))
                  for _ in range(base.n_edges))
    spec = LiftSpec(base=base, fold=n_fold, permutations=perms)
    return spec, lift_graph(spec)


def permutation_color(spec: LiftSpec) -> ColorAssignment:
    """Permutation-matrix color whose block adjacency is the lift adjacency."""
    blocks = []
    for pi in spec.permutations:
        mat = np.zeros((spec.fold, spec.fold), dtype=np.complex128)
        mat[np.arange(spec.fold), np.asarray(pi)] = 1.0
        blocks.append(mat)
    return ColorAssignment(spec.base, blocks)


def haar_unitary_color(g: MultiGraph, block_dim: int, rng: RngStream) -> ColorAssignment:
    """Independent Haar-distributed unitary block per undirected edge.

    Complex Gaussian matrix, QR factorization, then the diagonal phase fix
    that makes the distribution exactly Haar.
    """
    if block_dim < 1:
        raise SamplerError(f"block dimension must be >= 1, got {block_dim}")
    gen = rng.generator()
    blocks = []
    for _ in range(g.n_edges):
        z = (gen.standard_normal((block_dim, block_dim))
             + 1j * gen.standard_normal((block_dim, block_dim))) / math.sqrt(2.0)
        q_mat, r_mat = np.linalg.qr(z)
        d = np.diagonal(r_mat)
        blocks.append(q_mat * (d / np.abs(d)))
    return ColorAssignment(g, blocks)


def _permutation_power(perm: np.ndarray, exponent: int) -> np.ndarray:
    if exponent < 0:
        inv = np.empty_like(perm)
        inv[perm] = np.arange(perm.size)
        perm, exponent = inv, -exponent
    out = np.arange(perm.size)
    for _ in range(exponent):
        out = perm[out]
    return out


def nica_trace_estimate(word: Sequence[tuple[int, int]], n_dim: int, trials: int,
                        rng: RngStream) -> float:
    """Monte-Carlo mean of (1/N) Tr(t_{c_1}^{a_1} ... t_{c_m}^{a_m}).

    The letters t_i are independent uniform permutations of {0..N-1}; the word
    must have nonzero exponents and distinct adjacent letters.  The empty word
    is the identity, with trace ratio exactly 1.
    """
    word = list(word)
    if not word:
        return 1.0
    letters = sorted({c for c, _ in word})
    for c, a in word:
        if a == 0:
            raise SamplerError("word exponents must be nonzero")
        if c not in letters:
            raise SamplerError("malformed word letter")
    for (c1, _), (c2, _) in zip(word, word[1:]):
        if c1 == c2:
            raise SamplerError("adjacent word letters must be distinct")
    if n_dim < 1 or trials < 1:
        raise SamplerError("need positive dimension and trial count")
    samples = []
    for trial in range(trials):
        gen = rng.child(trial).generator()
        perms = {c: gen.permutation(n_dim) for c in letters}
        composite = np.arange(n_dim)
        for c, a in word:
            composite = _permutation_power(perms[c], a)[composite]
        samples.append(int((composite == np.arange(n_dim)).sum()) / n_dim)
    return fsum(samples) / trials


def cycle_moment_estimate(n: int, degree: int, k: int, trials: int,
                          rng: RngStream) -> tuple[float, float]:
    """Monte-Carlo (mean Z_k, mean Z_k^2) over uniform simple regular graphs."""
    from .multigraph import BRUTE_R_CAP, enumerate_circles

    if k < 1 or k > BRUTE_R_CAP:
        raise SamplerError(f"circle size must lie in 1..{BRUTE_R_CAP}, got {k}")
    if trials < 1:
        raise SamplerError("need a positive trial count")
    zs = []
    for trial in range(trials):
        g = sample_regular_graph(n, degree, rng.child(trial))
        zs.append(enumerate_circles(g, k)[k])
    mean = fsum(zs) / trials
    mean_sq = fsum(z * z for z in zs) / trials
    return mean, mean_sq


def poisson_cycle_rate(degree: int, k: int) -> float:
    """Limiting Poisson parameter q^k / (2k) for the k-circle count."""
    q = degree - 1
    return q ** k / (2.0 * k)
