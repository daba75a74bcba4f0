"""Wasserstein distances between spectral measures via inverse CDFs."""

import math

import numpy as np

from nbspectra.spectra import (DiscreteSpectralMeasure, arcsine,
                               cycle_spectral_measure, kesten_mckay,
                               semicircle, wasserstein_p)

sc, ar = semicircle(), arcsine()

d0 = DiscreteSpectralMeasure(np.array([0.0]))
print("point mass vs semicircle: W_1 =", f"{wasserstein_p(d0, sc, 1):.9f}",
      "(8/3pi =", f"{8/(3*math.pi):.9f})")
print("                          W_2 =", f"{wasserstein_p(d0, sc, 2):.9f} (exactly 1)")

print("\ncycle spectra converge to the arcsine law in W_inf:")
for m in (10, 53, 200, 1000):
    w = wasserstein_p(cycle_spectral_measure(m), ar, math.inf)
    print(f"  C_{m}: W_inf = {w:.6f}  (bound 4 pi / m = {4*math.pi/m:.6f})")

print("\nKesten-McKay laws converge to the semicircle in W_inf:")
for q in (5, 10, 50, 200):
    print(f"  q={q}: W_inf = {wasserstein_p(kesten_mckay(q), sc, math.inf):.6f}")

print("\norder monotonicity on a random pair of atom measures:")
rng = np.random.default_rng(1)
a = DiscreteSpectralMeasure(rng.uniform(-2, 2, 7))
b = DiscreteSpectralMeasure(rng.uniform(-2, 2, 5))
for p in (1, 2, 4, math.inf):
    print(f"  W_{p}: {wasserstein_p(a, b, p):.6f}")
