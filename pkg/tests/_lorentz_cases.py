"""Random factor draws for the group-level tests."""
from __future__ import annotations

import numpy as np
from scipy.linalg import expm

from doublelie import lorentz as L


def euclid_block(n: int, rng) -> np.ndarray:
    B = rng.uniform(-1.5, 1.5, size=(n, n))
    k = np.eye(n + 1)
    k[1:, 1:] = expm(B - B.T)
    return k


def poincare_block(n: int, rng) -> np.ndarray:
    k = np.eye(n + 1)
    k[:n, :n] = L.sample_so0(n - 1, int(rng.integers(2**31)))
    return k


def factors(n: int, rng):
    t = float(rng.uniform(-2, 2))
    x = rng.uniform(-2, 2, size=n - 1)
    s = L.random_antisymmetric(n, int(rng.integers(2**31)))
    return t, x, s
