"""SO_0(1, n) in floating point: Iwasawa factors and the modified K~FN
decompositions for the Euclidean and Poincare choices of K~.

Matrices are (n+1) x (n+1) numpy arrays in the basis e_1 .. e_{n+1} with
eta = diag(1, -1, ..., -1).  Python indices are 0-based, so the 1-based
``k_{n+1,n+1}`` is ``k[n, n]``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.linalg import expm

from .errors import BadParams, NotInGroup, NumericalBreakdown, Obstructed, OnBoundary
from .report import Check, Report

TOL = 1e-9
BOUNDARY_TOL = 1e-9


def eta(n: int) -> np.ndarray:
    return np.diag([1.0] + [-1.0] * n)


def _lorentz_inverse(g: np.ndarray) -> np.ndarray:
    e = eta(g.shape[0] - 1)
    return e @ g.T @ e


# ---------------------------------------------------------------- factors

def a_matrix(n: int, t: float) -> np.ndarray:
    g = np.eye(n + 1)
    c, s = np.cosh(t), np.sinh(t)
    g[0, 0] = g[n, n] = c
    g[0, n] = g[n, 0] = s
    return g


def n_matrix(n: int, x: Sequence[float]) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (n - 1,):
        raise BadParams(f"N(x) needs x of length {n - 1}")
    h = 0.5 * float(x @ x)
    g = np.eye(n + 1)
    g[0, 0] = 1 + h
    g[0, 1:n] = -x
    g[0, n] = h
    g[1:n, 0] = -x
    g[1:n, n] = -x
    g[n, 0] = -h
    g[n, 1:n] = x
    g[n, n] = 1 - h
    return g


def _check_s(n: int, s) -> np.ndarray:
    s = np.zeros((n - 1, n - 1)) if s is None else np.asarray(s, dtype=float)
    if s.shape != (n - 1, n - 1):
        raise BadParams(f"s must be {(n - 1)}x{(n - 1)}")
    if not np.allclose(s, -s.T, atol=1e-14):
        raise BadParams("s must be antisymmetric")
    return s


def s_matrix(n: int, t: float, s=None) -> np.ndarray:
    s = _check_s(n, s)
    g = np.eye(n + 1)
    g[1:n, 1:n] = expm(t * s)
    return g


def f_matrix(n: int, t: float, s=None) -> np.ndarray:
    return a_matrix(n, t) @ s_matrix(n, t, s)


def k0_matrix(n: int) -> np.ndarray:
    return np.diag([1.0] * (n - 1) + [-1.0, -1.0])


def an_product(n: int, w: float, z: Sequence[float]) -> np.ndarray:
    """``A(w) N(z)`` from its closed form (avoids cancellation in the product)."""
    z = np.asarray(z, dtype=float)
    h = 0.5 * float(z @ z) * np.exp(-w)
    g = np.eye(n + 1)
    g[0, 0] = np.cosh(w) + h
    g[0, 1:n] = -z * np.exp(-w)
    g[0, n] = np.sinh(w) + h
    g[1:n, 0] = -z
    g[1:n, n] = -z
    g[n, 0] = np.sinh(w) - h
    g[n, 1:n] = z * np.exp(-w)
    g[n, n] = np.cosh(w) - h
    return g


def factor_matrix(kind: str, n: int, params=None) -> np.ndarray:
    """``kind`` in A, N, S, F, K0.  params: t for A; x for N; (t, s) for S and F."""
    if n < 1:
        raise BadParams("n must be >= 1")
    if kind == "A":
        return a_matrix(n, float(params))
    if kind == "N":
        return n_matrix(n, params)
    if kind in ("S", "F"):
        t, s = params if isinstance(params, tuple) else (params, None)
        return (s_matrix if kind == "S" else f_matrix)(n, float(t), s)
    if kind == "K0":
        if n < 2:
            raise BadParams("k0 needs n >= 2")
        return k0_matrix(n)
    raise BadParams(f"unknown factor kind {kind!r}")


# ---------------------------------------------------------- membership

def verify_so0(g, n: int, tol: float = TOL) -> Report:
    g = np.asarray(g, dtype=float)
    rep = Report("so0")
    if g.shape != (n + 1, n + 1):
        rep.add(Check("shape", False, value=list(g.shape)))
        return rep
    e = eta(n)
    orth = float(np.max(np.abs(g.T @ e @ g - e)))
    det = float(np.linalg.det(g))
    rep.add(Check("eta_orthogonal", orth <= tol, value=orth))
    rep.add(Check("det_one", abs(det - 1) <= tol, value=det))
    rep.add(Check("identity_component", g[0, 0] >= 1 - tol, value=float(g[0, 0])))
    return rep


def _require_so0(g, n: int, tol: float = TOL) -> np.ndarray:
    g = np.asarray(g, dtype=float)
    rep = verify_so0(g, n, tol)
    if not rep.passed:
        bad = [c.name for c in rep.checks if not c.passed]
        raise NotInGroup(f"matrix fails {', '.join(bad)}")
    return g


def sample_so0(n: int, seed: int) -> np.ndarray:
    """``exp`` of a random so(1, n) element built from entries uniform in [-2, 2]."""
    rng = np.random.default_rng(seed)
    A = rng.uniform(-2.0, 2.0, size=(n + 1, n + 1))
    e = eta(n)
    X = 0.5 * (A - e @ A.T @ e)
    return expm(X)


def random_antisymmetric(n: int, seed: int, scale: float = 1.0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    B = rng.uniform(-scale, scale, size=(n - 1, n - 1))
    return B - B.T


def block_residual_k(k: np.ndarray) -> float:
    """Distance of k from the block form diag(1, T) with T in SO(n)."""
    n = k.shape[0] - 1
    off = max(np.max(np.abs(k[0, 1:])), np.max(np.abs(k[1:, 0])), abs(k[0, 0] - 1))
    T = k[1:, 1:]
    orth = np.max(np.abs(T.T @ T - np.eye(n)))
    return float(max(off, orth, abs(np.linalg.det(T) - 1)))


def block_residual_poincare(k: np.ndarray) -> float:
    """Distance of k from diag(T~, 1) with T~ in SO_0(1, n-1)."""
    n = k.shape[0] - 1
    off = max(np.max(np.abs(k[n, :n])), np.max(np.abs(k[:n, n])), abs(k[n, n] - 1))
    T = k[:n, :n]
    e = eta(n - 1)
    orth = np.max(np.abs(T.T @ e @ T - e))
    comp = max(0.0, 1 - T[0, 0])
    return float(max(off, orth, abs(np.linalg.det(T) - 1), comp))


# ------------------------------------------------------------- Iwasawa

@dataclass
class IwasawaFactors:
    k: np.ndarray
    t: float
    x: np.ndarray

    def product(self) -> np.ndarray:
        n = self.k.shape[0] - 1
        return self.k @ an_product(n, self.t, self.x)

    def to_json(self) -> dict:
        return {"k": self.k.tolist(), "t": self.t, "x": self.x.tolist()}


def iwasawa_decompose(g, n: int, tol: float = TOL) -> IwasawaFactors:
    """``g = k A(t) N(x)``; A and N read off the first row of g."""
    g = _require_so0(g, n, tol)
    et = g[0, 0] - g[0, n]
    if et <= tol:
        raise NumericalBreakdown(f"g11 - g1,n+1 = {et:.3e}")
    t = -float(np.log(et))
    x = -g[0, 1:n] / et
    k = g @ _lorentz_inverse(an_product(n, t, x))
    return IwasawaFactors(k, t, x)


# ------------------------------------------------------------- K~FN

@dataclass
class KfnFactors:
    k_tilde: np.ndarray
    t: float
    x: np.ndarray
    branch: str
    s: np.ndarray
    block_residual: float = 0.0

    def conditioning(self) -> float:
        """``max |k~| |F(t)| |N(x)|``; float64 reconstruction error scales with eps times this."""
        n = self.k_tilde.shape[0] - 1
        F = f_matrix(n, self.t, self.s)
        return float(np.max(np.abs(self.k_tilde) @ np.abs(F) @ np.abs(n_matrix(n, self.x))))

    def product(self) -> np.ndarray:
        n = self.k_tilde.shape[0] - 1
        return self.k_tilde @ f_matrix(n, self.t, self.s) @ n_matrix(n, self.x)

    def residual(self, g) -> float:
        return float(np.max(np.abs(self.product() - np.asarray(g, dtype=float))))

    def to_json(self, g=None) -> dict:
        out = {
            "branch": self.branch, "k": self.k_tilde.tolist(), "t": self.t, "x": self.x.tolist(),
            "block_residual": self.block_residual, "conditioning": self.conditioning(),
        }
        if g is not None:
            out["residual"] = self.residual(g)
        return out


def kfn_euclid(g, n: int, s=None, tol: float = TOL) -> KfnFactors:
    """K~ = K: ``k~ = k S(-t)`` with the Iwasawa t and x."""
    s = _check_s(n, s)
    iw = iwasawa_decompose(g, n, tol)
    k_tilde = iw.k @ s_matrix(n, -iw.t, s)
    return KfnFactors(k_tilde, iw.t, iw.x, "euclid", s, block_residual_k(k_tilde))


def w_value(g, n: int) -> float:
    """``eta(g (e_1 - e_{n+1}), e_{n+1})``."""
    g = np.asarray(g, dtype=float)
    return float(-(g[n, 0] - g[n, n]))


def kfn_poincare(g, n: int, s=None, tol: float = TOL, boundary_tol: float = BOUNDARY_TOL) -> KfnFactors:
    """K~ = diag(SO_0(1, n-1), 1); possible iff the Iwasawa ``k[n, n] > 0``."""
    s = _check_s(n, s)
    iw = iwasawa_decompose(g, n, tol)
    k = iw.k
    knn = float(k[n, n])
    if knn <= boundary_tol:
        raise Obstructed(knn)
    w = float(np.log(knn))
    z = -k[n, 1:n]
    t = iw.t - w
    x = iw.x - np.exp(t) * z
    k_tilde = k @ an_product(n, w, z) @ s_matrix(n, -t, s)
    out = KfnFactors(k_tilde, t, x, "poincare", s, block_residual_poincare(k_tilde))
    # the factors grow like 1/k[n, n]; only flag misses beyond what float64 can resolve
    if out.block_residual > max(tol, 1e3 * np.finfo(float).eps * out.conditioning()):
        raise NumericalBreakdown(f"k~ misses the Poincare block form by {out.block_residual:.3e}")
    return out


def xfn_extended(g, n: int, s=None, tol: float = TOL, boundary_tol: float = BOUNDARY_TOL) -> KfnFactors:
    """``g = x f m`` with ``x`` in K~ or k0 K~."""
    g = _require_so0(g, n, tol)
    knn = float(iwasawa_decompose(g, n, tol).k[n, n])
    if abs(knn) <= boundary_tol:
        raise OnBoundary(knn)
    if knn > 0:
        return kfn_poincare(g, n, s, tol, boundary_tol)
    k0 = k0_matrix(n)
    inner = kfn_poincare(k0 @ g, n, s, tol, boundary_tol)
    return KfnFactors(k0 @ inner.k_tilde, inner.t, inner.x, "extended_k0", inner.s, inner.block_residual)


# ---------------------------------------------------------------- JSON

def matrix_from_json(data) -> np.ndarray:
    M = np.asarray(data, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise BadParams("matrix must be square")
    return M


def matrix_to_json(M: np.ndarray) -> list:
    return np.asarray(M, dtype=float).tolist()
