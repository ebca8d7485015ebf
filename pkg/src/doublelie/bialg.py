"""Bivectors, cobrackets, the Yang-Baxter trivector and coboundary solving.

Tensor convention: ``x ^ y := x (x) y - y (x) x`` and every stored
coefficient is a component of the underlying tensor.  So ``X_0 ^ X_1`` is
stored as ``r[0][1] = 1, r[1][0] = -1``, and ``d[i][j][k]`` is the
``X_j (x) X_k`` component of ``delta(X_i)``.  With this normalization the
bracket dual to ``delta`` is read off with no extra factor:
``[X*_j, X*_k] = sum_i d[i][j][k] X*_i``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterable, Sequence

from . import exact
from .errors import DimensionMismatch, NoSolution, NotProportional
from .liecore import LieAlgebra, Subspace, new_lie_algebra, verify_jacobi
from .report import Check

ZERO = Fraction(0)

# [b_x, b_x] = KAPPA0 * (-eta(x, x)) * OMEGA with the trivector conventions
# below; frozen from iso(2,1), signs (+,-,-), x = e1 (see tests/test_calibration.py).
KAPPA0 = Fraction(3, 2)


def _perm_sign(p: Sequence[int]) -> int:
    sign = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


_PERMS3 = [(perm, _perm_sign(perm)) for perm in permutations(range(3))]


class Bivector:
    """Antisymmetric element of ``g (x) g``."""

    __slots__ = ("dim", "r")

    def __init__(self, dim: int, r: Sequence[Sequence]):
        R = tuple(tuple(exact.frac(a) for a in row) for row in r)
        if len(R) != dim or any(len(row) != dim for row in R):
            raise DimensionMismatch("bivector matrix must be dim x dim")
        for i in range(dim):
            for j in range(i, dim):
                if R[i][j] != -R[j][i]:
                    raise ValueError(f"bivector not antisymmetric at ({i}, {j})")
        self.dim = dim
        self.r = R

    @classmethod
    def zero(cls, dim: int) -> "Bivector":
        return cls(dim, exact.zero_matrix(dim))

    @classmethod
    def wedge(cls, u: Sequence, w: Sequence) -> "Bivector":
        n = len(u)
        if len(w) != n:
            raise DimensionMismatch("wedge factors of different length")
        u, w = exact.vec(u), exact.vec(w)
        return cls(n, [[u[i] * w[j] - w[i] * u[j] for j in range(n)] for i in range(n)])

    @classmethod
    def from_upper(cls, dim: int, entries: Iterable) -> "Bivector":
        """From ``(i, j, value)`` with ``i < j``: value * X_i ^ X_j."""
        M = exact.zero_matrix(dim)
        for i, j, v in entries:
            v = exact.frac(v)
            M[i][j] += v
            M[j][i] -= v
        return cls(dim, M)

    def upper_entries(self):
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                if self.r[i][j]:
                    yield i, j, self.r[i][j]

    def __add__(self, other: "Bivector") -> "Bivector":
        _same(self, other)
        return Bivector(self.dim, [[a + b for a, b in zip(x, y)] for x, y in zip(self.r, other.r)])

    def __sub__(self, other: "Bivector") -> "Bivector":
        return self + (-1) * other

    def __rmul__(self, c) -> "Bivector":
        c = exact.frac(c)
        return Bivector(self.dim, [[c * a for a in row] for row in self.r])

    def __neg__(self) -> "Bivector":
        return (-1) * self

    def __eq__(self, other) -> bool:
        if not isinstance(other, Bivector):
            return NotImplemented
        return self.dim == other.dim and self.r == other.r

    def __hash__(self):
        return hash(self.r)

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.r)

    def block(self, rows: Iterable[int], cols: Iterable[int]) -> "Bivector":
        """Keep only components with one index in ``rows`` and one in ``cols``."""
        rows, cols = set(rows), set(cols)
        M = exact.zero_matrix(self.dim)
        for i in range(self.dim):
            for j in range(self.dim):
                if (i in rows and j in cols) or (i in cols and j in rows):
                    M[i][j] = self.r[i][j]
        return Bivector(self.dim, M)

    def flat(self) -> tuple:
        return tuple(self.r[i][j] for i, j in combinations(range(self.dim), 2))

    @classmethod
    def from_flat(cls, dim: int, values: Sequence) -> "Bivector":
        return cls.from_upper(dim, ((i, j, v) for (i, j), v in zip(combinations(range(dim), 2), values)))

    def contract_first(self, alpha: Sequence) -> tuple:
        """``r(alpha)``: pair ``alpha`` with the first tensor slot."""
        return tuple(
            sum((alpha[i] * self.r[i][j] for i in range(self.dim) if alpha[i] and self.r[i][j]), ZERO)
            for j in range(self.dim)
        )

    def __repr__(self) -> str:
        return f"Bivector(dim={self.dim}, nnz={sum(1 for _ in self.upper_entries())})"

    def to_json(self) -> dict:
        return {"dim": self.dim, "entries": [[i, j, exact.fstr(v)] for i, j, v in self.upper_entries()]}

    @classmethod
    def from_json(cls, data) -> "Bivector":
        if isinstance(data, str):
            data = json.loads(data)
        return cls.from_upper(int(data["dim"]), ((int(i), int(j), v) for i, j, v in data["entries"]))


class Trivector:
    """Totally antisymmetric element of ``g (x) g (x) g``; stores ``i<j<k`` components."""

    __slots__ = ("dim", "entries")

    def __init__(self, dim: int, entries: dict):
        self.dim = dim
        self.entries = {k: exact.frac(v) for k, v in entries.items() if v}
        for (i, j, k) in self.entries:
            if not (0 <= i < j < k < dim):
                raise ValueError(f"trivector key {(i, j, k)} is not increasing")

    @classmethod
    def antisymmetrize(cls, dim: int, dense: dict) -> "Trivector":
        """Alt(T) = 1/6 sum_sigma sign(sigma) sigma.T from a sparse full tensor."""
        acc: dict[tuple[int, int, int], Fraction] = {}
        for idx, v in dense.items():
            if not v or len(set(idx)) < 3:
                continue
            order = sorted(range(3), key=lambda t: idx[t])
            key = tuple(idx[t] for t in order)
            acc[key] = acc.get(key, ZERO) + _perm_sign(order) * v
        return cls(dim, {k: v / 6 for k, v in acc.items() if v})

    def get(self, i: int, j: int, k: int) -> Fraction:
        idx = (i, j, k)
        if len(set(idx)) < 3:
            return ZERO
        order = sorted(range(3), key=lambda t: idx[t])
        return _perm_sign(order) * self.entries.get(tuple(idx[t] for t in order), ZERO)

    def full(self) -> dict:
        out = {}
        for key, v in self.entries.items():
            for perm, s in _PERMS3:
                out[tuple(key[p] for p in perm)] = s * v
        return out

    def is_zero(self) -> bool:
        return not self.entries

    def __add__(self, other: "Trivector") -> "Trivector":
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, ZERO) + v
        return Trivector(self.dim, out)

    def __rmul__(self, c) -> "Trivector":
        c = exact.frac(c)
        return Trivector(self.dim, {k: c * v for k, v in self.entries.items()})

    def __sub__(self, other: "Trivector") -> "Trivector":
        return self + (-1) * other

    def __eq__(self, other) -> bool:
        if not isinstance(other, Trivector):
            return NotImplemented
        return self.dim == other.dim and self.entries == other.entries

    def __hash__(self):
        return hash(tuple(sorted(self.entries.items())))

    def __repr__(self) -> str:
        return f"Trivector(dim={self.dim}, nnz={len(self.entries)})"

    def to_json(self) -> dict:
        return {"dim": self.dim, "entries": [[*k, exact.fstr(v)] for k, v in sorted(self.entries.items())]}

    @classmethod
    def from_json(cls, data) -> "Trivector":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(data["dim"]), {(int(i), int(j), int(k)): exact.frac(v) for i, j, k, v in data["entries"]})


class Cobracket:
    """Linear map ``g -> g ^ g``; ``d[i]`` is the tensor of ``delta(X_i)``."""

    __slots__ = ("dim", "d")

    def __init__(self, dim: int, d: Sequence[Sequence[Sequence]]):
        D = tuple(tuple(tuple(exact.frac(a) for a in row) for row in plane) for plane in d)
        if len(D) != dim or any(len(p) != dim or any(len(r) != dim for r in p) for p in D):
            raise DimensionMismatch("cobracket must be dim x dim x dim")
        for i in range(dim):
            for j in range(dim):
                for k in range(j, dim):
                    if D[i][j][k] != -D[i][k][j]:
                        raise ValueError(f"cobracket not antisymmetric at ({i}, {j}, {k})")
        self.dim = dim
        self.d = D

    @classmethod
    def from_images(cls, images: Sequence[Bivector]) -> "Cobracket":
        return cls(len(images), [b.r for b in images])

    def image(self, i: int) -> Bivector:
        return Bivector(self.dim, self.d[i])

    def apply(self, X: Sequence) -> Bivector:
        n = self.dim
        M = exact.zero_matrix(n)
        for i, a in enumerate(X):
            if a:
                for j in range(n):
                    for k in range(n):
                        if self.d[i][j][k]:
                            M[j][k] += a * self.d[i][j][k]
        return Bivector(n, M)

    def corrupted(self, i: int, j: int, k: int, delta=1) -> "Cobracket":
        """Copy with ``d[i][j][k]`` shifted by ``delta`` (and ``d[i][k][j]`` by ``-delta``)."""
        if j == k:
            raise ValueError("diagonal entries are fixed at zero")
        D = [[list(row) for row in plane] for plane in self.d]
        D[i][j][k] += exact.frac(delta)
        D[i][k][j] -= exact.frac(delta)
        return Cobracket(self.dim, D)

    def flat(self) -> tuple:
        pairs = list(combinations(range(self.dim), 2))
        return tuple(self.d[i][j][k] for i in range(self.dim) for j, k in pairs)

    def __add__(self, other: "Cobracket") -> "Cobracket":
        _same(self, other)
        return Cobracket(self.dim, [[[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(p1, p2)] for p1, p2 in zip(self.d, other.d)])

    def __rmul__(self, c) -> "Cobracket":
        c = exact.frac(c)
        return Cobracket(self.dim, [[[c * a for a in r] for r in p] for p in self.d])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cobracket):
            return NotImplemented
        return self.dim == other.dim and self.d == other.d

    def __hash__(self):
        return hash(self.d)

    def is_zero(self) -> bool:
        return not any(any(any(r) for r in p) for p in self.d)

    def __repr__(self) -> str:
        return f"Cobracket(dim={self.dim})"

    def to_json(self) -> dict:
        ent = []
        for i in range(self.dim):
            for j, k in combinations(range(self.dim), 2):
                if self.d[i][j][k]:
                    ent.append([i, j, k, exact.fstr(self.d[i][j][k])])
        return {"dim": self.dim, "entries": ent}

    @classmethod
    def from_json(cls, data) -> "Cobracket":
        if isinstance(data, str):
            data = json.loads(data)
        n = int(data["dim"])
        D = [exact.zero_matrix(n) for _ in range(n)]
        for i, j, k, v in data["entries"]:
            v = exact.frac(v)
            D[int(i)][int(j)][int(k)] += v
            D[int(i)][int(k)][int(j)] -= v
        return cls(n, D)


def _same(a, b):
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimensions {a.dim} and {b.dim} differ")


def _check_dims(alg: LieAlgebra, obj) -> None:
    if alg.dim != obj.dim:
        raise DimensionMismatch(f"algebra dim {alg.dim}, tensor dim {obj.dim}")


def ad_on_bivector(A: Sequence[Sequence], r: Sequence[Sequence]) -> list[list[Fraction]]:
    """``(A (x) 1 + 1 (x) A) r`` for a matrix ``A`` acting on ``g``, i.e. ``A r + r A^T``."""
    n = len(A)
    Ar = exact.matmul(A, r)
    out = [row[:] for row in Ar]
    for i in range(n):
        for j in range(i, n):
            v = Ar[i][j] - Ar[j][i]
            out[i][j] = v
            out[j][i] = -v
    return out


def coboundary_cobracket(alg: LieAlgebra, r: Bivector) -> Cobracket:
    """``delta(x) = ad_x r``."""
    _check_dims(alg, r)
    return Cobracket(alg.dim, [ad_on_bivector(alg.ad_basis(a), r.r) for a in range(alg.dim)])


def verify_cocycle(alg: LieAlgebra, delta: Cobracket) -> Check:
    """``delta([x, y]) = ad_x delta(y) - ad_y delta(x)`` on all basis pairs."""
    _check_dims(alg, delta)
    n = alg.dim
    for a in range(n):
        Aa = alg.ad_basis(a)
        for b in range(a + 1, n):
            lhs = exact.zero_matrix(n)
            for m, v in alg.bracket_basis(a, b).items():
                for j in range(n):
                    for k in range(n):
                        if delta.d[m][j][k]:
                            lhs[j][k] += v * delta.d[m][j][k]
            t1 = ad_on_bivector(Aa, delta.d[b])
            t2 = ad_on_bivector(alg.ad_basis(b), delta.d[a])
            for j in range(n):
                for k in range(j + 1, n):
                    if lhs[j][k] != t1[j][k] - t2[j][k]:
                        return Check("cocycle", False, witness=(a, b, j, k))
    return Check("cocycle", True)


def dual_algebra_from_cobracket(delta: Cobracket, labels: Sequence[str] | None = None):
    """Bracket on ``g*`` dual to ``delta``; returns ``(algebra, co-Jacobi check)``."""
    n = delta.dim
    consts = {}
    for i in range(n):
        for j in range(n):
            for k in range(j + 1, n):
                v = delta.d[i][j][k]
                if v:
                    consts[(j, k, i)] = v
    if labels is None:
        labels = [f"X{i + 1}*" for i in range(n)]
    alg = new_lie_algebra(n, labels, consts)
    return alg, verify_jacobi(alg)


def cyb_trivector(alg: LieAlgebra, r: Bivector) -> Trivector:
    """``[r12, r13] + [r12, r23] + [r13, r23]``, totally antisymmetrized."""
    _check_dims(alg, r)
    n = alg.dim
    R = r.r
    rows = [[(b, R[i][b]) for b in range(n) if R[i][b]] for i in range(n)]
    consts = []
    for i, k, a, v in alg.nonzero_constants():
        consts.append((i, k, a, v))
        consts.append((k, i, a, -v))
    T: dict[tuple[int, int, int], Fraction] = {}

    def bump(key, val):
        T[key] = T.get(key, ZERO) + val

    for i, k, a, v in consts:
        # c_{ik}^a r^{ib} r^{kc}
        for b, rib in rows[i]:
            for c, rkc in rows[k]:
                bump((a, b, c), v * rib * rkc)
        # c_{ik}^b r^{a i} r^{k c}, relabelled: middle slot gets a
        for x, rxi in ((x, R[x][i]) for x in range(n) if R[x][i]):
            for c, rkc in rows[k]:
                bump((x, a, c), v * rxi * rkc)
            # c_{ik}^c r^{x i} r^{y k}
            for y, ryk in ((y, R[y][k]) for y in range(n) if R[y][k]):
                bump((x, y, a), v * rxi * ryk)
    return Trivector.antisymmetrize(n, T)


def act_on_trivector(A: Sequence[Sequence], T: Trivector) -> dict:
    """``(A(x)1(x)1 + 1(x)A(x)1 + 1(x)1(x)A) T`` as a sparse full tensor."""
    n = T.dim
    cols = [[(k, A[k][p]) for k in range(n) if A[k][p]] for p in range(n)]
    out: dict[tuple[int, int, int], Fraction] = {}
    for (a, b, c), v in T.full().items():
        for k, w in cols[a]:
            key = (k, b, c)
            out[key] = out.get(key, ZERO) + w * v
        for k, w in cols[b]:
            key = (a, k, c)
            out[key] = out.get(key, ZERO) + w * v
        for k, w in cols[c]:
            key = (a, b, k)
            out[key] = out.get(key, ZERO) + w * v
    return {k: v for k, v in out.items() if v}


def invariance_witness(alg: LieAlgebra, T: Trivector):
    """First ``(generator, index triple)`` where ``ad`` does not kill ``T``, else None."""
    _check_dims(alg, T)
    for m in range(alg.dim):
        moved = act_on_trivector(alg.ad_basis(m), T)
        if moved:
            return (m, min(moved))
    return None


def proportionality(T: Trivector, omega: Trivector):
    """``lam`` with ``T = lam * omega`` or None."""
    if omega.is_zero():
        raise ValueError("reference trivector is zero")
    key = next(iter(sorted(omega.entries)))
    lam = T.entries.get(key, ZERO) / omega.entries[key]
    if T == lam * omega:
        return lam
    return None


@dataclass
class GcybeReport:
    invariant: bool
    proportional: bool
    lam: Fraction | None = None
    witness: object = None
    kappa0: Fraction = field(default=KAPPA0, repr=False)

    @property
    def t(self) -> Fraction:
        if self.lam is None:
            raise NotProportional("[r, r] is not a multiple of Omega")
        return self.lam / self.kappa0

    def to_json(self) -> dict:
        out = {"invariant": self.invariant, "proportional": self.proportional}
        if self.lam is not None:
            out["lambda"] = exact.fstr(self.lam)
            out["t"] = exact.fstr(self.t)
        if self.witness is not None:
            out["witness"] = list(self.witness) if isinstance(self.witness, tuple) else self.witness
        return out


def gcybe_report(alg: LieAlgebra, r: Bivector, omega: Trivector) -> GcybeReport:
    if omega.is_zero():
        raise ValueError("omega must be nonzero")
    T = cyb_trivector(alg, r)
    w = invariance_witness(alg, T)
    lam = proportionality(T, omega)
    return GcybeReport(invariant=w is None, proportional=lam is not None, lam=lam, witness=w)


def _coboundary_columns(alg: LieAlgebra) -> list[tuple]:
    n = alg.dim
    cols = []
    for i, j in combinations(range(n), 2):
        E = Bivector.from_upper(n, [(i, j, 1)])
        cols.append(coboundary_cobracket(alg, E).flat())
    return cols


@dataclass
class CoboundarySolution:
    particular: Bivector
    kernel_basis: list[Bivector]


def solve_coboundary(alg: LieAlgebra, delta: Cobracket) -> CoboundarySolution:
    """All ``r`` with ``ad_x r = delta(x)``: one particular solution plus the
    invariant bivectors (kernel of the coboundary map)."""
    _check_dims(alg, delta)
    n = alg.dim
    cols = _coboundary_columns(alg)
    rows = exact.transpose(cols) if cols else []
    rhs = delta.flat()
    nunk = len(cols)
    if nunk == 0:
        if not delta.is_zero():
            raise NoSolution("no bivectors in dimension < 2")
        return CoboundarySolution(Bivector.zero(n), [])
    sol, kernel = exact.solve(rows, rhs, nunk)
    if sol is None:
        raise NoSolution("delta is not a coboundary")
    return CoboundarySolution(Bivector.from_flat(n, sol), [Bivector.from_flat(n, k) for k in kernel])


def is_invariant_bivector(alg: LieAlgebra, r: Bivector) -> bool:
    return coboundary_cobracket(alg, r).is_zero()


def cobracket_shape(delta: Cobracket, part_a: Sequence[int], part_v: Sequence[int]) -> dict:
    """Checks ``delta(a) in a^V`` and ``delta(V) in V^V`` for index partitions."""
    A, V = set(part_a), set(part_v)

    def first_bad(sources, allowed):
        for i in sources:
            for j in range(delta.dim):
                for k in range(delta.dim):
                    if delta.d[i][j][k] and not allowed(j, k):
                        return (i, j, k)
        return None

    mixed = lambda j, k: (j in A and k in V) or (j in V and k in A)
    vv = lambda j, k: j in V and k in V
    wa = first_bad(sorted(A), mixed)
    wv = first_bad(sorted(V), vv)
    return {
        "delta_a_in_a_wedge_V": Check("delta_a_in_a_wedge_V", wa is None, witness=wa),
        "delta_V_in_V_wedge_V": Check("delta_V_in_V_wedge_V", wv is None, witness=wv),
    }
