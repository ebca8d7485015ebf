"""Finite-dimensional Lie algebras over Q given by structure constants.

Basis indices are 0-based in code.  ``c[i][j][k]`` is the coefficient of
``X_k`` in ``[X_i, X_j]``.  Dual coordinates always refer to the coordinate
dual basis, ``<X_i, X*_j> = delta_ij``; any other pairing is passed around
explicitly as a :class:`BilinearForm`.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from . import exact
from .errors import AntisymmetryViolation, DimensionMismatch
from .report import Check, Report

ZERO = Fraction(0)


@dataclass(frozen=True)
class Metric:
    """Diagonal +-1 bilinear form on R^{n+1}, in basis order."""

    signs: tuple[int, ...]

    def __post_init__(self):
        signs = tuple(int(s) for s in self.signs)
        if not signs or any(s not in (1, -1) for s in signs):
            raise ValueError(f"metric entries must be +1/-1, got {self.signs!r}")
        object.__setattr__(self, "signs", signs)

    @classmethod
    def parse(cls, text: str) -> "Metric":
        table = {"+": 1, "-": -1, "−": -1}
        try:
            return cls(tuple(table[ch] for ch in text.strip()))
        except KeyError as exc:
            raise ValueError(f"bad metric string {text!r}") from exc

    @classmethod
    def signature(cls, p: int, q: int) -> "Metric":
        return cls((1,) * p + (-1,) * q)

    @property
    def size(self) -> int:
        return len(self.signs)

    @property
    def p(self) -> int:
        return self.signs.count(1)

    @property
    def q(self) -> int:
        return self.signs.count(-1)

    def __getitem__(self, i: int) -> int:
        return self.signs[i]

    def eta(self, i: int, j: int) -> int:
        return self.signs[i] if i == j else 0

    def form(self, x: Sequence, y: Sequence) -> Fraction:
        return sum((s * a * b for s, a, b in zip(self.signs, x, y)), ZERO)

    def restrict(self, indices: Iterable[int]) -> "Metric":
        return Metric(tuple(self.signs[i] for i in indices))

    def __str__(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self.signs)


class LieAlgebra:
    """Immutable structure-constant table.

    Only ``i < j`` entries are stored; the rest follows from antisymmetry.
    """

    __slots__ = ("dim", "labels", "_table", "_ad_cache")

    def __init__(self, dim: int, labels: Sequence[str], table: Mapping):
        self.dim = int(dim)
        self.labels = tuple(labels)
        if len(self.labels) != self.dim:
            raise DimensionMismatch(f"{len(self.labels)} labels for dim {self.dim}")
        clean = {}
        for (i, j), row in table.items():
            row = {k: exact.frac(v) for k, v in row.items() if v}
            if row:
                clean[(i, j)] = row
        self._table = clean
        self._ad_cache = None

    def const(self, i: int, j: int, k: int) -> Fraction:
        if i == j:
            return ZERO
        if i < j:
            return self._table.get((i, j), {}).get(k, ZERO)
        return -self._table.get((j, i), {}).get(k, ZERO)

    def bracket_basis(self, i: int, j: int) -> dict[int, Fraction]:
        if i < j:
            return dict(self._table.get((i, j), {}))
        if i > j:
            return {k: -v for k, v in self._table.get((j, i), {}).items()}
        return {}

    def nonzero_constants(self):
        """Yield ``(i, j, k, value)`` for stored ``i < j`` entries."""
        for (i, j), row in sorted(self._table.items()):
            for k, v in sorted(row.items()):
                yield i, j, k, v

    def is_abelian(self) -> bool:
        return not self._table

    def bracket(self, X: Sequence, Y: Sequence) -> tuple:
        if len(X) != self.dim or len(Y) != self.dim:
            raise DimensionMismatch(f"vectors of length {len(X)}, {len(Y)} in dim {self.dim}")
        out = [ZERO] * self.dim
        xs = [(i, a) for i, a in enumerate(X) if a]
        ys = [(j, b) for j, b in enumerate(Y) if b]
        for i, a in xs:
            for j, b in ys:
                if i == j:
                    continue
                for k, v in self.bracket_basis(i, j).items():
                    out[k] += a * b * v
        return tuple(out)

    def ad_basis(self, i: int) -> list[list[Fraction]]:
        """Matrix of ``ad_{X_i}``: column j holds ``[X_i, X_j]``."""
        if self._ad_cache is None:
            cache = []
            for a in range(self.dim):
                M = exact.zero_matrix(self.dim)
                for j in range(self.dim):
                    for k, v in self.bracket_basis(a, j).items():
                        M[k][j] = v
                cache.append(M)
            self._ad_cache = cache
        return self._ad_cache[i]

    def ad(self, X: Sequence) -> list[list[Fraction]]:
        if len(X) != self.dim:
            raise DimensionMismatch(f"vector of length {len(X)} in dim {self.dim}")
        M = exact.zero_matrix(self.dim)
        for i, a in enumerate(X):
            if a:
                A = self.ad_basis(i)
                for r in range(self.dim):
                    for c in range(self.dim):
                        if A[r][c]:
                            M[r][c] += a * A[r][c]
        return M

    def basis_vector(self, i: int) -> tuple:
        return exact.unit(self.dim, i)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.dim == other.dim and self._table == other._table

    def __hash__(self):
        return hash((self.dim, tuple(sorted((k, tuple(sorted(v.items()))) for k, v in self._table.items()))))

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self.dim}, nonzero={sum(len(r) for r in self._table.values())})"

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "labels": list(self.labels),
            "constants": [[i, j, k, exact.fstr(v)] for i, j, k, v in self.nonzero_constants()],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "LieAlgebra":
        if isinstance(data, str):
            data = json.loads(data)
        consts = {(int(i), int(j), int(k)): exact.frac(v) for i, j, k, v in data["constants"]}
        return new_lie_algebra(int(data["dim"]), data.get("labels"), consts)


def new_lie_algebra(dim: int, labels: Sequence[str] | None = None, constants=None) -> LieAlgebra:
    """Build an algebra from structure constants.

    ``constants`` is either a mapping ``{(i, j, k): value}`` or a dense
    ``dim x dim x dim`` nested sequence.  When both ``(i, j, k)`` and
    ``(j, i, k)`` are given they must be negatives of each other.
    """
    if labels is None:
        labels = [f"X{i + 1}" for i in range(dim)]
    given: dict[tuple[int, int, int], Fraction] = {}
    if constants is None:
        constants = {}
    if isinstance(constants, Mapping):
        for (i, j, k), v in constants.items():
            if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                raise DimensionMismatch(f"constant index {(i, j, k)} outside dim {dim}")
            given[(i, j, k)] = exact.frac(v)
    else:
        if len(constants) != dim:
            raise DimensionMismatch("dense constants must be dim x dim x dim")
        for i, plane in enumerate(constants):
            for j, row in enumerate(plane):
                for k, v in enumerate(row):
                    v = exact.frac(v)
                    if v:
                        given[(i, j, k)] = v
    table: dict[tuple[int, int], dict[int, Fraction]] = {}
    for (i, j, k), v in given.items():
        if i == j:
            if v:
                raise AntisymmetryViolation(i, j, k)
            continue
        other = given.get((j, i, k))
        if other is not None and other != -v:
            raise AntisymmetryViolation(i, j, k)
        a, b, val = (i, j, v) if i < j else (j, i, -v)
        table.setdefault((a, b), {})[k] = val
    return LieAlgebra(dim, labels, table)


def abelian(dim: int) -> LieAlgebra:
    return LieAlgebra(dim, [f"X{i + 1}" for i in range(dim)], {})


def _sparse_bracket_of_sparse(alg: LieAlgebra, u: Mapping[int, Fraction], k: int) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for m, a in u.items():
        for l, v in alg.bracket_basis(m, k).items():
            out[l] = out.get(l, ZERO) + a * v
    return out


def verify_jacobi(alg: LieAlgebra) -> Check:
    """Exhaustive Jacobi check; witness is the first bad ``(i, j, k, l)``."""
    for i, j, k in combinations(range(alg.dim), 3):
        total: dict[int, Fraction] = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            for l, v in _sparse_bracket_of_sparse(alg, alg.bracket_basis(a, b), c).items():
                total[l] = total.get(l, ZERO) + v
        for l in sorted(total):
            if total[l]:
                return Check("jacobi", False, witness=(i, j, k, l), value=total[l])
    return Check("jacobi", True)


def verify_antisymmetry(alg: LieAlgebra) -> Check:
    for i in range(alg.dim):
        for j in range(alg.dim):
            for k in range(alg.dim):
                if alg.const(i, j, k) != -alg.const(j, i, k):
                    return Check("antisymmetry", False, witness=(i, j, k))
    return Check("antisymmetry", True)


def rep_matrix(alg: LieAlgebra, kind: str, X: Sequence) -> list[list[Fraction]]:
    """Adjoint matrix of X, or the coadjoint one ``-ad(X)^T`` on the dual."""
    if kind == "adjoint":
        return alg.ad(X)
    if kind == "coadjoint":
        return [[-a for a in row] for row in exact.transpose(alg.ad(X))]
    raise ValueError(f"unknown representation kind {kind!r}")


def semidirect_with_dual(alg: LieAlgebra) -> LieAlgebra:
    """``g x| g*`` with the coadjoint action; basis ``(X_i, X*_i)``."""
    n = alg.dim
    consts: dict[tuple[int, int, int], Fraction] = {}
    for i, j, k, v in alg.nonzero_constants():
        consts[(i, j, k)] = v
        # [X_i, X*_k] gets -c[i][j][k] X*_j, and symmetrically for X_j
        consts[(i, n + k, n + j)] = consts.get((i, n + k, n + j), ZERO) - v
        consts[(j, n + k, n + i)] = consts.get((j, n + k, n + i), ZERO) + v
    labels = list(alg.labels) + [f"{lab}*" for lab in alg.labels]
    return new_lie_algebra(2 * n, labels, {k: v for k, v in consts.items() if v})


@dataclass(frozen=True, eq=False)
class Subspace:
    """Span of independent exact vectors.

    ``generators`` keeps the caller's order (later code pairs bases by it);
    ``echelon`` is the canonical reduced form used for membership and
    equality.
    """

    parent_dim: int
    generators: tuple
    echelon: tuple
    pivots: tuple

    @classmethod
    def from_vectors(cls, parent_dim: int, vectors: Iterable[Sequence], drop_dependent: bool = False) -> "Subspace":
        gens = []
        for v in vectors:
            v = exact.vec(v)
            if len(v) != parent_dim:
                raise DimensionMismatch(f"vector of length {len(v)} in a {parent_dim}-dim space")
            gens.append(v)
        if drop_dependent:
            kept: list[tuple] = []
            for v in gens:
                if exact.rank(kept + [v], parent_dim) > len(kept):
                    kept.append(v)
            gens = kept
        R, piv = exact.rref(gens, parent_dim) if gens else ([], [])
        if len(piv) != len(gens):
            raise ValueError("generators are linearly dependent")
        return cls(parent_dim, tuple(gens), tuple(tuple(r) for r in R), tuple(piv))

    @classmethod
    def full(cls, dim: int) -> "Subspace":
        return cls.from_vectors(dim, [exact.unit(dim, i) for i in range(dim)])

    @classmethod
    def zero(cls, dim: int) -> "Subspace":
        return cls.from_vectors(dim, [])

    @property
    def dim(self) -> int:
        return len(self.generators)

    def residual(self, v: Sequence) -> tuple:
        r = list(exact.vec(v))
        for row, pc in zip(self.echelon, self.pivots):
            f = r[pc]
            if f:
                for j, a in enumerate(row):
                    if a:
                        r[j] -= f * a
        return tuple(r)

    def contains(self, v: Sequence) -> bool:
        return exact.is_zero(self.residual(v))

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def coordinates(self, v: Sequence) -> tuple:
        """Coefficients of ``v`` on ``generators``; ValueError if outside."""
        coords = exact.coordinates(self.generators, v)
        if coords is None:
            raise ValueError("vector is not in the subspace")
        return coords

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.parent_dim == other.parent_dim and self.echelon == other.echelon

    def __hash__(self):
        return hash((self.parent_dim, self.echelon))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, parent_dim={self.parent_dim})"


def annihilator(alg_dim: int, A: Subspace) -> Subspace:
    """``A^0`` in dual coordinates."""
    if A.parent_dim != alg_dim:
        raise DimensionMismatch(f"subspace of a {A.parent_dim}-dim space, expected {alg_dim}")
    if A.dim == 0:
        return Subspace.full(alg_dim)
    return Subspace.from_vectors(alg_dim, exact.nullspace(list(A.generators), alg_dim))


def is_subalgebra(alg: LieAlgebra, A: Subspace) -> Check:
    if A.parent_dim != alg.dim:
        raise DimensionMismatch("subspace and algebra dimensions differ")
    gens = A.generators
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            br = alg.bracket(gens[a], gens[b])
            if not A.contains(br):
                return Check("subalgebra", False, witness=(a, b))
    return Check("subalgebra", True)


def direct_sum_check(dim: int, A: Subspace, B: Subspace) -> Check:
    stacked = list(A.generators) + list(B.generators)
    r = exact.rank(stacked, dim) if stacked else 0
    ok = A.dim + B.dim == dim and r == dim
    return Check("direct_sum", ok, witness=None if ok else {"dimA": A.dim, "dimB": B.dim, "rank": r})


def verify_double_decomposition(alg: LieAlgebra, A: Subspace, B: Subspace) -> Report:
    rep = Report("double_decomposition")
    rep.add(Check("A_subalgebra", *_cw(is_subalgebra(alg, A))))
    rep.add(Check("B_subalgebra", *_cw(is_subalgebra(alg, B))))
    rep.add(direct_sum_check(alg.dim, A, B))
    return rep


def _cw(check: Check):
    return check.passed, check.witness


@dataclass(frozen=True, eq=False)
class BilinearForm:
    dim: int
    matrix: tuple
    symmetric: bool = True

    def __post_init__(self):
        M = tuple(tuple(exact.frac(a) for a in row) for row in self.matrix)
        if len(M) != self.dim or any(len(r) != self.dim for r in M):
            raise DimensionMismatch("form matrix must be dim x dim")
        if self.symmetric and any(M[i][j] != M[j][i] for i in range(self.dim) for j in range(i)):
            raise ValueError("matrix flagged symmetric is not symmetric")
        object.__setattr__(self, "matrix", M)

    def __call__(self, x: Sequence, y: Sequence) -> Fraction:
        total = ZERO
        for i, a in enumerate(x):
            if a:
                row = self.matrix[i]
                for j, b in enumerate(y):
                    if b and row[j]:
                        total += a * row[j] * b
        return total

    def gram(self, X: Sequence[Sequence], Y: Sequence[Sequence]) -> list[list[Fraction]]:
        return [[self(x, y) for y in Y] for x in X]

    def is_nondegenerate(self) -> bool:
        return exact.det(self.matrix) != 0

    def vanishes_on(self, A: Subspace) -> Check:
        for a, x in enumerate(A.generators):
            for b, y in enumerate(A.generators):
                if self(x, y):
                    return Check("isotropic", False, witness=(a, b))
        return Check("isotropic", True)

    @classmethod
    def identity(cls, dim: int) -> "BilinearForm":
        return cls(dim, tuple(map(tuple, exact.identity(dim))))


def canonical_pairing(dim: int) -> BilinearForm:
    """Symmetric form on ``g + g*`` with ``<X_i, X*_j> = delta_ij``."""
    M = exact.zero_matrix(2 * dim)
    for i in range(dim):
        M[i][dim + i] = Fraction(1)
        M[dim + i][i] = Fraction(1)
    return BilinearForm(2 * dim, tuple(map(tuple, M)))


def verify_invariant_form(alg: LieAlgebra, form: BilinearForm) -> Report:
    """``<[z,x],y> + <x,[z,y]> = 0`` on all basis triples, plus nondegeneracy."""
    if form.dim != alg.dim:
        raise DimensionMismatch("form and algebra dimensions differ")
    n = alg.dim
    M = form.matrix
    witness = None
    for z in range(n):
        A = alg.ad_basis(z)
        # (ad_z)^T M + M ad_z must vanish
        for x in range(n):
            for y in range(n):
                s = ZERO
                for k in range(n):
                    if A[k][x] and M[k][y]:
                        s += A[k][x] * M[k][y]
                    if M[x][k] and A[k][y]:
                        s += M[x][k] * A[k][y]
                if s:
                    witness = (z, x, y)
                    break
            if witness:
                break
        if witness:
            break
    rep = Report("invariant_form")
    rep.add(Check("invariant", witness is None, witness=witness))
    rep.add(Check("nondegenerate", form.is_nondegenerate()))
    return rep


def is_homomorphism(src: LieAlgebra, dst: LieAlgebra, images: Sequence[Sequence]) -> Check:
    """``images[i]`` is the image of ``src``'s i-th basis vector."""
    if len(images) != src.dim or any(len(v) != dst.dim for v in images):
        raise DimensionMismatch("image list does not match the algebras")
    for i in range(src.dim):
        for j in range(i + 1, src.dim):
            lhs = exact.lincomb(
                [src.const(i, j, k) for k in range(src.dim)], images, dst.dim
            )
            rhs = dst.bracket(images[i], images[j])
            if lhs != rhs:
                return Check("homomorphism", False, witness=(i, j))
    return Check("homomorphism", True)


def is_isomorphism(src: LieAlgebra, dst: LieAlgebra, images: Sequence[Sequence]) -> Check:
    if src.dim != dst.dim:
        return Check("isomorphism", False, witness="dimension")
    if exact.rank(list(images), dst.dim) != dst.dim:
        return Check("isomorphism", False, witness="not bijective")
    hom = is_homomorphism(src, dst, images)
    return Check("isomorphism", hom.passed, witness=hom.witness)


def stabilizes(matrices: Iterable[Sequence[Sequence]], S: Subspace) -> Check:
    """Every matrix maps S into itself."""
    for m, M in enumerate(matrices):
        for g, v in enumerate(S.generators):
            if not S.contains(exact.matvec(M, v)):
                return Check("stable", False, witness=(m, g))
    return Check("stable", True)


def annihilates(matrices: Iterable[Sequence[Sequence]], S: Subspace) -> Check:
    for m, M in enumerate(matrices):
        for g, v in enumerate(S.generators):
            if not exact.is_zero(exact.matvec(M, v)):
                return Check("annihilates", False, witness=(m, g))
    return Check("annihilates", True)


def maps_into(matrices: Iterable[Sequence[Sequence]], S: Subspace, T: Subspace) -> Check:
    for m, M in enumerate(matrices):
        for g, v in enumerate(S.generators):
            if not T.contains(exact.matvec(M, v)):
                return Check("maps_into", False, witness=(m, g))
    return Check("maps_into", True)
