"""Exact rational linear algebra on plain Python lists of Fractions.

Matrices are lists of rows.  Nothing here touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple  # tuple[Fraction, ...]


def frac(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: they would smuggle rounding into exact code.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot use {type(x).__name__} as an exact scalar")


def fstr(x: Fraction) -> str:
    return str(Fraction(x))


def vec(values: Iterable) -> Vector:
    return tuple(frac(v) for v in values)


def zeros(n: int) -> Vector:
    return (Fraction(0),) * n


def unit(n: int, i: int) -> Vector:
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return tuple(v)


def add(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, u: Sequence) -> Vector:
    c = frac(c)
    return tuple(c * a for a in u)


def lincomb(coeffs: Sequence, vectors: Sequence[Sequence], n: int | None = None) -> Vector:
    if n is None:
        n = len(vectors[0])
    out = [Fraction(0)] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for i, a in enumerate(v):
                if a:
                    out[i] += c * a
    return tuple(out)


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v) if a and b), Fraction(0))


def is_zero(u: Iterable) -> bool:
    return not any(u)


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list[Fraction]]:
    m = len(B[0]) if B else 0
    out = []
    for row in A:
        r = [Fraction(0)] * m
        for k, a in enumerate(row):
            if a:
                for j, b in enumerate(B[k]):
                    if b:
                        r[j] += a * b
        out.append(r)
    return out


def matvec(A: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(dot(row, v) for row in A)


def transpose(A: Sequence[Sequence]) -> list[list[Fraction]]:
    return [list(col) for col in zip(*A)]


def identity(n: int) -> list[list[Fraction]]:
    return [list(unit(n, i)) for i in range(n)]


def zero_matrix(n: int, m: int | None = None) -> list[list[Fraction]]:
    return [[Fraction(0)] * (n if m is None else m) for _ in range(n)]


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row-echelon form.

    Returns ``(R, pivots)`` where ``R`` holds only the nonzero rows.
    """
    M = [[frac(a) for a in r] for r in rows]
    if ncols is None:
        ncols = len(M[0]) if M else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        lead = M[r][c]
        if lead != 1:
            M[r] = [a / lead for a in M[r]]
        prow = M[r]
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(len(M)):
            if i != r:
                f = M[i][c]
                if f:
                    Mi = M[i]
                    for j in nz:
                        Mi[j] -= f * prow[j]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    if not rows:
        return 0
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Basis of ``{v : M v = 0}``, one vector per free column."""
    if not rows:
        return [unit(ncols, i) for i in range(ncols)]
    R, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[fcol]
        basis.append(tuple(v))
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence, ncols: int | None = None):
    """Solve ``M v = rhs``.

    Returns ``(particular, kernel_basis)``; ``particular`` is None when the
    system is inconsistent.  Free variables of the particular solution are 0.
    """
    if ncols is None:
        ncols = len(rows[0])
    aug = [list(r) + [frac(b)] for r, b in zip(rows, rhs)]
    R, pivots = rref(aug, ncols + 1)
    kernel = nullspace([r[:ncols] for r in R], ncols) if R else [unit(ncols, i) for i in range(ncols)]
    if pivots and pivots[-1] == ncols:
        return None, kernel
    v = [Fraction(0)] * ncols
    for row, pc in zip(R, pivots):
        v[pc] = row[ncols]
    return tuple(v), kernel


def inverse(A: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(A)
    aug = [list(map(frac, row)) + list(unit(n, i)) for i, row in enumerate(A)]
    R, pivots = rref(aug, 2 * n)
    if len(pivots) < n or pivots[n - 1] != n - 1:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def det(A: Sequence[Sequence]) -> Fraction:
    M = [[frac(a) for a in r] for r in A]
    n = len(M)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        d *= M[c][c]
        for i in range(c + 1, n):
            f = M[i][c] / M[c][c]
            if f:
                for j in range(c, n):
                    M[i][j] -= f * M[c][j]
    return d


def coordinates(basis: Sequence[Sequence], v: Sequence) -> Vector | None:
    """Coefficients of ``v`` in the (independent) rows ``basis``, or None."""
    if not basis:
        return () if is_zero(v) else None
    cols = transpose(basis)
    sol, _ = solve(cols, v, len(basis))
    return sol
