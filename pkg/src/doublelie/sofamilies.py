"""so(p,q), iso(p,q), the invariant trivector, b-type r-matrices and the
Iwasawa-type subalgebras of so(p,q).

Indices are 0-based: the vector space V has basis ``e_0 .. e_{N-1}``
(``N = n + 1``) and ``so`` has basis ``L_ij = e_i (x) eta(e_j) - e_j (x) eta(e_i)``
for ``i < j`` in lexicographic order.  ``iso`` lists the ``L_ij`` first and
then the translations ``e_k``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from . import exact
from .bialg import Bivector, Trivector, coboundary_cobracket, Cobracket
from .errors import (
    ConstraintViolated,
    DimensionMismatch,
    EigenstructureViolated,
    NotBType,
    NotClosed,
)
from .liecore import (
    BilinearForm,
    LieAlgebra,
    Metric,
    Subspace,
    direct_sum_check,
    is_subalgebra,
    new_lie_algebra,
    rep_matrix,
)
from .report import Check, Report

ZERO = Fraction(0)


# ---------------------------------------------------------------- indexing

@lru_cache(maxsize=None)
def lambda_pairs(N: int) -> tuple:
    return tuple(combinations(range(N), 2))


@lru_cache(maxsize=None)
def _pair_index(N: int) -> dict:
    return {p: a for a, p in enumerate(lambda_pairs(N))}


def so_dim(N: int) -> int:
    return N * (N - 1) // 2


def lambda_index(N: int, i: int, j: int) -> tuple[int, int]:
    """``(flat index, sign)`` with ``L_ij = sign * basis[index]``; sign 0 if i == j."""
    if i == j:
        return 0, 0
    if i < j:
        return _pair_index(N)[(i, j)], 1
    return _pair_index(N)[(j, i)], -1


def _label(i: int, j: int, N: int) -> str:
    return f"L{i + 1}{j + 1}" if N <= 9 else f"L{i + 1}_{j + 1}"


def lam(metric: Metric, i: int, j: int, *, iso: bool = False) -> tuple:
    """``L_ij`` as a coordinate vector in so (or iso)."""
    N = metric.size
    dim = so_dim(N) + (N if iso else 0)
    v = [ZERO] * dim
    idx, sign = lambda_index(N, i, j)
    if sign:
        v[idx] = Fraction(sign)
    return tuple(v)


def translation(metric: Metric, k: int) -> tuple:
    """``e_k`` inside iso."""
    N = metric.size
    return exact.unit(so_dim(N) + N, so_dim(N) + k)


def embed_so_in_iso(metric: Metric, X: Sequence) -> tuple:
    return tuple(exact.vec(X)) + (ZERO,) * metric.size


def embed_v_in_iso(metric: Metric, x: Sequence) -> tuple:
    return (ZERO,) * so_dim(metric.size) + tuple(exact.vec(x))


def so_part(metric: Metric, Y: Sequence) -> tuple:
    return tuple(Y[: so_dim(metric.size)])


def v_part(metric: Metric, Y: Sequence) -> tuple:
    return tuple(Y[so_dim(metric.size):])


def so_from_raised(metric: Metric, s: Sequence[Sequence]) -> tuple:
    """The element ``sum_{i,j} s^{ij} L_ij`` for an antisymmetric ``s``."""
    N = metric.size
    S = [[exact.frac(a) for a in row] for row in s]
    if len(S) != N or any(len(r) != N for r in S):
        raise DimensionMismatch("s must be N x N")
    if any(S[i][j] != -S[j][i] for i in range(N) for j in range(N)):
        raise ConstraintViolated("s antisymmetric")
    return tuple(S[i][j] - S[j][i] for i, j in lambda_pairs(N))


# ------------------------------------------------------- defining representation

def lambda_matrix(metric: Metric, i: int, j: int) -> list[list[Fraction]]:
    N = metric.size
    M = exact.zero_matrix(N)
    if i != j:
        M[i][j] += metric[j]
        M[j][i] -= metric[i]
    return M


def so_matrix(metric: Metric, X: Sequence) -> list[list[Fraction]]:
    """Matrix of an so element acting on V."""
    N = metric.size
    M = exact.zero_matrix(N)
    for (i, j), a in zip(lambda_pairs(N), X):
        if a:
            M[i][j] += a * metric[j]
            M[j][i] -= a * metric[i]
    return M


def so_from_matrix(metric: Metric, M: Sequence[Sequence]) -> tuple:
    """Inverse of :func:`so_matrix`; ValueError if M is not in so(eta)."""
    N = metric.size
    X = tuple(exact.frac(M[i][j]) * metric[j] for i, j in lambda_pairs(N))
    if so_matrix(metric, X) != [[exact.frac(a) for a in row] for row in M]:
        raise ValueError("matrix is not eta-antisymmetric")
    return X


# ------------------------------------------------------------ algebras

@lru_cache(maxsize=None)
def _build_so(signs: tuple) -> LieAlgebra:
    metric = Metric(signs)
    N = metric.size
    eta = metric.eta
    consts: dict = {}

    def put(a, target_pair, coeff):
        if not coeff:
            return
        idx, sign = lambda_index(N, *target_pair)
        if sign:
            key = a + (idx,)
            consts[key] = consts.get(key, ZERO) + coeff * sign

    for a, (i, j) in enumerate(lambda_pairs(N)):
        for b, (k, l) in enumerate(lambda_pairs(N)):
            if b <= a:
                continue
            # [L_ij, L_kl] = eta_il L_jk + eta_jk L_il - eta_ik L_jl - eta_jl L_ik
            put((a, b), (j, k), eta(i, l))
            put((a, b), (i, l), eta(j, k))
            put((a, b), (j, l), -eta(i, k))
            put((a, b), (i, k), -eta(j, l))
    labels = [_label(i, j, N) for i, j in lambda_pairs(N)]
    return new_lie_algebra(so_dim(N), labels, {k: v for k, v in consts.items() if v})


def build_so(metric: Metric) -> LieAlgebra:
    if metric.size < 2:
        raise ValueError("so needs n+1 >= 2")
    return _build_so(metric.signs)


@lru_cache(maxsize=None)
def _build_iso(signs: tuple) -> LieAlgebra:
    metric = Metric(signs)
    N = metric.size
    so = _build_so(signs)
    m = so.dim
    consts = {(i, j, k): v for i, j, k, v in so.nonzero_constants()}
    for a, (i, j) in enumerate(lambda_pairs(N)):
        for k in range(N):
            # [L_ij, e_k] = eta_jk e_i - eta_ik e_j
            if metric.eta(j, k):
                consts[(a, m + k, m + i)] = consts.get((a, m + k, m + i), ZERO) + metric.eta(j, k)
            if metric.eta(i, k):
                consts[(a, m + k, m + j)] = consts.get((a, m + k, m + j), ZERO) - metric.eta(i, k)
    labels = list(so.labels) + [f"e{k + 1}" for k in range(N)]
    return new_lie_algebra(m + N, labels, {k: v for k, v in consts.items() if v})


def build_iso(metric: Metric) -> LieAlgebra:
    if metric.size < 2:
        raise ValueError("iso needs n+1 >= 2")
    return _build_iso(metric.signs)


def k_form(metric: Metric) -> BilinearForm:
    """``K(A, B) = -1/2 Tr(AB)`` evaluated on defining-representation matrices."""
    N = metric.size
    mats = [lambda_matrix(metric, i, j) for i, j in lambda_pairs(N)]
    G = []
    for A in mats:
        row = []
        for B in mats:
            AB = exact.matmul(A, B)
            row.append(-sum((AB[t][t] for t in range(N)), ZERO) / 2)
        G.append(tuple(row))
    return BilinearForm(len(mats), tuple(G))


def metric_dual_basis(metric: Metric) -> list[tuple]:
    """The K/eta-twisted dual basis ``(L*_ij, e*_k)`` of iso* in coordinate-dual coordinates.

    ``<L_kl, L*_ij> = K(L_ij, L_kl)`` and ``<e_l, e*_k> = eta_kl``.
    """
    N = metric.size
    m = so_dim(N)
    out = []
    for a, (i, j) in enumerate(lambda_pairs(N)):
        out.append(exact.scale(metric[i] * metric[j], exact.unit(m + N, a)))
    for k in range(N):
        out.append(exact.scale(metric[k], exact.unit(m + N, m + k)))
    return out


# ------------------------------------------------------------ Omega

@lru_cache(maxsize=None)
def _omega(signs: tuple) -> Trivector:
    metric = Metric(signs)
    N = metric.size
    m = so_dim(N)
    dense: dict = {}
    for j in range(N):
        for k in range(N):
            if j == k:
                continue
            idx, sign = lambda_index(N, j, k)
            c = metric[j] * metric[k] * sign
            # eta^{jj} eta^{kk} (e_j (x) e_k - e_k (x) e_j) (x) L_jk
            for a, b, v in ((j, k, c), (k, j, -c)):
                key = (m + a, m + b, idx)
                dense[key] = dense.get(key, ZERO) + v
    return Trivector.antisymmetrize(m + N, dense)


def omega_element(metric: Metric) -> Trivector:
    """Total antisymmetrization of ``eta^{jl} eta^{km} e_j ^ e_k (x) L_lm`` in iso."""
    return _omega(metric.signs)


# ------------------------------------------------------------ b-type solutions

@dataclass
class BSolutionParams:
    family: int
    x: Sequence
    X: Sequence | None = None
    v_list: Sequence[Sequence] = ()
    X_list: Sequence[Sequence] = ()
    alpha_list: Sequence = ()
    v: Sequence | None = None

    @classmethod
    def from_json(cls, data: dict) -> "BSolutionParams":
        fam = data["family"]
        if isinstance(fam, str):
            fam = int(fam.lstrip("b"))
        def V(x):
            return None if x is None else exact.vec(x)
        return cls(
            family=int(fam),
            x=exact.vec(data["x"]),
            X=V(data.get("X")),
            v_list=[exact.vec(v) for v in data.get("v_list", [])],
            X_list=[exact.vec(v) for v in data.get("X_list", [])],
            alpha_list=[exact.frac(a) for a in data.get("alpha_list", [])],
            v=V(data.get("v")),
        )


def b_x(metric: Metric, x: Sequence) -> Bivector:
    """``b_x = eta^{jk} e_j ^ L_{x e_k}`` on iso."""
    N = metric.size
    x = exact.vec(x)
    if len(x) != N:
        raise DimensionMismatch("x must lie in V")
    total = Bivector.zero(so_dim(N) + N)
    for j in range(N):
        # L_{x e_j} = sum_i x^i L_ij
        L = [ZERO] * so_dim(N)
        for i, xi in enumerate(x):
            if xi:
                idx, sign = lambda_index(N, i, j)
                if sign:
                    L[idx] += xi * sign
        if any(L):
            total = total + metric[j] * Bivector.wedge(translation(metric, j), embed_so_in_iso(metric, L))
    return total


def vw(metric: Metric, x: Sequence, X: Sequence) -> Bivector:
    """``x ^ X`` for ``x`` in V and ``X`` in so."""
    return Bivector.wedge(embed_v_in_iso(metric, x), embed_so_in_iso(metric, X))


def _act(metric: Metric, X: Sequence, x: Sequence) -> tuple:
    return exact.matvec(so_matrix(metric, X), exact.vec(x))


def b_solution(metric: Metric, params: BSolutionParams) -> Bivector:
    """The four families of b-type solutions.

    1. ``b_x``
    2. ``b_x + x ^ X`` with ``X x = 0``
    3. ``b_x + x ^ Y + sum v_i ^ X_i`` with x null, ``X_i x = 0``,
       ``X_i v_j = -delta_ij x``, ``[X_i, X_j] = 0``, ``Y = sum alpha_i X_i``
    4. ``b_x + x ^ X + v ^ X`` with ``X x = 0`` and ``X v = v``
    """
    N = metric.size
    x = exact.vec(params.x)
    if len(x) != N:
        raise DimensionMismatch("x must lie in V")
    fam = params.family
    base = b_x(metric, x)
    if fam == 1:
        return base
    if fam in (2, 4):
        if params.X is None:
            raise ConstraintViolated("X required")
        X = exact.vec(params.X)
        if not exact.is_zero(_act(metric, X, x)):
            raise ConstraintViolated("Xx=0")
        out = base + vw(metric, x, X)
        if fam == 2:
            return out
        v = exact.vec(params.v if params.v is not None else exact.zeros(N))
        if _act(metric, X, v) != v:
            raise ConstraintViolated("Xv=v")
        return out + vw(metric, v, X)
    if fam == 3:
        if metric.form(x, x) != 0:
            raise ConstraintViolated("x null")
        vs = [exact.vec(v) for v in params.v_list]
        Xs = [exact.vec(X) for X in params.X_list]
        alphas = [exact.frac(a) for a in params.alpha_list] or [ZERO] * len(Xs)
        if not (len(vs) == len(Xs) == len(alphas)):
            raise ConstraintViolated("v_list, X_list, alpha_list lengths")
        so = build_so(metric)
        for i, Xi in enumerate(Xs):
            if not exact.is_zero(_act(metric, Xi, x)):
                raise ConstraintViolated(f"X_{i}x=0")
            for j, vj in enumerate(vs):
                want = exact.scale(-1 if i == j else 0, x)
                if _act(metric, Xi, vj) != want:
                    raise ConstraintViolated(f"X_{i}v_{j}=-delta_ij x")
            for j in range(i + 1, len(Xs)):
                if not exact.is_zero(so.bracket(Xi, Xs[j])):
                    raise ConstraintViolated(f"[X_{i},X_{j}]=0")
        Y = exact.lincomb(alphas, Xs, so.dim) if Xs else exact.zeros(so.dim)
        out = base + vw(metric, x, Y)
        for vi, Xi in zip(vs, Xs):
            out = out + vw(metric, vi, Xi)
        return out
    raise ValueError(f"unknown family {fam!r}")


# ------------------------------------------------------- b <-> dual structure

def hv_indices(metric: Metric) -> tuple[list[int], list[int]]:
    m = so_dim(metric.size)
    return list(range(m)), list(range(m, m + metric.size))


def is_b_type(metric: Metric, b: Bivector) -> bool:
    H, V = hv_indices(metric)
    return b == b.block(H, V)


def b_to_dual_structure(metric: Metric, b: Bivector) -> list:
    """Structure constants ``f[l][m][s]`` of ``[e^l, e^m] = b(e^l).e^m - b(e^m).e^l``.

    ``e^l`` is the coordinate dual basis of V* and the dot is the coadjoint
    action of so.
    """
    N = metric.size
    iso = build_iso(metric)
    if b.dim != iso.dim:
        raise DimensionMismatch("bivector does not live on iso")
    if not is_b_type(metric, b):
        raise NotBType("b has components outside h ^ V")
    m = so_dim(N)
    duals = [exact.unit(iso.dim, m + l) for l in range(N)]
    images = [b.contract_first(a) for a in duals]
    acts = [rep_matrix(iso, "coadjoint", X) for X in images]
    f = [[[ZERO] * N for _ in range(N)] for _ in range(N)]
    for l in range(N):
        for mm in range(N):
            w = exact.sub(exact.matvec(acts[l], duals[mm]), exact.matvec(acts[mm], duals[l]))
            if any(w[:m]):
                raise NotBType("coadjoint image left V*")
            for s_ in range(N):
                f[l][mm][s_] = w[m + s_]
    return f


def dual_structure_to_b(metric: Metric, f: Sequence) -> Bivector:
    """Invert :func:`b_to_dual_structure` with ``b_ijk = 1/4 (f_jki - f_ijk - f_kij)``.

    The index formula lives in the eta-twisted basis ``e*_k = eta(e_k)``
    with indices lowered by eta; ``f`` itself is given in coordinate duals.
    """
    N = metric.size
    F = [[[exact.frac(f[i][j][k]) for k in range(N)] for j in range(N)] for i in range(N)]
    for i in range(N):
        for j in range(N):
            if any(F[i][j][k] != -F[j][i][k] for k in range(N)):
                raise ValueError("f must be antisymmetric in its first two indices")
    eta = metric.signs
    low = [[[eta[i] * eta[j] * F[i][j][k] for k in range(N)] for j in range(N)] for i in range(N)]
    m = so_dim(N)
    total = Bivector.zero(m + N)
    for k in range(N):
        # h_k = eta_kk sum_{m,n} b_k^{mn} L_mn, b_k^{mn} = eta_mm eta_nn b_kmn
        h = [ZERO] * m
        for a, (p, q) in enumerate(lambda_pairs(N)):
            b_kpq = (low[p][q][k] - low[k][p][q] - low[q][k][p]) / 4
            h[a] = 2 * eta[k] * eta[p] * eta[q] * b_kpq
        if any(h):
            total = total + Bivector.wedge(translation(metric, k), embed_so_in_iso(metric, h))
    return total


# ---------------------------------------------------- Iwasawa-type subalgebras

def _require_iwasawa_metric(metric: Metric) -> None:
    if metric.size < 3:
        raise ValueError("need n+1 >= 3")
    if metric[0] != 1 or metric[-1] != -1:
        raise ConstraintViolated("eta_11 = +1 and eta_{n+1,n+1} = -1")


def f_elem(metric: Metric) -> tuple:
    return lam(metric, 0, metric.size - 1)


def g_elem(metric: Metric, k: int) -> tuple:
    N = metric.size
    return exact.add(lam(metric, 0, k), lam(metric, k, N - 1))


def h1_subspace(metric: Metric) -> Subspace:
    N = metric.size
    return Subspace.from_vectors(so_dim(N), [lam(metric, i, j) for i, j in lambda_pairs(N) if i >= 1])


def h2_subspace(metric: Metric) -> Subspace:
    N = metric.size
    return Subspace.from_vectors(so_dim(N), [lam(metric, i, j) for i, j in lambda_pairs(N) if j <= N - 2])


def h_subspace(metric: Metric, which: str) -> Subspace:
    if which == "h1":
        return h1_subspace(metric)
    if which == "h2":
        return h2_subspace(metric)
    raise ValueError(f"unknown side {which!r}")


@dataclass
class SubalgebraSpec:
    """``variant`` in {"u", "utilde", "Utilde"}; ``s`` raised-index on the middle
    indices ``1 .. N-2``; ``D`` a list of ``(m, n)`` pairs for "Utilde"."""

    variant: str
    s: Sequence[Sequence] | None = None
    D: Sequence[tuple[int, int]] = field(default_factory=list)

    def chi(self, k: int) -> int:
        return int(any(k in pair for pair in self.D))

    @classmethod
    def from_json(cls, data: dict) -> "SubalgebraSpec":
        return cls(
            variant=data["variant"],
            s=data.get("s"),
            D=[tuple(map(int, p)) for p in data.get("D", [])],
        )


_VARIANTS = {"u": "u", "utilde": "utilde", "u_tilde": "utilde", "Utilde": "Utilde", "U_tilde": "Utilde"}


def _s_raised(metric: Metric, spec: SubalgebraSpec) -> list[list[Fraction]]:
    N = metric.size
    if spec.s is None:
        return exact.zero_matrix(N)
    S = [[exact.frac(a) for a in row] for row in spec.s]
    if len(S) != N or any(len(r) != N for r in S):
        raise DimensionMismatch("s must be N x N (zero outside the middle indices)")
    for i in range(N):
        for j in range(N):
            if S[i][j] and not (1 <= i <= N - 2 and 1 <= j <= N - 2):
                raise ConstraintViolated("s supported on indices 2..n")
    return S


def chi_identity_check(metric: Metric, s: Sequence[Sequence], D) -> Check:
    """``s^{ij} eta_jp chi(i) - s^{ij} eta_ip chi(j) = -chi(p)`` for p in 2..n."""
    N = metric.size
    chi = lambda k: int(any(k in pair for pair in D))
    for p in range(1, N - 1):
        lhs = ZERO
        for i in range(N):
            for j in range(N):
                sij = s[i][j]
                if sij:
                    lhs += sij * metric.eta(j, p) * chi(i) - sij * metric.eta(i, p) * chi(j)
        if lhs != -chi(p):
            return Check("chi_identity", False, witness=p, value=lhs)
    return Check("chi_identity", True)


def _validate_D(metric: Metric, spec: SubalgebraSpec, S) -> None:
    N = metric.size
    seen: set[int] = set()
    for pair in spec.D:
        m_, n_ = pair
        if not (1 <= m_ < n_ <= N - 2):
            raise EigenstructureViolated(f"D pair {pair} outside 2 <= m < n <= n")
        if metric[m_] != 1 or metric[n_] != -1:
            raise EigenstructureViolated(f"D pair {pair} needs eta_mm = +1, eta_nn = -1")
        if seen & {m_, n_}:
            raise EigenstructureViolated("D pairs overlap")
        seen |= {m_, n_}
    chk = chi_identity_check(metric, S, spec.D)
    if not chk:
        raise EigenstructureViolated(f"chi^D identity fails at p={chk.witness}")
    # the unit-eigenvalue eigenspace of s on <e_2..e_n> must be spanned by e_m - e_n
    mid = list(range(1, N - 1))
    op = so_matrix(metric, so_from_raised(metric, S))
    block = [[op[a][b] - (1 if a == b else 0) for b in mid] for a in mid]
    eig = Subspace.from_vectors(len(mid), exact.nullspace(block, len(mid)))
    want = []
    for m_, n_ in spec.D:
        w = [ZERO] * len(mid)
        w[mid.index(m_)] = Fraction(1)
        w[mid.index(n_)] = Fraction(-1)
        want.append(w)
    if eig != Subspace.from_vectors(len(mid), want):
        raise EigenstructureViolated("unit eigenspace of s is not spanned by the D differences")


def iwasawa_type_subalgebra(metric: Metric, spec: SubalgebraSpec) -> tuple[Subspace, Report]:
    """Span of ``f~`` (or ``f``) and ``g_k`` (or ``g~_k``) inside so(p,q).

    Generators are ordered ``[f-like, g_2, ..., g_n]``.
    """
    _require_iwasawa_metric(metric)
    variant = _VARIANTS.get(spec.variant)
    if variant is None:
        raise ValueError(f"unknown variant {spec.variant!r}")
    N = metric.size
    so = build_so(metric)
    S = _s_raised(metric, spec)
    s_el = so_from_raised(metric, S)
    f = f_elem(metric)
    if variant == "u":
        if any(s_el):
            raise ConstraintViolated("variant u takes no s")
        head = f
    else:
        head = exact.add(f, s_el)
    if variant == "Utilde":
        _validate_D(metric, spec, S)
        gs = [exact.add(exact.scale(spec.chi(k), f), g_elem(metric, k)) for k in range(1, N - 1)]
    else:
        if spec.D:
            raise ConstraintViolated("D only applies to Utilde")
        gs = [g_elem(metric, k) for k in range(1, N - 1)]
    U = Subspace.from_vectors(so.dim, [head] + gs)
    rep = Report(f"iwasawa_{variant}")
    rep.add(is_subalgebra(so, U))
    rep.add(Check("complement_h1", direct_sum_check(so.dim, h1_subspace(metric), U).passed))
    rep.add(Check("complement_h2", direct_sum_check(so.dim, h2_subspace(metric), U).passed))
    # [f~, g_p] = g_p + s^{ij}(eta_jp g_i - eta_ip g_j), with g~ in place of g for Utilde
    bad = None
    for p, gp in enumerate(gs, start=1):
        want = list(gp)
        for i in range(N):
            for j in range(N):
                sij = S[i][j]
                if not sij:
                    continue
                if metric.eta(j, p) and 1 <= i <= N - 2:
                    want = exact.add(want, exact.scale(sij * metric.eta(j, p), gs[i - 1]))
                if metric.eta(i, p) and 1 <= j <= N - 2:
                    want = exact.sub(want, exact.scale(sij * metric.eta(i, p), gs[j - 1]))
        if so.bracket(head, gp) != tuple(want):
            bad = p
            break
    rep.add(Check("head_bracket", bad is None, witness=bad))
    if variant == "Utilde":
        rep.add(chi_identity_check(metric, S, spec.D))
        bad = None
        for k in range(1, N - 1):
            for l in range(k + 1, N - 1):
                lhs = so.bracket(gs[k - 1], gs[l - 1])
                rhs = exact.sub(exact.scale(spec.chi(k), gs[l - 1]), exact.scale(spec.chi(l), gs[k - 1]))
                if lhs != rhs:
                    bad = (k, l)
                    break
            if bad:
                break
        rep.add(Check("g_tilde_brackets", bad is None, witness=bad))
    return U, rep


def remark1_subalgebra(metric: Metric, lam_, s=None, g_coeffs=None, choice: str = "plain") -> tuple[Subspace, Report]:
    """``<f_bar, w, x_k>`` (or ``x_k + lam g_k``) inside iso(p,q).

    ``f_bar = e_1 + lam L_{1,n+1} + s + g`` with ``g = sum_k g_coeffs[k] g_k``,
    ``w = e_1 - e_{n+1}``, ``x_k = e_k`` for the middle indices.
    """
    _require_iwasawa_metric(metric)
    if choice not in ("plain", "shifted"):
        raise ValueError("choice must be 'plain' or 'shifted'")
    N = metric.size
    iso = build_iso(metric)
    lam_ = exact.frac(lam_)
    S = _s_raised(metric, SubalgebraSpec("utilde", s))
    s_el = so_from_raised(metric, S)
    mids = range(1, N - 1)
    coeffs = [ZERO] * (N - 2) if g_coeffs is None else [exact.frac(c) for c in g_coeffs]
    if len(coeffs) != N - 2:
        raise DimensionMismatch("g_coeffs must have n-1 entries")
    g = exact.zeros(so_dim(N))
    for c, k in zip(coeffs, mids):
        g = exact.add(g, exact.scale(c, g_elem(metric, k)))
    so_head = exact.add(exact.add(exact.scale(lam_, f_elem(metric)), s_el), g)
    fbar = exact.add(translation(metric, 0), embed_so_in_iso(metric, so_head))
    w = exact.sub(translation(metric, 0), translation(metric, N - 1))
    xs = []
    for k in mids:
        x = translation(metric, k)
        if choice == "shifted":
            x = exact.add(x, embed_so_in_iso(metric, exact.scale(lam_, g_elem(metric, k))))
        xs.append(x)
    A = Subspace.from_vectors(iso.dim, [fbar, w] + xs)
    closed = is_subalgebra(iso, A)
    if not closed:
        raise NotClosed(closed.witness)
    so_in_iso = Subspace.from_vectors(iso.dim, [embed_so_in_iso(metric, exact.unit(so_dim(N), a)) for a in range(so_dim(N))])
    rep = Report(f"remark1_{choice}")
    rep.add(closed)
    rep.add(Check("complement_so", direct_sum_check(iso.dim, so_in_iso, A).passed))
    rep.add(Check("dim_equals_dim_V", A.dim == N, value=A.dim))
    return A, rep
