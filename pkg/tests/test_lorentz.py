from __future__ import annotations

import numpy as np
import pytest

import _lorentz_cases as lc
from doublelie import lorentz as L
from doublelie.errors import BadParams, NotInGroup, Obstructed, OnBoundary

NS = [2, 3, 4, 5]


def rel(a, b) -> float:
    """Max entry difference scaled by the entry size (at least 1)."""
    return float(np.max(np.abs(a - b)) / max(1.0, np.max(np.abs(b))))


@pytest.mark.parametrize("n", NS)
def test_factors_are_in_so0(n):
    rng = np.random.default_rng(n)
    t, x, s = lc.factors(n, rng)
    for g in (L.a_matrix(n, t), L.n_matrix(n, x), L.s_matrix(n, t, s), L.f_matrix(n, t, s), L.sample_so0(n, 5)):
        assert L.verify_so0(g, n).passed
    rep = L.verify_so0(L.k0_matrix(n), n)
    assert rep.passed


@pytest.mark.parametrize("n", NS)
def test_an_closed_form(n):
    rng = np.random.default_rng(10 + n)
    t, x, _ = lc.factors(n, rng)
    assert rel(L.an_product(n, t, x), L.a_matrix(n, t) @ L.n_matrix(n, x)) < 1e-12


@pytest.mark.parametrize("n", NS)
def test_commutation_identities(n):
    rng = np.random.default_rng(20 + n)
    t, x, s = lc.factors(n, rng)
    A, N = L.a_matrix(n, t), L.n_matrix(n, x)
    assert rel(A @ N, L.n_matrix(n, np.exp(-t) * x) @ A) < 1e-12
    F = L.f_matrix(n, t, s)
    S_mid = L.s_matrix(n, t, s)[1:n, 1:n]
    e = L.eta(n)
    conj = F @ N @ (e @ F.T @ e)
    assert rel(conj, L.n_matrix(n, np.exp(-t) * S_mid @ x)) < 1e-12
    # A and S commute
    assert rel(A @ L.s_matrix(n, t, s), L.s_matrix(n, t, s) @ A) < 1e-12


def test_membership_failures():
    n = 3
    bad = np.eye(4)
    bad[0, 0] = 2.0
    assert not L.verify_so0(bad, n).passed
    flip = np.diag([-1.0, -1.0, 1.0, 1.0])
    rep = L.verify_so0(flip, n)
    assert rep["eta_orthogonal"].passed and not rep["identity_component"].passed
    with pytest.raises(NotInGroup):
        L.iwasawa_decompose(flip, n)
    assert not L.verify_so0(np.eye(3), n).passed


def test_bad_params():
    with pytest.raises(BadParams):
        L.n_matrix(3, [1.0])
    with pytest.raises(BadParams):
        L.s_matrix(3, 1.0, np.ones((2, 2)))
    with pytest.raises(BadParams):
        L.factor_matrix("Q", 3)


@pytest.mark.parametrize("n", NS)
def test_iwasawa_uniqueness(n):
    rng = np.random.default_rng(30 + n)
    for _ in range(20):
        k = lc.euclid_block(n, rng)
        t, x, _ = lc.factors(n, rng)
        iw = L.iwasawa_decompose(k @ L.an_product(n, t, x), n)
        assert abs(iw.t - t) < 1e-10
        assert np.max(np.abs(iw.x - x)) < 1e-10
        assert np.max(np.abs(iw.k - k)) < 1e-10


@pytest.mark.parametrize("n", NS)
def test_kfn_euclid_uniqueness(n):
    rng = np.random.default_rng(40 + n)
    for _ in range(20):
        k = lc.euclid_block(n, rng)
        t, x, s = lc.factors(n, rng)
        g = k @ L.f_matrix(n, t, s) @ L.n_matrix(n, x)
        out = L.kfn_euclid(g, n, s)
        assert abs(out.t - t) < 1e-10
        assert np.max(np.abs(out.x - x)) < 1e-10
        assert np.max(np.abs(out.k_tilde - k)) < 1e-10


@pytest.mark.parametrize("n", NS)
def test_kfn_poincare_uniqueness(n):
    rng = np.random.default_rng(50 + n)
    for _ in range(20):
        k = lc.poincare_block(n, rng)
        t, x, s = lc.factors(n, rng)
        g = k @ L.f_matrix(n, t, s) @ L.n_matrix(n, x)
        out = L.kfn_poincare(g, n, s)
        assert out.branch == "poincare"
        assert abs(out.t - t) < 1e-10
        assert np.max(np.abs(out.x - x)) < 1e-10
        assert np.max(np.abs(out.k_tilde - k)) < 1e-10


@pytest.mark.parametrize("n", NS)
def test_xfn_branch_recovery(n):
    rng = np.random.default_rng(60 + n)
    k0 = L.k0_matrix(n)
    for i in range(20):
        k = lc.poincare_block(n, rng)
        if i % 2:
            k = k0 @ k
        t, x, s = lc.factors(n, rng)
        out = L.xfn_extended(k @ L.f_matrix(n, t, s) @ L.n_matrix(n, x), n, s)
        assert out.branch == ("extended_k0" if i % 2 else "poincare")
        assert abs(out.t - t) < 1e-10
        assert np.max(np.abs(out.k_tilde - k)) < 1e-10


def test_trivial_examples():
    n = 3
    out = L.kfn_poincare(L.a_matrix(n, 0.8), n)
    assert abs(out.t - 0.8) < 1e-12 and np.max(np.abs(out.x)) < 1e-12
    assert np.max(np.abs(out.k_tilde - np.eye(4))) < 1e-12
    with pytest.raises(Obstructed) as exc:
        L.kfn_poincare(L.k0_matrix(n), n)
    assert exc.value.k_value == pytest.approx(-1.0)
    out = L.xfn_extended(L.k0_matrix(n), n)
    assert out.branch == "extended_k0" and abs(out.t) < 1e-12
    assert np.max(np.abs(out.k_tilde - L.k0_matrix(n))) < 1e-12


def test_on_boundary():
    # a rotation in the (e_3, e_4) plane by pi/2 puts k_44 = 0
    n = 3
    g = np.eye(4)
    g[2, 2] = g[3, 3] = 0.0
    g[2, 3], g[3, 2] = -1.0, 1.0
    with pytest.raises(OnBoundary):
        L.xfn_extended(g, n)
    with pytest.raises(Obstructed):
        L.kfn_poincare(g, n)


def test_w_values():
    n = 4
    assert L.w_value(np.eye(n + 1), n) == 1.0
    assert abs(L.w_value(L.k0_matrix(n), n) + 1) < 1e-12


@pytest.mark.parametrize("n", NS)
def test_w_positive_on_products(n):
    rng = np.random.default_rng(70 + n)
    for _ in range(100):
        k = lc.poincare_block(n, rng)
        t, x, s = lc.factors(n, rng)
        assert L.w_value(k @ L.f_matrix(n, t, s) @ L.n_matrix(n, x), n) > 0


def test_sampler_is_deterministic_and_hits_both_branches():
    assert np.array_equal(L.sample_so0(3, 9), L.sample_so0(3, 9))
    signs = {np.sign(L.iwasawa_decompose(L.sample_so0(3, s), 3).k[3, 3]) for s in range(60)}
    assert signs == {1.0, -1.0}


@pytest.mark.parametrize("n", NS)
def test_poincare_residual_tracks_conditioning(n):
    """Reconstruction error stays within a small multiple of eps times the factor sizes."""
    eps = np.finfo(float).eps
    for seed in range(200):
        g = L.sample_so0(n, seed)
        try:
            out = L.xfn_extended(g, n)
        except OnBoundary:
            continue
        assert out.residual(g) <= max(1e-12, 64 * eps * out.conditioning())


def test_json_roundtrip():
    g = L.sample_so0(3, 1)
    assert np.array_equal(L.matrix_from_json(L.matrix_to_json(g)), g)
    with pytest.raises(BadParams):
        L.matrix_from_json([[1, 2, 3]])
    data = L.kfn_euclid(g, 3).to_json(g)
    assert set(data) >= {"branch", "k", "t", "x", "residual"}
