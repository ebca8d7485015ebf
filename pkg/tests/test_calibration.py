"""Recomputes the normalization [b_x, b_x] = kappa0 * (-eta(x, x)) * Omega
from dense matrix data, independently of doublelie's sparse routines."""
from __future__ import annotations

from fractions import Fraction

import pytest

import _oracle
from doublelie.bialg import KAPPA0


def kappa_for(signs, x):
    c = _oracle.constants_from_matrices(_oracle.affine_iso_matrices(signs))
    r = _oracle.b_x_dense(signs, x)
    T = _oracle.cyb_dense(c, r)
    om = _oracle.omega_dense(signs)
    lam = _oracle.ratio(T, om)
    assert lam is not None, "[b_x, b_x] is not a multiple of Omega"
    exx = sum(s * a * a for s, a in zip(signs, x))
    return lam / (-exx)


def test_kappa0_frozen_value():
    assert KAPPA0 == Fraction(3, 2)


def test_calibration_point():
    # iso(2,1) realized with signs (+,-,-), x = e1
    assert kappa_for((1, -1, -1), (1, 0, 0)) == KAPPA0


@pytest.mark.parametrize("signs", [(1, -1, -1), (1, 1, -1), (1, -1, -1, -1), (1, 1, 1, -1), (1, 1, 1)])
@pytest.mark.parametrize("which", ["first", "last"])
def test_kappa0_is_signature_independent(signs, which):
    x = [0] * len(signs)
    x[0 if which == "first" else -1] = 1
    assert kappa_for(signs, x) == KAPPA0


def test_dense_cyb_is_already_antisymmetric():
    signs = (1, -1, -1)
    c = _oracle.constants_from_matrices(_oracle.affine_iso_matrices(signs))
    T = _oracle.cyb_dense(c, _oracle.b_x_dense(signs, (1, 0, 1)))
    assert _oracle.alt(T) == T
