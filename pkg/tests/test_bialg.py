from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import _oracle
from doublelie import exact
from doublelie import sofamilies as sf
from doublelie.bialg import (
    Bivector,
    Cobracket,
    Trivector,
    coboundary_cobracket,
    cobracket_shape,
    cyb_trivector,
    dual_algebra_from_cobracket,
    gcybe_report,
    invariance_witness,
    is_invariant_bivector,
    proportionality,
    solve_coboundary,
    verify_cocycle,
)
from doublelie.errors import DimensionMismatch, NoSolution, NotProportional
from doublelie.liecore import Metric, new_lie_algebra

M3 = Metric.parse("+--")


def sl2():
    return new_lie_algebra(3, ["h", "e", "f"], {(0, 1, 1): 2, (0, 2, 2): -2, (1, 2, 0): 1})


def test_wedge_convention():
    b = Bivector.wedge(exact.unit(3, 0), exact.unit(3, 1))
    assert b.r[0][1] == 1 and b.r[1][0] == -1
    assert list(b.upper_entries()) == [(0, 1, 1)]
    assert Bivector.from_flat(3, b.flat()) == b
    assert Bivector.from_json(b.to_json()) == b
    with pytest.raises(ValueError):
        Bivector(2, [[0, 1], [1, 0]])


def test_trivector_get_and_alt():
    T = Trivector.antisymmetrize(3, {(0, 1, 2): 6})
    assert T.get(0, 1, 2) == 1 and T.get(1, 0, 2) == -1 and T.get(0, 0, 1) == 0
    assert Trivector.from_json(T.to_json()) == T


def test_standard_sl2_bialgebra():
    # r = e ^ f gives delta(h) = 0, delta(e) = e ^ h..., a coboundary
    g = sl2()
    r = Bivector.from_upper(3, [(1, 2, 1)])
    delta = coboundary_cobracket(g, r)
    assert verify_cocycle(g, delta).passed
    dual, jac = dual_algebra_from_cobracket(delta)
    assert jac.passed
    # ad_h (e ^ f) = 2e^f - 2e^f = 0
    assert delta.image(0).is_zero()


def test_dual_bracket_from_contraction():
    """[a, b] = r(a) b - r(b) a in coordinates, read with factor 1."""
    g = sl2()
    r = Bivector.from_upper(3, [(1, 2, 1)])
    delta = coboundary_cobracket(g, r)
    dual, _ = dual_algebra_from_cobracket(delta)
    for i in range(3):
        for j in range(3):
            a, b = exact.unit(3, i), exact.unit(3, j)
            ra, rb = r.contract_first(a), r.contract_first(b)
            # coadjoint action: (X . alpha)_k = -sum_m c[X][k][m] alpha_m
            act = lambda X, alpha: tuple(
                -sum(X[p] * g.const(p, k, m) * alpha[m] for p in range(3) for m in range(3)) for k in range(3)
            )
            expected = exact.sub(act(ra, b), act(rb, a))
            assert dual.bracket(a, b) == expected


def test_cocycle_failure_witness():
    g = sl2()
    delta = coboundary_cobracket(g, Bivector.from_upper(3, [(1, 2, 1)])).corrupted(0, 1, 2)
    chk = verify_cocycle(g, delta)
    assert not chk.passed and chk.witness is not None


@given(st.lists(st.integers(-3, 3), min_size=15, max_size=15))
def test_cyb_trivector_matches_dense_oracle(vals):
    # iso(+,-,-): dim 6, 15 upper entries
    r = Bivector.from_flat(6, vals)
    c = _oracle.constants_from_matrices(_oracle.affine_iso_matrices((1, -1, -1)))
    T = cyb_trivector(sf.build_iso(M3), r)
    assert T.full() == _oracle.cyb_dense(c, [list(row) for row in r.r])


def test_omega_frozen_entries():
    om = sf.omega_element(M3)
    labels = sf.build_iso(M3).labels
    named = {tuple(labels[i] for i in k): v for k, v in om.entries.items()}
    assert named == {
        ("L12", "e1", "e2"): Fraction(-2, 3),
        ("L13", "e1", "e3"): Fraction(-2, 3),
        ("L23", "e2", "e3"): Fraction(2, 3),
    }
    assert om.full() == _oracle.omega_dense((1, -1, -1))


def test_omega_invariant_and_b_x_proportional():
    iso = sf.build_iso(M3)
    om = sf.omega_element(M3)
    assert invariance_witness(iso, om) is None
    rep = gcybe_report(iso, sf.b_x(M3, exact.unit(3, 0)), om)
    assert rep.invariant and rep.proportional
    assert rep.lam == Fraction(-3, 2) and rep.t == -1


def test_non_gcybe_bivector_has_witness():
    iso = sf.build_iso(M3)
    r = Bivector.from_upper(6, [(0, 3, 1), (1, 4, 1)])
    rep = gcybe_report(iso, r, sf.omega_element(M3))
    assert not rep.invariant and rep.witness is not None
    if not rep.proportional:
        with pytest.raises(NotProportional):
            rep.t


def test_proportionality():
    om = sf.omega_element(M3)
    assert proportionality(Fraction(5, 2) * om, om) == Fraction(5, 2)
    other = Trivector(6, {(0, 1, 2): 1})
    assert proportionality(other, om) is None


def test_solve_coboundary_recovers_b():
    iso = sf.build_iso(M3)
    b = sf.b_x(M3, exact.unit(3, 0))
    sol = solve_coboundary(iso, coboundary_cobracket(iso, b))
    # iso(2,1) carries no invariant bivector, so the solution is unique
    assert sol.kernel_basis == []
    assert sol.particular == b


def test_solve_coboundary_kernel_is_invariant():
    abel = new_lie_algebra(2, None, {})
    sol = solve_coboundary(abel, Cobracket(2, [[[0, 0], [0, 0]]] * 2))
    assert len(sol.kernel_basis) == 1
    assert all(is_invariant_bivector(abel, k) for k in sol.kernel_basis)
    with pytest.raises(NoSolution):
        solve_coboundary(abel, Cobracket(2, [[[0, 1], [-1, 0]], [[0, 0], [0, 0]]]))


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        coboundary_cobracket(sl2(), Bivector.zero(4))


def test_cobracket_shape_on_b_x():
    iso = sf.build_iso(M3)
    delta = coboundary_cobracket(iso, sf.b_x(M3, exact.unit(3, 0)))
    h, v = sf.hv_indices(M3)
    shape = cobracket_shape(delta, h, v)
    assert all(c.passed for c in shape.values())
    bad = cobracket_shape(delta.corrupted(0, 0, 1), h, v)
    assert not bad["delta_a_in_a_wedge_V"].passed


def test_cobracket_json_roundtrip():
    iso = sf.build_iso(M3)
    delta = coboundary_cobracket(iso, sf.b_x(M3, exact.unit(3, 2)))
    assert Cobracket.from_json(delta.to_json()) == delta
