from fractions import Fraction

import pytest
import sympy as sp

from sigma_forge import inversion as inv
from sigma_forge.ring import P, SparsePoly, grade_of
from oracles import to_sympy, wp_coefficients
from reference_values import G_INFINITY


def test_f_series_solves_both_equations():
    fs = inv.f_series(N=14)
    r1, r2 = inv.f_residuals(fs)
    assert not r2.c
    assert r1.c == {0: inv.f_energy(fs)}
    assert r1.prec >= 12


def test_f_coefficients_are_homogeneous():
    fs = inv.f_series(N=12)
    for k, v in fs.coeffs.items():
        assert grade_of(v) == k


def test_f_at_a_rational_point_on_the_curve():
    # x* = 1 on y^2 = x^5 + x + 2 (l4 = l6 = 0, l8 = 1, l10 = 2) gives y* = 2
    fs = inv.f_series(1, 2, N=10)
    r1, r2 = inv.f_residuals(fs)
    sub = {"l4": 0, "l6": 0, "l8": 1, "l10": 2}
    assert not r1.subs(sub).c and not r2.subs(sub).c


def test_g_series_solves_both_equations():
    gs = inv.g_series(N=12)
    r1, r2 = inv.g_residuals(gs)
    assert not r2.c
    l10 = inv.g_energy_l10(gs)
    on_curve = r1.map(lambda p: p.subs({"l10": l10}).reduce_inverse("q2", "q2inv"))
    assert not on_curve.c


def test_g_coefficients_are_homogeneous():
    gs = inv.g_series(N=10)
    for k, v in gs.coeffs.items():
        assert grade_of(v) == k


def test_g_excludes_x_zero():
    with pytest.raises(ValueError):
        inv.g_series(0, 1)
    gs = inv.g_series(Fraction(1, 2), None, N=6)
    assert gs.coeffs[2] == SparsePoly.const(Fraction(1, 2))


def test_g_at_infinity_printed_terms():
    g = inv.g_at_infinity(24)
    for n in range(11):
        assert g.coeffs[n] == P(G_INFINITY.get(n, "0")), n


def test_g_at_infinity_against_coefficient_matching():
    rec = inv.tau_recurrence(26)
    orc = inv.g_at_infinity_oracle(26)
    assert all(rec[n] == orc[n] for n in range(27))


def test_tau_homogeneous():
    for n, v in enumerate(inv.tau_recurrence(24)):
        if v:
            assert grade_of(v) == n
        else:
            assert n % 2 or n == 2


def test_x_and_y_from_g():
    g = inv.g_at_infinity(24)
    x, y = inv.xy_from_g(g)
    assert y.leading() == (-5, P("1"))
    assert not inv.curve_residual(x, y).c
    assert not inv.x_second_order_residual(x).c


def test_weierstrass_degeneration():
    rep = inv.weierstrass_degeneration(24)
    assert rep["equal"] and rep["ode_residual_zero"]
    ref = wp_coefficients(10)
    wp = rep["wp"]
    for k, v in ref.items():
        assert sp.expand(to_sympy(wp[k]) - v) == 0


def test_matching_solver_rejects_undetermined_orders():
    def build(c, n):
        return inv.LaurentSeries1({k - 2: v for k, v in c.items()}, n - 2, "u")
    with pytest.raises(ArithmeticError):
        inv.solve_by_matching(inv._g_inf_residual, build, 3, 1, lambda n: n - 20, {0: SparsePoly.one()})


def test_json():
    d = inv.g_at_infinity(12).to_json()
    assert d["kind"] == "G-infinity" and d["coeffs"][0] == [0, "1/1"]
