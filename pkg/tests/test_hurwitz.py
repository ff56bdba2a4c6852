from fractions import Fraction
from math import factorial

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from sigma_forge.hurwitz import (HurwitzSeries1, HurwitzSeries2, LaurentSeries1, TruncationError, dumps,
                                 hw_comp_inverse, hw_exp, hw_mul, laurent_pow, plain_comp_inverse)
from sigma_forge.ring import SparsePoly, SubringSpec, P, subring_member
from oracles import series_reversion, to_sympy, u1, u3
from strategies import integral_polys, polys, small_q

ONE = SparsePoly.one()


def series1(draw_coeffs, trunc, start=0):
    return HurwitzSeries1({n: c for n, c in enumerate(draw_coeffs) if n >= start}, trunc)


@st.composite
def hw1(draw, trunc=12, start=0, coeff=polys(3)):
    cs = draw(st.lists(coeff, min_size=trunc + 1, max_size=trunc + 1))
    return series1(cs, trunc, start)


@given(hw1(), hw1())
def test_product_matches_plain_product(a, b):
    c = hw_mul(a, b)
    assert c.trunc >= 12    # precision grows with the valuations
    for n in range(13):
        plain = sum((a.plain(i) * b.plain(n - i) for i in range(n + 1)), SparsePoly.zero())
        assert c.plain(n) == plain


@given(hw1(coeff=integral_polys()), hw1(coeff=integral_polys()))
def test_product_keeps_integrality(a, b):
    c = a * b
    assert all(subring_member(v, SubringSpec.of()) for v in c.c.values())


@given(hw1(start=1))
def test_exp_times_exp_of_negative(a):
    e = hw_exp(a) * hw_exp(-a)
    assert e == HurwitzSeries1({0: ONE}, a.trunc)


@given(st.lists(small_q, min_size=6, max_size=6))
def test_composition_inverse_is_an_involution(cs):
    s = HurwitzSeries1.from_plain({1: 1, **{k + 2: c for k, c in enumerate(cs)}}, 7)
    inv = hw_comp_inverse(s)
    assert hw_comp_inverse(inv) == s


def test_composition_inverse_against_sympy():
    a = {2: P("l4"), 3: P("l6"), 5: P("2*l8 - l4^2")}
    b = plain_comp_inverse({1: ONE, **a}, 8)
    ref = series_reversion({k: to_sympy(v) for k, v in a.items()}, 8)
    for k in range(2, 9):
        assert sp.expand(to_sympy(b.get(k, SparsePoly.zero())) - ref[k]) == 0


@settings(max_examples=20)
@given(st.dictionaries(st.tuples(st.integers(0, 5), st.integers(0, 2)), polys(2), max_size=5),
       st.dictionaries(st.tuples(st.integers(0, 5), st.integers(0, 2)), polys(2), max_size=5))
def test_two_variable_product_matches_sympy(ca, cb):
    a, b = HurwitzSeries2(ca, 11), HurwitzSeries2(cb, 11)
    c = a * b

    def expr(s):
        return sum((to_sympy(v) * u1 ** m * u3 ** n / (factorial(m) * factorial(n)) for (m, n), v in s.c.items()),
                   sp.Integer(0))
    prod = sp.expand(expr(a) * expr(b))
    poly = sp.Poly(prod, u1, u3) if prod != 0 else None
    for m, n in c.keys_through(c.trunc):
        want = poly.coeff_monomial(u1 ** m * u3 ** n) * factorial(m) * factorial(n) if poly else 0
        assert sp.expand(to_sympy(c[(m, n)]) - want) == 0


@given(st.dictionaries(st.tuples(st.integers(0, 6), st.integers(0, 2)), polys(2), max_size=5))
def test_two_variable_exp(ca):
    ca.pop((0, 0), None)
    a = HurwitzSeries2(ca, 10)
    one = HurwitzSeries2({(0, 0): ONE}, 10)
    assert (a.exp() * (-a).exp()).truncate(10) == one


def test_truncation_is_enforced():
    s = HurwitzSeries1({0: 1, 3: 2}, 5)
    with pytest.raises(TruncationError):
        s[6]
    with pytest.raises(TruncationError):
        s.truncate(7)
    t = HurwitzSeries2({(1, 1): 1}, 7)
    with pytest.raises(TruncationError):
        t[(2, 2)]
    assert t.derive(3).trunc == 4


def test_mul_var_and_div_var():
    s = HurwitzSeries1({1: P("l4"), 2: 3}, 6)
    assert s.mul_var().div_var() == s.truncate(s.mul_var().div_var().trunc)
    assert s.mul_var()[2] == 2 * P("l4")


def test_slices_round_trip():
    s = HurwitzSeries2({(3, 0): 2, (0, 1): -1, (4, 1): P("2*l4"), (7, 0): P("4*l4")}, 9)
    slices = [s.slice_u3(k) for k in range(4)]
    assert HurwitzSeries2.from_u3_slices(slices, 9) == s
    cols = [s.slice_u1(k) for k in range(10)]
    assert HurwitzSeries2.from_u1_slices(cols, 9) == s


def test_laurent_powers():
    s = LaurentSeries1({2: 1, 6: P("l4"), 8: P("l6")}, 20)
    inv = laurent_pow(s, -1)
    assert (inv * s) == LaurentSeries1({0: ONE}, (inv * s).prec)
    r = laurent_pow(s, Fraction(1, 2))
    assert r * r == s.truncate((r * r).prec)
    with pytest.raises(ValueError):
        laurent_pow(LaurentSeries1({0: 2, 1: 1}, 5), Fraction(1, 2))


def test_json_is_canonical():
    s = HurwitzSeries2({(0, 1): -1, (3, 0): 2}, 3)
    assert dumps(s.to_json()) == dumps(HurwitzSeries2.from_json(s.to_json()).to_json())
