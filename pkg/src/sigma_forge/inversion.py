"""Series solutions of the genus-two inversion problems.

F inverts the second holomorphic integral around a finite point, G the first
one; at infinity G is a Laurent series 1/u^2 + ... whose coefficients come
from a closed recurrence.  Setting l8 = l10 = 0 in that Laurent series gives
the Weierstrass function of y^2 = x^3 + l4 x + l6.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .hurwitz import LaurentSeries1
from .ring import SparsePoly, P

ZERO = SparsePoly.zero()
ONE = SparsePoly.one()
L4, L6, L8, L10 = P("l4"), P("l6"), P("l8"), P("l10")


@dataclass
class InversionSeries:
    kind: str                 # "F", "G", "G-infinity" or "wp"
    series: LaurentSeries1
    coeffs: dict = field(default_factory=dict)   # tabulated coefficients by index
    base: tuple = ()

    def to_json(self):
        return {"kind": self.kind, "base": [str(b) for b in self.base],
                "coeffs": [[k, self.coeffs[k].canonical()] for k in sorted(self.coeffs)],
                "series": self.series.to_json()}


def quintic(x):
    """x^5 + l4 x^3 + l6 x^2 + l8 x + l10 for a series or polynomial x."""
    x2 = x * x
    x3 = x2 * x
    return x3 * x2 + x3 * L4 + x2 * L6 + x * L8 + L10


def _conv(a, b, n):
    return SparsePoly.dot([(1, a[i], b[n - i]) for i in range(n + 1) if a[i] and b[n - i]])


# ------------------------------------------------------------------ F

def f_series(x=None, y=None, N=12):
    """F(u*+v) = sum_n p_{3n+2} v^n for n <= N.

    With no base point the seeds are the symbols p2, p5 (p5 = -2 y*).
    """
    p2 = P("p2") if x is None else SparsePoly.const(x) if not isinstance(x, SparsePoly) else x
    p5 = P("p5") if y is None else -2 * (y if isinstance(y, SparsePoly) else SparsePoly.const(y))
    c = [p2, p5]
    sq = [p2 * p2]                      # F^2
    fo = [sq[0] * sq[0]]                # F^4
    c.append(p2 ** 4 * 5 + p2 * p2 * L4 * 3 + p2 * L6 * 2 + L8)
    for n in range(1, N - 1):
        while len(sq) <= n:
            m = len(sq)
            sq.append(_conv(c, c, m))
        while len(fo) <= n:
            m = len(fo)
            fo.append(_conv(sq, sq, m))
        rhs = fo[n] * 10 + sq[n] * L4 * 6 + c[n] * L6 * 4
        c.append(rhs * Fraction(1, (n + 2) * (n + 1)))
    c = c[:N + 1]
    s = LaurentSeries1(dict(enumerate(c)), N, "v")
    return InversionSeries("F", s, {3 * n + 2: v for n, v in enumerate(c)}, (p2, p5))


def f_residuals(fs):
    """((F'/2)^2 - quintic(F), F'' - (10F^4 + 6l4F^2 + 4l6F + 2l8))."""
    F = fs.series
    d = F.derive().scale(Fraction(1, 2))
    r1 = d * d - quintic(F)
    F2 = F * F
    r2 = F.derive().derive() - (F2 * F2 * 10 + F2 * L4 * 6 + F * L6 * 4 + L8 * 2)
    return r1, r2


def f_energy(fs):
    """The constant (F'/2)^2 - quintic(F) takes on the base point."""
    p2, p5 = fs.base
    return p5 * p5 * Fraction(1, 4) - quintic(p2)


# ------------------------------------------------------------------ G

def g_series(x=None, y=None, N=12):
    """G(u*+v) = sum_n q_{n+2} v^n for n <= N.

    Symbolic seeds use q2, q3 and the localised inverse q2inv.  A numeric x*
    must be a nonzero rational.
    """
    if x is None:
        q2, q2inv = P("q2"), P("q2inv")
        q3 = P("q3") if y is None else -2 * (y if isinstance(y, SparsePoly) else SparsePoly.const(y)) * q2inv
    else:
        x = Fraction(x)
        if x == 0:
            raise ValueError("base point with x* = 0 is excluded")
        q2, q2inv = SparsePoly.const(x), SparsePoly.const(1 / x)
        if y is None:
            q3 = P("q3")
        else:
            q3 = -2 * (y if isinstance(y, SparsePoly) else SparsePoly.const(y)) * q2inv

    def red(p):
        return p.reduce_inverse("q2", "q2inv") if x is None else p

    inv3 = q2inv ** 3
    c = [q2, q3]
    c.append(red(inv3 * (q2 ** 5 * 3 + q2 ** 3 * L4 - q2 * L8 - L10 * 2)))
    sq, cu, fi = [], [], []   # G^2, G^3, G^5 coefficient lists

    def grow(n):
        while len(sq) <= n:
            sq.append(_conv(c, c, len(sq)))
        while len(cu) <= n:
            cu.append(_conv(sq, c, len(cu)))
        while len(fi) <= n:
            fi.append(_conv(sq, cu, len(fi)))

    for n in range(1, N - 1):
        grow(n)
        acc = [(-(k + 2) * (k + 1), c[k + 2], cu[n - k]) for k in range(n) if c[k + 2] and cu[n - k]]
        rhs = (SparsePoly.dot(acc) + fi[n] * 6 + cu[n] * L4 * 2 - c[n] * L8 * 2)
        c.append(red(inv3 * rhs * Fraction(1, (n + 2) * (n + 1))))
    c = c[:N + 1]
    s = LaurentSeries1(dict(enumerate(c)), N, "v")
    return InversionSeries("G", s, {n + 2: v for n, v in enumerate(c)}, (q2, q3))


def _reduce_series(s):
    return s.map(lambda p: p.reduce_inverse("q2", "q2inv"))


def g_residuals(gs):
    """((GG'/2)^2 - quintic(G), G^4(G''' - 12GG') - 4l8GG' - 12l10G')."""
    G = gs.series
    d1 = G.derive()
    GG = G * d1
    h = GG.scale(Fraction(1, 2))
    r1 = _reduce_series(h * h - quintic(G))
    G2 = G * G
    r2 = (G2 * G2 * (d1.derive().derive() - GG * 12) - GG * L8 * 4 - d1 * L10 * 12)
    return r1, _reduce_series(r2)


def g_energy_l10(gs):
    """The l10 that puts the symbolic base point (q2, q3) on the curve."""
    q2, q3 = gs.base
    return q2 * q2 * q3 * q3 * Fraction(1, 4) - (q2 ** 5 + q2 ** 3 * L4 + q2 * q2 * L6 + q2 * L8)


# ------------------------------------------------------------------ G at infinity

TAU_SEEDS = {
    0: ONE, 1: ZERO, 2: ZERO, 3: ZERO,
    4: L4 * Fraction(-1, 5), 5: ZERO,
    6: L6 * Fraction(-1, 7), 7: ZERO,
    8: L4 * L4 * Fraction(1, 75) - L8 * Fraction(1, 9), 9: ZERO,
    10: L4 * L6 * Fraction(3, 385) - L10 * Fraction(1, 11), 11: ZERO,
}


def tau_recurrence(N):
    """tau_0..tau_N: hard seeds below 12, the closed recurrence from 12 on."""
    t = [TAU_SEEDS[n] for n in range(min(N, 11) + 1)]
    for n in range(12, N + 1):
        t.append(ZERO)  # placeholder so indices line up; excluded from the sums below
        a = [(Fraction(i - 2, 2)) for i in range(n + 1)]
        # products restricted to indices < n
        low = t[:n] + [ZERO]
        sq = [_conv(low, low, m) for m in range(n + 1)]                  # T^2
        half = [low[i] * a[i] for i in range(n + 1)]
        hsq = [_conv(half, half, m) for m in range(n + 1)]               # Tp^2
        four = _conv(sq, hsq, n)
        cube = [_conv(sq, low, m) for m in range(n + 1)]
        five = _conv(cube, sq, n)
        val = four - five
        if n >= 4:
            val = val - L4 * cube[n - 4]
        if n >= 6:
            val = val - L6 * sq[n - 6]
        if n >= 8:
            val = val - L8 * low[n - 8]
        t[n] = val * Fraction(1, n + 1)
    return t


def g_at_infinity(N=24):
    """G(u) = sum_n tau_n u^(n-2) with tau_n known for n <= N."""
    if N < 12:
        raise ValueError("N must be at least 12")
    t = tau_recurrence(N)
    s = LaurentSeries1({n - 2: v for n, v in enumerate(t)}, N - 2, "u")
    return InversionSeries("G-infinity", s, dict(enumerate(t)), ())


def solve_by_matching(residual, build, n_max, start, order_of, known=None):
    """Coefficient-matching oracle.

    ``build(coeffs)`` makes a series from the coefficient dict and
    ``residual(series)`` returns the defining ODE residual as a Laurent
    series.  Each unknown c_n enters its matching residual coefficient
    affinely; evaluating that coefficient at c_n = 0, 1, 2 gives the slope,
    an affinity check, and the solution.
    """
    c = dict(known or {})
    for n in range(start, n_max + 1):
        o = order_of(n)
        vals = []
        for trial in (0, 1, 2):
            c[n] = SparsePoly.const(trial)
            vals.append(residual(build(c, n))[o])
        slope = vals[1] - vals[0]
        if vals[2] - vals[1] != slope:
            raise ArithmeticError("residual is not affine in the coefficient of index %d" % n)
        if not slope.is_constant() or slope.constant() == 0:
            raise ArithmeticError("coefficient of index %d is not determined by order %d" % (n, o))
        c[n] = -vals[0] * (1 / slope.constant())
    return c


def _g_inf_residual(G):
    h = (G * G.derive()).scale(Fraction(1, 2))
    return h * h - quintic(G)


def g_at_infinity_oracle(N=24):
    """tau_n by matching (GG'/2)^2 = quintic(G) order by order (no recurrence)."""
    def build(c, n):
        return LaurentSeries1({k - 2: v for k, v in c.items()}, n - 2, "u")
    return solve_by_matching(_g_inf_residual, build, N, 1, lambda n: n - 10, {0: ONE})


def xy_from_g(gs):
    """x = G and y = -GG'/2, with y also computed as -(x^2)'/4 and compared."""
    x = gs.series
    y = (x * x.derive()).scale(Fraction(-1, 2))
    y2 = (x * x).derive().scale(Fraction(-1, 4))
    p = min(y.prec, y2.prec)
    if y.truncate(p) != y2.truncate(p):
        raise ArithmeticError("the two formulas for y disagree")
    return x, y


def curve_residual(x, y):
    return y * y - quintic(x)


def x_second_order_residual(x):
    """x'' - (6x^2 + 2l4 - 2l8 x^-2 - 4l10 x^-3)."""
    xi = x ** -1
    xi2 = xi * xi
    return x.derive().derive() - (x * x * 6 + L4 * 2 - xi2 * L8 * 2 - xi2 * xi * L10 * 4)


# ------------------------------------------------------------------ Weierstrass degeneration

def _wp_residual(w):
    d = w.derive()
    return d * d - (w * w * w + w * L4 + L6).scale(4)


def wp_series(N=24):
    """wp(u) = 1/u^2 + ... from (wp')^2 = 4(wp^3 + l4 wp + l6), known through u^(N-2)."""
    def build(c, n):
        return LaurentSeries1({k - 2: v for k, v in c.items()}, n - 2, "u")
    c = solve_by_matching(_wp_residual, build, N, 1, lambda n: n - 6, {0: ONE})
    s = LaurentSeries1({k - 2: v for k, v in c.items()}, N - 2, "u")
    return InversionSeries("wp", s, c, ())


def weierstrass_degeneration(N=24):
    """Report comparing G at infinity with l8 = l10 = 0 against wp."""
    g = g_at_infinity(N).series.subs({"l8": 0, "l10": 0})
    w = wp_series(N).series
    res = _wp_residual(g)
    return {
        "G_d": g,
        "wp": w,
        "ode_residual_zero": not res.c,
        "ode_residual_prec": res.prec,
        "equal": g == w,
    }
