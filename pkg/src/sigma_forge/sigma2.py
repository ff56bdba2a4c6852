"""Genus-two sigma function from its u3-slices (xi) and u1-slices (mu).

sigma(u1, u3) = sum_k xi_k(u1) u3^k/k! = sum_k mu_k(u3) u1^k/k!.

xi_0 and mu_0 come from scalar recurrences for their Hurwitz coefficients,
the higher slices from the hierarchy relations.  The remaining relations
are not used for construction and are exposed as residuals for checking.
"""

from __future__ import annotations

from fractions import Fraction

from .hurwitz import HurwitzSeries1, HurwitzSeries2
from .ring import LAMBDAS, SparsePoly, SubringSpec, P, subring_member

DEFAULT_WEIGHT = 20

F = Fraction

# lambda-derivative combinations appearing in the hierarchies
ELL = {
    "e2": ("6*l6", "8*l8-12/5*l4^2", "10*l10-8/5*l4*l6", "-4/5*l4*l8"),
    "e3": ("8*l8", "10*l10-8/5*l4*l6", "4*l4*l8-12/5*l6^2", "6*l4*l10-6/5*l6*l8"),
    "e4": ("20*l10", "-8/5*l4*l8", "12*l4*l10-12/5*l6*l8", "8*l6*l10-16/5*l8^2"),
    "e1": ("4*l4", "6*l6", "8*l8", "10*l10"),
    "f2": ("12*l6", "16*l8-24/5*l4^2", "20*l10-16/5*l4*l6", "-8/5*l4*l8"),
    "f3": ("8*l8", "10*l10-8/5*l4*l6", "4*l4*l8-12/5*l6^2", "6*l4*l10-6/5*l6*l8"),
    "f4": ("-50/3*l10", "4/3*l4*l8", "2*l6*l8-10*l4*l10", "8/3*l8^2-20/3*l6*l10"),
    "p0": ("12*l6", "16*l8-24/5*l4^2", "20*l10-16/5*l4*l6", "-8/5*l4*l8"),
    "p2": ("-16*l8", "16/5*l4*l6-20*l10", "24/5*l6^2-8*l4*l8", "12/5*l6*l8-12*l4*l10"),
    "q0": ("20*l10", "-8/5*l4*l8", "12*l4*l10-12/5*l6*l8", "8*l6*l10-16/5*l8^2"),
    "q2": ("48/5*l8^2-24*l6*l10", "12*l8*l10", "24/5*l4*l8^2-72/5*l4*l6*l10",
           "36/5*l4*l8*l10-48/5*l6^2*l10+12/5*l6*l8^2"),
}
ELL = {k: tuple(P(c) for c in v) for k, v in ELL.items()}
L4, L6, L8, L10 = (P(n) for n in LAMBDAS)


def _lam(x, key):
    """sum_j coeff_j * d x / d lambda_j for a polynomial or a series."""
    out = None
    for c, name in zip(ELL[key], LAMBDAS):
        t = x.partial(name) * c if isinstance(x, SparsePoly) else x.partial(name).scale(c)
        out = t if out is None else out + t
    return out


# ------------------------------------------------------------------ xi side

def xi0_coefficients(N):
    """Hurwitz coefficients p_0..p_N of xi_0 (p_3 = 2)."""
    p = [SparsePoly.zero()] * 4
    p[3] = SparsePoly.const(2)
    Z = SparsePoly.zero()
    for l in range(2, N - 1):
        pm2 = p[l - 2] if l >= 2 else Z
        pm4 = p[l - 4] if l >= 4 else Z
        v = (L4 * F(l * (3 * l - 13), 5) * pm2
             - L6 * F(2 * l * (l - 2) * (l - 3), 5) * pm4
             + _lam(pm2, "p2") * l
             + _lam(p[l], "p0"))
        if len(p) == l + 2:
            p.append(v)
        else:
            p[l + 2] = v
    return p[:N + 1]


def xi0_series(N=DEFAULT_WEIGHT):
    return HurwitzSeries1(dict(enumerate(xi0_coefficients(N))), N, "u1", -1)


def _get(xs, k, like):
    if k < 0:
        return HurwitzSeries1({}, like.trunc + 100, "u1", -1)
    return xs[k]


def _zero_like(s, trunc):
    return HurwitzSeries1({}, trunc, s.var, s.weight)


def xi_e1_residual(xs, k):
    x = xs[k]
    lhs = x.derive().mul_var(1) + x.scale(3 * (k - 1))
    return lhs - _lam(x, "e1")


def _e2_rhs(xs, k):
    x = xs[k]
    big = x.trunc + 10
    xm1 = xs[k - 1] if k >= 1 else _zero_like(x, big)
    xm2 = xs[k - 2] if k >= 2 else _zero_like(x, big)
    return (x.derive().derive().scale(F(-1, 2))
            + xm1.derive().scale(L4 * F(4 * k, 5))
            + x.mul_var(2).scale(L4 * F(3, 10))
            - xm2.scale(P("15*l8-4*l4^2") * F(k * (k - 1), 10))
            + _lam(x, "e2"))


def xi_e2_residual(xs, k):
    return xs[k + 1].mul_var(1) - _e2_rhs(xs, k)


def xi_e3_residual(xs, k):
    x = xs[k]
    big = x.trunc + 10
    xm1 = xs[k - 1] if k >= 1 else _zero_like(x, big)
    xm2 = xs[k - 2] if k >= 2 else _zero_like(x, big)
    rhs = (xm1.derive().scale(L6 * F(6 * k, 5))
           - x.scale(L4 * k)
           + x.mul_var(2).scale(L6 * F(1, 5))
           - xm1.mul_var(1).scale(L8 * k)
           - xm2.scale(P("30*l10-6*l4*l6") * F(k * (k - 1), 10))
           + x.scale(L4)
           + _lam(x, "e3"))
    return xs[k + 1].derive() - rhs


def _e4_rhs(xs, k):
    x = xs[k]
    big = x.trunc + 10
    xm1 = xs[k - 1] if k >= 1 else _zero_like(x, big)
    xm2 = xs[k - 2] if k >= 2 else _zero_like(x, big)
    return (xm1.derive().scale(L8 * F(6 * k, 5))
            + x.mul_var(2).scale(L8 * F(1, 5))
            - xm1.mul_var(1).scale(L10 * (4 * k))
            + xm2.scale(L8 * L4 * F(3 * k * (k - 1), 5))
            + x.scale(L6)
            + _lam(x, "e4"))


def xi_e4_residual(xs, k):
    return xs[k + 2] - _e4_rhs(xs, k)


def xi_hierarchy(N=DEFAULT_WEIGHT):
    """[xi_0, ..., xi_K] with K = N // 3; xi_k is known through u1^(N-3k) at least."""
    K = N // 3
    xs = [xi0_series(N)]
    r = _e2_rhs(xs, 0)
    if r.c.get(0):
        raise ArithmeticError("constant term of u1*xi_1 is %s, expected 0" % r[0])
    xs.append(r.div_var())
    k = 0
    while len(xs) <= K:
        xs.append(_e4_rhs(xs, k))
        k += 1
    return xs


# ------------------------------------------------------------------ mu side

def mu0_coefficients(M):
    """Hurwitz coefficients q_0..q_M of mu_0 (q_1 = -1, q_3 = -l6)."""
    q = [SparsePoly.zero() for _ in range(max(M + 1, 4))]
    q[1] = SparsePoly.const(-1)
    q[3] = -L6
    Z = SparsePoly.zero()
    for l in range(2, M - 1):
        qm2 = q[l - 2]
        qm4 = q[l - 4] if l >= 4 else Z
        q[l + 2] = (L6 * F(6 * l + 5, 5) * q[l]
                    + L4 * L8 * F(l * (15 - 3 * l), 5) * qm2
                    - L6 * L6 * F(6 * l, 5) * qm2
                    - L8 * L10 * F(18 * l * (l - 2) * (l - 3), 5) * qm4
                    + _lam(q[l], "q0")
                    + _lam(qm2, "q2") * l)
    return q[:M + 1]


def mu0_series(M):
    """mu_0 through u3^M."""
    return HurwitzSeries1(dict(enumerate(mu0_coefficients(M))), M, "u3", -3)


def _mz(s, trunc):
    return HurwitzSeries1({}, trunc, "u3", -3)


def mu_f1_residual(ms, k):
    m = ms[k]
    return m.scale(k - 3) + m.derive().mul_var(1).scale(3) - _lam(m, "e1")


def _f2_rhs(ms, k):
    m = ms[k]
    big = m.trunc + 10
    m1 = ms[k + 1]
    mm1 = ms[k - 1] if k >= 1 else _mz(m, big)
    mm2 = ms[k - 2] if k >= 2 else _mz(m, big)
    return (m1.mul_var(1).scale(L4 * F(8, 5))
            - mm1.derive().scale(2 * k)
            + mm2.scale(L4 * F(3 * k * (k - 1), 5))
            - m.mul_var(2).scale(P("3*l8-4/5*l4^2"))
            + _lam(m, "f2"))


def mu_f2_residual(ms, k):
    return ms[k + 2] - _f2_rhs(ms, k)


def _f3_rhs(ms, k):
    m = ms[k]
    big = m.trunc + 10
    mm1 = ms[k - 1] if k >= 1 else _mz(m, big)
    mm2 = ms[k - 2] if k >= 2 else _mz(m, big)
    return (m.derive().mul_var(1).scale(-L4)
            + mm2.scale(L6 * F(k * (k - 1), 5))
            - mm1.mul_var(1).scale(L8 * k)
            - m.mul_var(2).scale(P("3*l10-3/5*l4*l6"))
            + m.scale(L4)
            + _lam(m, "f3"))


def mu_f3_residual(ms, k):
    m1 = ms[k + 1]
    return m1.derive() - m1.mul_var(1).scale(L6 * F(6, 5)) - _f3_rhs(ms, k)


def mu_f4_residual(ms, k):
    """The fourth relation multiplied through, so nothing is divided by l8."""
    m = ms[k]
    big = m.trunc + 10
    mm1 = ms[k - 1] if k >= 1 else _mz(m, big)
    mm2 = ms[k - 2] if k >= 2 else _mz(m, big)
    rhs = (m.derive().derive().scale(F(5, 6))
           - mm2.scale(L8 * F(k * (k - 1), 6))
           + mm1.mul_var(1).scale(L10 * F(10 * k, 3))
           - m.mul_var(2).scale(L4 * L8 * F(1, 2))
           - m.scale(L6 * F(5, 6))
           + _lam(m, "f4"))
    return ms[k + 1].mul_var(1).scale(L8) - rhs


def mu_hierarchy(N=DEFAULT_WEIGHT):
    """[mu_0, ..., mu_N]; mu_k is known through u3^((N-k)//3) at least."""
    M = N // 3
    ms = [mu0_series(M)]
    # mu_1 solves mu_1' - (6/5) l6 u3 mu_1 = rhs(mu_0) with mu_1(0) = 0
    r = _f3_rhs(ms, 0)
    top = min(r.trunc + 1, M)
    c = {0: SparsePoly.zero()}
    for n in range(top):
        prev = c.get(n - 1, SparsePoly.zero()) if n >= 1 else SparsePoly.zero()
        c[n + 1] = r[n] + L6 * F(6 * n, 5) * prev
    ms.append(HurwitzSeries1(c, top, "u3", -3))
    k = 0
    while len(ms) <= N:
        ms.append(_f2_rhs(ms, k))
        k += 1
    return ms


# ------------------------------------------------------------------ sigma

def assemble_sigma(slices, route, N=None):
    """Combine slices into a two-variable series through weight N."""
    if route == "xi":
        N = N if N is not None else min(s.trunc + 3 * k for k, s in enumerate(slices))
        return HurwitzSeries2.from_u3_slices(slices, N)
    if route == "mu":
        N = N if N is not None else min(3 * s.trunc + k for k, s in enumerate(slices))
        return HurwitzSeries2.from_u1_slices(slices, N)
    raise ValueError("route must be 'xi' or 'mu'")


def sigma_xi(N=DEFAULT_WEIGHT):
    return assemble_sigma(xi_hierarchy(N), "xi", N)


def sigma_mu(N=DEFAULT_WEIGHT):
    return assemble_sigma(mu_hierarchy(N), "mu", N)


def genus1_coefficients(N):
    """Hurwitz coefficients of the genus-one sigma for y^2 = x^3 + l4 x + l6."""
    a = [SparsePoly.zero(), SparsePoly.one()]
    for n in range(0, N - 1):
        an = a[n]
        v = (an.partial("l4") * (12 * L6) - an.partial("l6") * (L4 * L4 * F(8, 3))
             + (a[n - 2] * (L4 * F(n * (n - 1), 3)) if n >= 2 else SparsePoly.zero()))
        a.append(v)
    return a[:N + 1]


def genus1_sigma(N=DEFAULT_WEIGHT):
    return HurwitzSeries1(dict(enumerate(genus1_coefficients(N))), N, "u", -1)


def genus1_as_series2(s):
    """Embed a one-variable series in u as a two-variable one in u1 (for the heat operators)."""
    return HurwitzSeries2({(m, 0): v for m, v in s.c.items()}, s.trunc)


INTEGRAL_G2 = SubringSpec.of(scales={"l10": 2})
INTEGRAL = SubringSpec.of()


def integrality_report(series, spec=INTEGRAL_G2):
    """List of (index, monomial, coefficient) for coefficients outside the subring."""
    bad = []
    for key in sorted(series.c, key=lambda k: k if isinstance(k, int) else (k[0] + 3 * k[1], k[1])):
        r = subring_member(series.c[key], spec)
        if not r:
            bad.append((key, r.monomial, r.coefficient))
    return bad


# ------------------------------------------------------------------ output

def expansion_table(s, label="", weight=-1):
    """Lines 'coefficient * u^n/n!' for a one-variable series."""
    lines = []
    for n in sorted(s.c):
        lines.append("%s%s * %s^%d/%d!" % (label, "(%s)" % s.c[n], s.var, n, n))
    return lines


def sigma_table(sig):
    rows = []
    for key in sig.keys_through():
        v = sig.c.get(key)
        if v:
            rows.append({"m": key[0], "n": key[1], "weight": key[0] + 3 * key[1], "coeff": v.canonical()})
    return rows
