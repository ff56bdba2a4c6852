"""Independent reference computations in sympy.

Nothing here imports the package's series code: sigma is obtained by solving
the heat equations as a plain linear system over an undetermined ansatz, Schur
functions come from a sympy determinant, and so on.  Tests compare the
package against these.
"""

from functools import lru_cache
from itertools import product
from math import factorial

import sympy as sp

u1, u3, u = sp.symbols("u1 u3 u")
l4, l6, l8, l10 = LAM = sp.symbols("l4 l6 l8 l10")
R = sp.Rational


def to_sympy(poly):
    """SparsePoly -> sympy expression via its text form."""
    return sp.sympify(str(poly).replace("^", "**"), locals={"l4": l4, "l6": l6, "l8": l8, "l10": l10})


def lam_monomials(deg, names=LAM, weights=(4, 6, 8, 10)):
    if deg < 0:
        return []
    out = []
    ranges = [range(deg // w + 1) for w in weights[:len(names)]]
    for e in product(*ranges):
        if sum(a * w for a, w in zip(e, weights)) == deg:
            m = sp.Integer(1)
            for v, a in zip(names, e):
                m *= v ** a
            out.append(m)
    return out


def _genus2_ops():
    T = sp.Matrix([
        [4 * l4, 6 * l6, 8 * l8, 10 * l10],
        [6 * l6, 8 * l8 - R(12, 5) * l4 ** 2, 10 * l10 - R(8, 5) * l4 * l6, -R(4, 5) * l4 * l8],
        [8 * l8, 10 * l10 - R(8, 5) * l4 * l6, 4 * l4 * l8 - R(12, 5) * l6 ** 2, 6 * l4 * l10 - R(6, 5) * l6 * l8],
        [10 * l10, -R(4, 5) * l4 * l8, 6 * l4 * l10 - R(6, 5) * l6 * l8, 4 * l6 * l10 - R(8, 5) * l8 ** 2],
    ])

    def ell(i, f):
        return sum(T[i, j] * sp.diff(f, LAM[j]) for j in range(4))

    d = sp.diff
    H = {
        0: lambda f: u1 * d(f, u1) + 3 * u3 * d(f, u3) - 3 * f,
        2: lambda f: (R(1, 2) * d(f, u1, 2) - R(4, 5) * l4 * u3 * d(f, u1) + u1 * d(f, u3)
                      - R(3, 10) * l4 * u1 ** 2 * f + R(1, 10) * (15 * l8 - 4 * l4 ** 2) * u3 ** 2 * f),
        4: lambda f: (d(f, u1, u3) - R(6, 5) * l6 * u3 * d(f, u1) + l4 * u3 * d(f, u3) - R(1, 5) * l6 * u1 ** 2 * f
                      + l8 * u1 * u3 * f + R(1, 10) * (30 * l10 - 6 * l4 * l6) * u3 ** 2 * f - l4 * f),
        6: lambda f: (R(1, 2) * d(f, u3, 2) - R(3, 5) * l8 * u3 * d(f, u1) - R(1, 10) * l8 * u1 ** 2 * f
                      + 2 * l10 * u1 * u3 * f - R(3, 10) * l8 * l4 * u3 ** 2 * f - R(1, 2) * l6 * f),
    }
    return {i: (lambda f, i=i: ell(i // 2, f) - H[i](f)) for i in (0, 2, 4, 6)}


def _genus1_ops():
    d = sp.diff
    return {
        0: lambda f: 4 * l4 * d(f, l4) + 6 * l6 * d(f, l6) - u * d(f, u) + f,
        2: lambda f: 6 * l6 * d(f, l4) - R(4, 3) * l4 ** 2 * d(f, l6) - R(1, 2) * d(f, u, 2) + R(1, 6) * l4 * u ** 2 * f,
    }


@lru_cache(maxsize=None)
def heat_sigma(genus, W):
    """Hurwitz coefficients {(m, n): expr} of the unique solution of the heat system through weight W."""
    if genus == 2:
        keys = [(m, n) for w in range(W + 1) for n in range(w // 3 + 1) for m in [w - 3 * n]]
        deg = lambda k: k[0] + 3 * k[1] - 3
        lam, drop = LAM, {0: 0, 2: 2, 4: 4, 6: 6}
        ops = _genus2_ops()
        fixed = {(3, 0): 2, (0, 1): -1}
        mono = lambda k: u1 ** k[0] * u3 ** k[1] / (factorial(k[0]) * factorial(k[1]))
        uw = lambda m: m[0] + 3 * m[1]
        gens = (u1, u3)
    else:
        keys = [(m, 0) for m in range(W + 1)]
        deg = lambda k: k[0] - 1
        lam, drop = (l4, l6), {0: 0, 2: 2}
        ops = _genus1_ops()
        fixed = {(1, 0): 1}
        mono = lambda k: u ** k[0] / factorial(k[0])
        uw = lambda m: m[0]
        gens = (u,)
    unknowns = []
    sigma = 0
    for k in keys:
        if k in fixed:
            sigma += fixed[k] * mono(k)
            continue
        for j, m in enumerate(lam_monomials(deg(k), lam)):
            c = sp.Symbol("c_%d_%d_%d" % (k[0], k[1], j))
            unknowns.append(c)
            sigma += c * m * mono(k)
    eqs = []
    for i, op in ops.items():
        r = sp.Poly(sp.expand(op(sigma)), *gens)
        for monom, coeff in r.terms():
            if uw(monom) <= W - drop[i]:
                eqs.extend(sp.Poly(coeff, *lam).coeffs())
    sol = sp.solve(eqs, unknowns, dict=True)
    if len(sol) != 1 or set(sol[0]) != set(unknowns):
        raise AssertionError("heat system does not determine sigma through weight %d" % W)
    s = sp.expand(sigma.subs(sol[0]))
    out = {}
    for k in keys:
        if genus == 2:
            c = sp.Poly(s, u1, u3).coeff_monomial(u1 ** k[0] * u3 ** k[1])
        else:
            c = sp.Poly(s, u).coeff_monomial(u ** k[0])
        c = sp.expand(c * factorial(k[0]) * factorial(k[1]))
        if c != 0:
            out[k] = c
    return out


def schur(parts):
    """s_mu(u1, u3) from the Jacobi-Trudi determinant with p_n = sum u1^i u3^j/(i! j!), i + 3j = n."""
    def p(n):
        if n < 0:
            return sp.Integer(0)
        return sum(u1 ** (n - 3 * j) * u3 ** j / (factorial(n - 3 * j) * factorial(j)) for j in range(n // 3 + 1))
    L = len(parts)
    if L == 0:
        return sp.Integer(1)
    M = sp.Matrix(L, L, lambda i, j: p(parts[i] - i + j))
    return sp.expand(M.det())


def hurwitz_coeffs(expr):
    out = {}
    for (a, b), c in sp.Poly(expr, u1, u3).terms():
        out[(a, b)] = c * factorial(a) * factorial(b)
    return out


def bernoulli_number(n):
    """B_n with B_1 = -1/2, from t/(e^t - 1)."""
    t = sp.Symbol("t")
    s = sp.series(t / (sp.exp(t) - 1), t, 0, n + 1).removeO()
    return sp.Rational(s.coeff(t, n) * factorial(n))


def series_reversion(coeffs, N):
    """Plain coefficients of the compositional inverse of z + sum c_k z^k, via sympy solve by matching."""
    z, w = sp.symbols("z w")
    f = z + sum(c * z ** k for k, c in coeffs.items())
    b = sp.symbols("b2:%d" % (N + 1))
    g = w + sum(bk * w ** (k + 2) for k, bk in enumerate(b))
    comp = sp.expand(sp.series(f.subs(z, g), w, 0, N + 1).removeO())
    sol = sp.solve([comp.coeff(w, k) for k in range(2, N + 1)], b, dict=True)[0]
    return {k + 2: sp.expand(sol[bk]) for k, bk in enumerate(b)}


def wp_coefficients(N):
    """wp(u) = u^-2 + sum c_k u^k for (wp')^2 = 4(wp^3 + l4 wp + l6), solved by sympy."""
    cs = sp.symbols("c0:%d" % (N + 1))
    wp = u ** -2 + sum(c * u ** k for k, c in enumerate(cs))
    expr = sp.expand((sp.diff(wp, u) ** 2 - 4 * (wp ** 3 + l4 * wp + l6)) * u ** 6)
    poly = sp.Poly(expr, u)
    eqs = [poly.coeff_monomial(u ** k) for k in range(0, N + 3)]
    sol = sp.solve(eqs, cs, dict=True)
    return {k: sp.expand(sol[0][c]) for k, c in enumerate(cs)} if sol else None
