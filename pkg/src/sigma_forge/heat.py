"""Heat operators in (u1, u3, lambda) and their algebra.

An operator is a finite sum of normally ordered terms

    c(lambda) * u1^a1 u3^a3 * d_u1^d1 d_u3^d3 * d_l4^b4 d_l6^b6 d_l8^b8 d_l10^b10

stored as a dict from (a1, a3, d1, d3, (b4, b6, b8, b10)) to the polynomial c.
Composition moves derivatives to the right with the Leibniz rule, so two
operators are equal exactly when their dicts are equal.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .hurwitz import HurwitzSeries2, TruncationError, binom
from .ring import LAMBDAS, SparsePoly, P, _coerce

ZERO = SparsePoly.zero()
NOB = (0, 0, 0, 0)


def _ff(n, k):
    out = 1
    for i in range(k):
        out *= n - i
    return out


class HeatOperator:
    __slots__ = ("terms", "name")

    def __init__(self, terms=None, name=""):
        self.name = name
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def term(cls, coeff, u=(0, 0), du=(0, 0), dl=NOB):
        c = _coerce(coeff)
        return cls({(u[0], u[1], du[0], du[1], tuple(dl)): c})

    @classmethod
    def d_lambda(cls, name, coeff=1):
        b = [0, 0, 0, 0]
        b[LAMBDAS.index(name)] = 1
        return cls.term(coeff, dl=b)

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, ZERO) + v
        return HeatOperator(out)

    def __neg__(self):
        return HeatOperator({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def lmul(self, c):
        """Left multiplication by a lambda-polynomial or rational."""
        c = _coerce(c)
        return HeatOperator({k: v * c for k, v in self.terms.items()})

    __rmul__ = lmul

    def __matmul__(self, other):
        return compose(self, other)

    def __eq__(self, other):
        if not isinstance(other, HeatOperator):
            return NotImplemented
        return self.terms == other.terms

    def is_zero(self):
        return not self.terms

    def weight(self):
        """Shift of the u-weight m + 3n: the operator lowers it by this amount."""
        ws = set()
        for (a1, a3, d1, d3, b), c in self.terms.items():
            lam = c.grade()
            lam = 0 if not isinstance(lam, int) else lam
            ws.add(d1 + 3 * d3 - a1 - 3 * a3 + lam - sum(w * e for w, e in zip((4, 6, 8, 10), b)))
        if len(ws) > 1:
            raise ValueError("operator is not homogeneous")
        return ws.pop() if ws else 0

    def apply(self, s, through=None):
        return apply_operator(self, s, through)

    def pretty(self):
        return pretty(self)

    def __repr__(self):
        return "HeatOperator(%s)" % (self.name or "%d terms" % len(self.terms))


def compose(A, B):
    out = {}
    for (a1, a3, d1, d3, beta), c1 in A.terms.items():
        for (e1, e3, f1, f3, beta2), c2 in B.terms.items():
            # move the lambda derivatives of A across the coefficient c2
            for gamma in product(*(range(b + 1) for b in beta)):
                dc = c2
                mult = 1
                for name, g, b in zip(LAMBDAS, gamma, beta):
                    for _ in range(g):
                        dc = dc.partial(name)
                    mult *= binom(b, g)
                if not dc:
                    continue
                rest = tuple(b - g + b2 for b, g, b2 in zip(beta, gamma, beta2))
                coef = c1 * dc
                # move the u derivatives of A across u^e of B
                for k1 in range(min(d1, e1) + 1):
                    for k3 in range(min(d3, e3) + 1):
                        m = mult * binom(d1, k1) * _ff(e1, k1) * binom(d3, k3) * _ff(e3, k3)
                        key = (a1 + e1 - k1, a3 + e3 - k3, d1 - k1 + f1, d3 - k3 + f3, rest)
                        out[key] = out.get(key, ZERO) + coef * m
    return HeatOperator(out)


def operator_bracket(A, B):
    return compose(A, B) - compose(B, A)


def apply_operator(op, s, through=None):
    """Apply op to a two-variable Hurwitz series.

    The result is known through the smallest weight any term leaves intact.
    If ``through`` asks for more, TruncationError reports the deficit.
    """
    parts = []
    for (a1, a3, d1, d3, beta), c in op.terms.items():
        t = s
        for name, b in zip(LAMBDAS, beta):
            for _ in range(b):
                t = t.partial(name)
        if d1:
            for _ in range(d1):
                t = t.derive(1)
        if d3:
            for _ in range(d3):
                t = t.derive(3)
        if a1 or a3:
            t = t.mul_mono(a1, a3)
        parts.append(t.scale(c))
    if not parts:
        return HurwitzSeries2({}, s.trunc)
    known = min(p.trunc for p in parts)
    out = HurwitzSeries2({}, known)
    for p in parts:
        out = out + p.truncate(known)
    if through is not None and through > known:
        raise TruncationError("operator result known through weight %d, %d requested (deficit %d)"
                              % (known, through, through - known))
    return out


def _ell_row(row):
    op = HeatOperator()
    for name, c in zip(LAMBDAS, row):
        op = op + HeatOperator.d_lambda(name, c)
    return op


# symmetric matrix T, rows for Q0, Q2, Q4, Q6
T_MATRIX = (
    ("4*l4", "6*l6", "8*l8", "10*l10"),
    ("6*l6", "8*l8-12/5*l4^2", "10*l10-8/5*l4*l6", "-4/5*l4*l8"),
    ("8*l8", "10*l10-8/5*l4*l6", "4*l4*l8-12/5*l6^2", "6*l4*l10-6/5*l6*l8"),
    ("10*l10", "-4/5*l4*l8", "6*l4*l10-6/5*l6*l8", "4*l6*l10-8/5*l8^2"),
)


def _h(items):
    op = HeatOperator()
    for coeff, u, du in items:
        op = op + HeatOperator.term(P(coeff) if isinstance(coeff, str) else coeff, u, du)
    return op


def _genus2():
    H = {
        0: _h([(1, (1, 0), (1, 0)), (3, (0, 1), (0, 1)), (-3, (0, 0), (0, 0))]),
        2: _h([(Fraction(1, 2), (0, 0), (2, 0)), ("-4/5*l4", (0, 1), (1, 0)), (1, (1, 0), (0, 1)),
               ("-3/10*l4", (2, 0), (0, 0)), ("3/2*l8-2/5*l4^2", (0, 2), (0, 0))]),
        4: _h([(1, (0, 0), (1, 1)), ("-6/5*l6", (0, 1), (1, 0)), ("l4", (0, 1), (0, 1)),
               ("-1/5*l6", (2, 0), (0, 0)), ("l8", (1, 1), (0, 0)),
               ("3*l10-3/5*l4*l6", (0, 2), (0, 0)), ("-l4", (0, 0), (0, 0))]),
        6: _h([(Fraction(1, 2), (0, 0), (0, 2)), ("-3/5*l8", (0, 1), (1, 0)),
               ("-1/10*l8", (2, 0), (0, 0)), ("2*l10", (1, 1), (0, 0)),
               ("-3/10*l4*l8", (0, 2), (0, 0)), ("-1/2*l6", (0, 0), (0, 0))]),
    }
    out = {}
    for i, row in zip((0, 2, 4, 6), T_MATRIX):
        q = _ell_row([P(r) for r in row]) - H[i]
        q.name = "Q%d" % i
        out[i] = q
    return out


def _genus1():
    q0 = (HeatOperator.d_lambda("l4", P("4*l4")) + HeatOperator.d_lambda("l6", P("6*l6"))
          - HeatOperator.term(1, (1, 0), (1, 0)) + HeatOperator.term(1))
    q2 = (HeatOperator.d_lambda("l4", P("6*l6")) + HeatOperator.d_lambda("l6", P("-4/3*l4^2"))
          - HeatOperator.term(Fraction(1, 2), du=(2, 0)) + HeatOperator.term(P("1/6*l4"), u=(2, 0)))
    q0.name, q2.name = "Q0", "Q2"
    return {0: q0, 2: q2}


def build_heat_system(genus):
    """Operators annihilating sigma: {0,2,4,6} for genus 2, {0,2} for genus 1.

    Genus-1 operators act on u = u1 (the u3 slot is unused).
    """
    if genus == 2:
        return _genus2()
    if genus == 1:
        return _genus1()
    raise ValueError("genus must be 1 or 2")


def verify_annihilation(sigma, ops):
    """Apply each operator; return {i: (known_through, residual dict)}."""
    out = {}
    for i, op in ops.items():
        r = apply_operator(op, sigma)
        out[i] = (r.trunc, {k: v for k, v in sorted(r.c.items())})
    return out


def bracket_identities(ops=None):
    """Residual operators of the two commutator identities (zero when they hold)."""
    Q = ops or build_heat_system(2)
    one = operator_bracket(Q[2], Q[4]).lmul(5) - Q[6].lmul(10) - Q[0].lmul(P("8*l6")) + Q[2].lmul(P("8*l4"))
    two = (operator_bracket(Q[4], Q[6]).lmul(5) + Q[0].lmul(P("10*l10")) + Q[4].lmul(P("6*l6"))
           - Q[6].lmul(P("10*l4")) - Q[2].lmul(P("6*l8")))
    return {"5[Q2,Q4]-10Q6-8l6Q0+8l4Q2": one, "5[Q4,Q6]+10l10Q0+6l6Q4-10l4Q6-6l8Q2": two}


def _factor_text(a1, a3, d1, d3, beta):
    parts = []
    for v, e in (("u1", a1), ("u3", a3)):
        if e:
            parts.append(v if e == 1 else "%s^%d" % (v, e))
    for v, e in (("d_u1", d1), ("d_u3", d3)):
        if e:
            parts.append(v if e == 1 else "%s^%d" % (v, e))
    for name, e in zip(LAMBDAS, beta):
        if e:
            parts.append("d_" + name if e == 1 else "d_%s^%d" % (name, e))
    return "*".join(parts)


def pretty(op):
    if not op.terms:
        return "0"
    keys = sorted(op.terms, key=lambda k: (tuple(-b for b in k[4]), -k[2], -k[3], k[0], k[1]))
    lines = []
    for k in keys:
        f = _factor_text(*k)
        c = str(op.terms[k])
        lines.append("(%s)%s" % (c, "*" + f if f else ""))
    head = (op.name + " = ") if op.name else ""
    return head + "\n  + ".join(lines)
