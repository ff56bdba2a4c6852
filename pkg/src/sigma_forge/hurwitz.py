"""Truncated Hurwitz series (sum c_n u^n / n!) and plain Laurent series.

Every series records the highest order through which its coefficients are
known.  Asking for a coefficient past that order raises ``TruncationError``
instead of silently returning zero.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from functools import lru_cache

from .ring import SparsePoly, _coerce

ZERO = SparsePoly.zero()
ONE = SparsePoly.one()


class TruncationError(ValueError):
    pass


@lru_cache(maxsize=None)
def binom(n, k):
    return math.comb(n, k)


@lru_cache(maxsize=None)
def fact(n):
    return math.factorial(n)


def _poly(x):
    p = _coerce(x)
    if p is NotImplemented:
        raise TypeError("expected a polynomial or rational, got %r" % (x,))
    return p


# ------------------------------------------------------------------ 1 var

class HurwitzSeries1:
    """sum_{n<=trunc} c_n u^n/n! in one variable of the given weight."""

    __slots__ = ("var", "weight", "trunc", "c")

    def __init__(self, coeffs=None, trunc=0, var="u", weight=-1):
        if trunc < -1:
            raise ValueError("truncation order must be >= -1")
        self.var = var
        self.weight = weight
        self.trunc = trunc
        self.c = {}
        items = coeffs.items() if hasattr(coeffs, "items") else enumerate(coeffs or [])
        for n, v in items:
            if n < 0:
                raise ValueError("negative index in a Hurwitz series")
            if n <= trunc:
                v = _poly(v)
                if v:
                    self.c[n] = v

    def _new(self, c, trunc):
        s = HurwitzSeries1.__new__(HurwitzSeries1)
        s.var, s.weight, s.trunc = self.var, self.weight, trunc
        s.c = {n: v for n, v in c.items() if v and n <= trunc}
        return s

    @classmethod
    def from_plain(cls, plain, trunc, var="u", weight=-1):
        """Build from ordinary power-series coefficients a_n (a_n u^n)."""
        items = plain.items() if hasattr(plain, "items") else enumerate(plain)
        return cls({n: _poly(a) * fact(n) for n, a in items if n <= trunc}, trunc, var, weight)

    def plain(self, n):
        return self[n] * Fraction(1, fact(n))

    def __getitem__(self, n):
        if n > self.trunc:
            raise TruncationError("coefficient %d requested, series known through %d" % (n, self.trunc))
        return self.c.get(n, ZERO)

    coeff = __getitem__

    def valuation(self):
        return min(self.c, default=self.trunc + 1)

    def truncate(self, n):
        if n > self.trunc:
            raise TruncationError("cannot extend truncation %d to %d" % (self.trunc, n))
        return self._new(self.c, n)

    def __eq__(self, other):
        if not isinstance(other, HurwitzSeries1):
            return NotImplemented
        return self.trunc == other.trunc and self.c == other.c

    def agrees_with(self, other, through=None):
        n = min(self.trunc, other.trunc) if through is None else through
        if n > self.trunc or n > other.trunc:
            raise TruncationError("comparison beyond known order")
        return all(self[i] == other[i] for i in range(n + 1))

    def __add__(self, other):
        if not isinstance(other, HurwitzSeries1):
            other = self._new({0: _poly(other)}, self.trunc)
        t = min(self.trunc, other.trunc)
        keys = set(self.c) | set(other.c)
        return self._new({n: self.c.get(n, ZERO) + other.c.get(n, ZERO) for n in keys if n <= t}, t)

    def __neg__(self):
        return self._new({n: -v for n, v in self.c.items()}, self.trunc)

    def __sub__(self, other):
        return self + (-other if isinstance(other, HurwitzSeries1) else -_poly(other))

    def scale(self, k):
        k = _poly(k)
        return self._new({n: v * k for n, v in self.c.items()}, self.trunc)

    def __mul__(self, other):
        if isinstance(other, HurwitzSeries1):
            return hw_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def derive(self):
        return self._new({n - 1: v for n, v in self.c.items() if n}, self.trunc - 1)

    def integrate(self):
        return self._new({n + 1: v for n, v in self.c.items()}, self.trunc + 1)

    def mul_var(self, k=1):
        """Multiply by u^k."""
        out = {}
        for n, v in self.c.items():
            out[n + k] = v * (fact(n + k) // fact(n))
        return self._new(out, self.trunc + k)

    def div_var(self):
        """Divide by u; the constant term must vanish."""
        if 0 in self.c:
            raise ValueError("constant term is nonzero, cannot divide by %s" % self.var)
        return self._new({n - 1: v * Fraction(1, n) for n, v in self.c.items()}, self.trunc - 1)

    def partial(self, name):
        return self._new({n: v.partial(name) for n, v in self.c.items()}, self.trunc)

    def map(self, fn):
        return self._new({n: fn(v) for n, v in self.c.items()}, self.trunc)

    def subs(self, mapping):
        return self.map(lambda v: v.subs(mapping))

    def exp(self):
        return hw_exp(self)

    def to_json(self):
        return {"var": self.var, "trunc": self.trunc,
                "coeffs": [[n, self.c[n].canonical()] for n in sorted(self.c)]}

    @classmethod
    def from_json(cls, obj, weight=-1):
        return cls({n: SparsePoly.parse(s) for n, s in obj["coeffs"]}, obj["trunc"], obj["var"], weight)

    def __repr__(self):
        body = " + ".join("(%s)*%s^%d/%d!" % (self.c[n], self.var, n, n) for n in sorted(self.c))
        return "HurwitzSeries1(%s; O(%s^%d))" % (body or "0", self.var, self.trunc + 1)


def hw_mul(a, b):
    if isinstance(a, HurwitzSeries2):
        return _hw_mul2(a, b)
    trunc = min(a.trunc + b.valuation(), b.trunc + a.valuation())
    out = {}
    for n in range(trunc + 1):
        tri = [(binom(n, i), a.c[i], b.c[n - i]) for i in a.c if i <= n and (n - i) in b.c]
        if tri:
            out[n] = SparsePoly.dot(tri)
    return a._new(out, trunc)


def hw_calculus(s, op):
    if op == "derive":
        return s.derive()
    if op == "integrate_zero_constant":
        return s.integrate()
    raise ValueError(op)


def hw_exp(s):
    if isinstance(s, HurwitzSeries2):
        return _hw_exp2(s)
    if s.c.get(0):
        raise ValueError("exp needs a series with zero constant term")
    N = s.trunc
    e = [ONE]
    d = {n - 1: v for n, v in s.c.items()}  # a'
    for n in range(N):
        # e_{n+1} = sum_k C(n,k) a_{k+1} e_{n-k}
        tri = [(binom(n, k), d[k], e[n - k]) for k in d if k <= n and e[n - k]]
        e.append(SparsePoly.dot(tri))
    return s._new(dict(enumerate(e)), N)


def plain_comp_inverse(a, N):
    """Given plain coefficients a[1..N] of z + a2 z^2 + ..., return those of the inverse."""
    if a.get(0, ZERO) or a.get(1, ZERO) != ONE:
        raise ValueError("compositional inverse needs a0 = 0 and a1 = 1")
    b = {1: ONE}
    P = {1: {1: ONE}}  # P[k][n] = [u^n] b^k
    for n in range(2, N + 1):
        for k in range(2, n + 1):
            row = P.setdefault(k, {})
            prev = P[k - 1]
            tri = [(1, b[j], prev[n - j]) for j in range(1, n - k + 2) if j in b and (n - j) in prev]
            v = SparsePoly.dot(tri)
            if v:
                row[n] = v
        tri = [(-1, a[k], P[k][n]) for k in range(2, n + 1) if a.get(k) and n in P.get(k, {})]
        bn = SparsePoly.dot(tri)
        if bn:
            b[n] = bn
            P[1][n] = bn
    return b


def hw_comp_inverse(s):
    """Inverse series of z + O(z^2) under composition (Hurwitz form in and out)."""
    if s.c.get(0) or s[1] != ONE:
        raise ValueError("compositional inverse needs a0 = 0 and a1 = 1")
    N = s.trunc
    a = {n: s.plain(n) for n in s.c}
    b = plain_comp_inverse(a, N)
    return HurwitzSeries1.from_plain(b, N, s.var, s.weight)


# ------------------------------------------------------------------ 2 var

class HurwitzSeries2:
    """sum c_{m,n} u1^m u3^n/(m! n!) known for weight m + 3n <= trunc."""

    __slots__ = ("trunc", "c")
    var = ("u1", "u3")

    def __init__(self, coeffs=None, trunc=0):
        self.trunc = trunc
        self.c = {}
        for (m, n), v in (coeffs or {}).items():
            if m < 0 or n < 0:
                raise ValueError("negative index")
            if m + 3 * n <= trunc:
                v = _poly(v)
                if v:
                    self.c[(m, n)] = v

    def _new(self, c, trunc):
        s = HurwitzSeries2.__new__(HurwitzSeries2)
        s.trunc = trunc
        s.c = {k: v for k, v in c.items() if v and k[0] + 3 * k[1] <= trunc}
        return s

    def __getitem__(self, key):
        m, n = key
        if m + 3 * n > self.trunc:
            raise TruncationError("coefficient (%d,%d) of weight %d requested, series known through weight %d"
                                  % (m, n, m + 3 * n, self.trunc))
        return self.c.get((m, n), ZERO)

    coeff = __getitem__

    def keys_through(self, w=None):
        w = self.trunc if w is None else w
        for tot in range(w + 1):
            for n in range(tot // 3 + 1):
                yield (tot - 3 * n, n)

    def layer(self, w):
        return {k: self[k] for k in self.keys_through(w) if k[0] + 3 * k[1] == w}

    def valuation(self):
        return min((m + 3 * n for m, n in self.c), default=self.trunc + 1)

    def truncate(self, w):
        if w > self.trunc:
            raise TruncationError("cannot extend truncation %d to %d" % (self.trunc, w))
        return self._new(self.c, w)

    def __eq__(self, other):
        if not isinstance(other, HurwitzSeries2):
            return NotImplemented
        return self.trunc == other.trunc and self.c == other.c

    def first_difference(self, other, through=None):
        """None if equal through the given weight, else (key, self value, other value)."""
        w = min(self.trunc, other.trunc) if through is None else through
        for k in self.keys_through(w):
            if self[k] != other[k]:
                return k, self[k], other[k]
        return None

    def __add__(self, other):
        if not isinstance(other, HurwitzSeries2):
            other = self._new({(0, 0): _poly(other)}, self.trunc)
        t = min(self.trunc, other.trunc)
        keys = set(self.c) | set(other.c)
        return self._new({k: self.c.get(k, ZERO) + other.c.get(k, ZERO) for k in keys}, t)

    def __neg__(self):
        return self._new({k: -v for k, v in self.c.items()}, self.trunc)

    def __sub__(self, other):
        return self + (-other if isinstance(other, HurwitzSeries2) else -_poly(other))

    def scale(self, k):
        k = _poly(k)
        return self._new({key: v * k for key, v in self.c.items()}, self.trunc)

    def __mul__(self, other):
        if isinstance(other, HurwitzSeries2):
            return _hw_mul2(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def derive(self, which):
        if which == 1:
            return self._new({(m - 1, n): v for (m, n), v in self.c.items() if m}, self.trunc - 1)
        if which == 3:
            return self._new({(m, n - 1): v for (m, n), v in self.c.items() if n}, self.trunc - 3)
        raise ValueError("variable index must be 1 or 3")

    def mul_mono(self, a1, a3):
        """Multiply by u1^a1 u3^a3."""
        out = {}
        for (m, n), v in self.c.items():
            f = (fact(m + a1) // fact(m)) * (fact(n + a3) // fact(n))
            out[(m + a1, n + a3)] = v * f
        return self._new(out, self.trunc + a1 + 3 * a3)

    def partial(self, name):
        return self._new({k: v.partial(name) for k, v in self.c.items()}, self.trunc)

    def map(self, fn):
        return self._new({k: fn(v) for k, v in self.c.items()}, self.trunc)

    def subs(self, mapping):
        return self.map(lambda v: v.subs(mapping))

    def exp(self):
        return _hw_exp2(self)

    def slice_u3(self, k):
        """The u1-series multiplying u3^k/k!."""
        t = self.trunc - 3 * k
        return HurwitzSeries1({m: v for (m, n), v in self.c.items() if n == k}, t, "u1", -1)

    def slice_u1(self, k):
        """The u3-series multiplying u1^k/k!."""
        t = (self.trunc - k) // 3
        return HurwitzSeries1({n: v for (m, n), v in self.c.items() if m == k}, t, "u3", -3)

    @classmethod
    def from_u3_slices(cls, slices, trunc):
        c = {}
        for k, s in enumerate(slices):
            need = trunc - 3 * k
            if need < 0:
                break
            if s.trunc < need:
                raise TruncationError("slice %d known through %d, need %d" % (k, s.trunc, need))
            for m, v in s.c.items():
                c[(m, k)] = v
        if len(slices) * 3 <= trunc:
            raise TruncationError("not enough u3 slices for weight %d" % trunc)
        return cls(c, trunc)

    @classmethod
    def from_u1_slices(cls, slices, trunc):
        c = {}
        for k, s in enumerate(slices):
            need = (trunc - k) // 3 if k <= trunc else -1
            if need < 0:
                break
            if s.trunc < need:
                raise TruncationError("slice %d known through %d, need %d" % (k, s.trunc, need))
            for n, v in s.c.items():
                c[(k, n)] = v
        if len(slices) <= trunc:
            raise TruncationError("not enough u1 slices for weight %d" % trunc)
        return cls(c, trunc)

    def to_json(self):
        keys = sorted(self.c, key=lambda k: (k[0] + 3 * k[1], k[1]))
        return {"var": ["u1", "u3"], "trunc": self.trunc,
                "coeffs": [[m, n, self.c[(m, n)].canonical()] for m, n in keys]}

    @classmethod
    def from_json(cls, obj):
        return cls({(m, n): SparsePoly.parse(s) for m, n, s in obj["coeffs"]}, obj["trunc"])

    def __repr__(self):
        return "HurwitzSeries2(%d terms; weight <= %d)" % (len(self.c), self.trunc)


def _hw_mul2(a, b):
    trunc = min(a.trunc + b.valuation(), b.trunc + a.valuation())
    groups = {}
    for (i, j), x in a.c.items():
        for (k, l), y in b.c.items():
            m, n = i + k, j + l
            if m + 3 * n <= trunc:
                groups.setdefault((m, n), []).append((binom(m, i) * binom(n, j), x, y))
    return a._new({key: SparsePoly.dot(tri) for key, tri in groups.items()}, trunc)


def _hw_exp2(s):
    if s.c.get((0, 0)):
        raise ValueError("exp needs a series with zero constant term")
    v = s.valuation()
    out = HurwitzSeries2({(0, 0): ONE}, s.trunc)
    term = out
    k = 1
    while k * v <= s.trunc:
        term = _hw_mul2(term, s).scale(Fraction(1, k))
        term = term._new(term.c, s.trunc)
        out = out + term
        k += 1
    return out


# -------------------------------------------------------------- Laurent

class LaurentSeries1:
    """Plain series sum_{e >= lead} c_e t^e, known through exponent ``prec``."""

    __slots__ = ("c", "prec", "var")

    def __init__(self, coeffs=None, prec=0, var="t"):
        self.var = var
        self.prec = prec
        self.c = {}
        for e, v in (coeffs or {}).items():
            if e <= prec:
                v = _poly(v)
                if v:
                    self.c[e] = v

    def _new(self, c, prec):
        s = LaurentSeries1.__new__(LaurentSeries1)
        s.var, s.prec = self.var, prec
        s.c = {e: v for e, v in c.items() if v and e <= prec}
        return s

    def __getitem__(self, e):
        if e > self.prec:
            raise TruncationError("coefficient of %s^%d requested, known through %d" % (self.var, e, self.prec))
        return self.c.get(e, ZERO)

    coeff = __getitem__

    def valuation(self):
        return min(self.c, default=self.prec + 1)

    def leading(self):
        v = self.valuation()
        if v > self.prec:
            raise ValueError("series is zero to its known precision")
        return v, self.c[v]

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries1):
            return NotImplemented
        return self.prec == other.prec and self.c == other.c

    def __add__(self, other):
        if not isinstance(other, LaurentSeries1):
            other = self._new({0: _poly(other)}, self.prec)
        p = min(self.prec, other.prec)
        keys = set(self.c) | set(other.c)
        return self._new({e: self.c.get(e, ZERO) + other.c.get(e, ZERO) for e in keys}, p)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -v for e, v in self.c.items()}, self.prec)

    def __sub__(self, other):
        return self + (-other if isinstance(other, LaurentSeries1) else -_poly(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, k):
        k = _poly(k)
        return self._new({e: v * k for e, v in self.c.items()}, self.prec)

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries1):
            return self.scale(other)
        va, vb = self.valuation(), other.valuation()
        prec = min(self.prec + vb, other.prec + va)
        out = {}
        for n in range(va + vb, prec + 1):
            tri = [(1, x, other.c[n - i]) for i, x in self.c.items() if (n - i) in other.c]
            if tri:
                out[n] = SparsePoly.dot(tri)
        return self._new(out, prec)

    __rmul__ = __mul__

    def shift(self, k):
        """Multiply by t^k."""
        return self._new({e + k: v for e, v in self.c.items()}, self.prec + k)

    def derive(self):
        return self._new({e - 1: v * e for e, v in self.c.items() if e}, self.prec - 1)

    def integrate(self):
        if self.c.get(-1):
            raise ValueError("t^-1 term cannot be integrated to a Laurent series")
        return self._new({e + 1: v * Fraction(1, e + 1) for e, v in self.c.items()}, self.prec + 1)

    def partial(self, name):
        return self._new({e: v.partial(name) for e, v in self.c.items()}, self.prec)

    def map(self, fn):
        return self._new({e: fn(v) for e, v in self.c.items()}, self.prec)

    def subs(self, mapping):
        return self.map(lambda v: v.subs(mapping))

    def truncate(self, p):
        if p > self.prec:
            raise TruncationError("cannot extend precision")
        return self._new(self.c, p)

    def __pow__(self, k):
        return laurent_pow(self, k)

    def __truediv__(self, other):
        if isinstance(other, LaurentSeries1):
            return self * laurent_pow(other, -1)
        return self.scale(1 / Fraction(other) if not isinstance(other, SparsePoly) else ONE / other)

    def to_json(self):
        return {"var": self.var, "trunc": self.prec,
                "coeffs": [[e, self.c[e].canonical()] for e in sorted(self.c)]}

    def __repr__(self):
        body = " + ".join("(%s)*%s^%d" % (self.c[e], self.var, e) for e in sorted(self.c))
        return "LaurentSeries1(%s; O(%s^%d))" % (body or "0", self.var, self.prec + 1)


def laurent_pow(s, k):
    """s**k for integer k, or rational k when the leading coefficient is 1.

    The leading coefficient must be a nonzero rational constant (a unit).
    """
    k = Fraction(k)
    v, lc = s.leading()
    if not lc.is_constant():
        raise ValueError("leading coefficient %s is not a unit" % lc)
    c0 = lc.constant()
    if k.denominator != 1:
        if c0 != 1:
            raise ValueError("fractional power needs leading coefficient 1")
        if (v * k).denominator != 1:
            raise ValueError("fractional power of t^%d is not a Laurent monomial" % v)
    rel = s.prec - v  # relative precision
    a = [s.c.get(v + j, ZERO) * (1 / c0) for j in range(rel + 1)]
    b = [ONE]
    for n in range(1, rel + 1):
        pairs = []
        for j in range(1, n + 1):
            if a[j] and b[n - j]:
                pairs.append(((k + 1) * j - n, a[j] * b[n - j]))
        b.append(SparsePoly.linear([(q / n, x) for q, x in pairs]))
    lead = int(v * k)
    scale = c0 ** int(k) if k.denominator == 1 else Fraction(1)
    return s._new({lead + j: bj * scale for j, bj in enumerate(b)}, lead + rel)


def laurent_ops(op, a, b=None):
    if op == "mul":
        return a * b
    if op == "pow":
        return laurent_pow(a, b)
    if op == "derive":
        return a.derive()
    if op == "div":
        return a * laurent_pow(b, -1)
    raise ValueError(op)


def dumps(obj):
    """Deterministic JSON text for series objects or plain data."""
    if hasattr(obj, "to_json"):
        obj = obj.to_json()
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)
