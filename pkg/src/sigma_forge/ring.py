"""Exact sparse multivariate polynomials over the rationals.

Variables carry an integer weight (``l4`` has weight 4, ``u1`` style
variables live in the series layer instead).  A polynomial is stored as a
positive common denominator plus a dict of packed monomial keys to integer
numerators, kept in lowest terms so equal polynomials compare equal.
"""

from __future__ import annotations

import math
import re
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import _kernel as K

FIELD = 16
MAX_EXP = (1 << (FIELD - 1)) - 1

Rational = Fraction


class NonHomogeneous(ValueError):
    """Raised when a grade is requested of a polynomial mixing weights."""


class _AnyDegree:
    __slots__ = ()

    def __repr__(self):
        return "ANY_DEGREE"


ANY_DEGREE = _AnyDegree()


# ---------------------------------------------------------------- variables

@dataclass(frozen=True)
class Variable:
    name: str
    weight: int
    index: int = field(compare=False)
    order: tuple = field(compare=False, repr=False)


_FAMILY_RANK = {"l": 0, "p": 1, "q": 2, "f": 3, "g": 4}
_lock = threading.Lock()
_by_name: dict[str, Variable] = {}
_by_index: list[Variable] = []


def _order_key(name):
    m = re.fullmatch(r"([a-z]+)(\d+)(\w*)", name)
    if m and m.group(1) in _FAMILY_RANK:
        return (_FAMILY_RANK[m.group(1)], int(m.group(2)), m.group(3))
    return (9, 0, name)


def register(name, weight):
    """Register a variable (idempotent when the weight agrees)."""
    with _lock:
        v = _by_name.get(name)
        if v is not None:
            if v.weight != weight:
                raise ValueError("variable %s already has weight %d" % (name, v.weight))
            return v
        v = Variable(name, weight, len(_by_index), _order_key(name))
        _by_name[name] = v
        _by_index.append(v)
        return v


_DEFAULT_WEIGHTS = {"l4": 4, "l6": 6, "l8": 8, "l10": 10,
                    "p2": 2, "p5": 5, "q2": 2, "q3": 3, "q2inv": -2}
for _n, _w in _DEFAULT_WEIGHTS.items():
    register(_n, _w)

_ALIASES = {"λ4": "l4", "λ6": "l6", "λ8": "l8", "λ10": "l10",
            "lambda4": "l4", "lambda6": "l6", "lambda8": "l8", "lambda10": "l10"}


def variable(name):
    """Look up a variable; ``f<n>`` and ``g<n>`` are created on demand with weight n."""
    name = _ALIASES.get(name, name)
    v = _by_name.get(name)
    if v is not None:
        return v
    m = re.fullmatch(r"([fg])(\d+)", name)
    if m and int(m.group(2)) > 0:
        return register(name, int(m.group(2)))
    raise KeyError("unknown variable %r" % name)


LAMBDAS = ("l4", "l6", "l8", "l10")


@lru_cache(maxsize=None)
def _decode(key):
    out = []
    i = 0
    while key:
        e = key & K_MASK
        if e:
            out.append((i, e))
        key >>= FIELD
        i += 1
    return tuple(out)


K_MASK = (1 << FIELD) - 1


def _key_of(exps):
    """exps: iterable of (name, exponent)."""
    key = 0
    for name, e in exps:
        if e < 0 or e > MAX_EXP:
            raise ValueError("exponent %d out of range" % e)
        if e:
            key += e << (FIELD * variable(name).index)
    return key


@lru_cache(maxsize=None)
def _key_weight(key):
    return sum(_by_index[i].weight * e for i, e in _decode(key))


@lru_cache(maxsize=None)
def _key_sort(key):
    # graded order: weight first, then lexicographic on the variable order
    items = sorted(((_by_index[i].order, e) for i, e in _decode(key)))
    return (_key_weight(key), tuple((o, -e) for o, e in items))


def _key_text(key):
    parts = []
    for i, e in sorted(_decode(key), key=lambda t: _by_index[t[0]].order):
        name = _by_index[i].name
        parts.append(name if e == 1 else "%s^%d" % (name, e))
    return "*".join(parts)


# -------------------------------------------------------------- valuations

def is_prime(p):
    if not isinstance(p, int) or p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def _check_prime(p):
    if not is_prime(p):
        raise ValueError("%r is not a prime" % (p,))


def ord_p_int(p, n):
    if n == 0:
        return math.inf
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def ord_p(p, q):
    """p-adic valuation of an integer or rational (+inf at zero)."""
    _check_prime(p)
    q = Fraction(q)
    if q == 0:
        return math.inf
    return ord_p_int(p, q.numerator) - ord_p_int(p, q.denominator)


# ----------------------------------------------------------- polynomials

def _coerce(x):
    if isinstance(x, SparsePoly):
        return x
    if isinstance(x, (int, Fraction)):
        return SparsePoly.const(x)
    return NotImplemented


class SparsePoly:
    """Polynomial with rational coefficients in weighted variables."""

    __slots__ = ("_t", "_d")

    def __init__(self, terms=None, den=1):
        # terms: dict key -> int numerator; normalised here
        t = {k: c for k, c in (terms or {}).items() if c}
        if den <= 0:
            raise ValueError("denominator must be positive")
        if not t:
            den = 1
        elif den != 1:
            g = math.gcd(den, K.content(t))
            if g > 1:
                t = K.divexact_terms(t, g)
                den //= g
        self._t = t
        self._d = den

    @classmethod
    def _raw(cls, t, d):
        p = object.__new__(cls)
        if not t:
            d = 1
        elif d != 1:
            g = math.gcd(d, K.content(t))
            if g > 1:
                t = K.divexact_terms(t, g)
                d //= g
        p._t = t
        p._d = d
        return p

    # construction
    @classmethod
    def zero(cls):
        return cls._raw({}, 1)

    @classmethod
    def one(cls):
        return cls._raw({0: 1}, 1)

    @classmethod
    def const(cls, q):
        q = Fraction(q)
        if q == 0:
            return cls.zero()
        return cls._raw({0: q.numerator}, q.denominator)

    @classmethod
    def var(cls, name, power=1):
        return cls._raw({_key_of([(name, power)]): 1}, 1)

    @classmethod
    def monomial(cls, coeff, exps):
        """coeff * prod name^e with exps a mapping or (name, e) pairs."""
        items = exps.items() if hasattr(exps, "items") else exps
        q = Fraction(coeff)
        if q == 0:
            return cls.zero()
        return cls._raw({_key_of(items): q.numerator}, q.denominator)

    @classmethod
    def from_terms(cls, pairs):
        """Build from (exps, coeff) pairs; exps as accepted by ``monomial``."""
        out = cls.zero()
        for exps, c in pairs:
            out = out + cls.monomial(c, exps)
        return out

    @classmethod
    def parse(cls, text):
        return _Parser(text).parse()

    # inspection
    def is_zero(self):
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def is_constant(self):
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def constant(self):
        return Fraction(self._t.get(0, 0), self._d)

    @property
    def denominator(self):
        return self._d

    def __len__(self):
        return len(self._t)

    def _sorted_keys(self):
        return sorted(self._t, key=_key_sort)

    def terms(self):
        """(exponent tuple of (name, e), Fraction) in canonical order."""
        for k in self._sorted_keys():
            exps = tuple((_by_index[i].name, e) for i, e in
                         sorted(_decode(k), key=lambda t: _by_index[t[0]].order))
            yield exps, Fraction(self._t[k], self._d)

    def coefficients(self):
        return [c for _, c in self.terms()]

    def coefficient(self, exps):
        items = exps.items() if hasattr(exps, "items") else exps
        return Fraction(self._t.get(_key_of(items), 0), self._d)

    def variables(self):
        idx = set()
        for k in self._t:
            idx.update(i for i, _ in _decode(k))
        return sorted((_by_index[i].name for i in idx), key=_order_key)

    def degree_in(self, name):
        sh = FIELD * variable(name).index
        return max(((k >> sh) & K_MASK for k in self._t), default=-1)

    # arithmetic
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other._t:
            return self
        if not self._t:
            return other
        d1, d2 = self._d, other._d
        if d1 == d2:
            return SparsePoly._raw(K.lincomb_terms(self._t, 1, other._t, 1), d1)
        L = d1 // math.gcd(d1, d2) * d2
        return SparsePoly._raw(K.lincomb_terms(self._t, L // d1, other._t, L // d2), L)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly._raw(K.scale_terms(self._t, -1), self._d)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other._t:
            return self
        d1, d2 = self._d, other._d
        L = d1 // math.gcd(d1, d2) * d2
        return SparsePoly._raw(K.lincomb_terms(self._t, L // d1, other._t, -(L // d2)), L)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0 or not self._t:
                return SparsePoly.zero()
            g = math.gcd(other, self._d)
            return SparsePoly._raw(K.scale_terms(self._t, other // g), self._d // g)
        if isinstance(other, Fraction):
            if other == 0 or not self._t:
                return SparsePoly.zero()
            return SparsePoly._raw(K.scale_terms(self._t, other.numerator),
                                   self._d * other.denominator)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        if not self._t or not other._t:
            return SparsePoly.zero()
        return SparsePoly._raw(K.mul_terms(self._t, other._t), self._d * other._d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, SparsePoly):
            if not other.is_constant():
                raise ZeroDivisionError("division by a non-constant polynomial")
            other = other.constant()
        q = Fraction(other)
        if q == 0:
            raise ZeroDivisionError("division by zero")
        return self * (1 / q)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        out = SparsePoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    @staticmethod
    def dot(triples):
        """Sum of s*a*b over (s, a, b) with integer s, sharing one denominator."""
        triples = [(s, a, b) for s, a, b in triples if s and a._t and b._t]
        if not triples:
            return SparsePoly.zero()
        L = 1
        for _, a, b in triples:
            d = a._d * b._d
            L = L // math.gcd(L, d) * d
        acc = {}
        for s, a, b in triples:
            K.addmul_terms(acc, a._t, b._t, s * (L // (a._d * b._d)))
        return SparsePoly._raw(K.strip_zeros(acc), L)

    @staticmethod
    def linear(pairs):
        """Sum of q*a over (q, a) pairs with rational q."""
        pairs = [(Fraction(q), a) for q, a in pairs if q and a._t]
        if not pairs:
            return SparsePoly.zero()
        L = 1
        for q, a in pairs:
            d = q.denominator * a._d
            L = L // math.gcd(L, d) * d
        acc = {}
        for q, a in pairs:
            K.add_scaled(acc, a._t, q.numerator * (L // (q.denominator * a._d)))
        return SparsePoly._raw(K.strip_zeros(acc), L)

    # comparison
    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self._d == other._d and self._t == other._t

    def __hash__(self):
        return hash((self._d, frozenset(self._t.items())))

    # calculus and structure
    def partial(self, name):
        v = variable(name)
        if not self._t:
            return self
        return SparsePoly._raw(K.diff_terms(self._t, FIELD * v.index), self._d)

    def grade(self):
        return grade_of(self)

    def is_homogeneous(self):
        return len({_key_weight(k) for k in self._t}) <= 1

    def homogeneous_part(self, w):
        return SparsePoly._raw({k: c for k, c in self._t.items() if _key_weight(k) == w}, self._d)

    def subs(self, mapping):
        """Substitute variables by polynomials or rationals."""
        mapping = {variable(n).index: _coerce(v) for n, v in mapping.items()}
        parts = []
        cache = {}
        for k, c in self._t.items():
            rest = 0
            factor = SparsePoly.one()
            for i, e in _decode(k):
                if i in mapping:
                    key = (i, e)
                    if key not in cache:
                        cache[key] = mapping[i] ** e
                    factor = factor * cache[key]
                else:
                    rest += e << (FIELD * i)
            if factor.is_constant():
                q = factor.constant()
                if q:
                    parts.append((Fraction(c, self._d) * q, SparsePoly._raw({rest: 1}, 1)))
            else:
                parts.append((Fraction(c, self._d),
                              factor * SparsePoly._raw({rest: 1}, 1)))
        return SparsePoly.linear(parts)

    def evaluate(self, mapping):
        r = self.subs(mapping)
        if not r.is_constant():
            raise ValueError("free variables remain: %s" % ", ".join(r.variables()))
        return r.constant()

    def reduce_inverse(self, name, inv_name):
        """Cancel name*inv_name pairs (used for a localised variable)."""
        i = variable(name).index
        j = variable(inv_name).index
        si, sj = FIELD * i, FIELD * j
        out = {}
        for k, c in self._t.items():
            a = (k >> si) & K_MASK
            b = (k >> sj) & K_MASK
            m = min(a, b)
            if m:
                k = k - (m << si) - (m << sj)
            out[k] = out.get(k, 0) + c
        return SparsePoly._raw({k: c for k, c in out.items() if c}, self._d)

    def map_coefficients(self, fn):
        return SparsePoly.from_terms((e, fn(c)) for e, c in self.terms())

    # text
    def canonical(self):
        if not self._t:
            return "0/1"
        out = []
        for k in self._sorted_keys():
            q = Fraction(self._t[k], self._d)
            mono = _key_text(k)
            body = "%d/%d" % (abs(q.numerator), q.denominator)
            if mono:
                body += "*" + mono
            if not out:
                out.append(("-" if q < 0 else "") + body)
            else:
                out.append(("- " if q < 0 else "+ ") + body)
        return " ".join(out)

    def __str__(self):
        if not self._t:
            return "0"
        out = []
        for k in self._sorted_keys():
            q = Fraction(self._t[k], self._d)
            mono = _key_text(k)
            a = abs(q)
            if mono:
                body = mono if a == 1 else "%s*%s" % (a, mono)
            else:
                body = str(a)
            if not out:
                out.append(("-" if q < 0 else "") + body)
            else:
                out.append(("- " if q < 0 else "+ ") + body)
        return " ".join(out)

    def __repr__(self):
        return "SparsePoly(%r)" % str(self)


P = SparsePoly.parse


def poly_arith(op, a, b):
    a, b = _coerce(a), _coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError("unknown op %r" % op)


def poly_partial(p, name):
    return p.partial(name)


def grade_of(p):
    if not p._t:
        return ANY_DEGREE
    ws = {_key_weight(k) for k in p._t}
    if len(ws) != 1:
        raise NonHomogeneous("weights %s" % sorted(ws))
    return ws.pop()


def ord_p_poly(p, poly):
    """Minimum p-adic valuation over the coefficients (+inf for 0)."""
    _check_prime(p)
    poly = _coerce(poly)
    if not poly._t:
        return math.inf
    low = min(ord_p_int(p, c) for c in poly._t.values())
    return low - ord_p_int(p, poly._d)


# ---------------------------------------------------------------- subrings

@dataclass(frozen=True)
class SubringSpec:
    """Z[1/primes][s_v * v] scaled by ``factor``.

    A polynomial is a member when each coefficient divided by
    factor * prod(s_v ** e_v) has a denominator built from ``primes`` only.
    """
    primes: frozenset = frozenset()
    scales: tuple = ()
    factor: Fraction = Fraction(1)

    @classmethod
    def of(cls, primes=(), scales=None, factor=1):
        for p in primes:
            _check_prime(p)
        sc = tuple(sorted((scales or {}).items()))
        return cls(frozenset(primes), sc, Fraction(factor))

    def describe(self):
        gens = []
        sc = dict(self.scales)
        for n in LAMBDAS:
            s = sc.get(n, 1)
            gens.append(n if s == 1 else "%s*%s" % (s, n))
        for n, s in self.scales:
            if n not in LAMBDAS:
                gens.append("%s*%s" % (s, n))
        inv = "".join(",1/%d" % p for p in sorted(self.primes))
        pre = "" if self.factor == 1 else "%s*" % self.factor
        return "%sZ[%s%s]" % (pre, inv[1:] + "," if inv else "", ",".join(gens))


@dataclass(frozen=True)
class Membership:
    ok: bool
    monomial: str = ""
    coefficient: Fraction | None = None

    def __bool__(self):
        return self.ok


def _strip(n, primes):
    for p in primes:
        while n % p == 0:
            n //= p
    return n


def subring_member(poly, spec):
    poly = _coerce(poly)
    sc = {variable(n).index: s for n, s in spec.scales}
    for k in poly._sorted_keys():
        need = spec.factor
        for i, e in _decode(k):
            need *= Fraction(sc.get(i, 1)) ** e
        q = Fraction(poly._t[k], poly._d) / need
        if _strip(q.denominator, spec.primes) != 1:
            return Membership(False, _key_text(k) or "1", Fraction(poly._t[k], poly._d))
    return Membership(True)


# ------------------------------------------------------------------ parser

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-zλ_][A-Za-z0-9_λ]*)|(\*\*|[-+*/^()]))")


class _Parser:
    def __init__(self, text):
        self.toks = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError("cannot parse %r at %d" % (text, pos))
            num, name, op = m.groups()
            if num is not None:
                self.toks.append(("num", int(num)))
            elif name is not None:
                self.toks.append(("name", name))
            else:
                self.toks.append(("op", "^" if op == "**" else op))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self):
        if not self.toks:
            raise ValueError("empty polynomial")
        r = self.expr()
        if self.i != len(self.toks):
            raise ValueError("trailing input in polynomial")
        return r

    def expr(self):
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek() == ("op", "+"):
            self.take()
        r = self.term() * sign
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            r = r + t if op == "+" else r - t
        return r

    def term(self):
        r = self.factor()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            f = self.factor()
            r = r * f if op == "*" else r / f
        return r

    def factor(self):
        kind, val = self.take()
        if kind == "num":
            base = SparsePoly.const(val)
        elif kind == "name":
            base = SparsePoly.var(_ALIASES.get(val, val))
        elif (kind, val) == ("op", "("):
            base = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
        elif (kind, val) == ("op", "-"):
            return -self.factor()
        else:
            raise ValueError("unexpected token %r" % (val,))
        if self.peek() == ("op", "^"):
            self.take()
            k, e = self.take()
            if k != "num":
                raise ValueError("exponent must be an integer")
            base = base ** e
        return base
