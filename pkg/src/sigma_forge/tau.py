"""The tau-function route to sigma.

Around infinity we use the local parameter t (t = x/y in genus one,
t = x^2/y in genus two) and s = 1/x = t^2 f(t).  The monomials x^a y^b
(b = 0, 1) ordered by pole order give the columns xi_{i,j} of an infinite
matrix, xi_mu is the determinant picked out by the rows m_i = mu_i - i, and

    tau(u) = sum_mu xi_mu s_mu(u).

Sigma is tau times an exponential of a quadratic whose coefficients come
from du3/dt and from the expansion of the fundamental bilinear form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .hurwitz import HurwitzSeries2, LaurentSeries1, laurent_pow
from .ring import LAMBDAS, SparsePoly, SubringSpec, P, subring_member

ZERO = SparsePoly.zero()
ONE = SparsePoly.one()


class StabilizationError(ArithmeticError):
    pass


# ------------------------------------------------------------------ partitions

@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple = ()

    def __post_init__(self):
        p = tuple(x for x in self.parts if x)
        if any(a < b for a, b in zip(p, p[1:])) or any(x < 0 for x in p):
            raise ValueError("parts must be weakly decreasing and non-negative: %r" % (self.parts,))
        object.__setattr__(self, "parts", p)

    def __len__(self):
        return len(self.parts)

    @property
    def weight(self):
        return sum(self.parts)

    def conjugate(self):
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for x in self.parts if x > i) for i in range(self.parts[0])))

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


def partitions_of(n):
    def rec(rem, cap):
        if rem == 0:
            yield ()
            return
        for k in range(min(rem, cap), 0, -1):
            for rest in rec(rem - k, k):
                yield (k,) + rest
    for p in rec(n, n):
        yield Partition(p)


# ------------------------------------------------------------------ local expansions

@dataclass
class LocalFrame:
    genus: int
    R: int                       # relative precision of the t-expansions
    s_coeffs: dict               # s = t^2 (1 + sum gamma_i t^i): index -> gamma_i
    f: LaurentSeries1            # s / t^2
    x: LaurentSeries1
    y: LaurentSeries1
    du1: LaurentSeries1          # du1/dt (genus one: du/dt)
    du3: LaurentSeries1 = None
    _cols: dict = field(default_factory=dict)

    def phi_exponents(self, count):
        """(a, b, pole order) of phi_1, ..., phi_count."""
        out = []
        order = 0
        ybase = 3 if self.genus == 1 else 5
        while len(out) < count:
            for b in (0, 1):
                rest = order - ybase * b
                if rest >= 0 and rest % 2 == 0:
                    out.append((rest // 2, b, order))
            order += 1
        return out[:count]

    def lead(self, j):
        """Smallest index i with xi_{i,j} possibly nonzero."""
        o = self.phi_exponents(j)[-1][2]
        return self.genus - 1 - o

    def column(self, j):
        """{i: xi_{i,j}} from t^g phi_j = sum xi_{i,j} t^(i+1)."""
        if j in self._cols:
            return self._cols[j]
        a, b, o = self.phi_exponents(j)[-1]
        X = self._xpow(a)
        ser = X * self.y if b else X
        ser = ser.shift(self.genus)
        col = {e - 1: v for e, v in ser.c.items()}
        self._cols[j] = (col, ser.prec - 1)
        return self._cols[j]

    def _xpow(self, a):
        cache = self._cols.setdefault("xpow", {0: LaurentSeries1({0: ONE}, self.R, "t")})
        while a not in cache:
            k = max(cache)
            cache[k + 1] = cache[k] * self.x
        return cache[a]

    def entry(self, i, j):
        col, prec = self.column(j)
        if i > prec:
            raise ArithmeticError("xi_{%d,%d} beyond the local expansion; raise R" % (i, j))
        return col.get(i, ZERO)


def _lam(subs):
    out = {n: P(n) for n in LAMBDAS}
    for k, v in (subs or {}).items():
        out[k] = v if isinstance(v, SparsePoly) else SparsePoly.const(v)
    return out


def s_coefficients(genus, R, subs=None):
    """gamma_0..gamma_R (genus two) or beta_0..beta_R (genus one) from the fixed-point relation."""
    lam = _lam(subs)
    names = ("l4", "l6") if genus == 1 else LAMBDAS
    g = [ONE]
    pw = {1: g}
    for e in range(2, len(names) + 2):
        pw[e] = []

    def conv(a, b, n):
        return SparsePoly.dot([(1, a[i], b[n - i]) for i in range(n + 1) if a[i] and b[n - i]])

    for n in range(1, R + 1):
        # powers of the series are needed only at indices n - 4, n - 6, ...
        for e in range(2, len(names) + 2):
            while len(pw[e]) <= n - 2 * e:
                m = len(pw[e])
                pw[e].append(conv(pw[e - 1], g, m))
        v = ZERO
        for e, name in zip(range(2, len(names) + 2), names):
            k = n - 2 * e
            if k >= 0:
                v = v + lam[name] * pw[e][k]
        g.append(v)
    return {i: c for i, c in enumerate(g)}


def local_expansion(genus, R=40, subs=None):
    """Expansions in t of s, x, y and the holomorphic differentials, to relative order R."""
    if genus not in (1, 2):
        raise ValueError("genus must be 1 or 2")
    gam = s_coefficients(genus, R, subs)
    f = LaurentSeries1(gam, R, "t")
    s = f.shift(2)
    x = laurent_pow(s, -1)
    if genus == 2:
        y = laurent_pow(s * s * LaurentSeries1({1: ONE}, R + 1, "t"), -1)
    else:
        y = laurent_pow(s * LaurentSeries1({1: ONE}, R + 1, "t"), -1)
    dx = x.derive()
    inv2y = laurent_pow(y, -1).scale(Fraction(-1, 2))
    if genus == 2:
        du3 = dx * inv2y
        du1 = x * du3
        return LocalFrame(2, R, gam, f, x, y, du1, du3)
    du = dx * inv2y
    return LocalFrame(1, R, gam, f, x, y, du)


# ------------------------------------------------------------------ Schur polynomials

@lru_cache(maxsize=None)
def p_poly(n, genus=2):
    """p_n(u1, u3) = sum over i + 3j = n of u1^i u3^j / (i! j!) (genus one: u^n/n!)."""
    if n < 0:
        return None
    if genus == 1:
        return HurwitzSeries2({(n, 0): ONE}, 10 ** 6)
    return HurwitzSeries2({(n - 3 * j, j): ONE for j in range(n // 3 + 1)}, 10 ** 6)


def _det(mat):
    """Determinant of a small square matrix of series (entries may be None for zero)."""
    n = len(mat)

    @lru_cache(maxsize=None)
    def rec(row, used):
        if row == n:
            return HurwitzSeries2({(0, 0): ONE}, 10 ** 6)
        acc = None
        k = 0
        for j in range(n):
            if used >> j & 1:
                continue
            e = mat[row][j]
            if e is not None:
                sub = rec(row + 1, used | (1 << j))
                if sub is not None and sub.c:
                    term = e * sub
                    if k % 2:
                        term = -term
                    acc = term if acc is None else acc + term
            k += 1
        return acc

    return rec(0, 0)


def schur_s_mu(mu, genus=2):
    """Jacobi-Trudi determinant; with t_2 = 0 the e_n equal the h_n, so the shorter side is used."""
    mu = mu if isinstance(mu, Partition) else Partition(tuple(mu))
    if not mu.parts:
        return HurwitzSeries2({(0, 0): ONE}, 10 ** 6)
    use = mu.conjugate() if len(mu.conjugate()) < len(mu) else mu
    parts = use.parts
    L = len(parts)
    mat = [[p_poly(parts[i] - i + j, genus) for j in range(L)] for i in range(L)]
    d = _det(mat)
    return d if d is not None else HurwitzSeries2({}, 10 ** 6)


# ------------------------------------------------------------------ xi_mu

def base_size(mu, genus):
    return max(len(mu), 2 if genus == 2 else 1)


def _det_rows(frame, ms, L):
    """det(xi_{m_i, j})_{i, j <= L} by expansion over rows with pruning."""
    leads = [frame.lead(j) for j in range(1, L + 1)]
    # columns that no later row can reach must be used by then
    states = {0: ONE}
    for r, m in enumerate(ms):
        nxt = {}
        later = ms[r + 1] if r + 1 < len(ms) else None
        for used, val in states.items():
            for j in range(L):
                if used >> j & 1 or leads[j] > m:
                    continue
                e = frame.entry(m, j + 1)
                if not e:
                    continue
                above = bin(used >> (j + 1)).count("1")
                term = val * e
                if above % 2:
                    term = -term
                key = used | (1 << j)
                if later is not None:
                    # every column whose lead exceeds the next row index must be filled already
                    if any(not (key >> c & 1) and leads[c] > later for c in range(L)):
                        continue
                cur = nxt.get(key)
                nxt[key] = term if cur is None else cur + term
        states = {k: v for k, v in nxt.items() if v}
        if not states:
            return ZERO
    return states.get((1 << L) - 1, ZERO)


def xi_mu(mu, frame, L=None, check=True):
    """Determinant of the L x L corner; with check, L, L+1 and L+2 must agree."""
    mu = mu if isinstance(mu, Partition) else Partition(tuple(mu))
    L0 = base_size(mu, frame.genus) if L is None else L
    if L0 < len(mu):
        raise ValueError("L must be at least the number of parts")

    def at(L):
        ms = [(mu.parts[i] if i < len(mu) else 0) - (i + 1) for i in range(L)]
        return _det_rows(frame, ms, L)

    v = at(L0)
    if check:
        for extra in (1, 2):
            w = at(L0 + extra)
            if w != v:
                raise StabilizationError("xi_%s changes from L=%d to L=%d" % (mu, L0, L0 + extra))
    return v


def xi_mu_can_be_nonzero(mu, genus):
    """Degree bookkeeping: xi_mu is homogeneous of degree |mu| - 3 (genus 1: |mu| - 1)."""
    d = mu.weight - (3 if genus == 2 else 1)
    return d == 0 or (d >= 4 and d % 2 == 0)


def tau_series(N=20, genus=2, frame=None, subs=None, check=True):
    """tau through weight N, summing s_mu over |mu| <= N."""
    frame = frame or local_expansion(genus, 2 * N + 12, subs)
    out = HurwitzSeries2({}, N)
    xis = {}
    for n in range(N + 1):
        for mu in partitions_of(n):
            if not xi_mu_can_be_nonzero(mu, genus):
                continue
            v = xi_mu(mu, frame, check=check)
            if not v:
                continue
            if not subring_member(v, SubringSpec.of()):
                raise ArithmeticError("xi_%s = %s is not integral" % (mu, v))
            xis[mu] = v
            out = out + _trunc(schur_s_mu(mu, genus), N).scale(v)
    return out, xis


def _trunc(s, N):
    return HurwitzSeries2({k: v for k, v in s.c.items() if k[0] + 3 * k[1] <= N}, N)


# ------------------------------------------------------------------ normalisation constants

def b_constants(frame):
    """b_ij: coefficient of t^(j-1) in du_i/dt."""
    if frame.genus == 1:
        return {(1, 1): frame.du1[0]}
    return {(1, 1): frame.du1[0], (1, 3): frame.du1[2], (3, 1): frame.du3[0], (3, 3): frame.du3[2]}


def c_constants(frame, count=6):
    """c_i from sqrt(du3/dt) = t exp(sum c_i t^i / i) (genus one: sqrt(du/dt) = exp(...))."""
    d = frame.du3 if frame.genus == 2 else frame.du1
    Lser = d.shift(-2) if frame.genus == 2 else d
    lead = Lser[0]
    if lead != ONE:
        raise ArithmeticError("du/dt does not start with the expected monomial")
    # (log L)' = L'/L and sum c_i t^(i-1) = (1/2)(log L)'
    q = Lser.derive() * laurent_pow(Lser, -1)
    return {i: q[i - 1] * Fraction(1, 2) for i in range(1, count + 1)}


def _bi_mul(a, b, T):
    out = {}
    for (i, j), x in a.items():
        for (k, l), y in b.items():
            if i + j + k + l <= T:
                key = (i + k, j + l)
                out.setdefault(key, []).append((1, x, y))
    out = {k: SparsePoly.dot(v) for k, v in out.items()}
    return {k: v for k, v in out.items() if v}


def _bi_add(a, b, sb=1):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, ZERO) + v * sb
    return {k: v for k, v in out.items() if v}


def _bi_scale(a, c):
    return {k: v * c for k, v in a.items() if v * c}


def _bi_one_var(ser, which, T):
    out = {}
    for e, v in ser.c.items():
        if 0 <= e <= T:
            out[(e, 0) if which == 1 else (0, e)] = v
    return out


def _bi_inverse(a, T):
    """Inverse of a bivariate series with constant term 1, through total degree T."""
    if a.get((0, 0)) != ONE:
        raise ArithmeticError("series is not a unit")
    inv = {(0, 0): ONE}
    for tot in range(1, T + 1):
        for i in range(tot + 1):
            j = tot - i
            pairs = [(1, a[(k, l)], inv[(i - k, j - l)]) for (k, l) in a if (k, l) != (0, 0)
                     and k <= i and l <= j and (i - k, j - l) in inv]
            v = -SparsePoly.dot(pairs)
            if v:
                inv[(i, j)] = v
    return inv


def _bi_div_diff(F, T):
    """G with F = (t1^2 - t2^2) G through total degree T - 2; checks the remainder."""
    G = {}
    for tot in range(T - 1):
        for i in range(tot + 1):
            j = tot - i
            v = ZERO
            k = 0
            while j - 2 * k >= 0:
                v = v + F.get((i + 2 + 2 * k, j - 2 * k), ZERO)
                k += 1
            if v:
                G[(i, j)] = v
    back = _bi_mul({(2, 0): ONE, (0, 2): -ONE}, G, T)
    for key in set(F) | set(back):
        if sum(key) <= T and F.get(key, ZERO) != back.get(key, ZERO):
            raise ArithmeticError("bilinear form identity is inconsistent at %s" % (key,))
    return G


def q_constants(frame, T=12, subs=None):
    """q_ij (coefficient of t1^(i-1) t2^(j-1)) from A B - C = D Q."""
    lam = _lam(subs)
    big = T + 4
    f = frame.f.truncate(big)
    s = f.shift(2)
    g = s.derive().shift(-1).scale(Fraction(1, 2))         # s'/(2t)
    f1, f2 = _bi_one_var(f, 1, big), _bi_one_var(f, 2, big)
    s1, s2 = _bi_one_var(s, 1, big), _bi_one_var(s, 2, big)
    g1, g2 = _bi_one_var(g, 1, big), _bi_one_var(g, 2, big)
    t1t2 = {(1, 1): ONE}
    ssum = _bi_add(s1, s2)
    sprod = _bi_mul(s1, s2, big)
    sprod2 = _bi_mul(sprod, sprod, big)
    ff = _bi_mul(f1, f2, big)
    A = _bi_add(ssum, _bi_scale(_bi_mul(sprod, ssum, big), lam["l4"]))
    A = _bi_add(A, _bi_scale(sprod2, lam["l6"] * 2))
    A = _bi_add(A, _bi_scale(_bi_mul(t1t2, ff, big), 2))
    if frame.genus == 2:
        A = _bi_add(A, _bi_scale(_bi_mul(sprod2, ssum, big), lam["l8"]))
        A = _bi_add(A, _bi_scale(_bi_mul(sprod2, sprod, big), lam["l10"] * 2))
    B = _bi_mul(g1, g2, big)
    # W = (s1 - s2) / (t1^2 - t2^2) = sum_n f-coefficient * (t1^(n+2) - t2^(n+2)) / (t1^2 - t2^2)
    W = {}
    for e, v in s.c.items():
        # (t1^e - t2^e)/(t1^2 - t2^2) for even e
        if e % 2:
            raise ArithmeticError("odd power in s")
        for k in range(e // 2):
            key = (2 * k, e - 2 - 2 * k)
            if sum(key) <= big:
                W[key] = W.get(key, ZERO) + v
    W2 = _bi_mul(W, W, big)
    unit = _bi_mul(ff, W2, big)
    C = _bi_mul(unit, {(2, 0): ONE, (1, 1): 2 * ONE, (0, 2): ONE}, big)
    R = _bi_add(_bi_mul(A, B, big), C, -1)
    R = _bi_mul(R, _bi_inverse(unit, big), big)
    Qt = _bi_div_diff(_bi_div_diff(R, big), big - 2)
    return {(i + 1, j + 1): Qt.get((i, j), ZERO) for i in range(T + 1) for j in range(T + 1 - i)}


@dataclass
class Normalisation:
    b: dict
    c: dict
    q: dict

    def exponent(self, N):
        """c1 u1 + c3 u3 - q11 u1^2/2 - q33 u3^2/2 - q13 u1 u3 (genus one: c1 u - q11 u^2/2)."""
        if len(self.b) == 1:
            return HurwitzSeries2({(1, 0): self.c[1], (2, 0): -self.q[(1, 1)]}, N)
        return HurwitzSeries2({(1, 0): self.c[1], (0, 1): self.c[3], (2, 0): -self.q[(1, 1)],
                               (0, 2): -self.q[(3, 3)], (1, 1): -self.q[(1, 3)]}, N)


def normalization_constants(frame, subs=None):
    b = b_constants(frame)
    c = c_constants(frame)
    q = q_constants(frame, 12, subs)
    if frame.genus == 2 and (q[(1, 3)] != q[(3, 1)]):
        raise ArithmeticError("q is not symmetric")
    return Normalisation(b, c, q)


def sigma_from_tau(tau, consts):
    ident = {(1, 1): ONE, (1, 3): ZERO, (3, 1): ZERO, (3, 3): ONE}
    for k, v in consts.b.items():
        if v != ident[k]:
            raise ArithmeticError("b_%d%d = %s; only the identity change of variables is supported" % (k + (v,)))
    e = consts.exponent(tau.trunc).exp()
    return e * tau


def sigma_tau(N=20, genus=2, subs=None, check=True):
    """sigma from the tau route through weight N."""
    frame = local_expansion(genus, 2 * N + 12, subs)
    tau, _ = tau_series(N, genus, frame, subs, check)
    consts = normalization_constants(frame, subs)
    s = sigma_from_tau(tau, consts)
    return s.truncate(N) if s.trunc > N else s
