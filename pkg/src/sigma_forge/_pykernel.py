"""Pure-Python versions of the polynomial hot loops.

A polynomial body is a dict mapping a packed monomial key to an integer
numerator.  Exponents are packed into 16-bit fields, so multiplying two
monomials is one integer addition.  The compiled module ``_ckernel`` exposes
the same functions with the same semantics.
"""

from math import gcd

FIELD = 16
MASK = (1 << FIELD) - 1


def mul_terms(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = {}
    get = out.get
    for kb, cb in b.items():
        for ka, ca in a.items():
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    return {k: c for k, c in out.items() if c}


def addmul_terms(acc, a, b, scale):
    """acc += scale * a * b, in place.  Zeros are left for strip_zeros."""
    get = acc.get
    for kb, cb in b.items():
        s = scale * cb
        for ka, ca in a.items():
            k = ka + kb
            acc[k] = get(k, 0) + s * ca


def add_scaled(acc, a, scale):
    get = acc.get
    for k, c in a.items():
        acc[k] = get(k, 0) + scale * c


def strip_zeros(acc):
    return {k: c for k, c in acc.items() if c}


def lincomb_terms(a, sa, b, sb):
    out = {k: sa * c for k, c in a.items()}
    get = out.get
    for k, c in b.items():
        out[k] = get(k, 0) + sb * c
    return {k: c for k, c in out.items() if c}


def scale_terms(a, s):
    return {k: s * c for k, c in a.items()}


def diff_terms(a, shift):
    unit = 1 << shift
    out = {}
    for k, c in a.items():
        e = (k >> shift) & MASK
        if e:
            out[k - unit] = c * e
    return out


def content(a):
    g = 0
    for c in a.values():
        g = gcd(g, c)
        if g == 1:
            break
    return g


def divexact_terms(a, g):
    return {k: c // g for k, c in a.items()}
