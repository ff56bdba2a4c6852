# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled polynomial hot loops; mirrors ``_pykernel`` exactly."""

from math import gcd

DEF FIELD = 16
cdef object MASK = (1 << FIELD) - 1


def mul_terms(dict a, dict b):
    cdef dict out = {}
    cdef object ka, ca, kb, cb, k, prev
    if len(a) < len(b):
        a, b = b, a
    for kb, cb in b.items():
        for ka, ca in a.items():
            k = ka + kb
            prev = out.get(k)
            if prev is None:
                out[k] = ca * cb
            else:
                out[k] = prev + ca * cb
    return {k: ca for k, ca in out.items() if ca}


def addmul_terms(dict acc, dict a, dict b, object scale):
    cdef object ka, ca, kb, cb, k, s, prev
    for kb, cb in b.items():
        s = scale * cb
        for ka, ca in a.items():
            k = ka + kb
            prev = acc.get(k)
            if prev is None:
                acc[k] = s * ca
            else:
                acc[k] = prev + s * ca


def add_scaled(dict acc, dict a, object scale):
    cdef object k, c, prev
    for k, c in a.items():
        prev = acc.get(k)
        if prev is None:
            acc[k] = scale * c
        else:
            acc[k] = prev + scale * c


def strip_zeros(dict acc):
    cdef object k, c
    return {k: c for k, c in acc.items() if c}


def lincomb_terms(dict a, object sa, dict b, object sb):
    cdef dict out = {}
    cdef object k, c, prev
    for k, c in a.items():
        out[k] = sa * c
    for k, c in b.items():
        prev = out.get(k)
        if prev is None:
            out[k] = sb * c
        else:
            out[k] = prev + sb * c
    return {k: c for k, c in out.items() if c}


def scale_terms(dict a, object s):
    cdef object k, c
    return {k: s * c for k, c in a.items()}


def diff_terms(dict a, int shift):
    cdef dict out = {}
    cdef object unit = (<object>1) << shift
    cdef object k, c, e
    for k, c in a.items():
        e = (k >> shift) & MASK
        if e:
            out[k - unit] = c * e
    return out


def content(dict a):
    cdef object g = 0
    cdef object c
    for c in a.values():
        g = gcd(g, c)
        if g == 1:
            break
    return g


def divexact_terms(dict a, object g):
    cdef object k, c
    return {k: c // g for k, c in a.items()}
