from fractions import Fraction

from hypothesis import strategies as st

from sigma_forge.ring import SparsePoly

NAMES = ("l4", "l6", "l8", "l10")

small_q = st.builds(Fraction, st.integers(-40, 40), st.integers(1, 12))
exps = st.tuples(*[st.integers(0, 3) for _ in NAMES])


@st.composite
def polys(draw, max_terms=5):
    pairs = draw(st.lists(st.tuples(exps, small_q), max_size=max_terms))
    return SparsePoly.from_terms([(dict(zip(NAMES, e)), c) for e, c in pairs])


@st.composite
def integral_polys(draw, max_terms=4):
    pairs = draw(st.lists(st.tuples(exps, st.integers(-30, 30)), max_size=max_terms))
    return SparsePoly.from_terms([(dict(zip(NAMES, e)), c) for e, c in pairs])


@st.composite
def homogeneous_polys(draw, weight):
    terms = []
    for a in range(weight // 4 + 1):
        for b in range(weight // 6 + 1):
            for c in range(weight // 8 + 1):
                rest = weight - 4 * a - 6 * b - 8 * c
                if rest >= 0 and rest % 10 == 0:
                    terms.append({"l4": a, "l6": b, "l8": c, "l10": rest // 10})
    coeffs = draw(st.lists(small_q, min_size=len(terms), max_size=len(terms)))
    return SparsePoly.from_terms(list(zip(terms, coeffs)))
