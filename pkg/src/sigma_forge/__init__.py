"""Exact series expansions of the genus-two hyperelliptic sigma function.

The package builds the sigma function of y^2 = x^5 + l4 x^3 + l6 x^2 + l8 x + l10
by three independent routes (two hierarchies of single-variable slices and a
Schur-function expansion of the tau function), checks the heat equations it
satisfies, inverts the ultra-elliptic integrals and studies the p-adic
behaviour of the resulting Bernoulli-Hurwitz type numbers.
"""

from .ring import SparsePoly, P, SubringSpec

__version__ = "0.1.0"
__all__ = ["SparsePoly", "P", "SubringSpec", "__version__"]
