"""Builds the optional compiled kernel; the package works without it."""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("SIGMA_FORGE_NO_EXT", "") not in ("1", "true", "yes"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(["src/sigma_forge/_ckernel.pyx"], language_level=3, quiet=True)

setup(ext_modules=ext_modules)
