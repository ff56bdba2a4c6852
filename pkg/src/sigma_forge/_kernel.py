"""Backend selection for the polynomial hot loops.

The compiled ``_ckernel`` extension is used when it imports; otherwise the
pure-Python ``_pykernel`` module takes over.  Setting SIGMA_FORGE_PURE=1 in
the environment forces the fallback.  ``set_backend`` switches at runtime
(used by the benchmark and the kernel equivalence tests).
"""

import os

from . import _pykernel

NAMES = ("mul_terms", "addmul_terms", "add_scaled", "strip_zeros",
         "lincomb_terms", "scale_terms", "diff_terms", "content",
         "divexact_terms")

try:
    from . import _ckernel
except ImportError:  # extension not built
    _ckernel = None

BACKEND = None


def available():
    out = ["python"]
    if _ckernel is not None:
        out.append("compiled")
    return out


def set_backend(name):
    global BACKEND
    if name == "compiled":
        if _ckernel is None:
            raise RuntimeError("compiled kernel is not built")
        mod = _ckernel
    elif name == "python":
        mod = _pykernel
    else:
        raise ValueError("unknown backend %r" % name)
    g = globals()
    for n in NAMES:
        g[n] = getattr(mod, n)
    BACKEND = name


if _ckernel is not None and os.environ.get("SIGMA_FORGE_PURE", "") not in ("1", "true", "yes"):
    set_backend("compiled")
else:
    set_backend("python")
