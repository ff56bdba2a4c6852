"""Compare the compiled and pure-Python polynomial kernels.

    python3 benchmarks/bench_kernels.py [--weight 20] [--repeat 3]

Each workload runs under both backends; the results must agree exactly.
"""

import argparse
import time

from sigma_forge import _kernel, sigma2, tau
from sigma_forge.ring import P


def poly_mul():
    a = P("l4 + 2*l6 - 3*l8 + 5/7*l10 + 1") ** 6
    b = P("3*l4^2 - l6*l8 + 11*l10 - 2") ** 5
    return a * b


def workloads(weight):
    return {
        "poly-mul": poly_mul,
        "sigma-xi": lambda: sigma2.sigma_xi(weight),
        "sigma-mu": lambda: sigma2.sigma_mu(weight),
        "sigma-tau": lambda: tau.sigma_tau(min(weight, 16)),
    }


def best_of(fn, repeat):
    best, out = None, None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        dt = time.perf_counter() - t
        best = dt if best is None else min(best, dt)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--weight", type=int, default=20)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    backends = _kernel.available()
    if "compiled" not in backends:
        print("compiled kernel not built; only the python backend is timed")
    print("%-10s %12s %12s %8s" % ("workload", "python (s)", "compiled (s)", "ratio"))
    for name, fn in workloads(args.weight).items():
        times, results = {}, {}
        for b in backends:
            _kernel.set_backend(b)
            times[b], results[b] = best_of(fn, args.repeat)
        if len(results) == 2 and results["python"] != results["compiled"]:
            raise SystemExit("backends disagree on %s" % name)
        tc = times.get("compiled")
        print("%-10s %12.4f %12s %8s" % (name, times["python"], "%.4f" % tc if tc else "-",
                                          "%.2fx" % (times["python"] / tc) if tc else "-"))
    _kernel.set_backend("compiled" if "compiled" in backends else "python")


if __name__ == "__main__":
    main()
