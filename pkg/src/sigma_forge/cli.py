"""Command line: ``sigma-forge expand|check|dump-operators``.

Exit codes: 0 success, 1 a check failed, 2 bad configuration, 3 an internal
cross-check disagreed while computing.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import bernoulli, heat, inversion, sigma2, tau
from .ring import SparsePoly, is_prime, ord_p_poly
from .hurwitz import TruncationError

SCHEMA = "sigma-forge/1"
TARGETS = ("sigma-xi", "sigma-mu", "sigma-tau", "xi", "mu", "F", "G", "G-infinity", "bh",
           "universal-bernoulli")
SUITES = ("heat", "routes", "integrality", "ode", "degeneration", "valuations", "clarke", "lemmas")
LAMBDA_NAMES = {"l4": "l4", "l6": "l6", "l8": "l8", "l10": "l10",
                "λ4": "l4", "λ6": "l6", "λ8": "l8", "λ10": "l10",
                "lambda4": "l4", "lambda6": "l6", "lambda8": "l8", "lambda10": "l10"}


class ConfigError(ValueError):
    pass


@dataclass
class JobConfig:
    command: str
    target: str = ""
    weight: int = 20
    k: int = 0
    max_n: int = 40
    primes: tuple = bernoulli.SMALL_PRIMES
    lam: dict = field(default_factory=dict)
    fmt: str = "json"
    out: str = ""
    genus: int = 2

    def validate(self):
        if self.weight < 3:
            raise ConfigError("--weight must be at least 3")
        if self.k < 0:
            raise ConfigError("--k must be non-negative")
        if self.max_n < 2:
            raise ConfigError("--max-n must be at least 2")
        bad = [p for p in self.primes if not is_prime(p)]
        if bad:
            raise ConfigError("not prime: %s" % ", ".join(map(str, bad)))
        return self

    def as_dict(self):
        return {"target": self.target, "weight": self.weight, "k": self.k, "max_n": self.max_n,
                "primes": list(self.primes), "lambda": {k: str(v) for k, v in sorted(self.lam.items())},
                "genus": self.genus}


def parse_lambda(text):
    """'l4=1,l6=-1/3' -> {'l4': Fraction(1), 'l6': Fraction(-1, 3)}; floats are rejected."""
    out = {}
    if not text:
        return out
    for item in text.split(","):
        if not item.strip():
            continue
        if "=" not in item:
            raise ConfigError("expected name=value in --lambda, got %r" % item)
        name, val = (s.strip() for s in item.split("=", 1))
        if name not in LAMBDA_NAMES:
            raise ConfigError("unknown parameter %r" % name)
        if any(ch in val for ch in ".eE"):
            raise ConfigError("lambda values must be exact integers or fractions, got %r" % val)
        try:
            out[LAMBDA_NAMES[name]] = Fraction(val)
        except (ValueError, ZeroDivisionError):
            raise ConfigError("cannot parse %r as a rational" % val) from None
    return out


def parse_primes(text):
    try:
        return tuple(int(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise ConfigError("--primes must be a comma-separated list of integers") from None


# ------------------------------------------------------------------ expand

def _subs(series, cfg):
    return series.subs(cfg.lam) if cfg.lam else series


def _series_lines(s):
    if hasattr(s, "keys_through"):
        return ["(%s) * u1^%d u3^%d/(%d! %d!)" % (s.c[k], k[0], k[1], k[0], k[1])
                for k in s.keys_through() if k in s.c]
    return sigma2.expansion_table(s)


def expand(cfg):
    t = cfg.target
    N = cfg.weight
    if t in ("sigma-xi", "sigma-mu", "sigma-tau"):
        if t == "sigma-xi":
            s = sigma2.sigma_xi(N)
        elif t == "sigma-mu":
            s = sigma2.sigma_mu(N)
        else:
            s = tau.sigma_tau(N, cfg.genus)
        s = _subs(s, cfg)
        return {"series": s.to_json(), "table": sigma2.sigma_table(s)}, _series_lines(s)
    if t == "xi":
        xs = sigma2.xi_hierarchy(N + 3 * cfg.k)
        s = _subs(xs[cfg.k], cfg)
        return {"k": cfg.k, "series": s.to_json()}, _series_lines(s)
    if t == "mu":
        ms = sigma2.mu_hierarchy(N + cfg.k)
        s = _subs(ms[cfg.k], cfg)
        return {"k": cfg.k, "series": s.to_json()}, _series_lines(s)
    if t in ("F", "G"):
        fn = inversion.f_series if t == "F" else inversion.g_series
        r = fn(N=N)
        s = _subs(r.series, cfg)
        lines = ["%s_%d = %s" % ("p" if t == "F" else "q", k, _subs(r.coeffs[k], cfg)) for k in sorted(r.coeffs)]
        return {"coeffs": [[k, _subs(r.coeffs[k], cfg).canonical()] for k in sorted(r.coeffs)],
                "series": s.to_json()}, lines
    if t == "G-infinity":
        taus = inversion.tau_recurrence(N)
        vals = {n: _subs(v, cfg) for n, v in enumerate(taus)}
        lines = ["tau_%d = %s" % (n, v) for n, v in vals.items() if v]
        return {"tau": [[n, v.canonical()] for n, v in vals.items()]}, lines
    if t == "bh":
        tab = bernoulli.bh_table(cfg.max_n, cfg.lam or None)
        lines = ["C_%d/%d = %s" % (n, n, tab.c_over_n(n)) for n in range(4, cfg.max_n + 1, 2)]
        lines += ["D_%d/%d = %s" % (n, n, tab.d_over_n(n)) for n in range(6, cfg.max_n + 1, 2)]
        return bernoulli.table_json(tab), lines
    if t == "universal-bernoulli":
        bs = bernoulli.universal_bernoulli_all(cfg.max_n)
        lines = ["B_%d = %s" % (n, b) for n, b in enumerate(bs)]
        return {"B": [[n, b.canonical()] for n, b in enumerate(bs)]}, lines
    raise ConfigError("unknown target %r" % t)


# ------------------------------------------------------------------ check suites

def _item(name, ok, witness=None):
    return {"name": name, "pass": bool(ok), "witness": witness}


def _residual_witness(res):
    if not res:
        return None
    k = min(res, key=lambda k: (k[0] + 3 * k[1], k[1]))
    return {"index": list(k), "value": res[k].canonical()}


def suite_heat(cfg):
    N = cfg.weight
    out = []
    sig = sigma2.sigma_xi(N + 6)
    for i, (known, res) in heat.verify_annihilation(sig, heat.build_heat_system(2)).items():
        out.append(_item("Q%d sigma = 0 (known through weight %d)" % (i, known),
                         not res and known >= N, _residual_witness(res)))
    g1 = sigma2.genus1_as_series2(sigma2.genus1_sigma(N + 2))
    for i, (known, res) in heat.verify_annihilation(g1, heat.build_heat_system(1)).items():
        out.append(_item("genus-1 Q%d sigma = 0 (known through order %d)" % (i, known),
                         not res and known >= N, _residual_witness(res)))
    for name, op in heat.bracket_identities().items():
        out.append(_item(name + " = 0", op.is_zero(), None if op.is_zero() else heat.pretty(op)))
    return out


def suite_routes(cfg):
    N = cfg.weight
    a = sigma2.sigma_xi(N)
    b = sigma2.sigma_mu(N)
    c = tau.sigma_tau(N)
    out = []
    for name, x, y in (("xi = mu", a, b), ("xi = tau", a, c), ("mu = tau", b, c)):
        d = x.first_difference(y, N)
        out.append(_item(name + " through weight %d" % N, d is None,
                         None if d is None else {"index": list(d[0]), "left": str(d[1]), "right": str(d[2])}))
    g1 = sigma2.genus1_as_series2(sigma2.genus1_sigma(N))
    d = g1.first_difference(tau.sigma_tau(N, genus=1), N)
    out.append(_item("genus-1 recursion = tau route through order %d" % N, d is None,
                     None if d is None else {"index": list(d[0])}))
    return out


def suite_integrality(cfg):
    N = cfg.weight
    out = []
    bad = sigma2.integrality_report(sigma2.sigma_xi(N), sigma2.INTEGRAL_G2)
    out.append(_item("sigma coefficients in Z[l4,l6,l8,2*l10]", not bad,
                     [[list(k), str(m), str(c)] for k, m, c in bad] or None))
    _, xis = tau.tau_series(N)
    badt = [str(mu) for mu, v in xis.items() if not tau.subring_member(v, sigma2.INTEGRAL)]
    out.append(_item("tau-route coefficients xi_mu in Z[lambda]", not badt, badt or None))
    g1 = sigma2.genus1_sigma(N)
    bad1 = sigma2.integrality_report(g1, sigma2.INTEGRAL)
    out.append(_item("genus-1 sigma coefficients in Z[l4,l6]", not bad1,
                     [[k, str(m), str(c)] for k, m, c in bad1] or None))
    return out


def suite_ode(cfg):
    out = []
    fs = inversion.f_series(N=12)
    r1, r2 = inversion.f_residuals(fs)
    e = inversion.f_energy(fs)
    out.append(_item("F: second-order residual is zero", not r2.c))
    out.append(_item("F: first-order residual is the base-point constant",
                     r1.c == ({0: e} if e else {})))
    gs = inversion.g_series(N=12)
    r1, r2 = inversion.g_residuals(gs)
    lam10 = inversion.g_energy_l10(gs)
    r1s = r1.map(lambda p: p.subs({"l10": lam10}).reduce_inverse("q2", "q2inv"))
    out.append(_item("G: third-order residual is zero", not r2.c))
    out.append(_item("G: first-order residual vanishes on the curve", not r1s.c))
    seeds = inversion.tau_recurrence(10)
    seed_bad = [n for n in range(11) if seeds[n] != inversion.TAU_SEEDS[n]]
    out.append(_item("G at infinity: seeds tau_0..tau_10", not seed_bad, seed_bad or None))
    M = max(cfg.weight, 24) + 2
    rec = inversion.tau_recurrence(M)
    orc = inversion.g_at_infinity_oracle(M)
    diff = [n for n in range(M + 1) if rec[n] != orc.get(n, SparsePoly.zero())]
    out.append(_item("G at infinity: recurrence = coefficient matching through u^%d" % (M - 2), not diff,
                     diff or None))
    g = inversion.g_at_infinity(M)
    x, y = inversion.xy_from_g(g)
    out.append(_item("G at infinity: y^2 = f(x)", not inversion.curve_residual(x, y).c))
    return out


def suite_degeneration(cfg):
    rep = inversion.weierstrass_degeneration(max(cfg.weight, 24))
    return [_item("G at infinity with l8 = l10 = 0 equals wp", rep["equal"]),
            _item("it satisfies (wp')^2 = 4(wp^3 + l4 wp + l6)", rep["ode_residual_zero"])]


def suite_valuations(cfg):
    n = cfg.max_n
    t = bernoulli.bh_table(n)
    out = []
    rows = bernoulli.valuation_report(t, cfg.primes)
    bad = [r for r in rows if not r["pass"]]
    out.append(_item("ord_p bounds for 4 <= n <= %d, p in %s" % (n, list(cfg.primes)), not bad,
                     [dict(r, ord=str(r["ord"])) for r in bad] or None))
    for name, ok in bernoulli.frame_checks(t).items():
        out.append(_item(name, ok))
    for (kind, k), text in sorted(bernoulli.PRINTED.items()):
        if k <= n:
            v = t.c_over_n(k) if kind == "C" else t.d_over_n(k)
            out.append(_item("%s_%d/%d printed value" % (kind, k, k), v == SparsePoly.parse(text), str(v)))
    g = bernoulli.c_over_n_from_g_infinity(n)
    gd = [k for k in g if g[k] != t.c_over_n(k)]
    out.append(_item("C_n/n from G at infinity agrees", not gd, gd or None))
    st = bernoulli.special_table(30)
    rows = bernoulli.special_curve_report(st)
    bad = [r for r in rows if not r["pass"]]
    out.append(_item("y^2 = x^5 + l10 bounds at n = 10, 20, 30", not bad, bad or None))
    vals = bernoulli.x5_minus_1_values(st)
    c10 = bernoulli.frac_part(vals[10][0])
    out.append(_item("y^2 = x^5 - 1: C_10/10 = 5/11 mod Z", c10 == Fraction(5, 11), str(c10)))
    for m in (20, 30):
        got = bernoulli.frac_part(vals[m][0])
        want = bernoulli.x5_minus_1_prediction(m, "C")
        out.append(_item("y^2 = x^5 - 1: C_%d/%d congruence" % (m, m), got == want, [str(got), str(want)]))
    return out


def suite_clarke(cfg):
    n = min(cfg.max_n, 14)
    out = []
    bs = bernoulli.universal_bernoulli_all(n)
    bad = [k for k in range(2, n + 1) if bs[k] * Fraction(1, k) != bernoulli.bernoulli_over_n_tau(k)]
    out.append(_item("B_n/n by inversion = sum over U, n <= %d" % n, not bad, bad or None))
    f1, f2 = SparsePoly.parse("f1"), SparsePoly.parse("f2")
    out.append(_item("B_1 = f1/2", bs[1] == f1 * Fraction(1, 2)))
    out.append(_item("B_2/2 = -f1^2/4 + f2/3", bs[2] * Fraction(1, 2) == f1 * f1 * Fraction(-1, 4) + f2 * Fraction(1, 3)))
    for k in range(3, n + 1):
        rem, ok = bernoulli.clarke_check(k, bs[k])
        out.append(_item("B_%d/%d congruence" % (k, k), ok, None if ok else str(rem)))
    for k in (2, 4, 6, 8):
        v = bs[k].subs(bernoulli.sign_specialisation(k))
        out.append(_item("f_n = (-1)^n gives B_%d" % k, v.constant() == bernoulli.classical_bernoulli(k), str(v)))
    return out


def suite_lemmas(cfg):
    n = cfg.max_n
    t = bernoulli.bh_table(n)
    bad = [(name, k) for name, k, ok in bernoulli.lemma_relation_checks(t) if not ok]
    out = [_item("membership relations for C_n^(k), D_n^(k), n <= %d" % n, not bad, bad or None)]
    br = bernoulli.bernoulli_route_check(t, min(n, 20))
    out.append(_item("C_n^(1), D_n^(1) as curve Bernoulli numbers", not br, br or None))
    checked, badu = bernoulli.check_tau_valuation_lemmas(34)
    out.append(_item("tau_U valuation bounds, w + d <= 34 (%d cases)" % checked, not badu,
                     [list(map(str, b)) for b in badu] or None))
    st = bernoulli.special_table(30)
    bads = [(name, k) for name, k, ok in bernoulli.special_lemma_checks(st) if not ok]
    out.append(_item("y^2 = x^5 + l10 relations at n = 10, 20, 30", not bads, bads or None))
    return out


SUITE_FUNCS = {"heat": suite_heat, "routes": suite_routes, "integrality": suite_integrality,
               "ode": suite_ode, "degeneration": suite_degeneration, "valuations": suite_valuations,
               "clarke": suite_clarke, "lemmas": suite_lemmas}


def run_check(cfg):
    return SUITE_FUNCS[cfg.target](cfg)


# ------------------------------------------------------------------ output

def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def _emit(text, cfg):
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_checks(items):
    import csv
    import io
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["name", "pass", "witness"])
    for it in items:
        w.writerow([it["name"], it["pass"], "" if it["witness"] is None else json.dumps(it["witness"], sort_keys=True)])
    return buf.getvalue()


def build_parser():
    ap = argparse.ArgumentParser(prog="sigma-forge", description="Exact expansions of the genus-two sigma function.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--weight", type=int, default=20)
        p.add_argument("--max-n", type=int, default=40)
        p.add_argument("--primes", default=",".join(map(str, bernoulli.SMALL_PRIMES)))
        p.add_argument("--lambda", dest="lam", default="")
        p.add_argument("--format", dest="fmt", choices=("json", "csv", "pretty"), default="json")
        p.add_argument("--out", default="")

    e = sub.add_parser("expand", help="compute an expansion")
    e.add_argument("target", choices=TARGETS)
    e.add_argument("--k", type=int, default=0)
    e.add_argument("--genus", type=int, choices=(1, 2), default=2)
    common(e)
    c = sub.add_parser("check", help="run a verification suite")
    c.add_argument("target", choices=SUITES)
    common(c)
    d = sub.add_parser("dump-operators", help="print the heat operators")
    d.add_argument("--genus", type=int, choices=(1, 2), default=2)
    common(d)
    return ap


def make_config(args):
    return JobConfig(command=args.command, target=getattr(args, "target", ""), weight=args.weight,
                     k=getattr(args, "k", 0), max_n=args.max_n, primes=parse_primes(args.primes),
                     lam=parse_lambda(args.lam), fmt=args.fmt, out=args.out,
                     genus=getattr(args, "genus", 2)).validate()


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)     # argparse exits with 2 on usage errors
    try:
        cfg = make_config(args)
    except ConfigError as exc:
        print("sigma-forge: %s" % exc, file=sys.stderr)
        return 2
    head = {"schema": SCHEMA, "command": cfg.command, "config": cfg.as_dict()}
    try:
        if cfg.command == "expand":
            result, lines = expand(cfg)
            if cfg.fmt == "pretty":
                _emit("\n".join(lines) + "\n", cfg)
            elif cfg.fmt == "csv":
                rows = result.get("table")
                if rows is None:
                    raise ConfigError("csv output is only available for sigma tables")
                _emit("m,n,weight,coeff\n" + "".join("%d,%d,%d,%s\n" % (r["m"], r["n"], r["weight"], r["coeff"])
                                                       for r in rows), cfg)
            else:
                _emit(dumps(dict(head, result=result)), cfg)
            return 0
        if cfg.command == "dump-operators":
            ops = heat.build_heat_system(cfg.genus)
            if cfg.fmt == "pretty":
                _emit("\n\n".join(heat.pretty(ops[i]) for i in sorted(ops)) + "\n", cfg)
            else:
                body = {"Q%d" % i: [[list(k[:4]) + [list(k[4])], str(v)] for k, v in sorted(ops[i].terms.items())]
                        for i in sorted(ops)}
                _emit(dumps(dict(head, result=body)), cfg)
            return 0
        items = run_check(cfg)
    except ConfigError as exc:
        print("sigma-forge: %s" % exc, file=sys.stderr)
        return 2
    except (ArithmeticError, TruncationError, tau.StabilizationError) as exc:
        print("sigma-forge: internal verification failed: %s" % exc, file=sys.stderr)
        return 3
    ok = all(it["pass"] for it in items)
    if cfg.fmt == "pretty":
        _emit("".join("%s %s\n" % ("PASS" if it["pass"] else "FAIL", it["name"]) for it in items), cfg)
    elif cfg.fmt == "csv":
        _emit(_csv_checks(items), cfg)
    else:
        _emit(dumps(dict(head, result={"pass": ok, "items": items})), cfg)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
