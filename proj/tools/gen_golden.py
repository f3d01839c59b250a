#!/usr/bin/env python3
"""Golden documents computed independently of the C++ engine with sympy.

  q0_dt_series_n4.json       DT-series of the one-vertex quiver, sum_n (-v)^{n^2} e^n / (q)_n
  pd_certificate_d<d>.json   f_n = (1 - q) Log(P_d)_n and delta(n, m) for d = 0..3, n <= 6
"""

import argparse
import json
import os

import sympy as sp

v = sp.symbols("v")
q = v**2


def pochhammer(n):
    return sp.prod([1 - q**k for k in range(1, n + 1)])


def laurent_terms(expr):
    expr = sp.expand(expr)
    if expr == 0:
        return []
    num, den = sp.fraction(sp.together(expr))
    den = sp.Poly(den, v)
    if len(den.terms()) != 1:
        raise ValueError("not a Laurent polynomial: %s" % expr)
    (dexp,), dcoef = den.terms()[0]
    out = []
    for (e,), c in sp.Poly(num, v).terms():
        out.append((e - dexp, sp.Rational(c) / dcoef))
    return sorted(out)


def dt_q0(n_max):
    coeffs = []
    for n in range(n_max + 1):
        coeffs.append(
            {
                "gamma": [n],
                "coeff": {
                    "num": [[n * n, "1" if n % 2 == 0 else "-1"]],
                    "den": {str(k): 1 for k in range(1, n + 1)},
                },
            }
        )
    return {"basis": "EHAT", "truncation": n_max, "coeffs": coeffs}


def p_series(d, n_max):
    return [(-v) ** ((1 - d) * n * n) / pochhammer(n) for n in range(n_max + 1)]


def series_log(c, n_max):
    # log F for F = 1 + sum_{n>=1} c_n z^n, by n L_n = n c_n - sum_{k=1}^{n-1} k L_k c_{n-k}
    logs = [sp.Integer(0)] * (n_max + 1)
    for n in range(1, n_max + 1):
        s = n * c[n] - sum(k * logs[k] * c[n - k] for k in range(1, n))
        logs[n] = sp.cancel(s / n)
    return logs


def pleth_log(c, n_max):
    logs = series_log(c, n_max)
    g = [sp.Integer(0)] * (n_max + 1)
    for n in range(1, n_max + 1):
        total = 0
        for k in sp.divisors(n):
            mu = sp.mobius(k)
            if mu:
                total += sp.Rational(mu, k) * logs[n // k].subs(v, v**k)
        g[n] = sp.cancel(total)
    return g


def certificate(d, n_max):
    g = pleth_log(p_series(d, n_max), n_max)
    f, delta = [], []
    for n in range(1, n_max + 1):
        terms = laurent_terms(sp.cancel((1 - q) * g[n]))
        if not terms:
            continue
        f.append({"gamma": [n], "laurent": [[e, str(c)] for e, c in terms]})
        for e, c in terms:
            delta.append([n, e, int(-c)])
    return {"truncation": n_max, "f": f, "delta": sorted(delta), "omega": f}


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--dir", default="testdata")
    args = parser.parse_args()

    def write(name, doc):
        with open(os.path.join(args.dir, name), "w") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")

    write("q0_dt_series_n4.json", dt_q0(4))
    for d in range(4):
        write("pd_certificate_d%d.json" % d, certificate(d, 6))


if __name__ == "__main__":
    main()
