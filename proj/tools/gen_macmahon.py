#!/usr/bin/env python3
"""Writes the quantum MacMahon series of the three-loop quiver as a series document.

A = prod_{n,m >= 1} (1 - q^{m-2} e^n)^{-1}, expanded with the q-binomial theorem
1/(a x; q)_inf = sum_k a^k x^k / (q)_k and truncated at total degree N.
Coefficients are written over the denominator prod_{k<=n} (1 - q^k) in powers of v = q^{1/2}.
"""

import argparse
import json

import sympy as sp

q = sp.symbols("q")


def pochhammer(k):
    return sp.prod([1 - q**j for j in range(1, k + 1)])


def series(n_max):
    coeffs = [sp.Integer(1)] + [sp.Integer(0)] * n_max
    for n in range(1, n_max + 1):
        factor = [sp.Integer(0)] * (n_max + 1)
        for k in range(0, n_max // n + 1):
            factor[n * k] = q ** (-k) / pochhammer(k)
        coeffs = [
            sp.together(sum(coeffs[a] * factor[t - a] for a in range(t + 1)))
            for t in range(n_max + 1)
        ]
    return coeffs


def document(n_max):
    out = []
    for n, c in enumerate(series(n_max)):
        num = sp.expand(sp.cancel(c * pochhammer(n)) * q ** (2 * n_max))
        poly = sp.Poly(num, q)
        terms = sorted(
            (2 * (e[0] - 2 * n_max), str(v)) for e, v in zip(poly.monoms(), poly.coeffs())
        )
        out.append(
            {
                "gamma": [n],
                "coeff": {"num": [[e, v] for e, v in terms], "den": {str(k): 1 for k in range(1, n + 1)}},
            }
        )
    return {"basis": "EHAT", "truncation": n_max, "coeffs": out}


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--truncate", type=int, default=8)
    parser.add_argument("--out", default="testdata/macmahon_q3.json")
    args = parser.parse_args()
    with open(args.out, "w") as f:
        json.dump(document(args.truncate), f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main()
