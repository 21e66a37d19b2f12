#!/usr/bin/env python3
"""Brute-force oracle for smooth hypersurface statistics in P^1 and P^2.

For every nonzero form of degree d over F_q, decide smoothness by searching
for singular points over F_{q^k}, k <= ext, and count F_q-points of the
smooth ones. Prints the number of smooth forms and the exact first two
moments of #Z(F_q). The search is exact when every singular point is defined
over an extension of degree <= ext: ext = 3 covers plane conics and cubics and
binary forms of degree <= 6. The library decides smoothness by a Macaulay
resultant instead.
"""

import argparse
import itertools
import json
import os
import sys
from fractions import Fraction

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
from chars_oracle import Field, embedding, factor_prime_power  # noqa: E402


def monomials(nvars, d):
    if nvars == 1:
        return [(d,)]
    return [(a,) + rest for a in range(d, -1, -1) for rest in monomials(nvars - 1, d - a)]


def eval_form(F, coeffs, mons, pt):
    acc = 0
    for c, e in zip(coeffs, mons):
        if c == 0:
            continue
        t = c
        for x, k in zip(pt, e):
            t = F.mul(t, F.power(x, k))
        acc = F.add(acc, t)
    return acc


def partial(F, coeffs, mons, var):
    """Coefficients of dF/dx_var on the same monomial list (degree d-1 handled by shifting)."""
    out = []
    for c, e in zip(coeffs, mons):
        k = e[var] % F.p
        if c == 0 or k == 0:
            out.append((0, e))
            continue
        t = 0
        for _ in range(k):
            t = F.add(t, c)
        shifted = list(e)
        shifted[var] -= 1
        out.append((t, tuple(shifted)))
    return out


def proj_points(F, nvars):
    pts = []
    for v in itertools.product(range(F.Q), repeat=nvars):
        nz = [x for x in v if x]
        if nz and nz[0] == 1:
            pts.append(v)
    return pts


def is_smooth(base, coeffs, mons, ext, fields):
    nvars = len(mons[0])
    for k in range(1, ext + 1):
        F, emb = fields[k]
        c = [emb[x] for x in coeffs]
        parts = [partial(F, c, mons, v) for v in range(nvars)]
        for pt in proj_points(F, nvars):
            if eval_form(F, c, mons, pt):
                continue
            if all(eval_form(F, [t for t, _ in dp], [e for _, e in dp], pt) == 0 for dp in parts):
                return False
    return True


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, required=True)
    ap.add_argument("--m", type=int, required=True, help="ambient P^m, m in {1, 2}")
    ap.add_argument("--d", type=int, required=True)
    ap.add_argument("--ext", type=int, default=3, help="largest extension searched for singular points")
    a = ap.parse_args()
    p, r = factor_prime_power(a.q)
    base = Field(p, r)
    fields = {}
    for k in range(1, a.ext + 1):
        F = Field(p, r * k)
        fields[k] = (F, embedding(base, F))
    mons = monomials(a.m + 1, a.d)
    pts = proj_points(base, a.m + 1)
    smooth, s1, s2 = 0, 0, 0
    for coeffs in itertools.product(range(base.Q), repeat=len(mons)):
        if not any(coeffs):
            continue
        if not is_smooth(base, list(coeffs), mons, a.ext, fields):
            continue
        n = sum(1 for pt in pts if eval_form(base, coeffs, mons, pt) == 0)
        smooth += 1
        s1 += n
        s2 += n * n
    m1, m2 = Fraction(s1, smooth), Fraction(s2, smooth)
    json.dump({"q": a.q, "m": a.m, "d": a.d, "smooth": smooth, "mean": str(m1), "second_moment": str(m2)}, sys.stdout)
    print()


if __name__ == "__main__":
    main()
