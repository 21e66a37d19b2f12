#!/usr/bin/env python3
"""Brute-force oracle for Kummer character statistics.

Averages prod_j E_{tau_j}(f) * conj(prod_j E_{taubar_j}(f)) * u^{-|tau|-|taubar|}
over monic ell-power-free f of degree d over F_q, where E_k are the
coefficients of 1/L(chi_f, T).

The route is independent of the C++ code: 1/L comes from Newton's identities
applied to character sums S_k = sum_{x in F_{q^k}} chi(N(f(x))), evaluated
pointwise in a separately built extension field, instead of from an Euler
product over closed points.

Only ghost 1 is written. Entries for ell > 2 are restricted to tau = taubar,
which do not depend on the choice of primitive character.
"""

import argparse
import itertools
import json
from fractions import Fraction


def factor_prime_power(q):
    for p in range(2, q + 1):
        if q % p == 0:
            a, r = 0, q
            while r % p == 0:
                r //= p
                a += 1
            if r != 1:
                raise SystemExit(f"q={q} is not a prime power")
            return p, a
    raise SystemExit("q must be >= 2")


class Field:
    """F_{p^n} with elements 0..p^n-1 (base-p digits), built from a primitive polynomial."""

    def __init__(self, p, n):
        self.p, self.n, self.Q = p, n, p**n
        self.modulus = self._primitive_poly()
        self.exp = []
        cur = [1] + [0] * (n - 1)
        for _ in range(self.Q - 1):
            self.exp.append(self._enc(cur))
            cur = self._times_x(cur)
        self.log = {v: k for k, v in enumerate(self.exp)}
        assert len(self.log) == self.Q - 1

    def _enc(self, digits):
        return sum(c * self.p**k for k, c in enumerate(digits))

    def _dec(self, a):
        out = []
        for _ in range(self.n):
            out.append(a % self.p)
            a //= self.p
        return out

    def _times_x(self, cur):
        # multiply by x modulo the monic modulus of degree n
        top = cur[-1]
        nxt = [0] + cur[:-1]
        return [(nxt[k] - top * self.modulus[k]) % self.p for k in range(self.n)]

    def _primitive_poly(self):
        p, n = self.p, self.n
        for tail in itertools.product(range(p), repeat=n):
            mod = list(tail)  # low coefficients, leading 1 implicit
            if mod[0] == 0 and n > 1:
                continue
            self.modulus = mod
            cur = [1] + [0] * (n - 1)
            seen = set()
            for _ in range(p**n - 1):
                e = self._enc(cur)
                if e in seen:
                    break
                seen.add(e)
                cur = self._times_x(cur)
            if len(seen) == p**n - 1 and self._enc(cur) == 1:
                return mod
        raise RuntimeError("no primitive polynomial")

    def add(self, a, b):
        return self._enc([(x + y) % self.p for x, y in zip(self._dec(a), self._dec(b))])

    def neg(self, a):
        return self._enc([(-x) % self.p for x in self._dec(a)])

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.Q - 1)]

    def gen(self):
        return self.exp[1]

    def power(self, a, k):
        if a == 0:
            return 0 if k > 0 else 1
        return self.exp[(self.log[a] * k) % (self.Q - 1)]


def embedding(small, big):
    """Map of F_small into F_big sending the primitive element to a root of its minimal polynomial."""
    if small.Q == big.Q:
        return list(range(small.Q))
    # characteristic polynomial of the primitive element of `small` over F_p is its modulus
    mod = small.modulus + [1]
    for beta in range(1, big.Q):
        acc, pw = 0, 1
        for c in mod:
            acc = big.add(acc, big.mul(c % big.p, pw) if c else 0)
            pw = big.mul(pw, beta)
        if acc == 0:
            table = [0] * small.Q
            for k in range(small.Q - 1):
                table[small.exp[k]] = big.power(beta, k)
            return table
    raise RuntimeError("no embedding")


class Zeta:
    """Q(zeta_ell) as vectors of ell Fractions (coefficients of zeta^0..zeta^{ell-1})."""

    def __init__(self, ell):
        self.ell = ell

    def zero(self):
        return [Fraction(0)] * self.ell

    def one(self):
        v = self.zero()
        v[0] = Fraction(1)
        return v

    def root(self, j):
        v = self.zero()
        v[j % self.ell] = Fraction(1)
        return v

    def add(self, a, b):
        return [x + y for x, y in zip(a, b)]

    def scale(self, a, c):
        return [x * c for x in a]

    def mul(self, a, b):
        r = self.zero()
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    r[(i + j) % self.ell] += x * y
        return r

    def conj(self, a):
        r = self.zero()
        for i, x in enumerate(a):
            r[(-i) % self.ell] += x
        return r

    def to_rational(self, a):
        # reduce by 1 + zeta + ... + zeta^{ell-1} = 0; a rational value has equal non-constant parts
        rest = a[1:]
        if any(x != rest[0] for x in rest):
            raise ValueError(f"not rational: {a}")
        return a[0] - (rest[0] if rest else 0)


def poly_eval(F, coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = F.add(F.mul(acc, x), c)
    return acc


def poly_mul(F, a, b):
    r = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            r[i + j] = F.add(r[i + j], F.mul(x, y))
    return r


def divides_monic(F, g, f):
    """True when monic g divides f (coefficient lists, low degree first)."""
    r = list(f)
    dg = len(g) - 1
    for k in range(len(r) - 1, dg - 1, -1):
        c = r[k]
        if c:
            for j in range(dg + 1):
                r[k - dg + j] = F.add(r[k - dg + j], F.neg(F.mul(c, g[j])))
    return all(c == 0 for c in r[:dg])


def ell_free(F, f, ell):
    d = len(f) - 1
    for e in range(1, d // ell + 1):
        for tail in itertools.product(range(F.Q), repeat=e):
            P = list(tail) + [1]
            Pl = [1]
            for _ in range(ell):
                Pl = poly_mul(F, Pl, P)
            if divides_monic(F, Pl, f):
                return False
    return True


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, required=True)
    ap.add_argument("--ell", type=int, required=True)
    ap.add_argument("--d", type=int, required=True)
    ap.add_argument("--trunc", type=int, default=3, help="largest |tau| (+|taubar|) written")
    ap.add_argument("--out", required=True)
    a = ap.parse_args()

    q, ell, d = a.q, a.ell, a.d
    if (q - 1) % ell:
        raise SystemExit("need ell | q - 1")
    p, r = factor_prime_power(q)
    D = a.trunc
    base = Field(p, r)
    ext = {k: Field(p, r * k) for k in range(1, D + 1)}
    emb = {k: embedding(base, ext[k]) for k in ext}
    Z = Zeta(ell)
    # chi(g_1^e) = zeta^e on F_q, and chi(N(x)) on F_{q^k} through N(g_k) = g_1^{m1}.
    norm_twist = {}
    for k in ext:
        F = ext[k]
        Nexp = (F.Q - 1) // (base.Q - 1)  # N(g_k) = g_k^{Nexp}, lies in the image of F_q
        img = F.power(F.gen(), Nexp)
        inv_emb = {v: u for u, v in enumerate(emb[k])}
        m1 = base.log[inv_emb[img]]  # N(g_k) = g_1^{m1}
        # chi(N(g_k^m)) = zeta^{m * m1}; chi_norm multiplies the log by m1
        norm_twist[k] = m1

    def chi_norm_exact(k, x):
        if x == 0:
            return None
        return (ext[k].log[x] * norm_twist[k]) % ell

    total = 0
    sums = {}
    if ell == 2:
        keys = [(tuple(t), ()) for n in range(1, D + 1) for t in partitions(n)]
    else:
        keys = [(tuple(t), tuple(t)) for n in range(1, D // 2 + 1) for t in partitions(n)]
    acc = {k: Z.zero() for k in keys}
    for tail in itertools.product(range(base.Q), repeat=d):
        f = list(tail) + [1]
        if not ell_free(base, f, ell):
            continue
        total += 1
        S = [None]
        for k in range(1, D + 1):
            fk = [emb[k][c] for c in f]
            s = Z.zero()
            for x in range(ext[k].Q):
                j = chi_norm_exact(k, poly_eval(ext[k], fk, x))
                if j is not None:
                    s = Z.add(s, Z.root(j))
            S.append(s)
        # Newton: k E_k = -sum_{j=1}^k S_j E_{k-j}
        E = [Z.one()]
        for k in range(1, D + 1):
            t = Z.zero()
            for j in range(1, k + 1):
                t = Z.add(t, Z.mul(S[j], E[k - j]))
            E.append(Z.scale(t, Fraction(-1, k)))
        for tau, tb in keys:
            v = Z.one()
            for part in tau:
                v = Z.mul(v, E[part])
            for part in tb:
                v = Z.mul(v, Z.conj(E[part]))
            acc[(tau, tb)] = Z.add(acc[(tau, tb)], v)

    expected = q**d - (q ** (d - ell + 1) if d >= ell else 0)
    assert total == expected, (total, expected)
    values = []
    for tau, tb in keys:
        w = sum(tau) + sum(tb)
        avg = Z.to_rational(acc[(tau, tb)]) / total
        # u^{-w} = q^{-ceil(w/2)} u^{w mod 2}
        val = avg / Fraction(q) ** ((w + 1) // 2)
        values.append({"ghost": 1, "tau": list(tau), "taubar": list(tb),
                       "value": f"{val.numerator}/{val.denominator}" if val.denominator != 1 else str(val.numerator),
                       "u_power": w % 2})
    doc = {"q": q, "ell": ell, "d": d, "count": total, "values": values}
    with open(a.out, "w") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def partitions(n, largest=None):
    if largest is None:
        largest = n
    if n == 0:
        yield []
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield [k] + rest


if __name__ == "__main__":
    main()
