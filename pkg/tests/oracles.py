"""Reference computations that share no code with the package.

Λ(n) is modelled directly as dicts {sorted tuple: coefficient}; derivations act
by the graded Leibniz rule and brackets are operator supercommutators.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

import sympy


def sort_sign(seq):
    """(sign, sorted tuple) for a word in anticommuting generators, or None on a repeat."""
    if len(set(seq)) != len(seq):
        return None
    inv = sum(1 for a, b in itertools.combinations(seq, 2) if a > b)
    return (-1) ** inv, tuple(sorted(seq))


def mono_mul(a, b):
    return sort_sign(tuple(a) + tuple(b))


def monomials(n):
    return [c for k in range(n + 1) for c in itertools.combinations(range(1, n + 1), k)]


class Derivation:
    """Σ f_i ∂_i with f_i ∈ Λ(n); ``coeffs[i] = {monomial: c}``."""

    def __init__(self, n, coeffs):
        self.n = n
        self.coeffs = {i: {m: Fraction(c) for m, c in f.items() if c} for i, f in coeffs.items()}

    @classmethod
    def basis(cls, n, I, i):
        return cls(n, {i: {tuple(I): 1}})

    def parity(self):
        ps = {(len(m) - 1) % 2 for f in self.coeffs.values() for m in f}
        assert len(ps) <= 1
        return ps.pop() if ps else 0

    def partial(self, i, m):
        """∂_i on a monomial: move ξ_i to the front, then drop it."""
        if i not in m:
            return {}
        pos = m.index(i)
        return {m[:pos] + m[pos + 1:]: (-1) ** pos}

    def apply(self, elem):
        out = {}
        for i, f in self.coeffs.items():
            for m, c in elem.items():
                for rest, s in self.partial(i, m).items():
                    for fm, fc in f.items():
                        r = mono_mul(fm, rest)
                        if r is None:
                            continue
                        sg, key = r
                        out[key] = out.get(key, 0) + sg * s * c * fc
        return {k: v for k, v in out.items() if v}


def supercommutator(x, y):
    """[x, y] recovered from its values on the generators ξ_i."""
    n = x.n
    sign = -1 if x.parity() * y.parity() else 1
    coeffs = {}
    for i in range(1, n + 1):
        gen = {(i,): Fraction(1)}
        a = x.apply(y.apply(gen))
        b = y.apply(x.apply(gen))
        val = {k: a.get(k, 0) - sign * b.get(k, 0) for k in set(a) | set(b)}
        val = {k: v for k, v in val.items() if v}
        if val:
            coeffs[i] = val
    return Derivation(n, coeffs)


def supercommutator_acts_as_derivation(x, y):
    """[x, y] computed on generators agrees with xy - ±yx on every monomial of Λ(n)."""
    z = supercommutator(x, y)
    sign = -1 if x.parity() * y.parity() else 1
    for m in monomials(x.n):
        e = {m: Fraction(1)}
        a, b = x.apply(y.apply(e)), y.apply(x.apply(e))
        lhs = {k: a.get(k, 0) - sign * b.get(k, 0) for k in set(a) | set(b)}
        lhs = {k: v for k, v in lhs.items() if v}
        if lhs != z.apply(e):
            return False
    return True


def as_pairs(d):
    """{(I, i): c} view for comparison with package output."""
    return {(m, i): c for i, f in d.coeffs.items() for m, c in f.items()}


def gt_pattern_count(top):
    """Number of Gelfand-Tsetlin patterns with top row ``top``: dim of the gl(n) simple module."""
    top = tuple(top)
    if len(top) == 1:
        return 1
    total = 0
    ranges = [range(top[k + 1], top[k] + 1) for k in range(len(top) - 1)]
    for row in itertools.product(*ranges):
        total += gt_pattern_count(row)
    return total


def hilbert_coefficients(n, max_degree):
    """Series coefficients of ∏_{k=1}^{n-1} 1/(1-t^{2k}) via sympy."""
    t = sympy.Symbol("t")
    expr = sympy.Integer(1)
    for k in range(1, n):
        expr /= 1 - t ** (2 * k)
    s = sympy.series(expr, t, 0, max_degree + 1).removeO()
    return [int(s.coeff(t, p)) for p in range(max_degree + 1)]


def f_coefficients(n, max_degree):
    return [comb(p // 2 + n - 2, n - 2) if p % 2 == 0 else 0 for p in range(max_degree + 1)]


def in_omega_bruteforce(lam, bound=10):
    """λ = aε_i + ε_{i+1} + ... + ε_n for some i and integer a, by enumeration."""
    n = len(lam)
    for i in range(1, n + 1):
        for a in range(-bound, bound + 1):
            cand = [0] * (i - 1) + [a] + [1] * (n - i)
            if list(lam) == cand:
                return True
    return False
