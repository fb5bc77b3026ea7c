"""Univariate helpers: gcd, exact division and rational-root extraction."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import List, Tuple

from .poly import Polynomial


def coeffs(p: Polynomial) -> List[Fraction]:
    """Dense coefficient list, constant term first."""
    if p.nvars != 1:
        raise ValueError("expected a univariate polynomial")
    if p.is_zero():
        return []
    out = [Fraction(0)] * (p.total_degree() + 1)
    for (a,), c in p.terms.items():
        out[a] = c
    return out


def from_coeffs(cs) -> Polynomial:
    return Polynomial(1, {(i,): c for i, c in enumerate(cs) if c})


def _trim(cs):
    while cs and not cs[-1]:
        cs.pop()
    return cs


def divmod_univariate(a: Polynomial, b: Polynomial) -> Tuple[Polynomial, Polynomial]:
    num = coeffs(a)
    den = coeffs(b)
    if not den:
        raise ZeroDivisionError("division by the zero polynomial")
    if len(num) < len(den):
        return Polynomial.zero(1), a
    quot = [Fraction(0)] * (len(num) - len(den) + 1)
    num = list(num)
    lead = den[-1]
    for k in range(len(quot) - 1, -1, -1):
        c = num[k + len(den) - 1] / lead
        quot[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    return from_coeffs(quot), from_coeffs(_trim(num))


def gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd (zero only if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, divmod_univariate(a, b)[1]
    if a.is_zero():
        return a
    return a.scale(1 / coeffs(a)[-1])


def _divisors(n: int) -> List[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def root_multiplicity(p: Polynomial, root: Fraction) -> int:
    if p.is_zero():
        raise ValueError("zero polynomial")
    lin = from_coeffs([-Fraction(root), Fraction(1)])
    k = 0
    while True:
        q, r = divmod_univariate(p, lin)
        if not r.is_zero():
            return k
        p = q
        k += 1


def rational_roots(p: Polynomial) -> List[Fraction]:
    """Distinct rational roots, sorted.

    Rational root theorem on the integer-primitive square-free part, after
    pulling out the root at zero.
    """
    cs = coeffs(p)
    if not cs:
        raise ValueError("the zero polynomial has every root")
    roots = []
    lo = 0
    while not cs[lo]:
        lo += 1
    if lo:
        roots.append(Fraction(0))
    cs = cs[lo:]
    if len(cs) <= 1:
        return roots
    q = from_coeffs(cs)
    g = gcd(q, q.diff(0))
    if g.total_degree() > 0:
        q = divmod_univariate(q, g)[0]
    cs = coeffs(q)
    den = reduce(math.lcm, (c.denominator for c in cs), 1)
    ints = [int(c * den) for c in cs]
    cont = reduce(math.gcd, ints, 0)
    ints = [c // cont for c in ints]
    a0, an = ints[0], ints[-1]
    for num in _divisors(a0):
        for d in _divisors(an):
            for cand in (Fraction(num, d), Fraction(-num, d)):
                if cand in roots:
                    continue
                if _horner(ints, cand) == 0:
                    roots.append(cand)
        if len(roots) - (1 if lo else 0) == len(ints) - 1:
            break
    return sorted(roots)


def _horner(ints, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(ints):
        acc = acc * x + c
    return acc
