"""Ideals, Buchberger's algorithm and the ideal operations built on it.

Everything here is exact. Gröbner bases are reduced and monic; they are
memoized on the :class:`Ideal` per monomial order, so repeated membership
tests against the same ideal cost one basis computation.
"""

from __future__ import annotations

import contextlib
import contextvars
import math
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from . import _accel
from .poly import DEGREVLEX, Exponent, MonomialOrder, Polynomial, block_order

DEFAULT_PAIR_CAP = 200_000
DEFAULT_PRECISION_CAP = 64
INFINITE = math.inf

_precision_cap = contextvars.ContextVar("precision_cap", default=DEFAULT_PRECISION_CAP)


@contextlib.contextmanager
def precision_cap(n: int):
    """Temporarily change the m-adic stabilization cap used by local lengths."""
    token = _precision_cap.set(int(n))
    try:
        yield
    finally:
        _precision_cap.reset(token)


def current_precision_cap() -> int:
    return _precision_cap.get()


class ResourceLimitExceeded(RuntimeError):
    """A configured safety cap was hit."""


class NotIsolated(ValueError):
    """Local length requested at a point that is not isolated in the zero set."""


# -- low level: polynomials as {exponent: Fraction} dicts ------------------------

def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


class _Keyed:
    """Memoized order key; exponent tuples repeat heavily during reduction."""

    __slots__ = ("raw", "memo")

    def __init__(self, order: MonomialOrder):
        self.raw = order.key
        self.memo: Dict[Exponent, tuple] = {}

    def __call__(self, e):
        k = self.memo.get(e)
        if k is None:
            k = self.raw(e)
            self.memo[e] = k
        return k


def _lead(f: Dict[Exponent, Fraction], key) -> Exponent:
    return max(f, key=key)


def _axpy(f: Dict[Exponent, Fraction], c: Fraction, shift: Exponent, g: Dict[Exponent, Fraction]) -> None:
    """In place: f -= c * x^shift * g."""
    for e, a in g.items():
        m = tuple(x + y for x, y in zip(e, shift))
        v = f.get(m, 0) - c * a
        if v:
            f[m] = v
        else:
            f.pop(m, None)


def _reduce_full(f: Dict[Exponent, Fraction], basis: Sequence[Tuple[Exponent, Dict[Exponent, Fraction]]], key) -> Dict[Exponent, Fraction]:
    f = dict(f)
    rem: Dict[Exponent, Fraction] = {}
    while f:
        m = _lead(f, key)
        c = f[m]
        for lm, g in basis:
            if _divides(lm, m):
                # basis elements are monic
                _axpy(f, c, _sub(m, lm), g)
                break
        else:
            rem[m] = c
            del f[m]
    return rem


def _monic(f: Dict[Exponent, Fraction], lm: Exponent) -> Dict[Exponent, Fraction]:
    c = f[lm]
    if c == 1:
        return f
    inv = 1 / c
    return {e: a * inv for e, a in f.items()}


def _buchberger(polys: List[Dict[Exponent, Fraction]], order: MonomialOrder, pair_cap: int):
    key = _Keyed(order)
    G: List[Tuple[Exponent, Dict[Exponent, Fraction]]] = []
    sugar: List[int] = []
    pairs: Dict[Tuple[int, int], Tuple[int, tuple, Exponent]] = {}

    def add(f, s):
        lm = _lead(f, key)
        f = _monic(f, lm)
        if not any(lm):
            # unit ideal
            G.clear()
            sugar.clear()
            pairs.clear()
            G.append((lm, f))
            sugar.append(s)
            return True
        j = len(G)
        for i, (lmi, _) in enumerate(G):
            lc = _lcm(lmi, lm)
            dl = sum(lc)
            ps = max(sugar[i] + dl - sum(lmi), s + dl - sum(lm))
            pairs[(i, j)] = (ps, key(lc), lc)
        G.append((lm, f))
        sugar.append(s)
        return False

    for f in polys:
        if not f:
            continue
        r = _reduce_full(f, G, key)
        if r:
            if add(r, max(sum(e) for e in f)):
                return G, key

    processed = 0
    while pairs:
        (i, j), (ps, _, lc) = min(pairs.items(), key=lambda kv: (kv[1][0], kv[1][1]))
        del pairs[(i, j)]
        lmi, fi = G[i]
        lmj, fj = G[j]
        # product criterion
        if all(a == 0 or b == 0 for a, b in zip(lmi, lmj)):
            continue
        # chain criterion
        skip = False
        for k, (lmk, _) in enumerate(G):
            if k in (i, j) or not _divides(lmk, lc):
                continue
            a = (min(i, k), max(i, k))
            b = (min(j, k), max(j, k))
            if a not in pairs and b not in pairs:
                skip = True
                break
        if skip:
            continue
        processed += 1
        if processed > pair_cap:
            raise ResourceLimitExceeded("resource limit exceeded: Gröbner pair cap reached")
        s: Dict[Exponent, Fraction] = {}
        _axpy(s, Fraction(-1), _sub(lc, lmi), fi)
        _axpy(s, Fraction(1), _sub(lc, lmj), fj)
        r = _reduce_full(s, G, key)
        if r:
            if add(r, ps):
                return G, key
    return G, key


def _interreduce(G, key):
    G = sorted(G, key=lambda t: key(t[0]))
    minimal = []
    for lm, f in G:
        if not any(_divides(m, lm) for m, _ in minimal):
            minimal = [(m, g) for m, g in minimal if not _divides(lm, m)]
            minimal.append((lm, f))
    out = []
    for idx, (lm, f) in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        tail = dict(f)
        del tail[lm]
        r = _reduce_full(tail, others, key)
        r[lm] = Fraction(1)
        out.append((lm, r))
    out.sort(key=lambda t: key(t[0]), reverse=True)
    return out


def groebner_basis(gens: Iterable[Polynomial], order: MonomialOrder = DEGREVLEX, pair_cap: int = DEFAULT_PAIR_CAP) -> List[Polynomial]:
    """Reduced, monic Gröbner basis, sorted by leading monomial (largest first)."""
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    n = gens[0].nvars
    if any(g.nvars != n for g in gens):
        raise ValueError("generators live in different rings")
    dicts = [dict(g.terms) for g in gens if g.terms]
    if not dicts:
        return []
    G, key = _buchberger(dicts, order, pair_cap)
    return [Polynomial._raw(n, f) for _, f in _interreduce(G, key)]


# -- Ideal ----------------------------------------------------------------------

class Ideal:
    """Ideal of a polynomial ring given by generators, with memoized bases."""

    __slots__ = ("nvars", "generators", "_bases")

    def __init__(self, generators: Iterable[Polynomial], nvars: int | None = None):
        gens = tuple(generators)
        if not gens and nvars is None:
            raise ValueError("an ideal needs generators or an explicit arity")
        n = gens[0].nvars if gens else nvars
        if any(g.nvars != n for g in gens):
            raise ValueError("generators live in different rings")
        self.nvars = n
        self.generators = tuple(g for g in gens if g.terms) or (Polynomial.zero(n),)
        self._bases: Dict[MonomialOrder, Tuple[Polynomial, ...]] = {}

    @classmethod
    def unit(cls, nvars: int) -> "Ideal":
        return cls([Polynomial.one(nvars)])

    def basis(self, order: MonomialOrder = DEGREVLEX) -> Tuple[Polynomial, ...]:
        b = self._bases.get(order)
        if b is None:
            b = tuple(groebner_basis(self.generators, order))
            self._bases[order] = b
        return b

    def is_zero(self) -> bool:
        return all(g.is_zero() for g in self.generators)

    def is_unit(self) -> bool:
        b = self.basis()
        return len(b) == 1 and b[0].is_constant() and not b[0].is_zero()

    def reduce(self, p: Polynomial, order: MonomialOrder = DEGREVLEX) -> Polynomial:
        return normal_form(p, self, order)

    def contains(self, p: Polynomial) -> bool:
        return normal_form(p, self).is_zero()

    def __contains__(self, p: Polynomial) -> bool:
        return self.contains(p)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.generators)

    def same_as(self, other: "Ideal") -> bool:
        """Equality as ideals (mutual membership of generators)."""
        return self.nvars == other.nvars and self.contains_ideal(other) and other.contains_ideal(self)

    def __add__(self, other: "Ideal") -> "Ideal":
        if isinstance(other, Polynomial):
            return Ideal(self.generators + (other,))
        return Ideal(self.generators + other.generators)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal([a * b for a in self.generators for b in other.generators])

    def __pow__(self, k: int) -> "Ideal":
        if k < 0:
            raise ValueError("negative ideal power")
        out = Ideal.unit(self.nvars)
        for _ in range(k):
            out = Ideal(_minimal_products(out.generators, self.generators))
        return out

    def map(self, fn) -> "Ideal":
        return Ideal([fn(g) for g in self.generators])

    def __repr__(self):
        return f"Ideal({list(self.generators)!r})"


def _minimal_products(a: Sequence[Polynomial], b: Sequence[Polynomial]) -> List[Polynomial]:
    seen = []
    for p in a:
        for q in b:
            r = p * q
            if r not in seen:
                seen.append(r)
    return seen


def _as_ideal(x) -> Ideal:
    if isinstance(x, Ideal):
        return x
    return Ideal(list(x))


# -- operations -------------------------------------------------------------------

def groebner(gens, order: MonomialOrder = DEGREVLEX) -> Ideal:
    """Ideal of ``gens`` with its reduced Gröbner basis for ``order`` cached."""
    ideal = _as_ideal(gens)
    ideal.basis(order)
    return ideal


def normal_form(p: Polynomial, ideal: Ideal, order: MonomialOrder = DEGREVLEX) -> Polynomial:
    if p.nvars != ideal.nvars:
        raise ValueError(f"arity mismatch: {p.nvars} vs {ideal.nvars}")
    if not p.terms:
        return p
    key = _Keyed(order)
    basis = [(b.leading_monomial(order), b.terms) for b in ideal.basis(order)]
    return Polynomial._raw(p.nvars, _reduce_full(p.terms, basis, key))


def divide_exact(p: Polynomial, q: Polynomial) -> Polynomial:
    """Quotient ``p / q``; raises if ``q`` does not divide ``p``."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    key = _Keyed(DEGREVLEX)
    lm = q.leading_monomial()
    lc = q.terms[lm]
    f = dict(p.terms)
    quot: Dict[Exponent, Fraction] = {}
    while f:
        m = _lead(f, key)
        if not _divides(lm, m):
            raise ValueError("polynomial division is not exact")
        c = f[m] / lc
        shift = _sub(m, lm)
        quot[shift] = quot.get(shift, 0) + c
        _axpy(f, c, shift, q.terms)
    return Polynomial._raw(p.nvars, {e: c for e, c in quot.items() if c})


def _lift(p: Polynomial, extra: int) -> Polynomial:
    """Prepend ``extra`` fresh variables."""
    return p.remap([i + extra for i in range(p.nvars)], p.nvars + extra)


def eliminate(A: Ideal, count: int) -> Ideal:
    """``A`` intersected with the subring of the last ``nvars - count`` variables.

    The result lives in that smaller ring (first ``count`` variables dropped).
    """
    A = _as_ideal(A)
    n = A.nvars
    if not 0 < count < n:
        raise ValueError("need 0 < count < arity")
    order = block_order(count)
    keep = [g for g in A.basis(order) if not any(e[:count] != (0,) * count for e in g.terms)]
    m = n - count
    return Ideal([Polynomial._raw(m, {e[count:]: c for e, c in g.terms.items()}) for g in keep], nvars=m)


def intersect(A: Ideal, B: Ideal) -> Ideal:
    A, B = _as_ideal(A), _as_ideal(B)
    n = A.nvars
    s = Polynomial.variable(0, n + 1)
    gens = [s * _lift(a, 1) for a in A.generators] + [(1 - s) * _lift(b, 1) for b in B.generators]
    return eliminate(Ideal(gens), 1)


def ideal_quotient(A: Ideal, B: Ideal) -> Ideal:
    """Transporter ``(A : B) = {h : h·B ⊆ A}``."""
    A, B = _as_ideal(A), _as_ideal(B)
    if A.nvars != B.nvars:
        raise ValueError("ideals live in different rings")
    result = None
    for b in B.generators:
        if b.is_zero():
            continue
        if A.contains(b):
            continue  # A : (b) is the unit ideal
        inter = intersect(A, Ideal([b]))
        piece = Ideal([divide_exact(g, b) for g in inter.basis()], nvars=A.nvars)
        result = piece if result is None else intersect(result, piece)
    if result is None:
        return Ideal.unit(A.nvars)
    result.basis()
    return result


def saturate(A: Ideal, B: Ideal, max_rounds: int = 64) -> Ideal:
    """``A : B^∞`` by repeated quotients until the bases stop changing."""
    cur = _as_ideal(A)
    B = _as_ideal(B)
    for _ in range(max_rounds):
        nxt = ideal_quotient(cur, B)
        if nxt.basis() == cur.basis():
            return cur
        cur = nxt
    raise ResourceLimitExceeded("saturation did not terminate")


def leading_exponents(A: Ideal, order: MonomialOrder = DEGREVLEX) -> np.ndarray:
    basis = A.basis(order)
    if not basis:
        return np.zeros((0, A.nvars), dtype=np.int64)
    return np.array([b.leading_monomial(order) for b in basis], dtype=np.int64)


def quotient_dim(A: Ideal):
    """Dimension of ``k[x]/A`` over the rationals; ``INFINITE`` when unbounded."""
    A = _as_ideal(A)
    lead = leading_exponents(A)
    if lead.shape[0] == 0:
        return INFINITE
    count = _accel.count_standard_monomials(lead)
    return INFINITE if count is None else count


def maximal_power(nvars: int, N: int, point: Sequence | None = None) -> List[Polynomial]:
    """Generators of ``m^N`` for the maximal ideal at ``point`` (origin by default)."""
    shifts = [Polynomial.variable(i, nvars) - (Fraction(point[i]) if point else 0) for i in range(nvars)]
    out = []
    for exps in _compositions(N, nvars):
        p = Polynomial.one(nvars)
        for s, a in zip(shifts, exps):
            if a:
                p = p * s ** a
        out.append(p)
    return out


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def translate(A: Ideal, point: Sequence) -> Ideal:
    """Move ``point`` to the origin."""
    n = A.nvars
    shift = {i: Polynomial.variable(i, n) + Fraction(point[i]) for i in range(n) if point[i]}
    if not shift:
        return A
    return A.map(lambda g: g.subs(shift))


def local_multiplicity(A: Ideal, point: Sequence, cap: int | None = None) -> int:
    """Length of the local ring of ``k[x]/A`` at a rational point.

    Uses the m-adic stabilization ``dim k[x]/(A + m^N)``. Zero when the point
    is not on ``V(A)``.
    """
    A = _as_ideal(A)
    cap = current_precision_cap() if cap is None else cap
    if len(point) != A.nvars:
        raise ValueError("point has the wrong number of coordinates")
    T = translate(A, point)
    prev = None
    for N in range(1, cap + 2):
        d = quotient_dim(Ideal(T.generators + tuple(maximal_power(A.nvars, N))))
        if prev is not None and d == prev:
            return int(d)
        prev = d
    raise NotIsolated(f"not isolated: local length still growing at precision {cap}")
