"""Rational parameterizations ``P^1 -> C`` and the birational comparison.

Parameter space points are written ``(s:t)``; the affine coordinate is
``t`` with ``s = 1`` and the point at infinity is ``(0:1)``. Only nodes and
cusps are supported at singular fibers, each with delta invariant 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .calculus import Verdict, plucker_degree, weierstrass_cycle
from .curve import PlaneCurve, singular_points
from .cycles import Cycle, Point
from .groebner import current_precision_cap
from .linalg import det, rank
from .linsys import DegenerateSystem, GenLinearSystem, SheafRep
from .poly import Polynomial, parse
from .univariate import coeffs, divmod_univariate, from_coeffs, gcd, rational_roots, root_multiplicity

ST = ("s", "t")
DELTA = {"node": 1, "cusp": 1}
INITIAL_PRECISION = 4


class UnsupportedSingularity(ValueError):
    pass


class PrecisionCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class SingularFiber:
    point: Point
    params: Tuple[Fraction, ...]
    kind: str

    def __post_init__(self):
        if self.kind not in DELTA:
            raise UnsupportedSingularity(f"unsupported singularity type {self.kind!r}")
        need = 2 if self.kind == "node" else 1
        if len(self.params) != need:
            raise UnsupportedSingularity(f"a {self.kind} needs {need} parameter value(s) above it")


class Parameterization:
    """Birational map ``(s:t) -> (x(s,t) : y(s,t) : z(s,t))`` onto a curve."""

    def __init__(self, curve: PlaneCurve, maps: Sequence[Polynomial], singular_fibers: Sequence[SingularFiber] = ()):
        maps = tuple(maps)
        if len(maps) != 3 or any(m.nvars != 2 for m in maps):
            raise ValueError("a parameterization needs three binary forms in (s, t)")
        degs = {m.total_degree() for m in maps if not m.is_zero()}
        if len(degs) != 1 or not all(m.is_homogeneous() for m in maps):
            raise ValueError("parameterization forms must be homogeneous of a common degree")
        if not curve.F.subs({0: maps[0], 1: maps[1], 2: maps[2]}, nvars=2).is_zero():
            raise ValueError("parameterization does not land on the curve")
        self.curve = curve
        self.maps = maps
        self.degree = degs.pop()
        self.singular_fibers = tuple(singular_fibers)
        for fib in self.singular_fibers:
            for t0 in fib.params:
                if self.image(Point(1, t0)) != fib.point:
                    raise ValueError(f"parameter {t0} does not map to {fib.point}")
        if not self._birational():
            raise ValueError("parameterization is not birational onto the curve")

    def pull(self, g: Polynomial) -> Polynomial:
        """``g(x(s,t), y(s,t), z(s,t))`` as a binary form."""
        return g.subs({0: self.maps[0], 1: self.maps[1], 2: self.maps[2]}, nvars=2)

    def image(self, p: Point) -> Point:
        return Point(*(m.evaluate(p.coords) for m in self.maps))

    def _birational(self) -> bool:
        # a generic parameter value must be the only preimage of its image
        for t0 in (Fraction(7, 3), Fraction(-11, 5), Fraction(13, 2)):
            P = self.image(Point(1, t0))
            X = [m.dehomogenize(0) for m in self.maps]
            minors = [
                X[i] * P.coords[j] - X[j] * P.coords[i]
                for i in range(3)
                for j in range(i + 1, 3)
            ]
            g = None
            for mnr in minors:
                if not mnr.is_zero():
                    g = mnr if g is None else gcd(g, mnr)
            if g is None or g.total_degree() != 1:
                continue
            return True
        return False


def parse_parameterization(curve: PlaneCurve, maps: Sequence[str], fibers=(), names=ST) -> Parameterization:
    polys = [parse(m, names) for m in maps]
    fibs = [
        SingularFiber(Point(*[Fraction(c) for c in f["point"]]), tuple(Fraction(str(v)) for v in f["params"]), f["type"])
        for f in fibers
    ]
    return Parameterization(curve, polys, fibs)


# -- binary forms ----------------------------------------------------------------------

def _affine_and_s_order(h: Polynomial, degree: int) -> Tuple[Polynomial, int]:
    a = h.dehomogenize(0)
    return a, degree - a.total_degree()


@dataclass(frozen=True)
class P1System:
    sections: Tuple[Polynomial, ...]  # univariate in t
    cap: int


def pullback_system(sys: GenLinearSystem, b: Parameterization) -> P1System:
    """Induced system on ``P^1``: pulled-back sections divided by the pullback of ``J``.

    The base divisor removed is the gcd of the pulled-back generators of
    ``J``, which is the divisor of ``J·O_{P^1}``.
    """
    m = sys.sheaf.twist
    N = b.degree * m
    pulled = [b.pull(s) for s in sys.sections]
    if all(p.is_zero() for p in pulled):
        raise DegenerateSystem("internal error: all sections pull back to 0")
    base_aff = None
    base_s = None
    for g in sys.sheaf.J:
        pg = b.pull(g)
        if pg.is_zero():
            continue
        a, k = _affine_and_s_order(pg, b.degree * g.total_degree())
        base_aff = a if base_aff is None else gcd(base_aff, a)
        base_s = k if base_s is None else min(base_s, k)
    base_aff = base_aff.scale(1 / coeffs(base_aff)[-1])
    out = []
    for p in pulled:
        a = p.dehomogenize(0)
        if a.is_zero():
            out.append(a)
            continue
        q, r = divmod_univariate(a, base_aff)
        if not r.is_zero():
            raise ValueError("section is not divisible by the pullback of J")
        out.append(q)
    cap = N - base_aff.total_degree() - base_s
    return P1System(tuple(out), cap)


def _flip(f: Polynomial, cap: int) -> Polynomial:
    """``s^cap f(1/s)`` as a polynomial in ``s``."""
    cs = coeffs(f)
    cs = cs + [Fraction(0)] * (cap + 1 - len(cs))
    return from_coeffs(list(reversed(cs)))


def _univariate_wronskian(fs: Sequence[Polynomial]) -> Polynomial:
    rows = []
    row = list(fs)
    for k in range(len(fs)):
        if k:
            row = [f.diff(0) for f in row]
        rows.append(row)
    return det(rows)


def p1_weierstrass_cycle(sections: Sequence[Polynomial], cap: int) -> Cycle:
    """Weierstrass cycle on ``P^1`` of polynomials of degree at most ``cap``."""
    fs = [f if f.nvars == 1 else f.dehomogenize(0) for f in sections]
    r = len(fs) - 1
    if any(f.total_degree() > cap for f in fs):
        raise ValueError("section degree exceeds the cap")
    w = _univariate_wronskian(fs)
    if w.is_zero():
        raise DegenerateSystem("degenerate")
    entries: Dict[Point, int] = {}
    for root in rational_roots(w):
        entries[Point(1, root)] = root_multiplicity(w, root)
    unresolved = w.total_degree() - sum(entries.values())
    w_inf = _univariate_wronskian([_flip(f, cap) for f in fs])
    m_inf = root_multiplicity(w_inf, Fraction(0))
    if m_inf:
        entries[Point(0, 1)] = m_inf
    cyc = Cycle(entries, unresolved)
    expected = plucker_degree(r, cap, 0)
    if cyc.degree() != expected:
        raise AssertionError(f"internal error: P^1 Weierstrass degree {cyc.degree()} != {expected}")
    return cyc


def pushforward(b: Parameterization, c: Cycle) -> Cycle:
    out: Dict[Point, int] = {}
    for p, m in c.entries.items():
        q = b.image(p)
        out[q] = out.get(q, 0) + m
    return Cycle(out, c.unresolved)


# -- truncated jets ----------------------------------------------------------------------

def _taylor(f: Polynomial, t0: Fraction, N: int) -> List[Fraction]:
    shifted = f.subs({0: Polynomial(1, {(1,): 1, (0,): t0})}) if t0 else f
    cs = coeffs(shifted)[:N]
    return cs + [Fraction(0)] * (N - len(cs))


def _series_mul(a, b, N):
    out = [Fraction(0)] * N
    for i, x in enumerate(a):
        if x:
            for j in range(N - i):
                if b[j]:
                    out[i + j] += x * b[j]
    return out


def _series_inv(a, N):
    if not a[0]:
        raise ZeroDivisionError("series is not a unit")
    out = [Fraction(0)] * N
    out[0] = 1 / a[0]
    for k in range(1, N):
        acc = sum((a[i] * out[k - i] for i in range(1, k + 1)), Fraction(0))
        out[k] = -acc * out[0]
    return out


def _local_generators(s: SheafRep, b: Parameterization, fib: SingularFiber, N: int) -> List[List[Fraction]]:
    """Pulled-back generators of ``J`` as jets at each preimage, concatenated."""
    coord = next(i for i, c in enumerate(fib.point.coords) if c)
    X = [m.dehomogenize(0) for m in b.maps]
    gens = []
    for g in s.J:
        vec: List[Fraction] = []
        pg = b.pull(g).dehomogenize(0)
        for t0 in fib.params:
            num = _taylor(pg, t0, N)
            unit = _series_inv(_taylor(X[coord], t0, N), N)
            trivial = [Fraction(1)] + [Fraction(0)] * (N - 1)
            for _ in range(g.total_degree()):
                trivial = _series_mul(trivial, unit, N)
            vec.extend(_series_mul(num, trivial, N))
        gens.append(vec)
    return gens


def _local_ring_basis(fib: SingularFiber, N: int) -> List[List[Fraction]]:
    """Truncation of ``O_C`` inside the jets of its normalization at ``fib``."""
    k = len(fib.params)
    basis = []

    def unit_vec(branch, j):
        v = [Fraction(0)] * (k * N)
        v[branch * N + j] = Fraction(1)
        return v

    one = [Fraction(0)] * (k * N)
    for br in range(k):
        one[br * N] = Fraction(1)
    basis.append(one)
    start = 1 if fib.kind == "node" else 2
    for br in range(k):
        for j in range(start, N):
            basis.append(unit_vec(br, j))
    return basis


def _module_span(gens, ring_basis, k, N):
    rows = []
    for g in gens:
        for h in ring_basis:
            row = []
            for br in range(k):
                row.extend(_series_mul(g[br * N:(br + 1) * N], h[br * N:(br + 1) * N], N))
            rows.append(row)
    return rank(rows)


def Rb_of_sheaf(s: SheafRep, b: Parameterization, point: Point, cap: int | None = None) -> int:
    """Length of ``(J·O_{P^1}) / (J·O_C)`` at a singular point of the curve."""
    fib = next((f for f in b.singular_fibers if f.point == point), None)
    if fib is None:
        raise ValueError(f"{point} is not a listed singular fiber")
    k = len(fib.params)
    cap = current_precision_cap() if cap is None else cap
    prev = None
    N = INITIAL_PRECISION
    while N <= cap:
        gens = _local_generators(s, b, fib, N)
        full = [[Fraction(0)] * (k * N) for _ in range(k * N)]
        for i in range(k * N):
            full[i][i] = Fraction(1)
        value = _module_span(gens, full, k, N) - _module_span(gens, _local_ring_basis(fib, N), k, N)
        if value == prev:
            return value
        prev = value
        N *= 2
    raise PrecisionCapExceeded("precision cap exceeded")


def Rb_cycle(b: Parameterization) -> Cycle:
    return Cycle({f.point: DELTA[f.kind] for f in b.singular_fibers})


def Rb_of_sheaf_cycle(s: SheafRep, b: Parameterization) -> Cycle:
    return Cycle({f.point: Rb_of_sheaf(s, b, f.point) for f in b.singular_fibers})


def birational_comparison(sys: GenLinearSystem, b: Parameterization) -> Verdict:
    """``R(I) - b_* R(I^b) == (r+1)^2 R_b - (r+1) R_b(I)``."""
    listed = {f.point for f in b.singular_fibers}
    sing, residual = singular_points(sys.curve)
    if residual or any(p not in listed for p in sing):
        raise UnsupportedSingularity("unsupported singularity type: singular point without a node/cusp fiber")
    r = sys.rank
    induced = pullback_system(sys, b)
    up = p1_weierstrass_cycle(induced.sections, induced.cap)
    lhs = weierstrass_cycle(sys) - pushforward(b, up)
    rhs = (r + 1) ** 2 * Rb_cycle(b) - (r + 1) * Rb_of_sheaf_cycle(sys.sheaf, b)
    return Verdict(
        "birational",
        lhs == rhs,
        lhs=lhs.render(),
        rhs=rhs.render(),
        details={"induced_cycle": up.render(), "cap": induced.cap},
    )
