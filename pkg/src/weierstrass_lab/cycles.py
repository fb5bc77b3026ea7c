"""Rational points, formal cycles, and cycles of finite subschemes of P^2."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .groebner import (
    INFINITE,
    Ideal,
    eliminate,
    local_multiplicity,
    quotient_dim,
    saturate,
)
from .poly import Polynomial
from .univariate import gcd, rational_roots


class NotFinite(ValueError):
    """A scheme expected to be finite has positive-dimensional support."""


@dataclass(frozen=True, order=True)
class Point:
    """Projective point with rational coordinates, first nonzero coordinate 1."""

    coords: Tuple[Fraction, ...]

    def __init__(self, *coords):
        if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
            coords = tuple(coords[0])
        cs = [Fraction(c) for c in coords]
        lead = next((c for c in cs if c), None)
        if lead is None:
            raise ValueError("all coordinates are zero")
        object.__setattr__(self, "coords", tuple(c / lead for c in cs))

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __str__(self):
        return "(" + ":".join(str(c) for c in self.coords) + ")"

    __repr__ = __str__


@dataclass(frozen=True)
class Cycle:
    """Finite formal sum of rational points plus degree at non-rational points.

    ``unresolved`` aggregates the degree carried by points that are not
    defined over the rationals; it participates in every comparison.
    """

    entries: Mapping[Point, int] = field(default_factory=dict)
    unresolved: int = 0

    def __post_init__(self):
        clean = {p: int(m) for p, m in dict(self.entries).items() if m}
        object.__setattr__(self, "entries", clean)

    @classmethod
    def zero(cls) -> "Cycle":
        return cls({}, 0)

    @classmethod
    def point(cls, p: Point, mult: int = 1) -> "Cycle":
        return cls({p: mult})

    @property
    def formal(self) -> bool:
        return self.unresolved < 0 or any(m < 0 for m in self.entries.values())

    def is_effective(self) -> bool:
        return not self.formal

    def degree(self) -> int:
        return sum(self.entries.values()) + self.unresolved

    def mult(self, p: Point) -> int:
        return self.entries.get(p, 0)

    def support(self) -> List[Point]:
        return sorted(self.entries)

    def is_zero(self) -> bool:
        return not self.entries and not self.unresolved

    def __add__(self, other: "Cycle") -> "Cycle":
        out = dict(self.entries)
        for p, m in other.entries.items():
            out[p] = out.get(p, 0) + m
        return Cycle(out, self.unresolved + other.unresolved)

    def __neg__(self) -> "Cycle":
        return Cycle({p: -m for p, m in self.entries.items()}, -self.unresolved)

    def __sub__(self, other: "Cycle") -> "Cycle":
        return self + (-other)

    def __mul__(self, k: int) -> "Cycle":
        return Cycle({p: k * m for p, m in self.entries.items()}, k * self.unresolved)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Cycle):
            return NotImplemented
        return self.entries == other.entries and self.unresolved == other.unresolved

    def __hash__(self):
        return hash((frozenset(self.entries.items()), self.unresolved))

    def render(self) -> str:
        parts = []
        for p in sorted(self.entries):
            m = self.entries[p]
            parts.append(("-" if m < 0 else "+", f"{abs(m)}*{p}"))
        if self.unresolved:
            parts.append(("-" if self.unresolved < 0 else "+", f"[unresolved {abs(self.unresolved)}]"))
        if not parts:
            return "0"
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    __str__ = render

    def __repr__(self):
        return f"Cycle({self.render()})"

    def to_json(self) -> dict:
        return {
            "entries": [
                {"point": [str(c) for c in p.coords], "mult": m}
                for p, m in sorted(self.entries.items())
            ],
            "unresolved": self.unresolved,
            "degree": self.degree(),
            "text": self.render(),
        }


# -- rational points of zero-dimensional ideals ------------------------------------

def rational_points(A: Ideal) -> List[Tuple[Fraction, ...]]:
    """Rational points of ``V(A)`` for a zero-dimensional ``A``.

    Works one coordinate at a time: the eliminant in the last variable gives
    candidate values, each candidate is substituted back and the process
    recurses on the remaining variables.
    """
    n = A.nvars
    if A.is_unit():
        return []
    if n == 1:
        g = None
        for b in A.basis():
            g = b if g is None else gcd(g, b)
        if g is None or g.is_zero():
            raise NotFinite("not finite: univariate ideal is zero")
        return [(r,) for r in rational_roots(g)]
    last = eliminate(A, n - 1)
    elim = None
    for b in last.basis():
        elim = b if elim is None else gcd(elim, b)
    if elim is None or elim.is_zero():
        raise NotFinite("not finite: no eliminant in the last variable")
    out = []
    for r in rational_roots(elim):
        sub = A.map(lambda g, r=r: g.subs({n - 1: r}).dehomogenize(n - 1))
        if sub.is_zero():
            raise NotFinite("not finite: fiber over a root is positive dimensional")
        for pt in rational_points(sub):
            out.append(pt + (r,))
    return sorted(out)


# -- charts of P^2 -------------------------------------------------------------------
# chart name -> (index of the coordinate set to 1, indices of (u, v))
CHARTS = {"z": (2, (0, 1)), "y": (1, (0, 2)), "x": (0, (1, 2))}
CHART_ORDER = ("z", "y", "x")


def chart_point(chart: str, uv: Sequence[Fraction]) -> Point:
    one, (iu, iv) = CHARTS[chart]
    c = [Fraction(0)] * 3
    c[one] = Fraction(1)
    c[iu], c[iv] = Fraction(uv[0]), Fraction(uv[1])
    return Point(*c)


def point_in_chart(p: Point, chart: str) -> Tuple[Fraction, Fraction] | None:
    one, (iu, iv) = CHARTS[chart]
    if not p.coords[one]:
        return None
    s = p.coords[one]
    return (p.coords[iu] / s, p.coords[iv] / s)


def scheme_cycle(chart_ideals: Mapping[str, Ideal]) -> Cycle:
    """Cycle of a finite subscheme of P^2 given by its ideals on the three charts.

    Points with z != 0 are counted in chart z; points on z = 0 other than
    (1:0:0) in chart y; the point (1:0:0) in chart x. Degree at non-rational
    points goes to ``unresolved``.
    """
    Az, Ay, Ax = (chart_ideals[c] for c in CHART_ORDER)
    total_z = quotient_dim(Az)
    if total_z == INFINITE:
        raise NotFinite("not finite: chart z quotient is infinite")
    entries: Dict[Point, int] = {}
    for uv in rational_points(Az):
        entries[chart_point("z", uv)] = local_multiplicity(Az, uv)

    # chart y, (u, v) = (x, z): the part of the scheme on z = 0
    dim_y = quotient_dim(Ay)
    if dim_y == INFINITE:
        raise NotFinite("not finite: chart y quotient is infinite")
    zvar = Ideal([Polynomial.variable(1, 2)])
    if Ay.is_unit():
        at_inf = 0
    else:
        away = saturate(Ay, zvar)
        at_inf = dim_y - quotient_dim(away)
        if at_inf:
            for (a,) in rational_points(eliminate_z(Ay)):
                m = local_multiplicity(Ay, (a, Fraction(0)))
                if m:
                    entries[chart_point("y", (a, Fraction(0)))] = m

    # chart x, (u, v) = (y, z): only the point (1:0:0)
    m_x = local_multiplicity(Ax, (Fraction(0), Fraction(0)))
    if m_x:
        entries[Point(1, 0, 0)] = m_x

    total = int(total_z) + int(at_inf) + m_x
    return Cycle(entries, total - sum(entries.values()))


def eliminate_z(Ay: Ideal) -> Ideal:
    """Restrict a chart-y ideal in (x, z) to the line z = 0, as an ideal in x."""
    return Ideal([g.subs({1: 0}).dehomogenize(1) for g in Ay.generators], nvars=1)
