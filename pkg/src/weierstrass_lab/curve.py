"""Plane projective curves, their affine charts and the dualizing derivation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .cycles import CHART_ORDER, CHARTS, Point, scheme_cycle
from .groebner import INFINITE, Ideal, divide_exact, quotient_dim
from .poly import Polynomial, parse

XYZ = ("x", "y", "z")


class CurveError(ValueError):
    pass


@dataclass(frozen=True)
class AffineChart:
    """Standard chart of P^2: ``which`` names the coordinate set to 1."""

    which: str
    F_aff: Polynomial

    @property
    def uv_indices(self) -> Tuple[int, int]:
        return CHARTS[self.which][1]

    @property
    def names(self) -> Tuple[str, str]:
        iu, iv = self.uv_indices
        return (XYZ[iu], XYZ[iv])

    def dehomogenize(self, p: Polynomial) -> Polynomial:
        return p.dehomogenize(CHARTS[self.which][0])


@dataclass(frozen=True)
class Derivation:
    """``D(g) = F_v * g_u - F_u * g_v`` on a chart; kills the chart equation."""

    chart: AffineChart

    def __post_init__(self):
        F = self.chart.F_aff
        object.__setattr__(self, "Fu", F.diff(0))
        object.__setattr__(self, "Fv", F.diff(1))

    def __call__(self, g: Polynomial) -> Polynomial:
        return self.Fv * g.diff(0) - self.Fu * g.diff(1)

    def iterate(self, g: Polynomial, k: int) -> Polynomial:
        for _ in range(k):
            g = self(g)
        return g


class PlaneCurve:
    """Reduced plane curve ``F(x, y, z) = 0``.

    ``components`` are user-declared irreducible factors; no factorization is
    attempted. Plane curves are connected, so the number of connected
    components is always 1.
    """

    n_connected = 1

    def __init__(self, F: Polynomial, components: Sequence[Polynomial] | None = None):
        if F.nvars != 3:
            raise CurveError("curve equation must be a ternary form")
        if F.is_zero() or F.is_constant():
            raise CurveError("curve equation must be a nonconstant form")
        if not F.is_homogeneous():
            raise CurveError("not homogeneous")
        self.F = F
        self.degree = F.total_degree()
        self.charts = {c: AffineChart(c, F.dehomogenize(CHARTS[c][0])) for c in CHART_ORDER}
        if not self._is_reduced():
            raise CurveError("not reduced: the curve equation has a repeated factor")
        if components is None:
            comps = (F,)
        else:
            comps = tuple(components)
            _check_components(F, comps)
        self.components = comps

    def _is_reduced(self) -> bool:
        # char 0: square-free iff the singular locus is finite on every chart
        for chart in self.charts.values():
            Fa = chart.F_aff
            if Fa.is_constant():
                continue
            sing = Ideal([Fa, Fa.diff(0), Fa.diff(1)])
            if quotient_dim(sing) == INFINITE:
                return False
        return True

    def chart(self, which: str) -> AffineChart:
        return self.charts[which]

    def __eq__(self, other):
        return isinstance(other, PlaneCurve) and self.F == other.F and self.components == other.components

    def __hash__(self):
        return hash((self.F, self.components))

    def __repr__(self):
        return f"PlaneCurve({self.F.format(XYZ)!r})"


def _check_components(F: Polynomial, comps: Sequence[Polynomial]) -> None:
    prod = Polynomial.one(3)
    for c in comps:
        if c.nvars != 3 or c.is_constant() or not c.is_homogeneous():
            raise CurveError("bad component list: components must be nonconstant forms")
        prod = prod * c
    if prod.total_degree() != F.total_degree():
        raise CurveError("bad component list: product has the wrong degree")
    try:
        q = divide_exact(F, prod)
    except ValueError:
        raise CurveError("bad component list: product does not divide the curve equation") from None
    if not q.is_constant():
        raise CurveError("bad component list: product differs from the curve equation")


def new_plane_curve(F, components=None, names: Sequence[str] = XYZ) -> PlaneCurve:
    """Build a validated curve from a form or its text."""
    if isinstance(F, str):
        F = parse(F, names)
    if components is not None:
        components = [parse(c, names) if isinstance(c, str) else c for c in components]
    return PlaneCurve(F, components)


def arithmetic_genus(C: PlaneCurve) -> int:
    e = C.degree
    return (e - 1) * (e - 2) // 2


def dualizing_derivation(C: PlaneCurve, chart) -> Derivation:
    if isinstance(chart, str):
        chart = C.chart(chart)
    if chart.F_aff != C.charts[chart.which].F_aff:
        raise CurveError("chart does not belong to this curve")
    return Derivation(chart)


def singular_scheme_ideals(C: PlaneCurve):
    out = {}
    for which, chart in C.charts.items():
        Fa = chart.F_aff
        out[which] = Ideal([Fa, Fa.diff(0), Fa.diff(1)])
    return out


def singular_points(C: PlaneCurve) -> Tuple[List[Point], int]:
    """Rational singular points and the degree of the rest of the singular scheme.

    The residual counts non-rational singular points weighted by the length
    of the singular scheme there.
    """
    cyc = scheme_cycle(singular_scheme_ideals(C))
    return sorted(cyc.entries), cyc.unresolved
