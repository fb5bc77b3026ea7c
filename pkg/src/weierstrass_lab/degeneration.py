"""One-parameter families of linear systems and flat limits of Weierstrass schemes.

Families live over ``Q[t]``: the curve, the ideal ``J`` and the sections are
polynomials in ``(x, y, z, t)``, homogeneous in ``(x, y, z)``. The limit at
``t = 0`` of the Weierstrass scheme of the generic fiber is computed as a
``t``-saturation followed by setting ``t = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Mapping, Sequence, Tuple

from .calculus import Verdict, divisor_cycle, intrinsic_scheme, weierstrass_cycle, weierstrass_divisor_cycle
from .curve import PlaneCurve
from .cycles import CHART_ORDER, Cycle, NotFinite
from .groebner import INFINITE, Ideal, ideal_quotient, normal_form, quotient_dim, saturate
from .linsys import DegenerateSystem, GenLinearSystem, SheafRep, chart_wronskian, check_nondegenerate
from .poly import Polynomial, parse

XYZT = ("x", "y", "z", "t")
T_INDEX = 3


class LimitNotFinite(NotFinite):
    pass


def _homogeneous_in_xyz(p: Polynomial) -> bool:
    return len({sum(e[:3]) for e in p.terms}) <= 1


def _at(p: Polynomial, t0) -> Polynomial:
    """Specialize ``t`` and drop it: a form in ``(x, y, z)``."""
    return p.subs({T_INDEX: Fraction(t0)}).dehomogenize(T_INDEX)


class FamilySystem:
    """Curve ``F_t``, ideal ``J_t`` and sections over the parameter ``t``."""

    def __init__(self, F_t: Polynomial, J_t: Sequence[Polynomial] | None, sections_t: Sequence[Polynomial], twist: int | None = None, name: str = "family", special_components: Sequence[Polynomial] | None = None):
        for p in [F_t, *(J_t or []), *sections_t]:
            if p.nvars != 4:
                raise ValueError("family data must be polynomials in (x, y, z, t)")
            if not _homogeneous_in_xyz(p):
                raise ValueError("family data must be homogeneous in (x, y, z)")
        self.F_t = F_t
        self.J_t = tuple(J_t) if J_t else (Polynomial.one(4),)
        self.sections_t = tuple(sections_t)
        degs = {sum(next(iter(s.terms))[:3]) for s in self.sections_t if s.terms}
        if len(degs) != 1:
            raise ValueError("sections must share one degree in (x, y, z)")
        self.twist = degs.pop() if twist is None else twist
        self.name = name
        self.special_components = tuple(special_components) if special_components else None
        self._special = None

    @property
    def rank(self) -> int:
        return len(self.sections_t) - 1

    def fiber(self, t0) -> GenLinearSystem:
        """The system induced on the fiber over ``t = t0``."""
        comps = self.special_components if Fraction(t0) == 0 else None
        curve = PlaneCurve(_at(self.F_t, t0), comps)
        sheaf = SheafRep(curve, self.twist, [_at(g, t0) for g in self.J_t])
        return GenLinearSystem(sheaf, [_at(s, t0) for s in self.sections_t])

    def special(self) -> GenLinearSystem:
        if self._special is None:
            self._special = self.fiber(0)
        return self._special

    def chart_F(self, which: str) -> Polynomial:
        return self.F_t.dehomogenize(_chart_index(which))

    def __repr__(self):
        return f"FamilySystem({self.name!r}, F_t={self.F_t.format(XYZT)!r})"


def _chart_index(which: str) -> int:
    return {"z": 2, "y": 1, "x": 0}[which]


@dataclass(frozen=True)
class FamilyDerivation:
    """``D_t = (F_t)_v d/du - (F_t)_u d/dv`` on ``Q[u, v, t]``; ``t`` is a constant."""

    F: Polynomial

    def __call__(self, g: Polynomial) -> Polynomial:
        return self.F.diff(1) * g.diff(0) - self.F.diff(0) * g.diff(1)


def family_wronskian(fam: FamilySystem, chart: str) -> Polynomial:
    """Wronskian of the family on a chart, as a polynomial in ``(u, v, t)``."""
    special = fam.special()
    if not check_nondegenerate(special).strongly_nondegenerate:
        raise DegenerateSystem("degenerate special fiber")
    idx = _chart_index(chart)
    F = fam.chart_F(chart)
    fs = [s.dehomogenize(idx) for s in fam.sections_t]
    return chart_wronskian(fs, FamilyDerivation(F), Ideal([F]))


@dataclass
class LimitScheme:
    ideals: Dict[str, Ideal]
    cycle: Cycle
    divisor_ideals: Dict[str, Ideal] = field(default_factory=dict)


def _restrict_t0(A: Ideal, F0: Polynomial) -> Ideal:
    gens = [g.subs({2: 0}).dehomogenize(2) for g in A.basis()]
    return Ideal(gens + [F0])


def flat_limit(fam: FamilySystem) -> LimitScheme:
    """Fiber at ``t = 0`` of the closure of the generic Weierstrass scheme.

    Per chart: ``A = ((w_t) + (F_t)) : (J_t^{r+1} + (F_t))`` removes the
    ``(r+1)``-fold base scheme on the generic fiber, ``A : t^inf`` takes the
    closure, and ``t = 0`` gives the limit.
    """
    special = fam.special()
    r = fam.rank
    t = Polynomial.variable(2, 3)
    ideals = {}
    for which in CHART_ORDER:
        idx = _chart_index(which)
        F = fam.chart_F(which)
        w = family_wronskian(fam, which)
        A = Ideal([w, F])
        J = Ideal([g.dehomogenize(idx) for g in fam.J_t]) ** (r + 1)
        B = Ideal(J.generators + (F,))
        if not B.is_unit():
            A = ideal_quotient(A, B)
        closed = saturate(A, Ideal([t]))
        lim = _restrict_t0(closed, special.curve.chart(which).F_aff)
        if quotient_dim(lim) == INFINITE:
            raise LimitNotFinite(f"limit not finite on chart {which}")
        ideals[which] = lim
    return LimitScheme(ideals, divisor_cycle(ideals, special.curve))


def limit_checks(fam: FamilySystem, limit: LimitScheme | None = None) -> Verdict:
    """Containment of the intrinsic scheme and equality of the limit cycle with ``R``."""
    limit = flat_limit(fam) if limit is None else limit
    special = fam.special()
    Z_ideals, Z = intrinsic_scheme(special)
    contained = all(Z_ideals[c].contains_ideal(limit.ideals[c]) for c in CHART_ORDER)
    R = weierstrass_cycle(special)
    cycle_ok = limit.cycle == R
    return Verdict(
        f"limit({fam.name})",
        contained and cycle_ok,
        lhs=limit.cycle.render(),
        rhs=R.render(),
        details={
            "contains_intrinsic": contained,
            "cycle_equals_R": cycle_ok,
            "intrinsic": Z.render(),
            "limit_ideal_z": [g for g in limit.ideals["z"].basis()],
        },
    )


def same_limit(a: LimitScheme, b: LimitScheme) -> bool:
    """Whether two limits are the same subscheme (the dependence probe)."""
    return all(a.ideals[c].same_as(b.ideals[c]) for c in CHART_ORDER)


def fiber_divisor_degree(fam: FamilySystem, t0) -> int:
    """Degree of the Weierstrass divisor of ``O(m)`` on the fiber over ``t0``."""
    return weierstrass_divisor_cycle(fam.fiber(t0)).degree()


def quadric_shape(ideal: Ideal) -> Tuple[Fraction, Fraction] | None:
    """``(a : b)`` when ``ideal + m^3 = (a*u*v + b*v^2) + m^3 + (F)`` at the origin.

    Returns the projective pair normalized with its first nonzero entry 1,
    or None if the degree-2 relations do not have that shape.
    """
    u, v = Polynomial.variable(0, 2), Polynomial.variable(1, 2)
    cube = [u ** 3, u ** 2 * v, u * v ** 2, v ** 3]
    big = Ideal(ideal.generators + tuple(cube))
    quad = [u * u, u * v, v * v]
    n1, n2 = (normal_form(q, big) for q in quad[1:])
    if n1.is_zero() and n2.is_zero():
        return None
    if n1.is_zero():
        return (Fraction(1), Fraction(0))
    if n2.is_zero():
        return (Fraction(0), Fraction(1))
    # a*n1 + b*n2 = 0 needs n2 = lam*n1, giving (a : b) = (-lam : 1)
    e = next(iter(n1.terms))
    lam = n2.terms.get(e, Fraction(0)) / n1.terms[e]
    if n2 != n1.scale(lam):
        return None
    return (Fraction(1), -1 / lam) if lam else (Fraction(1), Fraction(0))


def parse_family(curve_t: str, ideal_t: Sequence[str] | None, sections_t: Sequence[str], constants: Mapping[str, Fraction] | None = None, name: str = "family", special_components: Sequence[str] | None = None) -> FamilySystem:
    """Build a family from text; symbolic constants are substituted first.

    ``special_components`` are forms in ``(x, y, z)`` whose product is the
    special fiber; they feed the strong nondegeneracy check at ``t = 0``.
    """
    consts = dict(constants or {})
    names = list(XYZT) + list(consts)

    def p(text):
        q = parse(text, names)
        if consts:
            q = q.subs({4 + i: Fraction(v) for i, v in enumerate(consts.values())})
            q = Polynomial._raw(4, {e[:4]: c for e, c in q.terms.items()})
        return q

    comps = [parse(c, XYZT[:3]) for c in special_components] if special_components else None
    return FamilySystem(p(curve_t), [p(g) for g in ideal_t] if ideal_t else None, [p(s) for s in sections_t], name=name, special_components=comps)
