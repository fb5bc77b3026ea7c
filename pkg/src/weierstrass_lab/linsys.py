"""Generalized linear systems on plane curves and their Wronskians.

A torsion-free rank-1 sheaf is always given as ``I_{Y/C}(m)``: a twist ``m``
and homogeneous generators ``J`` of the ideal of the finite subscheme ``Y``.
The inclusion into ``O_C(m)`` is therefore built in, and the Wronskian is
taken of the sections viewed in ``O_C(m)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from .curve import XYZ, AffineChart, PlaneCurve, dualizing_derivation
from .cycles import CHART_ORDER, Cycle, NotFinite, scheme_cycle
from .groebner import INFINITE, Ideal, normal_form, quotient_dim
from .linalg import det, poly_rank
from .poly import Polynomial, parse


class DegenerateSystem(ValueError):
    def __init__(self, msg: str = "degenerate system"):
        super().__init__(msg if msg.startswith("degenerate") else f"degenerate system: {msg}")


class InvalidSystem(ValueError):
    """Invalid sheaf or section data."""


def _principal(p: Polynomial) -> Ideal:
    return Ideal([p])


class SheafRep:
    """``I_{Y/C}(m)`` with ``Y`` cut on ``C`` by the forms ``J``."""

    def __init__(self, curve: PlaneCurve, twist: int, J: Sequence[Polynomial] | None = None):
        if twist < 0:
            raise InvalidSystem("twist must be nonnegative")
        gens = list(J) if J else [Polynomial.one(3)]
        for g in gens:
            if g.nvars != 3 or not g.is_homogeneous() or g.is_zero():
                raise InvalidSystem("ideal generators must be nonzero forms in x, y, z")
        self.curve = curve
        self.twist = twist
        self.J = tuple(gens)
        self._cache: Dict = {}

    @property
    def invertible_presentation(self) -> bool:
        """True when ``J`` is the unit ideal, i.e. ``I = O_C(m)``."""
        return all(self.J_chart(c).is_unit() for c in CHART_ORDER)

    def J_chart(self, which: str, power: int = 1) -> Ideal:
        """``J^power + (F)`` on a chart."""
        key = ("J", which, power)
        if key not in self._cache:
            chart = self.curve.chart(which)
            gens = [chart.dehomogenize(g) for g in self.J]
            base = Ideal(gens)
            if power != 1:
                base = base ** power
            self._cache[key] = Ideal(base.generators + (chart.F_aff,))
        return self._cache[key]

    def Y_ideals(self, power: int = 1) -> Dict[str, Ideal]:
        return {c: self.J_chart(c, power) for c in CHART_ORDER}

    def Y_cycle(self, power: int = 1) -> Cycle:
        key = ("Ycycle", power)
        if key not in self._cache:
            ideals = self.Y_ideals(power)
            for c, A in ideals.items():
                if quotient_dim(A) == INFINITE:
                    raise NotFinite(f"Y not finite: chart {c} quotient is infinite")
            self._cache[key] = scheme_cycle(ideals)
        return self._cache[key]

    def degree(self) -> int:
        return sheaf_degree(self)

    def with_twist(self, extra: Polynomial) -> "SheafRep":
        """Same sheaf presented inside ``O_C(m + deg extra)`` with ``J' = extra * J``."""
        return SheafRep(self.curve, self.twist + extra.total_degree(), [extra * g for g in self.J])

    def __repr__(self):
        return f"SheafRep(m={self.twist}, J={[g.format(XYZ) for g in self.J]})"


def sheaf_degree(s: SheafRep) -> int:
    return s.curve.degree * s.twist - s.Y_cycle().degree()


@dataclass
class NondegeneracyReport:
    nondegenerate: bool
    strongly_nondegenerate: bool
    failing_components: List[Polynomial] = field(default_factory=list)

    def __bool__(self):
        return self.strongly_nondegenerate


class GenLinearSystem:
    """Sections ``s_0..s_r`` of ``I_{Y/C}(m)``, given as degree-``m`` forms."""

    def __init__(self, sheaf: SheafRep, sections: Sequence[Polynomial]):
        sections = list(sections)
        if not sections:
            raise InvalidSystem("a linear system needs at least one section")
        m = sheaf.twist
        for s in sections:
            if s.nvars != 3 or not s.is_homogeneous() or (not s.is_zero() and s.total_degree() != m):
                raise InvalidSystem(f"sections must be forms of degree {m}")
        for which in CHART_ORDER:
            Jc = sheaf.J_chart(which)
            chart = sheaf.curve.chart(which)
            for s in sections:
                if not Jc.contains(chart.dehomogenize(s)):
                    raise InvalidSystem("section does not lie in the ideal J on the curve")
        self.sheaf = sheaf
        self.sections = tuple(sections)
        self._wronskian = None

    @property
    def curve(self) -> PlaneCurve:
        return self.sheaf.curve

    @property
    def rank(self) -> int:
        return len(self.sections) - 1

    @property
    def degree(self) -> int:
        return sheaf_degree(self.sheaf)

    def __repr__(self):
        return f"GenLinearSystem({self.sheaf!r}, sections={[s.format(XYZ) for s in self.sections]})"


def _independent_modulo(sections: Sequence[Polynomial], modulus: Polynomial) -> bool:
    ideal = _principal(modulus)
    reduced = [normal_form(s, ideal) for s in sections]
    return poly_rank(reduced) == len(sections)


def check_nondegenerate(sys: GenLinearSystem) -> NondegeneracyReport:
    C = sys.curve
    nondeg = _independent_modulo(sys.sections, C.F)
    failing = [c for c in C.components if not _independent_modulo(sys.sections, c)]
    return NondegeneracyReport(nondeg, nondeg and not failing, failing)


@dataclass(frozen=True)
class WronskianResult:
    charts: Tuple[Tuple[AffineChart, Polynomial], ...]

    def on(self, which: str) -> Polynomial:
        for chart, w in self.charts:
            if chart.which == which:
                return w
        raise KeyError(which)


def chart_wronskian(functions: Sequence[Polynomial], D, modulus: Ideal) -> Polynomial:
    """``det(D^k f_i)`` reduced modulo ``modulus``; ``D`` must preserve the modulus."""
    rows = []
    row = [normal_form(f, modulus) for f in functions]
    for k in range(len(functions)):
        if k:
            row = [normal_form(D(f), modulus) for f in row]
        rows.append(row)
    w = normal_form(det(rows), modulus)
    return w.primitive()


def wronskian(sys: GenLinearSystem) -> WronskianResult:
    if sys._wronskian is not None:
        return sys._wronskian
    report = check_nondegenerate(sys)
    if not report.strongly_nondegenerate:
        raise DegenerateSystem("degenerate system")
    C = sys.curve
    out = []
    for which in CHART_ORDER:
        chart = C.chart(which)
        D = dualizing_derivation(C, chart)
        modulus = _principal(chart.F_aff)
        fs = [chart.dehomogenize(s) for s in sys.sections]
        w = chart_wronskian(fs, D, modulus)
        for comp in C.components:
            ca = chart.dehomogenize(comp)
            if ca.is_constant():
                continue
            if normal_form(w, _principal(ca)).is_zero():
                raise DegenerateSystem("degenerate system: Wronskian vanishes on a component")
        out.append((chart, w))
    sys._wronskian = WronskianResult(tuple(out))
    return sys._wronskian


def weierstrass_divisor_ideal(sys: GenLinearSystem, chart: str) -> Ideal:
    """Ideal of ``W(L, eps')`` on a chart: ``(w) + (F_aff)``."""
    w = wronskian(sys).on(chart)
    return Ideal([w, sys.curve.chart(chart).F_aff])


def weierstrass_divisor_ideals(sys: GenLinearSystem) -> Dict[str, Ideal]:
    return {c: weierstrass_divisor_ideal(sys, c) for c in CHART_ORDER}


def make_system(curve: PlaneCurve, twist: int, ideal: Sequence[str] | None, sections: Sequence[str], names=XYZ) -> GenLinearSystem:
    """Convenience constructor from text."""
    J = [parse(g, names) for g in ideal] if ideal else None
    return GenLinearSystem(SheafRep(curve, twist, J), [parse(s, names) for s in sections])
