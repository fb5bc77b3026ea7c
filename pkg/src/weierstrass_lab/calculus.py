"""Weierstrass cycles, defects and intrinsic Weierstrass schemes."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Mapping, Tuple

from .curve import PlaneCurve, arithmetic_genus
from .cycles import CHART_ORDER, Cycle, NotFinite, scheme_cycle
from .groebner import INFINITE, Ideal, ideal_quotient, quotient_dim
from .linsys import GenLinearSystem, SheafRep, weierstrass_divisor_ideals


class PluckerMismatch(AssertionError):
    """Internal error: a computed cycle violates the degree formula."""


@dataclass(frozen=True)
class Verdict:
    name: str
    passed: bool
    lhs: str = ""
    rhs: str = ""
    details: Mapping[str, object] = field(default_factory=dict)

    def __bool__(self):
        return self.passed

    def render(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        body = f"{self.name}: {status}"
        if self.lhs or self.rhs:
            body += f" [{self.lhs} {'==' if self.passed else '!='} {self.rhs}]"
        return body


def divisor_cycle(chart_ideals: Mapping[str, Ideal], curve: PlaneCurve | None = None) -> Cycle:
    """Cycle of a finite subscheme given on the three standard charts."""
    for which in CHART_ORDER:
        if quotient_dim(chart_ideals[which]) == INFINITE:
            raise NotFinite(f"not finite: chart {which} quotient is infinite")
    return scheme_cycle(chart_ideals)


def plucker_degree(r: int, d: int, g: int, n: int = 1) -> int:
    return (r + 1) * (d + r * (g - n))


def weierstrass_divisor_cycle(sys: GenLinearSystem) -> Cycle:
    """``[W(L, eps')]`` for the invertible sheaf ``O_C(m)`` containing the system."""
    return divisor_cycle(weierstrass_divisor_ideals(sys), sys.curve)


def weierstrass_cycle(sys: GenLinearSystem) -> Cycle:
    """``R(I, eps) = [W(L, eps')] - (r+1)[Y]``, checked against the Plücker degree."""
    r = sys.rank
    W = weierstrass_divisor_cycle(sys)
    R = W - (r + 1) * sys.sheaf.Y_cycle()
    expected = plucker_degree(r, sys.degree, arithmetic_genus(sys.curve), sys.curve.n_connected)
    if R.degree() != expected:
        raise PluckerMismatch(f"internal error: Weierstrass cycle degree {R.degree()} != Plücker degree {expected}")
    return R


def defect(s: SheafRep, n: int) -> Cycle:
    """``[Y^n] - n[Y]``; ``Y^n`` is cut on the curve by ``J^n``."""
    if n < 1:
        raise ValueError("defect order must be positive")
    return s.Y_cycle(n) - n * s.Y_cycle(1)


def intrinsic_scheme(sys: GenLinearSystem) -> Tuple[Dict[str, Ideal], Cycle]:
    """Zero scheme of the Wronskian as a section of ``I^{r+1}`` (twisted by ``omega``).

    On each chart this is the transporter ``((w) + (F)) : (J^{r+1} + (F))``.
    """
    r = sys.rank
    W = weierstrass_divisor_ideals(sys)
    ideals = {}
    for which in CHART_ORDER:
        Jp = sys.sheaf.J_chart(which, r + 1)
        ideals[which] = W[which] if Jp.is_unit() else ideal_quotient(W[which], Jp)
    cyc = divisor_cycle(ideals, sys.curve)
    C = sys.curve
    deg_power = C.degree * sys.sheaf.twist * (r + 1) - sys.sheaf.Y_cycle(r + 1).degree()
    expected = deg_power + (r + 1) * r * (arithmetic_genus(C) - C.n_connected)
    if cyc.degree() != expected:
        raise PluckerMismatch(f"internal error: intrinsic scheme degree {cyc.degree()} != {expected}")
    return ideals, cyc


def decomposition_identity_check(sys: GenLinearSystem) -> Verdict:
    """``R(I, eps) == [Z(I, eps)] + Delta^{r+1}(I)``."""
    R = weierstrass_cycle(sys)
    _, Z = intrinsic_scheme(sys)
    delta = defect(sys.sheaf, sys.rank + 1)
    rhs = Z + delta
    return Verdict(
        "decomposition",
        R == rhs,
        lhs=R.render(),
        rhs=rhs.render(),
        details={"Z": Z.render(), "defect": delta.render()},
    )
