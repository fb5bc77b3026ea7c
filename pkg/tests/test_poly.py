from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from weierstrass_lab.groebner import (
    Ideal,
    NotIsolated,
    ResourceLimitExceeded,
    eliminate,
    groebner_basis,
    ideal_quotient,
    intersect,
    local_multiplicity,
    normal_form,
    precision_cap,
    quotient_dim,
    saturate,
    INFINITE,
)
from weierstrass_lab.poly import DEGREVLEX, LEX, ParseError, Polynomial, block_order, parse
from weierstrass_lab.univariate import gcd, rational_roots, root_multiplicity

UV = ("u", "v")
XYZ = ("x", "y", "z")
su, sv = sympy.symbols("u v")


def P(text, names=UV):
    return parse(text, names)


def to_sympy(p: Polynomial, syms=(su, sv)):
    return sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod([s ** a for s, a in zip(syms, e)]) for e, c in p.terms.items())


def from_sympy(expr, syms=(su, sv)) -> Polynomial:
    poly = sympy.Poly(expr, *syms)
    return Polynomial(len(syms), {e: Fraction(int(c.p), int(c.q)) for e, c in poly.terms()})


small_coeff = st.fractions(min_value=-5, max_value=5, max_denominator=3)
exps2 = st.tuples(st.integers(0, 3), st.integers(0, 3))
polys2 = st.dictionaries(exps2, small_coeff, max_size=5).map(lambda d: Polynomial(2, d))


class TestArithmetic:
    def test_parse_and_format_round_trip(self):
        p = P("3/2*u^2*v - v^3 + 1")
        assert p.coefficient((2, 1)) == Fraction(3, 2)
        assert P(p.format(UV)) == p

    def test_implicit_coefficient_product(self):
        assert P("3u^2 - 3/2 u*v + 2(u + v)") == P("3*u^2 - 3/2*u*v + 2*u + 2*v")

    def test_parse_rejects_unknown_names(self):
        with pytest.raises(ParseError):
            P("u + w")

    def test_parse_rejects_division_by_polynomial(self):
        with pytest.raises(ParseError):
            P("1/u")

    def test_zero_degree(self):
        assert Polynomial.zero(2).total_degree() == -1

    def test_orders(self):
        p = P("u*v^2 + u^3 + v^4")
        assert p.leading_monomial(DEGREVLEX) == (0, 4)
        assert p.leading_monomial(LEX) == (3, 0)
        q = parse("x + y^5", ["x", "y"])
        assert q.leading_monomial(block_order(1)) == (1, 0)

    @given(polys2, polys2, polys2)
    def test_ring_axioms(self, a, b, c):
        assert (a + b) * c == a * c + b * c
        assert (a * b) * c == a * (b * c)
        assert a - a == Polynomial.zero(2)

    @given(polys2, polys2)
    def test_product_matches_sympy(self, a, b):
        assert sympy.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0

    @given(polys2)
    def test_derivative_matches_sympy(self, a):
        assert to_sympy(a.diff(0)) == sympy.diff(to_sympy(a), su)

    def test_homogenize_dehomogenize(self):
        p = P("u^2 + v + 1")
        h = p.homogenize(2, 2)
        assert h.is_homogeneous() and h.total_degree() == 2
        assert h.dehomogenize(2) == p


class TestGroebner:
    CASES = [
        ["u^2 - v", "u*v - 1"],
        ["u^3 - 2*u*v", "u^2*v - 2*v^2 + u"],
        ["v^2 - u^2 - u^3", "2*u + 3*u^2", "2*v"],
        ["u^2*v + v^3", "u*v^2 - 1/2*u"],
    ]

    @pytest.mark.parametrize("gens", CASES)
    def test_reduced_basis_matches_sympy(self, gens):
        polys = [P(g) for g in gens]
        mine = groebner_basis(polys, DEGREVLEX)
        ref = sympy.groebner([to_sympy(p) for p in polys], su, sv, order="grevlex")
        theirs = {from_sympy(g).monic() for g in ref.exprs}
        assert set(mine) == theirs

    @pytest.mark.parametrize("gens", CASES)
    def test_lex_basis_matches_sympy(self, gens):
        polys = [P(g) for g in gens]
        mine = groebner_basis(polys, LEX)
        ref = sympy.groebner([to_sympy(p) for p in polys], su, sv, order="lex")
        assert set(mine) == {from_sympy(g).monic(LEX) for g in ref.exprs}

    @settings(max_examples=25, deadline=None)
    @given(st.lists(polys2, min_size=1, max_size=3))
    def test_generators_reduce_to_zero(self, gens):
        I = Ideal(gens, nvars=2)
        for g in gens:
            assert normal_form(g, I).is_zero()

    def test_pair_cap(self):
        gens = [P("u^5 - v^3 + u*v"), P("v^4 - u^3*v + 1")]
        with pytest.raises(ResourceLimitExceeded):
            groebner_basis(gens, DEGREVLEX, pair_cap=1)

    def test_quotient_dimension(self):
        assert quotient_dim(Ideal([P("u^2"), P("v^3")])) == 6
        assert quotient_dim(Ideal([P("u*v")])) == INFINITE
        assert quotient_dim(Ideal.unit(2)) == 0

    def test_elimination(self):
        # the curve (t^2, t^3) has implicit equation x^3 - y^2
        names = ["t", "x", "y"]
        A = Ideal([parse("x - t^2", names), parse("y - t^3", names)])
        E = eliminate(A, 1)
        assert E.same_as(Ideal([parse("x^3 - y^2", ["x", "y"])]))

    def test_intersection_and_quotient(self):
        A, B = Ideal([P("u")]), Ideal([P("v")])
        assert intersect(A, B).same_as(Ideal([P("u*v")]))
        m2 = Ideal([P("u^2"), P("u*v"), P("v^2")])
        m3 = Ideal([P("u^3"), P("u^2*v"), P("u*v^2"), P("v^3")])
        assert ideal_quotient(m3, m2).same_as(Ideal([P("u"), P("v")]))

    def test_saturation_removes_embedded_point(self):
        A = Ideal([P("u^2"), P("u*v")])
        assert saturate(A, Ideal([P("v")])).same_as(Ideal([P("u")]))

    def test_local_multiplicity(self):
        A = Ideal([P("v^2 - u^3"), P("v")])
        assert local_multiplicity(A, (0, 0)) == 3
        assert local_multiplicity(A, (1, 1)) == 0

    def test_precision_cap_stops_non_isolated(self):
        with precision_cap(4), pytest.raises(NotIsolated):
            local_multiplicity(Ideal([P("u")]), (0, 0))


class TestUnivariate:
    def test_roots_and_multiplicity(self):
        t = ("t",)
        p = parse("(t - 1)^2*(2*t + 3)*(t^2 + 1)", t)
        assert rational_roots(p) == [Fraction(-3, 2), Fraction(1)]
        assert root_multiplicity(p, Fraction(1)) == 2

    def test_gcd_is_monic(self):
        t = ("t",)
        g = gcd(parse("2*t^2 - 2", t), parse("4*t - 4", t))
        assert g == parse("t - 1", t)
