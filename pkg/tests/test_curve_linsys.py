import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from weierstrass_lab.curve import CurveError, arithmetic_genus, dualizing_derivation, new_plane_curve, singular_points
from weierstrass_lab.cycles import Cycle, Point, chart_point, point_in_chart
from weierstrass_lab.groebner import Ideal, normal_form
from weierstrass_lab.linsys import (
    DegenerateSystem,
    InvalidSystem,
    SheafRep,
    check_nondegenerate,
    make_system,
    weierstrass_divisor_ideals,
    wronskian,
)
from weierstrass_lab.poly import Polynomial, parse

UV = ("u", "v")
XYZ = ("x", "y", "z")
small_polys = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)).filter(lambda e: sum(e) <= 3),
    st.integers(-4, 4),
    max_size=4,
).map(lambda d: Polynomial(2, d))


class TestPoints:
    def test_normalization(self):
        assert Point(2, 4, 6) == Point(1, 2, 3)
        assert str(Point(-1, 0, 1)) == "(1:0:-1)"
        assert Point(0, 0, 5) == Point(0, 0, 1)

    def test_zero_point_rejected(self):
        with pytest.raises(ValueError):
            Point(0, 0, 0)

    def test_chart_round_trip(self):
        p = Point(Fraction(1, 2), 3, 1)
        for which in ("z", "y", "x"):
            uv = point_in_chart(p, which)
            assert chart_point(which, uv) == p

    def test_point_off_chart(self):
        assert point_in_chart(Point(1, 0, 0), "z") is None


class TestCycles:
    def test_render(self):
        c = Cycle.point(Point(0, 0, 1), 4) + Cycle({}, unresolved=3)
        assert c.render() == "4*(0:0:1) + [unresolved 3]"
        assert Cycle.zero().render() == "0"

    def test_algebra(self):
        q = Cycle.point(Point(0, 0, 1))
        assert (3 * q - q).mult(Point(0, 0, 1)) == 2
        assert (q - q).is_zero()
        assert not (-1 * q).is_effective()


class TestCurve:
    def test_genus(self, nodal, fermat):
        assert arithmetic_genus(nodal) == 1
        assert arithmetic_genus(new_plane_curve("x*z - y^2")) == 0
        assert arithmetic_genus(new_plane_curve("x^4 + y^4 + z^4")) == 3

    def test_not_homogeneous(self):
        with pytest.raises(CurveError):
            new_plane_curve("x^2 + y")

    def test_not_reduced(self):
        with pytest.raises(CurveError):
            new_plane_curve("x^2*z")

    def test_components_must_divide(self):
        with pytest.raises(CurveError):
            new_plane_curve("x*y*z", components=["x", "y"])
        C = new_plane_curve("x*y*z", components=["x", "y", "z"])
        assert len(C.components) == 3

    def test_singular_points(self, nodal, cuspidal, fermat):
        assert singular_points(nodal) == ([Point(0, 0, 1)], 0)
        assert singular_points(cuspidal) == ([Point(0, 0, 1)], 0)
        assert singular_points(fermat) == ([], 0)

    def test_derivation_preserves_curve(self, nodal):
        chart = nodal.chart("z")
        D = dualizing_derivation(nodal, chart)
        F = chart.F_aff
        for g in (parse("u^2 + v", ("u", "v")), parse("u*v^3", ("u", "v"))):
            assert normal_form(D(F * g), Ideal([F])).is_zero()


class TestSystems:
    def test_sections_must_lie_in_ideal(self, nodal):
        with pytest.raises(InvalidSystem):
            make_system(nodal, 1, ["x", "y"], ["x", "z"])

    def test_sections_need_right_degree(self, nodal):
        with pytest.raises(InvalidSystem):
            make_system(nodal, 1, None, ["x", "y^2"])

    def test_degree(self, node_system, nodal):
        assert node_system.degree == 2
        assert SheafRep(nodal, 2).degree() == 6

    def test_nondegeneracy(self, nodal):
        C = new_plane_curve("x^2*z - x*y^2", components=["x", "x*z - y^2"])
        bad = make_system(C, 1, None, ["x", "y"])
        report = check_nondegenerate(bad)
        assert report.nondegenerate and not report.strongly_nondegenerate
        with pytest.raises(DegenerateSystem, match="^degenerate system"):
            wronskian(bad)
        assert check_nondegenerate(make_system(C, 1, None, ["y", "z"])).strongly_nondegenerate

    def test_dependent_sections(self, nodal):
        sys = make_system(nodal, 1, None, ["x", "2*x"])
        assert not check_nondegenerate(sys).nondegenerate

    def test_node_wronskian(self, node_system, nodal):
        w = wronskian(node_system).on("z")
        F = Ideal([nodal.chart("z").F_aff])
        a, b = normal_form(w, F), normal_form(parse("u^3", ("u", "v")), F)
        lm = b.leading_monomial()
        assert a.coefficient(lm) != 0
        assert a == b.scale(a.coefficient(lm) / b.coefficient(lm))


class TestDerivation:
    def test_values_on_nodal_chart(self, nodal):
        D = dualizing_derivation(nodal, nodal.chart("z"))
        assert D(parse("u", UV)) == parse("2*v", UV)
        assert D(parse("v", UV)) == parse("2*u + 3*u^2", UV)
        assert D(parse("1", UV)).is_zero()
        assert D(nodal.chart("z").F_aff).is_zero()

    @settings(max_examples=10, deadline=None)
    @given(small_polys, small_polys)
    def test_product_rule(self, g, h):
        C = new_plane_curve("y^2*z - x^2*z - x^3")
        D = dualizing_derivation(C, C.chart("y"))
        assert D(g * h) == g * D(h) + h * D(g)


class TestMoreSystems:
    def test_single_section_divisor(self, nodal):
        sys = make_system(nodal, 1, None, ["x"])
        W = weierstrass_divisor_ideals(sys)["z"]
        assert W.same_as(Ideal([parse("u", UV), nodal.chart("z").F_aff]))

    def test_degree_of_square_of_node_ideal(self, nodal):
        assert SheafRep(nodal, 2, [parse(g, XYZ) for g in ("x^2", "x*y", "y^2")]).degree() == 3

    def test_cusp_wronskian(self, cusp_system, cuspidal):
        w = wronskian(cusp_system).on("z")
        F = Ideal([cuspidal.chart("z").F_aff])
        a, b = normal_form(w, F), normal_form(parse("u^3", UV), F)
        lm = b.leading_monomial()
        assert a.coefficient(lm) != 0 and a == b.scale(a.coefficient(lm) / b.coefficient(lm))

    @pytest.mark.parametrize("seed", range(3))
    def test_random_smooth_conic(self, seed):
        # conic through five random rational points, generic enough to be smooth
        rng = random.Random(seed)
        pts = [(rng.randint(-5, 5), rng.randint(-5, 5), 1) for _ in range(5)]
        monos = ["x^2", "x*y", "y^2", "x*z", "y*z", "z^2"]
        rows = [[x * x, x * y, y * y, x * z, y * z, z * z] for x, y, z in pts]
        kernel = sympy.Matrix(rows).nullspace()
        if len(kernel) != 1:
            pytest.skip("points not in general position")
        vec = kernel[0] * sympy.ilcm(*[c.q for c in kernel[0]])
        F = " + ".join(f"({c})*{m}" for c, m in zip(vec, monos))
        if _conic_det(vec) == 0:
            pytest.skip("line pair")
        C = new_plane_curve(F)
        assert singular_points(C) == ([], 0)


def _conic_det(v):
    a, b, c, d, e, f = v
    return sympy.Matrix([[2 * a, b, d], [b, 2 * c, e], [d, e, 2 * f]]).det()
