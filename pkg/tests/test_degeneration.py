from fractions import Fraction

import pytest

from weierstrass_lab.cycles import Cycle, Point
from weierstrass_lab.degeneration import (
    FamilySystem,
    fiber_divisor_degree,
    flat_limit,
    limit_checks,
    parse_family,
    quadric_shape,
    same_limit,
)
from weierstrass_lab.groebner import Ideal
from weierstrass_lab.linsys import DegenerateSystem
from weierstrass_lab.poly import parse

UV = ("u", "v")
Q = Point(0, 0, 1)
FAMILY1 = ("y^2*z - x^3 - x^2*z - t^2*z^3", ["x", "y - t*z"], ["x", "y - t*z"])
FAMILY2 = ("y^2*z + (t - 1)*x^2*z - x^3 - 2*c*t*y*z^2 + t^2*z^3", ["x - t*z", "y - 2*c*t*z"], ["x - t*z", "y - 2*c*t*z"])


@pytest.fixture(scope="module")
def family1():
    return parse_family(*FAMILY1, name="family1")


def family2(c):
    return parse_family(*FAMILY2, constants={"c": Fraction(c)}, name=f"family2[c={c}]")


def test_family_data_validation():
    with pytest.raises(ValueError):
        FamilySystem(parse("x^2 + y", ("x", "y", "z", "t")), None, [parse("x", ("x", "y", "z", "t"))])


def test_special_fiber(family1, node_system):
    special = family1.special()
    assert special.curve == node_system.curve
    assert special.rank == 1 and special.degree == 2


def test_generic_fibers_are_invertible(family1):
    # over t != 0 the point (0 : t : 1) is a smooth point: J cuts one reduced point
    fiber = family1.fiber(2)
    assert fiber.sheaf.Y_cycle() == Cycle.point(Point(0, 2, 1), 1)
    assert fiber_divisor_degree(family1, 2) == 6


def test_family1_limit(family1):
    lim = flat_limit(family1)
    assert lim.cycle == Cycle.point(Q, 4)
    assert quadric_shape(lim.ideals["z"]) == (1, 0)
    assert lim.ideals["y"].is_unit() and lim.ideals["x"].is_unit()
    assert limit_checks(family1, lim).passed


@pytest.mark.slow
@pytest.mark.parametrize("c", [1, 2, 3])
def test_family2_limit(c):
    fam = family2(c)
    lim = flat_limit(fam)
    assert lim.cycle == Cycle.point(Q, 4)
    a, b = quadric_shape(lim.ideals["z"])
    assert b / a == Fraction(1, c)
    assert limit_checks(fam, lim).passed


def test_limits_depend_on_the_family(family1):
    assert not same_limit(flat_limit(family1), flat_limit(family2(2)))


def test_quadric_shape_reading():
    F0 = parse("v^2 - u^2 - u^3", UV)
    cube = [parse(m, UV) for m in ("u^3", "u^2*v", "u*v^2", "v^3")]
    I = Ideal([parse("2*u*v + v^2", UV), F0] + cube)
    assert quadric_shape(I) == (1, Fraction(1, 2))
    assert quadric_shape(Ideal([parse("u", UV), parse("v", UV)])) is None


def test_degenerate_special_fiber():
    names = ("x", "y", "z", "t")
    # on x = 0 the section x dies, so the special fiber is not strongly nondegenerate
    F = parse("x^2*z - x*y^2 + t*z^3", names)
    comps = [parse("x", names[:3]), parse("x*z - y^2", names[:3])]
    fam = FamilySystem(F, None, [parse("x", names), parse("y", names)], special_components=comps)
    with pytest.raises(DegenerateSystem):
        flat_limit(fam)
