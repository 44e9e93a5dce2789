import pytest
from hypothesis import given, strategies as st

from src.oracle.lattice_polygon import LatticePolygon, area2, hull, leg_triangle, minkowski_sum, mixed_volume
from src.utils.errors import DomainError
from tests.strategies import point_clouds

UNIT = hull([(0, 0), (1, 0), (0, 1)])
TALL = hull([(0, 0), (1, 0), (0, 2)])


def test_hull_examples():
    assert hull([(0, 0), (1, 0), (0, 1), (0, 0)]).vertices == ((0, 0), (1, 0), (0, 1))
    segment = hull([(0, 0), (2, 0), (1, 0)])
    assert segment.kind == "segment"
    assert segment.vertices == ((0, 0), (2, 0))
    assert hull([(0, 0), (1, 0), (0, 2), (1, 1)]).vertices == ((0, 0), (1, 0), (1, 1), (0, 2))
    assert hull([(3, 3)]).kind == "point"


def test_polygon_validation():
    with pytest.raises(DomainError):
        LatticePolygon(((1, 0), (0, 0), (0, 1)))
    with pytest.raises(DomainError):
        LatticePolygon(((0, 0), (0, 1), (1, 0)))
    with pytest.raises(DomainError):
        hull([])


def test_area2_examples():
    assert area2(UNIT) == 1
    assert area2(hull([(0, 0), (2, 0), (1, 2), (0, 3)])) == 7
    assert area2(hull([(0, 0)])) == 0
    assert area2(hull([(0, 0), (5, 5)])) == 0


def test_minkowski_sum_examples():
    assert minkowski_sum(UNIT, TALL).vertices == ((0, 0), (2, 0), (1, 2), (0, 3))
    assert UNIT + hull([(0, 0)]) == UNIT


def test_mixed_volume_examples():
    assert mixed_volume(UNIT, TALL) == 2
    assert mixed_volume(UNIT, hull([(2, 2)])) == 0
    assert mixed_volume(UNIT, UNIT) == 1


@pytest.mark.parametrize("a, b, c, d", [(1, 1, 1, 2), (3, 1, 2, 5), (4, 4, 1, 1), (2, 7, 7, 2)])
def test_leg_triangles(a, b, c, d):
    assert mixed_volume(leg_triangle(a, b), leg_triangle(c, d)) == max(a * d, b * c)


@given(point_clouds, point_clouds)
def test_mixed_volume_symmetric_and_nonnegative(first, second):
    a, b = hull(first), hull(second)
    assert mixed_volume(a, b) == mixed_volume(b, a) >= 0


@given(point_clouds, st.tuples(st.integers(-5, 5), st.integers(-5, 5)))
def test_translation_keeps_area(points, shift):
    moved = hull((x + shift[0], y + shift[1]) for x, y in points)
    assert area2(moved) == area2(hull(points))


@given(point_clouds, point_clouds, point_clouds)
def test_mixed_volume_grows_with_inclusion(inner, extra, other):
    smaller, larger, b = hull(inner), hull(inner + extra), hull(other)
    assert mixed_volume(smaller, b) <= mixed_volume(larger, b)


@given(point_clouds, point_clouds, point_clouds)
def test_mixed_volume_additive_under_minkowski_sum(first, second, third):
    a, b, c = hull(first), hull(second), hull(third)
    assert mixed_volume(a + b, c) == mixed_volume(a, c) + mixed_volume(b, c)
