"""Exact convex lattice polygons: hulls, doubled areas, Minkowski sums and mixed volumes."""
from dataclasses import dataclass
from typing import Iterable, Tuple

from src.utils.errors import ConsistencyError, DomainError

Point = Tuple[int, int]


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True)
class LatticePolygon:
    """
    Convex hull of lattice points, counterclockwise from the lexicographic
    minimum with no three vertices collinear. One vertex is a point and two
    are a segment.
    """

    vertices: Tuple[Point, ...]

    def __post_init__(self):
        if not self.vertices:
            raise DomainError("A lattice polygon needs at least one vertex.")
        if self.vertices[0] != min(self.vertices):
            raise DomainError("Polygon must start at its lexicographic minimum.")
        n = len(self.vertices)
        if n >= 3:
            for i in range(n):
                if _cross(self.vertices[i], self.vertices[(i + 1) % n], self.vertices[(i + 2) % n]) <= 0:
                    raise DomainError(f"Vertices {self.vertices} are not strictly convex counterclockwise.")

    @property
    def kind(self) -> str:
        return {1: "point", 2: "segment"}.get(len(self.vertices), "polygon")

    @property
    def is_degenerate(self) -> bool:
        return len(self.vertices) < 3

    def __add__(self, other: "LatticePolygon") -> "LatticePolygon":
        return minkowski_sum(self, other)

    def __str__(self) -> str:
        return " ".join(f"({x},{y})" for x, y in self.vertices)


def hull(points: Iterable[Point]) -> LatticePolygon:
    """Andrew's monotone chain; collinear boundary points are dropped."""
    pts = sorted({(int(x), int(y)) for x, y in points})
    if not pts:
        raise DomainError("Cannot take the hull of no points.")
    if len(pts) == 1:
        return LatticePolygon((pts[0],))

    lower: list = []
    for pt in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], pt) <= 0:
            lower.pop()
        lower.append(pt)
    upper: list = []
    for pt in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], pt) <= 0:
            upper.pop()
        upper.append(pt)
    chain = lower[:-1] + upper[:-1]
    return LatticePolygon(tuple(chain))


def area2(polygon: LatticePolygon) -> int:
    """Twice the area; zero for points and segments."""
    if polygon.is_degenerate:
        return 0
    v = polygon.vertices
    return sum(v[i][0] * v[(i + 1) % len(v)][1] - v[(i + 1) % len(v)][0] * v[i][1] for i in range(len(v)))


def minkowski_sum(a: LatticePolygon, b: LatticePolygon) -> LatticePolygon:
    return hull((x1 + x2, y1 + y2) for x1, y1 in a.vertices for x2, y2 in b.vertices)


def mixed_volume(a: LatticePolygon, b: LatticePolygon) -> int:
    """
    Mixed volume normalised so that it counts solutions of a generic system:
    (area2(a + b) - area2(a) - area2(b)) / 2.
    """
    difference = area2(minkowski_sum(a, b)) - area2(a) - area2(b)
    if difference % 2:
        raise ConsistencyError(f"Odd doubled mixed area {difference} for {a} and {b}.")
    return difference // 2


def leg_triangle(a: int, b: int) -> LatticePolygon:
    """conv{(0,0), (a,0), (0,b)}."""
    if a < 0 or b < 0:
        raise DomainError(f"Triangle legs must be nonnegative, got ({a}, {b}).")
    return hull([(0, 0), (a, 0), (0, b)])
