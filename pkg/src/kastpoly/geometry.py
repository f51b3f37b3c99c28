"""Exact planar predicates over rational coordinates."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Tuple

Point = Tuple[Fraction, Fraction]


def as_point(x, y) -> Point:
    return (Fraction(x), Fraction(y))


def orient(a: Point, b: Point, c: Point) -> Fraction:
    """Twice the signed area of triangle abc; positive when counterclockwise."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def on_segment(p: Point, a: Point, b: Point) -> bool:
    """True if p lies on the closed segment ab."""
    if orient(a, b, p) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True if closed segments ab and cd share any point."""
    d1 = orient(c, d, a)
    d2 = orient(c, d, b)
    d3 = orient(a, b, c)
    d4 = orient(a, b, d)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True
    return on_segment(a, c, d) or on_segment(b, c, d) or on_segment(c, a, b) or on_segment(d, a, b)


def crossing(p: Point, a: Point, b: Point) -> int:
    """Signed crossing of the rightward ray from p by the directed segment a->b.

    Summed over a closed chain this is the winding number around p.
    Half-open in y so shared endpoints are counted once.
    """
    if a[1] <= p[1]:
        if b[1] > p[1] and orient(a, b, p) > 0:
            return 1
    elif b[1] <= p[1] and orient(a, b, p) < 0:
        return -1
    return 0


def winding_number(p: Point, polygon: Sequence[Point]) -> int:
    """Winding number of the closed polygon (implicitly closed) around p."""
    n = len(polygon)
    return sum(crossing(p, polygon[i], polygon[(i + 1) % n]) for i in range(n))


def on_polygon(p: Point, polygon: Sequence[Point]) -> bool:
    n = len(polygon)
    return any(on_segment(p, polygon[i], polygon[(i + 1) % n]) for i in range(n))


def strictly_inside(p: Point, polygon: Sequence[Point]) -> bool:
    return not on_polygon(p, polygon) and winding_number(p, polygon) != 0


def chain_winding(p: Point, segments: Iterable[Tuple[Point, Point, int]]) -> int:
    """Winding number of a closed 1-chain given as (start, end, multiplicity) segments."""
    return sum(k * crossing(p, a, b) for a, b, k in segments)


def signed_area2(polygon: Sequence[Point]) -> Fraction:
    n = len(polygon)
    return sum(
        (polygon[i][0] * polygon[(i + 1) % n][1] - polygon[(i + 1) % n][0] * polygon[i][1] for i in range(n)),
        Fraction(0),
    )
