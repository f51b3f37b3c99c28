"""Small independent oracles shared by the tests."""

from __future__ import annotations

import itertools
from pathlib import Path

DATA = Path(__file__).resolve().parent / "data"


def read(name: str) -> str:
    return (DATA / name).read_text()


def ray_inside(p, poly) -> bool:
    """Float even-odd ray test along a slightly tilted ray; fine for small lattice drawings."""
    x, y = float(p[0]), float(p[1])
    dx, dy = 1.0, 1e-3 * 3.14159
    inside = False
    n = len(poly)
    for i in range(n):
        ax, ay = (float(c) for c in poly[i])
        bx, by = (float(c) for c in poly[(i + 1) % n])
        # solve p + s*(dx,dy) = a + u*(b-a), s > 0, 0 <= u < 1
        ex, ey = bx - ax, by - ay
        den = dx * (-ey) - dy * (-ex)
        if abs(den) < 1e-15:
            continue
        rx, ry = ax - x, ay - y
        s = (rx * (-ey) - ry * (-ex)) / den
        u = (dx * ry - dy * rx) / den
        if s > 0 and 0 <= u < 1:
            inside = not inside
    return inside


def brute_matchings(g):
    """Perfect matchings by trying every edge subset of the right size."""
    if g.n != g.n_prime:
        return []
    out = []
    for sub in itertools.combinations(g.edges, g.n):
        if len({b for b, _ in sub}) == g.n and len({w for _, w in sub}) == g.n:
            out.append(frozenset(sub))
    return out
