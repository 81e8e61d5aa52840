"""Shared fixtures and independent brute-force oracles.

The oracles here deliberately avoid the library's closed-form machinery:
dense polylines, bisection root finding and exhaustive pair scans, so test
expectations are computed on an independent path.
"""

from __future__ import annotations

import math
from typing import Callable, List, Sequence, Tuple

import pytest

from rectispline.geom import ArcEdge, Point
from rectispline.scenes import disk3, disk3_scene

Pt = Tuple[float, float]


def dense_polyline(edge: ArcEdge, n: int = 4096, t0: float = 0.0, t1: float = 1.0) -> List[Pt]:
    return [edge.point_at(t0 + (t1 - t0) * i / n) for i in range(n + 1)]


def polyline_l1(points: Sequence[Pt]) -> float:
    return sum(
        abs(b[0] - a[0]) + abs(b[1] - a[1]) for a, b in zip(points[:-1], points[1:])
    )


def bisect_root(f: Callable[[float], float], lo: float, hi: float, iters: int = 200) -> float:
    flo = f(lo)
    for _ in range(iters):
        mid = (lo + hi) / 2.0
        fm = f(mid)
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return (lo + hi) / 2.0


def circle_line_roots_by_bisection(
    cx: float, cy: float, r: float, y: float
) -> List[float]:
    """x-roots of the unit test circle against a horizontal line, by bisection
    on f(x) = (x-cx)^2 + (y-cy)^2 - r^2 over bracketing intervals."""
    f = lambda x: (x - cx) ** 2 + (y - cy) ** 2 - r * r
    roots = []
    if abs(y - cy) > r:
        return roots
    roots.append(bisect_root(f, cx - r - 1.0, cx))
    roots.append(bisect_root(f, cx, cx + r + 1.0))
    return sorted(roots)


def dense_point_in(edge_loops: Sequence[Sequence[Pt]], p: Pt) -> bool:
    """Even-odd point-in test against dense polyline loops."""
    inside = False
    for loop in edge_loops:
        for a, b in zip(loop, list(loop[1:]) + [loop[0]]):
            if (a[1] <= p[1]) != (b[1] <= p[1]):
                x = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1])
                if x > p[0]:
                    inside = not inside
    return inside


@pytest.fixture(scope="session")
def disk3_obstacle():
    return disk3()


@pytest.fixture(scope="session")
def disk3_domain():
    return disk3_scene()
