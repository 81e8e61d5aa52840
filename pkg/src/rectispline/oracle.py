"""Brute-force L1 distance oracle: Dijkstra on a 4-connected lattice.

Slow by design, exact enough to validate every distance claim at desk scale.
A cell is blocked iff its center is strictly inside an obstacle (conservative
rasterization); 4-connectivity keeps the estimate an upper-biased L1 value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .domain import ValidatedDomain
from .errors import UnreachableOnGrid
from .geom import Point

_OFFSETS = [(1, 0), (-1, 0), (0, 1), (0, -1)]


@dataclass
class LatticeGraph:
    resolution: float
    x0: float
    y0: float
    blocked: np.ndarray  # [rows=y, cols=x], True = blocked

    @property
    def shape(self) -> Tuple[int, int]:
        return self.blocked.shape

    def cell_of(self, p: Point) -> Tuple[int, int]:
        j = int(round((p[0] - self.x0) / self.resolution))
        i = int(round((p[1] - self.y0) / self.resolution))
        return (i, j)

    def center_of(self, cell: Tuple[int, int]) -> Point:
        i, j = cell
        return (self.x0 + j * self.resolution, self.y0 + i * self.resolution)


def rasterize(domain: ValidatedDomain, r: float) -> LatticeGraph:
    """Exact center-in-obstacle rasterization, vectorized per column.

    For every obstacle and every grid column, the crossing ordinates of the
    vertical line with the boundary are collected (closed form per edge) and
    interior runs are filled by parity.
    """
    bx0, by0, bx1, by1 = domain.bounding_box
    cols = int(math.floor((bx1 - bx0) / r)) + 1
    rows = int(math.floor((by1 - by0) / r)) + 1
    blocked = np.zeros((rows, cols), dtype=bool)
    xs = bx0 + np.arange(cols) * r

    for s in domain.obstacles:
        ox0, oy0, ox1, oy1 = s.bbox()
        j_lo = max(0, int(math.ceil((ox0 - bx0) / r)))
        j_hi = min(cols - 1, int(math.floor((ox1 - bx0) / r)))
        if j_hi < j_lo:
            continue
        # x-monotone pieces with half-open [xlo, xhi) so parity is robust
        col_cross: List[List[float]] = [[] for _ in range(j_hi - j_lo + 1)]
        for ei, e in enumerate(s.edges):
            cuts = [0.0] + e.monotone_splits("x") + [1.0]
            for a, b in zip(cuts[:-1], cuts[1:]):
                pa, pb = e.point_at(a), e.point_at(b)
                xlo, xhi = (pa[0], pb[0]) if pa[0] < pb[0] else (pb[0], pa[0])
                ja = max(j_lo, int(math.ceil((xlo - bx0) / r)))
                jb = min(j_hi, int(math.floor((xhi - bx0) / r)))
                if jb < ja:
                    continue
                sub = xs[ja : jb + 1]
                ys = _piece_y_at_x(e, a, b, sub)
                for k, yv in enumerate(ys):
                    if yv is not None and xlo <= sub[k] < xhi:
                        col_cross[ja + k - j_lo].append(yv)
        for k, crossings in enumerate(col_cross):
            if not crossings:
                continue
            crossings.sort()
            j = j_lo + k
            for lo, hi in zip(crossings[0::2], crossings[1::2]):
                i_lo = int(math.ceil((lo - by0) / r + 1e-9))
                i_hi = int(math.floor((hi - by0) / r - 1e-9))
                if i_hi >= i_lo:
                    blocked[max(i_lo, 0) : min(i_hi, rows - 1) + 1, j] = True
    return LatticeGraph(r, bx0, by0, blocked)


def _piece_y_at_x(e, t0: float, t1: float, xs: np.ndarray) -> List[Optional[float]]:
    """y of the x-monotone piece [t0,t1] at each x (None when off-piece)."""
    out: List[Optional[float]] = []
    if e.is_straight:
        x0, y0 = e.start
        x1, y1 = e.end
        if x0 == x1:
            return [None] * len(xs)
        for x in xs:
            t = (x - x0) / (x1 - x0)
            out.append(y0 + t * (y1 - y0) if -1e-12 <= t <= 1 + 1e-12 else None)
        return out
    p0, p1 = e.point_at(t0), e.point_at(t1)
    ylo_side = (p0[1] + p1[1]) / 2.0 >= e.center[1]
    cx, cy = e.center
    for x in xs:
        dx = x - cx
        if abs(dx) > e.radius:
            out.append(None)
            continue
        dy = math.sqrt(max(e.radius * e.radius - dx * dx, 0.0))
        y = cy + dy if ylo_side else cy - dy
        t = e.param_of_angle(math.atan2(y - cy, dx))
        if t is not None and min(t0, t1) - 1e-9 <= t <= max(t0, t1) + 1e-9:
            out.append(y)
        else:
            out.append(None)
    return out


def _nearest_free(lat: LatticeGraph, cell: Tuple[int, int], radius: int = 6):
    rows, cols = lat.shape
    i0, j0 = cell
    best = None
    for di in range(-radius, radius + 1):
        for dj in range(-radius, radius + 1):
            i, j = i0 + di, j0 + dj
            if 0 <= i < rows and 0 <= j < cols and not lat.blocked[i, j]:
                d = abs(di) + abs(dj)
                if best is None or d < best[0]:
                    best = (d, (i, j))
    if best is None:
        raise UnreachableOnGrid("no free cell near the requested point")
    return best[1]


def grid_distance(
    lat: LatticeGraph, s: Point, t: Point, mask: Optional[np.ndarray] = None
) -> float:
    """Lattice Dijkstra distance (uniform weights, so BFS-equivalent)."""
    from skimage.graph import MCP

    blocked = lat.blocked if mask is None else (lat.blocked | ~mask)
    costs = np.where(blocked, np.inf, 1.0)
    sc = _nearest_free(LatticeGraph(lat.resolution, lat.x0, lat.y0, blocked), lat.cell_of(s))
    tc = _nearest_free(LatticeGraph(lat.resolution, lat.x0, lat.y0, blocked), lat.cell_of(t))
    mcp = MCP(costs, offsets=_OFFSETS, fully_connected=False)
    cum, _ = mcp.find_costs(starts=[sc], ends=[tc])
    c = cum[tc]
    if not np.isfinite(c):
        raise UnreachableOnGrid("target not reachable on the lattice")
    # cumulative cost counts cells including the start: hops = cost - 1
    return (float(c) - 1.0) * lat.resolution


def grid_oracle(domain: ValidatedDomain, r: float) -> float:
    """L1 distance estimate between source and target at resolution r."""
    lat = rasterize(domain, r)
    return grid_distance(lat, domain.source, domain.target)


def convergence_table(
    domain: ValidatedDomain, resolutions: Sequence[float]
) -> List[Tuple[float, float]]:
    return [(r, grid_oracle(domain, r)) for r in resolutions]
