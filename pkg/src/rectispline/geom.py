"""Planar primitives: points, segments, and circular-arc edges.

An ``ArcEdge`` is one splinegon edge.  ``bulge`` is the signed ratio of
sagitta to half-chord: 0 means a straight segment, positive bulges to the
left of the directed chord, negative to the right.  ``abs(bulge) <= 1``
keeps every arc at or below a semicircle, so each edge has at most one
interior horizontal and one interior vertical tangent point and the region
between arc and chord is convex.  All edge queries here are closed-form.
"""

from __future__ import annotations

import math
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import PointNotOnEdge

Point = Tuple[float, float]

TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# scalar / vector helpers


def dist(a: Point, b: Point) -> float:
    return math.hypot(b[0] - a[0], b[1] - a[1])


def l1(a: Point, b: Point) -> float:
    return abs(b[0] - a[0]) + abs(b[1] - a[1])


def cross(o: Point, a: Point, b: Point) -> float:
    """Signed area of the parallelogram (a-o) x (b-o); >0 means b left of oa."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lerp(a: Point, b: Point, t: float) -> Point:
    return (a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t)


def norm_angle(a: float) -> float:
    """Wrap to (-pi, pi]."""
    a = math.fmod(a, TWO_PI)
    if a <= -math.pi:
        a += TWO_PI
    elif a > math.pi:
        a -= TWO_PI
    return a


def points_close(a: Point, b: Point, eps: float) -> bool:
    return abs(a[0] - b[0]) <= eps and abs(a[1] - b[1]) <= eps


def seg_seg_intersections(
    p1: Point, p2: Point, q1: Point, q2: Point, eps: float = 1e-12
) -> List[Point]:
    """Proper and touching intersection points of two segments (0 or 1;
    collinear overlap reports the two overlap endpoints)."""
    r = (p2[0] - p1[0], p2[1] - p1[1])
    s = (q2[0] - q1[0], q2[1] - q1[1])
    denom = r[0] * s[1] - r[1] * s[0]
    qp = (q1[0] - p1[0], q1[1] - p1[1])
    scale = max(abs(r[0]), abs(r[1]), abs(s[0]), abs(s[1]), 1.0)
    if abs(denom) <= eps * scale * scale:
        # parallel; check collinear overlap
        if abs(qp[0] * r[1] - qp[1] * r[0]) > eps * scale * scale:
            return []
        rr = r[0] * r[0] + r[1] * r[1]
        if rr <= eps * eps:
            return []
        t0 = (qp[0] * r[0] + qp[1] * r[1]) / rr
        t1 = t0 + (s[0] * r[0] + s[1] * r[1]) / rr
        lo, hi = min(t0, t1), max(t0, t1)
        lo, hi = max(lo, 0.0), min(hi, 1.0)
        if lo > hi:
            return []
        pts = [lerp(p1, p2, lo)]
        if hi - lo > eps:
            pts.append(lerp(p1, p2, hi))
        return pts
    t = (qp[0] * s[1] - qp[1] * s[0]) / denom
    u = (qp[0] * r[1] - qp[1] * r[0]) / denom
    tol = eps
    if -tol <= t <= 1.0 + tol and -tol <= u <= 1.0 + tol:
        return [lerp(p1, p2, min(max(t, 0.0), 1.0))]
    return []


# ---------------------------------------------------------------------------
# the arc edge


class ArcEdge:
    """One splinegon edge: a directed chord plus a bulge.

    For curved edges the supporting circle, the start/end angles and the
    signed sweep are cached at construction.  Positive bulge means the arc
    lies left of the chord, which makes the start-to-end traversal clockwise
    (sweep < 0); negative bulge the opposite.
    """

    __slots__ = (
        "start",
        "end",
        "bulge",
        "center",
        "radius",
        "a0",
        "sweep",
        "_bbox",
    )

    def __init__(self, start: Point, end: Point, bulge: float = 0.0):
        if start == end:
            raise ValueError("degenerate edge: start == end")
        if abs(bulge) > 1.0 + 1e-12:
            raise ValueError(f"|bulge| must be <= 1, got {bulge}")
        self.start = (float(start[0]), float(start[1]))
        self.end = (float(end[0]), float(end[1]))
        self.bulge = float(bulge)
        if self.is_straight:
            self.center = None
            self.radius = 0.0
            self.a0 = 0.0
            self.sweep = 0.0
        else:
            b = self.bulge
            dx = self.end[0] - self.start[0]
            dy = self.end[1] - self.start[1]
            c = math.hypot(dx, dy)
            sag = abs(b) * c / 2.0
            r = (c * c / 4.0 + sag * sag) / (2.0 * sag)
            mx = (self.start[0] + self.end[0]) / 2.0
            my = (self.start[1] + self.end[1]) / 2.0
            # center sits on the opposite side of the chord from the bulge
            sign = 1.0 if b > 0 else -1.0
            self.center = (mx + sign * (dy / c) * (r - sag), my - sign * (dx / c) * (r - sag))
            self.radius = r
            self.a0 = math.atan2(self.start[1] - self.center[1], self.start[0] - self.center[0])
            self.sweep = -4.0 * math.atan(b)
        self._bbox = None

    # -- basic queries ------------------------------------------------------

    @property
    def is_straight(self) -> bool:
        return self.bulge == 0.0

    def point_at(self, t: float) -> Point:
        if self.is_straight:
            return lerp(self.start, self.end, t)
        if t <= 0.0:
            return self.start
        if t >= 1.0:
            return self.end
        a = self.a0 + t * self.sweep
        return (
            self.center[0] + self.radius * math.cos(a),
            self.center[1] + self.radius * math.sin(a),
        )

    def tangent_at(self, t: float) -> Point:
        """Unit tangent in the traversal direction."""
        if self.is_straight:
            d = dist(self.start, self.end)
            return ((self.end[0] - self.start[0]) / d, (self.end[1] - self.start[1]) / d)
        a = self.a0 + t * self.sweep
        s = 1.0 if self.sweep > 0 else -1.0
        return (-s * math.sin(a), s * math.cos(a))

    def param_of_angle(self, angle: float) -> Optional[float]:
        """Parameter in [0,1] whose arc point has the given circle angle, or
        None when the angle lies outside the arc's sweep."""
        if self.is_straight:
            return None
        d = norm_angle(angle - self.a0)
        if self.sweep > 0:
            if d < 0:
                d += TWO_PI
        else:
            if d > 0:
                d -= TWO_PI
        t = d / self.sweep
        if -1e-12 <= t <= 1.0 + 1e-12:
            return min(max(t, 0.0), 1.0)
        return None

    def param_of_point(self, p: Point, eps: float = 1e-9) -> Optional[float]:
        """Parameter of a point assumed near the edge; None if clearly off."""
        if self.is_straight:
            dx = self.end[0] - self.start[0]
            dy = self.end[1] - self.start[1]
            rr = dx * dx + dy * dy
            t = ((p[0] - self.start[0]) * dx + (p[1] - self.start[1]) * dy) / rr
            if -eps <= t <= 1.0 + eps:
                t = min(max(t, 0.0), 1.0)
                if dist(self.point_at(t), p) <= max(eps, 1e-7 * math.sqrt(rr)):
                    return t
            return None
        if abs(dist(p, self.center) - self.radius) > max(eps, 1e-7 * self.radius):
            return None
        return self.param_of_angle(math.atan2(p[1] - self.center[1], p[0] - self.center[0]))

    def reversed(self) -> "ArcEdge":
        return ArcEdge(self.end, self.start, -self.bulge)

    def bbox(self) -> Tuple[float, float, float, float]:
        if self._bbox is None:
            xs = [self.start[0], self.end[0]]
            ys = [self.start[1], self.end[1]]
            for _, p, _ in self.axis_tangents():
                xs.append(p[0])
                ys.append(p[1])
            self._bbox = (min(xs), min(ys), max(xs), max(ys))
        return self._bbox

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"ArcEdge({self.start}, {self.end}, bulge={self.bulge})"

    # -- tangency structure --------------------------------------------------

    def axis_tangents(self) -> List[Tuple[float, Point, str]]:
        """Interior points with horizontal ('h') or vertical ('v') tangent,
        as (t, point, kind), ordered along the arc.  Empty for segments."""
        if self.is_straight:
            return []
        out = []
        # horizontal tangent at circle top/bottom, vertical at left/right
        for angle, kind in (
            (math.pi / 2.0, "h"),
            (-math.pi / 2.0, "h"),
            (0.0, "v"),
            (math.pi, "v"),
        ):
            t = self.param_of_angle(angle)
            if t is not None and 1e-9 < t < 1.0 - 1e-9:
                out.append((t, self.point_at(t), kind))
        out.sort(key=lambda item: item[0])
        return out

    def monotone_splits(self, axis: str) -> List[float]:
        """Interior params where x- ('v' tangents) or y-monotonicity ('h')
        flips; axis is 'x' or 'y'."""
        kind = "v" if axis == "x" else "h"
        return [t for t, _, k in self.axis_tangents() if k == kind]

    # -- intersections -------------------------------------------------------

    def line_intersections(
        self, p: Point, q: Point, segment: bool = True, eps: float = 1e-12
    ) -> List[Tuple[float, float, Point]]:
        """Intersections with the line (or segment) through p,q.

        Returns (u, t, point) triples where u is the parameter along pq and t
        along the edge, ordered by u.  A tangential contact is one triple.
        """
        if self.is_straight:
            if segment:
                pts = seg_seg_intersections(p, q, self.start, self.end, eps)
            else:
                pts = _line_seg_intersections(p, q, self.start, self.end, eps)
            out = []
            for pt in pts:
                u = _param_on_line(p, q, pt)
                t = self.param_of_point(pt, eps=1e-7)
                if t is not None:
                    out.append((u, t, pt))
            out.sort(key=lambda item: item[0])
            return out

        dx = q[0] - p[0]
        dy = q[1] - p[1]
        fx = p[0] - self.center[0]
        fy = p[1] - self.center[1]
        a = dx * dx + dy * dy
        if a <= eps * eps:
            return []
        b = 2.0 * (fx * dx + fy * dy)
        c = fx * fx + fy * fy - self.radius * self.radius
        disc = b * b - 4.0 * a * c
        # tolerance scaled to the problem size for tangential grazing
        tang_tol = 4.0 * a * (self.radius * 1e-9) * max(self.radius, 1.0)
        if disc < -tang_tol:
            return []
        us: List[float]
        if disc <= tang_tol:
            us = [-b / (2.0 * a)]
        else:
            sq = math.sqrt(disc)
            us = [(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)]
        out = []
        for u in us:
            if segment and not (-1e-12 <= u <= 1.0 + 1e-12):
                continue
            pt = (p[0] + u * dx, p[1] + u * dy)
            t = self.param_of_angle(
                math.atan2(pt[1] - self.center[1], pt[0] - self.center[0])
            )
            if t is not None:
                out.append((u, t, pt))
        out.sort(key=lambda item: item[0])
        return out

    def edge_intersections(self, other: "ArcEdge", eps: float = 1e-12) -> List[Point]:
        """Intersection points with another edge (arc-arc via circle-circle)."""
        if self.is_straight:
            return [pt for _, _, pt in other.line_intersections(self.start, self.end, True, eps)]
        if other.is_straight:
            return [pt for _, _, pt in self.line_intersections(other.start, other.end, True, eps)]
        c1, r1 = self.center, self.radius
        c2, r2 = other.center, other.radius
        d = dist(c1, c2)
        if d <= eps:
            # concentric: overlap only if same radius; report shared endpoints
            out = []
            if abs(r1 - r2) <= eps:
                for p in (other.start, other.end):
                    if self.param_of_point(p, 1e-9) is not None:
                        out.append(p)
                for p in (self.start, self.end):
                    if other.param_of_point(p, 1e-9) is not None and all(
                        not points_close(p, q, 1e-12) for q in out
                    ):
                        out.append(p)
            return out
        tol = 1e-9 * max(r1, r2, 1.0)
        if d > r1 + r2 + tol or d < abs(r1 - r2) - tol:
            return []
        a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d)
        h2 = r1 * r1 - a * a
        ex = (c2[0] - c1[0]) / d
        ey = (c2[1] - c1[1]) / d
        mx = c1[0] + a * ex
        my = c1[1] + a * ey
        if h2 <= tol * max(r1, 1.0):
            cands = [(mx, my)]
        else:
            h = math.sqrt(max(h2, 0.0))
            cands = [(mx - h * ey, my + h * ex), (mx + h * ey, my - h * ex)]
        out = []
        for pt in cands:
            t1 = self.param_of_angle(math.atan2(pt[1] - c1[1], pt[0] - c1[0]))
            t2 = other.param_of_angle(math.atan2(pt[1] - c2[1], pt[0] - c2[0]))
            if t1 is not None and t2 is not None:
                out.append(pt)
        return out

    # -- tangents ------------------------------------------------------------

    def tangents_from_point(self, p: Point, eps: float = 1e-12) -> List[Tuple[Point, Point]]:
        """Tangency points of lines through p touching the arc, restricted to
        the arc extent, as (point-on-arc, unit direction of tangent line)."""
        if self.is_straight:
            return []
        dx = p[0] - self.center[0]
        dy = p[1] - self.center[1]
        d = math.hypot(dx, dy)
        r = self.radius
        if d < r * (1.0 - 1e-12):
            return []
        base = math.atan2(dy, dx)
        if d <= r * (1.0 + 1e-12):
            offs = [0.0]  # p on the circle: tangency at p itself
        else:
            off = math.acos(min(r / d, 1.0))
            offs = [off, -off]
        out = []
        for o in offs:
            ang = base + o
            t = self.param_of_angle(ang)
            if t is None:
                continue
            pt = self.point_at(t)
            tan = self.tangent_at(t)
            out.append((pt, tan))
        return out

    def l1_length(self, t0: float = 0.0, t1: float = 1.0) -> float:
        """L1 length of the section [t0, t1], summed over axis-monotone runs."""
        if t1 < t0:
            t0, t1 = t1, t0
        cuts = [t0]
        for t, _, _ in self.axis_tangents():
            if t0 + 1e-12 < t < t1 - 1e-12:
                cuts.append(t)
        cuts.append(t1)
        total = 0.0
        for a, b in zip(cuts[:-1], cuts[1:]):
            pa = self.point_at(a)
            pb = self.point_at(b)
            total += l1(pa, pb)
        return total

    # -- monotone-piece coordinate solves -------------------------------------

    def x_at_param(self, t: float) -> float:
        return self.point_at(t)[0]

    def y_at_param(self, t: float) -> float:
        return self.point_at(t)[1]

    def params_at_x(self, x: float) -> List[float]:
        """Edge params where the edge crosses the vertical line at x."""
        if self.is_straight:
            x0, x1 = self.start[0], self.end[0]
            if x0 == x1:
                return []
            t = (x - x0) / (x1 - x0)
            return [t] if -1e-12 <= t <= 1 + 1e-12 else []
        dx = x - self.center[0]
        if abs(dx) > self.radius:
            return []
        dy = math.sqrt(max(self.radius * self.radius - dx * dx, 0.0))
        out = []
        for y in (self.center[1] + dy, self.center[1] - dy):
            t = self.param_of_angle(math.atan2(y - self.center[1], dx))
            if t is not None:
                out.append(t)
            if dy == 0.0:
                break
        return sorted(set(out))

    def params_at_y(self, y: float) -> List[float]:
        if self.is_straight:
            y0, y1 = self.start[1], self.end[1]
            if y0 == y1:
                return []
            t = (y - y0) / (y1 - y0)
            return [t] if -1e-12 <= t <= 1 + 1e-12 else []
        dy = y - self.center[1]
        if abs(dy) > self.radius:
            return []
        dx = math.sqrt(max(self.radius * self.radius - dy * dy, 0.0))
        out = []
        for x in (self.center[0] + dx, self.center[0] - dx):
            t = self.param_of_angle(math.atan2(dy, x - self.center[0]))
            if t is not None:
                out.append(t)
            if dx == 0.0:
                break
        return sorted(set(out))

    def sample(self, n: int, t0: float = 0.0, t1: float = 1.0) -> List[Point]:
        """n+1 points across [t0, t1] (exact endpoints)."""
        return [self.point_at(t0 + (t1 - t0) * i / n) for i in range(n + 1)]


# ---------------------------------------------------------------------------
# free functions mirroring the edge-primitive surface


def axis_tangent_points(edge: ArcEdge) -> List[Point]:
    """Interior points of the edge with a horizontal or vertical tangent."""
    return [p for _, p, _ in edge.axis_tangents()]


def edge_line_intersections(
    edge: ArcEdge, p: Point, q: Point, segment: bool = True
) -> List[Point]:
    """Intersection points of an edge with a line or segment, ordered along
    the line; tangential contact is reported once."""
    return [pt for _, _, pt in edge.line_intersections(p, q, segment=segment)]


def tangents_point_edge(p: Point, edge: ArcEdge) -> List[Tuple[Point, Point]]:
    """Tangency points (with line directions) of tangents from p to the edge."""
    return edge.tangents_from_point(p)


def common_tangents(a: ArcEdge, b: ArcEdge) -> List[Tuple[Point, Point]]:
    """Bitangent contact pairs between two disjoint edges, restricted to both
    extents.  Arc-arc uses circle-circle bitangents; arc-segment uses tangents
    through the segment endpoints; segment-segment has no interior tangency.
    """
    if a.is_straight and b.is_straight:
        return []
    if a.is_straight:
        return [(q, pt) for (pt, q) in common_tangents(b, a)]
    if b.is_straight:
        out = []
        for q in (b.start, b.end):
            for pt, _ in a.tangents_from_point(q):
                out.append((pt, q))
        return out

    out = []
    c1, r1 = a.center, a.radius
    c2, r2 = b.center, b.radius
    d = dist(c1, c2)
    if d < 1e-12:
        return []
    base = math.atan2(c2[1] - c1[1], c2[0] - c1[0])
    # outer tangents: both contacts on the same side; inner: opposite sides
    for s2, rr in ((1.0, r1 - r2), (-1.0, r1 + r2)):
        if abs(rr) > d:
            continue
        phi = math.acos(max(min(rr / d, 1.0), -1.0))
        for sign in (1.0, -1.0):
            a1 = base + sign * phi
            p1 = (c1[0] + r1 * math.cos(a1), c1[1] + r1 * math.sin(a1))
            a2 = a1 if s2 > 0 else a1 + math.pi
            p2 = (c2[0] + r2 * math.cos(a2), c2[1] + r2 * math.sin(a2))
            t1 = a.param_of_angle(a1)
            t2 = b.param_of_angle(a2)
            if t1 is not None and t2 is not None:
                out.append((p1, p2))
    # dedupe tangencies that coincide (e.g. equal radii degeneracies)
    uniq: List[Tuple[Point, Point]] = []
    for pair in out:
        if all(
            not (points_close(pair[0], u[0], 1e-9) and points_close(pair[1], u[1], 1e-9))
            for u in uniq
        ):
            uniq.append(pair)
    return uniq


def l1_length_along_edge(edge: ArcEdge, p: Point, q: Point) -> float:
    """L1 length along the edge between two points on it."""
    tp = edge.param_of_point(p, eps=1e-7)
    tq = edge.param_of_point(q, eps=1e-7)
    if tp is None or tq is None:
        raise PointNotOnEdge(f"point not on edge: {p if tp is None else q}")
    return edge.l1_length(tp, tq)


# ---------------------------------------------------------------------------
# small internal helpers


def _param_on_line(p: Point, q: Point, pt: Point) -> float:
    dx = q[0] - p[0]
    dy = q[1] - p[1]
    if abs(dx) >= abs(dy):
        return (pt[0] - p[0]) / dx if dx != 0 else 0.0
    return (pt[1] - p[1]) / dy if dy != 0 else 0.0


def _line_seg_intersections(
    lp: Point, lq: Point, s1: Point, s2: Point, eps: float
) -> List[Point]:
    """Intersections of the infinite line lp-lq with segment s1-s2."""
    r = (lq[0] - lp[0], lq[1] - lp[1])
    s = (s2[0] - s1[0], s2[1] - s1[1])
    denom = r[0] * s[1] - r[1] * s[0]
    scale = max(abs(r[0]), abs(r[1]), abs(s[0]), abs(s[1]), 1.0)
    qp = (s1[0] - lp[0], s1[1] - lp[1])
    if abs(denom) <= eps * scale * scale:
        if abs(qp[0] * r[1] - qp[1] * r[0]) > eps * scale * scale:
            return []
        return [s1, s2]
    u = (qp[0] * r[1] - qp[1] * r[0]) / denom
    if -1e-12 <= u <= 1.0 + 1e-12:
        return [lerp(s1, s2, min(max(u, 0.0), 1.0))]
    return []


def bbox_union(boxes: Iterable[Tuple[float, float, float, float]]):
    xs0, ys0, xs1, ys1 = zip(*boxes)
    return (min(xs0), min(ys0), max(xs1), max(ys1))
