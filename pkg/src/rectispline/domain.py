"""Splinegon obstacles, scenes, and domain validation.

A splinegon is stored as a cyclic sequence of :class:`ArcEdge`; the chords of
its edges form the carrier polygon.  Boundaries are normalized to
counterclockwise orientation (interior on the left).  A validated domain is
immutable and caches carrier polygons, convex hulls and the bounding box.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import geom
from .config import GP_DEFAULT, GP_PERTURB, GP_STRICT, RunConfig, DEFAULT_CONFIG
from .errors import (
    AxisParallelEdge,
    CarrierIntersectsObstacle,
    EdgeNotInSplinegon,
    EndpointInsideCarrier,
    EndpointInsideObstacle,
    NonSimpleBoundary,
    OverlappingObstacles,
    SharedCoordinate,
    ValidationError,
)
from .geom import ArcEdge, Point

CONCAVE_IN = "concave-in"
CONCAVE_OUT = "concave-out"


class Splinegon:
    """One obstacle: a simple closed curve of arc edges."""

    def __init__(self, edges: Sequence[ArcEdge], id: str = ""):
        if len(edges) < 3:
            raise ValueError("splinegon needs at least 3 edges")
        for a, b in zip(edges, list(edges[1:]) + [edges[0]]):
            if a.end != b.start:
                raise ValueError("edges do not close up into a cycle")
        self.edges: List[ArcEdge] = list(edges)
        self.id = id

    @property
    def vertices(self) -> List[Point]:
        return [e.start for e in self.edges]

    def carrier_area(self) -> float:
        """Signed area of the carrier polygon (positive = CCW)."""
        s = 0.0
        for e in self.edges:
            s += e.start[0] * e.end[1] - e.end[0] * e.start[1]
        return s / 2.0

    def normalized(self) -> "Splinegon":
        """Counterclockwise copy (reverses the cycle if stored clockwise)."""
        if self.carrier_area() >= 0:
            return self
        rev = [e.reversed() for e in reversed(self.edges)]
        return Splinegon(rev, id=self.id)

    def bbox(self) -> Tuple[float, float, float, float]:
        return geom.bbox_union(e.bbox() for e in self.edges)

    def y_monotone_pieces(self) -> List[Tuple[int, float, float]]:
        """(edge index, t0, t1) pieces each monotone in y."""
        out = []
        for i, e in enumerate(self.edges):
            cuts = [0.0] + e.monotone_splits("y") + [1.0]
            for a, b in zip(cuts[:-1], cuts[1:]):
                out.append((i, a, b))
        return out

    def contains(self, p: Point, eps: float = 1e-12) -> bool:
        """Strict interior test by crossing parity of a +x ray.

        Uses y-monotone pieces with a half-open [ylo, yhi) convention so
        vertex and tangency grazing never double-counts.
        """
        crossings = 0
        for i, t0, t1 in self.y_monotone_pieces():
            e = self.edges[i]
            y0 = e.point_at(t0)[1]
            y1 = e.point_at(t1)[1]
            ylo, yhi = (y0, y1) if y0 < y1 else (y1, y0)
            if not (ylo <= p[1] < yhi):
                continue
            for t in e.params_at_y(p[1]):
                if not (min(t0, t1) - 1e-9 <= t <= max(t0, t1) + 1e-9):
                    continue
                if e.point_at(t)[0] > p[0] + eps:
                    crossings += 1
                break  # a y-monotone piece crosses a given y at most once
        return crossings % 2 == 1

    def on_boundary(self, p: Point, eps: float) -> bool:
        for e in self.edges:
            t = e.param_of_point(p, eps=eps)
            if t is not None and geom.dist(e.point_at(t), p) <= eps:
                return True
        return False


def classify_edge(s: Splinegon, e: ArcEdge) -> str:
    """Concave-in iff the chord-arc region lies inside the splinegon."""
    idx = None
    for i, edge in enumerate(s.edges):
        if edge is e:
            idx = i
            break
    if idx is None:
        raise EdgeNotInSplinegon("edge does not belong to this splinegon")
    if e.bulge == 0.0:
        return CONCAVE_IN  # degenerate empty region, concave-in by convention
    ccw = s.carrier_area() >= 0
    # CCW boundary has the interior on the left; a bulge to the right
    # (negative) pushes the boundary outward, keeping the region inside S.
    bulges_left = e.bulge > 0
    interior_left = ccw
    return CONCAVE_IN if bulges_left != interior_left else CONCAVE_OUT


def splinegon_extrema(s: Splinegon) -> Tuple[Point, Point]:
    """(lowest point, highest point) of the boundary in y."""
    best_min: Optional[Point] = None
    best_max: Optional[Point] = None
    for e in s.edges:
        cands = [e.start, e.end] + [p for _, p, k in e.axis_tangents() if k == "h"]
        for p in cands:
            if best_min is None or p[1] < best_min[1]:
                best_min = p
            if best_max is None or p[1] > best_max[1]:
                best_max = p
    return best_min, best_max


def convex_hull(points: Sequence[Point]) -> List[Point]:
    """Monotone-chain hull, CCW, no duplicate endpoint."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return list(pts)
    lower: List[Point] = []
    for p in pts:
        while len(lower) >= 2 and geom.cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: List[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and geom.cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def point_in_polygon(p: Point, poly: Sequence[Point], eps: float = 0.0) -> bool:
    """Strict interior test (even-odd, half-open in y)."""
    inside = False
    n = len(poly)
    for i in range(n):
        a = poly[i]
        b = poly[(i + 1) % n]
        if (a[1] <= p[1]) != (b[1] <= p[1]):
            x = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1])
            if x > p[0] + eps:
                inside = not inside
    return inside


def point_on_polygon(p: Point, poly: Sequence[Point], eps: float) -> bool:
    n = len(poly)
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        if geom.dist(a, b) < eps:
            continue
        ints = geom.seg_seg_intersections(a, b, (p[0] - eps, p[1]), (p[0] + eps, p[1]))
        if any(geom.dist(q, p) <= eps for q in ints):
            return True
        # direct distance check
        t = max(0.0, min(1.0, ((p[0] - a[0]) * (b[0] - a[0]) + (p[1] - a[1]) * (b[1] - a[1]))
                / (geom.dist(a, b) ** 2)))
        if geom.dist(geom.lerp(a, b, t), p) <= eps:
            return True
    return False


@dataclass
class SplinegonalDomain:
    """Raw scene: obstacles plus source and target."""

    obstacles: List[Splinegon]
    source: Point
    target: Point
    bounding_box: Optional[Tuple[float, float, float, float]] = None


class ValidatedDomain:
    """Scene with every invariant checked and geometry caches built."""

    def __init__(
        self,
        obstacles: List[Splinegon],
        source: Point,
        target: Point,
        bounding_box: Tuple[float, float, float, float],
        config: RunConfig,
    ):
        self.obstacles = obstacles
        self.source = source
        self.target = target
        self.bounding_box = bounding_box
        self.config = config
        w = bounding_box[2] - bounding_box[0]
        h = bounding_box[3] - bounding_box[1]
        self.diag = math.hypot(w, h)
        self.eps = config.eps_factor * self.diag
        self.carriers: Dict[str, List[Point]] = {
            s.id: [e.start for e in s.edges] for s in obstacles
        }
        self.hulls: Dict[str, List[Point]] = {
            s.id: convex_hull(self.carriers[s.id]) for s in obstacles
        }
        self.n = sum(len(s.edges) for s in obstacles)
        self.h = len(obstacles)

    def obstacle(self, oid: str) -> Splinegon:
        for s in self.obstacles:
            if s.id == oid:
                return s
        raise KeyError(oid)

    def in_free_space(self, p: Point) -> bool:
        """Closure convention: boundary points are free."""
        return not any(s.contains(p) and not s.on_boundary(p, self.eps) for s in self.obstacles)

    def strictly_inside_any(self, p: Point) -> Optional[str]:
        for s in self.obstacles:
            if s.contains(p) and not s.on_boundary(p, self.eps):
                return s.id
        return None


def compute_bounding_box(
    obstacles: Sequence[Splinegon], source: Point, target: Point, margin_frac: float
) -> Tuple[float, float, float, float]:
    boxes = [s.bbox() for s in obstacles]
    boxes.append((source[0], source[1], source[0], source[1]))
    boxes.append((target[0], target[1], target[0], target[1]))
    x0, y0, x1, y1 = geom.bbox_union(boxes)
    m = margin_frac * max(x1 - x0, y1 - y0, 1.0)
    return (x0 - m, y0 - m, x1 + m, y1 + m)


def _boundary_pairs_intersect(a: Splinegon, b: Splinegon, eps: float) -> bool:
    for ea in a.edges:
        ba = ea.bbox()
        for eb in b.edges:
            bb = eb.bbox()
            if ba[2] < bb[0] - eps or bb[2] < ba[0] - eps:
                continue
            if ba[3] < bb[1] - eps or bb[3] < ba[1] - eps:
                continue
            if ea.edge_intersections(eb):
                return True
    return False


def _self_intersects(s: Splinegon, eps: float) -> bool:
    n = len(s.edges)
    for i in range(n):
        for j in range(i + 1, n):
            pts = s.edges[i].edge_intersections(s.edges[j])
            adjacent = j == i + 1 or (i == 0 and j == n - 1)
            for p in pts:
                if adjacent:
                    # adjacent edges may only meet at the shared vertex
                    shared = s.edges[i].end if j == i + 1 else s.edges[j].end
                    if not geom.points_close(p, shared, max(eps, 1e-9)):
                        return True
                else:
                    return True
    return False


def _perturbed(obstacles: List[Splinegon], source: Point, target: Point, eps: float):
    """Deterministic coordinate nudge, lexicographic by (obstacle id, index)."""
    out = []
    for k, s in enumerate(sorted(obstacles, key=lambda o: o.id)):
        verts = [e.start for e in s.edges]
        bulges = [e.bulge for e in s.edges]
        nudged = [
            (x + eps * (k + 1) * (i + 1), y + eps * (k + 1) * (i + 2))
            for i, (x, y) in enumerate(verts)
        ]
        edges = [
            ArcEdge(nudged[i], nudged[(i + 1) % len(nudged)], bulges[i])
            for i in range(len(nudged))
        ]
        out.append(Splinegon(edges, id=s.id))
    return out, source, target


def validate_domain(
    raw: SplinegonalDomain, config: RunConfig = DEFAULT_CONFIG
) -> ValidatedDomain:
    """Check every scene invariant and return the immutable validated domain."""
    obstacles = [s.normalized() for s in raw.obstacles]
    ids = [s.id for s in obstacles]
    if len(set(ids)) != len(ids):
        raise ValidationError("duplicate obstacle ids")
    source = raw.source
    target = raw.target
    if source == target:
        raise ValidationError("source equals target")

    box = raw.bounding_box or compute_bounding_box(
        obstacles, source, target, config.bbox_margin_frac
    )
    diag = math.hypot(box[2] - box[0], box[3] - box[1])
    eps = config.eps_factor * diag

    if config.general_position == GP_PERTURB:
        obstacles, source, target = _perturbed(obstacles, source, target, eps * 10)

    # general-position policy
    for s in obstacles:
        for e in s.edges:
            dx = abs(e.end[0] - e.start[0])
            dy = abs(e.end[1] - e.start[1])
            axis_parallel = dx <= eps or dy <= eps
            if axis_parallel and e.is_straight and config.general_position != GP_PERTURB:
                raise AxisParallelEdge(
                    f"obstacle {s.id}: straight edge {e.start}-{e.end} is axis-parallel"
                )
            if axis_parallel and config.general_position == GP_STRICT:
                raise AxisParallelEdge(
                    f"obstacle {s.id}: edge chord {e.start}-{e.end} is axis-parallel"
                )
    if config.general_position == GP_STRICT:
        seen_x: Dict[float, Point] = {}
        seen_y: Dict[float, Point] = {}
        for s in obstacles:
            for v in s.vertices:
                for table, coord in ((seen_x, v[0]), (seen_y, v[1])):
                    prev = table.get(round(coord / max(eps, 1e-300)))
                    if prev is not None and prev != v:
                        raise SharedCoordinate(f"vertices {prev} and {v} share a coordinate")
                    table[round(coord / max(eps, 1e-300))] = v

    for s in obstacles:
        if len(s.vertices) < 3:
            raise NonSimpleBoundary(f"obstacle {s.id}: fewer than 3 vertices")
        if _self_intersects(s, eps):
            raise NonSimpleBoundary(f"obstacle {s.id}: boundary self-intersects")

    # pairwise disjointness, including carrier-vs-splinegon
    for i in range(len(obstacles)):
        for j in range(len(obstacles)):
            if i == j:
                continue
            a, b = obstacles[i], obstacles[j]
            if i < j:
                if _boundary_pairs_intersect(a, b, eps):
                    raise OverlappingObstacles(f"obstacles {a.id} and {b.id} intersect")
                if a.contains(b.vertices[0]) or b.contains(a.vertices[0]):
                    raise OverlappingObstacles(f"obstacles {a.id} and {b.id} are nested")
            carrier = [e.start for e in a.edges]
            for k in range(len(carrier)):
                seg = ArcEdge(carrier[k], carrier[(k + 1) % len(carrier)], 0.0) \
                    if carrier[k] != carrier[(k + 1) % len(carrier)] else None
                if seg is None:
                    continue
                for eb in b.edges:
                    if seg.edge_intersections(eb):
                        raise CarrierIntersectsObstacle(
                            f"carrier of {a.id} intersects obstacle {b.id}"
                        )
            if any(b.contains(v) and not b.on_boundary(v, eps) for v in carrier):
                raise CarrierIntersectsObstacle(
                    f"carrier of {a.id} has a vertex inside obstacle {b.id}"
                )

    for name, p in (("source", source), ("target", target)):
        for s in obstacles:
            if s.contains(p) and not s.on_boundary(p, eps):
                raise EndpointInsideObstacle(f"{name} lies inside obstacle {s.id}")
            if point_in_polygon(p, [e.start for e in s.edges]):
                raise EndpointInsideCarrier(f"{name} lies inside carrier of {s.id}")

    return ValidatedDomain(obstacles, source, target, box, config)
