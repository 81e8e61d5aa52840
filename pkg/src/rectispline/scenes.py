"""Canonical fixtures and the seeded random scene generator."""

from __future__ import annotations

import math
import random
from typing import List, Optional, Sequence, Tuple

from .domain import Splinegon, SplinegonalDomain
from .geom import ArcEdge, Point

TAN30 = math.tan(math.pi / 6.0)


def splinegon_from_vertices(
    vertices: Sequence[Point], bulges: Sequence[float], id: str = "S0"
) -> Splinegon:
    n = len(vertices)
    edges = [ArcEdge(vertices[i], vertices[(i + 1) % n], bulges[i]) for i in range(n)]
    return Splinegon(edges, id=id)


def disk_splinegon(
    center: Point, radius: float, k: int = 3, phase_deg: float = 90.0, id: str = "disk"
) -> Splinegon:
    """A circle split into k equal arcs; vertices CCW starting at phase_deg.

    Every edge is concave-in (the disk contains all chord-arc regions).
    """
    if k < 3:
        raise ValueError("need at least 3 vertices")
    verts = []
    for i in range(k):
        a = math.radians(phase_deg) + 2.0 * math.pi * i / k
        verts.append((center[0] + radius * math.cos(a), center[1] + radius * math.sin(a)))
    # CCW traversal bulges right of each directed chord: negative bulge
    bulge = -math.tan(math.pi / (2.0 * k))
    return splinegon_from_vertices(verts, [bulge] * k, id=id)


def disk3(id: str = "disk3") -> Splinegon:
    """Unit disk with vertices at 90, 210 and 330 degrees."""
    return disk_splinegon((0.0, 0.0), 1.0, k=3, phase_deg=90.0, id=id)


def disk3_scene() -> SplinegonalDomain:
    """The canonical regression scene: unit disk, s=(-2,0), t=(2,0)."""
    return SplinegonalDomain([disk3()], (-2.0, 0.0), (2.0, 0.0))


def notched_blob(
    center: Point,
    radius: float,
    notch_depth: float,
    notch_half_angle_deg: float = 40.0,
    rotate_deg: float = 0.0,
    bulge: float = -0.25,
    id: str = "blob",
) -> Splinegon:
    """Concave-in splinegon whose carrier has one deep reflex notch.

    The notch (pointing along +x before rotation) is where a second obstacle
    can nest to pinch a corridor closed.
    """
    half = math.radians(notch_half_angle_deg)
    rot = math.radians(rotate_deg)
    angles = [half, math.pi / 2, 5 * math.pi / 6, 7 * math.pi / 6, 3 * math.pi / 2, -half]
    verts: List[Point] = []
    for a in angles:
        verts.append(
            (
                center[0] + radius * math.cos(a + rot),
                center[1] + radius * math.sin(a + rot),
            )
        )
    # notch vertex pulled toward the center
    inner = radius - notch_depth
    verts.insert(0, (center[0] + inner * math.cos(rot), center[1] + inner * math.sin(rot)))
    # edges leaving/entering the notch stay straight so the mouth is clean
    bulges = [0.0] + [bulge] * (len(verts) - 2) + [0.0]
    return splinegon_from_vertices(verts, bulges, id=id)


def pinch_scene(gap: float = 0.12, seed: int = 0) -> SplinegonalDomain:
    """Notched obstacle with a disk nested in its mouth: one closed corridor."""
    rng = random.Random(seed)
    jitter = lambda s: (rng.random() - 0.5) * s
    blob = notched_blob(
        (0.0, 0.0),
        1.4,
        notch_depth=0.9,
        notch_half_angle_deg=46.0 + jitter(6),
        rotate_deg=jitter(10),
        bulge=-0.22 + jitter(0.08),
        id="blob",
    )
    r = 0.38 + jitter(0.08)
    cx = 1.4 - 0.9 + r + gap  # disk sits just outside the notch tip
    disk = disk_splinegon((cx + 0.35, jitter(0.05)), r, k=5, phase_deg=77.0 + jitter(20), id="plug")
    s = (-2.3, -1.7 + jitter(0.2))
    t = (2.6, 1.8 + jitter(0.2))
    return SplinegonalDomain([blob, disk], s, t)


# ---------------------------------------------------------------------------
# random scene generation


def _random_convexish_obstacle(
    rng: random.Random,
    center: Point,
    radius: float,
    n_vertices: int,
    concave_in_only: bool,
    id: str,
) -> Splinegon:
    """Star-shaped carrier with moderate radial noise and outward bulges."""
    angles = sorted(rng.uniform(0, 2 * math.pi) for _ in range(n_vertices))
    # enforce angular separation so edges are not degenerate
    for i in range(1, len(angles)):
        if angles[i] - angles[i - 1] < 0.15:
            angles[i] = angles[i - 1] + 0.15
    if 2 * math.pi - (angles[-1] - angles[0]) < 0.15:
        angles[-1] = angles[0] + 2 * math.pi - 0.16
    verts = []
    for a in angles:
        rr = radius * rng.uniform(0.72, 1.0)
        verts.append((center[0] + rr * math.cos(a), center[1] + rr * math.sin(a)))
    bulges = []
    for i in range(len(verts)):
        if concave_in_only:
            bulges.append(-rng.uniform(0.05, 0.6))
        else:
            # mostly outward, occasional gentle dent (concave-out)
            if rng.random() < 0.25:
                bulges.append(rng.uniform(0.03, 0.18))
            else:
                bulges.append(-rng.uniform(0.05, 0.5))
    return splinegon_from_vertices(verts, bulges, id=id)


def random_scene(
    seed: int,
    mode: str = "general",
    h: Optional[int] = None,
    n_target: Optional[int] = None,
    want_pinch: bool = False,
) -> SplinegonalDomain:
    """Deterministic random scene.

    Obstacles are placed by rejection sampling with a clearance margin inside
    a compact field so the lattice oracle stays affordable.  ``n_target`` is
    the approximate total vertex count, split across ``h`` obstacles.
    """
    from .config import DEFAULT_CONFIG
    from .domain import validate_domain

    rng = random.Random(seed)
    if h is None:
        h = rng.randint(1, 8)
    if n_target is None:
        n_target = rng.randint(6, 60)
    n_target = max(n_target, 3 * h)

    for attempt in range(60):
        arng = random.Random((seed, attempt, mode).__hash__() & 0xFFFFFFFF)
        obstacles: List[Splinegon] = []
        placed: List[Tuple[Point, float]] = []
        counts = _split_counts(arng, n_target, h)
        field = 1.6 + 0.55 * h
        ok = True
        if want_pinch:
            base = pinch_scene(gap=arng.uniform(0.1, 0.2), seed=arng.randint(0, 10**6))
            obstacles = list(base.obstacles)
            placed = [((0.0, 0.0), 1.5), ((1.3, 0.0), 0.6)]
        for i in range(len(obstacles), h):
            r = arng.uniform(0.35, 0.75) * (1.0 + min(counts[i], 24) / 40.0)
            for _ in range(80):
                c = (arng.uniform(-field, field), arng.uniform(-field, field))
                if all(
                    math.hypot(c[0] - pc[0], c[1] - pc[1]) > r + pr + 0.22
                    for pc, pr in placed
                ):
                    break
            else:
                ok = False
                break
            obstacles.append(
                _random_convexish_obstacle(
                    arng, c, r, counts[i], mode == "concave-in", id=f"ob{i}"
                )
            )
            placed.append((c, r))
        if not ok:
            continue
        s = _free_point(arng, placed, field, side=-1)
        t = _free_point(arng, placed, field, side=1)
        scene = SplinegonalDomain(obstacles, s, t)
        try:
            validate_domain(scene, DEFAULT_CONFIG)
        except Exception:
            continue
        return scene
    raise RuntimeError(f"could not generate a valid scene for seed {seed}")


def _split_counts(rng: random.Random, n: int, h: int) -> List[int]:
    counts = [3] * h
    rest = n - 3 * h
    for _ in range(rest):
        counts[rng.randrange(h)] += 1
    return [min(c, 64) for c in counts]


def _free_point(rng: random.Random, placed, field: float, side: int) -> Point:
    for _ in range(200):
        x = rng.uniform(0.35 * field, field + 0.6) * side
        y = rng.uniform(-field, field)
        if all(math.hypot(x - c[0], y - c[1]) > r + 0.15 for c, r in placed):
            return (x, y)
    return (side * (field + 0.8), 0.0)
