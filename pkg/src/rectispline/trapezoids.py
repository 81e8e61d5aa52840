"""Vertical trapezoidal decomposition of the free space.

Events are splinegon vertices, interior vertical-tangent points, and the two
path endpoints (treated as point obstacles).  Portals are the vertical
extensions from events into adjacent free space.  A portal is a *junction*
portal when its generating event is locally x-extreme (or a point obstacle);
all other portals are *internal* and get merged away, which makes the
corridor/junction structure depend only on extreme points.  That keeps the
decomposition of a splinegonal domain and of its derived polygonal domain
aligned portal-for-portal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .domain import ValidatedDomain
from .errors import DegenerateGeometry
from .geom import ArcEdge, Point


@dataclass
class Piece:
    """x-monotone boundary piece of one edge."""

    obstacle_id: str
    edge_index: int
    edge: ArcEdge
    t_lo: float
    t_hi: float
    left_pt: Point
    right_pt: Point
    t_left: float
    t_right: float
    free_above: bool
    branch_up: bool  # arc pieces: on the upper half of their circle

    def y_at(self, x: float) -> float:
        if self.edge.is_straight:
            x0, y0 = self.edge.start
            x1, y1 = self.edge.end
            return y0 + (x - x0) * (y1 - y0) / (x1 - x0)
        cx, cy = self.edge.center
        dx = x - cx
        d2 = self.edge.radius * self.edge.radius - dx * dx
        dy = math.sqrt(d2) if d2 > 0.0 else 0.0
        return cy + dy if self.branch_up else cy - dy

    def t_at_x(self, x: float) -> float:
        if x <= self.left_pt[0]:
            return self.t_left
        if x >= self.right_pt[0]:
            return self.t_right
        if self.edge.is_straight:
            x0 = self.edge.start[0]
            x1 = self.edge.end[0]
            return (x - x0) / (x1 - x0)
        y = self.y_at(x)
        cx, cy = self.edge.center
        t = self.edge.param_of_angle(math.atan2(y - cy, x - cx))
        if t is None:
            t = min(max(self.t_lo, 0.0), 1.0)
        return min(max(t, self.t_lo), self.t_hi)

    def point_at_x(self, x: float) -> Point:
        if x <= self.left_pt[0]:
            return self.left_pt
        if x >= self.right_pt[0]:
            return self.right_pt
        return (x, self.y_at(x))


@dataclass
class Trap:
    """One trapezoid of the decomposition (walls may be at infinity)."""

    tid: int
    x0: float
    below: Optional[Piece]
    above: Optional[Piece]
    x1: float = math.nan
    left_portals: List["Portal"] = field(default_factory=list)
    right_portals: List["Portal"] = field(default_factory=list)
    left_closure: Optional[Point] = None   # dent point / degenerate end
    right_closure: Optional[Point] = None
    macro: int = -1

    def contains(self, p: Point, slack: float = 0.0) -> bool:
        if not (self.x0 - slack <= p[0] <= self.x1 + slack):
            return False
        if self.below is not None and p[1] < self.below.y_at(p[0]) - slack:
            return False
        if self.above is not None and p[1] > self.above.y_at(p[0]) + slack:
            return False
        return True


@dataclass
class Portal:
    """Vertical free-space segment at an event abscissa."""

    pid: int
    x: float
    lo: Optional[Point]        # None = minus infinity
    hi: Optional[Point]
    lo_piece: Optional[Piece]  # wall carrying the lo endpoint (None at event/infinity)
    hi_piece: Optional[Piece]
    generator: Point           # the event point that created it
    is_junction: bool
    left_trap: Optional[Trap] = None
    right_trap: Optional[Trap] = None
    sealed: bool = False

    def finite_span(self, box) -> Tuple[Point, Point]:
        lo = self.lo if self.lo is not None else (self.x, box[1])
        hi = self.hi if self.hi is not None else (self.x, box[3])
        return lo, hi


@dataclass
class Decomposition:
    domain: ValidatedDomain
    pieces: List[Piece]
    traps: List[Trap]
    portals: List[Portal]
    events: List[Tuple[Point, str]]  # (point, "extreme"|"pass"|"point")


# ---------------------------------------------------------------------------


def build_pieces(domain: ValidatedDomain) -> List[Piece]:
    pieces: List[Piece] = []
    for s in domain.obstacles:
        ccw = s.carrier_area() >= 0
        for ei, e in enumerate(s.edges):
            cuts = [0.0] + e.monotone_splits("x") + [1.0]
            for t0, t1 in zip(cuts[:-1], cuts[1:]):
                p0 = e.point_at(t0)
                p1 = e.point_at(t1)
                if p0[0] == p1[0]:
                    raise DegenerateGeometry(
                        f"obstacle {s.id}: zero x-extent piece on edge {ei}"
                    )
                tm = (t0 + t1) / 2.0
                tan = e.tangent_at(tm)
                interior_above = (tan[0] > 0) == ccw
                branch_up = (not e.is_straight) and e.point_at(tm)[1] >= e.center[1]
                if p0[0] < p1[0]:
                    left_pt, right_pt, tl, tr = p0, p1, t0, t1
                else:
                    left_pt, right_pt, tl, tr = p1, p0, t1, t0
                pieces.append(
                    Piece(
                        s.id, ei, e, min(t0, t1), max(t0, t1),
                        left_pt, right_pt, tl, tr,
                        free_above=not interior_above,
                        branch_up=branch_up,
                    )
                )
    return pieces


def decompose(domain: ValidatedDomain) -> Decomposition:
    """Sweep a vertical line left to right, producing trapezoids and portals."""
    pieces = build_pieces(domain)
    eps = domain.eps

    events: Dict[Point, Dict[str, list]] = {}

    def ev(p: Point):
        return events.setdefault(p, {"start": [], "end": []})

    for pc in pieces:
        ev(pc.left_pt)["start"].append(pc)
        ev(pc.right_pt)["end"].append(pc)
    for p in (domain.source, domain.target):
        ev(p)

    order = sorted(events.keys(), key=lambda p: (p[0], p[1]))

    status: List[Piece] = []  # active pieces, bottom to top
    traps: List[Trap] = []
    portals: List[Portal] = []
    open_by_gap: Dict[Tuple[int, int], Trap] = {}
    event_kinds: List[Tuple[Point, str]] = []

    def gap_key(below: Optional[Piece], above: Optional[Piece]):
        return (id(below) if below else -1, id(above) if above else -1)

    def gap_is_free(below: Optional[Piece], above: Optional[Piece]) -> bool:
        free_b = below.free_above if below is not None else True
        free_a = (not above.free_above) if above is not None else True
        if below is not None and above is not None and free_b != free_a:
            raise DegenerateGeometry("inconsistent wall orientation between gaps")
        return free_b

    def open_trap(x: float, below, above, closure: Optional[Point] = None) -> Optional[Trap]:
        if not gap_is_free(below, above):
            return None
        t = Trap(len(traps), x, below, above, left_closure=closure)
        traps.append(t)
        open_by_gap[gap_key(below, above)] = t
        return t

    def close_trap(x: float, below, above, closure: Optional[Point] = None) -> Optional[Trap]:
        key = gap_key(below, above)
        t = open_by_gap.pop(key, None)
        if t is not None:
            t.x1 = x
            t.right_closure = closure
        return t

    def find_index(x: float, y: float) -> int:
        """Index of the first status piece with y_at(x) > y."""
        lo, hi = 0, len(status)
        while lo < hi:
            mid = (lo + hi) // 2
            if status[mid].y_at(x) > y:
                hi = mid
            else:
                lo = mid + 1
        return lo

    def foot(x: float, piece: Optional[Piece], event_pts: Sequence[Point]) -> Optional[Point]:
        """Exact foot of a vertical extension on a wall piece, snapped to
        piece endpoints and same-abscissa event points."""
        if piece is None:
            return None
        y = piece.y_at(x)
        for q in (piece.left_pt, piece.right_pt):
            if abs(q[0] - x) <= eps and abs(q[1] - y) <= max(eps, 1e-9):
                return q
        for q in event_pts:
            if abs(q[0] - x) <= eps and abs(q[1] - y) <= max(eps, 1e-9):
                return q
        return (x, y)

    def new_portal(x, lo, hi, lo_piece, hi_piece, generator, junction) -> Portal:
        p = Portal(len(portals), x, lo, hi, lo_piece, hi_piece, generator, junction)
        portals.append(p)
        return p

    # everything starts inside one unbounded free gap
    open_trap(-math.inf, None, None)

    batch_pts: List[Point] = []
    i = 0
    while i < len(order):
        x = order[i][0]
        batch = []
        while i < len(order) and order[i][0] == x:
            batch.append(order[i])
            i += 1
        batch_pts = batch

        for p in batch:
            endings = [pc for pc in events[p]["end"] if pc in status]
            startings = events[p]["start"]
            n_end, n_start = len(endings), len(startings)

            if n_end == 0 and n_start == 0:
                # point obstacle (s or t): split the containing free gap
                k = find_index(x, p[1])
                below = status[k - 1] if k > 0 else None
                above = status[k] if k < len(status) else None
                if not gap_is_free(below, above):
                    raise DegenerateGeometry(f"point event {p} lies inside an obstacle gap")
                t_old = close_trap(x, below, above)
                t_new = open_trap(x, below, above)
                fb = foot(x, below, batch_pts)
                fa = foot(x, above, batch_pts)
                po1 = new_portal(x, fb, p, below, None, p, True)
                po2 = new_portal(x, p, fa, None, above, p, True)
                for po in (po1, po2):
                    po.left_trap, po.right_trap = t_old, t_new
                event_kinds.append((p, "point"))
                continue

            if n_end == 1 and n_start == 1:
                # pass-through: wall continues, one internal portal
                pc_old, pc_new = endings[0], startings[0]
                k = status.index(pc_old)
                status[k] = pc_new
                if pc_old.free_above:
                    below, above = pc_old, (status[k + 1] if k + 1 < len(status) else None)
                    t_old = close_trap(x, below, above)
                    t_new = open_trap(x, pc_new, above)
                    fa = foot(x, above, batch_pts)
                    po = new_portal(x, p, fa, None, above, p, False)
                else:
                    below = status[k - 1] if k > 0 else None
                    t_old = close_trap(x, below, pc_old)
                    t_new = open_trap(x, below, pc_new)
                    fb = foot(x, below, batch_pts)
                    po = new_portal(x, fb, p, below, None, p, False)
                po.left_trap, po.right_trap = t_old, t_new
                event_kinds.append((p, "pass"))
                continue

            if n_end == 0 and n_start == 2:
                # left extreme: obstacle tip (free gap splits) or dent opening
                a, b = startings
                probe = x + 0.45 * min(
                    a.right_pt[0] - x, b.right_pt[0] - x
                )
                if a.y_at(probe) > b.y_at(probe):
                    a, b = b, a  # a below, b above
                k = find_index(x, p[1])
                wedge_free = gap_is_free(a, b)
                if wedge_free:
                    # dent opens rightward: new free gap, no portal
                    status[k:k] = [a, b]
                    open_trap(x, a, b, closure=p)
                else:
                    below = status[k - 1] if k > 0 else None
                    above = status[k] if k < len(status) else None
                    t_old = close_trap(x, below, above)
                    status[k:k] = [a, b]
                    t_b = open_trap(x, below, a)
                    t_a = open_trap(x, b, above)
                    fb = foot(x, below, batch_pts)
                    fa = foot(x, above, batch_pts)
                    po1 = new_portal(x, fb, p, below, None, p, True)
                    po2 = new_portal(x, p, fa, None, above, p, True)
                    po1.left_trap, po1.right_trap = t_old, t_b
                    po2.left_trap, po2.right_trap = t_old, t_a
                event_kinds.append((p, "extreme"))
                continue

            if n_end == 2 and n_start == 0:
                # right extreme: obstacle tip (gaps merge) or dent closing
                a, b = endings
                ka, kb = status.index(a), status.index(b)
                if ka > kb:
                    a, b, ka, kb = b, a, kb, ka
                if kb != ka + 1:
                    raise DegenerateGeometry(f"non-adjacent pieces end at {p}")
                wedge_free = gap_is_free(a, b)
                if wedge_free:
                    close_trap(x, a, b, closure=p)
                    del status[ka : kb + 1]
                else:
                    below = status[ka - 1] if ka > 0 else None
                    above = status[kb + 1] if kb + 1 < len(status) else None
                    t_b = close_trap(x, below, a)
                    t_a = close_trap(x, b, above)
                    del status[ka : kb + 1]
                    t_new = open_trap(x, below, above)
                    fb = foot(x, below, batch_pts)
                    fa = foot(x, above, batch_pts)
                    po1 = new_portal(x, fb, p, below, None, p, True)
                    po2 = new_portal(x, p, fa, None, above, p, True)
                    po1.left_trap, po1.right_trap = t_b, t_new
                    po2.left_trap, po2.right_trap = t_a, t_new
                event_kinds.append((p, "extreme"))
                continue

            raise DegenerateGeometry(
                f"unsupported event multiplicity at {p}: {n_end} end, {n_start} start"
            )

    # close whatever is still open at plus infinity
    for t in list(open_by_gap.values()):
        t.x1 = math.inf
    open_by_gap.clear()

    return Decomposition(domain, pieces, traps, portals, event_kinds)
