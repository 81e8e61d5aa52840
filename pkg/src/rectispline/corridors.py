"""Corridor structure on top of the trapezoidal decomposition.

Trapezoids merge across internal portals into *macro regions*; the macro
dual graph (edges = junction portals) is pruned of degree-one subtrees,
degree-two nodes are contracted, and what survives is the 3-regular graph
G3 (degree-4+ nodes are split combinatorially with virtual edges).  Each
non-virtual G3 edge is a corridor.  Region boundaries are recovered by a
half-edge style trace over trapezoid cycles, which yields corridor walls
and junction wall runs uniformly, including seal segments over pruned
pockets and degenerate point walls at s and t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .errors import DegenerateGeometry
from .geom import Point
from .trapezoids import Decomposition, Piece, Portal, Trap

# ---------------------------------------------------------------------------
# wall model


@dataclass
class WallItem:
    kind: str                       # "arc" | "seal" | "point" | "inf"
    piece: Optional[Piece] = None   # for "arc": boundary piece
    t0: float = 0.0                 # edge params of the walked section
    t1: float = 0.0
    p0: Optional[Point] = None      # walk start / end points
    p1: Optional[Point] = None
    trap: Optional[Trap] = None

    @property
    def start(self) -> Optional[Point]:
        return self.p0

    @property
    def end(self) -> Optional[Point]:
        return self.p1


@dataclass
class Wall:
    items: List[WallItem]

    @property
    def bounded(self) -> bool:
        return all(it.kind != "inf" for it in self.items)

    @property
    def start(self) -> Optional[Point]:
        return self.items[0].p0 if self.items else None

    @property
    def end(self) -> Optional[Point]:
        return self.items[-1].p1 if self.items else None

    def is_point(self) -> bool:
        return all(it.kind == "point" for it in self.items)


# ---------------------------------------------------------------------------
# macro regions


@dataclass
class Macro:
    mid: int
    traps: List[Trap] = field(default_factory=list)


def build_macros(decomp: Decomposition) -> List[Macro]:
    parent = list(range(len(decomp.traps)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a: int, b: int):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for po in decomp.portals:
        if not po.is_junction and po.left_trap and po.right_trap:
            union(po.left_trap.tid, po.right_trap.tid)

    groups: Dict[int, List[Trap]] = {}
    for t in decomp.traps:
        groups.setdefault(find(t.tid), []).append(t)
    macros = []
    for i, (root, traps) in enumerate(sorted(groups.items())):
        traps.sort(key=lambda t: t.x0 if t.x0 > -math.inf else -1e300)
        m = Macro(i, traps)
        for t in traps:
            t.macro = i
        macros.append(m)
    return macros


# ---------------------------------------------------------------------------
# graph reduction (spec: reduce_to_g3)


@dataclass
class G3Edge:
    eid: int
    u: int                      # G3 node ids
    v: int
    virtual: bool
    portal_chain: List = field(default_factory=list)   # portals along the edge
    node_chain: List = field(default_factory=list)     # macro ids between them


@dataclass
class G3:
    nodes: List[int]                        # G3 node ids
    node_origin: Dict[int, object]          # id -> macro id (or abstract node)
    edges: List[G3Edge]

    def degree(self, nid: int) -> int:
        d = 0
        for e in self.edges:
            if e.u == nid:
                d += 1
            if e.v == nid:
                d += 1
        return d


def reduce_to_g3(nodes: Sequence, edges: Sequence[Tuple[object, object, object]]) -> G3:
    """Prune degree-1 nodes, contract degree-2 nodes, split degree-4+.

    ``edges`` are (u, v, payload) with u, v drawn from ``nodes``; loops and
    multi-edges are fine.  Payloads of pruned edges get ``sealed`` set when
    they are Portal objects.  Returns a 3-regular multigraph (possibly
    empty), each edge carrying the ordered payload/node chain it contracted.
    """
    alive_edges: Dict[int, Tuple[object, object, object]] = {
        i: (u, v, p) for i, (u, v, p) in enumerate(edges)
    }
    adj: Dict[object, List[int]] = {n: [] for n in nodes}
    for i, (u, v, _) in alive_edges.items():
        adj[u].append(i)
        adj[v].append(i)

    def degree(n) -> int:
        return len(adj[n])

    # prune degree-1 subtrees, sealing their portals
    changed = True
    while changed:
        changed = False
        for n in list(adj.keys()):
            if degree(n) == 1:
                ei = adj[n][0]
                u, v, payload = alive_edges[ei]
                if isinstance(payload, Portal):
                    payload.sealed = True
                other = v if u == n else u
                adj[other].remove(ei)
                del alive_edges[ei]
                del adj[n]
                changed = True
            elif degree(n) == 0:
                del adj[n]
                changed = True

    # contract degree-2 chains between junction nodes
    junctions = [n for n in adj if degree(n) >= 3]
    used: Set[int] = set()
    chains: List[Tuple[object, object, List, List]] = []  # (u, v, portals, nodes)

    def other_end(ei: int, n):
        u, v, _ = alive_edges[ei]
        return v if u == n else u

    for j in junctions:
        for ei in list(adj[j]):
            if ei in used:
                continue
            used.add(ei)
            portals = [alive_edges[ei][2]]
            mids: List = []
            cur = other_end(ei, j)
            prev_edge = ei
            while cur in adj and degree(cur) == 2 and cur not in junctions:
                e2 = adj[cur][0] if adj[cur][0] != prev_edge else adj[cur][1]
                if e2 == prev_edge:  # degenerate double use of a loop
                    break
                mids.append(cur)
                used.add(e2)
                portals.append(alive_edges[e2][2])
                prev_edge = e2
                cur = other_end(e2, cur)
            chains.append((j, cur, portals, mids))

    # dedupe: every chain was discovered once from each junction end
    seen = set()
    uniq = []
    for (u, v, portals, mids) in chains:
        key = frozenset([id(p) for p in portals])
        if key in seen:
            continue
        seen.add(key)
        uniq.append((u, v, portals, mids))

    # assign G3 node ids, splitting degree-4+ junctions with virtual edges
    node_ids: Dict[object, List[int]] = {}
    node_origin: Dict[int, object] = {}
    g3_edges: List[G3Edge] = []
    next_id = 0
    inc: Dict[object, List[int]] = {j: [] for j in junctions}
    for ci, (u, v, portals, mids) in enumerate(uniq):
        inc[u].append(ci)
        if v in inc:
            inc[v].append(ci)

    slot_of: Dict[Tuple[object, int], int] = {}
    for j in junctions:
        k = len(inc[j])  # incidences counting loops twice
        n_slots = max(1, k - 2)
        ids = list(range(next_id, next_id + n_slots))
        next_id += n_slots
        node_ids[j] = ids
        for nid in ids:
            node_origin[nid] = j
        # chain the slots with virtual edges
        for a, b in zip(ids[:-1], ids[1:]):
            g3_edges.append(G3Edge(-1, a, b, True))

    # distribute incidences to slots: at most 3 per slot (virtual links use 1
    # on inner slots, 1 or 2 on the ends)
    capacity: Dict[int, int] = {}
    for j in junctions:
        ids = node_ids[j]
        for idx, nid in enumerate(ids):
            links = (0 if len(ids) == 1 else (1 if idx in (0, len(ids) - 1) else 2))
            capacity[nid] = 3 - links

    def take_slot(j) -> int:
        for nid in node_ids[j]:
            if capacity[nid] > 0:
                capacity[nid] -= 1
                return nid
        raise DegenerateGeometry("junction slot capacity exhausted")

    for ci, (u, v, portals, mids) in enumerate(uniq):
        su = take_slot(u)
        sv = take_slot(v)
        g3_edges.append(G3Edge(ci, su, sv, False, portals, mids))

    for i, e in enumerate(g3_edges):
        e.eid = i

    all_ids = [nid for j in junctions for nid in node_ids[j]]
    return G3(all_ids, node_origin, g3_edges)


# ---------------------------------------------------------------------------
# region boundary trace


def _right_items(t: Trap) -> List[Tuple[str, object]]:
    if t.right_portals:
        ps = sorted(t.right_portals, key=_portal_lo_key)
        return [("portal", p) for p in ps]
    if t.right_closure is not None:
        return [("closepoint", t.right_closure)]
    return [("inf", None)]


def _left_items(t: Trap) -> List[Tuple[str, object]]:
    if t.left_portals:
        ps = sorted(t.left_portals, key=_portal_lo_key, reverse=True)
        return [("portal", p) for p in ps]
    if t.left_closure is not None:
        return [("closepoint", t.left_closure)]
    return [("inf", None)]


def _portal_lo_key(p: Portal) -> float:
    if p.lo is not None:
        return p.lo[1]
    return -math.inf


def trap_cycle(t: Trap) -> List[Tuple[str, object, int]]:
    """CCW boundary cycle of one trapezoid as (kind, payload, direction)."""
    cyc: List[Tuple[str, object, int]] = []
    if t.below is not None:
        cyc.append(("wall", (t.below, False), +1))   # below wall, left->right
    else:
        cyc.append(("inf", None, +1))
    for kind, payload in _right_items(t):
        cyc.append((kind, payload, +1))              # right side, bottom->top
    if t.above is not None:
        cyc.append(("wall", (t.above, True), -1))    # above wall, right->left
    else:
        cyc.append(("inf", None, -1))
    for kind, payload in _left_items(t):
        cyc.append((kind, payload, -1))              # left side, top->bottom
    return cyc


def _portal_point(p: Portal, end: str) -> Optional[Point]:
    return p.lo if end == "lo" else p.hi


def _clip_x(t: Trap, box) -> Tuple[float, float]:
    x0 = t.x0 if t.x0 > -math.inf else box[0]
    x1 = t.x1 if t.x1 < math.inf else box[2]
    return x0, x1


def _wall_item(t: Trap, piece: Piece, direction: int, box) -> WallItem:
    x0, x1 = _clip_x(t, box)
    xa = max(x0, piece.left_pt[0])
    xb = min(x1, piece.right_pt[0])
    if direction < 0:
        xa, xb = xb, xa
    ta = piece.t_at_x(xa)
    tb = piece.t_at_x(xb)
    return WallItem(
        "arc", piece, ta, tb, piece.point_at_x(xa), piece.point_at_x(xb), trap=t
    )


def trace_region(
    region: Set[int], doors: List[Portal], decomp: Decomposition
) -> List[Tuple[Portal, Portal, Wall]]:
    """Walk the boundary of a union of trapezoids.

    ``region`` holds trapezoid ids; ``doors`` the portals where walls stop.
    Returns (door_from, door_to, wall) runs: the wall between consecutive
    doors while walking the region boundary with the interior on the left.
    Interior portals are crossed silently; boundary portals that are not
    doors (seals over pruned pockets) are walked as vertical segments.
    """
    box = decomp.domain.bounding_box
    cycles: Dict[int, List[Tuple[str, object, int]]] = {}
    pos: Dict[Tuple[int, int], Tuple[int, int]] = {}  # (portal id, dir) -> (tid, idx)
    for tid in region:
        t = decomp.traps[tid]
        cyc = trap_cycle(t)
        cycles[tid] = cyc
        for idx, (kind, payload, d) in enumerate(cyc):
            if kind == "portal":
                pos[(payload.pid, d)] = (tid, idx)

    door_set = {p.pid for p in doors}

    def is_interior(p: Portal) -> bool:
        if p.pid in door_set:
            return False
        lt = p.left_trap.tid if p.left_trap else None
        rt = p.right_trap.tid if p.right_trap else None
        return lt in region and rt in region

    def next_boundary(tid: int, idx: int) -> Tuple[int, int]:
        guard = 0
        while True:
            guard += 1
            if guard > 4 * len(pos) + 8:
                raise DegenerateGeometry("portal jump loop in boundary trace")
            idx = (idx + 1) % len(cycles[tid])
            kind, payload, d = cycles[tid][idx]
            if kind == "portal" and is_interior(payload):
                tid, idx = pos[(payload.pid, -d)]
                continue
            return tid, idx

    # the walk starts at a door item (exactly one side of a door is inside)
    start = None
    for dr in doors:
        for dd in (+1, -1):
            if (dr.pid, dd) in pos:
                start = pos[(dr.pid, dd)]
                break
        if start:
            break
    if start is None:
        return []

    runs: List[Tuple[Portal, Portal, Wall]] = []
    cur_door = cycles[start[0]][start[1]][1]
    items: List[WallItem] = []
    tid, idx = next_boundary(*start)
    max_steps = 4 * sum(len(c) for c in cycles.values()) + 16
    for _ in range(max_steps):
        kind, payload, d = cycles[tid][idx]
        t = decomp.traps[tid]
        if kind == "portal" and payload.pid in door_set:
            if not items:
                q = _shared_endpoint(cur_door, payload, box)
                items = [WallItem("point", None, 0, 0, q, q, trap=t)]
            runs.append((cur_door, payload, Wall(items)))
            items = []
            cur_door = payload
            if (tid, idx) == start:
                return runs
        elif kind == "portal":
            lo, hi = payload.finite_span(box)
            p0, p1 = (lo, hi) if d > 0 else (hi, lo)
            items.append(WallItem("seal", None, 0, 0, p0, p1, trap=t))
        elif kind == "wall":
            piece, _above = payload
            items.append(_wall_item(t, piece, d, box))
        elif kind == "closepoint":
            items.append(WallItem("point", None, 0, 0, payload, payload, trap=t))
        elif kind == "inf":
            items.append(WallItem("inf", None, 0, 0, None, None, trap=t))
        tid, idx = next_boundary(tid, idx)
    raise DegenerateGeometry("boundary trace did not terminate")


def _shared_endpoint(a: Portal, b: Portal, box) -> Point:
    """Common endpoint of two portals meeting at an event point."""
    a_lo, a_hi = a.finite_span(box)
    b_lo, b_hi = b.finite_span(box)
    for p in (a_lo, a_hi):
        for q in (b_lo, b_hi):
            if p == q:
                return p
    # fall back to the shared generator
    if a.generator == b.generator:
        return a.generator
    return a_hi if a_hi == b_lo else a_lo


# ---------------------------------------------------------------------------
# corridor / junction assembly


@dataclass
class Corridor:
    cid: int
    door0: Portal
    door1: Portal
    macro_ids: List[int]
    traps: Set[int]
    wall1: Optional[Wall] = None
    wall2: Optional[Wall] = None


@dataclass
class JunctionRegion:
    jid: int
    macro_id: int
    traps: Set[int]
    doors: List[Portal] = field(default_factory=list)
    wall_runs: List[Tuple[Portal, Portal, Wall]] = field(default_factory=list)


@dataclass
class CorridorStructure:
    decomp: Decomposition
    macros: List[Macro]
    g3: G3
    corridors: List[Corridor]
    junctions: List[JunctionRegion]


def extract_corridors(g3: G3, decomp: Decomposition, macros: List[Macro]) -> Tuple[List[Corridor], List[JunctionRegion]]:
    corridors: List[Corridor] = []
    for e in g3.edges:
        if e.virtual or not e.portal_chain:
            continue
        door0 = e.portal_chain[0]
        door1 = e.portal_chain[-1]
        traps: Set[int] = set()
        for mid in e.node_chain:
            traps.update(t.tid for t in macros[mid].traps)
        c = Corridor(len(corridors), door0, door1, list(e.node_chain), traps)
        if traps:
            runs = trace_region(traps, [door0, door1], decomp)
            walls = [w for (_, _, w) in runs]
            if len(walls) >= 2:
                c.wall1, c.wall2 = walls[0], walls[1]
            elif len(walls) == 1:
                c.wall1 = walls[0]
        corridors.append(c)

    junctions: List[JunctionRegion] = []
    seen_macro: Set[int] = set()
    for nid in g3.nodes:
        mid = g3.node_origin[nid]
        if not isinstance(mid, int) or mid in seen_macro:
            continue
        seen_macro.add(mid)
        traps = {t.tid for t in macros[mid].traps}
        doors = []
        for po in decomp.portals:
            if po.sealed or not po.is_junction:
                continue
            lt = po.left_trap.tid if po.left_trap else None
            rt = po.right_trap.tid if po.right_trap else None
            if (lt in traps) != (rt in traps):
                doors.append(po)
        j = JunctionRegion(len(junctions), mid, traps, doors)
        if doors:
            j.wall_runs = trace_region(traps, doors, decomp)
        junctions.append(j)
    return corridors, junctions


def build_structure(decomp: Decomposition) -> CorridorStructure:
    macros = build_macros(decomp)
    edges = []
    for po in decomp.portals:
        if po.is_junction and po.left_trap is not None and po.right_trap is not None:
            edges.append((po.left_trap.macro, po.right_trap.macro, po))
    g3 = reduce_to_g3([m.mid for m in macros], edges)
    corridors, junctions = extract_corridors(g3, decomp, macros)
    return CorridorStructure(decomp, macros, g3, corridors, junctions)
