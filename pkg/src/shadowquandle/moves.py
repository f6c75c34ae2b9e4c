"""Reidemeister move rewriting, coloring transport, and invariance fuzzing.

Moves are local surgeries on the slot tables.  Every applied move revalidates
the resulting diagram, so a bad site fails loudly rather than corrupting
anything.  Insert sites always exist; removal and triangle sites are pattern
matches on faces.

A site is *coloring safe* when every face the move creates, destroys, or
merges is forced through the region-propagation rule by at least one arc that
does not meet an endpoint.  For safe sites the transported coloring is the
unique extension and all the counting invariants are preserved over any
quandle pair.  Unsafe sites (kinks whose new region touches only endpoint
arcs, and the like) genuinely change shadow coloring counts over quandles
whose columns have several fixed points, so the fuzzer only walks safe sites;
``apply_move`` itself accepts any applicable site.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .algebra import Cocycle, Quandle, XSet
from .coloring import ShadowColoring, enumerate_shadow_colorings, extend_partial_coloring, verify_coloring
from .diagram import Component, Corner, Crossing, Diagram, DiagramError, Endpoint

__all__ = [
    "MoveError",
    "MoveSite",
    "MoveRecord",
    "find_move_sites",
    "apply_move",
    "transport_coloring",
    "fuzz_invariance",
    "FuzzReport",
]


class MoveError(DiagramError):
    pass


@dataclass(frozen=True)
class MoveSite:
    kind: str                      # r1_insert | r1_remove | r2_insert | r2_remove | r3
    edge: int | None = None        # r1_insert, r2_insert (the strand being pushed)
    side: str | None = None        # r1_insert curl side: 'l' or 'r'
    sign: int | None = None        # r1_insert crossing sign
    edge2: int | None = None       # r2_insert companion
    side2: str | None = None       # r2_insert: companion side facing the common face
    over: bool | None = None       # r2_insert: pushed strand passes over
    align: int | None = None       # r2_insert: finger leaning (+1 with, -1 against)
    corner: Corner | None = None   # removal / triangle sites: min corner of the face
    variant: str | None = None     # r3 pattern tag: 'lhs' or 'rhs'
    safe: bool = True

    def script(self) -> str:
        if self.kind == "r1_insert":
            s = "+" if self.sign > 0 else "-"
            return f"R1{s} at e{self.edge} {self.side}"
        if self.kind == "r1_remove":
            return f"R1rm at {self.corner[0]}:{self.corner[1]}"
        if self.kind == "r2_insert":
            o = "over" if self.over else "under"
            a = "with" if self.align > 0 else "against"
            return f"R2+ at e{self.edge} {o} e{self.edge2}:{self.side2} {a}"
        if self.kind == "r2_remove":
            return f"R2- at {self.corner[0]}:{self.corner[1]}"
        return f"R3 {self.variant} at {self.corner[0]}:{self.corner[1]}"


@dataclass(frozen=True)
class MoveRecord:
    site: MoveSite
    edge_map: dict                 # old eid -> tuple of new eids ((),) empty if destroyed
    stable_edges: frozenset        # old eids surviving with both attachments unchanged
    touched_vertices: frozenset    # crossing ids created, deleted, or re-slotted


# ---------------------------------------------------------------------------
# site discovery


def _arc_meets_endpoint(d: Diagram, eid: int) -> bool:
    return d.arcs()[d.arc_of_edge(eid)].meets_endpoint


def _face_has_placement(d: Diagram, face_id: int) -> bool:
    for cid, corner in d.placements.items():
        if d.face_of_corner(corner) == face_id:
            return True
    return False


def _anchor_edges(d: Diagram) -> set[int]:
    """Edges of the unplaced graph part (moves that add crossings must touch it)."""
    placed = set(d.placements)
    parts = d._graph_parts()
    anchored: set[int] = set()
    for part in parts:
        if not part & placed:
            for cid in part:
                anchored.update(d.components[cid].edges)
    return anchored


def find_move_sites(d: Diagram, kinds=None) -> list[MoveSite]:
    """Enumerate applicable sites, deterministically ordered.

    Insert sites exist for every edge (and edge pair sharing a face); removal
    sites are monogon and coherent bigon faces; triangle sites are trigons
    matching the braid-like patterns.  Sites whose pattern face is the outer
    face of a plane diagram are excluded (the rewrite disk must be bounded).
    """
    wanted = set(kinds) if kinds else {"r1_insert", "r1_remove", "r2_insert", "r2_remove", "r3"}
    sites: list[MoveSite] = []
    anchored = _anchor_edges(d)
    outer = d.outer_face() if d.surface == "plane" else None

    if "r1_insert" in wanted:
        for eid in sorted(d.edges):
            if eid not in anchored:
                continue
            safe = not _arc_meets_endpoint(d, eid)
            for side in ("l", "r"):
                for sign in (1, -1):
                    sites.append(MoveSite("r1_insert", edge=eid, side=side, sign=sign, safe=safe))

    if "r2_insert" in wanted:
        for f in d.faces():
            if f.inside_of is not None:
                continue
            face_edges: list[tuple[int, str]] = []
            for eid in sorted(d.edges):
                right, left = d.edge_faces(eid)
                if right == f.id:
                    face_edges.append((eid, "r"))
                if left == f.id:
                    face_edges.append((eid, "l"))
            for eid, _ in face_edges:
                for fid, fside in face_edges:
                    if eid == fid:
                        continue
                    if eid not in anchored and fid not in anchored:
                        continue
                    safe = not (_arc_meets_endpoint(d, eid) and _arc_meets_endpoint(d, fid))
                    for over in (True, False):
                        for align in (1, -1):
                            sites.append(MoveSite("r2_insert", edge=eid, edge2=fid,
                                                  side2=fside, over=over, align=align, safe=safe))

    for f in d.faces():
        if f.inside_of is not None or f.id == outer or _face_has_placement(d, f.id):
            continue
        cyc = f.cycles[0] if f.cycles else ()
        if len(f.cycles) != 1:
            continue
        corners = cyc
        if "r1_remove" in wanted and len(corners) == 1:
            v, g = corners[0]
            if v in d.crossings:
                loop_eid = d.crossings[v].slots[g][0]
                safe = not _arc_meets_endpoint(d, loop_eid)
                sites.append(MoveSite("r1_remove", corner=min(corners), safe=safe))
        elif "r2_remove" in wanted and len(corners) == 2:
            site = _match_bigon(d, corners)
            if site is not None:
                sites.append(site)
        elif "r3" in wanted and len(corners) == 3:
            site = _match_trigon(d, corners)
            if site is not None:
                sites.append(site)

    order = {"r1_insert": 0, "r1_remove": 1, "r2_insert": 2, "r2_remove": 3, "r3": 4}
    sites.sort(key=lambda s: (order[s.kind], s.edge if s.edge is not None else -1,
                              s.edge2 if s.edge2 is not None else -1,
                              s.corner or (-1, -1), s.side or "", s.side2 or "",
                              s.sign or 0, 1 if s.over else 0, s.align or 0,
                              s.variant or ""))
    return sites


def _face_darts(d: Diagram, corners) -> list[tuple[int, int]]:
    return [(v, (g + 1) % d.degree(v)) for v, g in corners]


def _match_bigon(d: Diagram, corners) -> MoveSite | None:
    (v1, g1), (v2, g2) = corners
    if v1 not in d.crossings or v2 not in d.crossings or v1 == v2:
        return None
    darts = _face_darts(d, corners)
    eids = {d.slot_edge(v, s)[0] for v, s in darts}
    if len(eids) != 2:
        return None
    e_a, e_b = sorted(eids)

    def slots_of(eid, v):
        return [s for s in range(4) if d.crossings[v].slots[s][0] == eid]

    def over_at(eid, v):
        ss = slots_of(eid, v)
        return all(s in (1, 3) for s in ss) and ss

    a_over = over_at(e_a, v1) and over_at(e_a, v2)
    b_over = over_at(e_b, v1) and over_at(e_b, v2)
    a_under = not a_over and all(s in (0, 2) for s in slots_of(e_a, v1) + slots_of(e_a, v2))
    b_under = not b_over and all(s in (0, 2) for s in slots_of(e_b, v1) + slots_of(e_b, v2))
    if not ((a_over and b_under) or (b_over and a_under)):
        return None
    # removing the pair must not strand a crossing-bearing piece
    if not _removal_keeps_anchoring(d, {v1, v2}):
        return None
    safe = not (_arc_meets_endpoint(d, e_a) and _arc_meets_endpoint(d, e_b))
    return MoveSite("r2_remove", corner=min(corners), safe=safe)


def _removal_keeps_anchoring(d: Diagram, dead: set[int]) -> bool:
    """After deleting the crossings in ``dead``, every crossing-bearing graph
    part must still contain a vertex (placements only cover crossing-free
    components)."""
    parent = {cid: cid for cid in d.components}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        pa, pb = find(a), find(b)
        if pa != pb:
            parent[pa] = pb

    at_vertex: dict[int, int] = {}
    for e in d.edges.values():
        for v, _ in (e.tail, e.head):
            if v in dead:
                continue
            if v in at_vertex:
                union(at_vertex[v], e.component)
            else:
                at_vertex[v] = e.component
    groups: dict[int, set[int]] = {}
    for cid in d.components:
        groups.setdefault(find(cid), set()).add(cid)
    crossing_comp: dict[int, set[int]] = {}
    for v, c in d.crossings.items():
        if v in dead:
            continue
        for s in range(4):
            crossing_comp.setdefault(d.edges[c.slots[s][0]].component, set()).add(v)
    for part in groups.values():
        if any(cid in crossing_comp for cid in part):
            continue
        # crossing-free after removal: must be a lone component (placeable)
        if len(part) > 1:
            return False
    return True


# R3 pattern data, drawn from a braid of three coherently oriented strands.
# LHS: face darts carry slots (2, 0, 3) cyclically at (P, R, Q); interior edges
#   a: P.1 -> Q.3, b: P.2 -> R.3, c: Q.2 -> R.0.
# RHS: face darts carry slots (2, 1, 0) cyclically at (R, Q, P); interior edges
#   b': R.1 -> P.0, c': R.2 -> Q.0, a': Q.1 -> P.3.


def _match_trigon(d: Diagram, corners) -> MoveSite | None:
    vs = [v for v, _ in corners]
    if len(set(vs)) != 3 or any(v not in d.crossings for v in vs):
        return None
    darts = _face_darts(d, corners)
    # walk the face cycle in orbit order starting from each rotation
    for rot in range(3):
        cyc = darts[rot:] + darts[:rot]
        slots = tuple(s for _, s in cyc)
        if slots == (2, 0, 3):
            P, R, Q = (v for v, _ in cyc)
            if _check_lhs(d, P, Q, R):
                return MoveSite("r3", corner=min(corners), variant="lhs",
                                safe=_trigon_safe(d, P, Q, R))
        if slots == (2, 1, 0):
            R, Q, P = (v for v, _ in cyc)
            if _check_rhs(d, P, Q, R):
                return MoveSite("r3", corner=min(corners), variant="rhs",
                                safe=_trigon_safe(d, P, Q, R))
    return None


def _edge_between(d: Diagram, v1: int, s1: int, v2: int, s2: int) -> int | None:
    eid, _ = d.crossings[v1].slots[s1]
    e = d.edges[eid]
    ends = {e.tail, e.head}
    if ends == {(v1, s1), (v2, s2)}:
        return eid
    return None


def _check_lhs(d, P, Q, R) -> bool:
    a = _edge_between(d, P, 1, Q, 3)
    b = _edge_between(d, P, 2, R, 3)
    c = _edge_between(d, Q, 2, R, 0)
    if None in (a, b, c) or len({a, b, c}) != 3:
        return False
    return (d.edges[a].tail == (P, 1) and d.edges[b].tail == (P, 2)
            and d.edges[c].tail == (Q, 2))


def _check_rhs(d, P, Q, R) -> bool:
    b = _edge_between(d, R, 1, P, 0)
    c = _edge_between(d, R, 2, Q, 0)
    a = _edge_between(d, Q, 1, P, 3)
    if None in (a, b, c) or len({a, b, c}) != 3:
        return False
    return (d.edges[b].tail == (R, 1) and d.edges[c].tail == (R, 2)
            and d.edges[a].tail == (Q, 1))


def _trigon_safe(d, P, Q, R) -> bool:
    # a flip re-anchors every region around the triangle, so all local strands
    # must propagate region colors
    arcs = set()
    for v in (P, Q, R):
        for s in range(4):
            arcs.add(d.arc_of_edge(d.crossings[v].slots[s][0]))
    return all(not d.arcs()[a].meets_endpoint for a in arcs)


# ---------------------------------------------------------------------------
# surgery helpers


class _Builder:
    def __init__(self, d: Diagram):
        self.d = d
        self.surface = d.surface
        self.crossings = {v: list(c.slots) for v, c in d.crossings.items()}
        self.endpoints = dict(d.endpoints)
        self.components = {cid: list(c.edges) for cid, c in d.components.items()}
        self.comp_kinds = {cid: c.kind for cid, c in d.components.items()}
        self.outer = d.outer
        self.placements = dict(d.placements)
        self._next_v = max(list(d.crossings) + list(d.endpoints), default=-1) + 1
        self._next_e = max(d.edges, default=-1) + 1

    def new_vertex(self) -> int:
        self._next_v += 1
        return self._next_v - 1

    def new_edges(self, n: int) -> list[int]:
        out = list(range(self._next_e, self._next_e + n))
        self._next_e += n
        return out

    def replace_end(self, vid: int, slot_hint, old_eid: int, new_eid: int, is_head: bool) -> None:
        if vid in self.endpoints:
            e = self.endpoints[vid]
            self.endpoints[vid] = Endpoint(vid, e.kind, new_eid)
            return
        slots = self.crossings[vid]
        for s in range(4):
            if slots[s] == (old_eid, is_head) and (slot_hint is None or s == slot_hint):
                slots[s] = (new_eid, is_head)
                return
        raise MoveError(f"stale site: edge {old_eid} not attached at vertex {vid}")

    def split_in_component(self, old_eid: int, new_eids: list[int]) -> None:
        for cid, edges in self.components.items():
            if old_eid in edges:
                i = edges.index(old_eid)
                self.components[cid] = edges[:i] + new_eids + edges[i + 1:]
                return
        raise MoveError(f"stale site: edge {old_eid} not in any component")

    def replace_run(self, run: list[int], new_eids: list[int]) -> int:
        """Replace a contiguous run of edges (with circle wraparound) by new ones."""
        for cid, edges in self.components.items():
            n = len(edges)
            if not run or n < len(run):
                continue
            idxs = [i for i, e in enumerate(edges) if e == run[0]]
            for i0 in idxs:
                if all(edges[(i0 + j) % n] == run[j] for j in range(len(run))):
                    if i0 + len(run) <= n:
                        self.components[cid] = edges[:i0] + new_eids + edges[i0 + len(run):]
                    else:  # wraps: rotate so the run is contiguous
                        rot = edges[i0:] + edges[:i0]
                        self.components[cid] = new_eids + rot[len(run):]
                    return cid
        raise MoveError(f"stale site: run {run} not found")

    def finish(self) -> Diagram:
        crossings = {v: Crossing(v, tuple(slots)) for v, slots in self.crossings.items()}
        components = {cid: Component(cid, self.comp_kinds[cid], tuple(edges))
                      for cid, edges in self.components.items()}
        return Diagram(self.surface, crossings, self.endpoints, components,
                       outer=self.outer, placements=self.placements)

    def reanchor_corner(self, corner: Corner, dead_vertices: set[int]):
        """Move a corner reference off dying vertices, staying on its old face."""
        if corner is None or corner[0] not in dead_vertices:
            return corner
        face = self.d.faces()[self.d.face_of_corner(corner)]
        for c in sorted(face.corners):
            if c[0] not in dead_vertices:
                return c
        return None  # face disappears entirely; caller must resolve


# ---------------------------------------------------------------------------
# the moves


def _apply_r1_insert(d: Diagram, site: MoveSite):
    b = _Builder(d)
    e = d.edges[site.edge]
    x = b.new_vertex()
    a_id, loop_id, c_id = b.new_edges(3)
    key = (site.side, site.sign)
    # slot tables for the four kink types; (a, loop, c) split the old edge
    if key == ("l", 1):
        slots = [(a_id, True), (c_id, False), (loop_id, False), (loop_id, True)]
    elif key == ("r", -1):
        slots = [(a_id, True), (loop_id, True), (loop_id, False), (c_id, False)]
    elif key == ("r", 1):
        slots = [(loop_id, True), (loop_id, False), (c_id, False), (a_id, True)]
    elif key == ("l", -1):
        slots = [(loop_id, True), (a_id, True), (c_id, False), (loop_id, False)]
    else:
        raise MoveError(f"bad kink variant {key}")
    b.crossings[x] = slots
    b.replace_end(e.tail[0], e.tail[1], e.id, a_id, False)
    b.replace_end(e.head[0], e.head[1], e.id, c_id, True)
    b.split_in_component(e.id, [a_id, loop_id, c_id])
    rec = MoveRecord(site, {e.id: (a_id, loop_id, c_id)},
                     frozenset(set(d.edges) - {e.id}), frozenset({x}))
    return b.finish(), rec


def _apply_r1_remove(d: Diagram, site: MoveSite):
    v, g = site.corner
    if v not in d.crossings:
        raise MoveError("stale site: crossing gone")
    loop_eid = d.crossings[v].slots[g][0]
    loop = d.edges[loop_eid]
    if loop.tail[0] != v or loop.head[0] != v:
        raise MoveError("stale site: corner is no longer a monogon")
    other = [d.crossings[v].slots[s][0] for s in range(4)
             if d.crossings[v].slots[s][0] != loop_eid]
    if len(other) != 2:
        raise MoveError("stale site: kink pattern changed")
    a_id = next(eid for eid in other if d.edges[eid].head[0] == v)
    c_id = next(eid for eid in other if d.edges[eid].tail[0] == v)
    b = _Builder(d)
    dead = {v}
    if a_id == c_id:
        # a two-edge kink circle: it becomes a free circle
        cid = b.replace_run(_run_order(d, [a_id, loop_eid], a_id), [])
        del b.crossings[v]
        host = _free_circle_host(d, b, v, g)
        if host is not None:
            b.placements[cid] = host
        rec = MoveRecord(site, {a_id: (), loop_eid: ()},
                         frozenset(set(d.edges) - {a_id, loop_eid}), frozenset(dead))
        return b.finish(), rec
    fused = b.new_edges(1)[0]
    a, c = d.edges[a_id], d.edges[c_id]
    b.replace_end(a.tail[0], a.tail[1], a_id, fused, False)
    b.replace_end(c.head[0], c.head[1], c_id, fused, True)
    del b.crossings[v]
    b.replace_run(_run_order(d, [a_id, loop_eid, c_id], a_id), [fused])
    b.outer = b.reanchor_corner(b.outer, dead)
    b.placements = {cid: b.reanchor_corner(cr, dead) for cid, cr in b.placements.items()}
    rec = MoveRecord(site, {a_id: (fused,), loop_eid: (), c_id: (fused,)},
                     frozenset(set(d.edges) - {a_id, loop_eid, c_id}), frozenset(dead))
    return b.finish(), rec


def _run_order(d: Diagram, eids: list[int], start: int) -> list[int]:
    """Order a set of edges as the contiguous traversal run they form."""
    comp = d.components[d.edges[start].component]
    edges = list(comp.edges)
    todo = set(eids)
    n = len(edges)
    for i0 in range(n):
        if edges[i0] in todo and (comp.kind == "circle" or i0 == 0 or edges[i0 - 1] not in todo):
            run = []
            j = i0
            while len(run) < len(todo) and edges[j % n] in todo:
                run.append(edges[j % n])
                j += 1
            if len(run) == len(todo):
                return run
    raise MoveError("edges do not form a contiguous run")


def _free_circle_host(d: Diagram, b: _Builder, v: int, g: int):
    """Best surviving corner for a circle freed near corner (v, g)."""
    face = d.faces()[d.face_of_corner((v, (g + 2) % 4))]
    for c in sorted(face.corners):
        if c[0] != v:
            return c
    for f in d.faces():
        for c in sorted(f.corners):
            if c[0] != v:
                return c
    return None


def _apply_r2_insert(d: Diagram, site: MoveSite):
    e, f = d.edges[site.edge], d.edges[site.edge2]
    if e.id == f.id:
        raise MoveError("cannot push an edge across itself")
    b = _Builder(d)
    x, y = b.new_vertex(), b.new_vertex()
    e1, e2, e3, f1, f2, f3 = b.new_edges(6)
    over = site.over
    # X is the first crossing along e; with align>0 the strand f meets X first
    if over:
        xs = [None] * 4
        ys = [None] * 4
        xs[3], xs[1] = (e1, True), (e2, False)
        ys[1], ys[3] = (e2, True), (e3, False)
        if site.align > 0:
            xs[0], xs[2] = (f1, True), (f2, False)
            ys[0], ys[2] = (f2, True), (f3, False)
        else:
            ys[0], ys[2] = (f1, True), (f2, False)
            xs[0], xs[2] = (f2, True), (f3, False)
    else:
        xs = [None] * 4
        ys = [None] * 4
        xs[0], xs[2] = (e1, True), (e2, False)
        ys[0], ys[2] = (e2, True), (e3, False)
        if site.align > 0:
            xs[1], xs[3] = (f1, True), (f2, False)
            ys[3], ys[1] = (f2, True), (f3, False)
        else:
            ys[3], ys[1] = (f1, True), (f2, False)
            xs[1], xs[3] = (f2, True), (f3, False)
    b.crossings[x] = xs
    b.crossings[y] = ys
    b.replace_end(e.tail[0], e.tail[1], e.id, e1, False)
    b.replace_end(e.head[0], e.head[1], e.id, e3, True)
    b.replace_end(f.tail[0], f.tail[1], f.id, f1, False)
    b.replace_end(f.head[0], f.head[1], f.id, f3, True)
    b.split_in_component(e.id, [e1, e2, e3])
    b.split_in_component(f.id, [f1, f2, f3])
    # a reattached crossing-free piece loses its placement
    for cid in (d.edges[e.id].component, d.edges[f.id].component):
        b.placements.pop(cid, None)
    rec = MoveRecord(site, {e.id: (e1, e2, e3), f.id: (f1, f2, f3)},
                     frozenset(set(d.edges) - {e.id, f.id}), frozenset({x, y}))
    try:
        return b.finish(), rec
    except DiagramError as exc:
        raise MoveError(f"inapplicable insert: {exc}") from None


def _apply_r2_remove(d: Diagram, site: MoveSite):
    v, g = site.corner
    face = d.faces()[d.face_of_corner(site.corner)]
    corners = face.cycles[0]
    if len(corners) != 2:
        raise MoveError("stale site: face is no longer a bigon")
    (v1, g1), (v2, g2) = corners
    darts = _face_darts(d, corners)
    eids = sorted({d.slot_edge(vv, ss)[0] for vv, ss in darts})
    p = next(eid for eid in eids
             if all(s in (1, 3) for vtx in (v1, v2)
                    for s in range(4) if d.crossings[vtx].slots[s][0] == eid))
    q = next(eid for eid in eids if eid != p)

    def partner(vtx, eid, over):
        ss = (1, 3) if over else (0, 2)
        own = [s for s in ss if d.crossings[vtx].slots[s][0] == eid]
        other = [d.crossings[vtx].slots[s][0] for s in ss
                 if d.crossings[vtx].slots[s][0] != eid]
        if not other:
            raise MoveError("stale site: bigon pattern changed")
        return other[0]

    po1, po2 = partner(v1, p, True), partner(v2, p, True)
    qu1, qu2 = partner(v1, q, False), partner(v2, q, False)
    b = _Builder(d)
    dead = {v1, v2}
    edge_map = {}

    def fuse(strand_eid, s1, s2):
        """Fuse s1 + strand + s2 into one new edge (or a free circle)."""
        if s1 == s2:
            run = _run_order(d, [s1, strand_eid], s1)
            cid = b.replace_run(run, [])
            edge_map[s1] = ()
            edge_map[strand_eid] = ()
            return cid
        new = b.new_edges(1)[0]
        a, c = d.edges[s1], d.edges[s2]
        # orient: one of s1, s2 arrives at the dying pair, the other leaves
        first, last = (s1, s2) if a.head[0] in dead else (s2, s1)
        fa, fc = d.edges[first], d.edges[last]
        b.replace_end(fa.tail[0], fa.tail[1], first, new, False)
        b.replace_end(fc.head[0], fc.head[1], last, new, True)
        b.replace_run(_run_order(d, [first, strand_eid, last], first), [new])
        edge_map[first] = (new,)
        edge_map[strand_eid] = (new,)
        edge_map[last] = (new,)
        return None

    freed = []
    cid = fuse(p, po1, po2)
    if cid is not None:
        freed.append((cid, p))
    cid = fuse(q, qu1, qu2)
    if cid is not None:
        freed.append((cid, q))
    del b.crossings[v1]
    del b.crossings[v2]
    b.outer = b.reanchor_corner(b.outer, dead)
    b.placements = {c2: b.reanchor_corner(cr, dead) for c2, cr in b.placements.items()}
    for cid, strand in freed:
        # the freed loop slides off into the face on the strand's far side
        far_ids = [fid for fid in d.edge_faces(strand) if fid != face.id]
        far = d.faces()[far_ids[0] if far_ids else d.edge_faces(strand)[0]]
        side_corner = next((c for c in sorted(far.corners) if c[0] not in dead), None)
        if side_corner is None:
            side_corner = next((c for f2 in d.faces() for c in sorted(f2.corners)
                                if c[0] not in dead), None)
        if side_corner is not None:
            b.placements[cid] = side_corner
    stable = frozenset(set(d.edges) - set(edge_map))
    rec = MoveRecord(site, edge_map, stable, frozenset(dead))
    return b.finish(), rec


def _apply_r3(d: Diagram, site: MoveSite):
    face = d.faces()[d.face_of_corner(site.corner)]
    corners = face.cycles[0]
    if len(corners) != 3:
        raise MoveError("stale site: face is no longer a trigon")
    darts = _face_darts(d, corners)
    labeling = None
    for rot in range(3):
        cyc = darts[rot:] + darts[:rot]
        slots = tuple(s for _, s in cyc)
        if site.variant == "lhs" and slots == (2, 0, 3):
            P, R, Q = (v for v, _ in cyc)
            if _check_lhs(d, P, Q, R):
                labeling = (P, Q, R)
                break
        if site.variant == "rhs" and slots == (2, 1, 0):
            R, Q, P = (v for v, _ in cyc)
            if _check_rhs(d, P, Q, R):
                labeling = (P, Q, R)
                break
    if labeling is None:
        raise MoveError("stale site: trigon pattern changed")
    P, Q, R = labeling
    b = _Builder(d)
    if site.variant == "lhs":
        a = _edge_between(d, P, 1, Q, 3)
        bb = _edge_between(d, P, 2, R, 3)
        c = _edge_between(d, Q, 2, R, 0)
        a2, b2, c2 = b.new_edges(3)
        A_in = d.crossings[P].slots[3]
        B_in = d.crossings[P].slots[0]
        A_out = d.crossings[Q].slots[1]
        C_in = d.crossings[Q].slots[0]
        B_out = d.crossings[R].slots[1]
        C_out = d.crossings[R].slots[2]
        b.crossings[R] = [C_in, (b2, False), (c2, False), B_in]
        b.crossings[Q] = [(c2, True), (a2, False), C_out, A_in]
        b.crossings[P] = [(b2, True), A_out, B_out, (a2, True)]
        b.replace_run([a], [a2])
        b.replace_run([bb], [b2])
        b.replace_run([c], [c2])
        edge_map = {a: (a2,), bb: (b2,), c: (c2,)}
    else:
        bb = _edge_between(d, R, 1, P, 0)
        c = _edge_between(d, R, 2, Q, 0)
        a = _edge_between(d, Q, 1, P, 3)
        a2, b2, c2 = b.new_edges(3)
        C_in = d.crossings[R].slots[0]
        B_in = d.crossings[R].slots[3]
        A_in = d.crossings[Q].slots[3]
        C_out = d.crossings[Q].slots[2]
        A_out = d.crossings[P].slots[1]
        B_out = d.crossings[P].slots[2]
        b.crossings[P] = [B_in, (a2, False), (b2, False), A_in]
        b.crossings[Q] = [C_in, A_out, (c2, False), (a2, True)]
        b.crossings[R] = [(c2, True), B_out, C_out, (b2, True)]
        b.replace_run([a], [a2])
        b.replace_run([bb], [b2])
        b.replace_run([c], [c2])
        edge_map = {a: (a2,), bb: (b2,), c: (c2,)}
    stable = frozenset(set(d.edges) - set(edge_map))
    rec = MoveRecord(site, edge_map, stable, frozenset({P, Q, R}))
    return b.finish(), rec


_APPLY = {
    "r1_insert": _apply_r1_insert,
    "r1_remove": _apply_r1_remove,
    "r2_insert": _apply_r2_insert,
    "r2_remove": _apply_r2_remove,
    "r3": _apply_r3,
}


def apply_move(d: Diagram, site: MoveSite):
    """Apply a move; returns (new diagram, record).  Raises MoveError when the
    site no longer matches the diagram."""
    try:
        return _APPLY[site.kind](d, site)
    except KeyError:
        raise MoveError(f"unknown move kind {site.kind!r}") from None


# ---------------------------------------------------------------------------
# coloring transport


def transport_coloring(d: Diagram, c: ShadowColoring, record: MoveRecord,
                       d2: Diagram, X: Quandle, Y: XSet) -> ShadowColoring:
    """Carry a coloring across a move: colors of untouched arcs and faces are
    kept, the rest is the unique consistent completion."""
    arc_partial: dict[int, int] = {}
    for eid in record.stable_edges:
        if eid in d2.edges:
            old_arc = d.arc_of_edge(eid)
            arc_partial[d2.arc_of_edge(eid)] = c.arc(old_arc)
    face_partial: dict[int, int] = {}
    touched = record.touched_vertices
    for f2 in d2.faces():
        for corner in f2.corners:
            v = corner[0]
            if v in touched or v not in set(d.crossings) | set(d.endpoints):
                continue
            if v in d.crossings and d.crossings[v].slots != d2.crossings[v].slots:
                continue
            old_face = d.face_of_corner(corner)
            face_partial[f2.id] = c.face(old_face)
            break
    out = extend_partial_coloring(d2, X, Y, arc_partial, face_partial)
    if len(out) != 1:
        raise MoveError(
            f"coloring transport is not unique across this move ({len(out)} completions)")
    res = out[0]
    rep = verify_coloring(d2, res, X, Y)
    if not rep:
        raise MoveError(f"transported coloring invalid: {rep.message}")
    return res


# ---------------------------------------------------------------------------
# fuzzing


@dataclass
class FuzzReport:
    trials: int
    ok: bool
    failures: list = field(default_factory=list)
    scripts: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def fuzz_invariance(d: Diagram, X: Quandle, Y: XSet, f: Cocycle,
                    trials: int, max_moves: int, seed: int, y0=None) -> FuzzReport:
    """Random safe-move walks; asserts the coloring count, the weight multiset,
    and the group-ring invariant are preserved, and that per-coloring weights
    survive transport across every single move."""
    from .invariant import weight, cocycle_invariant_multiset

    rng = random.Random(seed)
    report = FuzzReport(trials=trials, ok=True)
    base_count = len(enumerate_shadow_colorings(d, X, Y))
    base_multiset = cocycle_invariant_multiset(f, d, y0=None)
    base_restricted = None
    if y0 is not None and d.surface == "plane":
        base_restricted = cocycle_invariant_multiset(f, d, y0=y0)

    for trial in range(trials):
        cur = d
        script = []
        length = rng.randint(0, max_moves)
        for _ in range(length):
            sites = [s for s in find_move_sites(cur) if s.safe]
            if not sites:
                break
            site = rng.choice(sites)
            try:
                nxt, rec = apply_move(cur, site)
            except MoveError:
                continue
            script.append(site.script())
            colorings = enumerate_shadow_colorings(cur, X, Y)
            for col in colorings:
                col2 = transport_coloring(cur, col, rec, nxt, X, Y)
                if weight(f, cur, col) != weight(f, nxt, col2):
                    report.ok = False
                    report.failures.append(
                        (trial, list(script), "weight changed under transport"))
                    break
            cur = nxt
            if not report.ok:
                break
        if not report.ok:
            break
        count = len(enumerate_shadow_colorings(cur, X, Y))
        multiset = cocycle_invariant_multiset(f, cur, y0=None)
        bad = None
        if count != base_count:
            bad = f"coloring number changed: {base_count} -> {count}"
        elif multiset != base_multiset:
            bad = "weight multiset changed"
        elif base_restricted is not None:
            restricted = cocycle_invariant_multiset(f, cur, y0=y0)
            if restricted != base_restricted:
                bad = "restricted weight multiset changed"
        if bad:
            report.ok = False
            report.failures.append((trial, list(script), bad))
            break
        report.scripts.append(list(script))
    return report
