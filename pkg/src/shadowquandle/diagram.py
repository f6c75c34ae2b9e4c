"""Combinatorial knotoid and multi-linkoid diagrams.

A diagram is a rotation system: each crossing has four slots in counterclockwise
order, with slot 0 the incoming under-strand end, slot 2 the outgoing
under-strand end, and slots 1 and 3 carrying the over-strand; endpoints are
degree-1 vertices with a single slot.  Faces are orbits of the next-corner
permutation on directed edge-ends, so the Euler count doubles as the sphere
realizability check.  Plane diagrams additionally name an outer corner.

Crossing-free components (embedded arcs, free circles) may be disconnected from
the rest; they carry a placement corner naming the face they sit in, since a
rotation system alone does not locate them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

__all__ = [
    "DiagramError",
    "ParseError",
    "Crossing",
    "Endpoint",
    "Edge",
    "Component",
    "Face",
    "Arc",
    "Diagram",
    "parse_diagram",
    "serialize",
    "mirror",
    "reverse",
    "product",
    "isomorphic",
]


class DiagramError(ValueError):
    pass


class ParseError(DiagramError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


Corner = tuple[int, int]  # (vertex id, gap index)
SlotRef = tuple[int, int]  # (vertex id, slot index)

# slot the strand leaves from after arriving at a given slot
_PASSTHRU = {0: 2, 1: 3, 3: 1}


@dataclass(frozen=True)
class Crossing:
    id: int
    # slots[k] = (edge id, is_head); is_head means the edge arrives here
    slots: tuple[tuple[int, bool], ...]

    def over_enters_slot3(self) -> bool:
        return self.slots[3][1]

    @property
    def sign(self) -> int:
        return 1 if self.over_enters_slot3() else -1


@dataclass(frozen=True)
class Endpoint:
    id: int
    kind: str  # "L" or "H"
    edge: int

    @property
    def is_head(self) -> bool:
        return self.kind == "H"


@dataclass(frozen=True)
class Edge:
    id: int
    component: int
    tail: SlotRef
    head: SlotRef


@dataclass(frozen=True)
class Component:
    id: int
    kind: str  # "interval" or "circle"
    edges: tuple[int, ...]


@dataclass(frozen=True)
class Face:
    id: int
    cycles: tuple[tuple[Corner, ...], ...]
    inside_of: int | None = None  # component id when this is a free circle interior

    @property
    def corners(self) -> tuple[Corner, ...]:
        return tuple(c for cyc in self.cycles for c in cyc)


@dataclass(frozen=True)
class Arc:
    id: int
    component: int
    edges: tuple[int, ...]
    closed: bool
    meets_leg: bool
    meets_head: bool

    @property
    def meets_endpoint(self) -> bool:
        return self.meets_leg or self.meets_head


class Diagram:
    """Validated immutable diagram.  Construct via the parser, the catalog, or
    builder surgery; direct construction runs the full consistency check."""

    def __init__(self, surface: str, crossings: dict[int, Crossing],
                 endpoints: dict[int, Endpoint], components: dict[int, Component],
                 outer: Corner | None = None, placements: dict[int, Corner] | None = None):
        if surface not in ("sphere", "plane"):
            raise DiagramError(f"unknown surface {surface!r}")
        self.surface = surface
        self.crossings = dict(crossings)
        self.endpoints = dict(endpoints)
        self.components = dict(components)
        self.outer = outer
        self.placements = dict(placements or {})
        self.edges: dict[int, Edge] = {}
        self._faces: list[Face] | None = None
        self._arcs: list[Arc] | None = None
        self._face_of_corner: dict[Corner, int] | None = None
        self._arc_of_edge: dict[int, int] | None = None
        self._validate()

    # -- validation ---------------------------------------------------------

    def _slot_occurrences(self) -> dict[int, list[tuple[SlotRef, bool]]]:
        occ: dict[int, list[tuple[SlotRef, bool]]] = {}
        for v, c in self.crossings.items():
            if len(c.slots) != 4:
                raise DiagramError(f"crossing {v} must have 4 slots")
            for s, (eid, is_head) in enumerate(c.slots):
                occ.setdefault(eid, []).append(((v, s), is_head))
        for v, e in self.endpoints.items():
            occ.setdefault(e.edge, []).append(((v, 0), e.is_head))
        return occ

    def _validate(self) -> None:
        eids: set[int] = set()
        comp_of_edge: dict[int, int] = {}
        for cid, comp in self.components.items():
            if comp.kind not in ("interval", "circle"):
                raise DiagramError(f"component {cid}: unknown kind {comp.kind!r}")
            if comp.kind == "interval" and not comp.edges:
                raise DiagramError(f"interval component {cid} has no edges")
            for eid in comp.edges:
                if eid in comp_of_edge:
                    raise DiagramError(f"edge {eid} listed twice")
                comp_of_edge[eid] = cid
                eids.add(eid)

        occ = self._slot_occurrences()
        if set(occ) - eids:
            raise DiagramError(f"edges {sorted(set(occ) - eids)} used at slots but not declared")
        for v, c in self.crossings.items():
            if not c.slots[0][1]:
                raise DiagramError(f"crossing {v}: slot 0 must be an incoming end")
            if c.slots[2][1]:
                raise DiagramError(f"crossing {v}: slot 2 must be an outgoing end")
            if c.slots[1][1] == c.slots[3][1]:
                raise DiagramError(f"crossing {v}: slots 1 and 3 need one incoming and one outgoing end")

        vids = set(self.crossings) | set(self.endpoints)
        if set(self.crossings) & set(self.endpoints):
            raise DiagramError("crossing and endpoint ids overlap")

        # walk every component, deriving edge records and checking traversal order
        for cid, comp in sorted(self.components.items()):
            self._walk_component(comp, occ)

        for eid in eids:
            ends = occ.get(eid, [])
            if len(ends) != 2:
                raise DiagramError(f"edge {eid} must be attached at exactly two slots, has {len(ends)}")

        # interval component endpoints: exactly one leg and one head each
        legs = {e.edge: v for v, e in self.endpoints.items() if e.kind == "L"}
        heads = {e.edge: v for v, e in self.endpoints.items() if e.kind == "H"}
        for cid, comp in self.components.items():
            if comp.kind == "interval":
                if comp.edges[0] not in legs:
                    raise DiagramError(f"interval component {cid}: first edge must leave a leg")
                if comp.edges[-1] not in heads:
                    raise DiagramError(f"interval component {cid}: last edge must reach a head")

        # placements and connectivity
        anchor_parts = self._graph_parts()
        for cid, corner in self.placements.items():
            comp = self.components.get(cid)
            if comp is None:
                raise DiagramError(f"placement of unknown component {cid}")
            if self._component_has_crossing(comp):
                raise DiagramError(f"component {cid} is placed but not crossing-free")
            self._check_corner(corner, f"placement of component {cid}")
        unplaced = [part for part in anchor_parts if not self._part_placed(part)]
        if len(unplaced) > 1:
            raise DiagramError("diagram is disconnected: place crossing-free components or join them")

        if self.surface == "plane":
            if self.outer is None:
                raise DiagramError("plane diagram missing outer-face declaration")
            self._check_corner(self.outer, "outer face")
        elif self.outer is not None:
            raise DiagramError("sphere diagram cannot declare an outer face")

        # Euler characteristic: V - E + F = 1 + number of graph parts
        V = len(self.crossings) + len(self.endpoints)
        E = len(self.edges)
        F = len(self.faces())
        parts = len(anchor_parts)
        if V - E + F != 1 + parts:
            raise DiagramError(
                f"not realizable on the sphere as given: V={V} E={E} F={F} parts={parts}")

    def _walk_component(self, comp: Component, occ) -> None:
        if not comp.edges:
            if comp.kind != "circle":
                raise DiagramError(f"component {comp.id} has no edges")
            return
        first = comp.edges[0]
        ends = occ.get(first, [])
        if len(ends) != 2:
            raise DiagramError(f"edge {first} must be attached at exactly two slots")
        if comp.kind == "interval":
            tails = [pos for pos, _ in ends
                     if pos[0] in self.endpoints and self.endpoints[pos[0]].kind == "L"]
            if not tails:
                raise DiagramError(f"component {comp.id}: first edge {first} does not leave a leg")
            tail = tails[0]
        else:
            tail = self._circle_start_tail(first, ends)
        pos = tail
        for i, eid in enumerate(comp.edges):
            ends = occ.get(eid, [])
            if len(ends) != 2:
                raise DiagramError(f"edge {eid} must be attached at exactly two slots")
            others = [p for p, _ in ends if p != pos]
            if len(others) != 1:
                raise DiagramError(f"edge {eid}: traversal does not match its attachments")
            head = others[0]
            if not self._end_can_arrive(head):
                raise DiagramError(f"edge {eid} arrives at a non-incoming slot {head}")
            if not self._end_can_leave(pos):
                raise DiagramError(f"edge {eid} leaves a non-outgoing slot {pos}")
            self.edges[eid] = Edge(eid, comp.id, pos, head)
            v, s = head
            if v in self.endpoints:
                if i != len(comp.edges) - 1 or comp.kind != "interval":
                    raise DiagramError(f"component {comp.id} hits an endpoint mid-traversal")
                return
            nxt = _PASSTHRU.get(s)
            if nxt is None:
                raise DiagramError(f"edge {eid} arrives at slot 2 of crossing {v}")
            out_eid, out_is_head = self.crossings[v].slots[nxt]
            if out_is_head:
                raise DiagramError(f"crossing {v}: slot {nxt} should hold an outgoing end")
            want = comp.edges[(i + 1) % len(comp.edges)]
            if out_eid != want:
                raise DiagramError(
                    f"component {comp.id}: expected edge {want} after edge {eid}, found {out_eid}")
            pos = (v, nxt)
        if comp.kind == "circle" and pos != tail:
            raise DiagramError(f"circle component {comp.id} does not close up")
        if comp.kind == "interval":
            raise DiagramError(f"interval component {comp.id} never reaches its head")

    def _circle_start_tail(self, eid: int, ends) -> SlotRef:
        """Tail of a circle's first edge: slot semantics pin it when possible,
        otherwise the lexicographically smaller attachment is the tail."""
        cand = []
        for pos, _ in ends:
            v, s = pos
            if v in self.endpoints:
                raise DiagramError(f"circle edge {eid} attached to an endpoint")
            if s == 0:
                continue  # slot 0 only receives
            cand.append(pos)
        pinned = [pos for pos in cand if pos[1] == 2]
        other = [pos for pos, _ in ends if pos not in pinned]
        if len(pinned) == 1:
            return pinned[0]
        if len(pinned) == 2:
            raise DiagramError(f"edge {eid} leaves two slots")
        if len(cand) == 2:
            return min(cand)
        if len(cand) == 1 and len(ends) == 2:
            return cand[0]
        raise DiagramError(f"edge {eid} has no consistent orientation")

    def _end_can_arrive(self, pos: SlotRef) -> bool:
        v, s = pos
        if v in self.endpoints:
            return self.endpoints[v].kind == "H"
        return s in (0, 1, 3)

    def _end_can_leave(self, pos: SlotRef) -> bool:
        v, s = pos
        if v in self.endpoints:
            return self.endpoints[v].kind == "L"
        return s in (1, 2, 3)

    def _component_has_crossing(self, comp: Component) -> bool:
        for eid in comp.edges:
            e = self.edges[eid]
            if e.tail[0] in self.crossings or e.head[0] in self.crossings:
                return True
        return False

    def _graph_parts(self) -> list[set[int]]:
        """Connected pieces as sets of component ids (vertex-sharing via crossings)."""
        parent: dict[int, int] = {cid: cid for cid in self.components}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        at_vertex: dict[int, int] = {}
        for e in self.edges.values():
            for v, _ in (e.tail, e.head):
                if v in at_vertex:
                    union(at_vertex[v], e.component)
                else:
                    at_vertex[v] = e.component
        groups: dict[int, set[int]] = {}
        for cid in self.components:
            groups.setdefault(find(cid), set()).add(cid)
        return list(groups.values())

    def _part_placed(self, part: set[int]) -> bool:
        return any(cid in self.placements for cid in part)

    def _check_corner(self, corner: Corner, what: str) -> None:
        v, g = corner
        if v in self.crossings:
            if not 0 <= g < 4:
                raise DiagramError(f"{what}: gap {g} out of range at crossing {v}")
        elif v in self.endpoints:
            if g != 0:
                raise DiagramError(f"{what}: endpoint corners have gap 0")
        else:
            raise DiagramError(f"{what}: unknown vertex {v}")

    # -- basic queries -------------------------------------------------------

    def degree(self, v: int) -> int:
        return 4 if v in self.crossings else 1

    def slot_edge(self, v: int, s: int) -> tuple[int, bool]:
        if v in self.crossings:
            return self.crossings[v].slots[s]
        e = self.endpoints[v]
        return (e.edge, e.is_head)

    def crossing_count(self) -> int:
        return len(self.crossings)

    def vertex_count(self) -> int:
        return len(self.crossings) + len(self.endpoints)

    # -- faces ----------------------------------------------------------------

    def _alpha(self, dart: SlotRef) -> SlotRef:
        eid, _ = self.slot_edge(*dart)
        e = self.edges[eid]
        return e.head if e.tail == dart else e.tail

    def _sigma(self, dart: SlotRef) -> SlotRef:
        v, s = dart
        return (v, (s + 1) % self.degree(v))

    def faces(self) -> list[Face]:
        if self._faces is not None:
            return self._faces
        darts = [(v, s) for v in sorted(self.crossings) for s in range(4)]
        darts += [(v, 0) for v in sorted(self.endpoints)]
        seen: set[SlotRef] = set()
        raw_cycles: list[tuple[Corner, ...]] = []
        dart_cycle: dict[SlotRef, int] = {}
        for d0 in darts:
            if d0 in seen:
                continue
            cyc: list[Corner] = []
            d = d0
            while True:
                seen.add(d)
                dart_cycle[d] = len(raw_cycles)
                v, s = d
                cyc.append((v, (s - 1) % self.degree(v)))
                d = self._sigma(self._alpha(d))
                if d == d0:
                    break
            k = cyc.index(min(cyc))
            raw_cycles.append(tuple(cyc[k:] + cyc[:k]))

        # merge placed components' boundary cycles into their host face
        parent = list(range(len(raw_cycles)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        corner_cycle = {c: i for i, cyc in enumerate(raw_cycles) for c in cyc}
        free_circles = []
        for cid in sorted(self.placements):
            comp = self.components[cid]
            host = corner_cycle.get(self.placements[cid])
            if host is None:
                raise DiagramError(f"placement corner {self.placements[cid]} not found")
            if not comp.edges:
                free_circles.append(cid)
                continue
            own_corners = set()
            for eid in comp.edges:
                e = self.edges[eid]
                for v, _ in (e.tail, e.head):
                    own_corners.add((v, 0))
            for c in own_corners:
                a, b = find(corner_cycle[c]), find(host)
                if a != b:
                    parent[a] = b
        # unplaced free circles (sole-component degenerate case)
        for cid, comp in sorted(self.components.items()):
            if not comp.edges and cid not in self.placements:
                free_circles.append(cid)

        groups: dict[int, list[int]] = {}
        for i in range(len(raw_cycles)):
            groups.setdefault(find(i), []).append(i)
        merged = [tuple(sorted(raw_cycles[i] for i in g)) for g in groups.values()]
        merged.sort(key=lambda cycles: cycles[0][0])
        faces = [Face(i, cycles) for i, cycles in enumerate(merged)]
        if not raw_cycles:
            faces = [Face(0, ())]  # bare sphere
        for cid in free_circles:
            faces.append(Face(len(faces), (), inside_of=cid))
        self._faces = faces
        self._face_of_corner = {c: f.id for f in faces for c in f.corners}
        return faces

    def face_of_corner(self, corner: Corner) -> int:
        self.faces()
        return self._face_of_corner[corner]

    def edge_faces(self, eid: int) -> tuple[int, int]:
        """(right face, left face) of an edge relative to its orientation."""
        e = self.edges[eid]
        right = self.face_of_corner(self._dart_corner(e.tail))
        left = self.face_of_corner(self._dart_corner(e.head))
        return right, left

    def _dart_corner(self, dart: SlotRef) -> Corner:
        v, s = dart
        return (v, (s - 1) % self.degree(v))

    def outer_face(self) -> int:
        if self.surface != "plane":
            raise DiagramError("only plane diagrams have an outer face")
        return self.face_of_corner(self.outer)

    # -- arcs -----------------------------------------------------------------

    def arcs(self) -> list[Arc]:
        if self._arcs is not None:
            return self._arcs
        pieces: list[tuple[int, tuple[int, ...], bool, bool, bool]] = []
        for cid, comp in sorted(self.components.items()):
            if not comp.edges:
                pieces.append((cid, (), True, False, False))
                continue
            cuts = [i for i, eid in enumerate(comp.edges) if self._cuts_after(eid)]
            if comp.kind == "interval":
                start = 0
                runs = []
                for i in cuts:
                    runs.append(comp.edges[start:i + 1])
                    start = i + 1
                runs.append(comp.edges[start:])
                for j, run in enumerate(runs):
                    pieces.append((cid, tuple(run), False, j == 0, j == len(runs) - 1))
            else:
                if not cuts:
                    pieces.append((cid, tuple(comp.edges), True, False, False))
                else:
                    n = len(comp.edges)
                    for j, i in enumerate(cuts):
                        nxt = cuts[(j + 1) % len(cuts)]
                        idx = [(i + 1 + k) % n for k in range(((nxt - i - 1) % n) + 1)]
                        pieces.append((cid, tuple(comp.edges[k] for k in idx), False, False, False))
        pieces.sort(key=lambda p: (0, min(p[1])) if p[1] else (1, p[0]))
        arcs = [Arc(i, cid, edges, closed, leg, head)
                for i, (cid, edges, closed, leg, head) in enumerate(pieces)]
        self._arcs = arcs
        self._arc_of_edge = {eid: a.id for a in arcs for eid in a.edges}
        return arcs

    def _cuts_after(self, eid: int) -> bool:
        """True when the edge ends by passing under a crossing (arrives at slot 0)."""
        head = None
        for e in (self.edges[eid],):
            head = e.head
        v, s = head
        return v in self.crossings and s == 0

    def arc_of_edge(self, eid: int) -> int:
        self.arcs()
        return self._arc_of_edge[eid]

    # -- crossings seen through arcs ------------------------------------------

    def crossing_arcs(self, v: int) -> tuple[int, int, int]:
        """(under-in arc, under-out arc, over arc) at a crossing."""
        c = self.crossings[v]
        a_in = self.arc_of_edge(c.slots[0][0])
        a_out = self.arc_of_edge(c.slots[2][0])
        over1 = self.arc_of_edge(c.slots[1][0])
        over3 = self.arc_of_edge(c.slots[3][0])
        if over1 != over3:
            raise DiagramError(f"crossing {v}: over-strand edges lie on different arcs")
        return a_in, a_out, over1


# ---------------------------------------------------------------------------
# Parsing and serialization


def parse_diagram(text: str) -> Diagram:
    """Parse the line-oriented diagram format; errors carry line numbers."""
    surface = None
    comps: dict[int, tuple[str, list[int]]] = {}
    edge_decl: dict[int, int] = {}
    crossings: dict[int, Crossing] = {}
    endpoints: dict[int, Endpoint] = {}
    outer: Corner | None = None
    placements: dict[int, Corner] = {}
    slots_raw: dict[int, tuple[int, int, int, int]] = {}

    def corner_of(token: str, lineno: int) -> Corner:
        if ":" not in token:
            raise ParseError(f"corner {token!r} must look like vid:gap", lineno)
        v, _, g = token.partition(":")
        return (int(v), int(g))

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            kw = parts[0]
            if kw == "surface":
                surface = parts[1]
            elif kw == "component":
                comps[int(parts[2])] = (parts[1], [])
            elif kw == "edge":
                eid, cid = int(parts[1]), int(parts[2])
                if eid in edge_decl:
                    raise ParseError(f"edge {eid} declared twice", lineno)
                if cid not in comps:
                    raise ParseError(f"edge {eid} references unknown component {cid}", lineno)
                edge_decl[eid] = cid
                comps[cid][1].append(eid)
            elif kw == "X":
                vid = int(parts[1])
                es = tuple(int(p) for p in parts[2:6])
                if len(parts) != 6:
                    raise ParseError("X line needs vid and four edge ids", lineno)
                if vid in slots_raw or vid in endpoints:
                    raise ParseError(f"vertex {vid} declared twice", lineno)
                slots_raw[vid] = es
            elif kw in ("L", "H"):
                vid, eid = int(parts[1]), int(parts[2])
                if vid in slots_raw or vid in endpoints:
                    raise ParseError(f"vertex {vid} declared twice", lineno)
                endpoints[vid] = Endpoint(vid, kw, eid)
            elif kw == "outer":
                outer = corner_of(parts[1], lineno)
            elif kw == "place":
                if len(parts) != 4 or parts[2] != "in":
                    raise ParseError("place line must be 'place <cid> in <vid>:<gap>'", lineno)
                placements[int(parts[1])] = corner_of(parts[3], lineno)
            else:
                raise ParseError(f"unknown directive {kw!r}", lineno)
        except ParseError:
            raise
        except (ValueError, IndexError) as exc:
            raise ParseError(f"malformed line {line!r} ({exc})", lineno) from None

    if surface is None:
        raise ParseError("missing 'surface' line")

    # resolve is_head flags for crossing slots by walking components
    dangling = [eid for vid, es in slots_raw.items() for eid in es if eid not in edge_decl]
    for vid, e in endpoints.items():
        if e.edge not in edge_decl:
            dangling.append(e.edge)
    if dangling:
        raise ParseError(f"dangling edge references: {sorted(set(dangling))}")

    occ: dict[int, list[SlotRef]] = {}
    for vid, es in slots_raw.items():
        for s, eid in enumerate(es):
            occ.setdefault(eid, []).append((vid, s))
    for vid, e in endpoints.items():
        occ.setdefault(e.edge, []).append((vid, 0))
    for eid, cid in edge_decl.items():
        if len(occ.get(eid, [])) != 2:
            raise ParseError(f"edge {eid} must be attached at exactly two slots")

    is_head: dict[SlotRef, bool] = {}
    for vid, e in endpoints.items():
        is_head[(vid, 0)] = e.is_head
    for vid, es in slots_raw.items():
        is_head[(vid, 0)] = True
        is_head[(vid, 2)] = False

    def resolve_component(kind: str, edges: list[int]) -> None:
        if not edges:
            return
        first = edges[0]
        ends = occ[first]
        if kind == "interval":
            tails = [p for p in ends if p[0] in endpoints and endpoints[p[0]].kind == "L"]
            if not tails:
                raise ParseError(f"first edge {first} of an interval must leave a leg")
            pos = tails[0]
        else:
            fixed_tail = [p for p in ends if is_head.get(p) is False]
            fixed_head = [p for p in ends if is_head.get(p) is True]
            if fixed_tail:
                pos = fixed_tail[0]
            elif fixed_head:
                pos = next(p for p in ends if p != fixed_head[0])
            else:
                pos = min(ends)
        for i, eid in enumerate(edges):
            ends = occ[eid]
            other = next((p for p in ends if p != pos), None)
            if other is None:
                raise ParseError(f"edge {eid} does not match the traversal")
            if is_head.get(pos) is True or is_head.get(other) is False:
                raise ParseError(f"edge {eid} has no consistent orientation")
            is_head[pos], is_head[other] = False, True
            v, s = other
            if v in endpoints:
                break
            nxt = _PASSTHRU.get(s)
            if nxt is None:
                raise ParseError(f"edge {eid} runs into slot 2 of crossing {v}")
            pos = (v, nxt)

    for cid in sorted(comps):
        kind, edges = comps[cid]
        resolve_component(kind, edges)

    for vid, es in slots_raw.items():
        try:
            slots = tuple((eid, is_head[(vid, s)]) for s, eid in enumerate(es))
        except KeyError:
            raise ParseError(f"could not orient the edges at crossing {vid}")
        crossings[vid] = Crossing(vid, slots)

    components = {cid: Component(cid, kind, tuple(edges)) for cid, (kind, edges) in comps.items()}
    return Diagram(surface, crossings, endpoints, components, outer=outer, placements=placements)


def _emit(d: Diagram) -> str:
    lines = [f"surface {d.surface}"]
    for cid in sorted(d.components):
        lines.append(f"component {d.components[cid].kind} {cid}")
    for cid in sorted(d.components):
        for eid in d.components[cid].edges:
            lines.append(f"edge {eid} {cid}")
    for vid in sorted(d.crossings):
        es = " ".join(str(d.crossings[vid].slots[s][0]) for s in range(4))
        lines.append(f"X {vid} {es}")
    for vid in sorted(d.endpoints):
        e = d.endpoints[vid]
        lines.append(f"{e.kind} {vid} {e.edge}")
    if d.outer is not None:
        lines.append(f"outer {d.outer[0]}:{d.outer[1]}")
    for cid in sorted(d.placements):
        v, g = d.placements[cid]
        lines.append(f"place {cid} in {v}:{g}")
    return "\n".join(lines) + "\n"


def _relabel(d: Diagram, comp_order: list[int], rotations: dict[int, int]) -> Diagram | None:
    """Relabel ids by traversal order under a chosen component order and circle
    rotations; returns None when the rotation breaks parser orientation rules."""
    new_cid = {cid: i for i, cid in enumerate(comp_order)}
    new_eid: dict[int, int] = {}
    new_vid: dict[int, int] = {}
    comps: dict[int, Component] = {}
    for cid in comp_order:
        comp = d.components[cid]
        edges = list(comp.edges)
        if comp.kind == "circle" and edges:
            k = rotations.get(cid, 0)
            edges = edges[k:] + edges[:k]
            first = d.edges[edges[0]]
            tail_slot = first.tail[1]
            # the parser must be able to recover this edge's tail
            if tail_slot != 2:
                head_slot = first.head[1]
                if head_slot != 0 and not (first.tail < first.head):
                    return None
        for eid in edges:
            new_eid[eid] = len(new_eid)
            e = d.edges[eid]
            for v, _ in (e.tail, e.head):
                if v not in new_vid:
                    new_vid[v] = len(new_vid)
        comps[new_cid[cid]] = Component(new_cid[cid], comp.kind, tuple(new_eid[e] for e in edges))
    if len(new_vid) != d.vertex_count():
        return None

    def map_corner(c: Corner) -> Corner:
        return (new_vid[c[0]], c[1])

    crossings = {}
    for vid, c in d.crossings.items():
        crossings[new_vid[vid]] = Crossing(
            new_vid[vid], tuple((new_eid[eid], h) for eid, h in c.slots))
    endpoints = {new_vid[v]: Endpoint(new_vid[v], e.kind, new_eid[e.edge])
                 for v, e in d.endpoints.items()}
    outer = None
    if d.outer is not None:
        face = d.faces()[d.outer_face()]
        outer = min(map_corner(c) for c in face.corners)
    placements = {}
    for cid, corner in d.placements.items():
        face = d.faces()[d.face_of_corner(corner)]
        placements[new_cid[cid]] = min(map_corner(c) for c in face.corners)
    try:
        return Diagram(d.surface, crossings, endpoints, comps, outer=outer, placements=placements)
    except DiagramError:
        return None


def canonical_form(d: Diagram) -> str:
    """Minimal serialization over component orderings and circle rotations."""
    cids = sorted(d.components)
    groups: dict[tuple, list[int]] = {}
    for cid in cids:
        comp = d.components[cid]
        groups.setdefault((comp.kind, len(comp.edges)), []).append(cid)
    group_keys = sorted(groups)
    best: str | None = None
    per_group_perms = [list(itertools.permutations(groups[k])) for k in group_keys]
    circle_ids = [cid for cid in cids if d.components[cid].kind == "circle" and d.components[cid].edges]
    rot_spaces = [range(len(d.components[cid].edges)) for cid in circle_ids]
    for perm_choice in itertools.product(*per_group_perms):
        order = [cid for group in perm_choice for cid in group]
        for rots in itertools.product(*rot_spaces):
            relabeled = _relabel(d, order, dict(zip(circle_ids, rots)))
            if relabeled is None:
                continue
            text = _emit(relabeled)
            if best is None or text < best:
                best = text
    if best is None:
        raise DiagramError("no canonical labeling found")
    return best


def serialize(d: Diagram) -> str:
    """Canonical text for the diagram; parsing it back gives an isomorphic diagram."""
    return canonical_form(d)


def isomorphic(d1: Diagram, d2: Diagram) -> bool:
    if d1.surface != d2.surface or d1.crossing_count() != d2.crossing_count():
        return False
    if len(d1.edges) != len(d2.edges) or len(d1.endpoints) != len(d2.endpoints):
        return False
    return canonical_form(d1) == canonical_form(d2)


# ---------------------------------------------------------------------------
# Symmetries and product


def mirror(d: Diagram) -> Diagram:
    """Swap over/under roles at every crossing (slots rotate by one)."""
    crossings = {}
    corner_shift: dict[int, int] = {}
    for vid, c in d.crossings.items():
        if c.over_enters_slot3():
            slots = tuple(c.slots[(k + 3) % 4] for k in range(4))
            corner_shift[vid] = 1
        else:
            slots = tuple(c.slots[(k + 1) % 4] for k in range(4))
            corner_shift[vid] = -1
        crossings[vid] = Crossing(vid, slots)

    def map_corner(corner: Corner) -> Corner:
        v, g = corner
        if v in corner_shift:
            return (v, (g + corner_shift[v]) % 4)
        return corner

    outer = map_corner(d.outer) if d.outer is not None else None
    placements = {cid: map_corner(c) for cid, c in d.placements.items()}
    return Diagram(d.surface, crossings, dict(d.endpoints), dict(d.components),
                   outer=outer, placements=placements)


def reverse(d: Diagram) -> Diagram:
    """Reverse all strand orientations; heads and legs swap labels."""
    crossings = {}
    for vid, c in d.crossings.items():
        slots = tuple((c.slots[(k + 2) % 4][0], not c.slots[(k + 2) % 4][1]) for k in range(4))
        crossings[vid] = Crossing(vid, slots)
    endpoints = {v: Endpoint(v, "H" if e.kind == "L" else "L", e.edge)
                 for v, e in d.endpoints.items()}
    components = {cid: Component(cid, comp.kind, tuple(reversed(comp.edges)))
                  for cid, comp in d.components.items()}

    def map_corner(corner: Corner) -> Corner:
        v, g = corner
        return (v, (g + 2) % 4) if v in d.crossings else corner

    outer = map_corner(d.outer) if d.outer is not None else None
    placements = {cid: map_corner(c) for cid, c in d.placements.items()}
    return Diagram(d.surface, crossings, endpoints, components,
                   outer=outer, placements=placements)


def _single_interval(d: Diagram, what: str) -> Component:
    comps = list(d.components.values())
    if len(comps) != 1 or comps[0].kind != "interval":
        raise DiagramError(f"{what} must be a knotoid diagram with a single interval component")
    return comps[0]


def product(d1: Diagram, d2: Diagram) -> Diagram:
    """Concatenate two knotoid diagrams at the leg of the first and the head of
    the second; the second factor is planted in the first's leg face."""
    c1 = _single_interval(d1, "first factor")
    c2 = _single_interval(d2, "second factor")
    if d1.surface != d2.surface:
        raise DiagramError("product factors must live on the same surface")
    if d1.surface == "plane":
        head_vid = next(v for v, e in d2.endpoints.items() if e.kind == "H")
        if d2.face_of_corner((head_vid, 0)) != d2.outer_face():
            raise DiagramError("the head of the second factor must be adjacent to its outer region")

    voff = max(list(d1.crossings) + list(d1.endpoints)) + 1
    eoff = max(d1.edges) + 1

    leg1 = next(v for v, e in d1.endpoints.items() if e.kind == "L")
    head2 = next(v for v, e in d2.endpoints.items() if e.kind == "H") + voff
    e_leg = d1.endpoints[leg1].edge
    e_head = d2.endpoints[head2 - voff].edge + eoff

    crossings = dict(d1.crossings)
    for vid, c in d2.crossings.items():
        crossings[vid + voff] = Crossing(
            vid + voff, tuple((eid + eoff, h) for eid, h in c.slots))
    endpoints = {v: e for v, e in d1.endpoints.items() if v != leg1}
    for v, e in d2.endpoints.items():
        if v + voff != head2:
            endpoints[v + voff] = Endpoint(v + voff, e.kind, e.edge + eoff)

    # fuse: the second factor's head edge continues as the first factor's leg edge
    def subst(eid: int) -> int:
        return e_head if eid == e_leg else eid

    new_crossings = {}
    for vid, c in crossings.items():
        new_crossings[vid] = Crossing(vid, tuple((subst(eid), h) for eid, h in c.slots))
    new_endpoints = {v: Endpoint(v, e.kind, subst(e.edge)) for v, e in endpoints.items()}

    edges2 = [eid + eoff for eid in c2.edges]
    edges1 = [subst(eid) for eid in c1.edges]
    merged = tuple(edges2 + edges1[1:]) if edges1 and edges1[0] == e_head else tuple(edges2 + edges1)
    # c1's first edge is e_leg, replaced by e_head which already ends edges2
    merged = tuple(edges2 + [eid for eid in c1.edges if eid != e_leg])
    components = {0: Component(0, "interval", merged)}

    outer = None
    if d1.surface == "plane":
        outer_face = d1.faces()[d1.outer_face()]
        candidates = [c for c in outer_face.corners if c[0] != leg1]
        if not candidates:
            raise DiagramError("cannot re-anchor the outer face")
        outer = min(candidates)
    return Diagram(d1.surface, new_crossings, new_endpoints, components, outer=outer)
