"""Shadow coloring enumeration for knotoid and multi-linkoid diagrams.

A shadow coloring assigns quandle elements to arcs and X-set elements to faces
subject to three local rules:

  * at a crossing, passing under the over-strand in the direction of its
    co-orientation normal acts on the under-arc color by the over color;
  * across an edge of an arc away from the endpoints, the face color is acted
    on by the arc color in the direction of the arc's normal;
  * the region around each head or leg is a fixed point of the action by the
    color of the arc ending there; arcs that meet an endpoint propagate
    nothing across themselves.

Enumeration backtracks over arc colors with constraint propagation, then
propagates face colors from a seed per face-graph component along a spanning
tree, checking the non-tree relations and fixed-point conditions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Quandle, XSet
from .diagram import Diagram, DiagramError

__all__ = [
    "ShadowColoring",
    "VerifyReport",
    "enumerate_shadow_colorings",
    "enumerate_arc_colorings",
    "coloring_number",
    "verify_coloring",
]


@dataclass(frozen=True)
class ShadowColoring:
    arc_colors: tuple[int, ...]
    face_colors: tuple[int, ...]

    def arc(self, i: int) -> int:
        return self.arc_colors[i]

    def face(self, i: int) -> int:
        return self.face_colors[i]


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    message: str = ""
    location: tuple = ()

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class _Problem:
    n_arcs: int
    n_faces: int
    crossings: tuple[tuple[int, int, int, int], ...]  # (sign, under-in, under-out, over)
    prop_pairs: tuple[tuple[int, int, int], ...]      # (right face, left face, arc): r*a = l
    fixed_pairs: tuple[tuple[int, int], ...]          # (face, arc): f*a = f
    outer_face: int | None


def _build_problem(d: Diagram) -> _Problem:
    arcs = d.arcs()
    faces = d.faces()
    crossings = []
    for v in sorted(d.crossings):
        a_in, a_out, over = d.crossing_arcs(v)
        crossings.append((d.crossings[v].sign, a_in, a_out, over))
    prop, fixed = [], set()
    for eid in sorted(d.edges):
        arc = arcs[d.arc_of_edge(eid)]
        right, left = d.edge_faces(eid)
        if not arc.meets_endpoint:
            prop.append((right, left, arc.id))
    for v in sorted(d.endpoints):
        face = d.face_of_corner((v, 0))
        arc = arcs[d.arc_of_edge(d.endpoints[v].edge)]
        fixed.add((face, arc.id))
    for f in faces:
        if f.inside_of is not None:
            cid = f.inside_of
            arc = next(a for a in arcs if a.component == cid and not a.edges)
            host_corner = d.placements.get(cid)
            host = d.face_of_corner(host_corner) if host_corner is not None else 0
            # free circle: its normal is taken to point into the enclosed face
            prop.append((host, f.id, arc.id))
    outer = d.outer_face() if d.surface == "plane" else None
    return _Problem(len(arcs), len(faces), tuple(crossings), tuple(prop),
                    tuple(sorted(fixed)), outer)


def _propagate_arcs(problem: _Problem, X: Quandle, colors: list[int | None]) -> bool:
    changed = True
    while changed:
        changed = False
        for sign, a_in, a_out, over in problem.crossings:
            ci, co, cv = colors[a_in], colors[a_out], colors[over]
            if cv is None:
                continue
            if sign > 0:
                if ci is not None:
                    want = X.op(ci, cv)
                    if co is None:
                        colors[a_out] = want
                        changed = True
                    elif co != want:
                        return False
                elif co is not None:
                    colors[a_in] = X.unop(co, cv)
                    changed = True
            else:
                if co is not None:
                    want = X.op(co, cv)
                    if ci is None:
                        colors[a_in] = want
                        changed = True
                    elif ci != want:
                        return False
                elif ci is not None:
                    colors[a_out] = X.unop(ci, cv)
                    changed = True
    return True


def _arc_consistent(problem: _Problem, X: Quandle, colors) -> bool:
    for sign, a_in, a_out, over in problem.crossings:
        ci, co, cv = colors[a_in], colors[a_out], colors[over]
        if None in (ci, co, cv):
            continue
        if sign > 0:
            if X.op(ci, cv) != co:
                return False
        elif X.op(co, cv) != ci:
            return False
    return True


def _arc_colorings(problem: _Problem, X: Quandle, partial=None):
    """All total arc colorings extending ``partial``, in lexicographic order."""
    out: list[tuple[int, ...]] = []
    base: list[int | None] = list(partial) if partial else [None] * problem.n_arcs

    def rec(colors: list[int | None]) -> None:
        if not _arc_consistent(problem, X, colors):
            return
        try:
            i = colors.index(None)
        except ValueError:
            out.append(tuple(colors))
            return
        for v in range(X.n):
            nxt = list(colors)
            nxt[i] = v
            if _propagate_arcs(problem, X, nxt):
                rec(nxt)

    start = list(base)
    if _propagate_arcs(problem, X, start):
        rec(start)
    return sorted(set(out))


def _face_components(problem: _Problem):
    """Connected pieces of the face graph under propagating adjacencies only."""
    adj: dict[int, list[tuple[int, int, bool]]] = {f: [] for f in range(problem.n_faces)}
    for right, left, arc in problem.prop_pairs:
        adj[right].append((left, arc, True))
        adj[left].append((right, arc, False))
    seen: set[int] = set()
    comps = []
    for f0 in range(problem.n_faces):
        if f0 in seen:
            continue
        order = [(f0, None)]
        seen.add(f0)
        stack = [f0]
        while stack:
            f = stack.pop()
            for g, arc, fwd in adj[f]:
                if g not in seen:
                    seen.add(g)
                    order.append((g, (f, arc, fwd)))
                    stack.append(g)
        comps.append(order)
    return comps


def _face_colorings(problem: _Problem, Y: XSet, arc_colors, y0=None):
    """Face colorings compatible with a total arc coloring, lexicographic."""
    comps = _face_components(problem)
    per_comp: list[list[dict[int, int]]] = []
    for order in comps:
        found: list[dict[int, int]] = []
        root = order[0][0]
        for seed in range(Y.m):
            assign = {root: seed}
            for f, via in order[1:]:
                src, arc, fwd = via
                a = arc_colors[arc]
                assign[f] = Y.act(assign[src], a) if fwd else Y.unact(assign[src], a)
            if all(Y.act(assign[r], arc_colors[a]) == assign[l]
                   for r, l, a in problem.prop_pairs if r in assign and l in assign):
                found.append(assign)
        per_comp.append(found)

    results: list[tuple[int, ...]] = []

    def rec(i: int, acc: dict[int, int]) -> None:
        if i == len(per_comp):
            for f, a in problem.fixed_pairs:
                if Y.act(acc[f], arc_colors[a]) != acc[f]:
                    return
            if y0 is not None and acc[problem.outer_face] not in y0:
                return
            results.append(tuple(acc[f] for f in range(problem.n_faces)))
            return
        for assign in per_comp[i]:
            acc.update(assign)
            rec(i + 1, acc)

    rec(0, {})
    return sorted(results)


def enumerate_shadow_colorings(d: Diagram, X: Quandle, Y: XSet, y0=None) -> list[ShadowColoring]:
    """All shadow colorings, duplicate-free, lexicographic by arc then face colors."""
    if Y.quandle != X:
        raise DiagramError("X-set does not act for the given quandle")
    if y0 is not None:
        if d.surface != "plane":
            raise DiagramError("a restriction on the infinite region needs a plane diagram")
        y0 = frozenset(y0)
    problem = _build_problem(d)
    out = []
    for arc_colors in _arc_colorings(problem, X):
        for face_colors in _face_colorings(problem, Y, arc_colors, y0=y0):
            out.append(ShadowColoring(arc_colors, face_colors))
    return out


def enumerate_arc_colorings(d: Diagram, X: Quandle) -> list[tuple[int, ...]]:
    """Plain quandle colorings of the arcs; region conditions are ignored."""
    return _arc_colorings(_build_problem(d), X)


def coloring_number(d: Diagram, X: Quandle, Y: XSet | None = None, y0=None,
                    arc_only: bool = False) -> int:
    if arc_only:
        return len(enumerate_arc_colorings(d, X))
    if Y is None:
        raise DiagramError("shadow coloring numbers need an X-set")
    return len(enumerate_shadow_colorings(d, X, Y, y0=y0))


def extend_partial_coloring(d: Diagram, X: Quandle, Y: XSet,
                            arc_partial: dict[int, int], face_partial: dict[int, int]):
    """All shadow colorings extending partial arc/face assignments."""
    problem = _build_problem(d)
    partial = [arc_partial.get(i) for i in range(problem.n_arcs)]
    out = []
    for arc_colors in _arc_colorings(problem, X, partial=partial):
        for face_colors in _face_colorings(problem, Y, arc_colors):
            if all(face_colors[f] == y for f, y in face_partial.items()):
                out.append(ShadowColoring(arc_colors, face_colors))
    return out


def verify_coloring(d: Diagram, c: ShadowColoring, X: Quandle, Y: XSet) -> VerifyReport:
    """Check every crossing, edge, and endpoint-arc adjacency; first violation wins."""
    problem = _build_problem(d)
    if len(c.arc_colors) != problem.n_arcs or len(c.face_colors) != problem.n_faces:
        return VerifyReport(False, "coloring shape does not match the diagram")
    for v, (sign, a_in, a_out, over) in zip(sorted(d.crossings), problem.crossings):
        ci, co, cv = c.arc_colors[a_in], c.arc_colors[a_out], c.arc_colors[over]
        if sign > 0 and co != X.op(ci, cv):
            return VerifyReport(False, f"crossing condition fails at crossing {v}", (v,))
        if sign < 0 and ci != X.op(co, cv):
            return VerifyReport(False, f"crossing condition fails at crossing {v}", (v,))
    for right, left, arc in problem.prop_pairs:
        if Y.act(c.face_colors[right], c.arc_colors[arc]) != c.face_colors[left]:
            return VerifyReport(False, f"region condition fails across arc {arc}", (right, left, arc))
    for face, arc in problem.fixed_pairs:
        if Y.act(c.face_colors[face], c.arc_colors[arc]) != c.face_colors[face]:
            return VerifyReport(False,
                                f"endpoint condition fails: face {face} is not fixed by arc {arc}",
                                (face, arc))
    return VerifyReport(True)
