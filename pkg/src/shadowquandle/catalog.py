"""Named diagrams: the small knotoids, the twist family, and the ring-of-rings
multi-linkoids, plus products of catalog entries.

The small knotoids are frozen as diagram text; their correctness is pinned by
coloring counts and cocycle invariant values, not by pictures.  Generators for
the twist family and the multi-linkoids build slot tables directly.
"""

from __future__ import annotations

import re

from .diagram import (Component, Crossing, Diagram, DiagramError, Endpoint,
                      mirror, parse_diagram, product)

__all__ = ["catalog", "catalog_names", "twist_region_crossings"]


TRIVIAL = """\
surface plane
component interval 0
edge 0 0
L 0 0
H 1 0
outer 0:0
"""

# three crossings; shadow coloring counts 3 (this) and 9 (mirror) over the
# order-3 dihedral pair, with the mirror's surplus carried by the arcs
TWO_1 = """\
surface plane
component interval 0
edge 0 0
edge 1 0
edge 2 0
edge 3 0
edge 4 0
edge 5 0
edge 6 0
X 1 0 3 1 4
X 2 1 5 2 6
X 3 4 2 5 3
L 0 0
H 4 6
outer 1:2
"""

# dihedral colorings trivial for n in {3,5,7}; the mirror admits nontrivial
# 3-colorings; the leading curl around the leg keeps it planar-flavored
TWO_4 = """\
surface plane
component interval 0
edge 0 0
edge 1 0
edge 2 0
edge 3 0
edge 4 0
edge 5 0
edge 6 0
X 1 0 1 1 2
X 2 2 4 3 5
X 3 5 3 6 4
L 0 0
H 4 6
outer 2:1
"""

# dihedral colorings trivial for n in {3,5,7}; the mirror admits nontrivial
# 5-colorings
THREE_2 = """\
surface plane
component interval 0
edge 0 0
edge 1 0
edge 2 0
edge 3 0
edge 4 0
edge 5 0
edge 6 0
X 1 0 3 1 4
X 2 5 2 6 1
X 3 2 5 3 4
L 0 0
H 4 6
outer 1:2
"""

# knot-type trefoil knotoid; all crossings negative; both endpoints in the
# outer region; reproduces the tabulated crossing color triples exactly
THREE_1 = """\
surface plane
component interval 0
edge 0 0
edge 1 0
edge 2 0
edge 3 0
edge 4 0
edge 5 0
edge 6 0
X 1 0 3 1 4
X 2 4 1 5 2
X 3 2 5 3 6
L 0 0
H 4 6
outer 0:0
"""


def _strand_diagram(seq, roles_first, over_entry):
    """Single-interval knotoid from a crossing pass sequence.

    ``seq`` lists crossing ids along the strand (each exactly twice);
    ``roles_first[c]`` is 'U' or 'O' for the first pass at c; ``over_entry[c]``
    is the slot (1 or 3) where the over-strand enters.
    """
    passes = []
    seen: set[int] = set()
    for c in seq:
        if c in seen:
            passes.append((c, "O" if roles_first[c] == "U" else "U"))
        else:
            seen.add(c)
            passes.append((c, roles_first[c]))
    leg, head = 0, max(seq) + 1
    nedges = len(passes) + 1
    slots: dict[int, list] = {c: [None] * 4 for c in set(seq)}
    for i, (c, role) in enumerate(passes):
        e_in, e_out = i, i + 1
        if role == "U":
            sin, sout = 0, 2
        else:
            sin = over_entry[c]
            sout = 3 if sin == 1 else 1
        if slots[c][sin] is not None or slots[c][sout] is not None:
            raise DiagramError("pass sequence does not define a crossing")
        slots[c][sin] = (e_in, True)
        slots[c][sout] = (e_out, False)
    crossings = {c: Crossing(c, tuple(s)) for c, s in slots.items()}
    endpoints = {leg: Endpoint(leg, "L", 0), head: Endpoint(head, "H", nedges - 1)}
    components = {0: Component(0, "interval", tuple(range(nedges)))}
    return Diagram("sphere", crossings, endpoints, components), leg, head


def twist_knotoid(k: int) -> Diagram:
    """Knot-type knotoid of the (3k+1)-twist knot: a column of 3k+1 twist
    crossings closed off by a two-crossing clasp, both endpoints in the outer
    region.  The clasp wiring depends on the column parity."""
    if k < 0:
        raise DiagramError("twist parameter must be nonnegative")
    t = 3 * k + 1
    c1, c2 = t + 1, t + 2
    column = list(range(1, t + 1))
    roles = {i: ("U" if i % 2 == 1 else "O") for i in column}
    entry = {i: 1 for i in column}
    if t % 2 == 1:
        seq = column + [c1, c2] + list(reversed(column)) + [c1, c2]
        roles[c1], roles[c2] = "O", "U"
        entry[c1], entry[c2] = 1, 1
    else:
        seq = column + [c1, c2] + list(reversed(column)) + [c2, c1]
        roles[c1], roles[c2] = "U", "O"
        entry[c1], entry[c2] = 3, 3
    d, leg, head = _strand_diagram(seq, roles, entry)
    outer_f = d.face_of_corner((leg, 0))
    if outer_f != d.face_of_corner((head, 0)):
        raise DiagramError("twist knotoid endpoints are not co-facial")
    corner = min(d.faces()[outer_f].corners)
    return Diagram("plane", d.crossings, d.endpoints, d.components, outer=corner)


def twist_region_crossings(k: int) -> tuple[int, ...]:
    """Crossing ids of the 3k-crossing twist region of ``twist_knotoid(k)``
    (the column minus its last crossing; the leftover joins the clasp pair)."""
    return tuple(range(1, 3 * k + 1))


def ring_of_rings(n: int) -> Diagram:
    """One circle passing under n disjoint embedded intervals, all crossings
    positive; heads on the enclosed side, legs outside."""
    if n < 1:
        raise DiagramError("need at least one interval component")
    # ids: crossings 0..n-1; legs 100+i; heads 200+i
    crossings = {}
    endpoints = {}
    components = {}
    circle_edges = list(range(n))  # edge i: crossing i -> crossing i+1
    for i in range(n):
        a = 300 + 2 * i      # leg -> crossing (over in, slot 3)
        b = 300 + 2 * i + 1  # crossing -> head (over out, slot 1)
        crossings[i] = Crossing(i, (
            (circle_edges[(i - 1) % n], True),   # slot 0: circle arrives
            (b, False),                          # slot 1: over leaves
            (circle_edges[i], False),            # slot 2: circle leaves
            (a, True),                           # slot 3: over arrives
        ))
        endpoints[100 + i] = Endpoint(100 + i, "L", a)
        endpoints[200 + i] = Endpoint(200 + i, "H", b)
        components[1 + i] = Component(1 + i, "interval", (a, b))
    components[0] = Component(0, "circle", tuple(circle_edges))
    return Diagram("plane", crossings, endpoints, components, outer=(100, 0))


_PAREN = re.compile(r"^mir\((.+)\)$")


def catalog_names() -> list[str]:
    return ["trivial", "2_1", "mir(2_1)", "2_4", "mir(2_4)", "3_1", "mir(3_1)",
            "3_2", "mir(3_2)", "T:<k>", "mir(T:<k>)", "prod21:<n>", "mirprod21:<n>",
            "prod31:<signs>", "Mn:<n>"]


def catalog(name: str, param=None) -> Diagram:
    """Look up a named diagram; parameterized entries use ``name:param``.

    ``prod31`` takes a sign string over ``+``/``-`` choosing the plain or
    mirrored trefoil knotoid factor by factor.
    """
    name = name.strip()
    m = _PAREN.match(name)
    if m:
        return mirror(catalog(m.group(1), param))
    if ":" in name:
        base, _, arg = name.partition(":")
        return catalog(base, arg)
    base = {"trivial": TRIVIAL, "2_1": TWO_1, "2_4": TWO_4,
            "3_1": THREE_1, "3_2": THREE_2}
    if name in base:
        return parse_diagram(base[name])
    if name == "T":
        return twist_knotoid(int(param))
    if name == "Mn":
        return ring_of_rings(int(param))
    if name == "prod21" or name == "mirprod21":
        n = int(param)
        if n < 1:
            raise DiagramError("product power must be positive")
        factor = catalog("2_1") if name == "prod21" else catalog("mir(2_1)")
        out = factor
        for _ in range(n - 1):
            out = product(out, factor)
        return out
    if name == "prod31":
        signs = str(param or "")
        if not signs or any(ch not in "+-" for ch in signs):
            raise DiagramError("prod31 takes a nonempty string over '+' and '-'")
        factors = [catalog("3_1") if ch == "+" else catalog("mir(3_1)") for ch in signs]
        out = factors[0]
        for f in factors[1:]:
            out = product(out, f)
        return out
    raise DiagramError(f"unknown catalog name {name!r}")
