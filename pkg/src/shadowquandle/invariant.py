"""Crossing weights and the shadow cocycle invariants.

Conventions: co-orientation normals are tangents rotated +90 degrees in the
surface orientation; a crossing is positive exactly when the over-strand
enters at slot 3.  At a positive crossing the specified corner is the gap
between slots 0 and 1 and the specified under-arc enters slot 0; at a negative
crossing the corner is the gap between slots 1 and 2 and the specified
under-arc leaves slot 2.  ``crossing_data_by_normals`` rederives the corner by
checking all four corners against the normal directions and exists as a
cross-check on that closed-form rule.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Cocycle, GroupRingElement, ValidationError, make_xset
from .coloring import ShadowColoring, enumerate_shadow_colorings
from .diagram import Diagram, DiagramError, mirror

__all__ = [
    "CrossingDatum",
    "crossing_data",
    "crossing_data_by_normals",
    "weight",
    "cocycle_invariant_multiset",
    "cocycle_invariant",
    "crossing_bound",
    "chirality_test",
    "ChiralityVerdict",
]


@dataclass(frozen=True)
class CrossingDatum:
    crossing: int
    sign: int
    triple: tuple[int, int, int]  # (specified region, specified under-arc, over-arc)


def crossing_data(d: Diagram, c: ShadowColoring, v: int) -> CrossingDatum:
    """Color triple of one crossing via the closed-form slot rule."""
    cr = d.crossings[v]
    a_in, a_out, over = d.crossing_arcs(v)
    if cr.sign > 0:
        corner = (v, 0)
        x1 = c.arc(a_in)
    else:
        corner = (v, 1)
        x1 = c.arc(a_out)
    y = c.face(d.face_of_corner(corner))
    return CrossingDatum(v, cr.sign, (y, x1, c.arc(over)))


_DIRS = ((1, 0), (0, 1), (-1, 0), (0, -1))  # symbolic slot directions, CCW


def _rot90(vec):
    x, y = vec
    return (-y, x)


def crossing_data_by_normals(d: Diagram, c: ShadowColoring, v: int) -> CrossingDatum:
    """Rederive the specified corner by exhaustive normal-direction checking."""
    cr = d.crossings[v]
    under_tangent = _DIRS[2]  # arrives at slot 0, leaves slot 2
    if cr.slots[3][1]:
        over_in = 3
    else:
        over_in = 1
    over_tangent = tuple(-t for t in _DIRS[over_in])
    sign = 1 if _rot90(over_tangent) == under_tangent else -1
    n_under, n_over = _rot90(under_tangent), _rot90(over_tangent)
    corners = []
    for g in range(4):
        bis = tuple(a + b for a, b in zip(_DIRS[g], _DIRS[(g + 1) % 4]))
        if sum(a * b for a, b in zip(n_under, bis)) < 0 and \
           sum(a * b for a, b in zip(n_over, bis)) < 0:
            corners.append(g)
    if len(corners) != 1:
        raise DiagramError(f"crossing {v}: specified corner is not unique")
    g = corners[0]
    under_slot = g if g in (0, 2) else (g + 1) % 4
    x1 = c.arc(d.arc_of_edge(cr.slots[under_slot][0]))
    over_arc = d.arc_of_edge(cr.slots[1][0])
    y = c.face(d.face_of_corner((v, g)))
    return CrossingDatum(v, sign, (y, x1, c.arc(over_arc)))


def weight(f: Cocycle, d: Diagram, c: ShadowColoring) -> tuple[int, ...]:
    """Signed sum of cocycle values over all crossings."""
    total = f.group.zero()
    for v in sorted(d.crossings):
        datum = crossing_data(d, c, v)
        val = f(*datum.triple)
        total = f.group.add(total, val if datum.sign > 0 else f.group.neg(val))
    return total


def _colorings_for(f: Cocycle, d: Diagram, y0=None):
    X = f.quandle
    Y = f.xset if f.xset is not None else make_xset(X, "self")
    return X, Y, enumerate_shadow_colorings(d, X, Y, y0=y0)


def cocycle_invariant_multiset(f: Cocycle, d: Diagram, y0=None) -> tuple[tuple[int, ...], ...]:
    """Multiset of weights over all (restricted) colorings, sorted."""
    _, _, colorings = _colorings_for(f, d, y0=y0)
    return tuple(sorted(weight(f, d, c) for c in colorings))


def cocycle_invariant(f: Cocycle, d: Diagram, y0=None) -> GroupRingElement:
    """Group-ring form of the weight multiset."""
    return GroupRingElement(f.group, cocycle_invariant_multiset(f, d, y0=y0))


def crossing_bound(f: Cocycle, d: Diagram) -> int:
    """Kamada-Oshiro lower bound for the crossing number of the multi-linkoid.

    Needs coefficients of the form (Z_2)^s + Z^t with every cocycle value zero,
    a Z_2 unit vector, or a signed Z unit vector; the bound is the best over
    all self-action shadow colorings.
    """
    factors = f.group.factors
    s = sum(1 for v in factors if v == 2)
    t = sum(1 for v in factors if v == 0)
    if factors != (2,) * s + (0,) * t:
        raise ValidationError(f"coefficient group {factors} is not of the required form")
    if f.kind != 3 or f.validated != "3-cocycle":
        raise ValidationError("crossing bounds need a validated 3-cocycle")
    for key, val in f.values.items():
        nz = [i for i, v in enumerate(val) if v]
        ok = len(nz) == 1 and (
            (nz[0] < s and val[nz[0]] == 1) or (nz[0] >= s and val[nz[0]] in (1, -1)))
        if not ok:
            raise ValidationError(f"cocycle value {val} at {key} violates the unit-value condition")
    X = f.quandle
    Y = make_xset(X, "self")
    best = 0
    for c in enumerate_shadow_colorings(d, X, Y):
        w = weight(f, d, c)
        best = max(best, sum(w[:s]) + sum(abs(v) for v in w[s:]))
    return best


@dataclass(frozen=True)
class ChiralityVerdict:
    verdict: str  # "chiral" or "inconclusive"
    details: tuple[tuple[str, str, str], ...]  # (name, value for D, value for mirror)

    def __str__(self):
        lines = [self.verdict]
        for name, a, b in self.details:
            lines.append(f"  {name}: {a} vs {b}")
        return "\n".join(lines)


def chirality_test(d: Diagram, f: Cocycle, y0=None) -> ChiralityVerdict:
    """Compare coloring counts and the cocycle invariant against the mirror."""
    from .coloring import coloring_number, enumerate_arc_colorings
    dm = mirror(d)
    X = f.quandle
    Y = f.xset if f.xset is not None else make_xset(X, "self")
    rows = []
    a, b = coloring_number(d, X, Y, y0=y0), coloring_number(dm, X, Y, y0=y0)
    rows.append(("shadow_colorings", str(a), str(b)))
    a2, b2 = len(enumerate_arc_colorings(d, X)), len(enumerate_arc_colorings(dm, X))
    rows.append(("quandle_colorings", str(a2), str(b2)))
    ia, ib = cocycle_invariant(f, d, y0=y0), cocycle_invariant(f, dm, y0=y0)
    rows.append(("cocycle_invariant", repr(sorted(ia.items.items())), repr(sorted(ib.items.items()))))
    differs = a != b or a2 != b2 or ia != ib
    return ChiralityVerdict("chiral" if differs else "inconclusive", tuple(rows))
