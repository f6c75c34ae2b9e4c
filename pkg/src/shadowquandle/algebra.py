"""Finite quandles, X-sets, abelian coefficient groups, and tabulated cocycles.

Everything is dense and 0-indexed: a quandle of order n lives on 0..n-1 and is
stored as an n-by-n table with ``table[x][y] == x^y``.  Named families (trivial,
dihedral, P3) are expanded into tables at construction so generated and custom
structures share one code path.  Abelian groups are tuples over a declared list
of cyclic factors, written additively; the multiplicative "u" notation is a
formatting concern only.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

__all__ = [
    "ValidationError",
    "Quandle",
    "XSet",
    "AbelianGroup",
    "GroupRingElement",
    "Cocycle",
    "CocycleReport",
    "make_quandle",
    "make_xset",
    "make_cocycle",
    "add_cocycles",
    "enumerate_quandles",
    "validate_2cocycle",
    "validate_3cocycle",
    "format_group_ring",
    "parse_quandle_text",
    "quandle_text",
    "parse_xset_text",
    "xset_text",
    "parse_cocycle_text",
    "cocycle_text",
]


class ValidationError(ValueError):
    """An algebraic structure failed one of its defining axioms."""


# ---------------------------------------------------------------------------
# Quandles


class Quandle:
    """Finite quandle on 0..n-1; ``table[x][y] == x^y``."""

    def __init__(self, table, name: str = ""):
        self.table = tuple(tuple(int(v) for v in row) for row in table)
        self.n = len(self.table)
        if self.n == 0:
            raise ValidationError("a quandle needs at least one element")
        if any(len(row) != self.n for row in self.table):
            raise ValidationError("quandle table must be square")
        for row in self.table:
            for v in row:
                if not 0 <= v < self.n:
                    raise ValidationError(f"table entry {v} out of range 0..{self.n - 1}")
        self._validate()
        # _inv[x][y] is the unique z with z^y = x (axiom (ii) guarantees it).
        inv = [[0] * self.n for _ in range(self.n)]
        for z in range(self.n):
            for y in range(self.n):
                inv[self.table[z][y]][y] = z
        self._inv = tuple(tuple(row) for row in inv)
        self.name = name or f"Q{self.n}"

    def _validate(self) -> None:
        t, rng = self.table, range(self.n)
        for x in rng:
            if t[x][x] != x:
                raise ValidationError(f"idempotence fails: witness ({x},), {x}^{x} = {t[x][x]}")
        for y in rng:
            if len({t[x][y] for x in rng}) != self.n:
                raise ValidationError(f"right-invertibility fails: witness ({y},), column {y} not a bijection")
        for x in rng:
            for y in rng:
                for z in rng:
                    if t[t[x][y]][z] != t[t[x][z]][t[y][z]]:
                        raise ValidationError(f"self-distributivity fails: witness ({x}, {y}, {z})")

    def op(self, x: int, y: int) -> int:
        return self.table[x][y]

    def unop(self, x: int, y: int) -> int:
        """The unique z with z^y = x."""
        return self._inv[x][y]

    def elements(self) -> range:
        return range(self.n)

    def relabeled(self, perm) -> "Quandle":
        """Quandle with element i renamed perm[i]."""
        n = self.n
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        tbl = [[perm[self.table[inv[x]][inv[y]]] for y in range(n)] for x in range(n)]
        return Quandle(tbl, name=self.name)

    def canonical_table(self):
        """Lexicographically least table over all relabelings."""
        return min(self.relabeled(p).table for p in itertools.permutations(range(self.n)))

    def is_isomorphic(self, other: "Quandle") -> bool:
        return self.n == other.n and self.canonical_table() == other.canonical_table()

    def __eq__(self, other):
        return isinstance(other, Quandle) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"Quandle({self.name}, n={self.n})"


P3_TABLE = ((0, 0, 0), (2, 1, 1), (1, 2, 2))

_NAME_RE = re.compile(r"^([ERP])(\d+)$")


def make_quandle(spec, name: str = "") -> Quandle:
    """Build a quandle from a family name or an explicit table.

    String specs: ``"E4"``/``"trivial:4"`` (trivial), ``"R5"``/``"dihedral:5"``
    (dihedral, x^y = 2y - x), or ``"P3"``.  Anything else is taken as a table.
    """
    if isinstance(spec, str):
        s = spec.strip()
        if ":" in s:
            family, _, num = s.partition(":")
            n = int(num)
            if family == "trivial":
                return make_quandle(f"E{n}")
            if family == "dihedral":
                return make_quandle(f"R{n}")
            raise ValidationError(f"unknown quandle family {family!r}")
        m = _NAME_RE.match(s)
        if not m:
            raise ValidationError(f"unknown quandle spec {spec!r}")
        family, n = m.group(1), int(m.group(2))
        if n < 1:
            raise ValidationError("quandle order must be positive")
        if family == "E":
            return Quandle([[x] * n for x in range(n)], name=f"E{n}")
        if family == "R":
            return Quandle([[(2 * y - x) % n for y in range(n)] for x in range(n)], name=f"R{n}")
        if s != "P3":
            raise ValidationError(f"unknown quandle spec {spec!r}")
        return Quandle(P3_TABLE, name="P3")
    return Quandle(spec, name=name or "custom")


def enumerate_quandles(n: int) -> list[Quandle]:
    """All quandles of order n up to isomorphism, n <= 5.

    Each column of a quandle table is a permutation fixing its own index, so
    the search runs column by column with partial self-distributivity checks;
    classes are deduplicated by the lexicographically least relabeled table.
    """
    if not 1 <= n <= 5:
        raise ValueError("supported range is 1 <= n <= 5")
    fixing = [[p for p in itertools.permutations(range(n)) if p[y] == y] for y in range(n)]
    cols: list[tuple[int, ...] | None] = [None] * n
    canon: set[tuple[tuple[int, ...], ...]] = set()

    def entry(x, y):
        return cols[y][x]

    def consistent(b: int) -> bool:
        # check (x^y)^z = (x^z)^(y^z) for triples whose needed columns are set
        for y in range(b + 1):
            for z in range(b + 1):
                for x in range(n):
                    yz = entry(y, z)
                    if yz > b:
                        continue
                    if entry(entry(x, y), z) != entry(entry(x, z), yz):
                        return False
        return True

    def search(y: int) -> None:
        if y == n:
            tbl = tuple(tuple(cols[c][x] for c in range(n)) for x in range(n))
            canon.add(min(_relabel_table(tbl, p) for p in itertools.permutations(range(n))))
            return
        for col in fixing[y]:
            cols[y] = col
            if consistent(y):
                search(y + 1)
        cols[y] = None

    search(0)
    out = [Quandle(tbl, name=f"order{n}#{i}") for i, tbl in enumerate(sorted(canon))]
    return out


def _relabel_table(tbl, perm):
    n = len(tbl)
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(tuple(perm[tbl[inv[x]][inv[y]]] for y in range(n)) for x in range(n))


# ---------------------------------------------------------------------------
# X-sets


class XSet:
    """Set acted on by a quandle: ``table[y][x] == y * x``."""

    def __init__(self, quandle: Quandle, table, name: str = ""):
        self.quandle = quandle
        self.table = tuple(tuple(int(v) for v in row) for row in table)
        self.m = len(self.table)
        if self.m == 0:
            raise ValidationError("an X-set needs at least one element")
        if any(len(row) != quandle.n for row in self.table):
            raise ValidationError("X-set table must be m rows by n columns")
        for row in self.table:
            for v in row:
                if not 0 <= v < self.m:
                    raise ValidationError(f"X-set entry {v} out of range 0..{self.m - 1}")
        self._validate()
        inv = [[0] * quandle.n for _ in range(self.m)]
        for y in range(self.m):
            for x in range(quandle.n):
                inv[self.table[y][x]][x] = y
        self._inv = tuple(tuple(row) for row in inv)
        self.name = name or f"Y{self.m}"

    def _validate(self) -> None:
        t, m, n = self.table, self.m, self.quandle.n
        for x in range(n):
            if len({t[y][x] for y in range(m)}) != m:
                raise ValidationError(f"X-set action by {x} is not a bijection: witness ({x},)")
        for y in range(m):
            for a in range(n):
                for b in range(n):
                    if t[t[y][a]][b] != t[t[y][b]][self.quandle.op(a, b)]:
                        raise ValidationError(f"X-set compatibility fails: witness ({y}, {a}, {b})")

    def act(self, y: int, x: int) -> int:
        return self.table[y][x]

    def unact(self, y: int, x: int) -> int:
        """The unique z with z * x = y."""
        return self._inv[y][x]

    def elements(self) -> range:
        return range(self.m)

    def __eq__(self, other):
        return isinstance(other, XSet) and self.table == other.table and self.quandle == other.quandle

    def __hash__(self):
        return hash((self.table, self.quandle.table))

    def __repr__(self):
        return f"XSet({self.name}, m={self.m} over {self.quandle.name})"


def make_xset(quandle: Quandle, spec="self", name: str = "") -> XSet:
    """Build an X-set: ``"self"`` (y*x = y^x), ``"trivial"`` (y*x = y), or a table."""
    if isinstance(spec, str):
        if spec == "self":
            return XSet(quandle, quandle.table, name=name or f"{quandle.name}-self")
        if spec == "trivial":
            return XSet(quandle, [[y] * quandle.n for y in range(quandle.n)],
                        name=name or f"{quandle.name}-trivial")
        raise ValidationError(f"unknown X-set spec {spec!r}")
    return XSet(quandle, spec, name=name or "custom")


# ---------------------------------------------------------------------------
# Abelian groups and group-ring values


class AbelianGroup:
    """Direct sum of cyclic groups; factor d >= 2 is Z_d and d = 0 is Z."""

    def __init__(self, factors):
        self.factors = tuple(int(d) for d in factors)
        if any(d == 1 or d < 0 for d in self.factors):
            raise ValidationError("factors must be 0 (infinite) or >= 2")
        self.rank = len(self.factors)

    def reduce(self, elt) -> tuple[int, ...]:
        if len(elt) != self.rank:
            raise ValidationError(f"element {elt!r} has wrong length for factors {self.factors}")
        return tuple(v % d if d else int(v) for v, d in zip(elt, self.factors))

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def add(self, a, b) -> tuple[int, ...]:
        return self.reduce(tuple(x + y for x, y in zip(a, b)))

    def neg(self, a) -> tuple[int, ...]:
        return self.reduce(tuple(-x for x in a))

    def sub(self, a, b) -> tuple[int, ...]:
        return self.add(a, self.neg(b))

    def scale(self, a, k: int) -> tuple[int, ...]:
        return self.reduce(tuple(k * x for x in a))

    def is_finite(self) -> bool:
        return all(d != 0 for d in self.factors)

    def elements(self):
        if not self.is_finite():
            raise ValidationError("cannot enumerate an infinite group")
        return itertools.product(*(range(d) for d in self.factors))

    def __eq__(self, other):
        return isinstance(other, AbelianGroup) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    def __repr__(self):
        return f"AbelianGroup{self.factors}"


class GroupRingElement:
    """Finite formal Z-combination of abelian group elements.

    Zero multiplicities are never stored; equality is map equality.
    """

    def __init__(self, group: AbelianGroup, items=()):
        self.group = group
        acc: dict[tuple[int, ...], int] = {}
        if hasattr(items, "items"):
            pairs = items.items()
        else:
            pairs = ((e, 1) for e in items)
        for elt, mult in pairs:
            e = group.reduce(tuple(elt))
            acc[e] = acc.get(e, 0) + int(mult)
        self.items = {e: m for e, m in acc.items() if m != 0}

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        if self.group != other.group:
            raise ValidationError("group mismatch in group-ring addition")
        acc = dict(self.items)
        for e, m in other.items.items():
            acc[e] = acc.get(e, 0) + m
        return GroupRingElement(self.group, acc)

    def total(self) -> int:
        return sum(self.items.values())

    def sorted_items(self):
        return sorted(self.items.items())

    def __eq__(self, other):
        return (isinstance(other, GroupRingElement) and self.group == other.group
                and self.items == other.items)

    def __hash__(self):
        return hash((self.group, frozenset(self.items.items())))

    def __repr__(self):
        return f"GroupRingElement({self.items})"


def format_group_ring(g: GroupRingElement, style: str = "cyclic-u") -> str:
    """Render a group-ring value; ``cyclic-u`` needs a single finite cyclic factor."""
    if not g.items:
        return "0"
    if style == "cyclic-u":
        if g.group.rank != 1 or g.group.factors[0] == 0:
            raise ValidationError("cyclic-u style needs a single finite cyclic factor")
        parts = []
        for (k,), mult in g.sorted_items():
            if k == 0:
                base = "1"
            elif k == 1:
                base = "u"
            else:
                base = f"u^{k}"
            if mult == 1:
                parts.append(base)
            elif base == "1":
                parts.append(str(mult))
            else:
                parts.append(f"{mult}{base}")
        return " + ".join(parts)
    if style == "tuple":
        parts = []
        for elt, mult in g.sorted_items():
            tup = "(" + ",".join(str(v) for v in elt) + ")"
            parts.append(f"{mult}·{tup}")
        return " + ".join(parts)
    raise ValidationError(f"unknown group-ring style {style!r}")


# ---------------------------------------------------------------------------
# Cocycles


@dataclass(frozen=True)
class CocycleReport:
    ok: bool
    condition: str = ""
    witness: tuple = ()

    def __bool__(self):
        return self.ok


class Cocycle:
    """Tabulated cochain Y x X^2 -> A (kind 2) or X^3 -> A (kind 3).

    Missing table entries are the identity.  ``validated`` records which set of
    cocycle conditions the table has passed exhaustively.  A 3-cocycle of X is
    used as a shadow 2-cocycle of (X, X) by reading its first coordinate as the
    region color, so both kinds are called as ``f(y, x1, x2)``.
    """

    def __init__(self, kind: int, quandle: Quandle, group: AbelianGroup, values,
                 xset: XSet | None = None, name: str = "", validated: str = "unvalidated"):
        if kind not in (2, 3):
            raise ValidationError("cocycle kind must be 2 or 3")
        self.kind = kind
        self.quandle = quandle
        self.group = group
        self.xset = xset if xset is not None else (make_xset(quandle, "self") if kind == 2 else None)
        self.name = name or f"cocycle{kind}"
        self.validated = validated
        ysize = self.xset.m if kind == 2 else quandle.n
        vals: dict[tuple[int, int, int], tuple[int, ...]] = {}
        for key, elt in dict(values).items():
            y, x1, x2 = key
            if not (0 <= y < ysize and 0 <= x1 < quandle.n and 0 <= x2 < quandle.n):
                raise ValidationError(f"cocycle key {key!r} out of domain")
            e = group.reduce(tuple(elt))
            if any(e):
                vals[(y, x1, x2)] = e
        self.values = vals

    def __call__(self, y: int, x1: int, x2: int) -> tuple[int, ...]:
        return self.values.get((y, x1, x2), self.group.zero())

    def domain_ysize(self) -> int:
        return self.xset.m if self.kind == 2 else self.quandle.n

    def __repr__(self):
        return f"Cocycle({self.name}, kind={self.kind}, validated={self.validated})"


def _shadow_act(X: Quandle, Y: XSet | None, y: int, x: int) -> int:
    return Y.act(y, x) if Y is not None else X.op(y, x)


def _hexagon_witness(f, X: Quandle, Y: XSet | None, group: AbelianGroup):
    """First (y, x1, x2, x3) violating the 2-cocycle hexagon, or None."""
    ysize = Y.m if Y is not None else X.n
    for y in range(ysize):
        for x1 in range(X.n):
            for x2 in range(X.n):
                for x3 in range(X.n):
                    total = group.zero()
                    total = group.sub(total, f(y, x2, x3))
                    total = group.add(total, f(_shadow_act(X, Y, y, x1), x2, x3))
                    total = group.add(total, f(y, x1, x3))
                    total = group.sub(total, f(_shadow_act(X, Y, y, x2), X.op(x1, x2), x3))
                    total = group.sub(total, f(y, x1, x2))
                    total = group.add(total, f(_shadow_act(X, Y, y, x3), X.op(x1, x3), X.op(x2, x3)))
                    if any(total):
                        return (y, x1, x2, x3)
    return None


def validate_2cocycle(f, X: Quandle, Y: XSet, group: AbelianGroup) -> CocycleReport:
    """Exhaustive shadow 2-cocycle check: hexagon over Y x X^3, f(y,x,x) = 0."""
    lookup = f if callable(f) else lambda y, x1, x2: group.reduce(dict(f).get((y, x1, x2), group.zero()))
    for y in range(Y.m):
        for x in range(X.n):
            if any(lookup(y, x, x)):
                return CocycleReport(False, "degeneracy f(y,x,x)=0", (y, x, x))
    w = _hexagon_witness(lookup, X, Y, group)
    if w is not None:
        return CocycleReport(False, "hexagon", w)
    return CocycleReport(True)


def validate_3cocycle(f, X: Quandle, group: AbelianGroup) -> CocycleReport:
    """Exhaustive 3-cocycle check: hexagon over X^4 plus both degeneracies."""
    lookup = f if callable(f) else lambda y, x1, x2: group.reduce(dict(f).get((y, x1, x2), group.zero()))
    for x in range(X.n):
        for y in range(X.n):
            if any(lookup(y, x, x)):
                return CocycleReport(False, "degeneracy f(y,x,x)=0", (y, x, x))
            if any(lookup(x, x, y)):
                return CocycleReport(False, "degeneracy f(x,x,y)=0", (x, x, y))
    w = _hexagon_witness(lookup, X, None, group)
    if w is not None:
        return CocycleReport(False, "hexagon", w)
    return CocycleReport(True)


def theta3() -> Cocycle:
    """The order-3 dihedral 3-cocycle u^((x-y)(y-z)z(x+z)) with Z_3 coefficients."""
    X = make_quandle("R3")
    group = AbelianGroup((3,))
    vals = {}
    for x in range(3):
        for y in range(3):
            for z in range(3):
                e = ((x - y) * (y - z) * z * (x + z)) % 3
                if e:
                    vals[(x, y, z)] = (e,)
    c = Cocycle(3, X, group, vals, name="theta3")
    rep = validate_3cocycle(c, X, group)
    if not rep:
        raise ValidationError(f"theta3 failed validation: {rep.condition} at {rep.witness}")
    c.validated = "3-cocycle"
    return c


def phi3() -> Cocycle:
    """Order-3 non-dihedral 3-cocycle into Z_2 + Z used for crossing bounds."""
    X = make_quandle("P3")
    group = AbelianGroup((2, 0))
    vals = {
        (0, 1, 0): (1, 0),
        (0, 2, 0): (1, 0),
        (1, 0, 2): (0, 1),
        (2, 0, 1): (0, 1),
        (1, 0, 1): (0, -1),
        (2, 0, 2): (0, -1),
    }
    c = Cocycle(3, X, group, vals, name="phi")
    rep = validate_3cocycle(c, X, group)
    if not rep:
        raise ValidationError(f"phi failed validation: {rep.condition} at {rep.witness}")
    c.validated = "3-cocycle"
    return c


def make_cocycle(spec, quandle: Quandle | None = None, xset: XSet | None = None) -> Cocycle:
    """Build a cocycle from a name (``theta3``, ``phi``) or cocycle file text."""
    if isinstance(spec, str):
        s = spec.strip()
        if s == "theta3":
            return theta3()
        if s == "phi":
            return phi3()
        if s.startswith("cocycle2") or s.startswith("cocycle3"):
            return parse_cocycle_text(s, quandle=quandle, xset=xset)
        raise ValidationError(f"unknown cocycle spec {spec!r}")
    raise ValidationError("cocycle spec must be a string")


def add_cocycles(f: Cocycle, g: Cocycle) -> Cocycle:
    """Pointwise sum; revalidates the result."""
    if f.kind != g.kind or f.group != g.group or f.quandle != g.quandle:
        raise ValidationError("cocycle addition needs matching kind, group, and quandle")
    keys = set(f.values) | set(g.values)
    vals = {k: f.group.add(f(*k), g(*k)) for k in keys}
    c = Cocycle(f.kind, f.quandle, f.group, vals, xset=f.xset, name=f"{f.name}+{g.name}")
    if f.kind == 3:
        rep = validate_3cocycle(c, f.quandle, f.group)
    else:
        rep = validate_2cocycle(c, f.quandle, f.xset, f.group)
    c.validated = f"{f.kind}-cocycle" if rep else "unvalidated"
    return c


# ---------------------------------------------------------------------------
# File formats

def quandle_text(q: Quandle) -> str:
    lines = [f"quandle {q.n}"]
    for row in q.table:
        lines.append(" ".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


def parse_quandle_text(text: str, name: str = "") -> Quandle:
    rows, header = [], None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "quandle":
                raise ValidationError("quandle file must start with 'quandle n'")
            header = int(parts[1])
        else:
            rows.append([int(v) for v in line.split()])
    if header is None or len(rows) != header:
        raise ValidationError("quandle file row count does not match header")
    return Quandle(rows, name=name or "file")


def xset_text(y: XSet) -> str:
    lines = [f"xset {y.m} {y.quandle.n}"]
    for row in y.table:
        lines.append(" ".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


def parse_xset_text(text: str, quandle: Quandle, name: str = "") -> XSet:
    rows, header = [], None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 3 or parts[0] != "xset":
                raise ValidationError("X-set file must start with 'xset m n'")
            header = (int(parts[1]), int(parts[2]))
            if header[1] != quandle.n:
                raise ValidationError("X-set file quandle size mismatch")
        else:
            rows.append([int(v) for v in line.split()])
    if header is None or len(rows) != header[0]:
        raise ValidationError("X-set file row count does not match header")
    return XSet(quandle, rows, name=name or "file")


def cocycle_text(c: Cocycle) -> str:
    factors = ",".join(str(d) for d in c.group.factors)
    if c.kind == 2:
        lines = [f"cocycle2 {c.xset.m} {c.quandle.n} factors={factors}"]
    else:
        lines = [f"cocycle3 {c.quandle.n} factors={factors}"]
    for key in sorted(c.values):
        val = ",".join(str(v) for v in c.values[key])
        lines.append(f"{key[0]} {key[1]} {key[2]} : {val}")
    return "\n".join(lines) + "\n"


def parse_cocycle_text(text: str, quandle: Quandle | None = None,
                       xset: XSet | None = None, name: str = "") -> Cocycle:
    """Parse and validate a cocycle file; omitted entries are the identity.

    ``quandle`` (and ``xset`` for 2-cocycles) supply the algebra the table is
    validated against; sizes must match the header.
    """
    header = None
    vals: dict[tuple[int, int, int], tuple[int, ...]] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            parts = line.split()
            if parts[0] not in ("cocycle2", "cocycle3"):
                raise ValidationError("cocycle file must start with 'cocycle2' or 'cocycle3'")
            kind = 2 if parts[0] == "cocycle2" else 3
            sizes = [int(v) for v in parts[1:-1]]
            if not parts[-1].startswith("factors="):
                raise ValidationError("cocycle header missing factors=")
            factors = tuple(int(v) for v in parts[-1][len("factors="):].split(","))
            header = (kind, sizes, AbelianGroup(factors))
        else:
            lhs, _, rhs = line.partition(":")
            key = tuple(int(v) for v in lhs.split())
            val = tuple(int(v) for v in rhs.strip().split(","))
            if len(key) != 3:
                raise ValidationError(f"bad cocycle entry {line!r}")
            vals[key] = val
    if header is None:
        raise ValidationError("empty cocycle file")
    kind, sizes, group = header
    if quandle is None:
        raise ValidationError("a quandle is required to interpret a cocycle file")
    if kind == 2:
        if len(sizes) != 2 or sizes[1] != quandle.n:
            raise ValidationError("cocycle2 header sizes do not match the quandle")
        Y = xset if xset is not None else make_xset(quandle, "self")
        if Y.m != sizes[0]:
            raise ValidationError("cocycle2 header sizes do not match the X-set")
        c = Cocycle(2, quandle, group, vals, xset=Y, name=name or "file")
        rep = validate_2cocycle(c, quandle, Y, group)
    else:
        if len(sizes) != 1 or sizes[0] != quandle.n:
            raise ValidationError("cocycle3 header size does not match the quandle")
        c = Cocycle(3, quandle, group, vals, name=name or "file")
        rep = validate_3cocycle(c, quandle, group)
    if not rep:
        raise ValidationError(f"cocycle table invalid: {rep.condition} at witness {rep.witness}")
    c.validated = f"{kind}-cocycle"
    return c
