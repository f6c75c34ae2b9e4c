"""Quandle cochain complexes over prime fields.

Chains in degree n are generated by n-tuples of quandle elements, with tuples
containing an adjacent equal pair identified with zero (the quotient complex).
The boundary treats the first coordinate as an element acted on by the rest,
which is the region-coefficient formula with the auxiliary set collapsed onto
the quandle itself.  Cohomology is computed as matrix ranks mod p with
deterministic pivoting so certificates are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import AbelianGroup, Cocycle, Quandle, ValidationError, validate_3cocycle

__all__ = [
    "CochainSpace",
    "BoundaryMatrix",
    "boundary_matrix",
    "h3",
    "is_cohomologous",
    "coboundary_of",
    "rank_mod_p",
    "solve_mod_p",
]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def nondegenerate_tuples(n: int, degree: int) -> list[tuple[int, ...]]:
    """Lexicographic tuples in X^degree with no adjacent equal pair."""
    out: list[tuple[int, ...]] = []

    def rec(prefix):
        if len(prefix) == degree:
            out.append(tuple(prefix))
            return
        for v in range(n):
            if prefix and prefix[-1] == v:
                continue
            prefix.append(v)
            rec(prefix)
            prefix.pop()

    rec([])
    return out


class CochainSpace:
    """Basis bookkeeping for degree-n quandle cochains mod p."""

    def __init__(self, quandle: Quandle, degree: int, p: int):
        if not _is_prime(p):
            raise ValidationError(f"{p} is not prime")
        self.quandle = quandle
        self.degree = degree
        self.p = p
        self.basis = nondegenerate_tuples(quandle.n, degree)
        self.index = {t: i for i, t in enumerate(self.basis)}
        self.dim = len(self.basis)

    def __repr__(self):
        return f"CochainSpace({self.quandle.name}, degree={self.degree}, p={self.p}, dim={self.dim})"


@dataclass(frozen=True)
class BoundaryMatrix:
    degree: int
    p: int
    matrix: np.ndarray  # rows: degree-1 basis, cols: degree basis
    rows: CochainSpace
    cols: CochainSpace


def _boundary_terms(X: Quandle, t: tuple[int, ...]):
    """Signed faces of one generator; the first coordinate is the acted one."""
    m = len(t)
    y, xs = t[0], t[1:]
    for i in range(1, m):
        sign = -1 if i % 2 else 1
        xi = t[i]
        dropped = t[:i] + t[i + 1:]
        acted = (X.op(y, xi),) + tuple(X.op(xs[j], xi) for j in range(i - 1)) + t[i + 1:]
        yield sign, dropped
        yield -sign, acted


def boundary_matrix(X: Quandle, n: int, p: int) -> BoundaryMatrix:
    """Matrix of the degree-n boundary on the quotient complex, entries mod p."""
    if n not in (2, 3, 4):
        raise ValidationError("supported boundary degrees are 2, 3, 4")
    cols = CochainSpace(X, n, p)
    rows = CochainSpace(X, n - 1, p)
    M = np.zeros((rows.dim, cols.dim), dtype=np.int64)
    for j, t in enumerate(cols.basis):
        for sign, face in _boundary_terms(X, t):
            i = rows.index.get(face)
            if i is not None:  # degenerate faces vanish in the quotient
                M[i, j] = (M[i, j] + sign) % p
    return BoundaryMatrix(n, p, M, rows, cols)


def rank_mod_p(A: np.ndarray, p: int) -> int:
    return len(_row_reduce(A % p, p)[1])


def _row_reduce(A: np.ndarray, p: int):
    """Reduced row echelon form mod p; pivots by first nonzero in column order."""
    R = (A % p).astype(np.int64).copy()
    m, n = R.shape
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(n):
        pivot = None
        for i in range(r, m):
            if R[i, c] % p:
                pivot = i
                break
        if pivot is None:
            continue
        if pivot != r:
            R[[r, pivot], :] = R[[pivot, r], :]
        R[r, :] = (R[r, :] * pow(int(R[r, c]), -1, p)) % p
        nz = np.nonzero(R[:, c] % p)[0]
        for i in nz:
            if i != r:
                R[i, :] = (R[i, :] - R[i, c] * R[r, :]) % p
        pivots.append((r, c))
        r += 1
        if r == m:
            break
    return R, pivots


def solve_mod_p(A: np.ndarray, b: np.ndarray, p: int):
    """One solution of Ax = b mod p, or None; free variables are set to zero."""
    m, n = A.shape
    aug = np.concatenate([A % p, (b % p).reshape(m, 1)], axis=1)
    R, pivots = _row_reduce(aug, p)
    for r, c in pivots:
        if c == n:
            return None
    x = np.zeros(n, dtype=np.int64)
    for r, c in pivots:
        x[c] = R[r, n]
    return x


def h3(X: Quandle, p: int) -> tuple[int, int, int]:
    """(dim ker of the degree-3 coboundary, rank of the degree-2 one, dim H^3)."""
    if X.n ** 4 > 20000:
        raise ValidationError("quandle too large for the degree-4 complex")
    d3 = boundary_matrix(X, 3, p)
    d4 = boundary_matrix(X, 4, p)
    rank_delta2 = rank_mod_p(d3.matrix, p)
    rank_delta3 = rank_mod_p(d4.matrix, p)
    dim_c3 = d3.cols.dim
    dim_ker = dim_c3 - rank_delta3
    return dim_ker, rank_delta2, dim_ker - rank_delta2


def _cocycle_vector(f: Cocycle, space: CochainSpace) -> np.ndarray:
    if f.group.factors != (space.p,):
        raise ValidationError(f"cocycle coefficients must be Z_{space.p}")
    return np.array([f(*t)[0] % space.p for t in space.basis], dtype=np.int64)


def coboundary_of(h, X: Quandle, p: int) -> Cocycle:
    """The 3-cocycle obtained by applying the degree-2 coboundary to a 2-cochain.

    ``h`` maps nondegenerate pairs to integers mod p; missing pairs are zero.
    """
    table = dict(h)
    group = AbelianGroup((p,))
    vals: dict[tuple[int, int, int], tuple[int, ...]] = {}
    for t in nondegenerate_tuples(X.n, 3):
        total = 0
        for sign, face in _boundary_terms(X, t):
            if face[0] != face[1]:
                total += sign * int(table.get(face, 0))
        total %= p
        if total:
            vals[t] = (total,)
    c = Cocycle(3, X, group, vals, name="coboundary")
    rep = validate_3cocycle(c, X, group)
    if not rep:
        raise ValidationError(f"coboundary failed validation: {rep.condition} at {rep.witness}")
    c.validated = "3-cocycle"
    return c


def is_cohomologous(f: Cocycle, g: Cocycle, X: Quandle, p: int):
    """Solve f - g = (coboundary of h) over Z_p.

    Returns ``(True, h)`` with the certificate 2-cochain as a dict on the
    nondegenerate pair basis, or ``(False, None)``.
    """
    if f.group != g.group or f.group.factors != (p,):
        raise ValidationError("cocycles must share Z_p coefficients")
    d3 = boundary_matrix(X, 3, p)
    target = (_cocycle_vector(f, d3.cols) - _cocycle_vector(g, d3.cols)) % p
    # delta^2 as a matrix: rows indexed by triples, columns by pairs
    D2 = d3.matrix.T % p
    sol = solve_mod_p(D2, target, p)
    if sol is None:
        return False, None
    h = {pair: int(sol[i]) for i, pair in enumerate(d3.rows.basis) if sol[i]}
    return True, h
