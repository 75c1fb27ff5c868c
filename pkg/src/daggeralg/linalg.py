"""Exact linear algebra over the rationals and integer lattices.

Matrices are lists of rows of Fractions (or ints for lattice routines).
Small and dense on purpose: everything in this package is desk scale.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

Matrix = List[List[Fraction]]


def mat_vec(A: Sequence[Sequence[Fraction]], v: Sequence[Fraction]):
    return [sum((row[j] * v[j] for j in range(len(v))), Fraction(0)) for row in A]


def mat_mul(A, B):
    n, k = len(A), len(B)
    m = len(B[0]) if B else 0
    return [
        [sum((A[i][t] * B[t][j] for t in range(k)), Fraction(0)) for j in range(m)]
        for i in range(n)
    ]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(A):
    if not A:
        return []
    return [list(col) for col in zip(*A)]


def rref(A: Matrix):
    """Row-reduce a copy of A; returns (R, pivot_columns)."""
    R = [[Fraction(x) for x in row] for row in A]
    rows = len(R)
    cols = len(R[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if R[i][c] != 0), None)
        if pivot is None:
            continue
        R[r], R[pivot] = R[pivot], R[r]
        inv = R[r][c]
        R[r] = [x / inv for x in R[r]]
        for i in range(rows):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return R, pivots


def rank(A: Matrix) -> int:
    return len(rref(A)[1]) if A else 0


def kernel_basis(A: Matrix, cols: int) -> List[List[Fraction]]:
    """Basis of {x : A x = 0} over Q."""
    if not A:
        return [
            [Fraction(int(i == j)) for i in range(cols)] for j in range(cols)
        ]
    R, pivots = rref(A)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -R[r][fc]
        basis.append(v)
    return basis


def solve(A: Matrix, b: Sequence[Fraction]):
    """One solution of A x = b over Q, or None if inconsistent."""
    if not A:
        return [] if all(x == 0 for x in b) else None
    cols = len(A[0])
    aug = [list(row) + [b[i]] for i, row in enumerate(A)]
    R, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for r, pc in enumerate(pivots):
        x[pc] = R[r][cols]
    return x


def row_space_basis(A: Matrix) -> Matrix:
    R, pivots = rref(A)
    return [R[i] for i in range(len(pivots))]


def same_row_space(A: Matrix, B: Matrix, cols: int) -> bool:
    def normalized(M):
        if not M:
            return []
        R, piv = rref(M)
        return [tuple(R[i]) for i in range(len(piv))]

    return normalized(A) == normalized(B)


def saturate_integer(v: Sequence[Fraction]) -> List[int]:
    """Scale a rational vector to a primitive integer vector."""
    from math import gcd

    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    return ints


def reduce_lattice_basis(basis: List[List[int]]) -> List[List[int]]:
    """Pairwise size reduction: repeatedly subtract the nearest integer
    multiple of one vector from another while the Euclidean norm drops.
    Keeps the lattice, improves conditioning for small ranks."""

    def dot(a, b):
        return sum(x * y for x, y in zip(a, b))

    vecs = [list(v) for v in basis]
    changed = True
    while changed:
        changed = False
        for i in range(len(vecs)):
            for j in range(len(vecs)):
                if i == j:
                    continue
                d = dot(vecs[j], vecs[j])
                if d == 0:
                    continue
                q = round(Fraction(dot(vecs[i], vecs[j]), d))
                if q == 0:
                    continue
                cand = [a - q * b for a, b in zip(vecs[i], vecs[j])]
                if dot(cand, cand) < dot(vecs[i], vecs[i]):
                    vecs[i] = cand
                    changed = True
    return vecs


def hnf_column_basis(columns: List[List[int]]) -> List[List[int]]:
    """Basis of the integer lattice spanned by the given columns.

    Column-style Hermite reduction; returns a list of independent integer
    columns generating the same lattice.
    """
    if not columns:
        return []
    n = len(columns[0])
    cols = [list(c) for c in columns if any(x != 0 for x in c)]
    basis: List[List[int]] = []
    for row in range(n):
        # reduce all remaining columns against each other in this row
        while True:
            nz = [c for c in cols if c[row] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda c: abs(c[row]))
            small = nz[0]
            for c in nz[1:]:
                q = c[row] // small[row]
                for i in range(n):
                    c[i] -= q * small[i]
            cols = [c for c in cols if any(x != 0 for x in c)]
        lead = next((c for c in cols if c[row] != 0), None)
        if lead is not None:
            basis.append(lead)
            cols = [c for c in cols if c is not lead]
    return basis
