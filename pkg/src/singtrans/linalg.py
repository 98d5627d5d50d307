"""Small exact linear algebra over Q (fractions), used for weight
detection, Hessian ranks and the deformation-locus solvers."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple


Matrix = List[List[Fraction]]


def _to_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def row_reduce(rows: Sequence[Sequence]) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and the pivot column indices."""
    m = _to_matrix(rows)
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    _, pivots = row_reduce(rows)
    return len(pivots)


def solve_affine(
    a: Sequence[Sequence], b: Sequence
) -> Optional[Tuple[List[Fraction], List[List[Fraction]]]]:
    """Solve A x = b exactly.

    Returns (particular solution, nullspace basis) or None when the
    system is inconsistent.  Free variables are set to 0 in the
    particular solution.
    """
    a = _to_matrix(a)
    bvec = [Fraction(x) for x in b]
    if len(a) != len(bvec):
        raise ValueError("dimension mismatch")
    if not a:
        return [], []
    ncols = len(a[0])
    aug = [row + [rhs] for row, rhs in zip(a, bvec)]
    red, pivots = row_reduce(aug)
    if ncols in pivots:
        return None  # pivot in the constants column
    particular = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        particular[c] = red[r][ncols]
    free_cols = [c for c in range(ncols) if c not in pivots]
    null_basis: List[List[Fraction]] = []
    for fc in free_cols:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, c in enumerate(pivots):
            vec[c] = -red[r][fc]
        null_basis.append(vec)
    return particular, null_basis


def mat_vec(a: Sequence[Sequence], x: Sequence) -> List[Fraction]:
    return [sum((Fraction(v) * Fraction(xi) for v, xi in zip(row, x)), Fraction(0)) for row in a]
