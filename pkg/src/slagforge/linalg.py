"""Exact linear algebra over the Scalar field.

Ranks use fraction-free (Bareiss) elimination; kernels use Gauss-Jordan
reduction.  Matrices are lists of rows of Scalars.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

from .scalars import ONE, ZERO, Scalar

Matrix = List[List[Scalar]]


def _copy(rows: Sequence[Sequence[Scalar]]) -> Matrix:
    return [list(r) for r in rows]


def rank(rows: Sequence[Sequence[Scalar]]) -> int:
    """Rank over the function field by Bareiss elimination."""
    m = _copy(rows)
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    prev = ONE
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if not m[i][c].is_zero()), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, nrows):
            a = m[i][c]
            row_i, row_r = m[i], m[r]
            for j in range(c + 1, ncols):
                v = row_i[j] * p
                if not a.is_zero() and not row_r[j].is_zero():
                    v = v - a * row_r[j]
                row_i[j] = v / prev if prev != ONE else v
            row_i[c] = ZERO
        prev = p
        r += 1
    return r


def rref(rows: Sequence[Sequence[Scalar]]) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and pivot columns."""
    m = _copy(rows)
    if not m:
        return m, []
    nrows, ncols = len(m), len(m[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if not m[i][c].is_zero()), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv if not x.is_zero() else x for x in m[r]]
        for i in range(nrows):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [x - f * y if not y.is_zero() else x for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def nullspace(rows: Sequence[Sequence[Scalar]], ncols: int) -> Matrix:
    """Basis of {x : A x = 0}, one vector per free column."""
    if not rows:
        return [[ONE if j == i else ZERO for j in range(ncols)] for i in range(ncols)]
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def row_basis(rows: Sequence[Sequence[Scalar]]) -> Matrix:
    red, _ = rref(rows)
    return red


def span_dim(rows: Sequence[Sequence[Scalar]]) -> int:
    return rank(rows) if rows else 0


def intersection_dim(a: Sequence[Sequence[Scalar]], b: Sequence[Sequence[Scalar]]) -> int:
    """dim(span a ∩ span b) = dim a + dim b - dim(a + b)."""
    if not a or not b:
        return 0
    return span_dim(a) + span_dim(b) - span_dim(list(a) + list(b))


def mat_vec(rows: Sequence[Sequence[Scalar]], v: Sequence[Scalar]) -> List[Scalar]:
    out = []
    for r in rows:
        acc = ZERO
        for x, y in zip(r, v):
            if not x.is_zero() and not y.is_zero():
                acc = acc + x * y
        out.append(acc)
    return out


def mat_mul(a: Sequence[Sequence[Scalar]], b: Sequence[Sequence[Scalar]]) -> Matrix:
    if not a:
        return []
    cols = list(zip(*b)) if b else []
    return [mat_vec([list(c) for c in cols], row) if cols else [] for row in a]


def transpose(a: Sequence[Sequence[Scalar]]) -> Matrix:
    return [list(c) for c in zip(*a)] if a else []
