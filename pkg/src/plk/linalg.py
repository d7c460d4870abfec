"""Exact rational linear algebra on small dense matrices.

Matrices are lists of rows; entries are ``int`` or ``Fraction``.  Everything
returns canonical objects (reduced row echelon form, RREF-derived kernels),
so results are independent of input row order.
"""

from __future__ import annotations

from fractions import Fraction

from .multivector import Coeff


def rref(rows: list[list[Coeff]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form.

    Returns the nonzero rows (pivots normalized to 1, zeros above and below)
    and the 0-based pivot column indices.
    """
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        if pv != 1:
            m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: list[list[Coeff]]) -> int:
    """Rank over the rationals; fraction-free elimination when all-integer."""
    if not rows:
        return 0
    if all(isinstance(x, int) for row in rows for x in row):
        m = [list(row) for row in rows]
        ncols = len(m[0])
        r = 0
        for c in range(ncols):
            pr = next((i for i in range(r, len(m)) if m[i][c]), None)
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            pv = m[r][c]
            for i in range(r + 1, len(m)):
                f = m[i][c]
                if f:
                    m[i] = [pv * a - f * b for a, b in zip(m[i], m[r])]
            r += 1
            if r == len(m):
                break
        return r
    return len(rref(rows)[0])


def nullspace(rows: list[list[Coeff]], ncols: int) -> list[list[Fraction]]:
    """Canonical kernel basis of the linear map given by ``rows``."""
    reduced, pivots = rref(rows) if rows else ([], [])
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -reduced[r][free]
        basis.append(vec)
    return basis


def intersect_row_spaces(
    a_rows: list[list[Coeff]], b_rows: list[list[Coeff]]
) -> list[list[Fraction]]:
    """RREF basis of the intersection of two row spaces in Q^n."""
    if not a_rows or not b_rows:
        return []
    n = len(a_rows[0])
    p, q = len(a_rows), len(b_rows)
    # x in both spaces iff x = u.A = v.B; solve [A^T | -B^T] (u; v) = 0.
    system = [
        [a_rows[j][i] for j in range(p)] + [-b_rows[j][i] for j in range(q)]
        for i in range(n)
    ]
    kernel = nullspace(system, p + q)
    rows = []
    for vec in kernel:
        combo = [
            sum((vec[j] * a_rows[j][i] for j in range(p)), Fraction(0))
            for i in range(n)
        ]
        if any(combo):
            rows.append(combo)
    reduced, _ = rref(rows)
    return reduced
