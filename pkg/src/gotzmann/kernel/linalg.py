"""Exact linear algebra over the rationals, plus symbolic determinants."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence


def as_matrix(rows) -> list:
    """Copy into a dense list-of-lists of Fractions."""
    return [[Fraction(x) for x in row] for row in rows]


def rref(matrix):
    """Reduced row echelon form.

    Returns ``(reduced, rank, pivot_columns)``.  The input is not modified.
    """
    m = as_matrix(matrix)
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        pivot_row = m[r]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], pivot_row)]
        pivots.append(c)
        r += 1
    return m, len(pivots), pivots


def _integer_row(row) -> dict:
    """Sparse integer row proportional to ``row`` (dict col -> int)."""
    if isinstance(row, dict):
        items = [(c, Fraction(v)) for c, v in row.items() if v]
    else:
        items = [(c, Fraction(v)) for c, v in enumerate(row) if v]
    if not items:
        return {}
    den = lcm(*(v.denominator for _, v in items))
    return {c: int(v * den) for c, v in items}


def _normalize(row):
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    return {c: v // g for c, v in row.items()}


def rank(rows) -> int:
    """Rank over Q by fraction-free sparse elimination.

    Rows may be dense sequences or sparse ``{column: value}`` dicts.
    """
    pivots = {}
    for row in rows:
        r = _integer_row(row)
        while r:
            c = min(r)
            prow = pivots.get(c)
            if prow is None:
                pivots[c] = _normalize(r)
                break
            a, b = prow[c], r[c]
            new = {k: v * a for k, v in r.items()}
            for k, v in prow.items():
                s = new.get(k, 0) - b * v
                if s:
                    new[k] = s
                else:
                    new.pop(k, None)
            r = _normalize(new) if new else new
    return len(pivots)


def det(matrix) -> Fraction:
    """Numeric determinant by Gaussian elimination."""
    m = as_matrix(matrix)
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            sign = -sign
        piv = m[c][c]
        result *= piv
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / piv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return result * sign


class MinorExpander:
    """Symbolic minors of one polynomial matrix, sharing a memo table.

    Each minor is expanded along the row or column with the fewest
    nonzero entries; sub-minors are cached by (rows, columns).
    """

    def __init__(self, matrix: Sequence[Sequence]):
        self.matrix = [list(row) for row in matrix]
        if not self.matrix or not self.matrix[0]:
            raise ValueError("empty matrix")
        self.ring = self.matrix[0][0].ring
        self._memo = {}

    def minor(self, rows: Sequence[int], cols: Sequence[int]):
        rows, cols = tuple(rows), tuple(cols)
        if len(rows) != len(cols):
            raise ValueError("minor needs as many rows as columns")
        return self._minor(rows, cols)

    def _minor(self, rows, cols):
        M = self.matrix
        if not rows:
            return self.ring.one
        if len(rows) == 1:
            return M[rows[0]][cols[0]]
        key = (rows, cols)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        best = None
        for p, r in enumerate(rows):
            nz = [q for q, c in enumerate(cols) if M[r][c]]
            if best is None or len(nz) < len(best[2]):
                best = ("row", p, nz)
                if not nz:
                    break
        if best[2]:
            for q, c in enumerate(cols):
                nz = [p for p, r in enumerate(rows) if M[r][c]]
                if len(nz) < len(best[2]):
                    best = ("col", q, nz)
                    if not nz:
                        break
        kind, idx, nz = best
        total = self.ring.zero
        for other in nz:
            p, q = (idx, other) if kind == "row" else (other, idx)
            entry = M[rows[p]][cols[q]]
            sub = self._minor(rows[:p] + rows[p + 1:], cols[:q] + cols[q + 1:])
            if sub:
                term = entry * sub
                total = total - term if (p + q) % 2 else total + term
        self._memo[key] = total
        return total


def det_poly(matrix):
    """Exact symbolic determinant of a square matrix of polynomials."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant of a non-square matrix")
    return MinorExpander(matrix).minor(range(n), range(n))
