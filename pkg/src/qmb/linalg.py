"""Exact linear algebra over the rational-function field in q.

Fraction-free (Bareiss) forward elimination keeps every intermediate entry a
Laurent polynomial (divisions by the previous pivot are exact in the Laurent
ring); only the final back-substitution produces rational functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .scalars import LaurentQ, QRational, ONE


@dataclass
class LinearSolution:
    """Outcome of solving ``A x = b`` over rational functions in q.

    ``solution`` is None when the system is inconsistent.  Free columns (if
    any) are set to zero.  ``rank`` is the rank of the coefficient matrix.
    """

    solution: Optional[list[QRational]]
    rank: int
    consistent: bool


def solve_linear(A: list[list[LaurentQ]], b: list[LaurentQ]) -> LinearSolution:
    rows = len(A)
    if rows != len(b):
        raise ValueError("matrix and right-hand side have different heights")
    cols = len(A[0]) if rows else 0
    # augmented working copy
    M = [list(A[i]) + [b[i]] for i in range(rows)]
    width = cols + 1

    piv_rows: list[int] = []
    piv_cols: list[int] = []
    prev = ONE
    r = 0
    for c in range(cols):
        # smallest nonzero entry (by term count) for pivot, deterministic
        best = None
        for i in range(r, rows):
            if not M[i][c].is_zero():
                size = len(M[i][c].terms)
                if best is None or size < best[0]:
                    best = (size, i)
        if best is None:
            continue
        _, pi = best
        if pi != r:
            M[r], M[pi] = M[pi], M[r]
        pivot = M[r][c]
        for i in range(r + 1, rows):
            head = M[i][c]
            for j in range(c, width):
                num = pivot * M[i][j] - head * M[r][j]
                M[i][j] = num.divexact(prev)
        prev = pivot
        piv_rows.append(r)
        piv_cols.append(c)
        r += 1
        if r == rows:
            break

    rank = len(piv_cols)
    # consistency: all rows below the pivots must have zero RHS
    for i in range(rank, rows):
        if not M[i][cols].is_zero():
            return LinearSolution(None, rank, False)

    x: list[QRational] = [QRational(0) for _ in range(cols)]
    for idx in range(rank - 1, -1, -1):
        i, c = piv_rows[idx], piv_cols[idx]
        acc = QRational(M[i][cols])
        for j in range(c + 1, cols):
            if not M[i][j].is_zero() and x[j]:
                acc = acc - QRational(M[i][j]) * x[j]
        x[c] = acc / QRational(M[i][c])
    return LinearSolution(x, rank, True)


def clear_denominators(values: list[QRational]) -> tuple[LaurentQ, list[LaurentQ]]:
    """A common multiple of the denominators and the scaled Laurent values.

    Returns ``(scale, scaled)`` with ``scaled[i] = scale * values[i]`` exact.
    """
    scale = ONE
    for v in values:
        den = v.den
        g = LaurentQ.gcd(scale, den)
        scale = scale * den.divexact(g)
    scaled = []
    for v in values:
        scaled.append(v.num * scale.divexact(v.den))
    return scale, scaled
