"""Exact phase-1 simplex deciding whether 0 is a nontrivial conic combination.

The system solved is::

    sum_i w_i x_i = 0,   sum_i w_i = 1,   w >= 0

Feasible means no supporting hyperplane exists and ``w`` is the witness.
Infeasible means the phase-1 optimum is positive; its dual ``(y, t)`` has
``y.x_i + t <= 0`` for every i with ``t > 0``, so ``f = -y`` is a separating
functional.

The tableau is kept in integers using fraction-free pivoting: every row is
scaled by the current basis determinant ``D`` and a pivot on entry ``p``
updates the other rows by ``(p*T[i][j] - T[i][c]*T[r][j]) // D``, a division
that is always exact.  Rational inputs are first multiplied by the common
denominator, which changes neither the feasible ``w`` nor the sign of any
``f.x_i``.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .exact import canonical

MAX_DIM = 8
MAX_VECTORS = 64


def _integer_rows(vectors):
    lcm = 1
    for v in vectors:
        for c in v:
            if not isinstance(c, int):
                lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    if lcm == 1:
        return [list(v) for v in vectors]
    return [[int(c * lcm) for c in v] for v in vectors]


def solve_phase1(vectors, dim):
    """Run phase 1 and return ``("feasible", w)`` or ``("infeasible", f)``.

    ``w`` is a list of exact weights summing to 1, ``f`` a list of integer
    functional coefficients (not yet normalized).  Entering and leaving
    variables follow Bland's smallest-index rule.
    """
    k = len(vectors)
    xs = _integer_rows(vectors)
    m = dim + 1
    ncols = k + m  # w_0..w_{k-1}, then one artificial per row
    rhs = ncols

    # Row r < dim: coordinate r of sum w_i x_i = 0; row dim: sum w_i = 1.
    rows = []
    for r in range(m):
        row = [0] * (ncols + 1)
        for i in range(k):
            row[i] = xs[i][r] if r < dim else 1
        row[k + r] = 1
        row[rhs] = 1 if r == dim else 0
        rows.append(row)
    # Reduced costs of min sum(artificials) with the artificials basic.
    obj = [0] * (ncols + 1)
    for j in range(k):
        obj[j] = -sum(rows[r][j] for r in range(m))
    obj[rhs] = -1
    basis = [k + r for r in range(m)]
    det = 1

    while True:
        enter = next((j for j in range(ncols) if obj[j] < 0), None)
        if enter is None:
            break
        leave = None
        for r in range(m):
            a = rows[r][enter]
            if a <= 0:
                continue
            if leave is None:
                leave = r
                continue
            lhs = rows[r][rhs] * rows[leave][enter]
            cur = rows[leave][rhs] * a
            if lhs < cur or (lhs == cur and basis[r] < basis[leave]):
                leave = r
        # Phase 1 is bounded below by 0, so some entry is positive.
        assert leave is not None, "unbounded phase-1 problem"
        prow = rows[leave]
        piv = prow[enter]
        for r in range(m):
            if r == leave:
                continue
            row = rows[r]
            f = row[enter]
            if f == 0:
                # (piv*row - 0) // det: still needs rescaling to the new det.
                for j in range(ncols + 1):
                    if row[j]:
                        row[j] = row[j] * piv // det
                continue
            for j in range(ncols + 1):
                row[j] = (piv * row[j] - f * prow[j]) // det
        f = obj[enter]
        for j in range(ncols + 1):
            obj[j] = (piv * obj[j] - f * prow[j]) // det
        basis[leave] = enter
        det = piv

    if obj[rhs] == 0:
        w = [0] * k
        for r, b in enumerate(basis):
            if b < k:
                w[b] = canonical(Fraction(rows[r][rhs], det))
        return "feasible", w
    # Dual of artificial r is 1 - reduced cost; f = -y scaled by det > 0.
    f = [obj[k + r] - det for r in range(dim)]
    return "infeasible", f
