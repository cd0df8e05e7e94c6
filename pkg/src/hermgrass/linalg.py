"""Exact row-space linear algebra on index-encoded numpy arrays.

Rows are 1-D uint8 arrays of field-element indices; all arithmetic goes
through the tower's lookup tables.  Pivoting is deterministic: the first
nonzero entry in column order, no heuristics.
"""

from __future__ import annotations

import numpy as np


def rref(tower, rows):
    """Reduced row echelon form with transform.

    Returns (R, pivots, T) where R = T.rows (as field operations), R has
    unit pivot columns, and zero rows are dropped, so len(R) is the rank.
    """
    add, mul, neg, inv = tower.add_np, tower.mul_np, tower.neg_np, tower.inv_np
    R = np.array(rows, dtype=np.uint8, copy=True)
    k, n = R.shape
    T = np.eye(k, dtype=np.uint8)
    pivots = []
    r = 0
    for c in range(n):
        if r >= k:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            R[[r, pr]] = R[[pr, r]]
            T[[r, pr]] = T[[pr, r]]
        pv = int(R[r, c])
        if pv != 1:
            lut = mul[inv[pv]]
            R[r] = lut[R[r]]
            T[r] = lut[T[r]]
        for i in range(k):
            f = int(R[i, c])
            if i != r and f:
                lut = mul[neg[f]]
                R[i] = add[R[i], lut[R[r]]]
                T[i] = add[T[i], lut[T[r]]]
        pivots.append(c)
        r += 1
    return R[:r], pivots, T[:r]


def rank(tower, rows) -> int:
    return len(rref(tower, rows)[1])


def combine(tower, rows, coeffs):
    """Sum of coeffs[i] * rows[i] over the field."""
    rows = np.asarray(rows, dtype=np.uint8)
    acc = np.zeros(rows.shape[1], dtype=np.uint8)
    for s, row in zip(coeffs, rows):
        if s:
            acc = tower.add_np[acc, tower.mul_np[s][row]]
    return acc


def solve_in_row_space(tower, R, pivots, target):
    """Coefficients of target in the RREF basis R, or None if not in span.

    Because R's pivot columns are unit vectors, the candidate coefficient
    vector is just target restricted to the pivot positions; membership is
    then an exact reconstruction check.
    """
    target = np.asarray(target, dtype=np.uint8)
    y = target[pivots]
    if np.array_equal(combine(tower, R, y), target):
        return y
    return None
