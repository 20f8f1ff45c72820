"""Exact linear algebra over a prime field.

Matrices are int64 numpy arrays holding residues in [0, p).  Module
elements are row vectors and act on the left, so a map with matrix A
sends x to x @ A.  All routines are deterministic; there are no
tolerances because the arithmetic is exact.
"""

from __future__ import annotations

import numpy as np


def as_field(mat, p: int) -> np.ndarray:
    return np.asarray(mat, dtype=np.int64) % p


def mat_mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    # entries < p <= 32003 and inner dimensions stay small, so the
    # int64 accumulator cannot overflow
    return (a @ b) % p


def rref(mat, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the pivot columns of ``mat`` mod p."""
    m = as_field(mat, p).copy()
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        hits = np.nonzero(m[r:, c])[0]
        if hits.size == 0:
            continue
        piv = hits[0] + r
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = (m[r] * pow(int(m[r, c]), -1, p)) % p
        for rr in range(rows):
            if rr != r and m[rr, c]:
                m[rr] = (m[rr] - m[rr, c] * m[r]) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank(mat, p: int) -> int:
    m = np.asarray(mat)
    if m.size == 0:
        return 0
    return len(rref(m, p)[1])


def nullspace(mat, p: int) -> np.ndarray:
    """Rows spanning {v : mat @ v == 0} over F_p."""
    m = as_field(mat, p)
    rows, cols = m.shape
    if cols == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    r, pivots = rref(m, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-r[i, fc]) % p
    return basis


def left_nullspace(mat, p: int) -> np.ndarray:
    """Rows x with x @ mat == 0."""
    return nullspace(np.asarray(mat).T, p)


def row_space(mat, p: int) -> np.ndarray:
    """A row basis (in RREF) of the row space of ``mat``."""
    m = as_field(mat, p)
    if m.shape[0] == 0 or m.shape[1] == 0:
        return np.zeros((0, m.shape[1]), dtype=np.int64)
    r, pivots = rref(m, p)
    return r[: len(pivots)]


def solve_right(a, b, p: int) -> np.ndarray | None:
    """X with a @ X == b, or None when the system is inconsistent."""
    a = as_field(a, p)
    b = as_field(b, p)
    rows, cols = a.shape
    aug = np.hstack([a, b])
    r, pivots = rref(aug, p)
    if any(c >= cols for c in pivots):
        return None
    x = np.zeros((cols, b.shape[1]), dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = r[i, cols:]
    return x


def solve_in_rowspace(basis_rows, targets, p: int) -> np.ndarray | None:
    """X with X @ basis_rows == targets, or None if some target escapes."""
    y = solve_right(np.asarray(basis_rows).T, np.asarray(targets).T, p)
    return None if y is None else y.T


def is_invertible(mat, p: int) -> bool:
    m = np.asarray(mat)
    if m.shape[0] != m.shape[1]:
        return False
    if m.shape[0] == 0:
        return True
    return rank(m, p) == m.shape[0]
