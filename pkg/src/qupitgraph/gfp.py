"""Arithmetic and dense linear algebra over the prime field F_p.

Matrices and vectors are numpy integer arrays whose entries are kept
reduced into ``[0, p)``; a field element is a plain ``int``.  Every function
returns fresh, reduced arrays and never mutates its inputs.
"""
from __future__ import annotations

import numpy as np

from .errors import InvalidParameter, NotInvertible, UnsupportedModulus

MAX_MODULUS = 1 << 15
DTYPE = np.int64


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def check_modulus(p: int, *, odd: bool = False) -> int:
    """Validate ``p`` as a supported field modulus and return it as an int."""
    if isinstance(p, bool) or int(p) != p:
        raise InvalidParameter(f"modulus must be an integer, got {p!r}")
    p = int(p)
    if not is_prime(p):
        raise InvalidParameter(f"{p} is not prime")
    if p >= MAX_MODULUS:
        raise InvalidParameter(f"modulus {p} exceeds the supported bound {MAX_MODULUS}")
    if odd and p == 2:
        raise UnsupportedModulus("this operation requires an odd prime")
    return p


def reduce(m, p: int) -> np.ndarray:
    return np.mod(np.asarray(m, dtype=DTYPE), p)


def inverse(a: int, p: int) -> int:
    a = int(a) % p
    if a == 0:
        raise NotInvertible(f"0 has no inverse mod {p}")
    return pow(a, -1, p)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=DTYPE)


def matmul(a, b, p: int) -> np.ndarray:
    return np.mod(np.asarray(a, dtype=DTYPE) @ np.asarray(b, dtype=DTYPE), p)


def rref(m, p: int) -> tuple[np.ndarray, int, list[int]]:
    """Reduced row echelon form of ``m`` over F_p.

    Columns are scanned left to right and the pivot row is the first row at
    or below the current rank with a nonzero entry in that column.

    Returns ``(R, rank, pivots)`` where ``pivots`` lists the pivot columns.
    """
    r = reduce(m, p).copy()
    if r.ndim != 2:
        raise InvalidParameter("rref expects a 2-d matrix")
    rows, cols = r.shape
    pivots: list[int] = []
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(r[rank:, c])[0]
        if nz.size == 0:
            continue
        pr = rank + int(nz[0])
        if pr != rank:
            r[[rank, pr]] = r[[pr, rank]]
        r[rank] = (r[rank] * inverse(r[rank, c], p)) % p
        col = r[:, c].copy()
        col[rank] = 0
        if col.any():
            r = (r - np.outer(col, r[rank])) % p
        pivots.append(c)
        rank += 1
    return r, rank, pivots


def rank(m, p: int) -> int:
    return rref(m, p)[1]


def nullspace_basis(m, p: int) -> list[np.ndarray]:
    """Basis of ``{v : m v = 0}``, one vector per free column in index order."""
    m = reduce(m, p)
    cols = m.shape[1]
    r, rk, pivots = rref(m, p)
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        v = np.zeros(cols, dtype=DTYPE)
        v[free] = 1
        for row, pc in enumerate(pivots):
            v[pc] = (-r[row, free]) % p
        basis.append(v)
    return basis


def invert_matrix(m, p: int) -> np.ndarray:
    m = reduce(m, p)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidParameter("only square matrices can be inverted")
    n = m.shape[0]
    r, rk, _ = rref(np.hstack([m, identity(n)]), p)
    if rk < n or not np.array_equal(r[:, :n], identity(n)):
        raise NotInvertible("matrix is singular")
    return r[:, n:].copy()
