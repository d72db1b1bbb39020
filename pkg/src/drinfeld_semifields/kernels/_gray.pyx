# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled Gray-code scan over F_p-combinations of matrices, tracking ranks mod p."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy


cdef int _rank(int* A, int rows, int cols, int p, const int* inv) noexcept nogil:
    cdef int r = 0, c, i, j, piv, f, t
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if A[i * cols + c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, cols):
                t = A[r * cols + j]
                A[r * cols + j] = A[piv * cols + j]
                A[piv * cols + j] = t
        f = inv[A[r * cols + c]]
        if f != 1:
            for j in range(c, cols):
                A[r * cols + j] = (A[r * cols + j] * f) % p
        for i in range(r + 1, rows):
            f = A[i * cols + c]
            if f != 0:
                for j in range(c, cols):
                    A[i * cols + j] = (A[i * cols + j] + (p - f) * A[r * cols + j]) % p
        r += 1
    return r


def rank_mod_p(cnp.ndarray M, int p):
    """Rank of a 2-d integer matrix over F_p."""
    cdef cnp.ndarray[int, ndim=2, mode="c"] A = np.ascontiguousarray(M % p, dtype=np.intc)
    cdef cnp.ndarray[int, ndim=1, mode="c"] inv = _inverses(p)
    return _rank(&A[0, 0], A.shape[0], A.shape[1], p, &inv[0])


cdef cnp.ndarray _inverses(int p):
    cdef cnp.ndarray[int, ndim=1, mode="c"] inv = np.zeros(p, dtype=np.intc)
    cdef int a, b
    for a in range(1, p):
        for b in range(1, p):
            if (a * b) % p == 1:
                inv[a] = b
                break
    return inv


def gray_scan(cnp.ndarray basis_in, int p, int stop_below):
    """Scan all nonzero F_p-combinations of basis[i] in modular Gray order.

    Returns (min_rank, deficient, witness, scanned): the least rank seen, the
    number of combinations of less than full rank, the Gray coordinates of the
    first combination attaining min_rank, and the number scanned.  The scan
    stops at the first combination of rank < stop_below.
    """
    cdef cnp.ndarray[int, ndim=3, mode="c"] basis = np.ascontiguousarray(basis_in % p, dtype=np.intc)
    cdef int k = basis.shape[0], rows = basis.shape[1], cols = basis.shape[2]
    cdef int size = rows * cols
    cdef int full = rows if rows < cols else cols
    cdef cnp.ndarray[int, ndim=1, mode="c"] inv = _inverses(p)
    cdef cnp.ndarray[int, ndim=1, mode="c"] digits = np.zeros(k, dtype=np.intc)
    cdef cnp.ndarray[int, ndim=1, mode="c"] witness = np.zeros(k, dtype=np.intc)
    cdef long long total = 1, t, x, scanned = 0, deficient = 0
    cdef int i, v, rk, min_rank = full + 1
    cdef bint found = False
    for i in range(k):
        total *= p
    cdef int* cur = <int*>malloc(size * sizeof(int))
    cdef int* work = <int*>malloc(size * sizeof(int))
    cdef int* b
    for i in range(size):
        cur[i] = 0
    try:
        with nogil:
            for t in range(1, total):
                v = 0
                x = t
                while x % p == 0:
                    x = x // p
                    v += 1
                digits[v] = (digits[v] + 1) % p
                b = &basis[v, 0, 0]
                for i in range(size):
                    cur[i] = cur[i] + b[i]
                    if cur[i] >= p:
                        cur[i] -= p
                memcpy(work, cur, size * sizeof(int))
                rk = _rank(work, rows, cols, p, &inv[0])
                scanned += 1
                if rk < full:
                    deficient += 1
                if rk < min_rank:
                    min_rank = rk
                    memcpy(&witness[0], &digits[0], k * sizeof(int))
                if rk < stop_below:
                    found = True
                    break
    finally:
        free(cur)
        free(work)
    if scanned == 0:
        return None, 0, None, 0
    return min_rank, deficient, witness.astype(np.int64), scanned
