"""Dense linear algebra over a prime field F_p on int64 numpy arrays."""

from __future__ import annotations

import numpy as np


def _inv_table(p: int) -> np.ndarray:
    t = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        t[a] = pow(a, p - 2, p)
    return t


_INV: dict[int, np.ndarray] = {}


def inv_table(p: int) -> np.ndarray:
    t = _INV.get(p)
    if t is None:
        t = _INV[p] = _inv_table(p)
    return t


def matmul(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """A @ B mod p, through float64 BLAS when the sums are exactly representable."""
    A = np.asarray(A)
    B = np.asarray(B)
    k = A.shape[-1]
    if k * (p - 1) ** 2 < 2 ** 52:
        return np.mod(A.astype(np.float64) @ B.astype(np.float64), p).astype(np.int64)
    return (A.astype(object) @ B.astype(object) % p).astype(np.int64)


def rref(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    A = np.array(M, dtype=np.int64) % p
    if A.ndim != 2 or A.size == 0:
        return A.reshape(0, A.shape[-1] if A.ndim == 2 else 0), []
    inv = inv_table(p)
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = A[r] * inv[A[r, c]] % p
        col = A[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            A[nzr] = (A[nzr] - np.outer(col[nzr], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(M: np.ndarray, p: int) -> int:
    return len(rref(M, p)[1])


def nullspace(M: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of {x : M x = 0}."""
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[1]
    R, piv = rref(M, p)
    free = [c for c in range(n) if c not in set(piv)]
    out = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        out[i, f] = 1
        for r, c in enumerate(piv):
            out[i, c] = (-R[r, f]) % p
    return out


def left_nullspace(M: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of {y : y M = 0}."""
    return nullspace(np.asarray(M).T, p)


def solve(A: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution of A x = b, or None."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    R, piv = rref(np.hstack([A, b]), p)
    n = A.shape[1]
    if piv and piv[-1] == n:
        return None
    x = np.zeros(n, dtype=np.int64)
    for r, c in enumerate(piv):
        x[c] = R[r, n]
    return x


def inverse(A: np.ndarray, p: int) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    R, piv = rref(np.hstack([A, np.eye(n, dtype=np.int64)]), p)
    if piv[:n] != list(range(n)):
        raise np.linalg.LinAlgError("singular matrix over F_p")
    return R[:n, n:]


class RowReducer:
    """Incrementally maintained row space for membership and coordinate queries."""

    def __init__(self, ncols: int, p: int):
        self.p = p
        self.ncols = ncols
        self.rows = np.zeros((0, ncols), dtype=np.int64)
        self.pivots: list[int] = []
        self.combos = np.zeros((0, 0), dtype=np.int64)

    def reduce(self, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Residual of v and the combination of inserted vectors it consumed."""
        v = np.asarray(v, dtype=np.int64) % self.p
        coef = np.zeros(len(self.pivots), dtype=np.int64)
        if self.pivots:
            coef = v[self.pivots].copy()
            v = (v - coef @ self.rows) % self.p
        combo = (coef @ self.combos) % self.p if len(self.pivots) else np.zeros(self.combos.shape[1], dtype=np.int64)
        return v, combo

    def contains(self, v: np.ndarray) -> bool:
        return not np.any(self.reduce(v)[0])

    def express(self, v: np.ndarray) -> np.ndarray | None:
        """Coefficients of v in terms of the inserted vectors (in insertion order)."""
        res, combo = self.reduce(v)
        if np.any(res):
            return None
        return combo

    def add(self, v: np.ndarray) -> bool:
        p = self.p
        k = self.combos.shape[1]
        res, combo = self.reduce(v)
        combos = np.zeros((self.combos.shape[0], k + 1), dtype=np.int64)
        combos[:, :k] = self.combos
        if not np.any(res):
            self.combos = combos
            return False
        new_combo = np.zeros(k + 1, dtype=np.int64)
        new_combo[:k] = (-combo) % p
        new_combo[k] = 1
        c = int(np.nonzero(res)[0][0])
        inv = int(inv_table(p)[res[c]])
        res = res * inv % p
        new_combo = new_combo * inv % p
        if self.pivots:
            f = self.rows[:, c].copy()
            self.rows = (self.rows - np.outer(f, res)) % p
            combos = (combos - np.outer(f, new_combo)) % p
        self.rows = np.vstack([self.rows, res])
        self.combos = np.vstack([combos, new_combo])
        self.pivots.append(c)
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)
