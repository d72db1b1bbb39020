"""Large extensions F_{p^M} = F_p[y]/(H) beyond table range, used as splitting fields.

H is the sparse irreducible y^M + h(y) with the smallest tail index, found by
Ben-Or's test; elements are length-M int64 coefficient vectors.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .fields import GF, prime_factors
from .linalg import inv_table, matmul


def _trim(a: np.ndarray) -> np.ndarray:
    nz = np.nonzero(a)[0]
    return a[: nz[-1] + 1] if nz.size else a[:0]


def np_polymod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    a = _trim(np.asarray(a, dtype=np.int64) % p).copy()
    b = _trim(np.asarray(b, dtype=np.int64) % p)
    db = len(b) - 1
    inv = int(inv_table(p)[b[-1]])
    while len(a) - 1 >= db and len(a):
        c = a[-1] * inv % p
        k = len(a) - 1 - db
        a[k:] = (a[k:] - c * b) % p
        a = _trim(a)
    return a


def np_polygcd(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    a = _trim(np.asarray(a, dtype=np.int64) % p)
    b = _trim(np.asarray(b, dtype=np.int64) % p)
    while len(b):
        a, b = b, np_polymod(a, b, p)
    return a


class PrimeExtension:
    """F_p[y]/(y^M + tail)."""

    def __init__(self, p: int, M: int, tail: tuple[int, ...]):
        self.p = p
        self.M = M
        self.tail = np.array(tail, dtype=np.int64)
        self.order_minus_one = p ** M - 1
        self.zero = np.zeros(M, dtype=np.int64)
        self.one = self.zero.copy()
        self.one[0] = 1

    def reduce(self, a: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        M, p = self.M, self.p
        while len(a) > M:
            hi = a[M:]
            lo = a[:M].copy()
            prod = np.convolve(hi, self.tail)
            if len(prod) <= M:
                lo[: len(prod)] -= prod
                a = lo
            else:
                out = np.zeros(len(prod), dtype=np.int64)
                out[:M] = lo
                out -= prod
                a = out % p
        out = np.zeros(M, dtype=np.int64)
        out[: len(a)] = a
        return out % p

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.reduce(np.convolve(a, b) % self.p)

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return (a + b) % self.p

    def pow(self, a: np.ndarray, e: int) -> np.ndarray:
        result = self.one.copy()
        base = np.asarray(a, dtype=np.int64)
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def mul_matrix(self, a: np.ndarray) -> np.ndarray:
        """F_p matrix of v -> a*v (columns are images of basis vectors)."""
        M = self.M
        cols = np.zeros((M, M), dtype=np.int64)
        cur = np.asarray(a, dtype=np.int64) % self.p
        for i in range(M):
            cols[:, i] = cur
            cur = self.reduce(np.concatenate([[0], cur]))
        return cols

    @property
    def frobenius_matrix(self) -> np.ndarray:
        """F_p matrix of v -> v^p."""
        if not hasattr(self, "_frob"):
            M = self.M
            cols = np.zeros((M, M), dtype=np.int64)
            yp = self.pow(np.eye(1, M, 1, dtype=np.int64)[0] if M > 1 else self.one, self.p)
            cur = self.one.copy()
            for i in range(M):
                cols[:, i] = cur
                cur = self.mul(cur, yp)
            self._frob = cols
        return self._frob

    def power_matrix(self, k: int) -> np.ndarray:
        """F_p matrix of v -> v^(p^k)."""
        F = self.frobenius_matrix
        out = np.eye(self.M, dtype=np.int64)
        base = F
        while k:
            if k & 1:
                out = matmul(base, out, self.p)
            k >>= 1
            if k:
                base = matmul(base, base, self.p)
        return out

    def is_one(self, a: np.ndarray) -> bool:
        return bool(np.array_equal(a, self.one))


def _ben_or_irreducible(p: int, M: int, tail: np.ndarray) -> bool:
    """Ben-Or's test with gcds batched over growing windows of i."""
    ext = PrimeExtension(p, M, tuple(tail))
    H = np.zeros(M + 1, dtype=np.int64)
    H[: len(tail)] = tail
    H[M] = 1
    y = np.zeros(M, dtype=np.int64)
    if M == 1:
        return True
    y[1] = 1
    cur = y.copy()
    acc = ext.one.copy()
    i = 1
    bound = 4
    while i <= M // 2:
        cur = ext.pow(cur, p)
        acc = ext.mul(acc, (cur - y) % p)
        if i == bound or i == M // 2:
            g = np_polygcd(H, acc, p)
            if len(g) != 1:
                return False
            acc = ext.one.copy()
            bound *= 4
        i += 1
    return True


@lru_cache(maxsize=None)
def sparse_irreducible_tail(p: int, M: int) -> tuple[int, ...]:
    """Smallest tail index t (base-p digits, little-endian) with y^M + t irreducible."""
    if M == 1:
        return (1,)
    idx = 1
    while True:
        digits = []
        x = idx
        while x:
            digits.append(x % p)
            x //= p
        idx += 1
        if digits[0] == 0 or len(digits) > M:
            continue
        tail = np.array(digits, dtype=np.int64)
        # cheap root filter before the full test
        if any(((pow(a, M, p) + sum(int(c) * pow(a, i, p) for i, c in enumerate(tail))) % p) == 0
               for a in range(p)):
            continue
        if _ben_or_irreducible(p, M, tail):
            return tuple(int(c) for c in tail)


@lru_cache(maxsize=None)
def prime_extension(p: int, M: int) -> PrimeExtension:
    return PrimeExtension(p, M, sparse_irreducible_tail(p, M))


class TableFieldEmbedding:
    """A field homomorphism from a tabled field k (F_{p^D}) into a PrimeExtension of degree divisible by D."""

    def __init__(self, k: GF, L: PrimeExtension, seed: int = 0):
        if L.M % k.degree:
            raise ValueError("target degree is not a multiple of the source degree")
        self.k = k
        self.L = L
        p, D = k.p, k.degree
        N_k = k.size
        cof = L.order_minus_one // N_k
        rng = np.random.default_rng(seed)
        factors = prime_factors(N_k)
        while True:
            beta = rng.integers(0, p, size=L.M, dtype=np.int64)
            if not beta.any():
                continue
            zeta = L.pow(beta, cof)
            if all(not L.is_one(L.pow(zeta, N_k // l)) for l in factors):
                break
        # minimal polynomial of zeta over F_p from its Frobenius orbit
        coeffs = [L.one.copy()]
        conj = zeta
        for _ in range(D):
            new = [L.zero.copy() for _ in range(len(coeffs) + 1)]
            for i, a in enumerate(coeffs):
                new[i + 1] = L.add(new[i + 1], a)
                new[i] = (new[i] - L.mul(a, conj)) % p
            coeffs = new
            conj = L.pow(conj, p)
        if not np.array_equal(conj, zeta):
            raise ArithmeticError("Frobenius orbit did not close")
        mu = []
        for a in coeffs:
            if np.any(a[1:]):
                raise ArithmeticError("minimal polynomial is not defined over F_p")
            mu.append(int(a[0]))
        self.mu = mu
        # a root theta = g^j of mu in k; then g^e maps to zeta^(e/j)
        j = None
        for e in range(N_k):
            x = k.exp(e)
            acc = 0
            for c in reversed(mu):
                acc = k.add(k.mul(acc, x), c)
            if acc == 0:
                j = e
                break
        if j is None:
            raise ArithmeticError("no root of the minimal polynomial in the source field")
        self._zeta = zeta
        self._step = pow(j, -1, N_k) if N_k > 1 else 0
        self._cache: dict[int, np.ndarray] = {}

    def __call__(self, c: int) -> np.ndarray:
        c = int(c)
        if c == 0:
            return self.L.zero.copy()
        v = self._cache.get(c)
        if v is None:
            e = self.k.log(c) * self._step % self.k.size
            v = self.L.pow(self._zeta, e)
            self._cache[c] = v
        return v
