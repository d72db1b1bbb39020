"""Table-driven finite fields and coherent towers F_q ⊂ F_{q^j}.

Every field element is an int.  For a field built as base[x]/(modulus) the
encoding of a_0 + a_1 x + ... + a_{j-1} x^{j-1} is sum(a_i * |base|^i), so
the base field sits inside as the ints below |base| and the base-p digits of
an encoding are its coordinates over F_p in the basis {w^e x^i}.
"""

from __future__ import annotations

import math
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

MAX_Q = 16
MAX_LEVEL_ORDER = 1 << 24
_LIST_TABLE_LIMIT = 1 << 20


class FieldError(ValueError):
    """Invalid field or tower parameters."""


class ModulusSearchError(RuntimeError):
    """No suitable modulus was found in the searched range."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, m) with q = p^m, or raise."""
    for p in range(2, q + 1):
        if q % p == 0:
            m = 0
            while q % p == 0:
                q //= p
                m += 1
            if q != 1 or not is_prime(p):
                break
            return p, m
    raise FieldError(f"{q} is not a prime power")


def _matpow_vec(M: np.ndarray, e: int, v: np.ndarray, p: int) -> np.ndarray:
    """M^e v over F_p."""
    out = v.copy()
    base = M.copy()
    while e:
        if e & 1:
            out = base @ out % p
        e >>= 1
        if e:
            base = base @ base % p
    return out


class GF:
    """A finite field, either F_p or base[x]/(modulus).

    ``q`` is the order of the designated ground field F_q used by
    ``frob``; it defaults to the order of ``base``.
    """

    def __init__(self, p: int, modulus: Sequence[int] = (), base: GF | None = None,
                 q: int | None = None, generator: int | None = None):
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        self.p = p
        self.base = base
        if base is None:
            self.modulus: tuple[int, ...] = ()
            self.rel_degree = 1
            self.degree = 1
            self.order = p
        else:
            mod = tuple(int(c) for c in modulus)
            if len(mod) < 2 or mod[-1] != 1:
                raise FieldError("modulus must be monic of degree >= 1")
            self.modulus = mod
            self.rel_degree = len(mod) - 1
            self.degree = base.degree * self.rel_degree
            self.order = base.order ** self.rel_degree
        self.q = q if q is not None else (base.order if base is not None else p)
        self.size = self.order - 1
        qdeg = round(math.log(self.q, p))
        if self.degree % qdeg:
            raise FieldError("ground field is not a subfield")
        self.q_degree = self.degree // qdeg
        self._build_tables(generator)

    # ------------------------------------------------------------------
    # construction

    def _fp_mul_by_x(self) -> np.ndarray:
        """F_p matrix of multiplication by the class of x."""
        b = self.base
        Db, j, D = b.degree, self.rel_degree, self.degree
        X = np.zeros((D, D), dtype=np.int64)
        for i in range(j - 1):
            for e in range(Db):
                X[(i + 1) * Db + e, i * Db + e] = 1
        for e in range(Db):
            eps = self.p ** e
            for t in range(j):
                c = b.neg(b.mul(eps, self.modulus[t]))
                X[t * Db:(t + 1) * Db, (j - 1) * Db + e] = b.to_digits(c)
        return X

    def _fp_mul_slow(self, a: int) -> np.ndarray:
        b = self.base
        X = self._fp_mul_by_x()
        D = self.degree
        out = np.zeros((D, D), dtype=np.int64)
        P = np.eye(D, dtype=np.int64)
        for i in range(self.rel_degree):
            ai = (a // b.order ** i) % b.order
            if ai:
                blk = np.kron(np.eye(self.rel_degree, dtype=np.int64), b.mul_matrix(ai))
                out = (out + P @ blk) % self.p
            P = X @ P % self.p
        return out

    def _has_full_order(self, M: np.ndarray) -> bool:
        N = self.size
        one = np.zeros(self.degree, dtype=np.int64)
        one[0] = 1
        if not np.array_equal(_matpow_vec(M, N, one, self.p), one):
            return False
        return all(not np.array_equal(_matpow_vec(M, N // l, one, self.p), one)
                   for l in prime_factors(N))

    def _build_tables(self, generator: int | None) -> None:
        p, N = self.p, self.size
        if self.base is None:
            if generator is None:
                generator = next(g for g in range(1, p)
                                 if p == 2 or all(pow(g, N // l, p) != 1 for l in prime_factors(N)))
            exp = np.empty(N, dtype=np.int64)
            acc = 1
            for i in range(N):
                exp[i] = acc
                acc = acc * generator % p
        else:
            if generator is None:
                cands: Iterable[int] = range(2, self.order)
                if self.rel_degree >= 2:
                    cands = [self.base.order] + [c for c in range(2, self.order) if c != self.base.order]
                for c in cands:
                    M = self._fp_mul_by_x() if c == self.base.order else self._fp_mul_slow(c)
                    if self._has_full_order(M):
                        generator, Mg = c, M
                        break
                else:
                    raise FieldError("modulus is not irreducible")
            else:
                Mg = self._fp_mul_slow(generator)
                if not self._has_full_order(Mg):
                    raise FieldError("given generator is not primitive")
            exp = self._power_table(Mg)
        self.generator = int(generator)
        self._exp_arr = np.concatenate([exp, exp])
        log = np.zeros(self.order, dtype=np.int64)
        log[exp] = np.arange(N, dtype=np.int64)
        if len(np.unique(exp)) != N:
            raise FieldError("generator is not primitive")
        self._log_arr = log
        if p != 2 and self.base is not None:
            d0 = exp % p
            plus1 = exp - d0 + (d0 + 1) % p
            zech = np.where(plus1 == 0, -1, log[plus1])
            self._zech_arr = zech
        else:
            self._zech_arr = None
        if self.order <= _LIST_TABLE_LIMIT:
            self._exp = self._exp_arr.tolist()
            self._log = log.tolist()
            self._zech = self._zech_arr.tolist() if self._zech_arr is not None else None
        else:
            self._exp = self._exp_arr
            self._log = log
            self._zech = self._zech_arr

    def _power_table(self, M: np.ndarray) -> np.ndarray:
        p, D, N = self.p, self.degree, self.size
        weights = np.array([p ** t for t in range(D)], dtype=np.int64)
        block = min(N, 4096)
        V = np.zeros((D, block), dtype=np.int64)
        v = np.zeros(D, dtype=np.int64)
        v[0] = 1
        for i in range(block):
            V[:, i] = v
            v = M @ v % p
        out = np.empty(N, dtype=np.int64)
        Pb = np.eye(D, dtype=np.int64)
        step = M.copy()
        e = block
        while e:
            if e & 1:
                Pb = step @ Pb % p
            e >>= 1
            if e:
                step = step @ step % p
        Pf = Pb.astype(np.float64)
        Vf = V.astype(np.float64)
        pos = 0
        while pos < N:
            take = min(block, N - pos)
            out[pos:pos + take] = weights @ V[:, :take]
            pos += take
            Vf = np.mod(Pf @ Vf, p)
            V = Vf.astype(np.int64)
        return out

    # ------------------------------------------------------------------
    # scalar arithmetic

    def add(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        if self.base is None:
            return (a + b) % p
        if not a:
            return b
        if not b:
            return a
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % self.size]
        if z < 0:
            return 0
        return int(self._exp[la + z])

    def neg(self, a: int) -> int:
        if self.p == 2 or not a:
            return a
        if self.base is None:
            return self.p - a
        return int(self._exp[self._log[a] + self.size // 2])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        return int(self._exp[self._log[a] + self._log[b]])

    def inv(self, a: int) -> int:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return int(self._exp[(-self._log[a]) % self.size])

    def div(self, a: int, b: int) -> int:
        if not b:
            raise ZeroDivisionError("division by zero")
        if not a:
            return 0
        return int(self._exp[(self._log[a] - self._log[b]) % self.size])

    def pow(self, a: int, e: int) -> int:
        if not a:
            if e < 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 if e == 0 else 0
        return int(self._exp[(self._log[a] * e) % self.size])

    def frob(self, a: int, i: int = 1) -> int:
        """a^(q^i); negative i gives the inverse Frobenius."""
        if not a:
            return 0
        e = pow(self.q, i % self.q_degree, self.size) if self.size > 1 else 1
        return int(self._exp[(self._log[a] * e) % self.size])

    def exp(self, e: int) -> int:
        return int(self._exp[e % self.size])

    def log(self, a: int) -> int:
        if not a:
            raise ValueError("log of zero")
        return int(self._log[a])

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime field."""
        return n % self.p

    def sum(self, values: Iterable[int]) -> int:
        acc = 0
        for v in values:
            acc = self.add(acc, v)
        return acc

    def elements(self) -> range:
        return range(self.order)

    # ------------------------------------------------------------------
    # vectorised arithmetic on integer arrays

    def vadd(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.p == 2:
            return A ^ B
        if self.base is None:
            return (A + B) % self.p
        A, B = np.broadcast_arrays(A, B)
        la = self._log_arr[A]
        z = self._zech_arr[(self._log_arr[B] - la) % self.size]
        out = np.where(z < 0, 0, self._exp_arr[la + np.maximum(z, 0)])
        out = np.where(A == 0, B, np.where(B == 0, A, out))
        return out

    def vneg(self, A: np.ndarray) -> np.ndarray:
        A = np.asarray(A, dtype=np.int64)
        if self.p == 2:
            return A
        if self.base is None:
            return (-A) % self.p
        return np.where(A == 0, 0, self._exp_arr[self._log_arr[A] + self.size // 2])

    def vsub(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        return self.vadd(A, self.vneg(B))

    def vmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        r = self._exp_arr[self._log_arr[A] + self._log_arr[B]]
        return np.where((A == 0) | (B == 0), 0, r)

    def vinv(self, A: np.ndarray) -> np.ndarray:
        A = np.asarray(A, dtype=np.int64)
        if np.any(A == 0):
            raise ZeroDivisionError("inverse of zero")
        return self._exp_arr[(-self._log_arr[A]) % self.size]

    def vfrob(self, A: np.ndarray, i: int = 1) -> np.ndarray:
        A = np.asarray(A, dtype=np.int64)
        e = pow(self.q, i % self.q_degree, self.size) if self.size > 1 else 1
        return np.where(A == 0, 0, self._exp_arr[(self._log_arr[A] * e) % self.size])

    def vpow(self, A: np.ndarray, e: int) -> np.ndarray:
        A = np.asarray(A, dtype=np.int64)
        r = self._exp_arr[(self._log_arr[A] * e) % self.size]
        if e == 0:
            return np.ones_like(A)
        return np.where(A == 0, 0, r)

    # ------------------------------------------------------------------
    # coordinates

    @cached_property
    def _weights(self) -> np.ndarray:
        return np.array([self.p ** t for t in range(self.degree)], dtype=np.int64)

    def to_digits(self, a: int) -> np.ndarray:
        """Coordinates of a over F_p."""
        return (int(a) // self._weights) % self.p

    def digits(self, A: np.ndarray) -> np.ndarray:
        """Vectorised F_p coordinates: shape A.shape + (degree,)."""
        A = np.asarray(A, dtype=np.int64)
        return (A[..., None] // self._weights) % self.p

    def encode(self, V: np.ndarray) -> np.ndarray:
        """Inverse of ``digits`` along the last axis."""
        return np.asarray(V, dtype=np.int64) % self.p @ self._weights

    def coords(self, a: int) -> list[int]:
        """Coordinates over the base field in the power basis of the modulus."""
        if self.base is None:
            return [a]
        b = self.base.order
        return [(a // b ** i) % b for i in range(self.rel_degree)]

    def from_coords(self, cs: Sequence[int]) -> int:
        if self.base is None:
            return int(cs[0]) if cs else 0
        b = self.base.order
        return sum(int(c) * b ** i for i, c in enumerate(cs))

    def mul_matrix(self, a: int) -> np.ndarray:
        """F_p matrix of x -> a*x acting on digit vectors."""
        basis = np.array([self.p ** t for t in range(self.degree)], dtype=np.int64)
        return self.digits(self.vmul(np.full(self.degree, a), basis)).T.copy()

    @cached_property
    def mul_matrices(self) -> np.ndarray:
        """All multiplication matrices, indexed by encoding (small fields only)."""
        D = self.degree
        basis = np.array([self.p ** t for t in range(D)], dtype=np.int64)
        prods = self.vmul(np.arange(self.order)[:, None], basis[None, :])
        return np.transpose(self.digits(prods), (0, 2, 1)).copy()

    def min_poly_degree(self, a: int, sub_q: int | None = None) -> int:
        """Degree of a over the field of order sub_q (default q)."""
        sub_q = sub_q or self.q
        j = 1
        x = a
        while True:
            x = self.pow(x, sub_q) if x else 0
            if x == a:
                return j
            j += 1

    def norm(self, a: int, c_degree: int) -> int:
        """Norm down to the subfield of q-degree c_degree (value as an element of self)."""
        if self.q_degree % c_degree:
            raise FieldError(f"{c_degree} does not divide {self.q_degree}")
        if not a:
            return 0
        qc = self.q ** c_degree
        e = (self.order - 1) // (qc - 1)
        return self.pow(a, e)

    def __repr__(self) -> str:
        return f"GF({self.order})"


def _search_primitive_field(base: GF, degree: int, seed: int, q: int) -> GF:
    total = base.order ** degree
    for k in range(total):
        idx = (seed + k) % total
        tail = [(idx // base.order ** i) % base.order for i in range(degree)]
        if tail[0] == 0:
            continue
        mod = tuple(tail) + (1,)
        try:
            return GF(base.p, mod, base=base, q=q, generator=base.order if degree >= 2 else None)
        except FieldError:
            continue
    raise ModulusSearchError(f"no primitive modulus of degree {degree} over GF({base.order})")


def _gcd_closure(degrees: Iterable[int]) -> list[int]:
    ds = set(int(d) for d in degrees) | {1}
    changed = True
    while changed:
        changed = False
        for a in list(ds):
            for b in list(ds):
                g = math.gcd(a, b)
                if g not in ds:
                    ds.add(g)
                    changed = True
    return sorted(ds)


class FieldTower:
    """Fields F_{q^j} for j in ``degrees`` with pinned moduli and coherent embeddings.

    Moduli are primitive polynomials: the first one at or after ``seed`` in the
    order of the index sum(c_i q^i) of the non-leading coefficients.
    """

    def __init__(self, p: int, m: int, degrees: Iterable[int], seed: int = 0,
                 moduli: dict[int, Sequence[int]] | None = None,
                 fq_modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if m < 1:
            raise FieldError("m must be positive")
        self.p, self.m, self.seed = p, m, int(seed)
        self.q = p ** m
        if self.q > MAX_Q:
            raise FieldError(f"q = {self.q} exceeds the supported maximum {MAX_Q}")
        self.degrees = _gcd_closure(degrees)
        for j in self.degrees:
            if j < 1:
                raise FieldError("degrees must be positive")
            if self.q ** j > MAX_LEVEL_ORDER:
                raise FieldError(f"level q^{j} = {self.q ** j} exceeds 2^24")
        Fp = GF(p)
        self.Fp = Fp
        if m == 1:
            self.fq_modulus: tuple[int, ...] = ()
            self.Fq = GF(p, q=p)
        else:
            if fq_modulus is None:
                self.Fq = _search_primitive_field(Fp, m, self.seed, self.q)
            else:
                self.Fq = GF(p, tuple(int(c) for c in fq_modulus), base=Fp, q=self.q, generator=p)
            self.fq_modulus = self.Fq.modulus
        self._levels: dict[int, GF] = {1: self.Fq}
        self.moduli: dict[int, tuple[int, ...]] = {}
        for j in self.degrees:
            if j == 1:
                continue
            if moduli is not None and j in moduli:
                mod = tuple(int(c) for c in moduli[j])
                self._levels[j] = GF(p, mod, base=self.Fq, q=self.q, generator=self.q)
            else:
                self._levels[j] = _search_primitive_field(self.Fq, j, self.seed, self.q)
            self.moduli[j] = self._levels[j].modulus
        self._emb: dict[tuple[int, int], np.ndarray] = {}
        self._build_embeddings()
        self._restrict: dict[tuple[int, int], np.ndarray] = {}

    def _build_embeddings(self) -> None:
        for b in self.degrees:
            Fb = self._levels[b]
            self._emb[(b, b)] = np.arange(Fb.order, dtype=np.int64)
            if b > 1:
                self._emb[(1, b)] = np.arange(self.q, dtype=np.int64)
            for a in self.degrees:
                if a in (1, b) or b % a:
                    continue
                Fa = self._levels[a]
                L = Fb.size // Fa.size
                subs = [c for c in self.degrees if c != 1 and c < a and a % c == 0]
                chosen = None
                for t in range(1, Fa.size):
                    if math.gcd(t, Fa.size) != 1:
                        continue
                    z = Fb.exp(L * t)
                    if _eval_poly(Fb, self.moduli[a], z) != 0:
                        continue
                    table = self._table(Fa, Fb, L * t)
                    if all(table[self._emb[(c, a)][self._levels[c].generator]]
                           == self._emb[(c, b)][self._levels[c].generator] for c in subs):
                        chosen = table
                        break
                if chosen is None:
                    raise FieldError(f"no coherent embedding of level {a} into level {b}")
                self._emb[(a, b)] = chosen

    @staticmethod
    def _table(Fa: GF, Fb: GF, zlog: int) -> np.ndarray:
        table = np.zeros(Fa.order, dtype=np.int64)
        e = np.arange(Fa.size, dtype=np.int64)
        table[Fa._exp_arr[:Fa.size]] = Fb._exp_arr[(e * zlog) % Fb.size]
        return table

    # ------------------------------------------------------------------

    def level(self, j: int) -> GF:
        try:
            return self._levels[j]
        except KeyError:
            raise FieldError(f"level {j} is not part of the tower {self.degrees}") from None

    def has_level(self, j: int) -> bool:
        return j in self._levels

    def embed(self, x: int, a: int, b: int) -> int:
        if a == b:
            return x
        return int(self._emb_table(a, b)[x])

    def embed_array(self, X: np.ndarray, a: int, b: int) -> np.ndarray:
        if a == b:
            return np.asarray(X, dtype=np.int64)
        return self._emb_table(a, b)[np.asarray(X, dtype=np.int64)]

    def _emb_table(self, a: int, b: int) -> np.ndarray:
        try:
            return self._emb[(a, b)]
        except KeyError:
            raise FieldError(f"no embedding of level {a} into level {b}") from None

    def restrict(self, y: int, b: int, a: int) -> int:
        """Preimage of y (level b) in level a; raises if y is not in the subfield."""
        if a == b:
            return y
        key = (a, b)
        if key not in self._restrict:
            inv = np.full(self._levels[b].order, -1, dtype=np.int64)
            tab = self._emb_table(a, b)
            inv[tab] = np.arange(len(tab), dtype=np.int64)
            self._restrict[key] = inv
        x = int(self._restrict[key][y])
        if x < 0:
            raise FieldError(f"element {y} of level {b} is not in level {a}")
        return x

    def in_level(self, y: int, b: int, a: int) -> bool:
        return self._levels[b].frob(y, a) == y

    def frobenius(self, x: int, i: int, j: int) -> int:
        return self._levels[j].frob(x, i)

    def norm(self, x: int, j: int, c: int) -> int:
        """Norm from level j to level c, returned as an element of level c."""
        if j % c:
            raise FieldError(f"{c} does not divide {j}")
        y = self._levels[j].norm(x, c)
        if c in self._levels:
            return self.restrict(y, j, c)
        raise FieldError(f"level {c} is not part of the tower")

    def element(self, j: int, value: int) -> FieldElement:
        return FieldElement(self, j, value)

    def config(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "seed": self.seed,
            "degrees": list(self.degrees),
            "fq_modulus": list(self.fq_modulus),
            "moduli": {str(j): list(mod) for j, mod in sorted(self.moduli.items())},
        }

    @classmethod
    def from_config(cls, cfg: dict) -> FieldTower:
        moduli = {int(j): tuple(v) for j, v in cfg.get("moduli", {}).items()}
        fqm = cfg.get("fq_modulus") or None
        return cls(int(cfg["p"]), int(cfg["m"]), cfg["degrees"], int(cfg.get("seed", 0)),
                   moduli=moduli, fq_modulus=fqm)

    def __repr__(self) -> str:
        return f"FieldTower(q={self.q}, degrees={self.degrees})"


def _eval_poly(F: GF, coeffs: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = F.add(F.mul(acc, x), c)
    return acc


_TOWER_CACHE: dict[tuple, FieldTower] = {}


def build_tower(p: int, m: int, degrees: Iterable[int], seed: int = 0) -> FieldTower:
    """Build (or fetch from cache) the deterministic tower for these parameters."""
    key = (p, m, tuple(_gcd_closure(degrees)), seed)
    tower = _TOWER_CACHE.get(key)
    if tower is None:
        tower = FieldTower(p, m, key[2], seed)
        _TOWER_CACHE[key] = tower
    return tower


class FieldElement:
    """An element of one level of a tower, with operator syntax."""

    __slots__ = ("tower", "level", "value")

    def __init__(self, tower: FieldTower, level: int, value: int):
        self.tower = tower
        self.level = level
        self.value = int(value)

    @property
    def field(self) -> GF:
        return self.tower.level(self.level)

    def _lift(self, other) -> tuple[GF, int, int, int]:
        if isinstance(other, int):
            other = FieldElement(self.tower, 1, other % self.tower.q)
        if other.tower is not self.tower:
            raise FieldError("elements of different towers")
        j = math.lcm(self.level, other.level)
        a = self.tower.embed(self.value, self.level, j)
        b = self.tower.embed(other.value, other.level, j)
        return self.tower.level(j), j, a, b

    def __add__(self, other):
        F, j, a, b = self._lift(other)
        return FieldElement(self.tower, j, F.add(a, b))

    __radd__ = __add__

    def __sub__(self, other):
        F, j, a, b = self._lift(other)
        return FieldElement(self.tower, j, F.sub(a, b))

    def __rsub__(self, other):
        F, j, a, b = self._lift(other)
        return FieldElement(self.tower, j, F.sub(b, a))

    def __mul__(self, other):
        F, j, a, b = self._lift(other)
        return FieldElement(self.tower, j, F.mul(a, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        F, j, a, b = self._lift(other)
        return FieldElement(self.tower, j, F.div(a, b))

    def __neg__(self):
        return FieldElement(self.tower, self.level, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.tower, self.level, self.field.pow(self.value, e))

    def inverse(self) -> FieldElement:
        return FieldElement(self.tower, self.level, self.field.inv(self.value))

    def frobenius(self, i: int = 1) -> FieldElement:
        return FieldElement(self.tower, self.level, self.field.frob(self.value, i))

    def norm(self, c: int) -> FieldElement:
        return FieldElement(self.tower, c, self.tower.norm(self.value, self.level, c))

    def coords(self) -> list[int]:
        return self.field.coords(self.value)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = FieldElement(self.tower, 1, other)
        if not isinstance(other, FieldElement) or other.tower is not self.tower:
            return NotImplemented
        _, _, a, b = self._lift(other)
        return a == b

    def __hash__(self) -> int:
        return hash((id(self.tower), self.level, self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"FieldElement(level={self.level}, coords={self.coords()})"


def frobenius(x: FieldElement, i: int) -> FieldElement:
    return x.frobenius(i)


def norm(x: FieldElement, c: int) -> FieldElement:
    return x.norm(c)
