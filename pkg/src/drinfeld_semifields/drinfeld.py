"""Drinfeld modules over k = F_{q^n}: motives, characteristic polynomials, torsion."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from .algebra import linalg, poly
from .algebra.apoly import APoly, ResidueField, factor_apoly, format_poly
from .algebra.bigfield import TableFieldEmbedding, prime_extension
from .algebra.fields import FieldTower, GF, prime_factors
from .codes import expand_matrix, gf_matmul
from .skew import SkewPoly, right_divmod, skew_mul


# largest F_p-degree of the splitting field used for torsion computations
MAX_SPLIT_DEGREE = 1024


class TorsionError(RuntimeError):
    """The torsion module could not be realised (bad prime or splitting level too large)."""


class NotAnEndomorphism(ValueError):
    pass


# ----------------------------------------------------------------------
# generic commutative-ring helpers


@dataclass(frozen=True)
class Ring:
    zero: object
    one: object
    add: Callable
    mul: Callable
    neg: Callable


def poly_ring(F: GF) -> Ring:
    """The ring F[T] on little-endian tuples."""
    return Ring((), (1,), lambda a, b: poly.add(F, a, b), lambda a, b: poly.mul(F, a, b),
                lambda a: poly.neg(F, a))


def scalar_ring(F: GF) -> Ring:
    return Ring(0, 1, F.add, F.mul, F.neg)


def berkowitz(A: Sequence[Sequence], R: Ring) -> list:
    """Coefficients (little-endian) of det(xI - A), division free."""
    n = len(A)
    if n == 0:
        return [R.one]
    p = [R.neg(A[n - 1][n - 1]), R.one]
    for k in range(n - 2, -1, -1):
        s = n - k - 1
        row = A[k][k + 1:]
        col = [A[i][k] for i in range(k + 1, n)]
        N = [r[k + 1:] for r in A[k + 1:]]
        t = [R.one, R.neg(A[k][k])]
        v = col
        for _ in range(s):
            acc = R.zero
            for a, b in zip(row, v):
                acc = R.add(acc, R.mul(a, b))
            t.append(R.neg(acc))
            nv = []
            for r in N:
                acc = R.zero
                for a, b in zip(r, v):
                    acc = R.add(acc, R.mul(a, b))
                nv.append(acc)
            v = nv
        pb = p[::-1]
        new = []
        for i in range(s + 2):
            acc = R.zero
            for j in range(min(i, s) + 1):
                acc = R.add(acc, R.mul(t[i - j], pb[j]))
            new.append(acc)
        p = new[::-1]
    return p


def matmul_ring(A, B, R: Ring):
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = R.zero
            for t in range(k):
                acc = R.add(acc, R.mul(A[i][t], B[t][j]))
            row.append(acc)
        out.append(row)
    return out


# ----------------------------------------------------------------------
# polynomials in x over A = F_q[T]


class CharPoly:
    """A monic polynomial in x with coefficients in A (little-endian list of APoly)."""

    def __init__(self, coeffs: Sequence[APoly]):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        if not coeffs or coeffs[-1].coeffs != (1,):
            raise ArithmeticError("characteristic polynomial is not monic")
        self.coeffs = coeffs
        self.Fq = coeffs[0].field

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def constant_term(self) -> APoly:
        return self.coeffs[0]

    def reduce(self, R: ResidueField) -> tuple[int, ...]:
        return R.reduce_bivariate(self.coeffs)

    def reduce_mod_T(self) -> tuple[int, ...]:
        return poly.trim([c.coeffs[0] if c.coeffs else 0 for c in self.coeffs])

    def __eq__(self, other) -> bool:
        if not isinstance(other, CharPoly):
            return NotImplemented
        return [c.coeffs for c in self.coeffs] == [c.coeffs for c in other.coeffs]

    def __hash__(self) -> int:
        return hash(tuple(c.coeffs for c in self.coeffs))

    def to_json(self) -> list[list[int]]:
        return [list(c.coeffs) for c in self.coeffs]

    def __str__(self) -> str:
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            cs = str(c)
            if mono and cs == "1":
                terms.append(mono)
            elif mono:
                terms.append(f"({cs})*{mono}")
            else:
                terms.append(f"({cs})")
        return " + ".join(terms)

    def __repr__(self) -> str:
        return f"CharPoly({self})"


def _bi_mul(Fq: GF, f: list, g: list) -> list:
    out = [()] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if not a:
            continue
        for j, b in enumerate(g):
            if b:
                out[i + j] = poly.add(Fq, out[i + j], poly.mul(Fq, a, b))
    return out


def _bi_pow(Fq: GF, f: list, e: int) -> list:
    out = [(1,)]
    for _ in range(e):
        out = _bi_mul(Fq, out, f)
    return out


def _bi_trim(f: list) -> list:
    f = list(f)
    while f and not f[-1]:
        f.pop()
    return f


def _p_power_root(Fq: GF, f: list, pa: int) -> list | None:
    """The pa-th root (pa a power of p) of a bivariate polynomial, if it is a pa-th power."""
    if pa == 1:
        return f
    inv_e = pow(pa, -1, Fq.size) if Fq.size > 1 else 1
    out = []
    for i, c in enumerate(f):
        if i % pa:
            if c:
                return None
            continue
        root = []
        for j, a in enumerate(c):
            if j % pa:
                if a:
                    return None
                continue
            root.append(Fq.pow(a, inv_e) if a else 0)
        out.append(poly.trim(root))
    return out


def _coprime_root(Fq: GF, f: list, e: int) -> list | None:
    """Monic e-th root (p not dividing e) by top-down coefficient matching."""
    if e == 1:
        return f
    total = len(f) - 1
    if total % e:
        return None
    d = total // e
    inv_e = Fq.inv(Fq.from_int(e))
    m = [()] * d + [(1,)]
    for k in range(1, d + 1):
        power = _bi_pow(Fq, m, e)
        idx = total - k
        c = power[idx] if idx < len(power) else ()
        m[d - k] = poly.scale(Fq, inv_e, poly.sub(Fq, f[idx], c))
    if _bi_trim(_bi_pow(Fq, m, e)) != _bi_trim(f):
        return None
    return m


def exact_root(Fq: GF, f: list, e: int) -> list | None:
    """Monic m with m^e = f in A[x], or None."""
    p = Fq.p
    pa, e1 = 1, e
    while e1 % p == 0:
        pa *= p
        e1 //= p
    r = _p_power_root(Fq, f, pa)
    if r is None:
        return None
    return _coprime_root(Fq, r, e1)


# ----------------------------------------------------------------------


class DrinfeldModule:
    """phi_T = g_0 + g_1 tau + ... + g_r tau^r over k = level n of the tower."""

    def __init__(self, tower: FieldTower, n: int, coeffs: Sequence[int]):
        self.tower = tower
        self.n = n
        self.k = tower.level(n)
        self.Fq = tower.Fq
        self.q = tower.q
        self.phi_T = SkewPoly(tower, n, coeffs)
        if self.phi_T.degree < 1:
            raise ValueError("phi_T must have positive tau-degree")
        self.g = self.phi_T.coeffs
        self.rank = self.phi_T.degree
        self._kT = poly_ring(self.k)

    @classmethod
    def from_skew(cls, u: SkewPoly, n: int) -> DrinfeldModule:
        u = u.lift(n) if u.level != n else u
        return cls(u.tower, n, u.coeffs)

    # -- basic structure

    def phi_a(self, a: APoly) -> SkewPoly:
        acc = SkewPoly(self.tower, self.n, ())
        for c in reversed(a.coeffs):
            acc = skew_mul(acc, self.phi_T) + SkewPoly(self.tower, self.n, (c,))
        return acc

    def a_characteristic(self) -> APoly:
        return APoly(self.Fq, poly.min_poly(self.k, self.g[0], self.q))

    def is_endomorphism(self, u: SkewPoly) -> bool:
        return skew_mul(u, self.phi_T) == skew_mul(self.phi_T, u)

    def pi(self) -> SkewPoly:
        return SkewPoly.tau(self.tower, self.n, self.n)

    # -- motive

    def motive_coords(self, m: SkewPoly) -> list[tuple]:
        m = m.lift(self.n) if m.level != self.n else m
        r = self.rank
        cols: list[list[int]] = [[] for _ in range(r)]
        j = 0
        while m.coeffs:
            m, rem = right_divmod(m, self.phi_T)
            for i in range(r):
                c = rem.coeffs[i] if i < len(rem.coeffs) else 0
                cols[i].append(c)
            j += 1
        return [poly.trim(c) for c in cols]

    def expand_coords(self, coords: Sequence[tuple]) -> SkewPoly:
        depth = max((len(c) for c in coords), default=0)
        acc = SkewPoly(self.tower, self.n, ())
        for j in range(depth - 1, -1, -1):
            layer = [c[j] if j < len(c) else 0 for c in coords]
            acc = skew_mul(acc, self.phi_T) + SkewPoly(self.tower, self.n, layer)
        return acc

    def motive_matrix(self, u: SkewPoly, check: bool = True) -> list[list[tuple]]:
        if check and not self.is_endomorphism(u):
            raise NotAnEndomorphism("u does not commute with phi_T")
        r = self.rank
        cols = []
        tau = SkewPoly.tau(self.tower, self.n)
        cur = u.lift(self.n) if u.level != self.n else u
        for i in range(r):
            cols.append(self.motive_coords(cur))
            cur = skew_mul(tau, cur)
        return [[cols[j][i] for j in range(r)] for i in range(r)]

    @cached_property
    def S(self) -> list[list[tuple]]:
        """Companion-type matrix of tau acting on the motive basis 1, tau, ..., tau^(r-1)."""
        k, r, g = self.k, self.rank, self.g
        inv = k.inv(g[r])
        S = [[() for _ in range(r)] for _ in range(r)]
        for i in range(1, r):
            S[i][i - 1] = (1,)
        S[0][r - 1] = poly.trim((k.mul(k.neg(g[0]), inv), inv))
        for i in range(1, r):
            S[i][r - 1] = poly.trim((k.mul(k.neg(g[i]), inv),))
        return S

    def _twist(self, A: list[list[tuple]], i: int) -> list[list[tuple]]:
        k = self.k
        return [[tuple(k.frob(c, i) for c in e) for e in row] for row in A]

    def motive_matrix_recurrence(self, u: SkewPoly) -> list[list[tuple]]:
        """Columns col_i = S * col_{i-1}^(q), valid when deg u < r."""
        r = self.rank
        u = u.lift(self.n) if u.level != self.n else u
        if u.degree >= r:
            raise ValueError("the recurrence needs deg u < r")
        col = [((u.coeffs[i],) if i < len(u.coeffs) and u.coeffs[i] else ()) for i in range(r)]
        cols = [col]
        for _ in range(1, r):
            tw = [tuple(self.k.frob(c, 1) for c in e) for e in col]
            col = [x[0] for x in matmul_ring(self.S, [[e] for e in tw], self._kT)]
            cols.append(col)
        return [[cols[j][i] for j in range(r)] for i in range(r)]

    def _to_A(self, coeffs: list[tuple]) -> CharPoly:
        out = []
        for c in coeffs:
            if any(a >= self.q for a in c):
                raise ArithmeticError("characteristic polynomial coefficient is not in F_q[T]")
            out.append(APoly(self.Fq, c))
        return CharPoly(out)

    def char_poly(self, u: SkewPoly, check: bool = True) -> CharPoly:
        U = self.motive_matrix(u, check=check)
        return self._to_A(berkowitz(U, self._kT))

    @cached_property
    def frobenius_matrix(self) -> list[list[tuple]]:
        """U_pi = S S^(q) ... S^(q^(n-1))."""
        P = self.S
        for i in range(1, self.n):
            P = matmul_ring(P, self._twist(self.S, i), self._kT)
        return P

    @cached_property
    def frobenius_char_poly(self) -> CharPoly:
        return self._to_A(berkowitz(self.frobenius_matrix, self._kT))

    @cached_property
    def minimal_poly_pi(self) -> CharPoly:
        """m_phi with P_phi = m_phi^(r/d): the largest exact root of P_phi."""
        P = [c.coeffs for c in self.frobenius_char_poly.coeffs]
        r = self.rank
        for e in sorted((e for e in range(1, r + 1) if r % e == 0), reverse=True):
            m = exact_root(self.Fq, P, e)
            if m is not None:
                cp = CharPoly([APoly(self.Fq, c) for c in m])
                if not self._annihilates_frobenius(cp):
                    raise ArithmeticError("root of P_phi does not annihilate pi")
                return cp
        raise ArithmeticError("no exact root of the Frobenius characteristic polynomial")

    def _annihilates_frobenius(self, m: CharPoly) -> bool:
        U = self.frobenius_matrix
        r = self.rank
        R = self._kT
        acc = [[() for _ in range(r)] for _ in range(r)]
        for c in reversed(m.coeffs):
            acc = matmul_ring(acc, U, R)
            for i in range(r):
                acc[i][i] = R.add(acc[i][i], c.coeffs)
        return all(not e for row in acc for e in row)

    @property
    def d_phi(self) -> int:
        return self.minimal_poly_pi.degree

    def frobenius_norm_identity(self) -> bool:
        """P_phi(0) = unit * q_char^(n / deg q_char)."""
        c0 = self.frobenius_char_poly.constant_term()
        chi = self.a_characteristic()
        target = chi ** (self.n // chi.degree)
        if c0.is_zero() or c0.degree != target.degree:
            return False
        unit = c0.lc
        return c0 == target * unit

    # -- torsion

    def torsion_module(self, a: APoly) -> TorsionModule:
        return TorsionModule(self, a)

    def torsion_space(self, prime: APoly) -> TorsionSpace:
        key = prime.coeffs
        cache = self.__dict__.setdefault("_torsion_cache", {})
        if key not in cache:
            cache[key] = TorsionSpace(self, prime)
        return cache[key]

    def iota_p(self, prime: APoly, u: SkewPoly, check: bool = True) -> np.ndarray:
        if check and not self.is_endomorphism(u):
            raise NotAnEndomorphism("u does not commute with phi_T")
        return self.torsion_space(prime).iota(u)

    def acts_invertibly(self, prime: APoly, u: SkewPoly, slow: bool = False) -> bool:
        chi = self.a_characteristic()
        if prime.monic() == chi:
            raise TorsionError("the prime equals the A-characteristic")
        R = ResidueField(prime)
        fast = R.reduce(self.char_poly(u).constant_term()) != 0
        if slow:
            T = self.torsion_space(prime)
            slow_ans = T.rank_of(T.iota(u)) == self.rank
            if slow_ans != fast:
                raise ArithmeticError("fast and slow invertibility tests disagree")
        return fast

    def to_json(self) -> dict:
        k = self.k
        return {
            "n": self.n,
            "phi_T": [k.coords(c) for c in self.g],
            "a_characteristic": list(self.a_characteristic().coeffs),
            "frobenius_char_poly": self.frobenius_char_poly.to_json(),
            "minimal_poly_pi": self.minimal_poly_pi.to_json(),
        }

    def __repr__(self) -> str:
        return f"DrinfeldModule(n={self.n}, phi_T={list(self.g)})"


def d_u(u: SkewPoly, n: int) -> int:
    """deg_x m_u for psi_T = u; constants get the value 1 by convention."""
    if not u.coeffs:
        raise ValueError("d_u of zero")
    if u.degree == 0:
        return 1
    return DrinfeldModule.from_skew(u, n).d_phi


# ----------------------------------------------------------------------


def _pi_order_bound(phi: DrinfeldModule, a: APoly, bound: int) -> int:
    """Least e <= bound with x^e = 1 in (A/a)[x]/(m_phi mod a)."""
    Fq = phi.Fq
    am = a.monic().coeffs
    m = [poly.mod(Fq, c.coeffs, am) for c in phi.minimal_poly_pi.coeffs]

    def red(t):
        return poly.mod(Fq, t, am)

    def mulmod(f, g):
        prod = [()] * (len(f) + len(g) - 1)
        for i, x in enumerate(f):
            if x:
                for j, y in enumerate(g):
                    if y:
                        prod[i + j] = red(poly.add(Fq, prod[i + j], poly.mul(Fq, x, y)))
        d = len(m) - 1
        for i in range(len(prod) - 1, d - 1, -1):
            c = prod[i]
            if c:
                for j in range(d + 1):
                    prod[i - d + j] = red(poly.sub(Fq, prod[i - d + j], poly.mul(Fq, c, m[j])))
        return _bi_trim(prod[:d])

    x = mulmod([(), (1,)], [(1,)])
    cur = x
    for e in range(1, bound + 1):
        if _bi_trim(cur) == [(1,)]:
            return e
        cur = mulmod(cur, x)
    raise TorsionError(f"pi has order > {bound} on phi[{format_poly(Fq, a.coeffs)}]")


class TorsionModule:
    """ker phi_a inside a splitting field F_{q^N}, as an F_p-subspace with A- and F_q-actions."""

    def __init__(self, phi: DrinfeldModule, a: APoly, N: int | None = None):
        if a.is_zero() or a.degree < 1:
            raise ValueError("torsion needs a nonconstant a")
        chi = phi.a_characteristic()
        if not poly.mod(phi.Fq, a.coeffs, chi.coeffs):
            raise TorsionError("the A-characteristic divides a")
        self.phi = phi
        self.a = a
        self.p = phi.k.p
        self.m = phi.Fq.degree
        if N is None:
            # x is a unit of (A/a)[x]/(m_phi), so its order is below the group size;
            # past the size cap the splitting field is out of reach anyway
            group = phi.q ** (a.degree * phi.d_phi) - 1
            e = _pi_order_bound(phi, a, min(group, MAX_SPLIT_DEGREE // (phi.Fq.degree * phi.n)))
            self._build(phi.n * e)
            e_true = self._pi_order(e)
            if e_true != e:
                self._build(phi.n * e_true)
        else:
            self._build(N)

    def _build(self, N: int) -> None:
        phi, p, m = self.phi, self.p, self.m
        self.N = N
        L = prime_extension(p, m * N)
        self.L = L
        self.emb = TableFieldEmbedding(phi.k, L)
        self.frob_q = L.power_matrix(m)
        phi_a = phi.phi_a(self.a)
        Phi = self._full_matrix(phi_a)
        K = linalg.nullspace(Phi, p)
        expected = m * phi.rank * self.a.degree
        if K.shape[0] != expected:
            raise TorsionError(f"kernel has F_p-dimension {K.shape[0]}, expected {expected}")
        self.basis, self.pivots = linalg.rref(K, p)
        self.dim = expected
        self._frob_basis = [self.basis.T.copy()]

    def _full_matrix(self, f: SkewPoly) -> np.ndarray:
        L, p = self.L, self.p
        out = np.zeros((L.M, L.M), dtype=np.int64)
        Fi = np.eye(L.M, dtype=np.int64)
        for i, c in enumerate(f.coeffs):
            if i:
                Fi = linalg.matmul(self.frob_q, Fi, p)
            if c:
                out = (out + linalg.matmul(L.mul_matrix(self.emb(c)), Fi, p)) % p
        return out

    def _frob_cols(self, i: int) -> np.ndarray:
        while len(self._frob_basis) <= i:
            self._frob_basis.append(linalg.matmul(self.frob_q, self._frob_basis[-1], self.p))
        return self._frob_basis[i]

    def _mul_cols(self, c: int, V: np.ndarray) -> np.ndarray:
        z = self.emb(c)
        return np.stack([self.L.mul(z, V[:, j]) for j in range(V.shape[1])], axis=1)

    def action(self, f: SkewPoly) -> np.ndarray:
        """F_p matrix (columns = images) of f restricted to the kernel, in kernel coordinates."""
        f = f.lift(self.phi.n) if f.level != self.phi.n else f
        p = self.p
        img = np.zeros((self.L.M, self.dim), dtype=np.int64)
        for i, c in enumerate(f.coeffs):
            if c:
                img = (img + self._mul_cols(c, self._frob_cols(i))) % p
        return self.coordinates(img)

    def coordinates(self, V: np.ndarray) -> np.ndarray:
        """Coordinates of kernel vectors (columns of V) in the rref kernel basis."""
        C = V[self.pivots, :] % self.p
        if not np.array_equal(linalg.matmul(self.basis.T, C, self.p), V % self.p):
            raise ArithmeticError("vector is not in the torsion module")
        return C

    def _pi_order(self, e: int) -> int:
        P = self.action(self.phi.pi())
        I = np.eye(self.dim, dtype=np.int64)
        best = e
        for l in prime_factors(e):
            while best % l == 0 and np.array_equal(self._matpow(P, best // l), I):
                best //= l
        return best

    def _matpow(self, A: np.ndarray, e: int) -> np.ndarray:
        out = np.eye(A.shape[0], dtype=np.int64)
        base = A
        while e:
            if e & 1:
                out = linalg.matmul(base, out, self.p)
            e >>= 1
            if e:
                base = linalg.matmul(base, base, self.p)
        return out

    @cached_property
    def T_action(self) -> np.ndarray:
        return self.action(self.phi.phi_T)

    @cached_property
    def omega_action(self) -> np.ndarray:
        """Multiplication by the generator of F_q over F_p (identity when q = p)."""
        if self.m == 1:
            return np.eye(self.dim, dtype=np.int64)
        return self.action(SkewPoly(self.phi.tower, self.phi.n, (self.p,)))

    def apoly_action(self, b: APoly) -> np.ndarray:
        """Matrix of phi_b on the kernel, via the T- and F_q-actions."""
        p, m = self.p, self.m
        Fq = self.phi.Fq
        Om = self.omega_action
        om_pows = [np.eye(self.dim, dtype=np.int64)]
        for _ in range(1, m):
            om_pows.append(linalg.matmul(Om, om_pows[-1], p))
        out = np.zeros((self.dim, self.dim), dtype=np.int64)
        Tp = np.eye(self.dim, dtype=np.int64)
        for i, c in enumerate(b.coeffs):
            if i:
                Tp = linalg.matmul(self.T_action, Tp, p)
            for e, dgt in enumerate(Fq.to_digits(c)):
                if dgt:
                    out = (out + int(dgt) * linalg.matmul(om_pows[e], Tp, p)) % p
        return out

    def elementary_divisors(self) -> list[tuple[APoly, int]]:
        """Elementary divisors (prime, exponent) of the A-module, with multiplicity."""
        out = []
        for prime, e in factor_apoly(self.a.monic()):
            d = prime.degree
            kernel_dims = [0]
            b = APoly(prime.field, (1,))
            for j in range(1, e + 2):
                b = b * prime
                A = self.apoly_action(b)
                kernel_dims.append((self.dim - linalg.rank(A, self.p)) // self.m)
            # number of cyclic summands A/prime^i with i >= j is (k_j - k_{j-1}) / d
            at_least = [(kernel_dims[j] - kernel_dims[j - 1]) // d for j in range(1, e + 2)]
            for j in range(1, e + 2):
                exact = at_least[j - 1] - (at_least[j] if j < len(at_least) else 0)
                out.extend([(prime, j)] * exact)
        return out

    def expected_elementary_divisors(self) -> list[tuple[APoly, int]]:
        out = []
        for prime, e in factor_apoly(self.a.monic()):
            out.extend([(prime, e)] * self.phi.rank)
        return out


class TorsionSpace(TorsionModule):
    """phi[p] for a prime p, with an F_p-basis chosen greedily and the representation iota_p."""

    def __init__(self, phi: DrinfeldModule, prime: APoly, N: int | None = None):
        prime = prime.monic()
        self.residue = ResidueField(prime)
        super().__init__(phi, prime, N)
        self.prime = prime
        self.d = prime.degree
        self._choose_basis()

    def _line(self, v: np.ndarray) -> list[np.ndarray]:
        """F_p spanning vectors of F_prime * v, indexed by a*m + e."""
        p = self.p
        out = []
        Tv = v
        for a in range(self.d):
            if a:
                Tv = linalg.matmul(self.T_action, Tv[:, None], p)[:, 0]
            w = Tv
            for e in range(self.m):
                if e:
                    w = linalg.matmul(self.omega_action, w[:, None], p)[:, 0]
                out.append(w)
        return out

    def _choose_basis(self) -> None:
        p = self.p
        red = linalg.RowReducer(self.dim, p)
        cols = []
        self.fp_basis_vectors = []
        for idx in range(self.dim):
            v = np.zeros(self.dim, dtype=np.int64)
            v[idx] = 1
            if red.contains(v):
                continue
            line = self._line(v)
            for w in line:
                if not red.add(w):
                    raise ArithmeticError("F_prime-line is not free")
            cols.extend(line)
            self.fp_basis_vectors.append(v)
            if len(self.fp_basis_vectors) == self.phi.rank:
                break
        if red.rank != self.dim:
            raise ArithmeticError("greedy basis did not span the torsion module")
        self.change = np.stack(cols, axis=1)
        self.change_inv = linalg.inverse(self.change, p)

    def set_basis(self, vectors: Sequence[np.ndarray]) -> None:
        """Use the given kernel-coordinate vectors as the F_prime-basis."""
        cols = []
        for v in vectors:
            cols.extend(self._line(np.asarray(v, dtype=np.int64)))
        change = np.stack(cols, axis=1)
        self.change_inv = linalg.inverse(change, self.p)
        self.change = change
        self.fp_basis_vectors = [np.asarray(v, dtype=np.int64) for v in vectors]

    def fp_matrix(self, u: SkewPoly) -> np.ndarray:
        """F_p matrix of u in the basis (F_prime-basis) x (F_p-basis of F_prime)."""
        A = self.action(u)
        return linalg.matmul(self.change_inv, linalg.matmul(A, self.change, self.p), self.p)

    def iota(self, u: SkewPoly) -> np.ndarray:
        """r x r matrix over F_prime (entries are residue-field encodings)."""
        F = self.residue.field
        r, md = self.phi.rank, self.m * self.d
        B = self.fp_matrix(u)
        out = np.zeros((r, r), dtype=np.int64)
        for j in range(r):
            col = B[:, j * md]
            for i in range(r):
                out[i, j] = int(F.encode(col[i * md:(i + 1) * md]))
        if not np.array_equal(expand_matrix(F, out), B):
            raise ArithmeticError("u does not act F_prime-linearly on the torsion")
        return out

    def rank_of(self, X: np.ndarray) -> int:
        F = self.residue.field
        return linalg.rank(expand_matrix(F, X), self.p) // F.degree


def char_poly_over_field(F: GF, X: np.ndarray) -> tuple[int, ...]:
    rows = [[int(c) for c in row] for row in np.asarray(X)]
    return poly.trim(berkowitz(rows, scalar_ring(F)))


def eval_poly_at_matrix(F: GF, f: Sequence[int], X: np.ndarray) -> np.ndarray:
    n = X.shape[0]
    acc = np.zeros((n, n), dtype=np.int64)
    for c in reversed(f):
        acc = gf_matmul(F, acc, X)
        diag = np.diag(acc).copy()
        acc[np.arange(n), np.arange(n)] = F.vadd(diag, np.full(n, c))
    return acc
