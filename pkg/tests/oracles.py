"""Slow, independent reference implementations used to check the library.

Everything here works element by element in plain Python.  Field elements
are handled through schoolbook arithmetic on base-q digits, so none of the
library's tables, numpy kernels or elimination routines are involved.
"""
from __future__ import annotations

import itertools
from typing import Sequence


# -- field arithmetic from the modulus alone


def _digits(F, a: int) -> list[int]:
    b = F.base.order
    return [(a // b ** i) % b for i in range(F.rel_degree)]


def _undigits(F, ds: Sequence[int]) -> int:
    b = F.base.order
    return sum(int(d) * b ** i for i, d in enumerate(ds))


def slow_add(F, a: int, b: int) -> int:
    if F.base is None:
        return (a + b) % F.p
    return _undigits(F, [slow_add(F.base, x, y) for x, y in zip(_digits(F, a), _digits(F, b))])


def slow_neg(F, a: int) -> int:
    if F.base is None:
        return (-a) % F.p
    return _undigits(F, [slow_neg(F.base, x) for x in _digits(F, a)])


def slow_mul(F, a: int, b: int) -> int:
    if F.base is None:
        return (a * b) % F.p
    B = F.base
    da, db = _digits(F, a), _digits(F, b)
    k = F.rel_degree
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] = slow_add(B, prod[i + j], slow_mul(B, x, y))
    mod = F.modulus
    for i in range(len(prod) - 1, k - 1, -1):
        c = prod[i]
        if c:
            for j in range(k + 1):
                prod[i - k + j] = slow_add(B, prod[i - k + j], slow_neg(B, slow_mul(B, c, mod[j])))
    return _undigits(F, prod[:k])


def slow_pow(F, a: int, e: int) -> int:
    out = 1
    for _ in range(e):
        out = slow_mul(F, out, a)
    return out


def slow_inv(F, a: int) -> int:
    return slow_pow(F, a, F.order - 2)


# -- polynomials over a field (coefficient lists, low degree first)


def ptrim(f: Sequence[int]) -> tuple[int, ...]:
    f = list(f)
    while f and not f[-1]:
        f.pop()
    return tuple(f)


def padd(F, f, g) -> tuple[int, ...]:
    n = max(len(f), len(g))
    return ptrim([F.add(f[i] if i < len(f) else 0, g[i] if i < len(g) else 0) for i in range(n)])


def pneg(F, f) -> tuple[int, ...]:
    return tuple(F.neg(c) for c in f)


def pmul(F, f, g) -> tuple[int, ...]:
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        for j, y in enumerate(g):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return ptrim(out)


def pmod(F, f, g) -> tuple[int, ...]:
    f = list(ptrim(f))
    g = ptrim(g)
    inv = F.inv(g[-1])
    while len(f) >= len(g):
        c = F.mul(f[-1], inv)
        shift = len(f) - len(g)
        for j, y in enumerate(g):
            f[shift + j] = F.sub(f[shift + j], F.mul(c, y))
        f = list(ptrim(f))
    return tuple(f)


def monic_polys(q: int, d: int):
    for tail in itertools.product(range(q), repeat=d):
        yield tuple(tail) + (1,)


def brute_irreducible(F, f) -> bool:
    """Trial division by every monic polynomial of degree <= deg f / 2."""
    f = ptrim(f)
    d = len(f) - 1
    if d < 1:
        return False
    for e in range(1, d // 2 + 1):
        for g in monic_polys(F.order, e):
            if not pmod(F, f, g):
                return False
    return True


def brute_primes(F, d: int) -> list[tuple[int, ...]]:
    return [f for f in monic_polys(F.order, d) if brute_irreducible(F, f)]


def leibniz_det(F, M: Sequence[Sequence[tuple]]) -> tuple[int, ...]:
    """Determinant of a square matrix over F[T] by the permutation expansion."""
    r = len(M)
    out: tuple = ()
    for perm in itertools.permutations(range(r)):
        inversions = sum(1 for i in range(r) for j in range(i + 1, r) if perm[i] > perm[j])
        term: tuple = (1,)
        for i in range(r):
            term = pmul(F, term, M[i][perm[i]])
            if not term:
                break
        if term:
            out = padd(F, out, pneg(F, term) if inversions % 2 else term)
    return out


# -- linear algebra


def fp_rank(rows: Sequence[Sequence[int]], p: int) -> int:
    rows = [[int(x) % p for x in r] for r in rows]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                c = rows[i][col]
                rows[i] = [(x - c * y) % p for x, y in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def field_rank(F, M: Sequence[Sequence[int]]) -> int:
    """Rank over F using scalar field operations only."""
    rows = [[int(x) for x in r] for r in M]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = F.inv(rows[rank][col])
        rows[rank] = [F.mul(x, inv) for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                c = rows[i][col]
                rows[i] = [F.sub(x, F.mul(c, y)) for x, y in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def field_charpoly(F, M: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """det(xI - M) over F by the permutation expansion over F[x]."""
    r = len(M)
    X = [[padd(F, (0, 1) if i == j else (), (F.neg(int(M[i][j])),)) for j in range(r)]
         for i in range(r)]
    return leibniz_det(F, X)


# -- skew polynomials as maps


def eval_linearized(k, q: int, coeffs: Sequence[int], beta: int) -> int:
    """sum c_i beta^(q^i) computed with repeated q-th powers."""
    out, b = 0, beta
    for i, c in enumerate(coeffs):
        if i:
            b = k.pow(b, q)
        out = k.add(out, k.mul(c, b))
    return out


def compose_on_field(k, q: int, f: Sequence[int], g: Sequence[int]) -> list[int]:
    """The map beta -> f(g(beta)) tabulated on all of k."""
    return [eval_linearized(k, q, f, eval_linearized(k, q, g, b)) for b in range(k.order)]


def field_norm(k, q: int, a: int, degree: int) -> int:
    """prod_{i<degree} a^(q^i), the norm to F_q of an element of F_(q^degree)."""
    out, b = 1, a
    for i in range(degree):
        if i:
            b = k.pow(b, q)
        out = k.mul(out, b)
    return out


def frobenius_constant_term(k, q: int, n: int, g: Sequence[int]) -> tuple[int, ...]:
    """P_phi(0) for phi_T = g_0 + ... + g_r tau^r over k = F_(q^n), from the companion matrix.

    det S = (-1)^(r+1) (T - g_0)/g_r, the Frobenius matrix is S S^(q) ... S^(q^(n-1)),
    and P_phi(0) = (-1)^r det.
    """
    r = len(g) - 1
    acc: tuple = (1,)
    g0, gr = g[0], g[-1]
    for _ in range(n):
        acc = pmul(k, acc, (k.neg(g0), 1))
        g0 = k.pow(g0, q)
    inv_norm = k.inv(field_norm(k, q, gr, n))
    acc = pmul(k, acc, (inv_norm,))
    if (r + (r + 1) * n) % 2:
        acc = pneg(k, acc)
    return acc
