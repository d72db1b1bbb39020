"""Dense univariate polynomials over a table-driven field.

Polynomials are little-endian tuples of field encodings with no trailing
zeros; the zero polynomial is ``()`` and has degree ``ZERO_DEGREE``.
"""

from __future__ import annotations

from itertools import product
from typing import Iterator, Sequence

from .fields import GF, prime_factors

ZERO_DEGREE = -1

Poly = tuple


def trim(f: Sequence[int]) -> Poly:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return tuple(int(c) for c in f)


def deg(f: Poly) -> int:
    return len(f) - 1 if f else ZERO_DEGREE


def add(F: GF, f: Poly, g: Poly) -> Poly:
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = F.add(out[i], c)
    return trim(out)


def neg(F: GF, f: Poly) -> Poly:
    return tuple(F.neg(c) for c in f)


def sub(F: GF, f: Poly, g: Poly) -> Poly:
    return add(F, f, neg(F, g))


def scale(F: GF, c: int, f: Poly) -> Poly:
    if not c:
        return ()
    return tuple(F.mul(c, a) for a in f)


def shift(f: Poly, k: int) -> Poly:
    return (0,) * k + tuple(f) if f else ()


def mul(F: GF, f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if not a:
            continue
        for j, b in enumerate(g):
            if b:
                out[i + j] = F.add(out[i + j], F.mul(a, b))
    return trim(out)


def divmod_(F: GF, f: Poly, g: Poly) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if len(f) < len(g):
        return (), tuple(f)
    r = list(f)
    dg = len(g) - 1
    inv = F.inv(g[-1])
    quo = [0] * (len(f) - dg)
    for i in range(len(f) - 1, dg - 1, -1):
        c = r[i]
        if not c:
            continue
        c = F.mul(c, inv)
        quo[i - dg] = c
        for j, b in enumerate(g):
            if b:
                r[i - dg + j] = F.sub(r[i - dg + j], F.mul(c, b))
    return trim(quo), trim(r[:dg])


def mod(F: GF, f: Poly, g: Poly) -> Poly:
    return divmod_(F, f, g)[1]


def monic(F: GF, f: Poly) -> Poly:
    if not f or f[-1] == 1:
        return tuple(f)
    return scale(F, F.inv(f[-1]), f)


def gcd(F: GF, f: Poly, g: Poly) -> Poly:
    while g:
        f, g = g, mod(F, f, g)
    return monic(F, f)


def powmod(F: GF, f: Poly, e: int, m: Poly) -> Poly:
    result: Poly = (1,)
    base = mod(F, f, m)
    while e:
        if e & 1:
            result = mod(F, mul(F, result, base), m)
        e >>= 1
        if e:
            base = mod(F, mul(F, base, base), m)
    return mod(F, result, m)


def power(F: GF, f: Poly, e: int) -> Poly:
    result: Poly = (1,)
    for _ in range(e):
        result = mul(F, result, f)
    return result


def evaluate(F: GF, f: Poly, x: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def derivative(F: GF, f: Poly) -> Poly:
    return trim([F.mul(F.from_int(i), c) for i, c in enumerate(f)][1:])


def is_irreducible(F: GF, f: Poly) -> bool:
    """Rabin's test over F: x^(Q^d) = x mod f and gcd(x^(Q^(d/l)) - x, f) = 1."""
    if not f:
        raise ValueError("irreducibility of the zero polynomial")
    d = deg(f)
    if d <= 0:
        return False
    if d == 1:
        return True
    f = monic(F, f)
    x: Poly = (0, 1)
    frob = [x]
    h = x
    for _ in range(d):
        h = powmod(F, h, F.order, f)
        frob.append(h)
    if frob[d] != x:
        return False
    for l in prime_factors(d):
        if deg(gcd(F, sub(F, frob[d // l], x), f)) > 0:
            return False
    return True


def roots(F: GF, f: Poly) -> list[int]:
    return [a for a in range(F.order) if evaluate(F, f, a) == 0]


def monic_polys(F: GF, d: int) -> Iterator[Poly]:
    """All monic polynomials of degree d, in increasing sum(c_i Q^i) order."""
    for tail in product(range(F.order), repeat=d):
        yield tuple(reversed(tail)) + (1,)


def irreducibles(F: GF, d: int) -> Iterator[Poly]:
    for f in monic_polys(F, d):
        if is_irreducible(F, f):
            yield f


def is_irreducible_naive(F: GF, f: Poly) -> bool:
    """Trial division by every monic polynomial of degree <= deg f / 2."""
    d = deg(f)
    if d <= 0:
        return False
    for e in range(1, d // 2 + 1):
        for g in monic_polys(F, e):
            if not mod(F, f, g):
                return False
    return True


def factor(F: GF, f: Poly) -> list[tuple[Poly, int]]:
    """Factor a small-degree polynomial by trial division with irreducibles."""
    if not f:
        raise ValueError("factor of zero")
    f = monic(F, f)
    out = []
    d = 1
    while deg(f) > 0:
        if 2 * d > deg(f):
            out.append((f, 1))
            break
        for g in irreducibles(F, d):
            e = 0
            while True:
                qt, r = divmod_(F, f, g)
                if r:
                    break
                f, e = qt, e + 1
            if e:
                out.append((g, e))
        d += 1
    merged: dict[Poly, int] = {}
    for g, e in out:
        merged[g] = merged.get(g, 0) + e
    return sorted(merged.items(), key=lambda t: (deg(t[0]), t[0][::-1]))


def min_poly(F: GF, a: int, sub_q: int | None = None) -> Poly:
    """Minimal polynomial of a over the subfield of order sub_q (coefficients as encodings of F)."""
    sub_q = sub_q or F.q
    conj = [a]
    x = F.pow(a, sub_q)
    while x != a:
        conj.append(x)
        x = F.pow(x, sub_q)
    f: Poly = (1,)
    for c in conj:
        f = mul(F, f, (F.neg(c), 1))
    return f
