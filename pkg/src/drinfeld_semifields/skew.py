"""The twisted polynomial ring k{tau} with tau*a = a^q*tau, and its centre F_q[pi]."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .algebra import poly
from .algebra.fields import FieldError, FieldTower, GF
from .algebra.linalg import RowReducer


class SkewPoly:
    """sum a_i tau^i with coefficients in level ``level`` of ``tower``."""

    __slots__ = ("tower", "level", "coeffs")

    def __init__(self, tower: FieldTower, level: int, coeffs: Sequence[int] = ()):
        self.tower = tower
        self.level = level
        self.coeffs = poly.trim(coeffs)

    @property
    def field(self) -> GF:
        return self.tower.level(self.level)

    @classmethod
    def tau(cls, tower: FieldTower, level: int, power: int = 1) -> SkewPoly:
        return cls(tower, level, (0,) * power + (1,))

    @classmethod
    def const(cls, tower: FieldTower, level: int, c: int) -> SkewPoly:
        return cls(tower, level, (c,))

    @property
    def degree(self) -> int:
        return poly.deg(self.coeffs)

    @property
    def height(self) -> int:
        """Index of the lowest nonzero coefficient."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return poly.ZERO_DEGREE

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def derivative(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def lift(self, level: int) -> SkewPoly:
        if level == self.level:
            return self
        arr = self.tower.embed_array(np.array(self.coeffs, dtype=np.int64), self.level, level)
        return SkewPoly(self.tower, level, arr.tolist())

    def _common(self, other: SkewPoly) -> tuple[SkewPoly, SkewPoly]:
        if other.tower is not self.tower:
            raise FieldError("skew polynomials over different towers")
        if other.level == self.level:
            return self, other
        j = math.lcm(self.level, other.level)
        return self.lift(j), other.lift(j)

    def __add__(self, other: SkewPoly) -> SkewPoly:
        a, b = self._common(other)
        return SkewPoly(a.tower, a.level, poly.add(a.field, a.coeffs, b.coeffs))

    def __sub__(self, other: SkewPoly) -> SkewPoly:
        a, b = self._common(other)
        return SkewPoly(a.tower, a.level, poly.sub(a.field, a.coeffs, b.coeffs))

    def __neg__(self) -> SkewPoly:
        return SkewPoly(self.tower, self.level, poly.neg(self.field, self.coeffs))

    def __mul__(self, other) -> SkewPoly:
        if isinstance(other, int):
            return self.scale_right(other)
        return skew_mul(self, other)

    def __rmul__(self, other) -> SkewPoly:
        if isinstance(other, int):
            return self.scale_left(other)
        return NotImplemented

    def scale_left(self, c: int) -> SkewPoly:
        return SkewPoly(self.tower, self.level, poly.scale(self.field, c, self.coeffs))

    def scale_right(self, c: int) -> SkewPoly:
        F = self.field
        return SkewPoly(self.tower, self.level,
                        [F.mul(a, F.frob(c, i)) for i, a in enumerate(self.coeffs)])

    def monic(self) -> SkewPoly:
        if not self.coeffs:
            return self
        return self.scale_left(self.field.inv(self.lc))

    def __call__(self, beta: int, level: int | None = None) -> int:
        return evaluate(self, beta, level)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SkewPoly):
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        return hash((self.level, self.coeffs))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*t^{i}" if i else str(c))
        return f"SkewPoly(level={self.level}, {' + '.join(terms) or '0'})"

    def to_json(self) -> dict:
        F = self.field
        return {"level": self.level, "coeffs": [F.coords(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, tower: FieldTower, data: dict) -> SkewPoly:
        F = tower.level(int(data["level"]))
        return cls(tower, int(data["level"]), [F.from_coords(c) for c in data["coeffs"]])


def _frob_array(F: GF, arr: np.ndarray, i: int) -> np.ndarray:
    return F.vfrob(arr, i) if i % F.q_degree else arr


def skew_mul(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    f, g = f._common(g)
    F = f.field
    if not f.coeffs or not g.coeffs:
        return SkewPoly(f.tower, f.level, ())
    if len(f.coeffs) * len(g.coeffs) <= 16:
        out = [0] * (len(f.coeffs) + len(g.coeffs) - 1)
        for i, a in enumerate(f.coeffs):
            if a:
                for j, b in enumerate(g.coeffs):
                    if b:
                        out[i + j] = F.add(out[i + j], F.mul(a, F.frob(b, i)))
        return SkewPoly(f.tower, f.level, out)
    garr = np.array(g.coeffs, dtype=np.int64)
    out_arr = np.zeros(len(f.coeffs) + len(g.coeffs) - 1, dtype=np.int64)
    for i, a in enumerate(f.coeffs):
        if a:
            term = F.vmul(np.int64(a), _frob_array(F, garr, i))
            seg = out_arr[i:i + len(g.coeffs)]
            out_arr[i:i + len(g.coeffs)] = F.vadd(seg, term)
    return SkewPoly(f.tower, f.level, out_arr.tolist())


def right_divmod(f: SkewPoly, P: SkewPoly) -> tuple[SkewPoly, SkewPoly]:
    """(g, e) with f = g*P + e and deg e < deg P."""
    f, P = f._common(P)
    if not P.coeffs:
        raise ZeroDivisionError("right division by the zero skew polynomial")
    F = f.field
    b = P.degree
    rem = list(f.coeffs)
    quo = [0] * max(len(rem) - b, 0)
    Pc = P.coeffs
    for a in range(len(rem) - 1, b - 1, -1):
        top = rem[a]
        if not top:
            continue
        s = a - b
        c = F.div(top, F.frob(Pc[-1], s))
        quo[s] = c
        for j, pj in enumerate(Pc):
            if pj:
                rem[s + j] = F.sub(rem[s + j], F.mul(c, F.frob(pj, s)))
    return SkewPoly(f.tower, f.level, quo), SkewPoly(f.tower, f.level, rem[:b])


def left_divmod(f: SkewPoly, P: SkewPoly) -> tuple[SkewPoly, SkewPoly]:
    """(g, e) with f = P*g + e and deg e < deg P."""
    f, P = f._common(P)
    if not P.coeffs:
        raise ZeroDivisionError("left division by the zero skew polynomial")
    F = f.field
    b = P.degree
    rem = list(f.coeffs)
    quo = [0] * max(len(rem) - b, 0)
    Pc = P.coeffs
    lead_inv = F.inv(Pc[-1])
    for a in range(len(rem) - 1, b - 1, -1):
        top = rem[a]
        if not top:
            continue
        s = a - b
        c = F.frob(F.mul(top, lead_inv), -b)
        quo[s] = c
        for j, pj in enumerate(Pc):
            if pj:
                rem[j + s] = F.sub(rem[j + s], F.mul(pj, F.frob(c, j)))
    return SkewPoly(f.tower, f.level, quo), SkewPoly(f.tower, f.level, rem[:b])


def right_mod(f: SkewPoly, P: SkewPoly) -> SkewPoly:
    return right_divmod(f, P)[1]


def right_gcd(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    """Monic generator of the left ideal Rf + Rg."""
    f, g = f._common(g)
    if not f.coeffs and not g.coeffs:
        raise ValueError("gcd of two zero skew polynomials")
    while g.coeffs:
        f, g = g, right_mod(f, g)
    return f.monic()


def evaluate(f: SkewPoly, beta: int, level: int | None = None) -> int:
    """sum a_i beta^(q^i) with beta in ``level`` (default: f's level)."""
    level = f.level if level is None else level
    if level % f.level:
        raise FieldError(f"level {level} does not contain the coefficient field (level {f.level})")
    K = f.tower.level(level)
    acc = 0
    b = beta
    for i, a in enumerate(f.coeffs):
        if a:
            acc = K.add(acc, K.mul(f.tower.embed(a, f.level, level), b))
        b = K.frob(b, 1)
    return acc


def derivative(f: SkewPoly) -> int:
    return f.derivative()


def is_central(f: SkewPoly, n: int) -> bool:
    """True iff f lies in F_q[tau^n] (coefficients read in level n)."""
    g = f.lift(n) if f.level != n else f
    F = g.field
    for i, c in enumerate(g.coeffs):
        if c and (i % n or c >= F.q):
            return False
    return True


class CentralPoly:
    """A polynomial over F_q in pi = tau^n (little-endian F_q encodings)."""

    __slots__ = ("Fq", "n", "coeffs")

    def __init__(self, Fq: GF, n: int, coeffs: Sequence[int]):
        self.Fq = Fq
        self.n = n
        self.coeffs = poly.trim(coeffs)

    @property
    def degree(self) -> int:
        return poly.deg(self.coeffs)

    def to_skew(self, tower: FieldTower, level: int | None = None) -> SkewPoly:
        level = self.n if level is None else level
        out = [0] * (self.n * (len(self.coeffs) - 1) + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[self.n * i] = c
        return SkewPoly(tower, level, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CentralPoly):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.n, self.coeffs))

    def __repr__(self) -> str:
        from .algebra.apoly import format_poly
        return f"CentralPoly({format_poly(self.Fq, self.coeffs, 'pi')})"


def mclm_linear(u: SkewPoly, n: int) -> CentralPoly:
    """Minimal central left multiple by incremental F_q-linear algebra on pi^i mod_r u."""
    if not u.coeffs:
        raise ValueError("mclm of the zero skew polynomial")
    tower = u.tower
    Fq = tower.Fq
    if u.level != n:
        u = u.lift(n)
    s = u.degree
    if s == 0:
        return CentralPoly(Fq, n, (1,))
    K = u.field
    p, m = K.p, Fq.degree
    width = s * K.degree

    def vec(r: SkewPoly) -> np.ndarray:
        arr = np.zeros(s, dtype=np.int64)
        arr[: len(r.coeffs)] = r.coeffs
        return K.digits(arr).reshape(-1)

    omegas = [p ** e for e in range(m)]
    red = RowReducer(width, p)
    rho = right_mod(SkewPoly(tower, n, (1,)), u)
    for D in range(n * s + 1):
        combo = red.express(vec(rho))
        if combo is not None:
            # combo indexes (i, e) pairs in insertion order i*m + e
            cs = []
            for i in range(D):
                c = 0
                for e in range(m):
                    lam = int(combo[i * m + e])
                    if lam:
                        c = Fq.add(c, Fq.mul(lam, omegas[e]))
                cs.append(Fq.neg(c))
            return CentralPoly(Fq, n, cs + [1])
        for w in omegas:
            red.add(vec(rho.scale_left(w)))
        rho = right_mod(SkewPoly(tower, n, (0,) * n + rho.coeffs), u)
    raise ArithmeticError("no central left multiple found within the degree bound")


def _is_central_multiple(f: CentralPoly, u: SkewPoly, n: int) -> bool:
    return not right_mod(f.to_skew(u.tower, n), u).coeffs


def mclm_charpoly(u: SkewPoly, n: int) -> CentralPoly:
    """Minimal central left multiple from the minimal polynomial of pi over F_q(u).

    m_u(x) reduced at T = 0 is a central left multiple of u; surplus factor
    exponents are then removed one at a time while u still divides on the right.
    """
    from .drinfeld import DrinfeldModule

    if not u.coeffs:
        raise ValueError("mclm of the zero skew polynomial")
    Fq = u.tower.Fq
    if u.level != n:
        u = u.lift(n)
    if u.degree == 0:
        return CentralPoly(Fq, n, (1,))
    m_bar = DrinfeldModule.from_skew(u, n).minimal_poly_pi.reduce_mod_T()
    f = CentralPoly(Fq, n, m_bar)
    if not _is_central_multiple(f, u, n):
        raise ArithmeticError("reduced minimal polynomial is not a central multiple of u")
    factors = dict(poly.factor(Fq, m_bar))
    for g in list(factors):
        while factors[g] > 0:
            factors[g] -= 1
            trial = (1,)
            for h, e in factors.items():
                trial = poly.mul(Fq, trial, poly.power(Fq, h, e))
            if _is_central_multiple(CentralPoly(Fq, n, trial), u, n):
                f = CentralPoly(Fq, n, trial)
            else:
                factors[g] += 1
                break
    return f
