"""The polynomial ring A = F_q[T] and its residue fields A/p."""

from __future__ import annotations

from functools import cached_property
from typing import Iterator, Sequence

from . import poly
from .fields import GF, FieldError
from .poly import ZERO_DEGREE


def format_fq(Fq: GF, c: int) -> str:
    """Write an F_q element as a polynomial in the generator w (plain int when q = p)."""
    if Fq.base is None:
        return str(c)
    terms = []
    for e, d in enumerate(Fq.coords(c)):
        if not d:
            continue
        mono = "" if e == 0 else ("w" if e == 1 else f"w^{e}")
        if not mono:
            terms.append(str(d))
        elif d == 1:
            terms.append(mono)
        else:
            terms.append(f"{d}*{mono}")
    return "+".join(reversed(terms)) or "0"


def format_poly(Fq: GF, coeffs: Sequence[int], var: str = "T") -> str:
    if not coeffs:
        return "0"
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        cs = format_fq(Fq, c)
        if "+" in cs:
            cs = f"({cs})"
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            terms.append(cs)
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{cs}*{mono}")
    return " + ".join(terms)


class APoly:
    """An element of F_q[T]; coefficients are F_q encodings, little-endian."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: GF, coeffs: Sequence[int] = ()):
        self.field = field
        self.coeffs = poly.trim(coeffs)

    @classmethod
    def T(cls, field: GF) -> APoly:
        return cls(field, (0, 1))

    @classmethod
    def const(cls, field: GF, c: int) -> APoly:
        return cls(field, (c,))

    @property
    def degree(self) -> int:
        return poly.deg(self.coeffs)

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> APoly:
        return APoly(self.field, poly.monic(self.field, self.coeffs))

    def _wrap(self, other) -> APoly:
        if isinstance(other, APoly):
            return other
        if isinstance(other, int):
            return APoly(self.field, (other % self.field.order,))
        return NotImplemented

    def __add__(self, other):
        other = self._wrap(other)
        return APoly(self.field, poly.add(self.field, self.coeffs, other.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._wrap(other)
        return APoly(self.field, poly.sub(self.field, self.coeffs, other.coeffs))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __neg__(self):
        return APoly(self.field, poly.neg(self.field, self.coeffs))

    def __mul__(self, other):
        other = self._wrap(other)
        return APoly(self.field, poly.mul(self.field, self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return APoly(self.field, poly.power(self.field, self.coeffs, e))

    def __divmod__(self, other):
        return apoly_divmod(self, self._wrap(other))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x: int) -> int:
        return poly.evaluate(self.field, self.coeffs, x)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = APoly(self.field, (other,))
        if not isinstance(other, APoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __repr__(self) -> str:
        return f"APoly({format_poly(self.field, self.coeffs)})"

    def __str__(self) -> str:
        return format_poly(self.field, self.coeffs)

    def to_list(self) -> list[int]:
        return list(self.coeffs)


def apoly_divmod(f: APoly, g: APoly) -> tuple[APoly, APoly]:
    q, r = poly.divmod_(f.field, f.coeffs, g.coeffs)
    return APoly(f.field, q), APoly(f.field, r)


def apoly_gcd(f: APoly, g: APoly) -> APoly:
    return APoly(f.field, poly.gcd(f.field, f.coeffs, g.coeffs))


def is_irreducible(field: GF, f: Sequence[int] | APoly) -> bool:
    coeffs = f.coeffs if isinstance(f, APoly) else poly.trim(f)
    return poly.is_irreducible(field, coeffs)


def enumerate_primes(d: int, Fq: GF) -> Iterator[APoly]:
    """Monic irreducibles of degree d, ordered by the big-endian coefficient vector
    (c_{d-1}, ..., c_0), i.e. by the index sum(c_i q^i)."""
    if d < 1:
        raise ValueError("prime degree must be positive")
    for f in poly.irreducibles(Fq, d):
        yield APoly(Fq, f)


def necklace_count(q: int, d: int) -> int:
    """Number of monic irreducibles of degree d over F_q (Gauss's formula)."""
    def mobius(n: int) -> int:
        res, k = 1, 2
        while k * k <= n:
            if n % k == 0:
                n //= k
                if n % k == 0:
                    return 0
                res = -res
            k += 1
        return -res if n > 1 else res
    return sum(mobius(d // c) * q ** c for c in range(1, d + 1) if d % c == 0) // d


def factor_apoly(f: APoly) -> list[tuple[APoly, int]]:
    return [(APoly(f.field, g), e) for g, e in poly.factor(f.field, f.coeffs)]


class ResidueField:
    """F_p = A/p as an extension of F_q of degree deg p.

    Residues are encoded like tower elements: T maps to the class x of the
    modulus, so a reduced polynomial's coefficient vector is its encoding.
    """

    def __init__(self, prime: APoly):
        Fq = prime.field
        if not prime.is_monic():
            raise FieldError("residue field needs a monic prime")
        if not is_irreducible(Fq, prime):
            raise FieldError(f"{prime} is not irreducible")
        self.prime = prime
        self.Fq = Fq
        self.d = prime.degree
        self.q = Fq.order
        if self.d == 1:
            self.field = Fq
        else:
            self.field = GF(Fq.p, prime.coeffs, base=Fq, q=Fq.order)
        self.order = self.field.order

    @cached_property
    def root(self) -> int:
        """The residue of T."""
        return self.reduce(APoly.T(self.Fq))

    def reduce(self, f: APoly | Sequence[int]) -> int:
        coeffs = f.coeffs if isinstance(f, APoly) else poly.trim(f)
        r = poly.mod(self.Fq, coeffs, self.prime.coeffs)
        if self.d == 1:
            return r[0] if r else 0
        return self.field.from_coords(r)

    def lift(self, c: int) -> APoly:
        if self.d == 1:
            return APoly(self.Fq, (c,))
        return APoly(self.Fq, self.field.coords(c))

    def reduce_bivariate(self, coeffs: Sequence[APoly]) -> tuple[int, ...]:
        return poly.trim([self.reduce(c) for c in coeffs])

    def generates(self, c: int) -> bool:
        return generates_residue_field(self, c)

    def __repr__(self) -> str:
        return f"ResidueField({self.prime})"


def reduce_mod_prime(f, prime: APoly | ResidueField):
    """Reduce an APoly (to a residue) or a sequence of APolys (to a polynomial over F_p)."""
    R = prime if isinstance(prime, ResidueField) else ResidueField(prime)
    if isinstance(f, APoly):
        return R.reduce(f)
    return R.reduce_bivariate(list(f))


def generates_residue_field(R: ResidueField, c: int) -> bool:
    """True iff F_q(c) is all of F_p, i.e. c has degree d over F_q."""
    if R.d == 1:
        return True
    return R.field.min_poly_degree(c, R.q) == R.d


__all__ = [
    "APoly", "ResidueField", "ZERO_DEGREE", "apoly_divmod", "apoly_gcd", "enumerate_primes",
    "factor_apoly", "generates_residue_field", "is_irreducible", "necklace_count",
    "reduce_mod_prime", "format_poly", "format_fq",
]
