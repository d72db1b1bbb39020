"""F_q-linear rank-metric codes of square matrices over a residue field."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .algebra import linalg
from .algebra.fields import GF

DEFAULT_BUDGET = 1 << 24
BUDGET_ENV = "DRINFELD_SEMIFIELDS_ENUM_BUDGET"


class EnumerationBudgetExceeded(RuntimeError):
    def __init__(self, needed: int, budget: int):
        super().__init__(f"exhaustive enumeration needs {needed} codewords, budget is {budget}")
        self.needed = needed
        self.budget = budget


def enumeration_budget() -> int:
    val = os.environ.get(BUDGET_ENV)
    return int(val) if val else DEFAULT_BUDGET


# ----------------------------------------------------------------------
# matrices over a table field


def gf_matmul(F: GF, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Matrix product over F; leading axes broadcast."""
    X = np.asarray(X, dtype=np.int64)
    Y = np.asarray(Y, dtype=np.int64)
    acc = None
    for t in range(X.shape[-1]):
        term = F.vmul(X[..., :, t, None], Y[..., None, t, :])
        acc = term if acc is None else F.vadd(acc, term)
    return acc


def expand_matrix(F: GF, X: np.ndarray) -> np.ndarray:
    """Matrix over F_p obtained by replacing each entry with its multiplication block."""
    X = np.asarray(X, dtype=np.int64)
    D = F.degree
    if F.order <= 4096:
        blocks = F.mul_matrices[X]
    else:
        blocks = np.array([[F.mul_matrix(int(c)) for c in row] for row in X])
    lead = X.shape[:-2]
    r, s = X.shape[-2:]
    nd = len(lead)
    perm = tuple(range(nd)) + (nd, nd + 2, nd + 1, nd + 3)
    return blocks.transpose(perm).reshape(lead + (r * D, s * D))


def relative_expand(F: GF, X: np.ndarray) -> np.ndarray:
    """Matrix over the base field of F (entries are base encodings) via the power basis of F."""
    X = np.asarray(X, dtype=np.int64)
    b = F.base
    d = F.rel_degree
    r, s = X.shape
    out = np.zeros((r * d, s * d), dtype=np.int64)
    basis = [b.order ** a for a in range(d)]
    for i in range(r):
        for j in range(s):
            for a, xa in enumerate(basis):
                out[i * d:(i + 1) * d, j * d + a] = F.coords(F.mul(int(X[i, j]), xa))
    return out


def rank_over(F: GF, X: np.ndarray) -> int:
    return kernels.rank_mod_p(expand_matrix(F, X), F.p) // F.degree


def rank_gauss(F: GF, X: np.ndarray) -> int:
    """Rank by scalar Gaussian elimination with field-table arithmetic (oracle)."""
    A = [[int(c) for c in row] for row in np.asarray(X)]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = F.inv(A[r][c])
        A[r] = [F.mul(inv, x) for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[i], A[r])]
        r += 1
    return r


def rank_distance(F: GF, X: np.ndarray, Y: np.ndarray) -> int:
    X = np.asarray(X)
    Y = np.asarray(Y)
    if X.shape != Y.shape:
        raise ValueError("rank distance of matrices of different shapes")
    return rank_over(F, F.vsub(X, Y))


# ----------------------------------------------------------------------


@dataclass
class NuclearSet:
    name: str
    dim: int
    basis: np.ndarray
    is_field: bool | None
    degenerate: bool


@dataclass
class NuclearParams:
    dim_code: int
    left: NuclearSet
    right: NuclearSet
    centralizer: NuclearSet
    center: NuclearSet
    ambient: str = "field"
    flags: dict = field(default_factory=dict)

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.dim_code, self.left.dim, self.right.dim, self.centralizer.dim, self.center.dim)

    def to_json(self) -> dict:
        return {
            "ambient": self.ambient,
            "parameters": list(self.as_tuple()),
            "fields": {s.name: s.is_field for s in (self.left, self.right, self.centralizer, self.center)},
            "degenerate": {s.name: s.degenerate for s in (self.left, self.right, self.centralizer, self.center)},
            **({"flags": self.flags} if self.flags else {}),
        }


@dataclass
class ScanResult:
    min_rank: int | None
    deficient: int
    witness: np.ndarray | None
    scanned: int
    complete: bool


class RankMetricCode:
    """An F_q-subspace of r x s matrices over F (F an extension of F_q inside a tower-like chain).

    ``basis`` holds F_q-linearly independent matrices with entries encoded in F.
    """

    def __init__(self, F: GF, basis: Sequence[np.ndarray], q: int | None = None,
                 prime: Sequence[int] | None = None, provenance: dict | None = None,
                 check: bool = True):
        self.F = F
        self.q = q or F.q
        self.p = F.p
        self.m = round(np.log(self.q) / np.log(self.p))
        self.basis = np.array([np.asarray(B, dtype=np.int64) for B in basis], dtype=np.int64)
        if self.basis.ndim != 3:
            raise ValueError("basis must be a list of matrices")
        self.rows, self.cols = self.basis.shape[1:]
        self.prime = tuple(prime) if prime is not None else None
        self.provenance = provenance or {}
        self.d = F.degree // self.m
        if check and linalg.rank(self._flat(self.fq_span()), self.p) != self.m * len(self.basis):
            raise ValueError("basis matrices are not F_q-linearly independent")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def size(self) -> int:
        return self.q ** self.dim

    def fq_span(self) -> np.ndarray:
        """F_p-basis {w^e B_i} of the code (index i*m + e)."""
        omegas = np.array([self.p ** e for e in range(self.m)], dtype=np.int64)
        out = self.F.vmul(self.basis[:, None, :, :], omegas[None, :, None, None])
        return out.reshape(-1, self.rows, self.cols)

    def _flat(self, mats: np.ndarray) -> np.ndarray:
        mats = np.asarray(mats, dtype=np.int64)
        return self.F.digits(mats).reshape(len(mats), -1)

    def codeword(self, coords: Sequence[int]) -> np.ndarray:
        """Codeword from F_p coordinates on ``fq_span``."""
        span = self.fq_span()
        acc = np.zeros((self.rows, self.cols), dtype=np.int64)
        for c, B in zip(coords, span):
            for _ in range(int(c)):
                acc = self.F.vadd(acc, B)
        return acc

    def codewords(self):
        """All codewords (small codes only)."""
        span = self.fq_span()
        flat = self.F.digits(span)
        total = self.p ** len(span)
        for t in range(total):
            c = np.array([(t // self.p ** i) % self.p for i in range(len(span))], dtype=np.int64)
            yield self.F.encode(np.tensordot(c, flat, axes=1) % self.p)

    # -- enumeration

    def scan(self, stop_below: int = 0, budget: int | None = None) -> ScanResult:
        budget = enumeration_budget() if budget is None else budget
        if self.size - 1 > budget:
            raise EnumerationBudgetExceeded(self.size - 1, budget)
        exp = expand_matrix(self.F, self.fq_span())
        D = self.F.degree
        mr, defi, wit, scanned = kernels.gray_scan(exp, self.p, stop_below * D)
        if mr is None:
            return ScanResult(None, 0, None, 0, True)
        return ScanResult(int(mr) // D, int(defi), wit, int(scanned), scanned == self.size - 1)

    def min_distance(self, budget: int | None = None) -> int:
        if self.dim == 0:
            raise ValueError("minimum distance of the zero code")
        res = self.scan(stop_below=1, budget=budget)
        return res.min_rank

    def singular_witness(self, budget: int | None = None) -> np.ndarray | None:
        """F_p coordinates of the first codeword of less than full rank, if any."""
        full = min(self.rows, self.cols)
        res = self.scan(stop_below=full, budget=budget)
        if res.min_rank is not None and res.min_rank < full:
            return res.witness
        return None

    def is_f_linear(self) -> bool:
        """Closed under multiplication by F (not just F_q)."""
        if self.d == 1:
            return True
        gen = self.F.generator
        red = self._span_reducer()
        for B in self.basis:
            if not red.contains(self._flat(self.F.vmul(B, gen)[None])[0]):
                return False
        return True

    def _span_reducer(self) -> linalg.RowReducer:
        flat = self._flat(self.fq_span())
        red = linalg.RowReducer(flat.shape[1], self.p)
        for v in flat:
            red.add(v)
        return red

    def singleton_bound_met(self, distance: int) -> bool:
        if self.is_f_linear():
            Q_dim = self.dim // self.d
            n, mm = min(self.rows, self.cols), max(self.rows, self.cols)
            return Q_dim * self.d == self.dim and Q_dim == mm * (n - distance + 1)
        n, mm = min(self.rows, self.cols) * self.d, max(self.rows, self.cols) * self.d
        return self.dim == mm * (n - distance * self.d + 1)

    def is_mrd(self, budget: int | None = None) -> bool:
        return self.singleton_bound_met(self.min_distance(budget))

    def is_semifield(self, budget: int | None = None) -> bool:
        if self.rows != self.cols:
            return False
        if self.dim != self.rows * self.d:
            return False
        return self.singular_witness(budget) is None

    # -- nuclei

    def nuclear_parameters(self, ambient: str = "field", budget: int | None = None) -> NuclearParams:
        if self.rows != self.cols:
            raise ValueError("nuclear parameters need square matrices")
        if ambient == "base":
            if self.d == 1:
                code = self
            else:
                exp = [relative_expand(self.F, B) for B in self.basis]
                code = RankMetricCode(self.F.base, exp, q=self.q, check=False)
            params = code.nuclear_parameters("field", budget)
            params.ambient = "base"
            return params
        F, p, m = self.F, self.p, self.m
        R0, D = self.rows, F.degree
        A = R0 * R0 * D
        span_rows, span_piv = linalg.rref(self._flat(self.fq_span()), p)
        free = np.array([c for c in range(A) if c not in set(span_piv)], dtype=np.int64)

        def residual(V: np.ndarray) -> np.ndarray:
            if len(span_piv):
                V = (V - linalg.matmul(V[:, span_piv], span_rows, p)) % p
            return V[:, free]

        E = np.zeros((A, R0, R0), dtype=np.int64)
        idx = np.arange(A)
        E[idx, idx // (R0 * D), (idx // D) % R0] = p ** (idx % D)
        left_blocks, right_blocks, comm_blocks = [], [], []
        for B in self.basis:
            EB = gf_matmul(F, E, B[None])
            BE = gf_matmul(F, B[None], E)
            left_blocks.append(residual(self._flat(EB)))
            right_blocks.append(residual(self._flat(BE)))
            comm_blocks.append(self._flat(F.vsub(EB, BE)))
        G_l = np.hstack(left_blocks)
        G_r = np.hstack(right_blocks)
        G_c = np.hstack(comm_blocks)
        sols = {
            "left_idealizer": linalg.left_nullspace(G_l, p),
            "right_idealizer": linalg.left_nullspace(G_r, p),
            "centralizer": linalg.left_nullspace(G_c, p),
            "center": linalg.left_nullspace(np.hstack([G_l, G_c]), p),
        }
        sets = {}
        for name, S in sols.items():
            mats = F.encode(S.reshape(len(S), R0, R0, D)) if len(S) else np.zeros((0, R0, R0), dtype=np.int64)
            dim_fp = len(S)
            degenerate = dim_fp == A
            is_field = self._field_check(mats, budget)
            sets[name] = NuclearSet(name, dim_fp // m, mats, is_field, degenerate)
        return NuclearParams(self.dim, sets["left_idealizer"], sets["right_idealizer"],
                             sets["centralizer"], sets["center"])

    def _field_check(self, mats: np.ndarray, budget: int | None) -> bool | None:
        """True/False when decided; None if the set is too large to enumerate."""
        F, p = self.F, self.p
        if len(mats) == 0:
            return False
        R0 = self.rows
        flat = self._flat(mats)
        red = linalg.RowReducer(flat.shape[1], p)
        for v in flat:
            red.add(v)
        ident = np.eye(R0, dtype=np.int64)
        if not red.contains(self._flat(ident[None])[0]):
            return False
        for i in range(len(mats)):
            for j in range(i, len(mats)):
                XY = gf_matmul(F, mats[i], mats[j])
                if not np.array_equal(XY, gf_matmul(F, mats[j], mats[i])):
                    return False
                if not red.contains(self._flat(XY[None])[0]):
                    return False
        budget = enumeration_budget() if budget is None else budget
        if p ** len(mats) - 1 > budget:
            return None
        exp = expand_matrix(F, mats)
        full = R0 * F.degree
        mr, _, _, _ = kernels.gray_scan(exp, p, full)
        return mr is None or mr == full

    # -- serialisation

    def to_json(self) -> dict:
        F = self.F
        return {
            "rows": self.rows,
            "cols": self.cols,
            "prime": list(self.prime) if self.prime is not None else None,
            "basis": [[[F.coords(int(c)) for c in row] for row in B] for B in self.basis],
            "provenance": self.provenance,
        }

    @classmethod
    def from_json(cls, F: GF, data: dict, q: int | None = None, check: bool = True) -> RankMetricCode:
        basis = [np.array([[F.from_coords(c) for c in row] for row in B], dtype=np.int64)
                 for B in data["basis"]]
        return cls(F, basis, q=q, prime=data.get("prime"), provenance=data.get("provenance"),
                   check=check)


def conjugate(F: GF, code: RankMetricCode, P: np.ndarray, Pinv: np.ndarray) -> RankMetricCode:
    """The code P C P^{-1}."""
    basis = [gf_matmul(F, gf_matmul(F, P, B), Pinv) for B in code.basis]
    return RankMetricCode(F, basis, q=code.q, prime=code.prime, provenance=code.provenance)


def invariants(code: RankMetricCode, budget: int | None = None) -> dict:
    """The invariants recorded in exported code files."""
    dist = code.min_distance(budget)
    semifield = code.is_semifield(budget)
    out = {
        "dimension": code.dim,
        "min_distance": dist,
        "is_mrd": code.singleton_bound_met(dist),
        "is_semifield": semifield,
    }
    if code.rows == code.cols:
        out["nuclear_parameters"] = code.nuclear_parameters("field", budget).to_json()
        if code.d > 1:
            out["nuclear_parameters_base"] = code.nuclear_parameters("base", budget).to_json()
    return out
