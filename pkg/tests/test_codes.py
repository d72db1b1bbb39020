from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from drinfeld_semifields import codes, constructions as C
from drinfeld_semifields.algebra.fields import GF, build_tower
from drinfeld_semifields.codes import (
    EnumerationBudgetExceeded, RankMetricCode, conjugate, gf_matmul, rank_distance,
    rank_gauss, rank_over,
)


def eye(r):
    return np.eye(r, dtype=np.int64)


def full_space(F, r):
    out = []
    for i in range(r):
        for j in range(r):
            for e in range(F.degree):
                B = np.zeros((r, r), dtype=np.int64)
                B[i, j] = F.p ** e
                out.append(B)
    return RankMetricCode(F, out, q=F.p)


def brute_min_distance(code) -> int:
    return min(oracles.field_rank(code.F, W.tolist()) for W in code.codewords() if W.any())


def brute_stabilizer_dims(code) -> tuple[int, int, int]:
    """F_p-dimensions of {X : XC in C}, {X : CX in C}, {X : XB = BX} over all X in Mat_r(F)."""
    F, r = code.F, code.rows
    words = {W.tobytes() for W in code.codewords()}
    left = right = cent = 0
    for entries in itertools.product(range(F.order), repeat=r * r):
        X = np.array(entries, dtype=np.int64).reshape(r, r)
        XB = [gf_matmul(F, X, B) for B in code.basis]
        BX = [gf_matmul(F, B, X) for B in code.basis]
        left += all(M.tobytes() in words for M in XB)
        right += all(M.tobytes() in words for M in BX)
        cent += all(np.array_equal(a, b) for a, b in zip(XB, BX))
    to_dim = lambda n: round(np.log(n) / np.log(F.p))
    return to_dim(left), to_dim(right), to_dim(cent)


class TestRank:
    def test_examples(self):
        F = GF(3)
        X = np.array([[1, 2], [0, 1]])
        assert rank_distance(F, X, X) == 0
        assert rank_distance(F, eye(3), np.zeros((3, 3), dtype=np.int64)) == 3
        with pytest.raises(ValueError):
            rank_distance(F, eye(2), eye(3))

    @given(st.sampled_from([(2, 1, 2), (2, 1, 3), (3, 1, 2), (2, 2, 1)]),
           st.integers(1, 4), st.integers(1, 4), st.data())
    def test_rank_matches_oracle(self, setting, r, c, data):
        p, m, j = setting
        F = build_tower(p, m, [1, j]).level(j)
        X = np.array(data.draw(st.lists(st.lists(st.integers(0, F.order - 1), min_size=c, max_size=c),
                                        min_size=r, max_size=r)), dtype=np.int64)
        expected = oracles.field_rank(F, X.tolist())
        assert rank_over(F, X) == expected
        assert rank_gauss(F, X) == expected


class TestDistance:
    def test_scalars(self):
        F = GF(3)
        code = RankMetricCode(F, [eye(3)])
        assert code.min_distance() == 3

    def test_rank_one_member(self):
        F = GF(2)
        N = np.array([[0, 1], [0, 0]], dtype=np.int64)
        code = RankMetricCode(F, [eye(2), N])
        assert code.min_distance() == 1
        assert not code.is_mrd()
        assert not code.is_semifield()

    def test_full_space_is_mrd(self):
        code = full_space(GF(2), 2)
        assert code.min_distance() == 1 and code.is_mrd()

    def test_dimension_short_is_not_semifield(self):
        F = build_tower(2, 1, [1, 2]).level(2)
        code = RankMetricCode(F, [eye(2)], q=2)
        assert not code.is_semifield()

    def test_worked_example(self):
        code = C.worked_example(nuclear=False).code
        assert code.min_distance() == 4
        assert code.is_mrd() and code.is_semifield()
        assert brute_min_distance(code) == 4

    @given(st.integers(0, 10 ** 6))
    def test_random_codes_against_brute_force(self, seed):
        rng = np.random.default_rng(seed)
        F = GF(int(rng.choice([2, 3])))
        r = int(rng.integers(2, 4))
        k = int(rng.integers(1, 4))
        basis = [rng.integers(0, F.p, (r, r)) for _ in range(k)]
        if oracles.fp_rank([B.ravel().tolist() for B in basis], F.p) < k:
            with pytest.raises(ValueError):
                RankMetricCode(F, basis)
            return
        code = RankMetricCode(F, basis)
        d = code.min_distance()
        assert d == brute_min_distance(code)
        res = code.scan()
        assert res.complete and res.scanned == F.p ** k - 1
        assert res.deficient == sum(1 for W in code.codewords() if W.any()
                                    and oracles.field_rank(F, W.tolist()) < r)

    def test_budget(self, monkeypatch):
        code = full_space(GF(2), 2)
        with pytest.raises(EnumerationBudgetExceeded):
            code.scan(budget=10)
        monkeypatch.setenv(codes.BUDGET_ENV, "5")
        assert codes.enumeration_budget() == 5
        with pytest.raises(EnumerationBudgetExceeded):
            code.min_distance()


class TestNuclei:
    def test_worked_example(self):
        report = C.worked_example()
        assert report.nuclear.as_tuple() == (4, 2, 2, 2, 1)
        nuc = report.nuclear
        assert all(s.is_field for s in (nuc.left, nuc.right, nuc.centralizer, nuc.center))

    def test_full_space_is_degenerate(self):
        code = full_space(GF(2), 2)
        nuc = code.nuclear_parameters()
        assert nuc.left.dim == 4 and nuc.left.degenerate and nuc.left.is_field is False

    def test_scalar_code_centralizer_is_everything(self):
        code = RankMetricCode(GF(3), [eye(2)])
        nuc = code.nuclear_parameters()
        assert nuc.centralizer.degenerate and nuc.centralizer.dim == 4

    @pytest.mark.parametrize("q,n", [(2, 2), (2, 3), (3, 2)])
    def test_field_case(self, q, n):
        # the image of F_(q^n) acting on phi[p] for phi_T = tau^n and a degree-one prime
        tw = C.family_tower(q, n)
        from drinfeld_semifields.drinfeld import DrinfeldModule
        from drinfeld_semifields.algebra.apoly import APoly
        from drinfeld_semifields.skew import SkewPoly
        phi = DrinfeldModule(tw, n, (0,) * n + (1,))
        TS = phi.torsion_space(APoly(tw.Fq, (1, 1)))
        mats = [TS.iota(SkewPoly.const(tw, n, c)) for c in C.fq_basis(tw, n)]
        code = RankMetricCode(TS.residue.field, mats, q=q)
        assert code.is_semifield()
        assert code.nuclear_parameters().as_tuple() == (n,) * 5

    @pytest.mark.parametrize("case", ["recipe22", "twoterm", "random2", "random3"])
    def test_against_brute_force(self, case):
        if case == "recipe22":
            code = C.recipe_tau_n(2, 2, (1, 1), nuclear=False).code
        elif case == "twoterm":
            code = RankMetricCode(GF(3), [eye(2), np.array([[0, 1], [1, 0]], dtype=np.int64)])
        elif case == "random2":
            code = RankMetricCode(GF(2), [eye(3), np.array([[0, 1, 0], [0, 0, 1], [1, 1, 0]], dtype=np.int64)])
        else:
            rng = np.random.default_rng(9)
            code = RankMetricCode(GF(2), [rng.integers(0, 2, (3, 3)) for _ in range(2)])
        nuc = code.nuclear_parameters()
        m = code.m
        brute = brute_stabilizer_dims(code)
        assert (nuc.left.dim * m, nuc.right.dim * m, nuc.centralizer.dim * m) == brute

    @given(st.integers(0, 10 ** 6))
    def test_invariant_under_conjugation(self, seed):
        rng = np.random.default_rng(seed)
        report = C.recipe_tau_n(2, 3, (1, 1, 1), nuclear=True)
        code = report.code
        F = code.F
        while True:
            P = rng.integers(0, F.order, (3, 3))
            if oracles.field_rank(F, P.tolist()) == 3:
                break
        Pinv = _inverse(F, P)
        other = conjugate(F, code, P, Pinv)
        assert other.nuclear_parameters().as_tuple() == report.nuclear.as_tuple()
        assert other.min_distance() == code.min_distance()

    def test_base_ambient(self):
        report = C.two_term(2, 3, 1, 1, (1, 1, 1))
        assert report.verdict == "semifield"
        assert report.nuclear.as_tuple() == (6, 3, 3, 2, 1)
        assert report.nuclear_base is not None and report.nuclear_base.dim_code == 6


class TestSerialisation:
    def test_roundtrip(self):
        code = C.worked_example(nuclear=False).code
        again = RankMetricCode.from_json(code.F, code.to_json(), q=code.q)
        assert np.array_equal(again.basis, code.basis)
        assert codes.invariants(again) == codes.invariants(code)

    def test_dependent_basis_rejected(self):
        with pytest.raises(ValueError):
            RankMetricCode(GF(2), [eye(2), eye(2)])


def _inverse(F, P):
    r = len(P)
    A = [[int(x) for x in row] + [1 if i == j else 0 for j in range(r)] for i, row in enumerate(P)]
    for c in range(r):
        piv = next(i for i in range(c, r) if A[i][c])
        A[c], A[piv] = A[piv], A[c]
        inv = F.inv(A[c][c])
        A[c] = [F.mul(inv, x) for x in A[c]]
        for i in range(r):
            if i != c and A[i][c]:
                f = A[i][c]
                A[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[i], A[c])]
    return np.array([row[r:] for row in A], dtype=np.int64)
