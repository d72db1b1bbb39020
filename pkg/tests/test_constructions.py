from __future__ import annotations

import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from drinfeld_semifields import constructions as C
from drinfeld_semifields.algebra import linalg
from drinfeld_semifields.algebra.apoly import APoly
from drinfeld_semifields.constructions import HypothesisFailure
from drinfeld_semifields.skew import SkewPoly


def fp_span_rank(code_a, code_b) -> tuple[int, int, int]:
    fa = code_a._flat(code_a.fq_span())
    fb = code_b._flat(code_b.fq_span())
    p = code_a.p
    return linalg.rank(fa, p), linalg.rank(fb, p), linalg.rank(np.vstack([fa, fb]), p)


class TestRecipe:
    def test_binary_example(self):
        report = C.recipe_tau_n(2, 2, (1, 1))
        assert report.verdict == "semifield"
        assert report.code.dim == 2 and report.code.rows == 2
        assert report.guaranteed and report.consistent

    def test_ternary_example(self):
        report = C.recipe_tau_n(3, 2, (1, 0, 1), nuclear=False)
        assert report.verdict == "semifield" and report.space.dim == 4
        assert report.code.scan().scanned == 80

    def test_prime_T_rejected(self):
        with pytest.raises(ValueError):
            C.recipe_tau_n(2, 3, (0, 1))

    def test_non_prime_rejected(self):
        with pytest.raises(ValueError):
            C.recipe_tau_n(3, 2, (2, 0, 1))


class TestSheekey:
    def test_eta_zero_is_the_recipe(self):
        s = C.sheekey(2, 3, 2, 0, (1, 1, 1), nuclear=False)
        r = C.recipe_tau_n(2, 3, (1, 1, 1), nuclear=False)
        assert s.verdict == r.verdict == "semifield"
        ra, rb, both = fp_span_rank(s.code, r.code)
        assert ra == rb == both

    def test_nonzero_eta_binary(self):
        # every nonzero eta in F_8 has norm 1, so the condition fails for p = T^2 + T + 1
        tw = C.family_tower(2, 3)
        for eta in range(1, 8):
            report = C.sheekey(2, 3, 2, eta, (1, 1, 1), nuclear=False)
            assert not report.check("sheekey_condition").passed
            assert report.verdict == "fails-at"
            assert report.witness is not None and report.consistent
            assert tw.norm(eta, 3, 1) == 1

    def test_strict_refuses(self):
        with pytest.raises(HypothesisFailure) as info:
            C.sheekey(2, 3, 2, 1, (1, 1, 1), strict=True)
        assert list(info.value.failed) == ["sheekey_condition"]
        assert info.value.report.verdict == "refused"

    def test_degree_mismatch(self):
        with pytest.raises(ValueError):
            C.sheekey(2, 3, 2, 0, (1, 1))

    @settings(max_examples=15)
    @given(st.sampled_from([(3, 2, 1), (3, 3, 1), (2, 3, 1), (3, 2, 2), (4, 2, 1)]), st.data())
    def test_condition_implies_semifield(self, params, data):
        q, n, s = params
        tw = C.family_tower(q, n)
        primes = [P for P in oracles.brute_primes(tw.Fq, s) if P != (0, 1)]
        P = data.draw(st.sampled_from(primes))
        eta = data.draw(st.integers(0, tw.level(n).order - 1))
        report = C.sheekey(q, n, s, eta, P, nuclear=False)
        assert report.consistent
        if report.check("sheekey_condition").passed:
            assert report.verdict == "semifield"


class TestTwoTerm:
    def test_closed_form_at_a_equals_one(self):
        tw = C.family_tower(2, 3)
        assert C.two_term_det_closed_form(tw, 3, 1, 1, 1, 0).coeffs == (1,)

    def test_binary_example(self):
        report = C.two_term(2, 3, 1, 1, (1, 1, 1))
        assert report.verdict == "semifield"
        assert report.code.dim == 6 and report.code.rows == 3 and report.code.F.order == 4
        assert report.code.scan().scanned == 63
        assert report.check("det_closed_form").passed
        assert report.guaranteed

    def test_ternary_search(self):
        q, r, s = 3, 3, 2
        tw = C.family_tower(q, 6)
        t = 3  # the class of x in F_9
        chi = C.norm_T_minus(tw, s, t)
        from drinfeld_semifields.algebra.apoly import ResidueField
        found = []
        for P in oracles.brute_primes(tw.Fq, 2):
            if P == chi.coeffs:
                continue
            if ResidueField(APoly(tw.Fq, P)).reduce(chi) >= q:
                found.append(P)
        assert found
        report = C.two_term(q, r, s, t, found[0], nuclear=False)
        assert report.guaranteed and report.verdict == "semifield"

    def test_substitutes_non_generator(self):
        report = C.two_term(3, 3, 2, 1, (1, 0, 1), nuclear=False)
        assert report.params["t"] != 1
        assert any("substituted" in n for n in report.notes)

    def test_r_equal_2s_is_flagged(self):
        report = C.two_term(2, 2, 1, 1, (1, 1, 1), nuclear=False)
        assert not report.check("r_ne_2s").passed
        assert not report.guaranteed

    @pytest.mark.parametrize("q,r,s", [(2, 3, 1), (3, 3, 2), (2, 5, 2)])
    def test_det_check(self, q, r, s):
        import math
        tw = C.family_tower(q, math.lcm(r, s))
        assert C.two_term_det_check(tw, r, s, q ** (s - 1) if s > 1 else 1, samples=15) == []


class TestGeneral:
    def test_worked_example(self):
        report = C.worked_example()
        assert report.verdict == "semifield"
        assert report.guaranteed and report.consistent
        assert report.nuclear.as_tuple() == report.expected_nuclear == (4, 2, 2, 2, 1)
        assert report.check("d_u_bound").passed
        assert report.check("maximal_frobenius_degree").passed

    def test_e_too_large(self):
        tw = C.family_tower(3, 6)
        coeffs = C.worked_example_coeffs(tw)
        with pytest.raises(HypothesisFailure) as info:
            C.general_ls(3, 2, 3, coeffs, (2, 1), e=2, strict=True)
        names = list(info.value.failed)
        assert "inequality_eg_lt_d_deg_m" in names and "e_plus_1_eq_rd" in names
        loose = C.general_ls(3, 2, 3, coeffs, (2, 1), e=2, nuclear=False)
        assert not loose.check("inequality_eg_lt_d_deg_m").passed
        assert loose.verdict != "semifield"

    def test_prime_conditions_worked_example(self):
        phi = C.worked_example(nuclear=False).phi
        cond = C.check_prime_conditions(phi, APoly(phi.Fq, (2, 1)))
        assert (cond.irreducible, cond.generates, cond.inequality) == (True, True, True)
        assert cond.reduced == (2, 2, 1)
        with pytest.raises(ValueError):
            C.check_prime_conditions(phi, phi.a_characteristic())

    def test_reducible_reduction_exists(self):
        phi = C.worked_example(nuclear=False).phi
        bad = [P for P in oracles.brute_primes(phi.Fq, 1)
               if P != phi.a_characteristic().coeffs
               and not C.check_prime_conditions(phi, APoly(phi.Fq, P)).irreducible]
        # T is the only other linear prime; m_phi mod T = x^2 + 2 = (x - 1)(x + 1)
        assert bad == [(0, 1)]

    def test_prime_search_examples(self):
        phi = C.worked_example(nuclear=False).phi
        assert [P.coeffs for P in C.prime_search(phi, 1)] == [(1, 1), (2, 1)]
        assert [P.coeffs for P in C.prime_search(phi, 2)] == [(2, 2, 1)]
        assert C.prime_search(phi, 2, budget=1) == []

    def test_prime_search_recipe(self):
        from drinfeld_semifields.drinfeld import DrinfeldModule
        tw = C.family_tower(2, 3)
        phi = DrinfeldModule(tw, 3, (0, 0, 0, 1))
        passers = [P.coeffs for P in C.prime_search(phi, 3)]
        assert sorted(passers) == sorted(oracles.brute_primes(tw.Fq, 3))
        assert [P.coeffs for P in C.prime_search(phi, 1)] == [(1, 1)]

    def test_degree_two_prime(self):
        tw = C.family_tower(3, 6)
        report = C.general_ls(3, 2, 3, C.worked_example_coeffs(tw), (2, 2, 1))
        assert report.verdict == "semifield"
        assert report.nuclear.as_tuple() == report.expected_nuclear == (8, 2, 2, 4, 1)

    def test_leading_coefficient_required(self):
        tw = C.family_tower(3, 6)
        with pytest.raises(ValueError):
            C.general_phi(tw, 2, 3, [1, 0])


class TestReports:
    def test_json_is_deterministic(self):
        a = json.dumps(C.worked_example().to_json(), sort_keys=True)
        b = json.dumps(C.worked_example().to_json(), sort_keys=True)
        assert a == b
        data = json.loads(a)
        assert data["schema_version"] == C.SCHEMA_VERSION
        assert data["verdict"] == "semifield"
        assert "timing" not in data

    def test_text(self):
        text = C.worked_example().to_text()
        assert "semifield" in text and "(4, 2, 2, 2, 1)" in text

    def test_export_code(self):
        report = C.recipe_tau_n(2, 2, (1, 1))
        out = C.export_code(report)
        assert out["kind"] == "rank_metric_code"
        assert out["invariants"]["is_semifield"] is True
        assert out["field"]["prime"] == [1, 1]

    def test_message_space(self):
        report = C.recipe_tau_n(2, 3, (1, 1, 1), nuclear=False)
        space = report.space
        assert space.dim == 6 and space.size == 64 and space.contains_one
        tw = report.phi.tower
        assert space.contains(SkewPoly(tw, 3, (5, 3)))
        assert not space.contains(SkewPoly(tw, 3, (0, 0, 1)))
        elems = list(space.nonzero_elements())
        assert len(elems) == 63 and len(set(elems)) == 63
        assert space.combination([1, 0, 0, 0, 0, 0]) == space.basis[0]

    def test_message_space_must_commute(self):
        tw = C.family_tower(3, 6)
        phi = C.general_phi(tw, 2, 3, C.worked_example_coeffs(tw))
        with pytest.raises(Exception):
            C.MessageSpace(phi, [SkewPoly(tw, 6, (0, 1))], "bad", {}).validate()

    def test_divisors_and_tower(self):
        assert C.divisors(12) == [1, 2, 3, 4, 6, 12]
        assert C.family_tower(3, 6).degrees == [1, 2, 3, 6]
