import pytest

from prarray.criteria import (
    classify_construction,
    conjecture_search,
    det_test,
    setpoly_test,
    sufficient_conditions,
    trace_independence_test,
    vee,
    window_positions,
)
from prarray.folding import CodeParams, fold_zero_factor
from prarray.gf2poly import (
    BinaryPolynomial,
    count_irreducible_with_exponent,
    exponent,
    is_irreducible,
    parse,
)
from prarray.lfsr import zero_factor
from prarray.verify import window_census


def P(text):
    return parse(text)


class TestVee:
    @pytest.mark.parametrize(
        "f1,f2,g",
        [
            ("x^4+x+1", "x^3+x+1", "x^12+x^9+x^5+x^4+x^3+x+1"),
            ("x^4+x+1", "x^3+x^2+1", "x^12+x^8+x^6+x^5+x^3+x^2+1"),
            ("x^4+x^3+1", "x^3+x+1", "x^12+x^10+x^9+x^7+x^6+x^4+1"),
            ("x^4+x^3+1", "x^3+x^2+1", "x^12+x^11+x^9+x^8+x^7+x^3+1"),
            ("x^4+x^3+x^2+x+1", "x^6+x^3+1", "x^24+x^21+x^15+x^12+x^9+x^3+1"),
            ("x^4+x^3+x^2+x+1", "x^3+x^2+1", "x^12+x^11+x^10+x^8+x^5+x^4+x^3+x^2+1"),
            (
                "x^4+x^3+x^2+x+1",
                "x^9+x+1",
                "x^36+x^28+x^27+x^20+x^18+x^12+x^10+x^9+x^4+x^3+x^2+x+1",
            ),
        ],
    )
    def test_golden_products(self, f1, f2, g):
        assert vee(P(f1), P(f2)) == P(g)

    def test_reducible_inputs(self):
        got = vee(P("x^6+x^5+x^4+x^3+x^2+x+1"), P("x^2+x+1"))
        assert got == P("x^6+x^4+x^2+x+1") * P("x^6+x^5+x^4+x^2+1")

    def test_identity_root(self):
        f = P("x^4+x+1")
        assert vee(f, P("x+1")) == f

    def test_degree_and_exponent(self):
        for f1t, f2t in [("x^3+x+1", "x^4+x+1"), ("x^2+x+1", "x^3+x^2+1")]:
            f1, f2 = P(f1t), P(f2t)
            g = vee(f1, f2)
            assert g.degree == f1.degree * f2.degree
            assert exponent(g) == exponent(f1) * exponent(f2)

    def test_noncoprime_exponents_rejected(self):
        with pytest.raises(ValueError):
            vee(P("x^3+x+1"), P("x^3+x^2+1"))

    def test_nonuniform_rejected(self):
        with pytest.raises(ValueError):
            vee(P("x^2+x+1") * P("x^3+x+1"), P("x^4+x+1"))


class TestWindowPositions:
    def test_13x35_by_4x3(self):
        pos = window_positions(CodeParams(13, 35, 4, 3))
        assert sorted(pos.positions) == [0, 1, 2, 105, 106, 107, 210, 211, 247, 315, 351, 352]

    def test_13x35_by_3x4(self):
        pos = window_positions(CodeParams(13, 35, 3, 4))
        assert sorted(pos.positions) == [0, 1, 2, 105, 106, 143, 210, 247, 248, 351, 352, 353]

    def test_3x5_matrix_order(self):
        pos = window_positions(CodeParams(3, 5, 2, 2))
        assert list(pos.positions) == [0, 6, 10, 1]

    def test_single_cell(self):
        assert window_positions(CodeParams(7, 9, 1, 1)).positions == (0,)

    def test_prints_as_sorted_list(self):
        pos = window_positions(CodeParams(3, 5, 2, 2))
        assert str(pos) == "{0, 1, 6, 10}"


class TestSetPolynomial:
    def test_study_grid(self, sect5_polys):
        p43 = window_positions(CodeParams(13, 35, 4, 3))
        p34 = window_positions(CodeParams(13, 35, 3, 4))
        grid = {
            name: (setpoly_test(f, p43).passed, setpoly_test(f, p34).passed)
            for name, f in sect5_polys.items()
        }
        assert grid == {
            "f1": (False, False),
            "f2": (False, True),
            "f3": (True, False),
            "f4": (True, True),
        }

    def test_failure_witness_is_a_divisible_factor(self, sect5_polys):
        p43 = window_positions(CodeParams(13, 35, 4, 3))
        rep = setpoly_test(sect5_polys["f1"], p43)
        bits = 0
        for p in rep.detail["dependent_positions"]:
            bits |= 1 << p
        assert (BinaryPolynomial(bits) % sect5_polys["f1"]).is_zero

    def test_exhaustive_mode_agrees(self, sect5_polys):
        p43 = window_positions(CodeParams(13, 35, 4, 3))
        assert not setpoly_test(sect5_polys["f1"], p43, exhaustive=True).passed
        assert setpoly_test(sect5_polys["f4"], p43, exhaustive=True).passed

    def test_reducible_rejected(self):
        pos = window_positions(CodeParams(3, 7, 2, 3))
        with pytest.raises(ValueError):
            setpoly_test(P("x^3+x+1") * P("x^3+x^2+1"), pos)

    def test_position_count_mismatch(self):
        pos = window_positions(CodeParams(13, 35, 3, 4))
        with pytest.raises(ValueError):
            setpoly_test(P("x^4+x+1"), pos)


class TestDeterminant:
    def test_single_factor_pass(self):
        assert det_test([P("x^12+x^10+x^9+x+1")], CodeParams(7, 13, 3, 4)).passed

    def test_two_factor_pass(self, deg6_exp21):
        assert det_test(list(deg6_exp21), CodeParams(3, 7, 2, 6)).passed

    def test_two_primitive_fail(self):
        rep = det_test([P("x^6+x^5+1"), P("x^6+x+1")], CodeParams(7, 9, 3, 4))
        assert not rep.passed and rep.witness is not None

    def test_failure_agrees_with_census(self):
        # the determinant verdict is exact in both directions: the same
        # product polynomial must also fail the brute-force census
        f1, f2 = P("x^6+x^5+1"), P("x^6+x+1")
        arrays = fold_zero_factor(zero_factor(f1 * f2), 7, 9)
        assert not window_census(arrays, 3, 4).passed

    def test_wrong_exponent_rejected(self):
        with pytest.raises(ValueError):
            det_test([P("x^6+x^5+1")], CodeParams(3, 7, 2, 3))

    def test_degree_one_rejected(self):
        with pytest.raises(ValueError):
            det_test([P("x+1")], CodeParams(1, 1, 1, 1))

    def test_duplicate_factors_rejected(self):
        f = P("x^6+x^5+x^4+x^2+1")
        with pytest.raises(ValueError):
            det_test([f, f], CodeParams(3, 7, 2, 6))

    def test_area_mismatch_rejected(self):
        with pytest.raises(ValueError):
            det_test([P("x^12+x^10+x^9+x+1")], CodeParams(7, 13, 3, 3))


class TestTraceIndependence:
    def test_pass(self):
        assert trace_independence_test(P("x^12+x^10+x^9+x+1"), CodeParams(7, 13, 3, 4)).passed

    def test_study_outcomes(self, sect5_polys):
        assert not trace_independence_test(sect5_polys["f1"], CodeParams(13, 35, 4, 3)).passed
        assert trace_independence_test(sect5_polys["f4"], CodeParams(13, 35, 3, 4)).passed

    def test_agrees_with_det(self, sect5_polys):
        for f in sect5_polys.values():
            for params in (CodeParams(13, 35, 4, 3), CodeParams(13, 35, 3, 4)):
                assert (
                    trace_independence_test(f, params).passed
                    == det_test([f], params).passed
                )


class TestSufficientConditions:
    def test_pra_case(self):
        rep = sufficient_conditions(CodeParams(3, 5, 2, 2))
        assert rep.passed and rep.detail["case"] == "PRA"

    def test_prac_case(self):
        rep = sufficient_conditions(CodeParams(7, 13, 3, 4))
        assert rep.passed and rep.detail["case"] == "PRAC"
        assert rep.detail["residues_mod_r1"] == [1, 2, 4]

    def test_5_17_4_2(self):
        rep = sufficient_conditions(CodeParams(5, 17, 4, 2))
        assert rep.passed and rep.detail["residues_mod_r1"] == [1, 2, 3, 4]

    def test_fail_is_one_directional(self, sect5_polys):
        # 13 does not divide 2^4 - 1, yet f4 folds to a PRAC anyway
        rep = sufficient_conditions(CodeParams(13, 35, 4, 3))
        assert not rep.passed
        assert setpoly_test(
            sect5_polys["f4"], window_positions(CodeParams(13, 35, 4, 3))
        ).passed

    def test_pass_implies_census_pass(self):
        # sampled sufficiency cases must verify by brute force as well
        for poly, r1, r2, n1, n2 in [
            ("x^4+x+1", 3, 5, 2, 2),
            ("x^12+x^10+x^9+x+1", 7, 13, 3, 4),
            ("x^6+x^5+x^4+x^2+1", 3, 7, 2, 3),
        ]:
            params = CodeParams(r1, r2, n1, n2)
            assert sufficient_conditions(params).passed
            arrays = fold_zero_factor(zero_factor(P(poly)), r1, r2)
            assert window_census(arrays, n1, n2, params).passed


class TestClassification:
    def test_reducible_reducible(self):
        rec = classify_construction(
            P("x^6+x^5+x^4+x^3+x^2+x+1"), P("x^8+x^7+x^5+x^4+x^3+x+1")
        )
        assert rec.types == ("reducible", "reducible", "reducible")

    def test_inp_inp_inp(self):
        rec = classify_construction(P("x^4+x^3+x^2+x+1"), P("x^9+x+1"))
        assert rec.types == ("INP", "INP", "INP")

    def test_primitive_primitive(self):
        rec = classify_construction(P("x^4+x+1"), P("x^3+x+1"))
        assert rec.types == ("primitive", "primitive", "INP")
        assert rec.params == CodeParams(15, 7, 4, 3)

    def test_inp_inp_reducible(self):
        rec = classify_construction(P("x^4+x^3+x^2+x+1"), P("x^6+x^3+1"))
        assert rec.types == ("INP", "INP", "reducible")

    def test_inp_primitive_both_orders(self):
        rec = classify_construction(P("x^3+x^2+1"), P("x^4+x^3+x^2+x+1"))
        assert rec.types == ("primitive", "INP", "INP")

    def test_degree_one_rejected(self):
        with pytest.raises(ValueError):
            classify_construction(P("x^4+x+1"), P("x+1"))

    def test_record_serialization(self):
        rec = classify_construction(P("x^4+x+1"), P("x^3+x+1"))
        kv = rec.to_kv()
        assert kv["g"] == "x^12+x^9+x^5+x^4+x^3+x+1"
        assert kv["g.type"] == "INP" and kv["params.r1"] == "15"


class TestHierarchies:
    def test_larger_window_code_contains_smaller(self):
        # arrays folded from f1 v h1 appear, up to shift, among the
        # arrays folded from f1 v (h1*h2)
        f1 = P("x^2+x+1")
        h1, h2 = P("x^3+x+1"), P("x^3+x^2+1")
        small = vee(f1, h1)
        large = vee(f1, h1 * h2)
        small_arrays = fold_zero_factor(zero_factor(small), 3, 7)
        large_arrays = fold_zero_factor(zero_factor(large), 3, 7)
        assert len(small_arrays) == 3 and len(large_arrays) == 195
        large_canon = {a.canonical_packed() for a in large_arrays}
        for a in small_arrays:
            assert a.canonical_packed() in large_canon
        # and both codes verify at their own window sizes
        assert window_census(small_arrays, 2, 3).passed
        assert window_census(large_arrays, 2, 6).passed

    def test_product_count_of_primitive_pairs(self):
        # coprime-order primitive pairs: the number of irreducibles with
        # exponent (2^n1-1)(2^n2-1) is the product of the primitive counts
        for n1, n2 in [(2, 3), (2, 5), (3, 4)]:
            k1 = count_irreducible_with_exponent((1 << n1) - 1)
            k2 = count_irreducible_with_exponent((1 << n2) - 1)
            e = ((1 << n1) - 1) * ((1 << n2) - 1)
            assert count_irreducible_with_exponent(e) == k1 * k2


class TestConjectureSearch:
    def test_in_range_products_pass(self):
        res = conjecture_search(2, 3, 3, 7, 2)
        assert res.in_range and not res.counterexamples
        k2 = [e for e in res.entries if e.k == 2]
        assert len(k2) == 1
        assert k2[0].verdict.passed and k2[0].census_agrees

    def test_out_of_range_failure_is_flagged_not_counted(self):
        res = conjecture_search(3, 2, 7, 9, 2)
        assert not res.in_range and not res.counterexamples
        fails = [e for e in res.entries if e.k == 2 and not e.verdict.passed]
        assert any(
            set(e.factors) == {P("x^6+x^5+1"), P("x^6+x+1")} for e in fails
        )

    def test_kmax_one_is_degenerate(self):
        res = conjecture_search(2, 3, 3, 7, 1)
        assert all(e.k == 1 for e in res.entries)
        assert len(res.entries) == 2


class TestThreeWayAgreement:
    @staticmethod
    def _check_poly(f):
        import math

        from prarray.gf2poly import _divisors

        degree = f.degree
        e = exponent(f)
        zf = None
        for r1 in _divisors(e):
            r2 = e // r1
            if math.gcd(r1, r2) != 1:
                continue
            for n1 in _divisors(degree):
                params = CodeParams(r1, r2, n1, degree // n1)
                if params.violation() is not None:
                    continue
                sp = setpoly_test(f, window_positions(params)).passed
                tr = trace_independence_test(f, params).passed
                if zf is None:
                    zf = zero_factor(f)
                ce = window_census(
                    fold_zero_factor(zf, r1, r2), params.n1, params.n2, params
                ).passed
                assert sp == tr == ce, (f, params)

    @pytest.mark.parametrize("degree", [6, 8, 9])
    def test_small_degrees(self, degree):
        for bits in range(1 << degree | 1, 1 << (degree + 1), 2):
            f = BinaryPolynomial(bits)
            if is_irreducible(f):
                self._check_poly(f)

    @pytest.mark.parametrize("degree", [15, 16])
    def test_sampled_larger_degrees(self, degree):
        import random

        rng = random.Random(degree)
        found = 0
        while found < 8:
            bits = rng.randrange(1 << degree | 1, 1 << (degree + 1)) | 1
            f = BinaryPolynomial(bits)
            if is_irreducible(f):
                self._check_poly(f)
                found += 1
