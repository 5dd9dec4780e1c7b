import random

import pytest

from prarray.gf2field import FieldContext, bezout, crt_solve
from prarray.gf2poly import BinaryPolynomial, is_irreducible, parse


GF4 = FieldContext(parse("x^2+x+1"))

# the fixed degree-12 modulus used by the worked root-power example
M12 = parse("x^12+x^7+x^6+x^5+x^3+x+1")


def first_irreducible(degree):
    for bits in range(1 << degree | 1, 1 << (degree + 1), 2):
        f = BinaryPolynomial(bits)
        if is_irreducible(f):
            return f
    raise AssertionError


class TestContext:
    def test_reducible_modulus_rejected(self):
        with pytest.raises(ValueError):
            FieldContext(parse("x^2+1"))

    def test_reduction(self):
        assert GF4.element(parse("x^2")) == GF4.element(parse("x+1"))
        assert GF4.element(parse("0")) == GF4.zero
        assert GF4.element(GF4.modulus) == GF4.zero

    def test_context_mismatch(self):
        other = FieldContext(parse("x^3+x+1"))
        with pytest.raises(ValueError):
            GF4.alpha * other.alpha  # noqa: B018


class TestArithmetic:
    def test_mul(self):
        assert GF4.alpha * GF4.alpha == GF4.element(parse("x+1"))

    def test_char2(self):
        a = GF4.element(parse("x+1"))
        assert a + a == GF4.zero

    def test_one(self):
        a = GF4.element(parse("x+1"))
        assert a * GF4.one == a

    def test_pow_exponent(self):
        ctx = FieldContext(parse("x^4+x^3+x^2+x+1"))
        assert ctx.alpha**5 == ctx.one

    def test_pow_zero(self):
        a = GF4.element(parse("x+1"))
        assert a**0 == GF4.one

    def test_negative_pow_inverse(self):
        ctx = FieldContext(parse("x^4+x+1"))
        assert ctx.alpha**-1 * ctx.alpha == ctx.one
        assert ctx.zero**3 == ctx.zero
        with pytest.raises(ZeroDivisionError):
            ctx.zero**-1  # noqa: B018

    def test_inverse_everywhere(self):
        ctx = FieldContext(first_irreducible(6))
        for bits in range(1, 1 << 6):
            a = ctx.element(bits)
            assert a * a.inverse() == ctx.one


class TestOrder:
    def test_primitive_alpha(self):
        assert FieldContext(parse("x^4+x+1")).alpha.order() == 15

    def test_one(self):
        assert GF4.one.order() == 1

    def test_degree12_exponent(self):
        assert FieldContext(parse("x^12+x^10+x^9+x+1")).alpha.order() == 91

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            GF4.zero.order()

    def test_order_divides_group_order(self):
        for n in range(2, 9):
            ctx = FieldContext(first_irreducible(n))
            group = (1 << n) - 1
            for bits in range(1, 1 << n):
                assert group % ctx.element(bits).order() == 0


class TestTrace:
    def test_zero(self):
        assert GF4.zero.trace() == 0

    def test_gf4_alpha(self):
        assert GF4.alpha.trace() == 1

    def test_one_in_each_degree(self):
        for n in range(2, 9):
            ctx = FieldContext(first_irreducible(n))
            assert ctx.one.trace() == n % 2

    def test_linear_and_nontrivial(self):
        for n in range(2, 9):
            ctx = FieldContext(first_irreducible(n))
            elems = [ctx.element(b) for b in range(1 << n)]
            assert any(a.trace() == 1 for a in elems)
            rng = random.Random(n)
            for _ in range(200):
                a, b = rng.choice(elems), rng.choice(elems)
                assert (a + b).trace() == a.trace() ^ b.trace()


class TestMinimalPolynomial:
    def test_root_powers_in_fixed_degree12_field(self):
        ctx = FieldContext(M12)
        assert (ctx.alpha**273).minimal_polynomial() == parse("x^4+x+1")
        assert (ctx.alpha**585).minimal_polynomial() == parse("x^3+x+1")

    def test_one(self):
        assert GF4.one.minimal_polynomial() == parse("x+1")

    def test_class_of_x_recovers_modulus(self):
        for bits in range(1 << 2 | 1, 1 << 9, 2):
            f = BinaryPolynomial(bits)
            if not is_irreducible(f):
                continue
            assert FieldContext(f).alpha.minimal_polynomial() == f


class TestSerialization:
    def test_element_tagged_with_modulus(self):
        a = GF4.element(parse("x+1"))
        assert str(a) == "11@111"

    def test_report_key_values(self):
        # witness coordinates and bits travel through the kv document
        from prarray.folding import TorusArray
        from prarray.verify import window_census

        rep = window_census([TorusArray([0, 0, 0], 5)], 2, 2)
        kv = rep.to_kv()
        assert kv["verdict"] == "fail"
        assert kv["witness.position"] == "0,0"
        assert kv["witness.window"] == "0000"


class TestIntegers:
    def test_bezout_small(self):
        g, x, y = bezout(3, 5)
        assert g == 1 and 3 * x + 5 * y == 1

    def test_bezout_primes(self):
        g, x, y = bezout(7, 13)
        assert g == 1 and 7 * x + 13 * y == 1

    def test_bezout_equal(self):
        g, x, y = bezout(9, 9)
        assert g == 9 and 9 * x + 9 * y == 9

    def test_bezout_random(self):
        rng = random.Random(3)
        for _ in range(300):
            a, b = rng.randrange(1, 10**6), rng.randrange(1, 10**6)
            g, x, y = bezout(a, b)
            assert a % g == 0 and b % g == 0 and a * x + b * y == g

    def test_bezout_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            bezout(0, 5)

    @pytest.mark.parametrize("i,j,r1,r2,k", [(1, 2, 3, 5, 7), (0, 0, 3, 5, 0), (2, 4, 3, 5, 14)])
    def test_crt_examples(self, i, j, r1, r2, k):
        assert crt_solve(i, j, r1, r2) == k

    @pytest.mark.parametrize("r1,r2", [(3, 5), (7, 13), (13, 35), (1, 17), (99, 1010)])
    def test_crt_bijection(self, r1, r2):
        seen = set()
        for i in range(r1):
            for j in range(r2):
                k = crt_solve(i, j, r1, r2)
                assert 0 <= k < r1 * r2
                assert k % r1 == i and k % r2 == j
                seen.add(k)
        assert len(seen) == r1 * r2

    def test_crt_noncoprime(self):
        with pytest.raises(ValueError):
            crt_solve(1, 1, 6, 9)
