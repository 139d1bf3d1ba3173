from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from jetlisse.arith import (DEFAULT_ORDER, ORDER_TAGS, Monomial, MonomialOrder, ParseError,
                            Polynomial, VarId, compare_monomials, parse, poly_add, poly_mul,
                            serialize)
from strategies import monomials, polynomials, weight_homogeneous

x1 = Polynomial.var(1)
x2 = Polynomial.var(2)


def mono(*pairs):
    return Monomial([(VarId(g, l), e) for g, l, e in pairs])


class TestExamples:
    def test_add(self):
        assert poly_add(x1 + x2, -x1) == x2
        p = x1 * x2 + 3
        assert poly_add(p, Polynomial()) == p
        assert poly_add(x1 ** 2, x1 ** 2) == (x1 ** 2).scale(2)

    def test_mul(self):
        assert poly_mul(x1, x2) == Polynomial.monomial(mono((1, 1, 1), (2, 1, 1)))
        assert poly_mul(x1 + 1, x1 - 1) == x1 ** 2 - 1

    def test_weight_additive(self):
        p = Polynomial.var(1, 2) * Polynomial.var(2, 1)
        q = Polynomial.var(1, 3)
        assert (p * q).weights() == {6}

    def test_lex(self):
        lex = MonomialOrder("lex")
        assert compare_monomials(mono((1, 1, 1)), mono((2, 1, 1)), lex) == 1

    def test_degrevlex_antisymmetric(self):
        order = MonomialOrder("degrevlex")
        a, b = mono((1, 1, 1), (2, 1, 1)), mono((1, 1, 2))
        assert compare_monomials(a, b, order) == -compare_monomials(b, a, order) != 0
        assert compare_monomials(b, a, order) == 1

    def test_equal(self):
        a = mono((1, 2, 3))
        for tag in ORDER_TAGS:
            assert compare_monomials(a, a, MonomialOrder(tag)) == 0

    def test_variable_ranking(self):
        # lower level is larger, then lower generator index
        key = DEFAULT_ORDER.rank
        assert key(VarId(1, 1)) > key(VarId(2, 1)) > key(VarId(1, 2))

    def test_weighted_prefers_weight(self):
        # x1_3 has weight 3 and degree 1; x1_1^2 has weight 2
        assert compare_monomials(mono((1, 3, 1)), mono((1, 1, 2))) == 1
        assert compare_monomials(mono((1, 3, 1)), mono((1, 1, 2)), MonomialOrder("degrevlex")) == -1

    def test_explicit_ranking(self):
        order = MonomialOrder("lex", (VarId(2, 1), VarId(1, 1)))
        assert compare_monomials(mono((2, 1, 1)), mono((1, 1, 5)), order) == 1


class TestParse:
    def test_basic(self):
        p = parse("x1_1^2 + 2*x1_1*x1_2 - 1/2")
        assert p == x1 ** 2 + (x1 * Polynomial.var(1, 2)).scale(2) - Fraction(1, 2)

    def test_whitespace_and_parens(self):
        assert parse(" ( x1_1 + x2_1 ) * ( x1_1 - x2_1 ) ") == x1 ** 2 - x2 ** 2

    def test_rational_coefficients(self):
        assert parse("3/4*x1_1") == x1.scale(Fraction(3, 4))
        assert parse("x1_1/2") == x1.scale(Fraction(1, 2))

    def test_names(self):
        names = {"e": VarId(1, 1), "h": VarId(2, 1)}
        assert parse("h^2/2 + e", names) == (x2 ** 2).scale(Fraction(1, 2)) + x1

    def test_unary_minus(self):
        assert parse("-x1_1^2") == -(x1 ** 2)
        assert parse("--x1_1") == x1

    def test_serialize(self):
        p = parse("x1_1*x1_2*2 - x1_1^2 + 1/2")
        assert serialize(p) == "2*x1_1*x1_2 - x1_1^2 + 1/2"
        assert serialize(Polynomial()) == "0"

    @pytest.mark.parametrize("text,col", [
        ("x1_1 +", 7), ("x1_1 ** 2", 7), ("x0_1", 1), ("(x1_1", 6), ("x1_1^-1", 6),
        ("2/0", 3), ("y", 1), ("", 1), ("x1_1 x2_1", 6), ("x1_1 $", 6),
    ])
    def test_errors_are_positioned(self, text, col):
        with pytest.raises(ParseError) as info:
            parse(text)
        assert info.value.pos + 1 == col
        assert "column" in str(info.value)


def dense_key(m, order, universe):
    """Independent order oracle on dense exponent vectors (variables largest first)."""
    exps = [m.exponent(v) for v in universe]
    deg = sum(exps)
    weight = sum(e * v.level for e, v in zip(exps, universe))
    if order.tag == "lex":
        return tuple(exps)
    revlex = tuple(-e for e in reversed(exps))
    if order.tag == "degrevlex":
        return (deg, revlex)
    return (weight, deg, revlex)


UNIVERSE = sorted((VarId(g, l) for g in range(1, 4) for l in range(1, 4)),
                  key=DEFAULT_ORDER.rank, reverse=True)


class TestProperties:
    @given(polynomials(), polynomials(), polynomials())
    def test_ring_axioms(self, p, q, r):
        assert p + q == q + p
        assert p * q == q * p
        assert (p + q) + r == p + (q + r)
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r
        assert p - p == Polynomial()
        assert p * 1 == p

    @given(polynomials())
    def test_canonical_round_trip(self, p):
        s = serialize(p)
        assert parse(s) == p
        assert serialize(parse(s)) == s

    @given(weight_homogeneous(), weight_homogeneous())
    def test_weight_grading(self, p, q):
        assert (p * q).weights() == {p.max_weight() + q.max_weight()}

    @given(st.sampled_from(ORDER_TAGS), monomials(), monomials(), monomials())
    def test_order_axioms(self, tag, a, b, c):
        order = MonomialOrder(tag)
        ab, ba = compare_monomials(a, b, order), compare_monomials(b, a, order)
        assert ab == -ba
        assert (ab == 0) == (a == b)
        # transitivity
        if ab >= 0 and compare_monomials(b, c, order) >= 0:
            assert compare_monomials(a, c, order) >= 0
        # multiplicative, and 1 is the minimum
        assert compare_monomials(a * c, b * c, order) == ab
        assert compare_monomials(a, Monomial(), order) >= 0

    @given(st.sampled_from(ORDER_TAGS), monomials(), monomials())
    def test_order_matches_dense_oracle(self, tag, a, b):
        order = MonomialOrder(tag)
        ka, kb = dense_key(a, order, UNIVERSE), dense_key(b, order, UNIVERSE)
        assert compare_monomials(a, b, order) == (ka > kb) - (ka < kb)

    @given(polynomials(), st.sampled_from(UNIVERSE))
    def test_diff_is_derivation(self, p, v):
        q = Polynomial.var(v.gen, v.level) * p + p
        assert q.diff(v) == p + Polynomial.var(v.gen, v.level) * p.diff(v) + p.diff(v)
