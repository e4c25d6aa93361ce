from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shuffleop.order import MonomialOrder
from shuffleop.poly import Polynomial, poly_add, poly_normalize, poly_scale
from shuffleop.trees import enumerate_monomials, parse_tree

ORDER = MonomialOrder(["x", "z"])
M3 = enumerate_monomials(["x", "z"], 3)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
polys3 = st.dictionaries(st.sampled_from(M3), rationals, max_size=8).map(
    lambda d: Polynomial(d, ORDER, arity=3))


def test_cancellation_gives_zero():
    p = Polynomial.parse("2 x(z(1 3) 2) - z(1 x(2 3))", ORDER)
    z = p + p.scale(-1)
    assert z.is_zero() and z.terms == [] and z.render() == "0"


def test_normalize_merges():
    m = parse_tree("x(1 x(2 3))")
    p = poly_normalize([(2, m), (3, m)], ORDER)
    assert p.terms == [(m, Fraction(5))]


def test_rule_ten_right_side():
    p = Polynomial.parse(
        "z(1 x(2 x(3 4))) + 3 x(1 x(z(2 4) 3)) - 2 x(1 z(2 x(3 4))) - 2 x(1 x(2 z(3 4)))", ORDER)
    assert len(p) == 4
    assert sorted(c for _, c in p.terms) == [-2, -2, 1, 3]
    assert p.arity == 4


def test_terms_descending():
    p = Polynomial({m: 1 for m in M3}, ORDER)
    keys = [ORDER.key(m) for m, _ in p.terms]
    assert keys == sorted(keys, reverse=True)
    assert p.lead() == p.terms[0][0]


def test_arity_mismatch():
    a = Polynomial.parse("x(1 2)", ORDER)
    b = Polynomial.parse("x(1 x(2 3))", ORDER)
    with pytest.raises(ValueError):
        a + b
    with pytest.raises(ValueError):
        Polynomial([(parse_tree("x(1 2)"), 1), (parse_tree("x(1 x(2 3))"), 1)], ORDER)


def test_coefficients_exact():
    p = Polynomial.parse("1/3 x(1 2)", ORDER)
    q = p.scale(3)
    assert q.coeff(parse_tree("x(1 2)")) == 1
    assert isinstance(q.coeff(parse_tree("x(1 2)")), Fraction)
    assert p.render() == "1/3 x(1 2)"


def test_parse_render_roundtrip():
    text = "2 x(z(1 3) 2) - z(1 x(2 3)) - 2 x(1 z(2 3))"
    assert Polynomial.parse(text, ORDER).render() == text


@given(polys3, polys3)
@settings(max_examples=200)
def test_add_then_subtract(p, q):
    assert (p + q) - q == p
    assert poly_add(p, q) == poly_add(q, p)


@given(polys3, rationals)
@settings(max_examples=100)
def test_scale_distributes(p, c):
    assert poly_scale(p + p, c) == poly_scale(p, 2 * c)
    for _, v in p.terms:
        assert v != 0


def test_monic():
    p = Polynomial.parse("3 z(x(1 2) 3) - 6 x(z(1 3) 2)", ORDER)
    assert p.monic().lead_coeff() == 1
