"""Sparse polynomial ring, text grammar, and truncated exponentials."""

import math

import pytest
from hypothesis import given, settings, strategies as st

from hesnil import GaussianRational, Poly, exp_truncated, format_poly, gr, parse

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
scalars = st.builds(GaussianRational, rationals, rationals)


@st.composite
def poly_of_arity(draw, arity, max_exp=2, max_terms=5):
    n_terms = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n_terms):
        mono = tuple(draw(st.integers(0, max_exp)) for _ in range(arity))
        coeff = draw(scalars)
        terms[mono] = terms.get(mono, GaussianRational(0)) + coeff
    return Poly(arity, terms)


@st.composite
def poly_triples(draw, max_arity=4):
    arity = draw(st.integers(1, max_arity))
    return tuple(draw(poly_of_arity(arity)) for _ in range(3))


def test_constructors_and_measures():
    z1 = Poly.variable(0, 2)
    z2 = Poly.variable(1, 2)
    p = z1 * z1 * z2
    assert p.degree() == 3
    assert p.order() == 3
    assert p.is_homogeneous() == 3
    q = p + Poly.one(2)
    assert q.order() == 0
    assert q.is_homogeneous() is None
    zero = Poly.zero(2)
    assert zero.is_zero()
    assert zero.degree() == -1
    assert zero.order() == math.inf


def test_isotropic_square_sum_collapses():
    z1 = Poly.variable(0, 2)
    z2 = Poly.variable(1, 2)
    i = Poly.constant(2, gr(0, 1))
    lhs = (z1 + i * z2) ** 2 + (z1 - i * z2) ** 2
    assert lhs == z1 ** 2 * 2 - z2 ** 2 * 2
    assert lhs == parse("2*z1^2 - 2*z2^2")


def test_evaluate_at_point():
    p = parse("(z1+i*z2)^3")
    assert p.evaluate([1, 0]) == gr(1)
    assert p.evaluate([0, 1]) == gr(0, -1)
    with pytest.raises(ValueError):
        p.evaluate([1])


def test_truncate_and_graded_piece():
    p = parse("z1^4 + z1^2*z2 + 3*z2 + 1")
    assert p.truncate(2) == parse("3*z2 + 1", arity=2)
    assert p.graded_piece(3) == parse("z1^2*z2")
    assert p.graded_piece(5).is_zero()


def test_substitute_linear_doubles_variables():
    p = parse("z1^2")
    q = p.substitute_linear([[1, gr(0, 1)]])
    assert q == parse("u1^2 + 2*i*u1*v1 - v1^2")


def test_substitute_linear_with_shift():
    p = parse("z1^2")
    q = p.substitute_linear([[1]], shift=[2])
    assert q == parse("z1^2 + 4*z1 + 4")


def test_substitute_linear_validates_shapes():
    p = parse("z1*z2")
    with pytest.raises(ValueError):
        p.substitute_linear([[1, 0]])
    with pytest.raises(ValueError):
        p.substitute_linear([[1, 0], [0]])
    with pytest.raises(ValueError):
        p.substitute_linear([[1, 0], [0, 1]], shift=[1])


def test_parse_grammar_example():
    p = parse("3/2*z1^2*z2 - i*z3")
    assert p.arity == 3
    assert p.terms[(2, 1, 0)] == gr("3/2")
    assert p.terms[(0, 0, 1)] == gr(0, -1)


def test_parse_uv_style_maps_to_doubled_arity():
    p = parse("u1*v2")
    assert p.arity == 4
    assert p.terms[(1, 0, 0, 1)] == gr(1)
    q = parse("u1^2", arity=6)
    assert q.arity == 6


def test_parse_rejects_bad_input():
    with pytest.raises(ValueError):
        parse("z1 + u1")
    with pytest.raises(ValueError):
        parse("z0")
    with pytest.raises(ValueError):
        parse("z1 $ z2")
    with pytest.raises(ValueError):
        parse("z3", arity=2)
    with pytest.raises(ValueError):
        parse("u2", arity=3)
    with pytest.raises(ValueError):
        parse("z1 + ")


def test_parse_handles_unicode_minus_and_whitespace():
    assert parse("z1 − z2") == parse("z1 - z2")
    assert parse("  3 * z1 ") == parse("3*z1")


def test_format_ordering_and_signs():
    p = parse("z2^2 - z1^3 + i*z1*z2 + 1/2")
    assert format_poly(p) == "-z1^3 + i*z1*z2 + z2^2 + 1/2"
    assert format_poly(Poly.zero(2)) == "0"
    mixed = parse("(1+2*i)*z1")
    assert format_poly(mixed) == "(1+2*i)*z1"


def test_format_uv_style():
    p = parse("u2^2*v1")
    assert format_poly(p, style="uv") == "u2^2*v1"


def test_exp_truncated_matches_series():
    p = parse("z1^2")
    assert exp_truncated(p, 2, 4) == parse("2*z1^4 + 2*z1^2 + 1")
    assert exp_truncated(Poly.zero(1), 5, 3) == Poly.one(1)
    with pytest.raises(ValueError):
        exp_truncated(Poly.one(1), 1, 3)


@given(poly_triples())
@settings(max_examples=60)
def test_ring_axioms(triple):
    a, b, c = triple
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * Poly.one(a.arity) == a
    assert (a - a).is_zero()


@given(poly_triples())
@settings(max_examples=60)
def test_parse_format_roundtrip(triple):
    p = triple[0]
    text = format_poly(p)
    assert parse(text, arity=p.arity) == p


@given(poly_of_arity(2, max_exp=2, max_terms=3))
@settings(max_examples=30)
def test_exp_of_opposite_scales_cancel(p):
    q = p.graded_piece(1) + p.graded_piece(2)
    if q.is_zero():
        return
    n = 6
    prod = exp_truncated(q, 1, n) * exp_truncated(q, -1, n)
    assert prod.truncate(n) == Poly.one(2)


@given(poly_of_arity(3))
@settings(max_examples=40)
def test_power_matches_repeated_product(p):
    assert p ** 3 == p * p * p
    assert p ** 0 == Poly.one(3)


def test_evaluate_is_ring_morphism():
    a = parse("z1^2 + i*z2")
    b = parse("z2^3 - 2*z1")
    point = [gr(2, 1), gr("1/2")]
    assert (a * b).evaluate(point) == a.evaluate(point) * b.evaluate(point)
    assert (a + b).evaluate(point) == a.evaluate(point) + b.evaluate(point)
