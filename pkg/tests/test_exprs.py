"""Expression language: parsing, printing, brackets, shape audits."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fifdim.domains import Box
from fifdim.exprs import (
    Add,
    Const,
    ExprError,
    ExprSyntaxError,
    Mul,
    Pow,
    ShapeFacts,
    Sin,
    Var,
    affine_expr,
    audit_shape,
    eval_expr,
    holder_seminorm_estimate,
    inf_abs,
    multilinear_expr,
    normalize_facts,
    parse_expr,
    sup_norm,
)

UNIT = Box((0.0,), (1.0,))
SQUARE = Box((0.0, 0.0), (1.0, 1.0))


def test_parse_basic_arithmetic():
    e = parse_expr("1/2 - x1^2/6")
    assert eval_expr(e, np.array([0.0])) == pytest.approx(0.5)
    assert eval_expr(e, np.array([1.0])) == pytest.approx(0.5 - 1 / 6)


def test_parse_sin_quarter():
    # [DERIVED] sin(1)/4 = 0.21036774620197414 (mpmath-style oracle: math.sin)
    e = parse_expr("sin(x1)/4")
    assert eval_expr(e, np.array([1.0])) == pytest.approx(
        0.21036774620197414, abs=1e-15
    )


def test_parse_power_is_abs_power():
    e = parse_expr("x1^0.8")
    assert eval_expr(e, np.array([-0.5])) == pytest.approx(0.5**0.8)


def test_parse_precedence_and_unary_minus():
    e = parse_expr("-x1 + 2*x1^2")
    assert eval_expr(e, np.array([3.0])) == pytest.approx(-3 + 18)


def test_division_by_expression_rejected():
    with pytest.raises(ExprSyntaxError):
        parse_expr("1/x1")


def test_division_by_zero_rejected():
    with pytest.raises(ExprSyntaxError):
        parse_expr("x1/0")


def test_nonpositive_exponent_rejected():
    with pytest.raises(ExprSyntaxError):
        parse_expr("x1^-1")
    with pytest.raises(ExprSyntaxError):
        parse_expr("x1^0")


def test_syntax_error_offset():
    with pytest.raises(ExprSyntaxError) as ei:
        parse_expr("x1 + @")
    assert ei.value.offset == 5


def test_unknown_name_rejected():
    with pytest.raises(ExprSyntaxError):
        parse_expr("tan(x1)")


def test_str_round_trip_simple():
    for text in ["x1", "sin(x1)", "1/2 - x1^2/6", "x1*x2 + x2", "-(x1 + x2)"]:
        e = parse_expr(text)
        again = parse_expr(str(e))
        pts = np.random.default_rng(0).uniform(0, 1, size=(64, 2))
        assert np.allclose(e.ev(pts), again.ev(pts), atol=1e-14)


@st.composite
def exprs(draw, depth=0):
    if depth > 3:
        choice = draw(st.integers(0, 1))
    else:
        choice = draw(st.integers(0, 5))
    if choice == 0:
        return Const(draw(st.floats(-4, 4, allow_nan=False, width=32)))
    if choice == 1:
        return Var(draw(st.integers(1, 2)))
    if choice == 2:
        return Add(draw(exprs(depth=depth + 1)), draw(exprs(depth=depth + 1)))
    if choice == 3:
        return Mul(draw(exprs(depth=depth + 1)), draw(exprs(depth=depth + 1)))
    if choice == 4:
        return Sin(draw(exprs(depth=depth + 1)))
    return Pow(draw(exprs(depth=depth + 1)), draw(st.sampled_from([0.5, 1.0, 2.0])))


@settings(max_examples=60, deadline=None)
@given(exprs())
def test_print_parse_round_trip_property(e):
    text = str(e)
    again = parse_expr(text)
    pts = np.random.default_rng(1).uniform(-1, 1, size=(16, 2))
    va, vb = e.ev(pts), again.ev(pts)
    assert np.allclose(va, vb, rtol=1e-12, atol=1e-12, equal_nan=True)


def test_sup_norm_constant_exact():
    lo, hi = sup_norm(parse_expr("3/4"), UNIT, 8)
    assert lo == hi == pytest.approx(0.75)


def test_sup_norm_bracket_contains_true_sup():
    facts = ShapeFacts(holder_exponent=1.0, holder_constant=0.25)
    lo, hi = sup_norm(parse_expr("sin(x1)/4"), UNIT, 10, facts)
    true = math.sin(1.0) / 4
    assert lo <= true <= hi
    assert hi - lo < 1e-3


def test_inf_abs_bracket():
    facts = ShapeFacts(holder_exponent=1.0, holder_constant=0.25)
    lo, hi = inf_abs(parse_expr("sin(x1)/4"), UNIT, 10, facts)
    assert lo == 0.0  # sin(0)/4 = 0 attained at the boundary
    assert hi <= 1e-6


def test_sup_norm_requires_holder_facts_for_nonconstant():
    with pytest.raises(ExprError):
        sup_norm(parse_expr("x1"), UNIT, 8, None)


def test_audit_accepts_true_facts():
    e = parse_expr("x1^0.8/2")
    facts = ShapeFacts(concave_in={1}, holder_exponent=0.8, holder_constant=0.5)
    assert audit_shape(e, facts, UNIT) == []


def test_audit_rejects_false_concavity():
    e = parse_expr("x1^2")  # convex, not concave
    facts = ShapeFacts(concave_in={1})
    bad = audit_shape(e, facts, UNIT)
    assert bad and bad[0].fact == "concave"


def test_audit_rejects_false_constancy():
    facts = ShapeFacts(is_constant=True, constant_value=0.0)
    assert audit_shape(parse_expr("x1"), facts, UNIT)


def test_audit_affine_in_one_axis_of_square():
    e = parse_expr("x1*x2")  # affine in each axis separately
    facts = ShapeFacts(affine_in={1, 2})
    assert audit_shape(e, facts, SQUARE) == []


def test_normalize_facts_detects_constant():
    f = normalize_facts(parse_expr("1/4 + 1/4"), None, 2)
    assert f.is_constant and f.constant_value == pytest.approx(0.5)
    assert f.affine_in == frozenset({1, 2})


def test_shape_facts_affine_implies_concave_convex():
    f = ShapeFacts(affine_in={1})
    assert 1 in f.concave_in and 1 in f.convex_in


def test_holder_exponent_validation():
    with pytest.raises(ExprError):
        ShapeFacts(holder_exponent=1.5)


def test_holder_seminorm_estimate_identity():
    est = holder_seminorm_estimate(parse_expr("x1"), 1.0, UNIT)
    assert est == pytest.approx(1.0, abs=1e-6)


def test_holder_seminorm_estimate_power():
    # [DERIVED] |x^0.8 - y^0.8| / |x-y|^0.8 has sup 1 on [0,1] (at y=0)
    est = holder_seminorm_estimate(parse_expr("x1^0.8"), 0.8, UNIT)
    assert 0.97 <= est <= 1.0 + 1e-9


def test_multilinear_expr_matches_coeffs():
    e = multilinear_expr(
        {frozenset(): 1.0, frozenset({1}): 2.0, frozenset({1, 2}): -3.0}
    )
    x = np.array([[0.5, 0.25]])
    assert e.ev(x)[0] == pytest.approx(1 + 2 * 0.5 - 3 * 0.5 * 0.25)


def test_affine_expr():
    e = affine_expr(1.0, {1: -2.0})
    assert eval_expr(e, np.array([0.25])) == pytest.approx(0.5)
