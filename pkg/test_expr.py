"""
Tests for the expression parser, printer and second-order jets.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from Data_Classes.errors import DomainError, ExprSyntaxError, IndexOutOfRangeError, UnknownSymbolError
from Expression_Engine import expr_ast as ex
from Expression_Engine.expr_ast import Binary, Constant, Power, Unary, Variable, to_text
from Expression_Engine.expr_parser import parse, tokenize
from Expression_Engine.jets import eval_components, eval_jet2

DIM = 3

# ------------------------------------------------------------------ strategies

_leaves = st.one_of(
    st.integers(min_value=0, max_value=DIM - 1).map(Variable),
    st.floats(min_value=-2.0, max_value=2.0, allow_nan=False).map(lambda v: Constant(round(v, 3))),
)


def _smooth_nodes(children):
    """Nodes whose values stay bounded on [-1, 1]^3, so finite differences stay accurate."""
    return st.one_of(
        st.builds(lambda c: Unary("sin", c), children),
        st.builds(lambda c: Unary("cos", c), children),
        st.builds(lambda c: Unary("exp", Unary("sin", c)), children),
        st.builds(lambda c: Power(Unary("cos", c), 2.0), children),
        st.builds(lambda l, r: Binary("add", l, r), children, children),
        st.builds(lambda l, r: Binary("sub", l, r), children, children),
        st.builds(lambda l, r: Binary("mul", l, r), children, children),
        st.builds(lambda l, r: Binary("div", l, Binary("add", Constant(3.0), Unary("sin", r))),
                  children, children),
    )


smooth_expressions = st.recursive(_leaves, _smooth_nodes, max_leaves=6)
points = st.lists(st.floats(min_value=-1.0, max_value=1.0, allow_nan=False), min_size=DIM, max_size=DIM)


def _printable_nodes(children):
    return st.one_of(
        st.builds(Unary, st.sampled_from(ex.UNARY_FUNCTIONS), children),
        children.filter(lambda c: not (isinstance(c, Constant) and c.name is None)).map(lambda c: Unary("neg", c)),
        st.builds(Binary, st.sampled_from(["add", "sub", "mul", "div"]), children, children),
        st.builds(Power, children, st.floats(min_value=-5.0, max_value=5.0, allow_nan=False)),
    )


printable_expressions = st.recursive(
    st.one_of(
        st.integers(min_value=0, max_value=DIM - 1).map(Variable),
        st.floats(min_value=-1e6, max_value=1e6, allow_nan=False).map(Constant),
        st.sampled_from([Constant(math.pi, "pi"), Constant(math.e, "e")]),
    ),
    _printable_nodes,
    max_leaves=8,
)


def _fd_gradient(ast, x, h=1e-6):
    grad = np.zeros(len(x))
    for i in range(len(x)):
        step = np.zeros(len(x))
        step[i] = h
        grad[i] = (eval_jet2(ast, x + step).value - eval_jet2(ast, x - step).value) / (2.0 * h)
    return grad


def _fd_hessian(ast, x, h=1e-6):
    hess = np.zeros((len(x), len(x)))
    for i in range(len(x)):
        step = np.zeros(len(x))
        step[i] = h
        hess[:, i] = (eval_jet2(ast, x + step).grad - eval_jet2(ast, x - step).grad) / (2.0 * h)
    return hess


# ------------------------------------------------------------------ properties

@settings(max_examples=50, derandomize=True, deadline=None)
@given(smooth_expressions, points)
def test_jet_derivatives_match_finite_differences(ast, point):
    """Gradient and Hessian of random expressions agree with central differences."""
    x = np.array(point)
    jet = eval_jet2(ast, x)
    grad_scale = 1.0 + abs(jet.value) + float(np.max(np.abs(jet.grad)))
    np.testing.assert_allclose(jet.grad, _fd_gradient(ast, x), rtol=1e-6, atol=1e-6 * grad_scale)
    hess_scale = grad_scale + float(np.max(np.abs(jet.hess)))
    np.testing.assert_allclose(jet.hess, _fd_hessian(ast, x), rtol=1e-6, atol=1e-6 * hess_scale)


@settings(max_examples=50, derandomize=True, deadline=None)
@given(smooth_expressions, points)
def test_hessian_is_exactly_symmetric(ast, point):
    jet = eval_jet2(ast, np.array(point))
    assert np.array_equal(jet.hess, jet.hess.T)


@settings(max_examples=100, derandomize=True, deadline=None)
@given(printable_expressions)
def test_print_parse_round_trip(ast):
    """Printing and re-parsing gives back the same tree."""
    assert parse(to_text(ast), DIM) == ast


# ------------------------------------------------------------------ parsing

def test_precedence_and_unary_minus():
    assert parse("-x0^2", 1) == Unary("neg", Power(Variable(0), 2.0))
    assert parse("x0 + x1 * x2", 3) == Binary("add", Variable(0), Binary("mul", Variable(1), Variable(2)))
    assert parse("x0 - x1 - x2", 3) == Binary("sub", Binary("sub", Variable(0), Variable(1)), Variable(2))
    assert parse("-2", 1) == Constant(-2.0)


def test_power_exponent_forms():
    assert parse("x0^-2", 1) == Power(Variable(0), -2.0)
    assert parse("x0^(0.5)", 1) == Power(Variable(0), 0.5)
    assert parse("x0^2^3", 1) == Power(Power(Variable(0), 2.0), 3.0)


def test_named_constants_and_functions():
    value = eval_jet2(parse("sin(pi/2) + log(e)", 1), [0.0]).value
    assert value == pytest.approx(2.0)


def test_tokenize_positions_skip_whitespace():
    tokens = tokenize("  x0 *  3")
    assert [(t.kind, t.text, t.position) for t in tokens] == [
        ("ident", "x0", 2), ("op", "*", 5), ("number", "3", 8), ("end", "", 9),
    ]


@pytest.mark.parametrize("text, position", [
    ("x0 + * x1", 5),
    ("(x0 + x1", 6),
    ("x0 $ x1", 3),
    ("sin x0", 4),
    ("x0^x1", 3),
    ("", 0),
])
def test_syntax_errors_carry_position(text, position):
    with pytest.raises(ExprSyntaxError) as info:
        parse(text, 2)
    assert info.value.position == position


def test_unknown_symbol():
    with pytest.raises(UnknownSymbolError) as info:
        parse("x0 + tan(x1)", 2)
    assert info.value.name == "tan"
    assert info.value.position == 5


def test_coordinate_out_of_range():
    with pytest.raises(IndexOutOfRangeError) as info:
        parse("x0 + x3", 3)
    assert (info.value.index, info.value.dim, info.value.position) == (3, 3, 5)


@pytest.mark.parametrize("text, point", [
    ("log(x0)", [0.0]),
    ("sqrt(x0)", [-1.0]),
    ("1/x0", [0.0]),
    ("x0^0.5", [-1.0]),
])
def test_domain_errors(text, point):
    with pytest.raises(DomainError):
        eval_jet2(parse(text, 1), point)


# ------------------------------------------------------------------ jets

def test_product_jet_is_exact():
    jet = eval_jet2(parse("x0^2 * sin(x1)", 2), [1.5, 0.3])
    np.testing.assert_allclose(jet.value, 2.25 * math.sin(0.3))
    np.testing.assert_allclose(jet.grad, [3.0 * math.sin(0.3), 2.25 * math.cos(0.3)])
    np.testing.assert_allclose(jet.hess, [[2.0 * math.sin(0.3), 3.0 * math.cos(0.3)],
                                          [3.0 * math.cos(0.3), -2.25 * math.sin(0.3)]])


def test_eval_components_shapes():
    rows = ((parse("x0", 2), parse("x1^2", 2)), (parse("1", 2), ex.ZERO))
    values, grads, hessians = eval_components(rows, [2.0, 3.0])
    assert values.shape == (2, 2)
    assert grads.shape == (2, 2, 2)
    assert hessians.shape == (2, 2, 2, 2)
    assert values[0, 1] == 9.0
    np.testing.assert_allclose(grads[0, 1], [0.0, 6.0])
    assert hessians[0, 1, 1, 1] == 2.0


def test_construction_helpers_drop_zeros_and_ones():
    x = Variable(0)
    assert ex.add(ex.ZERO, x) == x
    assert ex.mul(ex.ONE, x) == x
    assert ex.mul(x, ex.ZERO) == ex.ZERO
    assert ex.sub(ex.ZERO, x) == Unary("neg", x)
    assert ex.scale(-1.0, x) == Unary("neg", x)
    assert ex.total([]) == ex.ZERO
    assert ex.max_variable_index(parse("x0 + x2", 3)) == 2
    assert ex.max_variable_index(parse("pi", 1)) == -1
