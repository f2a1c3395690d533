import math

import pytest
from hypothesis import given, strategies as st

from cpint.errors import EvalError, ExprSyntaxError, UnknownFunction
from cpint.expr import compile_expr, evaluate, parse, unparse


class TestEvaluation:
    @pytest.mark.parametrize("src,x,expected", [
        ("x^2*cos(x^-2)", 1.0, math.cos(1.0)),
        ("x^2*cos(x^-2)", 0.0, 0.0),       # zero absorbs the blow-up
        ("atan(x)", 1.0, math.atan(1.0)),
        ("2+3*4", 0.0, 14.0),
        ("2^3^2", 0.0, 512.0),             # right associative
        ("-x^2", 2.0, -4.0),               # unary minus binds looser than ^
        ("(2+3)*4", 0.0, 20.0),
        ("1/2*x", 4.0, 2.0),               # left associative
        ("2-3-4", 0.0, -5.0),
        ("sinc(x)", 0.0, 1.0),
        ("2*pi", 0.0, 2.0 * math.pi),
        ("exp(-x^2)", 1.0, math.exp(-1.0)),
        ("1e-3+x", 1.0, 1.001),
    ])
    def test_oracles(self, src, x, expected):
        assert compile_expr(src)(x) == pytest.approx(expected, abs=1e-15)

    def test_piecewise_branches(self):
        fn = compile_expr("piecewise(0, 1, 0, x, 0)")
        assert fn(-1.0) == 0.0
        assert fn(0.5) == 0.5
        assert fn(2.0) == 0.0

    def test_eval_error_wraps_math_faults(self):
        with pytest.raises(EvalError):
            compile_expr("log(x)")(-1.0)
        with pytest.raises(EvalError):
            compile_expr("1/x")(0.0)


class TestSyntaxErrors:
    def test_position_reported(self):
        with pytest.raises(ExprSyntaxError) as exc:
            parse("x +")
        assert exc.value.position == 3

    @pytest.mark.parametrize("bad", [
        "", "sin(x", "x y", "..", "@", "piecewise(1, 0, x, 0, 3)",
        "piecewise(0, x)",
    ])
    def test_rejected(self, bad):
        with pytest.raises(ExprSyntaxError):
            parse(bad)

    def test_unknown_function(self):
        with pytest.raises(UnknownFunction):
            parse("foo(x)")


_leaf = st.one_of(
    st.just("x"),
    st.floats(min_value=0.0, max_value=100.0, allow_nan=False,
              allow_infinity=False).map(lambda v: repr(v)))


def _exprs(depth):
    if depth == 0:
        return _leaf
    sub = _exprs(depth - 1)
    return st.one_of(
        _leaf,
        st.tuples(sub, st.sampled_from("+-*/"), sub).map(
            lambda t: f"({t[0]} {t[1]} {t[2]})"),
        sub.map(lambda s: f"-({s})"),
        st.tuples(st.sampled_from(["sin", "cos", "atan", "abs"]), sub).map(
            lambda t: f"{t[0]}({t[1]})"),
    )


class TestRoundTrip:
    @given(_exprs(3), st.floats(min_value=-5.0, max_value=5.0,
                                allow_nan=False))
    def test_parse_unparse_parse(self, src, x):
        tree = parse(src)
        reparsed = parse(unparse(tree))
        try:
            a = evaluate(tree, x)
        except EvalError:
            return
        b = evaluate(reparsed, x)
        if math.isnan(a):
            assert math.isnan(b)
        else:
            assert a == b

    @pytest.mark.parametrize("src", [
        "2^3^2", "(2^3)^2", "1-(2-3)", "x/(2*x)", "-(x+1)",
        "piecewise(0, 1, 0, x, 0)",
    ])
    def test_precedence_preserved(self, src):
        tree = parse(src)
        assert unparse(parse(unparse(tree))) == unparse(tree)
        for x in (-1.7, 0.4, 2.3):
            assert evaluate(parse(unparse(tree)), x) == evaluate(tree, x)
