import warnings

import pytest

from voacheck import wick
from voacheck.parser import ParseError, parse_expr, render_field


def test_macros():
    assert parse_expr(":d^1 b c:") == wick.T_FIELD
    assert parse_expr("1/2 :d^2 b c: - 1/2 :d^1 b d^1 c:") == wick.WT_FIELD
    assert parse_expr("Wt") == wick.WT_FIELD
    assert parse_expr("d^1 T") == wick.derive(wick.T_FIELD)


def test_errors():
    with pytest.raises(ParseError):
        parse_expr("::")
    with pytest.raises(ParseError):
        parse_expr("W")
    with pytest.raises(ParseError):
        parse_expr(":b c")
    with pytest.raises(ParseError):
        parse_expr("foo")


def test_zero_product_warns():
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        assert not parse_expr(":b b:")
    assert any("identically zero" in str(x.message) for x in w)


@pytest.mark.parametrize(
    "text",
    ["T", "Wt", "i j", "1", ":j j: + 1/2*i d^1 j", "2 :d^2 b c: - 2*i :d^1 b c j:", "-1/2 gamma + 3+4*i beta"],
)
def test_render_roundtrip(text):
    f = parse_expr(text)
    assert parse_expr(render_field(f)) == f
