#!/usr/bin/env python3
"""Tests for the expression grammar and the serialized element format"""

from fractions import Fraction

import pytest

from errors import AlphabetError, ExpressionParseError
from expression_parser import (
    element_from_records,
    element_to_records,
    format_element,
    parse_element,
    parse_expression,
)
from lie_algebra import LieElement, LinearCombination, TruncationContext, bracket
from random_elements import RandomLieSampler

CTX = TruncationContext(6)


def gen(name):
    return LieElement.generator(name, CTX)


def test_parse_raw_shapes():
    assert parse_expression("a") == "a"
    assert parse_expression("[a,[b,e]]") == ("a", ("b", "e"))
    raw = parse_expression("-a + 2*b")
    assert isinstance(raw, LinearCombination)
    assert raw.terms == ((Fraction(-1), "a"), (Fraction(2), "b"))


def test_normal_forms():
    assert format_element(parse_element("[b,a]", CTX)) == "[a,b]"
    assert format_element(parse_element("[e,e]", CTX)) == "0"
    assert parse_element("0", CTX).is_zero()
    jacobi = parse_element("1/2*[a,[b,e]] + 1/2*[b,[a,e]]", CTX)
    assert jacobi == bracket(bracket(gen("a"), gen("b")), gen("e")).scale(Fraction(1, 2))
    assert parse_element("[(a + b),(a + b)]", CTX) == parse_element("[a,a] + 2*[a,b] + [b,b]", CTX)


def test_signed_rational_coefficients():
    a, b = gen("a"), gen("b")
    assert parse_element("a + -1/2*b", CTX) == a - b.scale(Fraction(1, 2))
    assert parse_element("a - -1*b", CTX) == a + b
    assert parse_element("-3*[a,b]", CTX) == bracket(a, b).scale(-3)
    assert parse_element("[a,-2*b]", CTX) == bracket(a, b).scale(-2)


@pytest.mark.parametrize("text", ["3*-b", "[a,b", "a + *b", "[a;b]"])
def test_parse_error_messages_name_grammar_elements(text):
    with pytest.raises(ExpressionParseError) as info:
        parse_expression(text)
    message = str(info.value)
    assert "Expected" in message
    assert "Forward" not in message
    assert len(message) < 120


def test_printer():
    x = bracket(gen("a"), gen("a")).scale(Fraction(-1, 2)) + bracket(gen("a"), gen("b"))
    assert format_element(x) == "-1/2*[a,a] + [a,b]"
    assert format_element(gen("b") - gen("a")) == "-a + b"


def test_round_trip_random_elements():
    sampler = RandomLieSampler(CTX, seed=47)
    for _ in range(100):
        x = sampler.element(6, terms=4)
        assert parse_element(format_element(x), CTX) == x


def test_records():
    x = bracket(gen("a"), gen("a")).scale(Fraction(-1, 2))
    assert element_to_records(x) == [{"coeff": "-1/2", "tree": ["a", "a"], "length": 2, "degree": -2}]
    assert element_to_records(LieElement.zero(CTX)) == []
    y = parse_element("3/2*[a,[b,e]] - e", CTX)
    assert element_from_records(element_to_records(y), CTX) == y


@pytest.mark.parametrize("text", ["[a,b", "a +", "2*", "[a;b]", "1/0*a", "", "[a,b]]"])
def test_parse_errors_report_position(text):
    with pytest.raises(ExpressionParseError) as info:
        parse_expression(text)
    assert 0 <= info.value.position <= len(text)
    assert f"position {info.value.position}" in str(info.value)


def test_unknown_generator():
    with pytest.raises(AlphabetError):
        parse_element("[a,z]", CTX)


def test_malformed_records():
    with pytest.raises(ExpressionParseError):
        element_from_records([{"coeff": "1"}], CTX)
    with pytest.raises(ExpressionParseError):
        element_from_records([{"coeff": "1", "tree": ["a", "b", "e"]}], CTX)
