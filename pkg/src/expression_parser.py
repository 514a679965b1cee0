"""
Expression Parser - Grammar, printer and serialized format for Lie elements

Grammar:
    expr     := ['+'|'-'] term (('+'|'-') term)*  |  '0'
    term     := [rational '*'] factor
    factor   := generator | '[' expr ',' expr ']' | '(' expr ')'
    rational := digits ['/' digits]
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List

import pyparsing as pp

from errors import ExpressionParseError
from lie_algebra import (
    LieElement,
    LieMonomial,
    LinearCombination,
    RawExpression,
    TruncationContext,
    normalize,
)


@dataclass(frozen=True)
class _BracketNode:
    left: Any
    right: Any


@dataclass(frozen=True)
class _Term:
    coeff: Fraction
    factor: Any


def _term_action(tokens):
    if len(tokens) == 2:
        return _Term(tokens[0], tokens[1])
    return _Term(Fraction(1), tokens[0])


def _expr_action(tokens):
    terms = []
    sign = 1
    for token in tokens:
        if token == "-":
            sign = -1
        elif token == "+":
            sign = 1
        else:
            terms.append((sign * token.coeff, token.factor))
            sign = 1
    return LinearCombination(tuple(terms))


def _rational_action(text, loc, tokens):
    try:
        return Fraction(tokens[0])
    except ZeroDivisionError:
        raise pp.ParseFatalException(text, loc, "zero denominator") from None


@lru_cache(maxsize=1)
def _grammar() -> pp.ParserElement:
    lbrack, rbrack, comma, lpar, rpar, star = map(pp.Suppress, "[],()*")
    expr = pp.Forward().set_name("sum")
    generator = pp.Word(pp.alphas + "_", pp.alphanums + "_").set_name("generator")
    rational = pp.Regex(r"-?\d+(?:/\d+)?").set_name("rational").set_parse_action(_rational_action)
    bracket_factor = (lbrack + expr + comma + expr + rbrack).set_name("bracket").set_parse_action(
        lambda t: _BracketNode(t[0], t[1])
    )
    factor = (bracket_factor | (lpar + expr + rpar) | generator).set_name("factor")
    term = (pp.Optional(rational + star) + factor).set_name("term").set_parse_action(_term_action)
    sign = pp.one_of("+ -").set_name("sign")
    expr <<= (pp.Optional(sign) + term + pp.ZeroOrMore(sign + term)).set_parse_action(_expr_action)
    zero = pp.Literal("0").set_parse_action(lambda t: LinearCombination(()))
    return (expr | zero).set_name("expression") + pp.StringEnd().set_name("end of input")


def _to_raw(node) -> RawExpression:
    if isinstance(node, str):
        return node
    if isinstance(node, _BracketNode):
        return (_to_raw(node.left), _to_raw(node.right))
    if isinstance(node, LinearCombination):
        terms = tuple((coeff, _to_raw(factor)) for coeff, factor in node.terms)
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return LinearCombination(terms)
    raise ExpressionParseError(f"unexpected parse node {node!r}")


def parse_expression(text: str) -> RawExpression:
    """
    Parse expression text into an unnormalized bracket expression.

    Args:
        text: e.g. "1/2*[a,[b,e]] - [b,a]"

    Returns:
        Generator name, nested 2-tuple, or LinearCombination

    Raises:
        ExpressionParseError: with the failing position
    """
    try:
        result = _grammar().parse_string(text, parse_all=True)
    except pp.ParseBaseException as e:
        raise ExpressionParseError(f"cannot parse {text!r}: {e.msg}", e.loc) from None
    return _to_raw(result[0])


def parse_element(text: str, context: TruncationContext) -> LieElement:
    return normalize(parse_expression(text), context)


def format_element(x: LieElement) -> str:
    """Human form, re-parseable by parse_element"""
    return x.to_expression()


def coefficient_text(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def tree_to_json(tree):
    if isinstance(tree, str):
        return tree
    return [tree_to_json(tree[0]), tree_to_json(tree[1])]


def _tree_from_json(tree) -> RawExpression:
    if isinstance(tree, str):
        return tree
    if isinstance(tree, list) and len(tree) == 2:
        return (_tree_from_json(tree[0]), _tree_from_json(tree[1]))
    raise ExpressionParseError(f"malformed tree record {tree!r}")


def monomial_record(monomial: LieMonomial, context: TruncationContext) -> Dict[str, Any]:
    return {
        "tree": tree_to_json(monomial.tree(context.alphabet)),
        "length": monomial.length,
        "degree": monomial.degree,
    }


def element_to_records(x: LieElement) -> List[Dict[str, Any]]:
    """Serialized form: records sorted by (length, degree, word)"""
    records = []
    for monomial, coeff in x.items():
        record = {"coeff": coefficient_text(coeff)}
        record.update(monomial_record(monomial, x.context))
        records.append(record)
    return records


def element_from_records(records: List[Dict[str, Any]], context: TruncationContext) -> LieElement:
    try:
        raw = LinearCombination(
            tuple((Fraction(r["coeff"]), _tree_from_json(r["tree"])) for r in records)
        )
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise ExpressionParseError(f"malformed element record: {e}") from None
    return normalize(raw, context)


def dumps(payload: Any) -> str:
    """Byte-stable JSON rendering"""
    return json.dumps(payload, indent=2, ensure_ascii=False)
