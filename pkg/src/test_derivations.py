#!/usr/bin/env python3
"""Tests for derivations and the interval differential"""

from fractions import Fraction

import pytest

from bernoulli import bernoulli_upto
from derivations import (
    Derivation,
    apply,
    check_square_zero,
    curvature,
    is_flat,
    ls_differential,
    partial_x,
)
from errors import DefinitionError, DomainError
from lie_algebra import LieElement, TruncationContext, bracket, normalize
from random_elements import RandomLieSampler

CTX = TruncationContext(6)
PARTIAL = ls_differential(CTX)


def gen(name, context=CTX):
    return LieElement.generator(name, context)


def perturbed(context, value=Fraction(1, 10)):
    return ls_differential(context, bernoulli_upto(context.max_length).perturbed({2: value}))


def test_values_on_generators():
    a, b = gen("a"), gen("b")
    assert apply(PARTIAL, a) == bracket(a, a).scale(Fraction(-1, 2))
    assert apply(PARTIAL, b).to_expression() == "-1/2*[b,b]"
    assert apply(PARTIAL, LieElement.zero(CTX)).is_zero()


def test_leibniz_example():
    a, b = gen("a"), gen("b")
    expected = (
        normalize((("a", "a"), "b"), CTX).scale(Fraction(-1, 2))
        + normalize(("a", ("b", "b")), CTX).scale(Fraction(1, 2))
    )
    assert apply(PARTIAL, bracket(a, b)) == expected


def test_edge_value_components():
    value = apply(PARTIAL, gen("e"))
    assert value.component(1) == gen("b") - gen("a")
    assert value.component(2) == (
        normalize(("e", "a"), CTX) + normalize(("e", "b"), CTX)
    ).scale(Fraction(1, 2))
    assert value.component(3) == (
        normalize(("e", ("e", "b")), CTX) - normalize(("e", ("e", "a")), CTX)
    ).scale(Fraction(1, 12))
    # B_3 = 0
    assert value.component(4).is_zero()


def test_curvature_and_flatness():
    a, b = gen("a"), gen("b")
    assert curvature(PARTIAL, a).is_zero()
    assert curvature(PARTIAL, LieElement.zero(CTX)).is_zero()
    assert curvature(PARTIAL, a + b) == bracket(a, b)
    assert is_flat(PARTIAL, a)
    assert is_flat(PARTIAL, b)
    assert not is_flat(PARTIAL, a + b)
    with pytest.raises(DomainError):
        curvature(PARTIAL, gen("e"))


@pytest.mark.parametrize("max_length", range(1, 9))
def test_square_zero_on_generators(max_length):
    checks = check_square_zero(ls_differential(TruncationContext(max_length)))
    assert [c.generator for c in checks] == ["a", "b", "e"]
    assert all(c.passed for c in checks)


def test_square_zero_on_random_elements():
    context = TruncationContext(5)
    partial = ls_differential(context)
    sampler = RandomLieSampler(context, seed=17)
    for _ in range(30):
        x = sampler.element(4, sampler.homogeneous_degree(4))
        assert apply(partial, apply(partial, x)).is_zero()


def test_leibniz_on_random_elements():
    sampler = RandomLieSampler(CTX, seed=23)
    for _ in range(50):
        p, q = sampler.homogeneous_degree(3), sampler.homogeneous_degree(3)
        x, y = sampler.element(3, p), sampler.element(3, q)
        sign = -1 if p % 2 else 1
        assert apply(PARTIAL, bracket(x, y)) == bracket(apply(PARTIAL, x), y) + bracket(x, apply(PARTIAL, y)).scale(sign)


def test_square_of_odd_derivation_is_a_derivation():
    context = TruncationContext(4)
    d = perturbed(context)
    sampler = RandomLieSampler(context, seed=29)
    for _ in range(30):
        x = sampler.element(2, sampler.homogeneous_degree(2))
        y = sampler.element(2, sampler.homogeneous_degree(2))
        lhs = apply(d, apply(d, bracket(x, y)))
        rhs = bracket(apply(d, apply(d, x)), y) + bracket(x, apply(d, apply(d, y)))
        assert lhs == rhs


def test_perturbed_differential_fails_on_e():
    context = TruncationContext(4)
    checks = {c.generator: c for c in check_square_zero(perturbed(context))}
    assert checks["a"].passed and checks["b"].passed
    assert not checks["e"].passed
    assert checks["e"].residual.min_length() in (3, 4)


def test_partial_x_rejects_wrong_degree():
    with pytest.raises(DomainError):
        partial_x(gen("e"), CTX)


def test_definition_errors():
    a = gen("a")
    with pytest.raises(DefinitionError):
        Derivation(-1, {"a": gen("e")}, CTX)
    partial_on_a = Derivation(-1, {"a": bracket(a, a).scale(Fraction(-1, 2))}, CTX)
    assert apply(partial_on_a, bracket(a, a)).is_zero()
    with pytest.raises(DefinitionError):
        apply(partial_on_a, gen("b"))


def test_interval_differential_needs_interval_generators():
    from lie_algebra import Alphabet

    with pytest.raises(DefinitionError):
        ls_differential(TruncationContext(3, Alphabet.parse("a:-1,b:-1")))
    with pytest.raises(DefinitionError):
        ls_differential(TruncationContext(3, Alphabet.parse("a:-1,b:-1,e:2")))
