#!/usr/bin/env python3
"""Tests for gauge flows, drift uniqueness and the curvature equation"""

from fractions import Fraction

import pytest

from bernoulli import bernoulli_upto
from derivations import apply, ls_differential
from errors import DomainError
from flow import (
    FlowProblem,
    curvature_along_flow,
    curvature_ode_residual,
    curvature_polynomial,
    exp_ad,
    exp_ad_polynomial,
    flow_closed_form,
    flow_polynomial,
    flow_residual,
    phi_polynomial,
    phi_series,
    sample_times,
    solve_drift,
)
from lie_algebra import LieElement, TruncationContext, bracket
from random_elements import RandomLieSampler

CTX = TruncationContext(6)
PARTIAL = ls_differential(CTX)


def gen(name, context=CTX):
    return LieElement.generator(name, context)


def perturbed(context):
    return ls_differential(context, bernoulli_upto(context.max_length).perturbed({2: Fraction(1, 10)}))


def test_series_examples():
    small = TruncationContext(2)
    a, b, e = gen("a", small), gen("b", small), gen("e", small)
    assert exp_ad(e, 1, a) == a - bracket(e, a)
    assert phi_series(e, 1, b - a) == (b - a) - bracket(e, b - a).scale(Fraction(1, 2))
    assert exp_ad(e, 0, a) == a
    assert phi_series(e, 0, b - a).is_zero()


def test_exp_ad_inverse():
    sampler = RandomLieSampler(CTX, seed=31)
    for _ in range(10):
        v = sampler.flow_generator()
        x = sampler.element(4)
        for t in sample_times():
            assert exp_ad(v, t, exp_ad(v, -t, x)) == x


def test_series_derivatives():
    e = gen("e")
    x = gen("b") - gen("a")
    exp_poly = exp_ad_polynomial(e, x)
    minus_ad = exp_poly.map(lambda c: bracket(e, c).scale(-1))
    phi_poly = phi_polynomial(e, x)
    for t in sample_times():
        assert exp_poly.derivative().evaluate(t) == minus_ad.evaluate(t)
        assert phi_poly.derivative().evaluate(t) == exp_ad(e, t, x)


def test_flow_endpoints():
    problem = FlowProblem(gen("e"), gen("a"), PARTIAL)
    assert flow_closed_form(problem, 0) == gen("a")
    assert flow_closed_form(problem, 1) == gen("b")


@pytest.mark.parametrize("max_length", range(1, 9))
def test_flow_reaches_b_at_every_truncation(max_length):
    context = TruncationContext(max_length)
    problem = FlowProblem(gen("e", context), gen("a", context), ls_differential(context))
    assert flow_closed_form(problem, 1) == gen("b", context)


def test_flow_residual_vanishes():
    problem = FlowProblem(gen("e"), gen("a"), PARTIAL)
    for t in sample_times():
        assert flow_residual(problem, t).is_zero()
    still = FlowProblem(LieElement.zero(CTX), gen("b"), PARTIAL)
    assert flow_residual(still, Fraction(1, 2)).is_zero()
    assert flow_closed_form(still, 7) == gen("b")


def test_monomial_time_polynomials():
    problem = FlowProblem(gen("e"), gen("a"), PARTIAL)
    trajectory = flow_polynomial(problem)
    (a_monomial,) = gen("a").terms
    (ae_monomial,) = bracket(gen("a"), gen("e")).terms
    assert trajectory.coefficient_of(a_monomial)[:2] == (Fraction(1), Fraction(-1))
    ae = trajectory.coefficient_of(ae_monomial)
    assert ae[:2] == (Fraction(0), Fraction(1, 2))
    for t in sample_times():
        value = sum((c * t ** k for k, c in enumerate(ae)), Fraction(0))
        assert value == flow_closed_form(problem, t).coefficient(ae_monomial)


def test_flow_composition():
    sampler = RandomLieSampler(CTX, seed=37)
    for _ in range(5):
        v = sampler.flow_generator()
        s, t = Fraction(1, 3), Fraction(1, 2)
        first = FlowProblem(v, gen("a"), PARTIAL)
        middle = flow_closed_form(first, s)
        second = FlowProblem(v, middle, PARTIAL)
        assert flow_closed_form(second, t) == flow_closed_form(first, s + t)


def test_curvature_along_flow():
    problem = FlowProblem(gen("e"), gen("a"), PARTIAL)
    for t in sample_times():
        assert curvature_along_flow(problem, t).is_zero()
    assert curvature_polynomial(problem).is_zero()
    rough = FlowProblem(gen("e"), gen("a") + gen("b"), PARTIAL)
    assert curvature_along_flow(rough, 0) == bracket(gen("a"), gen("b"))
    still = FlowProblem(LieElement.zero(CTX), gen("b"), PARTIAL)
    for t in sample_times():
        assert curvature_along_flow(still, t).is_zero()


def test_flatness_is_preserved_by_random_flows():
    sampler = RandomLieSampler(CTX, seed=41)
    for _ in range(50):
        v = sampler.flow_generator()
        for start in (gen("a"), gen("b")):
            problem = FlowProblem(v, start, PARTIAL)
            for t in (Fraction(1, 2), Fraction(1)):
                assert curvature_along_flow(problem, t).is_zero()


def test_solve_drift_recovers_the_edge_value():
    assert solve_drift(gen("e"), gen("a"), gen("b")) == apply(PARTIAL, gen("e"))


def test_solve_drift_hits_any_endpoint():
    sampler = RandomLieSampler(CTX, seed=43)
    for _ in range(10):
        v = sampler.flow_generator()
        u0 = sampler.element(4, -1)
        u1 = sampler.element(4, -1)
        x = solve_drift(v, u0, u1)
        assert exp_ad(v, 1, u0) + phi_series(v, 1, x) == u1


def test_curvature_ode_holds_for_exact_and_perturbed_differentials():
    assert curvature_ode_residual(FlowProblem(gen("e"), gen("a"), PARTIAL)).is_zero()
    context = TruncationContext(5)
    problem = FlowProblem(gen("e", context), gen("a", context), perturbed(context))
    assert curvature_ode_residual(problem).is_zero()


def test_perturbed_differential_controls():
    context = TruncationContext(4)
    exact = FlowProblem(gen("e", context), gen("a", context), ls_differential(context))
    wrong = FlowProblem(gen("e", context), gen("a", context), perturbed(context))
    assert flow_closed_form(wrong, 1) != gen("b", context)
    assert (flow_closed_form(wrong, 1) - gen("b", context)).min_length() <= 4
    assert not flow_residual(wrong, 1, flow_polynomial(exact)).is_zero()
    assert flow_residual(wrong, 1).is_zero()


def test_domain_errors():
    with pytest.raises(DomainError):
        FlowProblem(gen("a"), gen("a"), PARTIAL)
    with pytest.raises(DomainError):
        FlowProblem(gen("e"), gen("e"), PARTIAL)
    with pytest.raises(DomainError):
        exp_ad(gen("a"), 1, gen("b"))
    with pytest.raises(DomainError):
        exp_ad(gen("e"), "x", gen("b"))
