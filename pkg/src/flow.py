"""
Flow Module - Gauge flows du/dt = D(v) - ad_v(u) on degree -1 elements

Every series here is finite modulo long brackets because ad_v raises word
length. Flows are built as polynomials in t whose coefficients are Lie
elements, so derivatives in t are formal and exact.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import List, Optional, Tuple, Union

from bernoulli import BernoulliTable, bernoulli_upto
from derivations import Derivation, apply, curvature
from errors import DomainError
from lie_algebra import LieElement, LieMonomial, TruncationContext, bracket

logger = logging.getLogger(__name__)

RationalTime = Union[Fraction, int, str]
SAMPLE_TIMES = (Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(1))


def as_time(t: RationalTime) -> Fraction:
    try:
        return Fraction(t)
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"time must be a rational number, got {t!r}") from None


@dataclass(frozen=True)
class TimePolynomial:
    """sum_k t^k * coefficients[k] with Lie element coefficients"""

    coefficients: Tuple[LieElement, ...]
    context: TruncationContext

    @classmethod
    def constant(cls, x: LieElement) -> "TimePolynomial":
        return cls((x,), x.context)

    def _padded(self, size: int) -> List[LieElement]:
        zero = LieElement.zero(self.context)
        return list(self.coefficients) + [zero] * (size - len(self.coefficients))

    def __add__(self, other: "TimePolynomial") -> "TimePolynomial":
        self.context.require_same(other.context)
        size = max(len(self.coefficients), len(other.coefficients))
        left, right = self._padded(size), other._padded(size)
        return TimePolynomial(tuple(p + q for p, q in zip(left, right)), self.context)

    def __sub__(self, other: "TimePolynomial") -> "TimePolynomial":
        return self + other.scale(-1)

    def scale(self, factor) -> "TimePolynomial":
        return TimePolynomial(tuple(c.scale(factor) for c in self.coefficients), self.context)

    def map(self, operator) -> "TimePolynomial":
        """Apply a linear map on Lie elements to each coefficient"""
        return TimePolynomial(tuple(operator(c) for c in self.coefficients), self.context)

    def derivative(self) -> "TimePolynomial":
        coeffs = tuple(c.scale(k) for k, c in enumerate(self.coefficients) if k > 0)
        return TimePolynomial(coeffs or (LieElement.zero(self.context),), self.context)

    def evaluate(self, t: RationalTime) -> LieElement:
        t = as_time(t)
        result = LieElement.zero(self.context)
        for c in reversed(self.coefficients):
            result = result.scale(t) + c
        return result

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coefficients)

    def coefficient_of(self, monomial: LieMonomial) -> Tuple[Fraction, ...]:
        """The rational polynomial in t attached to one monomial, lowest power first"""
        return tuple(c.coefficient(monomial) for c in self.coefficients)


def _require_flow_generator(v: LieElement) -> None:
    if not v.is_homogeneous(0):
        raise DomainError(f"flow generator must have degree 0, got degrees {sorted(v.degrees())}")


def _ad_series(v: LieElement, x: LieElement, weight) -> TimePolynomial:
    """sum_k weight(k) t^k ad_v^{k-offset}(x) built term by term"""
    coeffs = []
    term = x
    k = 0
    while True:
        coeff, advance = weight(k)
        coeffs.append(term.scale(coeff) if advance else LieElement.zero(x.context))
        if advance:
            term = bracket(v, term)
            if term.is_zero():
                break
        k += 1
        if k > x.context.max_length + 1:
            break
    return TimePolynomial(tuple(coeffs), x.context)


def exp_ad_polynomial(v: LieElement, x: LieElement) -> TimePolynomial:
    """e^{-t ad_v} x as a polynomial in t"""
    _require_flow_generator(v)
    v.context.require_same(x.context)
    return _ad_series(v, x, lambda k: (Fraction((-1) ** k, factorial(k)), True))


def phi_polynomial(v: LieElement, x: LieElement) -> TimePolynomial:
    """(e^{-t ad_v} - 1)/(-ad_v) x = sum_{n>=1} t^n/n! (-ad_v)^{n-1} x as a polynomial in t"""
    _require_flow_generator(v)
    v.context.require_same(x.context)

    def weight(k: int):
        if k == 0:
            return Fraction(0), False
        return Fraction((-1) ** (k - 1), factorial(k)), True

    return _ad_series(v, x, weight)


def exp_ad(v: LieElement, t: RationalTime, x: LieElement) -> LieElement:
    """
    sum_k (-t)^k/k! ad_v^k (x), exact modulo monomials longer than N.

    Args:
        v: degree 0 flow generator
        t: rational time
        x: element to transport
    """
    return exp_ad_polynomial(v, x).evaluate(t)


def phi_series(v: LieElement, t: RationalTime, x: LieElement) -> LieElement:
    return phi_polynomial(v, x).evaluate(t)


@dataclass(frozen=True)
class FlowProblem:
    """Flow generated by a degree 0 element from a degree -1 starting point"""

    generator_v: LieElement
    initial_u0: LieElement
    differential: Derivation
    truncation: Optional[TruncationContext] = None

    def __post_init__(self):
        context = self.truncation or self.generator_v.context
        object.__setattr__(self, "truncation", context)
        context.require_same(self.generator_v.context)
        context.require_same(self.initial_u0.context)
        context.require_same(self.differential.context)
        _require_flow_generator(self.generator_v)
        if not self.initial_u0.is_homogeneous(-1):
            raise DomainError(
                f"initial point must have degree -1, got degrees {sorted(self.initial_u0.degrees())}"
            )

    @property
    def drift(self) -> LieElement:
        """The constant term D(v) of the flow equation"""
        return apply(self.differential, self.generator_v)


def flow_polynomial(problem: FlowProblem) -> TimePolynomial:
    """u(t) = e^{-t ad_v} u0 + phi(t)(D v) as a polynomial in t"""
    v = problem.generator_v
    return exp_ad_polynomial(v, problem.initial_u0) + phi_polynomial(v, problem.drift)


def flow_closed_form(problem: FlowProblem, t: RationalTime) -> LieElement:
    return flow_polynomial(problem).evaluate(t)


def flow_residual_polynomial(problem: FlowProblem, trajectory: Optional[TimePolynomial] = None) -> TimePolynomial:
    """
    du/dt - (D v - ad_v u). Identically zero for the problem's own closed
    form; pass another trajectory to test it against this problem's drift.
    """
    v = problem.generator_v
    u = flow_polynomial(problem) if trajectory is None else trajectory
    problem.truncation.require_same(u.context)
    ad_u = u.map(lambda c: bracket(v, c))
    return u.derivative() - TimePolynomial.constant(problem.drift) + ad_u


def flow_residual(
    problem: FlowProblem, t: RationalTime, trajectory: Optional[TimePolynomial] = None
) -> LieElement:
    """
    ODE residual at time t. The derivative is taken formally on the
    polynomial-in-t coefficients of the trajectory.
    """
    return flow_residual_polynomial(problem, trajectory).evaluate(t)


def curvature_along_flow(problem: FlowProblem, t: RationalTime) -> LieElement:
    return curvature(problem.differential, flow_closed_form(problem, t))


def curvature_polynomial(problem: FlowProblem) -> TimePolynomial:
    """f(t) = D u + 1/2 [u,u] along the flow, as a polynomial in t"""
    u = flow_polynomial(problem)
    derivation = problem.differential
    coeffs = list(u.map(lambda c: apply(derivation, c)).coefficients)
    size = len(u.coefficients)
    zero = LieElement.zero(problem.truncation)
    squares = [zero] * (2 * size - 1)
    for i, ci in enumerate(u.coefficients):
        for j, cj in enumerate(u.coefficients):
            if ci and cj:
                squares[i + j] = squares[i + j] + bracket(ci, cj)
    coeffs += [zero] * (len(squares) - len(coeffs))
    return TimePolynomial(
        tuple(c + s.scale(Fraction(1, 2)) for c, s in zip(coeffs, squares)), problem.truncation
    )


def curvature_ode_residual(problem: FlowProblem) -> TimePolynomial:
    """
    f' - (D^2 v - ad_v f). Vanishes for every odd derivation D, square-zero
    or not; with D^2 = 0 it says the flow carries flat points to flat points.
    """
    v = problem.generator_v
    derivation = problem.differential
    f = curvature_polynomial(problem)
    d2v = apply(derivation, problem.drift)
    return f.derivative() - TimePolynomial.constant(d2v) + f.map(lambda c: bracket(v, c))


def solve_drift(
    v: LieElement,
    u0: LieElement,
    u1: LieElement,
    table: Optional[BernoulliTable] = None,
) -> LieElement:
    """
    The constant term x for which du/dt = x - ad_v(u) carries u0 to u1 in
    unit time: x = sum_i B_i/i! (-ad_v)^i (u1 - e^{-ad_v} u0).

    Args:
        v: degree 0 flow generator
        u0: starting point
        u1: required endpoint
        table: Bernoulli numbers (defaults to the exact ones)

    Returns:
        The unique drift, modulo monomials longer than N
    """
    _require_flow_generator(v)
    context = v.context
    context.require_same(u0.context)
    context.require_same(u1.context)
    if table is None:
        table = bernoulli_upto(context.max_length)
    term = u1 - exp_ad(v, 1, u0)
    result = LieElement.zero(context)
    i = 0
    while not term.is_zero() and i <= context.max_length:
        coeff = table.get(i) / factorial(i)
        if coeff:
            result = result + term.scale(coeff)
        term = bracket(v, term).scale(-1)
        i += 1
    return result


def sample_times() -> Tuple[Fraction, ...]:
    return SAMPLE_TIMES
