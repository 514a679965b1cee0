"""
Derivations Module - Graded derivations of the free Lie algebra

A derivation is fixed by its values on the generators and extended by the
graded Leibniz rule D[p,q] = [Dp,q] + (-1)^{d|p|} [p,Dq]. This module also
builds the interval differential, curvature and the flatness test.
"""

import logging
import threading
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from types import MappingProxyType
from typing import Dict, List, Mapping, Optional

from bernoulli import BernoulliTable, bernoulli_upto
from errors import AlphabetError, DefinitionError, DomainError
from lie_algebra import LieElement, LieMonomial, TruncationContext, ad_power, bracket

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)
INTERVAL_GENERATORS = {"a": -1, "b": -1, "e": 0}


@dataclass(frozen=True, eq=False)
class Derivation:
    """
    Graded derivation of degree degree_shift given on generators.

    Values on monomials are memoized per instance behind a lock; apply()
    stays a pure function of its inputs.
    """

    degree_shift: int
    generator_values: Mapping[str, LieElement]
    context: TruncationContext
    name: str = "D"
    _cache: Dict[LieMonomial, LieElement] = field(default_factory=dict, init=False, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, init=False, repr=False)

    def __post_init__(self):
        alphabet = self.context.alphabet
        values = dict(self.generator_values)
        for name, value in values.items():
            if name not in alphabet:
                raise AlphabetError(f"derivation {self.name} names unknown generator {name!r}")
            self.context.require_same(value.context)
            expected = alphabet.generators[alphabet.index(name)].degree + self.degree_shift
            if not value.is_homogeneous(expected):
                raise DefinitionError(
                    f"{self.name}({name}) must be homogeneous of degree {expected}, "
                    f"got degrees {sorted(value.degrees())}"
                )
        object.__setattr__(self, "generator_values", MappingProxyType(values))

    def value_on(self, monomial: LieMonomial) -> LieElement:
        with self._lock:
            cached = self._cache.get(monomial)
        if cached is not None:
            return cached
        value = self._compute(monomial)
        with self._lock:
            self._cache.setdefault(monomial, value)
        return value

    def _compute(self, monomial: LieMonomial) -> LieElement:
        alphabet = self.context.alphabet
        factors = monomial.factors(alphabet.degrees)
        if factors is None:
            name = alphabet.names[monomial.root[0]]
            if name not in self.generator_values:
                raise DefinitionError(f"derivation {self.name} has no value on generator {name!r}")
            return self.generator_values[name]
        left, right = factors
        p = LieElement.from_monomial(left, self.context)
        q = LieElement.from_monomial(right, self.context)
        sign = -1 if (self.degree_shift * left.degree) % 2 else 1
        return bracket(self.value_on(left), q) + bracket(p, self.value_on(right)).scale(sign)


def apply(derivation: Derivation, x: LieElement) -> LieElement:
    """
    Apply a derivation to an element, linearly over its terms.

    Args:
        derivation: the derivation D
        x: element sharing D's truncation context

    Returns:
        D(x) modulo monomials longer than N
    """
    derivation.context.require_same(x.context)
    acc = defaultdict(Fraction)
    for monomial, coeff in x.terms.items():
        for m, c in derivation.value_on(monomial).terms.items():
            acc[m] += coeff * c
    return LieElement(acc, x.context)


def _require_interval_alphabet(context: TruncationContext) -> None:
    alphabet = context.alphabet
    for name, degree in INTERVAL_GENERATORS.items():
        if name not in alphabet:
            raise DefinitionError(f"the interval differential needs generator {name!r}")
        actual = alphabet.generators[alphabet.index(name)].degree
        if actual != degree:
            raise DefinitionError(f"generator {name!r} must have degree {degree}, has {actual}")


def partial_x(x: LieElement, context: TruncationContext, name: Optional[str] = None) -> Derivation:
    """
    The degree -1 derivation with a -> -1/2[a,a], b -> -1/2[b,b], e -> x.

    Args:
        x: prescribed value on e, homogeneous of degree -1
        context: truncation context over an alphabet containing a, b, e

    Returns:
        Derivation of degree shift -1
    """
    _require_interval_alphabet(context)
    if not x.is_homogeneous(-1):
        raise DomainError(f"the value on e must have degree -1, got degrees {sorted(x.degrees())}")
    a = LieElement.generator("a", context)
    b = LieElement.generator("b", context)
    values = {
        "a": bracket(a, a).scale(-HALF),
        "b": bracket(b, b).scale(-HALF),
        "e": x,
    }
    for generator in context.alphabet.names:
        if generator not in values:
            raise DefinitionError(f"no value prescribed for extra generator {generator!r}")
    return Derivation(-1, values, context, name=name or "d_x")


def interval_edge_value(context: TruncationContext, table: Optional[BernoulliTable] = None) -> LieElement:
    """
    ad_e(b) + sum_{i=0}^{N-1} (B_i / i!) ad_e^i (b - a), which equals the full
    Bernoulli series modulo monomials longer than N.
    """
    _require_interval_alphabet(context)
    limit = context.max_length
    if table is None:
        table = bernoulli_upto(limit)
    a = LieElement.generator("a", context)
    b = LieElement.generator("b", context)
    e = LieElement.generator("e", context)
    value = ad_power(e, 1, b)
    term = b - a
    for i in range(limit):
        if term.is_zero():
            break
        coeff = table.get(i) / factorial(i)
        if coeff:
            value = value + term.scale(coeff)
        term = bracket(e, term)
    return value


def ls_differential(context: TruncationContext, table: Optional[BernoulliTable] = None) -> Derivation:
    """
    The differential on the free Lie algebra of the interval.

    Args:
        context: truncation context over an alphabet containing a, b, e
        table: Bernoulli numbers to use; a perturbed table gives a
            negative control

    Returns:
        Derivation with degree shift -1
    """
    derivation = partial_x(interval_edge_value(context, table), context, name="partial")
    logger.debug(f"built interval differential at N={context.max_length}")
    return derivation


def curvature(derivation: Derivation, x: LieElement) -> LieElement:
    """D(x) + 1/2 [x,x] for x of degree -1"""
    if not x.is_homogeneous(-1):
        raise DomainError(f"curvature needs an element of degree -1, got degrees {sorted(x.degrees())}")
    return apply(derivation, x) + bracket(x, x).scale(HALF)


def is_flat(derivation: Derivation, x: LieElement) -> bool:
    return curvature(derivation, x).is_zero()


@dataclass(frozen=True)
class GeneratorCheck:
    """D^2 evaluated on one generator"""

    generator: str
    residual: LieElement

    @property
    def passed(self) -> bool:
        return self.residual.is_zero()


def check_square_zero(derivation: Derivation) -> List[GeneratorCheck]:
    """
    D(D(g)) for every generator g. For an odd derivation D^2 is again a
    derivation, so vanishing on generators means vanishing everywhere.
    """
    context = derivation.context
    report = []
    for name in context.alphabet.names:
        g = LieElement.generator(name, context)
        residual = apply(derivation, apply(derivation, g))
        report.append(GeneratorCheck(name, residual))
        logger.debug(f"{derivation.name}^2({name}) has {len(residual)} terms")
    return report
