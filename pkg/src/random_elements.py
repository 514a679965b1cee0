"""
Random Elements - Seeded samplers for property checks

Every sampler draws from its own random.Random so results depend only on
the seed.
"""

import random
from fractions import Fraction
from typing import List, Optional, Sequence

from lie_algebra import (
    LieElement,
    LieMonomial,
    LinearCombination,
    RawExpression,
    TruncationContext,
    basis_enumerate,
    basis_upto,
)

SMALL_COEFFICIENTS = (
    Fraction(-2), Fraction(-1), Fraction(-1, 2), Fraction(1, 3), Fraction(1), Fraction(3, 2), Fraction(2)
)


class RandomLieSampler:
    """Draws bracket trees and normal-form elements over a truncation context"""

    def __init__(self, context: TruncationContext, seed: int = 0,
                 coefficients: Sequence[Fraction] = SMALL_COEFFICIENTS):
        self.context = context
        self.rng = random.Random(seed)
        self.coefficients = tuple(coefficients)
        self._basis = basis_upto(context)

    def coefficient(self) -> Fraction:
        return self.rng.choice(self.coefficients)

    def tree(self, length: int) -> RawExpression:
        """Uniformly split bracket tree with `length` random generator leaves"""
        if length == 1:
            return self.rng.choice(self.context.alphabet.names)
        split = self.rng.randint(1, length - 1)
        return (self.tree(split), self.tree(length - split))

    def combination(self, max_length: int, terms: int = 3) -> RawExpression:
        """Unnormalized sum of random trees of length <= max_length"""
        return LinearCombination(
            tuple((self.coefficient(), self.tree(self.rng.randint(1, max_length))) for _ in range(terms))
        )

    def monomials(self, max_length: Optional[int] = None, degree: Optional[int] = None) -> List[LieMonomial]:
        limit = self.context.max_length if max_length is None else max_length
        return [
            m for m in self._basis
            if m.length <= limit and (degree is None or m.degree == degree)
        ]

    def element(self, max_length: Optional[int] = None, degree: Optional[int] = None,
                terms: int = 3) -> LieElement:
        """Random normal-form element, homogeneous when degree is given; may be zero"""
        pool = self.monomials(max_length, degree)
        if not pool:
            return LieElement.zero(self.context)
        chosen = {}
        for _ in range(terms):
            chosen[self.rng.choice(pool)] = self.coefficient()
        return LieElement(chosen, self.context)

    def homogeneous_degree(self, max_length: Optional[int] = None) -> int:
        """A degree that has at least one monomial of length <= max_length"""
        degrees = sorted({m.degree for m in self.monomials(max_length)})
        return self.rng.choice(degrees)

    def flow_generator(self, max_length: int = 3) -> LieElement:
        """Random degree 0 element supported on monomials of length <= max_length"""
        limit = min(max_length, self.context.max_length)
        pool = [m for length in range(1, limit + 1) for m in basis_enumerate(self.context, length, 0)]
        if not pool:
            return LieElement.zero(self.context)
        terms = {m: self.coefficient() for m in pool if self.rng.random() < 0.8}
        if not terms:
            terms = {self.rng.choice(pool): self.coefficient()}
        return LieElement(terms, self.context)
