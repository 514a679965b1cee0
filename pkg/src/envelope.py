"""
Envelope Module - Free associative algebra over the rationals

Noncommutative polynomials are finite maps from words (tuples of letter
indices) to Fractions. They host the signed-commutator image of Lie
elements and serve as the equality oracle for the Lie kernel.
"""

from collections import defaultdict
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple

from lyndon_words import Word, word_degree


class NCPolynomial:
    """Immutable noncommutative polynomial with exact rational coefficients"""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Word, Fraction]] = None):
        cleaned: Dict[Word, Fraction] = {}
        for word, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff:
                cleaned[tuple(word)] = coeff
        self._terms = cleaned
        self._hash = None

    @classmethod
    def word(cls, word: Sequence[int], coeff: Fraction = Fraction(1)) -> "NCPolynomial":
        return cls({tuple(word): coeff})

    @property
    def terms(self) -> Mapping[Word, Fraction]:
        return MappingProxyType(self._terms)

    def items(self) -> Iterator[Tuple[Word, Fraction]]:
        return iter(sorted(self._terms.items(), key=lambda kv: (len(kv[0]), kv[0])))

    def coefficient(self, word: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(word), Fraction(0))

    def truncated(self, max_length: int) -> "NCPolynomial":
        return NCPolynomial({w: c for w, c in self._terms.items() if len(w) <= max_length})

    def scale(self, factor: Fraction) -> "NCPolynomial":
        factor = Fraction(factor)
        if not factor:
            return NCPolynomial()
        return NCPolynomial({w: c * factor for w, c in self._terms.items()})

    def __add__(self, other: "NCPolynomial") -> "NCPolynomial":
        acc = defaultdict(Fraction, self._terms)
        for w, c in other._terms.items():
            acc[w] += c
        return NCPolynomial(acc)

    def __sub__(self, other: "NCPolynomial") -> "NCPolynomial":
        return self + other.scale(-1)

    def __neg__(self) -> "NCPolynomial":
        return self.scale(-1)

    def product(self, other: "NCPolynomial", max_length: Optional[int] = None) -> "NCPolynomial":
        """Concatenation product, dropping words longer than max_length"""
        acc: Dict[Word, Fraction] = defaultdict(Fraction)
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                if max_length is not None and len(w1) + len(w2) > max_length:
                    continue
                acc[w1 + w2] += c1 * c2
        return NCPolynomial(acc)

    def supercommutator(
        self,
        other: "NCPolynomial",
        degrees: Sequence[int],
        max_length: Optional[int] = None,
    ) -> "NCPolynomial":
        """
        Signed commutator xy - (-1)^{|x||y|} yx, applied word by word so that
        inhomogeneous operands are handled bilinearly.

        Args:
            other: right operand
            degrees: homological degree of each letter index
            max_length: optional truncation of the result

        Returns:
            The commutator polynomial
        """
        acc: Dict[Word, Fraction] = defaultdict(Fraction)
        for w1, c1 in self._terms.items():
            d1 = word_degree(w1, degrees)
            for w2, c2 in other._terms.items():
                if max_length is not None and len(w1) + len(w2) > max_length:
                    continue
                c = c1 * c2
                acc[w1 + w2] += c
                if (d1 * word_degree(w2, degrees)) % 2:
                    acc[w2 + w1] += c
                else:
                    acc[w2 + w1] -= c
        return NCPolynomial(acc)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __repr__(self) -> str:
        return f"NCPolynomial({dict(self.items())!r})"


def sum_polynomials(polys: Iterable[NCPolynomial]) -> NCPolynomial:
    acc: Dict[Word, Fraction] = defaultdict(Fraction)
    for poly in polys:
        for w, c in poly.terms.items():
            acc[w] += c
    return NCPolynomial(acc)
