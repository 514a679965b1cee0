"""
Lie Algebra Module - Free graded Lie algebra with exact rational coefficients

Elements are kept in the super-Lyndon normal form: standard bracketings of
Lyndon words, plus self-brackets [w,w] of odd-degree Lyndon monomials.
All arithmetic happens modulo brackets longer than the truncation length.
"""

import heapq
import logging
import re
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from envelope import NCPolynomial, sum_polynomials
from errors import AlphabetError, ContextError, DomainError, LieAlgebraError
from lyndon_words import (
    Word,
    is_lyndon,
    lyndon_words,
    square_root,
    standard_factorization,
    word_degree,
)

logger = logging.getLogger(__name__)

KERNEL_CACHE_SIZE = 1 << 16

_NAME_PATTERN = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class GradedGenerator:
    """A named generator with its homological degree"""

    name: str
    degree: int

    def __post_init__(self):
        if not isinstance(self.name, str) or not _NAME_PATTERN.match(self.name):
            raise AlphabetError(f"invalid generator name: {self.name!r}")
        if not isinstance(self.degree, int):
            raise AlphabetError(f"degree of {self.name} must be an integer")


@dataclass(frozen=True)
class Alphabet:
    """Ordered list of generators; the order fixes the Lyndon normal forms"""

    generators: Tuple[GradedGenerator, ...]

    def __post_init__(self):
        if not self.generators:
            raise AlphabetError("alphabet must contain at least one generator")
        names = [g.name for g in self.generators]
        duplicates = sorted({n for n in names if names.count(n) > 1})
        if duplicates:
            raise AlphabetError(f"duplicate generator names: {', '.join(duplicates)}")

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[str, int]]) -> "Alphabet":
        return cls(tuple(GradedGenerator(name, int(degree)) for name, degree in pairs))

    @classmethod
    def parse(cls, text: str) -> "Alphabet":
        """Parse 'a:-1,b:-1,e:0' into an Alphabet"""
        pairs = []
        for chunk in text.split(","):
            chunk = chunk.strip()
            if not chunk:
                continue
            name, sep, degree = chunk.partition(":")
            if not sep:
                raise AlphabetError(f"expected name:degree, got {chunk!r}")
            try:
                pairs.append((name.strip(), int(degree)))
            except ValueError:
                raise AlphabetError(f"degree of {name.strip()!r} is not an integer") from None
        return cls.from_pairs(pairs)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(g.degree for g in self.generators)

    def index(self, name: str) -> int:
        for i, g in enumerate(self.generators):
            if g.name == name:
                return i
        raise AlphabetError(f"unknown generator: {name!r}")

    def __contains__(self, name: object) -> bool:
        return name in self.names

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self) -> Iterator[GradedGenerator]:
        return iter(self.generators)

    def to_text(self) -> str:
        return ",".join(f"{g.name}:{g.degree}" for g in self.generators)


DEFAULT_ALPHABET = Alphabet.from_pairs([("a", -1), ("b", -1), ("e", 0)])


@dataclass(frozen=True)
class TruncationContext:
    """Cutoff on bracket word length shared by all operands of an operation"""

    max_length: int
    alphabet: Alphabet = DEFAULT_ALPHABET

    def __post_init__(self):
        if not isinstance(self.max_length, int) or self.max_length < 1:
            raise LieAlgebraError(f"max_length must be a positive integer, got {self.max_length!r}")

    def require_same(self, other: "TruncationContext") -> None:
        if self != other:
            raise ContextError(
                f"mismatched truncation contexts: N={self.max_length} over {self.alphabet.to_text()} "
                f"vs N={other.max_length} over {other.alphabet.to_text()}"
            )


@lru_cache(maxsize=KERNEL_CACHE_SIZE)
def _lyndon_tree(word: Word):
    if len(word) == 1:
        return word[0]
    u, v = standard_factorization(word)
    return (_lyndon_tree(u), _lyndon_tree(v))


@dataclass(frozen=True)
class LieMonomial:
    """
    Normal-form basis element. A Lyndon root with its standard bracketing,
    or, when square is set, the self-bracket of an odd-degree Lyndon root.
    """

    root: Word
    square: bool
    degree: int

    @classmethod
    def lyndon(cls, word: Sequence[int], degrees: Sequence[int]) -> "LieMonomial":
        word = tuple(word)
        if not is_lyndon(word):
            raise LieAlgebraError(f"{word} is not a Lyndon word")
        return cls(word, False, word_degree(word, degrees))

    @classmethod
    def square_of(cls, root: Sequence[int], degrees: Sequence[int]) -> "LieMonomial":
        root = tuple(root)
        degree = word_degree(root, degrees)
        if not is_lyndon(root) or degree % 2 == 0:
            raise LieAlgebraError(f"[w,w] is a basis element only for odd Lyndon w, got {root}")
        return cls(root, True, 2 * degree)

    @property
    def length(self) -> int:
        return 2 * len(self.root) if self.square else len(self.root)

    @property
    def letters(self) -> Word:
        return self.root + self.root if self.square else self.root

    def sort_key(self) -> Tuple[int, int, Word]:
        return (self.length, self.degree, self.letters)

    def factors(self, degrees: Sequence[int]) -> Optional[Tuple["LieMonomial", "LieMonomial"]]:
        """Left and right bracket factors, or None for a generator"""
        if self.square:
            half = LieMonomial(self.root, False, self.degree // 2)
            return half, half
        if len(self.root) == 1:
            return None
        u, v = standard_factorization(self.root)
        return LieMonomial.lyndon(u, degrees), LieMonomial.lyndon(v, degrees)

    def index_tree(self):
        """Bracket tree with letter indices at the leaves"""
        tree = _lyndon_tree(self.root)
        return (tree, tree) if self.square else tree

    def tree(self, alphabet: Alphabet):
        """Bracket tree with generator names at the leaves (nested 2-tuples)"""
        names = alphabet.names

        def rename(node):
            if isinstance(node, int):
                return names[node]
            return (rename(node[0]), rename(node[1]))

        return rename(self.index_tree())


def format_tree(tree) -> str:
    """Render a nested name tree as '[x,[y,z]]'"""
    if isinstance(tree, str):
        return tree
    return f"[{format_tree(tree[0])},{format_tree(tree[1])}]"


@dataclass(frozen=True)
class LinearCombination:
    """Unnormalized sum of rational multiples of bracket expressions"""

    terms: Tuple[Tuple[Fraction, "RawExpression"], ...] = field(default_factory=tuple)


RawExpression = Union[str, tuple, list, LinearCombination, "LieElement"]


class LieElement:
    """
    Finite formal sum of normal-form monomials with rational coefficients,
    read modulo monomials longer than the context's max_length.
    """

    __slots__ = ("_terms", "context", "_hash")

    def __init__(self, terms: Mapping[LieMonomial, Fraction], context: TruncationContext):
        limit = context.max_length
        cleaned: Dict[LieMonomial, Fraction] = {}
        for monomial, coeff in terms.items():
            coeff = Fraction(coeff)
            if coeff and monomial.length <= limit:
                cleaned[monomial] = coeff
        self._terms = cleaned
        self.context = context
        self._hash = None

    @classmethod
    def zero(cls, context: TruncationContext) -> "LieElement":
        return cls({}, context)

    @classmethod
    def generator(cls, name: str, context: TruncationContext) -> "LieElement":
        index = context.alphabet.index(name)
        return cls({LieMonomial.lyndon((index,), context.alphabet.degrees): Fraction(1)}, context)

    @classmethod
    def from_monomial(
        cls, monomial: LieMonomial, context: TruncationContext, coeff: Fraction = Fraction(1)
    ) -> "LieElement":
        return cls({monomial: coeff}, context)

    @property
    def terms(self) -> Mapping[LieMonomial, Fraction]:
        return MappingProxyType(self._terms)

    def items(self) -> List[Tuple[LieMonomial, Fraction]]:
        """Terms in deterministic (length, degree, word) order"""
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key())

    def coefficient(self, monomial: LieMonomial) -> Fraction:
        return self._terms.get(monomial, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degrees(self) -> frozenset:
        return frozenset(m.degree for m in self._terms)

    @property
    def degree(self) -> Optional[int]:
        """The common degree of all terms, or None for zero and inhomogeneous elements"""
        degrees = self.degrees()
        return next(iter(degrees)) if len(degrees) == 1 else None

    def is_homogeneous(self, degree: Optional[int] = None) -> bool:
        degrees = self.degrees()
        if not degrees:
            return True
        if len(degrees) > 1:
            return False
        return degree is None or degree in degrees

    def component(self, length: int) -> "LieElement":
        """The part made of monomials of exactly the given length"""
        return LieElement({m: c for m, c in self._terms.items() if m.length == length}, self.context)

    def min_length(self) -> int:
        return min((m.length for m in self._terms), default=0)

    def _combine(self, other: "LieElement", sign: int) -> "LieElement":
        if not isinstance(other, LieElement):
            return NotImplemented
        self.context.require_same(other.context)
        acc = defaultdict(Fraction, self._terms)
        for m, c in other._terms.items():
            acc[m] += sign * c
        return LieElement(acc, self.context)

    def __add__(self, other: "LieElement") -> "LieElement":
        return self._combine(other, 1)

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self._combine(other, -1)

    def __neg__(self) -> "LieElement":
        return self.scale(-1)

    def scale(self, factor) -> "LieElement":
        factor = Fraction(factor)
        return LieElement({m: c * factor for m, c in self._terms.items()}, self.context)

    def __mul__(self, factor) -> "LieElement":
        if isinstance(factor, LieElement):
            return NotImplemented
        return self.scale(factor)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.context == other.context and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.context, frozenset(self._terms.items())))
        return self._hash

    def to_expression(self) -> str:
        """Render in the expression grammar, e.g. '-1/2*[a,a] + [a,b]'"""
        if not self._terms:
            return "0"
        alphabet = self.context.alphabet
        out = []
        for monomial, coeff in self.items():
            text = format_tree(monomial.tree(alphabet))
            magnitude = abs(coeff)
            body = text if magnitude == 1 else f"{magnitude}*{text}"
            if not out:
                out.append(f"-{body}" if coeff < 0 else body)
            else:
                out.append(f" - {body}" if coeff < 0 else f" + {body}")
        return "".join(out)

    def __repr__(self) -> str:
        return f"LieElement({self.to_expression()}, N={self.context.max_length})"


# ---------------------------------------------------------------------------
# Kernel: expansion into the envelope, leading-word reduction, basis brackets
# ---------------------------------------------------------------------------


@lru_cache(maxsize=KERNEL_CACHE_SIZE)
def _expand_monomial(monomial: LieMonomial, degrees: Tuple[int, ...]) -> NCPolynomial:
    if monomial.square:
        half = _expand_monomial(LieMonomial(monomial.root, False, monomial.degree // 2), degrees)
        return half.supercommutator(half, degrees)
    if len(monomial.root) == 1:
        return NCPolynomial.word(monomial.root)
    u, v = standard_factorization(monomial.root)
    left = _expand_monomial(LieMonomial(u, False, word_degree(u, degrees)), degrees)
    right = _expand_monomial(LieMonomial(v, False, word_degree(v, degrees)), degrees)
    return left.supercommutator(right, degrees)


def _leading_monomial(word: Word, degrees: Tuple[int, ...]) -> Tuple[LieMonomial, Fraction]:
    """Basis monomial whose expansion starts with word, and that leading coefficient"""
    if is_lyndon(word):
        return LieMonomial(word, False, word_degree(word, degrees)), Fraction(1)
    root = square_root(word)
    if root and is_lyndon(root) and word_degree(root, degrees) % 2:
        return LieMonomial(root, True, 2 * word_degree(root, degrees)), Fraction(2)
    raise LieAlgebraError(f"polynomial is not a Lie element: leading word {word} has no basis monomial")


def _reduce_to_basis(poly: NCPolynomial, degrees: Tuple[int, ...]) -> Dict[LieMonomial, Fraction]:
    """
    Write an envelope polynomial that lies in the Lie image as a combination of
    basis monomials. The expansion of each basis monomial is its leading word
    plus strictly larger words of the same length, so peeling off the smallest
    remaining word terminates.
    """
    remaining: Dict[Word, Fraction] = dict(poly.terms)
    heap = [(len(w), w) for w in remaining]
    heapq.heapify(heap)
    coords: Dict[LieMonomial, Fraction] = {}
    while heap:
        _, word = heapq.heappop(heap)
        coeff = remaining.get(word)
        if not coeff:
            continue
        monomial, lead = _leading_monomial(word, degrees)
        factor = coeff / lead
        coords[monomial] = factor
        for w, c in _expand_monomial(monomial, degrees).terms.items():
            updated = remaining.get(w, Fraction(0)) - factor * c
            if updated:
                if w not in remaining:
                    heapq.heappush(heap, (len(w), w))
                remaining[w] = updated
            else:
                remaining.pop(w, None)
        if word in remaining:
            raise LieAlgebraError(f"leading word {word} did not cancel")
    return coords


@lru_cache(maxsize=KERNEL_CACHE_SIZE)
def _bracket_monomials(
    x: LieMonomial, y: LieMonomial, degrees: Tuple[int, ...]
) -> Tuple[Tuple[LieMonomial, Fraction], ...]:
    """Normal form of [x, y] for two basis monomials"""
    if x == y:
        # [x,x] vanishes for even x; for odd x it is the super-square
        if x.degree % 2 == 0:
            return ()
        return ((LieMonomial(x.root, True, 2 * x.degree), Fraction(1)),)

    if x.letters > y.letters:
        sign = 1 if (x.degree * y.degree) % 2 else -1
        return tuple((m, sign * c) for m, c in _bracket_monomials(y, x, degrees))

    if not x.square and not y.square:
        u, v = x.root, y.root
        if len(u) == 1 or standard_factorization(u)[1] >= v:
            joined = u + v
            return ((LieMonomial(joined, False, word_degree(joined, degrees)), Fraction(1)),)

    # Re-associate through the envelope
    poly = _expand_monomial(x, degrees).supercommutator(_expand_monomial(y, degrees), degrees)
    coords = _reduce_to_basis(poly, degrees)
    return tuple(sorted(coords.items(), key=lambda kv: kv[0].sort_key()))


def kernel_cache_stats() -> Dict[str, int]:
    """Sizes of the memo tables behind bracket and expansion"""
    return {
        "bracket_pairs": _bracket_monomials.cache_info().currsize,
        "expansions": _expand_monomial.cache_info().currsize,
        "lyndon_trees": _lyndon_tree.cache_info().currsize,
    }


def clear_kernel_caches() -> None:
    """Drop every memoized bracket, expansion and bracketing tree"""
    for cached in (_bracket_monomials, _expand_monomial, _lyndon_tree, is_lyndon, standard_factorization):
        cached.cache_clear()
    logger.debug(f"kernel caches cleared (capacity {KERNEL_CACHE_SIZE} entries each)")


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------


def bracket(x: LieElement, y: LieElement) -> LieElement:
    """
    Bilinear graded bracket of two elements in normal form.

    Args:
        x: left operand
        y: right operand, sharing x's truncation context

    Returns:
        Normal form of [x, y] with monomials longer than N dropped
    """
    context = x.context
    context.require_same(y.context)
    degrees = context.alphabet.degrees
    limit = context.max_length
    acc: Dict[LieMonomial, Fraction] = defaultdict(Fraction)
    for m1, c1 in x.terms.items():
        for m2, c2 in y.terms.items():
            if m1.length + m2.length > limit:
                continue
            for m, c in _bracket_monomials(m1, m2, degrees):
                acc[m] += c1 * c2 * c
    return LieElement(acc, context)


def ad_power(v: LieElement, k: int, x: LieElement) -> LieElement:
    """(ad_v)^k applied to x; k = 0 gives x back"""
    if k < 0:
        raise DomainError(f"ad power must be a natural number, got {k}")
    v.context.require_same(x.context)
    result = x
    for _ in range(k):
        if result.is_zero():
            break
        result = bracket(v, result)
    return result


def normalize(raw: RawExpression, context: TruncationContext) -> LieElement:
    """
    Reduce a bracket expression to its normal form, bottom-up.

    Generators are given by name, brackets as 2-tuples (or 2-lists) and sums
    as LinearCombination. LieElements pass through unchanged.
    """
    if isinstance(raw, LieElement):
        context.require_same(raw.context)
        return raw
    if isinstance(raw, str):
        return LieElement.generator(raw, context)
    if isinstance(raw, LinearCombination):
        acc = LieElement.zero(context)
        for coeff, term in raw.terms:
            acc = acc + normalize(term, context).scale(coeff)
        return acc
    if isinstance(raw, (tuple, list)) and len(raw) == 2:
        return bracket(normalize(raw[0], context), normalize(raw[1], context))
    raise LieAlgebraError(f"malformed bracket expression: {raw!r}")


def _expand_raw(raw: RawExpression, alphabet: Alphabet, max_length: Optional[int]) -> NCPolynomial:
    if isinstance(raw, LieElement):
        return assoc_expand(raw) if max_length is None else assoc_expand(raw).truncated(max_length)
    if isinstance(raw, str):
        return NCPolynomial.word((alphabet.index(raw),))
    if isinstance(raw, LinearCombination):
        return sum_polynomials(
            _expand_raw(term, alphabet, max_length).scale(coeff) for coeff, term in raw.terms
        )
    if isinstance(raw, (tuple, list)) and len(raw) == 2:
        left = _expand_raw(raw[0], alphabet, max_length)
        right = _expand_raw(raw[1], alphabet, max_length)
        return left.supercommutator(right, alphabet.degrees, max_length)
    raise LieAlgebraError(f"malformed bracket expression: {raw!r}")


def assoc_expand(x: RawExpression, context: Optional[TruncationContext] = None) -> NCPolynomial:
    """
    Image in the free associative algebra under [x,y] -> xy - (-1)^{|x||y|} yx.

    A LieElement expands through its normal-form monomials. A raw expression
    expands leaf by leaf without normalizing; with a context it is read over
    that alphabet and truncated at its max_length, otherwise over the default
    alphabet with no truncation.
    """
    if isinstance(x, LieElement):
        degrees = x.context.alphabet.degrees
        return sum_polynomials(_expand_monomial(m, degrees).scale(c) for m, c in x.terms.items())
    if context is None:
        return _expand_raw(x, DEFAULT_ALPHABET, None)
    return _expand_raw(x, context.alphabet, context.max_length)


def basis_enumerate(context: TruncationContext, length: int, degree: int) -> List[LieMonomial]:
    """
    All normal-form monomials of the given length and homological degree.

    Args:
        context: truncation context (supplies the alphabet)
        length: word length, 1 <= length <= N
        degree: homological degree

    Returns:
        Monomials sorted by (length, degree, word)
    """
    if length < 1 or length > context.max_length:
        raise DomainError(f"length must lie in 1..{context.max_length}, got {length}")
    degrees = context.alphabet.degrees
    size = len(context.alphabet)
    found = [
        LieMonomial(w, False, degree)
        for w in lyndon_words(size, length)
        if len(w) == length and word_degree(w, degrees) == degree
    ]
    if length % 2 == 0:
        half = length // 2
        for w in lyndon_words(size, half):
            d = word_degree(w, degrees)
            if len(w) == half and d % 2 and 2 * d == degree:
                found.append(LieMonomial(w, True, degree))
    return sorted(found, key=LieMonomial.sort_key)


def basis_upto(context: TruncationContext) -> List[LieMonomial]:
    """Every normal-form monomial of length <= N, in deterministic order"""
    degrees = context.alphabet.degrees
    size = len(context.alphabet)
    limit = context.max_length
    found = [LieMonomial(w, False, word_degree(w, degrees)) for w in lyndon_words(size, limit)]
    for w in lyndon_words(size, limit // 2):
        d = word_degree(w, degrees)
        if d % 2:
            found.append(LieMonomial(w, True, 2 * d))
    return sorted(found, key=LieMonomial.sort_key)
